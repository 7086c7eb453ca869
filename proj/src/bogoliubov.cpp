#include "cavityclock/bogoliubov.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cavityclock {

namespace {

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod (G7, K15) quadrature for a pair of integrands that
// share their expensive factor. Absolute tolerance per component.
// ---------------------------------------------------------------------------

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
// Gauss-7 weights matching Kronrod node indices 1, 3, 5, 7.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Pair2 {
    double first = 0.0;
    double second = 0.0;
};

template <typename F>
void gk15(const F& f, double a, double b, Pair2& value, Pair2& error) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    Pair2 gauss{}, kronrod{};
    for (int i = 0; i < 8; ++i) {
        const double offset = half * kKronrodNodes[i];
        Pair2 sum{};
        if (i == 7) {
            sum = f(mid);
        } else {
            const Pair2 lo = f(mid - offset);
            const Pair2 hi = f(mid + offset);
            sum = {lo.first + hi.first, lo.second + hi.second};
        }
        kronrod.first += kKronrodWeights[i] * sum.first;
        kronrod.second += kKronrodWeights[i] * sum.second;
        if (i % 2 == 1 || i == 7) {
            const double w = kGaussWeights[i / 2];
            gauss.first += w * sum.first;
            gauss.second += w * sum.second;
        }
    }
    value = {kronrod.first * half, kronrod.second * half};
    error = {std::abs((kronrod.first - gauss.first) * half),
             std::abs((kronrod.second - gauss.second) * half)};
}

template <typename F>
Pair2 integrate_adaptive(const F& f, double a, double b, double abs_tol,
                         int initial_panels) {
    struct Segment {
        double a, b, tol;
        int depth;
    };
    std::vector<Segment> stack;
    const double panel = (b - a) / initial_panels;
    for (int i = initial_panels - 1; i >= 0; --i) {
        stack.push_back({a + i * panel, a + (i + 1) * panel,
                         abs_tol / initial_panels, 0});
    }
    Pair2 total{};
    while (!stack.empty()) {
        const Segment seg = stack.back();
        stack.pop_back();
        Pair2 value{}, error{};
        gk15(f, seg.a, seg.b, value, error);
        if ((error.first > seg.tol || error.second > seg.tol) &&
            seg.depth < 28) {
            const double mid = 0.5 * (seg.a + seg.b);
            stack.push_back({seg.a, mid, seg.tol / 2.0, seg.depth + 1});
            stack.push_back({mid, seg.b, seg.tol / 2.0, seg.depth + 1});
            continue;
        }
        if (seg.depth >= 28 &&
            (error.first > 1e3 * seg.tol || error.second > 1e3 * seg.tol)) {
            throw std::runtime_error(
                "Bogoliubov quadrature failed to converge");
        }
        total.first += value.first;
        total.second += value.second;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Klein-Gordon oracle on the t = 0 slice, natural units, L = 1, a = h.
//
// Integration variable s = x - cavity centre, s in [-1/2, 1/2].
//   Minkowski mode shape  S_n(s) = sin(n pi (s + 1/2))
//   Rindler mode shape    T_m(s) = sin(m pi u(s)) with
//   u(s) = (log1p(h s) - log1p(-h/2)) / (2 arctanh(h/2))
// All 1/h factors cancel in u and in Omega_m/(a x), so h -> 0 is regular.
// ---------------------------------------------------------------------------

double minkowski_shape(int n, double s) { return std::sin(n * M_PI * (s + 0.5)); }

double rindler_fraction(double h, double s) {
    return (std::log1p(h * s) - std::log1p(-h / 2.0)) /
           (2.0 * std::atanh(h / 2.0));
}

// Integrals u1 = int T_m S_n ds and u2 = int T_m S_n / (1 + h s) ds.
Pair2 overlap_integrals(int m, int n, double h, double abs_tol) {
    const auto integrand = [m, n, h](double s) -> Pair2 {
        const double common =
            std::sin(m * M_PI * rindler_fraction(h, s)) * minkowski_shape(n, s);
        return {common, common / (1.0 + h * s)};
    };
    return integrate_adaptive(integrand, -0.5, 0.5, abs_tol,
                              std::max(8, m + n));
}

// A_mn and B_mn from the shared integrals:
//   A = (1/(pi sqrt(mn))) [ n pi u1 + (m pi h / 2 arctanh(h/2)) u2 ]
//   B = same with the minus sign between the terms.
void coefficients_element(int m, int n, double h, double& a_mn, double& b_mn) {
    const Pair2 u = overlap_integrals(m, n, h, 1e-12);
    const double rindler_term = m * M_PI * h / (2.0 * std::atanh(h / 2.0));
    const double scale = 1.0 / (M_PI * std::sqrt(double(m) * double(n)));
    a_mn = scale * (n * M_PI * u.first + rindler_term * u.second);
    b_mn = scale * (n * M_PI * u.first - rindler_term * u.second);
}

void compute_quadrature_tables(double h, int size, Eigen::MatrixXd& a,
                               Eigen::MatrixXd& b) {
    a.resize(size, size);
    b.resize(size, size);
    for (int m = 1; m <= size; ++m) {
        for (int n = 1; n <= size; ++n) {
            coefficients_element(m, n, h, a(m - 1, n - 1), b(m - 1, n - 1));
        }
    }
}

// ---------------------------------------------------------------------------
// Coefficient caches: in-memory (initialize-once behind a mutex) plus an
// optional on-disk CSV cache under CAVITY_CLOCK_CACHE_DIR.
// ---------------------------------------------------------------------------

struct RealTables {
    Eigen::MatrixXd a;
    Eigen::MatrixXd b;
};

std::string format_key(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::filesystem::path cache_path(const std::string& method, double h,
                                 int size) {
    const char* dir = std::getenv("CAVITY_CLOCK_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return {};
    return std::filesystem::path(dir) /
           ("bogo_" + method + "_h" + format_key(h) + "_n" +
            std::to_string(size) + ".csv");
}

bool load_tables(const std::filesystem::path& path, int size,
                 RealTables& tables) {
    if (path.empty()) return false;
    std::ifstream in(path);
    if (!in) return false;
    tables.a.resize(size, size);
    tables.b.resize(size, size);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        int m = 0, n = 0;
        double re_a = 0, im_a = 0, re_b = 0, im_b = 0;
        if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lf,%lf", &m, &n, &re_a,
                        &im_a, &re_b, &im_b) != 6) {
            return false;
        }
        if (m < 1 || m > size || n < 1 || n > size) return false;
        tables.a(m - 1, n - 1) = re_a;
        tables.b(m - 1, n - 1) = re_b;
        ++rows;
    }
    return rows == size * size;
}

void store_tables(const std::filesystem::path& path, const RealTables& tables) {
    if (path.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << "# m,n,re_a,im_a,re_b,im_b\n";
        for (int m = 1; m <= tables.a.rows(); ++m) {
            for (int n = 1; n <= tables.a.cols(); ++n) {
                out << m << ',' << n << ',' << format_key(tables.a(m - 1, n - 1))
                    << ",0," << format_key(tables.b(m - 1, n - 1)) << ",0\n";
            }
        }
    }
    std::filesystem::rename(tmp, path, ec);
}

std::mutex cache_mutex;

const RealTables& quadrature_tables(double h, int size) {
    static std::map<std::pair<double, int>, RealTables> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({h, size});
    if (it != cache.end()) return it->second;

    RealTables tables;
    const auto path = cache_path("quadrature", h, size);
    if (!load_tables(path, size, tables)) {
        compute_quadrature_tables(h, size, tables.a, tables.b);
        store_tables(path, tables);
    }
    return cache.emplace(std::make_pair(h, size), std::move(tables))
        .first->second;
}

// First-order tables A1, B1 with A(h) ~= I + h A1, B(h) ~= h B1; obtained by
// Richardson-extrapolated central differences of the oracle at h = 0. The
// oracle is regular through h = 0 (negative h is the mirrored cavity).
const RealTables& series_tables(int size) {
    static std::map<int, RealTables> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(size);
    if (it != cache.end()) return it->second;

    RealTables tables;
    const auto path = cache_path("series1_deriv", 0.0, size);
    if (!load_tables(path, size, tables)) {
        const double step = 1e-3;
        RealTables p1, m1, p2, m2;
        compute_quadrature_tables(step, size, p1.a, p1.b);
        compute_quadrature_tables(-step, size, m1.a, m1.b);
        compute_quadrature_tables(step / 2.0, size, p2.a, p2.b);
        compute_quadrature_tables(-step / 2.0, size, m2.a, m2.b);
        const Eigen::MatrixXd da_coarse = (p1.a - m1.a) / (2.0 * step);
        const Eigen::MatrixXd db_coarse = (p1.b - m1.b) / (2.0 * step);
        const Eigen::MatrixXd da_fine = (p2.a - m2.a) / step;
        const Eigen::MatrixXd db_fine = (p2.b - m2.b) / step;
        tables.a = (4.0 * da_fine - da_coarse) / 3.0;
        tables.b = (4.0 * db_fine - db_coarse) / 3.0;
        store_tables(path, tables);
    }
    return cache.emplace(size, std::move(tables)).first->second;
}

Eigen::Matrix2d m_block(const std::complex<double>& a,
                        const std::complex<double>& b) {
    Eigen::Matrix2d m;
    m << (a - b).real(), (a + b).imag(), -(a - b).imag(), (a + b).real();
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

double RindlerCavity::minkowski_frequency(int n) const {
    return n * M_PI / length;
}

double RindlerCavity::rindler_frequency(int n) const {
    if (h == 0.0) return minkowski_frequency(n);
    // Omega_n = n pi / (Rindler wall separation), separation (2/a) arctanh(h/2).
    return minkowski_frequency(n) * h / (2.0 * std::atanh(h / 2.0));
}

RindlerCavity rindler_geometry(double h, double length) {
    if (h < 0.0 || h >= 2.0) {
        throw std::domain_error(
            "h must lie in [0, 2): the left wall reaches the Rindler horizon");
    }
    if (!(length > 0.0)) {
        throw std::invalid_argument("cavity length must be positive");
    }
    RindlerCavity cavity;
    cavity.h = h;
    cavity.length = length;
    cavity.wall_left = 1.0 - h / 2.0;
    cavity.wall_right = 1.0 + h / 2.0;
    cavity.xi_left = std::log1p(-h / 2.0);
    cavity.xi_right = std::log1p(h / 2.0);
    return cavity;
}

// ---------------------------------------------------------------------------
// BogoliubovMap
// ---------------------------------------------------------------------------

BogoliubovMap::BogoliubovMap(Eigen::MatrixXcd a, Eigen::MatrixXcd b, int n_max,
                             MapMeta meta)
    : a_(std::move(a)), b_(std::move(b)), n_max_(n_max), meta_(meta) {
    if (n_max_ < 1) throw std::invalid_argument("n_max must be >= 1");
    if (a_.rows() != a_.cols() || b_.rows() != b_.cols() ||
        a_.rows() != b_.rows() || a_.rows() < n_max_) {
        throw std::invalid_argument("inconsistent Bogoliubov matrix sizes");
    }
}

Eigen::MatrixXcd BogoliubovMap::mode_mixing() const {
    return a_.topLeftCorner(n_max_, n_max_);
}

Eigen::MatrixXcd BogoliubovMap::particle_creation() const {
    return b_.topLeftCorner(n_max_, n_max_);
}

BogoliubovMap inertial_to_rindler_coeffs(double h, int n_max,
                                         MapMethod method) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    if (method == MapMethod::series1 && (h < 0.0 || h > 0.5)) {
        throw std::domain_error("series1 requires h in [0, 0.5]");
    }
    if (method == MapMethod::quadrature && (h <= -1.9 || h > 1.9)) {
        throw std::domain_error("quadrature requires |h| <= 1.9");
    }
    // Factor 4 keeps the truncation tail of the Bogoliubov identities below
    // 1e-8 on the interior n_max modes for h <= 0.1; factor 2 leaves ~1e-7.
    const int size = 4 * n_max;
    MapMeta meta;
    meta.h = h;
    if (h == 0.0) {
        meta.provenance = method == MapMethod::series1
                              ? MapProvenance::series
                              : MapProvenance::quadrature;
        meta.defect_bound = 1e-12;
        return BogoliubovMap(Eigen::MatrixXcd::Identity(size, size),
                             Eigen::MatrixXcd::Zero(size, size), n_max, meta);
    }
    if (method == MapMethod::series1) {
        const RealTables& t = series_tables(size);
        meta.provenance = MapProvenance::series;
        meta.defect_bound = 10.0 * h * h + 1e-8;
        return BogoliubovMap(
            Eigen::MatrixXcd::Identity(size, size) +
                (h * t.a).cast<std::complex<double>>(),
            (h * t.b).cast<std::complex<double>>(), n_max, meta);
    }
    const RealTables& t = quadrature_tables(h, size);
    meta.provenance = MapProvenance::quadrature;
    meta.defect_bound = 1e-8;
    return BogoliubovMap(t.a.cast<std::complex<double>>(),
                         t.b.cast<std::complex<double>>(), n_max, meta);
}

BogoliubovMap free_phase_map(double theta1, int n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    const int size = 4 * n_max;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(size, size);
    for (int k = 1; k <= size; ++k) {
        a(k - 1, k - 1) = std::polar(1.0, -k * theta1);
    }
    MapMeta meta;
    meta.provenance = MapProvenance::phase;
    meta.angle = theta1;
    meta.defect_bound = 1e-12;
    return BogoliubovMap(std::move(a), Eigen::MatrixXcd::Zero(size, size),
                         n_max, meta);
}

BogoliubovMap compose(const BogoliubovMap& outer, const BogoliubovMap& inner) {
    if (outer.n_internal() != inner.n_internal() ||
        outer.n_max() != inner.n_max()) {
        throw std::invalid_argument("composition truncation mismatch");
    }
    const Eigen::MatrixXcd& ao = outer.mode_mixing_internal();
    const Eigen::MatrixXcd& bo = outer.particle_creation_internal();
    const Eigen::MatrixXcd& ai = inner.mode_mixing_internal();
    const Eigen::MatrixXcd& bi = inner.particle_creation_internal();
    MapMeta meta;
    meta.provenance = MapProvenance::composed;
    meta.h = outer.meta().h != 0.0 ? outer.meta().h : inner.meta().h;
    meta.defect_bound = outer.meta().defect_bound + inner.meta().defect_bound;
    return BogoliubovMap(ao * ai + bo * bi.conjugate(),
                         ao * bi + bo * ai.conjugate(), outer.n_max(), meta);
}

BogoliubovMap inverse(const BogoliubovMap& map) {
    MapMeta meta = map.meta();
    meta.provenance = MapProvenance::composed;
    return BogoliubovMap(map.mode_mixing_internal().adjoint(),
                         -map.particle_creation_internal().transpose(),
                         map.n_max(), meta);
}

BogoliubovMap parity_conjugate(const BogoliubovMap& map) {
    const int size = map.n_internal();
    Eigen::MatrixXcd a = map.mode_mixing_internal();
    Eigen::MatrixXcd b = map.particle_creation_internal();
    for (int m = 0; m < size; ++m) {
        for (int n = 0; n < size; ++n) {
            if ((m + n) % 2 == 1) {
                a(m, n) = -a(m, n);
                b(m, n) = -b(m, n);
            }
        }
    }
    return BogoliubovMap(std::move(a), std::move(b), map.n_max(), map.meta());
}

BogoliubovMap building_block(double h, double theta_a, int n_max,
                             MapMethod method) {
    const BogoliubovMap to_rindler = inertial_to_rindler_coeffs(h, n_max, method);
    const BogoliubovMap phase = free_phase_map(theta_a, n_max);
    BogoliubovMap result =
        compose(inverse(to_rindler), compose(phase, to_rindler));
    MapMeta meta = result.meta();
    meta.h = h;
    meta.angle = theta_a;
    return BogoliubovMap(result.mode_mixing_internal(),
                         result.particle_creation_internal(), n_max, meta);
}

double theta_a_from_trajectory(double accel, double t_a, double length,
                               double light_speed) {
    if (!(accel > 0.0)) throw std::invalid_argument("acceleration must be > 0");
    if (t_a < 0.0) throw std::invalid_argument("t_a must be >= 0");
    const double h = accel * length / (light_speed * light_speed);
    if (h >= 2.0) throw std::domain_error("h = aL/c^2 must be < 2");
    return M_PI * std::asinh(accel * t_a / light_speed) /
           (2.0 * std::atanh(h / 2.0));
}

TrajectorySpec TrajectorySpec::round_trip(double accel, double t_a, double t_i,
                                          double length, double light_speed) {
    TrajectorySpec spec;
    spec.accel = accel;
    spec.t_a = t_a;
    spec.t_i = t_i;
    spec.length = length;
    spec.light_speed = light_speed;
    using Kind = TrajectorySegment::Kind;
    spec.segments = {{Kind::accelerated, +1}, {Kind::inertial, 0},
                     {Kind::accelerated, -1}, {Kind::accelerated, -1},
                     {Kind::inertial, 0},     {Kind::accelerated, +1}};
    return spec;
}

double TrajectorySpec::total_lab_time() const {
    double total = 0.0;
    for (const auto& seg : segments) {
        total += seg.kind == TrajectorySegment::Kind::accelerated ? t_a : t_i;
    }
    return total;
}

BogoliubovMap round_trip_map(const TrajectorySpec& spec, int n_max,
                             MapMethod method) {
    if (!(spec.accel > 0.0) || spec.t_a < 0.0 || spec.t_i < 0.0) {
        throw std::invalid_argument("invalid trajectory spec");
    }
    const double c = spec.light_speed;
    const double theta_a =
        spec.t_a > 0.0
            ? theta_a_from_trajectory(spec.accel, spec.t_a, spec.length, c)
            : 0.0;
    // Inertial-segment phase in the comoving frame: omega_1 t_i sqrt(1-v^2/c^2)
    // with v/c = (a t_a/c) / sqrt(1 + (a t_a/c)^2).
    const double rapidity_arg = spec.accel * spec.t_a / c;
    const double omega1 = M_PI * c / spec.length;
    const double theta_i =
        omega1 * spec.t_i / std::sqrt(1.0 + rapidity_arg * rapidity_arg);

    BogoliubovMap total = free_phase_map(0.0, n_max);
    for (const auto& seg : spec.segments) {
        if (seg.kind == TrajectorySegment::Kind::inertial) {
            total = compose(free_phase_map(theta_i, n_max), total);
        } else if (theta_a != 0.0) {
            const double h = spec.h();
            BogoliubovMap block = building_block(h, theta_a, n_max, method);
            if (seg.accel_sign < 0) block = parity_conjugate(block);
            total = compose(block, total);
        }
    }
    return total;
}

BogoliubovMap strip_particle_creation(const BogoliubovMap& map) {
    MapMeta meta = map.meta();
    meta.provenance = MapProvenance::stripped;
    return BogoliubovMap(
        map.mode_mixing_internal(),
        Eigen::MatrixXcd::Zero(map.n_internal(), map.n_internal()),
        map.n_max(), meta);
}

GaussianState apply_to_mode(const BogoliubovMap& map,
                            const GaussianState& state, int k) {
    if (state.n_modes() != 1) {
        throw std::invalid_argument("apply_to_mode expects a single-mode state");
    }
    if (k < 1 || k > map.n_max()) {
        throw std::out_of_range("mode index outside map truncation");
    }
    const Eigen::MatrixXcd& a = map.mode_mixing_internal();
    const Eigen::MatrixXcd& b = map.particle_creation_internal();
    const int size = map.n_internal();
    const Eigen::Matrix2d m_kk = m_block(a(k - 1, k - 1), b(k - 1, k - 1));
    Eigen::Matrix2d sigma =
        m_kk * state.covariance() * m_kk.transpose();
    for (int n = 1; n <= size; ++n) {
        if (n == k) continue;
        const Eigen::Matrix2d m_kn = m_block(a(k - 1, n - 1), b(k - 1, n - 1));
        sigma += 0.25 * m_kn * m_kn.transpose();
    }
    const Eigen::Vector2d moments = m_kk * state.first_moments();
    return GaussianState(moments, sigma);
}

IdentityDefects identity_defects(const BogoliubovMap& map) {
    const Eigen::MatrixXcd& a = map.mode_mixing_internal();
    const Eigen::MatrixXcd& b = map.particle_creation_internal();
    const int size = map.n_internal();
    const Eigen::MatrixXcd d1 = a * a.adjoint() - b * b.adjoint() -
                                Eigen::MatrixXcd::Identity(size, size);
    const Eigen::MatrixXcd d2 = a * b.transpose() - b * a.transpose();
    const int n = map.n_max();
    IdentityDefects defects;
    defects.unitarity = d1.topLeftCorner(n, n).cwiseAbs().maxCoeff();
    defects.symmetry = d2.topLeftCorner(n, n).cwiseAbs().maxCoeff();
    return defects;
}

double minkowski_mode_product(int m, int n, double h) {
    (void)h;  // the Minkowski modes on the slice do not involve the geometry
    const auto integrand = [m, n](double s) -> Pair2 {
        const double v = minkowski_shape(m, s) * minkowski_shape(n, s);
        return {v, 0.0};
    };
    const Pair2 u =
        integrate_adaptive(integrand, -0.5, 0.5, 1e-12, std::max(8, m + n));
    return (m + n) / std::sqrt(double(m) * double(n)) * u.first;
}

double rindler_mode_product(int m, int n, double h) {
    if (h == 0.0) return minkowski_mode_product(m, n, h);
    const auto integrand = [m, n, h](double s) -> Pair2 {
        const double um = rindler_fraction(h, s);
        const double v = std::sin(m * M_PI * um) * std::sin(n * M_PI * um) /
                         (1.0 + h * s);
        return {v, 0.0};
    };
    const Pair2 u =
        integrate_adaptive(integrand, -0.5, 0.5, 1e-12, std::max(8, m + n));
    return (m + n) * h /
           (2.0 * std::atanh(h / 2.0) * std::sqrt(double(m) * double(n))) *
           u.first;
}

}  // namespace cavityclock
