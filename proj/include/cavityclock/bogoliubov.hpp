#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cavityclock/gaussian.hpp"

namespace cavityclock {

/// Dirichlet cavity of proper length L carried by a uniformly accelerated
/// observer, h = aL/c^2. Natural units c = 1 throughout this module.
///
/// Wall positions on the t = 0 slice sit at x = 1/a -+ L/2 (cavity centre at
/// x = 1/a). The Rindler wall separation is 2 (1/a) arctanh(h/2); note this
/// is twice the arctanh(h/2)/a one might read elsewhere -- the factor 2 is
/// required for Omega_n -> omega_n as h -> 0 and for consistency with
/// theta_a_from_trajectory below.
struct RindlerCavity {
    double h = 0.0;
    double length = 1.0;
    // Wall and Rindler coordinates in units of c^2/a.
    double wall_left = 0.0;
    double wall_right = 0.0;
    double xi_left = 0.0;
    double xi_right = 0.0;

    /// omega_n = pi n / L.
    double minkowski_frequency(int n) const;
    /// Omega_n = pi n / (Rindler wall separation).
    double rindler_frequency(int n) const;
};

RindlerCavity rindler_geometry(double h, double length);

enum class MapMethod { quadrature, series1 };

enum class MapProvenance { quadrature, series, phase, composed, stripped };

struct MapMeta {
    MapProvenance provenance = MapProvenance::composed;
    double h = 0.0;
    double angle = 0.0;
    /// Upper bound on the Bogoliubov identity defect expected for this map.
    double defect_bound = 1e-8;
};

/// Linear map b_m = sum_n (A_mn^* a_n - B_mn^* a_n^dag). Matrices are stored
/// at internal truncation 4 n_max; compositions and state applications run at
/// the internal size and results are cropped to n_max on inspection.
class BogoliubovMap {
public:
    BogoliubovMap(Eigen::MatrixXcd a, Eigen::MatrixXcd b, int n_max,
                  MapMeta meta);

    int n_max() const { return n_max_; }
    int n_internal() const { return static_cast<int>(a_.rows()); }
    const Eigen::MatrixXcd& mode_mixing_internal() const { return a_; }
    const Eigen::MatrixXcd& particle_creation_internal() const { return b_; }
    /// Cropped n_max x n_max views.
    Eigen::MatrixXcd mode_mixing() const;
    Eigen::MatrixXcd particle_creation() const;
    const MapMeta& meta() const { return meta_; }

private:
    Eigen::MatrixXcd a_;
    Eigen::MatrixXcd b_;
    int n_max_;
    MapMeta meta_;
};

/// Bogoliubov coefficients between Minkowski and Rindler cavity modes,
/// A_mn = (psi_m, phi_n), B_mn = -(psi_m, phi_n^*), evaluated on the shared
/// t = 0 slice. "quadrature" integrates the Klein-Gordon products directly;
/// "series1" returns I + h A1, h B1 with the first-order tables obtained once
/// by Richardson-extrapolated central differences of the quadrature oracle.
BogoliubovMap inertial_to_rindler_coeffs(double h, int n_max, MapMethod method);

/// A = diag(e^{-i k theta1}), B = 0. Applying to a coherent state in mode 1
/// advances its phase theta by theta1.
BogoliubovMap free_phase_map(double theta1, int n_max);

/// Successive transformations: the composed map acts as outer after inner.
/// A = A_out A_in + B_out B_in^*, B = A_out B_in + B_out A_in^*.
BogoliubovMap compose(const BogoliubovMap& outer, const BogoliubovMap& inner);

/// Inverse map (A^dag, -B^T); exact up to truncation defect.
BogoliubovMap inverse(const BogoliubovMap& map);

/// Mirror reflection of the cavity about its centre:
/// A_mn -> (-1)^{m+n} A_mn, likewise for B. Equals the map for reversed
/// acceleration sign.
BogoliubovMap parity_conjugate(const BogoliubovMap& map);

/// G^{-1} . free_phase(theta_a) . G with G = inertial_to_rindler_coeffs(h).
/// 2 pi - periodic in theta_a.
BogoliubovMap building_block(double h, double theta_a, int n_max,
                             MapMethod method = MapMethod::quadrature);

/// Rindler phase accumulated by mode 1 during one segment of proper
/// acceleration a lasting lab time t_a:
/// theta_a = pi arcsinh(a t_a / c) / (2 arctanh(h/2)).
double theta_a_from_trajectory(double accel, double t_a, double length,
                               double light_speed = 1.0);

struct TrajectorySegment {
    enum class Kind { accelerated, inertial };
    Kind kind = Kind::accelerated;
    int accel_sign = 1;  // +-1, used for accelerated segments
};

/// Round trip: four accelerated segments of lab duration t_a and two inertial
/// segments of duration t_i, total lab time 4 t_a + 2 t_i. The segment list
/// is explicit; round_trip() fills in the reading [+a, coast, -a, -a, coast,
/// +a], executed front to back.
struct TrajectorySpec {
    double accel = 0.0;
    double t_a = 0.0;
    double t_i = 0.0;
    double length = 1.0;
    double light_speed = 1.0;
    std::vector<TrajectorySegment> segments;

    static TrajectorySpec round_trip(double accel, double t_a, double t_i,
                                     double length, double light_speed = 1.0);

    double total_lab_time() const;
    double h() const { return accel * length / (light_speed * light_speed); }
};

BogoliubovMap round_trip_map(const TrajectorySpec& spec, int n_max,
                             MapMethod method = MapMethod::quadrature);

/// Drop the particle-creation block: B := 0, A unchanged.
BogoliubovMap strip_particle_creation(const BogoliubovMap& map);

/// Reduced state of mode k after the map, for an input occupying mode k with
/// vacuum elsewhere: sigma_k = M_kk sigma_0 M_kk^T + (1/4) sum_{n!=k} M_kn
/// M_kn^T, first moments by M_kk.
GaussianState apply_to_mode(const BogoliubovMap& map,
                            const GaussianState& state, int k);

/// Max-norm defects of the Bogoliubov identities A A^dag - B B^dag = I and
/// A B^T = B A^T, restricted to the first map.n_max() modes.
struct IdentityDefects {
    double unitarity = 0.0;
    double symmetry = 0.0;
};
IdentityDefects identity_defects(const BogoliubovMap& map);

/// Klein-Gordon self-products of the two mode families, by quadrature; both
/// should equal delta_mn.
double minkowski_mode_product(int m, int n, double h);
double rindler_mode_product(int m, int n, double h);

}  // namespace cavityclock
