#include "cavityclock/sweeps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cavityclock {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double transformed_qfi(const StateParams& initial, const BogoliubovMap& map) {
    const GaussianState transformed =
        apply_to_mode(map, make_state(initial), 1);
    return qfi_closed_form(extract_params(transformed));
}

const std::array<std::string, 6> kAxisOrder = {"h",        "theta_a", "theta_0",
                                               "n_photons", "split",  "phi_0"};

}  // namespace

double qfi_ratio(const StateParams& initial, double h, double theta_a,
                 TransformFlag flag, int n_max, MapMethod method) {
    const double initial_qfi = qfi_closed_form(initial);
    if (!(initial_qfi > 0.0)) {
        throw std::invalid_argument("qfi_ratio requires an informative state");
    }
    BogoliubovMap map = building_block(h, theta_a, n_max, method);
    if (flag == TransformFlag::mode_mixing_only) {
        map = strip_particle_creation(map);
    }
    return transformed_qfi(initial, map) / initial_qfi;
}

double creation_shift(const StateParams& initial, double h, double theta_a,
                      double theta_0, int n_max, MapMethod method) {
    StateParams seeded = initial;
    seeded.theta = theta_0;
    const double initial_qfi = qfi_closed_form(seeded);
    if (!(initial_qfi > 0.0)) {
        throw std::invalid_argument(
            "creation_shift requires an informative state");
    }
    const BogoliubovMap map = building_block(h, theta_a, n_max, method);
    const double full = transformed_qfi(seeded, map);
    const double stripped =
        transformed_qfi(seeded, strip_particle_creation(map));
    return (full - stripped) / initial_qfi;
}

double vacuum_squeezing(double h, double theta_a, int n_max, MapMethod method) {
    const BogoliubovMap map = building_block(h, theta_a, n_max, method);
    const GaussianState out = apply_to_mode(map, GaussianState::vacuum(), 1);
    return extract_params(out).r;
}

std::optional<double> low_n_enhancement(double h, double theta_a, int n_max,
                                        MapMethod method) {
    BogoliubovMap map = building_block(h, theta_a, n_max, method);
    const auto excess = [&](double n) {
        StateParams coherent;
        coherent.alpha = std::sqrt(n);
        return transformed_qfi(coherent, map) / qfi_closed_form(coherent) - 1.0;
    };
    // Bracket the smallest crossing on a geometric grid.
    double lo = 1e-8;
    double f_lo = excess(lo);
    if (f_lo <= 0.0) return std::nullopt;
    double hi = lo;
    double f_hi = f_lo;
    bool bracketed = false;
    while (hi < 1.0) {
        hi = std::min(1.0, hi * 1.5);
        f_hi = excess(hi);
        if (f_hi <= 0.0) {
            bracketed = true;
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    if (!bracketed) return std::nullopt;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Table run_sweep(const SweepSpec& spec) {
    std::array<std::vector<double>, 6> grids;
    for (std::size_t i = 0; i < kAxisOrder.size(); ++i) {
        for (const auto& axis : spec.axes) {
            if (axis.name == kAxisOrder[i]) {
                if (axis.values.empty()) {
                    throw std::invalid_argument("empty sweep axis: " +
                                                axis.name);
                }
                grids[i] = axis.values;
            }
        }
    }
    for (const auto& axis : spec.axes) {
        if (std::find(kAxisOrder.begin(), kAxisOrder.end(), axis.name) ==
            kAxisOrder.end()) {
            throw std::invalid_argument("unknown sweep axis: " + axis.name);
        }
    }
    const std::array<double, 6> fixed = {spec.h,        spec.theta_a,
                                         spec.theta_0,  spec.n_photons,
                                         spec.split,    spec.phi_0};
    for (std::size_t i = 0; i < grids.size(); ++i) {
        if (grids[i].empty()) grids[i] = {fixed[i]};
    }
    for (double h : grids[0]) {
        if (h < 0.0 || h > 0.5) {
            throw std::invalid_argument("sweep h values must lie in [0, 0.5]");
        }
    }

    Table table;
    table.columns = {"h",       "theta_a",   "theta_0",     "n_photons",
                     "split",   "phi_0",     "alpha_t",     "theta_t",
                     "r_t",     "phi_t",     "purity_t",    "n_photons_t",
                     "qfi_initial", "qfi_full", "qfi_stripped", "qfi_ratio",
                     "creation_shift"};
    table.add_metadata("flag", spec.flag == TransformFlag::full
                                   ? "full"
                                   : "mode_mixing_only");
    table.add_metadata("purity", format_real(spec.purity));
    table.add_metadata("n_max", std::to_string(spec.n_max));
    table.add_metadata("method", spec.method == MapMethod::quadrature
                                     ? "quadrature"
                                     : "series1");

    for (double h : grids[0]) {
        for (double theta_a : grids[1]) {
            const BogoliubovMap map =
                building_block(h, theta_a, spec.n_max, spec.method);
            const BogoliubovMap stripped = strip_particle_creation(map);
            for (double theta_0 : grids[2]) {
                for (double n_photons : grids[3]) {
                    for (double split : grids[4]) {
                        for (double phi_0 : grids[5]) {
                          try {
                            const StateParams initial = params_from_split(
                                n_photons, split, phi_0, theta_0, spec.purity);
                            const double qfi_initial = qfi_closed_form(initial);
                            const GaussianState out = apply_to_mode(
                                map, make_state(initial), 1);
                            const StateParams out_params = extract_params(out);
                            const double qfi_full =
                                qfi_closed_form(out_params);
                            const double qfi_stripped = transformed_qfi(
                                initial, stripped);
                            const double flagged =
                                spec.flag == TransformFlag::full ? qfi_full
                                                                 : qfi_stripped;
                            const bool informative = qfi_initial > 0.0;
                            table.rows.push_back(
                                {h, theta_a, theta_0, n_photons, split, phi_0,
                                 out_params.alpha, out_params.theta,
                                 out_params.r, out_params.phi,
                                 out_params.purity,
                                 mean_photon_number(out_params), qfi_initial,
                                 qfi_full, qfi_stripped,
                                 informative ? flagged / qfi_initial : kNan,
                                 informative
                                     ? (qfi_full - qfi_stripped) / qfi_initial
                                     : kNan});
                          } catch (const std::exception& err) {
                            std::ostringstream msg;
                            msg << "sweep cell failed at (h=" << h
                                << ", theta_a=" << theta_a
                                << ", theta_0=" << theta_0
                                << ", n_photons=" << n_photons
                                << ", split=" << split << ", phi_0=" << phi_0
                                << "): " << err.what();
                            throw std::runtime_error(msg.str());
                          }
                        }
                    }
                }
            }
        }
    }
    return table;
}

}  // namespace cavityclock
