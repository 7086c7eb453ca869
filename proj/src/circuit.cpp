#include "cavityclock/circuit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cavityclock/gaussian.hpp"
#include "cavityclock/metrology.hpp"

namespace cavityclock {

double squid_critical_current(double junction_current, double external_flux) {
    if (!(junction_current > 0.0)) {
        throw std::invalid_argument("junction critical current must be > 0");
    }
    return 2.0 * junction_current * std::abs(std::cos(M_PI * external_flux));
}

double decay(double n_initial, double t_total, double quality_factor,
             double omega) {
    if (!(quality_factor > 0.0) || !(omega > 0.0) || n_initial < 0.0 ||
        t_total < 0.0) {
        throw std::invalid_argument("decay arguments must be non-negative");
    }
    const double tau = 2.0 * quality_factor / omega;
    return n_initial * std::exp(-t_total / tau);
}

double angular_frequency(const CircuitParams& params) {
    return M_PI * params.phase_velocity / params.cavity_length;
}

double squid_inductance(double effective_critical_current, double phase) {
    return kFluxQuantum /
           (2.0 * M_PI * effective_critical_current * std::cos(phase));
}

double max_photon_number(const CircuitParams& params) {
    if (!(params.current_ratio > 0.0) || params.current_ratio >= 1.0) {
        throw std::invalid_argument("current ratio kappa must lie in (0, 1)");
    }
    if (params.external_flux < 0.0 || params.external_flux >= 0.5) {
        throw std::invalid_argument("external flux must lie in [0, 0.5) Phi0");
    }
    const double ic_eff = squid_critical_current(
        params.junction_critical_current, params.external_flux);
    const double omega = angular_frequency(params);
    const double lambda =
        params.cavity_length -
        2.0 * squid_inductance(ic_eff, 0.0) / params.inductance_per_length;
    if (!(lambda > 0.0)) {
        throw std::invalid_argument(
            "SQUID inductance exceeds the cavity length budget");
    }
    const double current = params.current_ratio * ic_eff;
    const double kappa2 = params.current_ratio * params.current_ratio;
    const double inductance =
        params.inductance_per_length * lambda +
        kFluxQuantum / (M_PI * ic_eff * std::sqrt(1.0 - kappa2));
    return 0.5 * inductance * current * current / (kHbar * omega);
}

Table snr_vs_trajectories(const CircuitParams& params, ClockStateKind kind,
                          int k_max, LossModel loss) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    const double n_max = max_photon_number(params);
    const double omega = angular_frequency(params);
    const double tau = 2.0 * params.quality_factor / omega;

    StateParams initial;
    if (kind == ClockStateKind::coherent) {
        initial.alpha = std::sqrt(n_max);
    } else {
        initial.r = std::asinh(std::sqrt(n_max));
    }
    const GaussianState state0 = make_state(initial);

    Table table;
    table.columns = {"k", "theta", "delta_theta", "snr", "n_remaining"};
    table.add_metadata("kind", kind == ClockStateKind::coherent
                                   ? "coherent"
                                   : "squeezed_vacuum");
    table.add_metadata("loss_model", loss == LossModel::pure_loss
                                         ? "pure_loss"
                                         : "photon_rescale");
    table.add_metadata("n_initial", format_real(n_max));
    table.add_metadata("omega", format_real(omega));
    table.add_metadata("tau", format_real(tau));
    table.add_metadata("t_traj", format_real(params.trajectory_time));
    table.add_metadata("delta_theta_traj",
                       format_real(params.phase_per_trajectory));

    for (int k = 0; k <= k_max; ++k) {
        const double eta = std::exp(-k * params.trajectory_time / tau);
        StateParams decayed;
        if (loss == LossModel::pure_loss) {
            decayed = extract_params(pure_loss(state0, eta));
        } else {
            decayed = initial;
            if (kind == ClockStateKind::coherent) {
                decayed.alpha = std::sqrt(eta) * initial.alpha;
            } else {
                decayed.r = std::asinh(std::sqrt(eta * n_max));
            }
        }
        const double qfi = qfi_closed_form(decayed);
        const double theta = k * params.phase_per_trajectory;
        const double delta = qfi > 0.0 ? phase_variance(qfi, 1)
                                       : std::numeric_limits<double>::infinity();
        table.rows.push_back({static_cast<double>(k), theta, delta,
                              std::isfinite(delta) ? theta / delta : 0.0,
                              mean_photon_number(decayed)});
    }
    return table;
}

}  // namespace cavityclock
