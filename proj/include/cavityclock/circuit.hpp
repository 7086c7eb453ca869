#pragma once

#include "cavityclock/table.hpp"

namespace cavityclock {

/// Superconducting-resonator parameters, SI units. The resonator is a
/// transmission line terminated by two SQUIDs; external_flux is given in
/// units of the flux quantum Phi0.
struct CircuitParams {
    double inductance_per_length = 0.44e-6;   // L0, H/m
    double junction_critical_current = 0.5e-6;  // Ic per junction, A
    double external_flux = 0.4;               // Phi_ext / Phi0, in [0, 0.5)
    double quality_factor = 1e4;              // Q
    double current_ratio = 0.2;               // kappa = I / Ic(Phi_ext), < 1
    double cavity_length = 0.06;              // effective length L_eff, m
    double phase_velocity = 1.2e8;            // v, m/s
    double trajectory_time = 4e-9;            // lab duration per trajectory, s
    double phase_per_trajectory = 0.94e-3;    // rad per trajectory
};

inline constexpr double kFluxQuantum = 2.067833848e-15;  // Wb
inline constexpr double kHbar = 1.054571817e-34;         // J s

/// Flux-tuned effective critical current 2 Ic |cos(pi Phi_ext/Phi0)|.
double squid_critical_current(double junction_current, double external_flux);

/// Photon number after leakage: N_i e^{-t_tot / tau} with tau = 2Q/omega.
double decay(double n_initial, double t_total, double quality_factor,
             double omega);

/// Fundamental angular frequency pi v / L_eff.
double angular_frequency(const CircuitParams& params);

/// Effective SQUID inductance (Phi0/2pi) / (Ic(Phi_ext) cos phase).
double squid_inductance(double effective_critical_current, double phase);

/// Maximal photon number at current I = kappa Ic(Phi_ext): energy stored in
/// the cavity plus the two SQUIDs divided by hbar omega. The physical line
/// length is lambda = L_eff - 2 L_SQ(0)/L0.
double max_photon_number(const CircuitParams& params);

enum class ClockStateKind { coherent, squeezed_vacuum };

/// How leakage is modeled for the squeezed vacuum: the pure-loss Gaussian
/// channel (default), or a naive rescaling of the photon number with the
/// state kept pure.
enum class LossModel { pure_loss, photon_rescale };

/// Signal-to-noise of phase estimation versus trajectory count k: rows
/// (k, theta, delta_theta, snr, n_remaining) with theta = k * phase shift per
/// trajectory and delta_theta the single-measurement Cramer-Rao bound of the
/// decayed state.
Table snr_vs_trajectories(const CircuitParams& params, ClockStateKind kind,
                          int k_max, LossModel loss = LossModel::pure_loss);

}  // namespace cavityclock
