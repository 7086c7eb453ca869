#pragma once

#include "cavityclock/gaussian.hpp"

namespace cavityclock {

struct QfiResult {
    double value = 0.0;
    enum class Method { closed_form, general } method = Method::closed_form;
    StateParams input;
};

/// H_theta = 4 alpha^2 P [cosh 2r + sinh 2r cos phi] + 4 sinh^2(2r)/(1+P^2).
/// Independent of theta.
double qfi_closed_form(const StateParams& params);

enum class DerivativeMode { analytic, finite_difference };

/// General single-mode Gaussian QFI
///   H = X'^T sigma^-1 X' + tr[(sigma^-1 sigma')^2] / (2 (1+P^2))
///       + 2 P'^2 / (1 - P^4)
/// for the phase parameter; derivatives generated by the rotation (P' = 0).
/// The finite-difference mode (central, step 1e-6) exists as a third opinion
/// for tests.
double qfi_general(const GaussianState& state,
                   DerivativeMode mode = DerivativeMode::analytic);

/// The general formula with all derivatives supplied explicitly, including
/// the purity term. At P = 1 with P' = 0 the last term is taken as 0.
double qfi_from_derivatives(const Eigen::Vector2d& moments,
                            const Eigen::Vector2d& d_moments,
                            const Eigen::Matrix2d& sigma,
                            const Eigen::Matrix2d& d_sigma, double purity,
                            double d_purity);

/// Cramer-Rao bound for M optimal measurements: 1/sqrt(M H).
double phase_variance(double qfi, int measurements);

/// argmax over s = alpha^2/N in [0, 1] of the closed-form QFI at fixed mean
/// photon number N, squeezing angle phi0 and purity P. Grid step 1e-3 plus
/// golden-section refinement around the best grid point.
double optimal_photon_split(double mean_photons, double phi0, double purity);

/// State at given photon split: alpha = sqrt(s N), squeezing soaking up the
/// photons left after the thermal share, sinh^2 r = P (1-s) N - (1-P)/2
/// (clamped at 0).
StateParams params_from_split(double mean_photons, double split, double phi0,
                              double theta0, double purity);

}  // namespace cavityclock
