#pragma once

#include <Eigen/Dense>

namespace cavityclock {

/// Parametrization of a single-mode Gaussian state: displacement magnitude
/// alpha, pointer phase theta, squeezing magnitude r and angle phi, purity P.
/// Angles live on (-pi, pi].
struct StateParams {
    double alpha = 0.0;
    double theta = 0.0;
    double r = 0.0;
    double phi = 0.0;
    double purity = 1.0;
};

/// Gaussian state given by first moments <X_i> and the real symmetric
/// covariance matrix sigma. Quadratures X_{2n-1} = (a_n + a_n^dag)/2,
/// X_{2n} = -i(a_n - a_n^dag)/2, so the vacuum covariance is I/4.
///
/// The 1/4 vacuum variance is the single source of truth for the quadrature
/// scale in this codebase; every formula below assumes it.
class GaussianState {
public:
    GaussianState(Eigen::VectorXd first_moments, Eigen::MatrixXd covariance);

    static GaussianState vacuum(int n_modes = 1);

    int n_modes() const { return n_modes_; }
    const Eigen::VectorXd& first_moments() const { return first_moments_; }
    const Eigen::MatrixXd& covariance() const { return covariance_; }

    /// 1/(4 sqrt(det sigma)); single-mode only.
    double purity() const;

private:
    Eigen::VectorXd first_moments_;
    Eigen::MatrixXd covariance_;
    int n_modes_;
};

/// Wrap an angle to (-pi, pi].
double wrap_angle(double angle);

/// 2x2 rotation matrix R(angle).
Eigen::Matrix2d rotation2(double angle);

/// Build the single-mode state with moments (alpha cos theta, alpha sin theta)
/// and covariance (1/4P) R(psi) diag(e^{-2r}, e^{2r}) R(psi)^T, psi chosen so
/// that tan(2 theta + phi) = 2 sigma_12 / (sigma_11 - sigma_22).
GaussianState make_state(const StateParams& params);

/// Invert make_state. Degenerate branches: theta := 0 when alpha < 1e-12,
/// phi := 0 when r < 1e-12.
StateParams extract_params(const GaussianState& state);

/// N = alpha^2 + (1/P - 1)/2 + sinh^2(r)/P.
double mean_photon_number(const StateParams& params);

/// Free evolution: moments and covariance conjugated by R(delta).
GaussianState rotate_phase(const GaussianState& state, double delta);

/// Pure-loss channel with transmissivity eta: moments scaled by sqrt(eta),
/// sigma -> eta sigma + (1 - eta) I/4.
GaussianState pure_loss(const GaussianState& state, double eta);

}  // namespace cavityclock
