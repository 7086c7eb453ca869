#include "cavityclock/metrology.hpp"

#include <cmath>
#include <stdexcept>

namespace cavityclock {

namespace {

// Rotation generator dR/d(theta) at theta = 0.
const Eigen::Matrix2d kGenerator = (Eigen::Matrix2d() << 0, -1, 1, 0).finished();

}  // namespace

double qfi_closed_form(const StateParams& params) {
    const double p = params.purity;
    const double two_r = 2.0 * params.r;
    const double displaced = 4.0 * params.alpha * params.alpha * p *
                             (std::cosh(two_r) +
                              std::sinh(two_r) * std::cos(params.phi));
    const double sh = std::sinh(two_r);
    return displaced + 4.0 * sh * sh / (1.0 + p * p);
}

double qfi_from_derivatives(const Eigen::Vector2d& moments,
                            const Eigen::Vector2d& d_moments,
                            const Eigen::Matrix2d& sigma,
                            const Eigen::Matrix2d& d_sigma, double purity,
                            double d_purity) {
    const double det = sigma.determinant();
    if (!(det > 0.0)) throw std::invalid_argument("singular covariance");
    const Eigen::Matrix2d inv = sigma.inverse();
    double value = d_moments.dot(inv * d_moments);
    const Eigen::Matrix2d ratio = inv * d_sigma;
    value += 0.5 * (ratio * ratio).trace() / (1.0 + purity * purity);
    const double p4 = std::pow(purity, 4);
    if (d_purity != 0.0) {
        if (p4 >= 1.0) {
            throw std::invalid_argument(
                "purity derivative term undefined at P = 1");
        }
        value += 2.0 * d_purity * d_purity / (1.0 - p4);
    }
    (void)moments;
    return value;
}

double qfi_general(const GaussianState& state, DerivativeMode mode) {
    if (state.n_modes() != 1) {
        throw std::invalid_argument("qfi_general requires a single mode");
    }
    const Eigen::Vector2d x = state.first_moments();
    const Eigen::Matrix2d sigma = state.covariance();
    Eigen::Vector2d dx;
    Eigen::Matrix2d dsigma;
    if (mode == DerivativeMode::analytic) {
        dx = kGenerator * x;
        dsigma = kGenerator * sigma + sigma * kGenerator.transpose();
    } else {
        const double step = 1e-6;
        const GaussianState plus = rotate_phase(state, step);
        const GaussianState minus = rotate_phase(state, -step);
        dx = (plus.first_moments() - minus.first_moments()) / (2.0 * step);
        dsigma = (plus.covariance() - minus.covariance()) / (2.0 * step);
    }
    return qfi_from_derivatives(x, dx, sigma, dsigma, state.purity(), 0.0);
}

double phase_variance(double qfi, int measurements) {
    if (!(qfi > 0.0)) {
        throw std::invalid_argument("QFI must be positive: uninformative state");
    }
    if (measurements < 1) {
        throw std::invalid_argument("need at least one measurement");
    }
    return 1.0 / std::sqrt(measurements * qfi);
}

StateParams params_from_split(double mean_photons, double split, double phi0,
                              double theta0, double purity) {
    if (split < 0.0 || split > 1.0) {
        throw std::invalid_argument("photon split must lie in [0, 1]");
    }
    StateParams params;
    params.alpha = std::sqrt(split * mean_photons);
    params.theta = theta0;
    const double squeezed_photons =
        purity * (1.0 - split) * mean_photons - (1.0 - purity) / 2.0;
    params.r = std::asinh(std::sqrt(std::max(0.0, squeezed_photons)));
    params.phi = phi0;
    params.purity = purity;
    return params;
}

double optimal_photon_split(double mean_photons, double phi0, double purity) {
    if (!(mean_photons > 0.0)) {
        throw std::invalid_argument("mean photon number must be positive");
    }
    const auto objective = [&](double s) {
        return qfi_closed_form(params_from_split(mean_photons, s, phi0, 0.0,
                                                 purity));
    };
    const double grid_step = 1e-3;
    double best_s = 0.0;
    double best_value = objective(0.0);
    const int n_steps = static_cast<int>(std::round(1.0 / grid_step));
    for (int i = 1; i <= n_steps; ++i) {
        const double s = i * grid_step;
        const double value = objective(s);
        if (value > best_value) {
            best_value = value;
            best_s = s;
        }
    }
    // Golden-section refinement on the bracketing grid cell.
    double lo = std::max(0.0, best_s - grid_step);
    double hi = std::min(1.0, best_s + grid_step);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        }
    }
    const double refined = 0.5 * (lo + hi);
    return objective(refined) > best_value ? refined : best_s;
}

}  // namespace cavityclock
