#include "cavityclock/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cavityclock {

namespace {

constexpr double kVacuumVariance = 0.25;
constexpr double kDegenerateTol = 1e-12;
constexpr double kPuritySlack = 1e-9;

}  // namespace

GaussianState::GaussianState(Eigen::VectorXd first_moments,
                             Eigen::MatrixXd covariance)
    : first_moments_(std::move(first_moments)),
      covariance_(std::move(covariance)) {
    const auto dim = first_moments_.size();
    if (dim < 2 || dim % 2 != 0) {
        throw std::invalid_argument("first moments must have even length >= 2");
    }
    if (covariance_.rows() != dim || covariance_.cols() != dim) {
        throw std::invalid_argument("covariance dimension mismatch");
    }
    n_modes_ = static_cast<int>(dim / 2);
    if ((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("covariance not symmetric within 1e-12");
    }
    covariance_ = ((covariance_ + covariance_.transpose()) / 2.0).eval();
    Eigen::LLT<Eigen::MatrixXd> llt(covariance_);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("covariance not positive definite");
    }
    if (n_modes_ == 1) {
        const double p = purity();
        if (p > 1.0 + kPuritySlack) {
            throw std::invalid_argument("single-mode purity exceeds 1");
        }
    }
}

GaussianState GaussianState::vacuum(int n_modes) {
    return GaussianState(
        Eigen::VectorXd::Zero(2 * n_modes),
        kVacuumVariance *
            Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

double GaussianState::purity() const {
    if (n_modes_ != 1) {
        throw std::logic_error("purity() implemented for single-mode states");
    }
    return 1.0 / (4.0 * std::sqrt(covariance_.determinant()));
}

double wrap_angle(double angle) {
    const double two_pi = 2.0 * M_PI;
    double w = std::fmod(angle, two_pi);
    if (w <= -M_PI) w += two_pi;
    if (w > M_PI) w -= two_pi;
    return w;
}

Eigen::Matrix2d rotation2(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Eigen::Matrix2d rot;
    rot << c, -s, s, c;
    return rot;
}

GaussianState make_state(const StateParams& params) {
    if (!(params.purity > 0.0) || params.purity > 1.0 + kPuritySlack) {
        throw std::invalid_argument("purity must lie in (0, 1]");
    }
    if (params.r < 0.0) {
        throw std::invalid_argument("squeezing magnitude must be >= 0");
    }
    Eigen::VectorXd moments(2);
    moments << params.alpha * std::cos(params.theta),
        params.alpha * std::sin(params.theta);

    // At theta = phi = 0 the phase quadrature X_2 is squeezed, so that the
    // phase-estimation QFI is maximal for phi = 0 at fixed r.
    const double psi = params.theta + params.phi / 2.0;
    Eigen::Matrix2d diag = Eigen::Matrix2d::Zero();
    diag(0, 0) = std::exp(2.0 * params.r);
    diag(1, 1) = std::exp(-2.0 * params.r);
    const Eigen::Matrix2d rot = rotation2(psi);
    const Eigen::Matrix2d sigma =
        (1.0 / (4.0 * std::min(params.purity, 1.0))) * rot * diag *
        rot.transpose();
    return GaussianState(moments, sigma);
}

StateParams extract_params(const GaussianState& state) {
    if (state.n_modes() != 1) {
        throw std::invalid_argument("extract_params requires a single mode");
    }
    const Eigen::MatrixXd& sigma = state.covariance();
    const Eigen::VectorXd& x = state.first_moments();

    StateParams out;
    out.purity = std::min(state.purity(), 1.0);

    out.alpha = std::hypot(x(0), x(1));
    out.theta = out.alpha < kDegenerateTol ? 0.0 : std::atan2(x(1), x(0));

    const double diff = sigma(0, 0) - sigma(1, 1);
    const double off = 2.0 * sigma(0, 1);
    double arg = std::sqrt(diff * diff + off * off) / (sigma(0, 0) + sigma(1, 1));
    arg = std::clamp(arg, 0.0, 1.0 - 1e-15);
    out.r = 0.5 * std::atanh(arg);

    if (out.r < kDegenerateTol) {
        out.r = std::max(out.r, 0.0);
        out.phi = 0.0;
    } else {
        // sigma_11 - sigma_22 = (sinh 2r / 2P) cos 2psi and
        // 2 sigma_12 = (sinh 2r / 2P) sin 2psi, so 2psi = atan2(off, diff).
        const double two_psi = std::atan2(off, diff);
        out.phi = wrap_angle(two_psi - 2.0 * out.theta);
    }
    return out;
}

double mean_photon_number(const StateParams& params) {
    const double p = params.purity;
    const double sh = std::sinh(params.r);
    return params.alpha * params.alpha + 0.5 * (1.0 / p - 1.0) + sh * sh / p;
}

GaussianState rotate_phase(const GaussianState& state, double delta) {
    if (state.n_modes() != 1) {
        throw std::invalid_argument("rotate_phase requires a single mode");
    }
    const Eigen::Matrix2d rot = rotation2(delta);
    return GaussianState(rot * state.first_moments(),
                         rot * state.covariance() * rot.transpose());
}

GaussianState pure_loss(const GaussianState& state, double eta) {
    if (state.n_modes() != 1) {
        throw std::invalid_argument("pure_loss requires a single mode");
    }
    if (eta < 0.0 || eta > 1.0) {
        throw std::invalid_argument("transmissivity must lie in [0, 1]");
    }
    const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
    return GaussianState(
        std::sqrt(eta) * state.first_moments(),
        eta * state.covariance() + (1.0 - eta) * kVacuumVariance * id);
}

}  // namespace cavityclock
