#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cavityclock/gaussian.hpp"

using namespace cavityclock;

namespace {

StateParams random_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    StateParams p;
    p.alpha = 2.0 * uni(rng);
    p.theta = wrap_angle(2.0 * M_PI * uni(rng));
    p.r = 1.5 * uni(rng);
    p.phi = wrap_angle(2.0 * M_PI * uni(rng));
    p.purity = 0.3 + 0.7 * uni(rng);
    return p;
}

}  // namespace

TEST_CASE("vacuum convention: sigma = I/4, zero moments") {
    const GaussianState vac = GaussianState::vacuum();
    CHECK(vac.covariance()(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(vac.covariance()(1, 1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(vac.covariance()(0, 1) == 0.0);
    CHECK(vac.first_moments().norm() == 0.0);
    CHECK(vac.purity() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("make_state examples") {
    SUBCASE("vacuum") {
        const GaussianState s = make_state({0, 0, 0, 0, 1});
        CHECK((s.covariance() - 0.25 * Eigen::Matrix2d::Identity())
                  .cwiseAbs()
                  .maxCoeff() < 1e-15);
        CHECK(s.first_moments().norm() == 0.0);
    }
    SUBCASE("coherent alpha=2") {
        const GaussianState s = make_state({2, 0, 0, 0, 1});
        CHECK(s.first_moments()(0) == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(s.first_moments()(1) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK((s.covariance() - 0.25 * Eigen::Matrix2d::Identity())
                  .cwiseAbs()
                  .maxCoeff() < 1e-15);
    }
    SUBCASE("squeezed r=1 eigenvalues") {
        const GaussianState s = make_state({0, 0, 1, 0, 1});
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(s.covariance());
        CHECK(es.eigenvalues()(0) ==
              doctest::Approx(std::exp(-2.0) / 4.0).epsilon(1e-12));
        CHECK(es.eigenvalues()(1) ==
              doctest::Approx(std::exp(2.0) / 4.0).epsilon(1e-12));
    }
    SUBCASE("invalid purity") {
        CHECK_THROWS(make_state({0, 0, 0, 0, 0.0}));
        CHECK_THROWS(make_state({0, 0, 0, 0, -0.5}));
        CHECK_THROWS(make_state({0, 0, 0, 0, 1.5}));
    }
}

TEST_CASE("extract_params examples") {
    SUBCASE("vacuum") {
        const StateParams p = extract_params(GaussianState::vacuum());
        CHECK(p.purity == doctest::Approx(1.0));
        CHECK(p.r == 0.0);
        CHECK(p.alpha == 0.0);
        CHECK(p.theta == 0.0);
    }
    SUBCASE("phase-squeezed diagonal has phi = 0") {
        Eigen::Matrix2d sigma = Eigen::Matrix2d::Zero();
        sigma(0, 0) = std::exp(2.0) / 4.0;
        sigma(1, 1) = std::exp(-2.0) / 4.0;
        const StateParams p =
            extract_params(GaussianState(Eigen::Vector2d::Zero(), sigma));
        CHECK(p.r == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.phi == doctest::Approx(0.0));
    }
    SUBCASE("amplitude-squeezed diagonal has phi = pi") {
        Eigen::Matrix2d sigma = Eigen::Matrix2d::Zero();
        sigma(0, 0) = std::exp(-2.0) / 4.0;
        sigma(1, 1) = std::exp(2.0) / 4.0;
        const StateParams p =
            extract_params(GaussianState(Eigen::Vector2d::Zero(), sigma));
        CHECK(p.r == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(p.phi) == doctest::Approx(M_PI));
    }
    SUBCASE("thermal") {
        const StateParams p = extract_params(GaussianState(
            Eigen::Vector2d::Zero(), 0.5 * Eigen::Matrix2d::Identity()));
        CHECK(p.purity == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(p.r == 0.0);
    }
    SUBCASE("non-positive-definite covariance rejected") {
        Eigen::Matrix2d sigma;
        sigma << 0.25, 0.3, 0.3, 0.25;
        CHECK_THROWS(GaussianState(Eigen::Vector2d::Zero(), sigma));
    }
}

TEST_CASE("round trip make_state -> extract_params, 1000 random states") {
    std::mt19937 rng(12345);
    for (int i = 0; i < 1000; ++i) {
        const StateParams p = random_params(rng);
        const StateParams q = extract_params(make_state(p));
        CHECK(q.alpha == doctest::Approx(p.alpha).epsilon(1e-9));
        CHECK(wrap_angle(q.theta - p.theta) == doctest::Approx(0.0).scale(1).epsilon(1e-9));
        CHECK(q.r == doctest::Approx(p.r).epsilon(1e-9));
        CHECK(wrap_angle(q.phi - p.phi) == doctest::Approx(0.0).scale(1).epsilon(1e-9));
        CHECK(q.purity == doctest::Approx(p.purity).epsilon(1e-9));
    }
}

TEST_CASE("mean photon number") {
    CHECK(mean_photon_number({2, 0, 0, 0, 1}) == doctest::Approx(4.0));
    CHECK(mean_photon_number({0, 0, 1, 0, 1}) ==
          doctest::Approx(std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-12));
    CHECK(mean_photon_number({0, 0, 0, 0, 0.5}) == doctest::Approx(0.5));
}

TEST_CASE("photon number equals the quadrature-trace identity") {
    // N = sigma_11 + sigma_22 - 1/2 + <X1>^2 + <X2>^2, verified against the
    // parameter formula on random states.
    std::mt19937 rng(777);
    for (int i = 0; i < 1000; ++i) {
        const StateParams p = random_params(rng);
        const GaussianState s = make_state(p);
        const double trace_form = s.covariance()(0, 0) + s.covariance()(1, 1) -
                                  0.5 + s.first_moments().squaredNorm();
        CHECK(mean_photon_number(p) ==
              doctest::Approx(trace_form).epsilon(1e-9));
    }
}

TEST_CASE("rotate_phase") {
    const StateParams p{1.3, 0.4, 0.7, -1.1, 0.9};
    const GaussianState s = make_state(p);
    SUBCASE("identity at 0 and 2pi") {
        const GaussianState r0 = rotate_phase(s, 0.0);
        CHECK((r0.covariance() - s.covariance()).cwiseAbs().maxCoeff() < 1e-12);
        const GaussianState r2pi = rotate_phase(s, 2.0 * M_PI);
        CHECK((r2pi.covariance() - s.covariance()).cwiseAbs().maxCoeff() <
              1e-12);
        CHECK((r2pi.first_moments() - s.first_moments()).cwiseAbs().maxCoeff() <
              1e-12);
    }
    SUBCASE("coherent phase advance") {
        const GaussianState c = make_state({2, 0.3, 0, 0, 1});
        const StateParams q = extract_params(rotate_phase(c, 0.5));
        CHECK(q.theta == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(q.alpha == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("purity invariant") {
        std::mt19937 rng(9);
        std::uniform_real_distribution<double> uni(-3.0, 3.0);
        for (int i = 0; i < 50; ++i) {
            const double delta = uni(rng);
            CHECK(rotate_phase(s, delta).purity() ==
                  doctest::Approx(s.purity()).epsilon(1e-12));
        }
    }
}

TEST_CASE("pure_loss") {
    const GaussianState coherent = make_state({std::sqrt(10.0), 0.2, 0, 0, 1});
    SUBCASE("eta = 1 identity, eta = 0 vacuum") {
        const GaussianState same = pure_loss(coherent, 1.0);
        CHECK((same.covariance() - coherent.covariance()).cwiseAbs().maxCoeff() <
              1e-15);
        const GaussianState vac = pure_loss(coherent, 0.0);
        CHECK(vac.first_moments().norm() == 0.0);
        CHECK((vac.covariance() - 0.25 * Eigen::Matrix2d::Identity())
                  .cwiseAbs()
                  .maxCoeff() < 1e-15);
    }
    SUBCASE("coherent N = 10 at eta = 1/e") {
        const StateParams p = extract_params(pure_loss(coherent, 1.0 / M_E));
        CHECK(p.purity == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(mean_photon_number(p) ==
              doctest::Approx(10.0 / M_E).epsilon(1e-12));
    }
    SUBCASE("composition law") {
        const GaussianState mixed = make_state({0.8, 0.1, 0.6, 1.0, 0.7});
        const GaussianState a = pure_loss(pure_loss(mixed, 0.9), 0.6);
        const GaussianState b = pure_loss(mixed, 0.9 * 0.6);
        CHECK((a.covariance() - b.covariance()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((a.first_moments() - b.first_moments()).cwiseAbs().maxCoeff() <
              1e-12);
    }
    SUBCASE("eta out of range") {
        CHECK_THROWS(pure_loss(coherent, -0.1));
        CHECK_THROWS(pure_loss(coherent, 1.1));
    }
}
