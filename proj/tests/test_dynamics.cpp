#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qzeno/dynamics.hpp"
#include "qzeno/oracles.hpp"
#include "support/reference.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

using namespace std::complex_literals;
using qzeno::EigenSystem;

namespace {

constexpr double pi = std::numbers::pi;

EigenSystem<double> two_mode_eigen(double omega0 = 0.0, double g = 1.0) {
    return qzeno::diagonalize(qzeno::assemble_hamiltonian(qzeno::build_two_mode(omega0, g)));
}

EigenSystem<double> three_mode_eigen() {
    return qzeno::diagonalize(qzeno::assemble_hamiltonian(
        qzeno::load_custom<double>("omega0 = 0\nmode = -1, 0.1\nmode = 1, 0.1\n")));
}

} // namespace

TEST_CASE("survival amplitude: two-mode closed form and normalization") {
    const auto e = two_mode_eigen();
    const auto a = qzeno::survival_amplitude(e, pi / 4);
    CHECK(a.real() == doctest::Approx(std::cos(pi / 4)).epsilon(1e-14));
    CHECK(std::abs(a.imag()) < 1e-14);
    CHECK(std::abs(qzeno::survival_amplitude(e, 0.0) - 1.0) < 1e-14);

    const auto e3 = three_mode_eigen();
    CHECK(std::abs(qzeno::survival_amplitude(e3, 0.0) - 1.0) < 1e-14);
}

TEST_CASE("survival amplitude matches the Taylor-propagator oracle") {
    const auto custom = qzeno::load_custom<double>("omega0 = 0\nmode = -1, 0.1\nmode = 1, 0.1\n");
    const auto h = qzeno::assemble_hamiltonian(custom);
    const auto e = qzeno::diagonalize(h);

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(3);
    psi0[0] = 1.0;
    for (double t : {1.0, 0.3, 2.7, -1.4}) {
        const auto evolved = testref::propagate_taylor(h.dense(), psi0, t);
        const std::complex<double> expected = evolved[0];
        CHECK(std::abs(qzeno::survival_amplitude(e, t) - expected) < 1e-10);
    }
}

TEST_CASE("amplitude symmetry and bound") {
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> tdist(-8.0, 8.0);
    for (int trial = 0; trial < 25; ++trial) {
        const auto e =
            qzeno::diagonalize(qzeno::assemble_hamiltonian(testref::random_model(rng)));
        for (int j = 0; j < 8; ++j) {
            const double t = tdist(rng);
            const auto a = qzeno::survival_amplitude(e, t);
            CHECK(std::abs(a - std::conj(qzeno::survival_amplitude(e, -t))) < 1e-13);
            CHECK(std::abs(a) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("orthogonal amplitude vanishes at both trivial arguments") {
    const auto e = three_mode_eigen();
    CHECK(std::abs(qzeno::orthogonal_amplitude(e, 1.3, 0.0)) < 1e-13);
    CHECK(std::abs(qzeno::orthogonal_amplitude(e, 0.0, 2.1)) < 1e-13);
}

TEST_CASE("orthogonal amplitude: two-mode closed form") {
    // cos g(t+tau) - cos gt cos gtau = -sin gt sin gtau
    const auto e = two_mode_eigen();
    const auto b = qzeno::orthogonal_amplitude(e, pi / 4, pi / 4);
    CHECK(b.real() == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(std::abs(b.imag()) < 1e-13);
}

TEST_CASE("survival probability examples") {
    const auto e = two_mode_eigen();
    CHECK(qzeno::survival_probability(e, pi / 4) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(qzeno::survival_probability(e, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("recomposition identity holds at randomized arguments") {
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> tdist(0.0, 6.0);
    for (int trial = 0; trial < 25; ++trial) {
        const auto e =
            qzeno::diagonalize(qzeno::assemble_hamiltonian(testref::random_model(rng)));
        for (int j = 0; j < 8; ++j) {
            const double t = tdist(rng), tau = tdist(rng);
            CHECK(std::abs(qzeno::recompose_probability(e, t, tau) -
                           qzeno::survival_probability(e, t + tau)) < 1e-12);
        }
    }
    const auto e = two_mode_eigen();
    CHECK(qzeno::recompose_probability(e, pi / 8, pi / 8) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(qzeno::recompose_probability(e, 1.1, 0.0) -
                   qzeno::survival_probability(e, 1.1)) < 1e-14);
}

TEST_CASE("decay rate: zero at t=0, closed form, finite differences") {
    const auto e = two_mode_eigen();
    CHECK(std::abs(qzeno::decay_rate(e, 0.0)) < 1e-14);
    // -d cos^2(t)/dt = sin(2t)
    CHECK(qzeno::decay_rate(e, pi / 8) == doctest::Approx(std::sin(pi / 4)).epsilon(1e-12));

    const auto e3 = three_mode_eigen();
    const auto p = [&](double t) { return qzeno::survival_probability(e3, t); };
    const double fd = -testref::central_difference(p, 0.5, 1e-5);
    CHECK(std::abs(qzeno::decay_rate(e3, 0.5) - fd) < 1e-6);
}

TEST_CASE("decay rate equals -dP/dt on random models") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> tdist(0.0, 4.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto e =
            qzeno::diagonalize(qzeno::assemble_hamiltonian(testref::random_model(rng)));
        CHECK(std::abs(qzeno::decay_rate(e, 0.0)) < 1e-12);
        for (int j = 0; j < 5; ++j) {
            const double t = tdist(rng);
            const auto p = [&](double x) { return qzeno::survival_probability(e, x); };
            const double rate = qzeno::decay_rate(e, t);
            const double fd = -testref::central_difference(p, t, 1e-5);
            CHECK(std::abs(rate - fd) <= std::max(1e-8, 1e-6 * std::abs(rate)));
        }
    }
}

TEST_CASE("entangled probability examples") {
    const auto e = two_mode_eigen();
    // at gt = pi/4 the excess probability exactly compensates further decay
    for (double tau : {0.1, 0.9, 2.3, 17.0})
        CHECK(qzeno::entangled_probability(e, pi / 4, tau) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(qzeno::entangled_probability(e, pi / 8, pi / 8) == doctest::Approx(0.75).epsilon(1e-13));

    std::mt19937 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const auto er =
            qzeno::diagonalize(qzeno::assemble_hamiltonian(testref::random_model(rng)));
        const double t = 0.7;
        CHECK(std::abs(qzeno::entangled_probability(er, t, 0.0) -
                       qzeno::survival_probability(er, t)) < 1e-13);
    }
}

TEST_CASE("entangled vs free probability differ exactly by the cross term") {
    std::mt19937 rng(345);
    std::uniform_real_distribution<double> tdist(0.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto e =
            qzeno::diagonalize(qzeno::assemble_hamiltonian(testref::random_model(rng)));
        for (int j = 0; j < 6; ++j) {
            const double t = tdist(rng), tau = tdist(rng);
            const auto at = qzeno::survival_amplitude(e, t);
            const auto atau = qzeno::survival_amplitude(e, tau);
            const auto b = qzeno::orthogonal_amplitude(e, t, tau);
            const double cross = 2 * std::real(at * atau * std::conj(b));
            CHECK(std::abs((qzeno::entangled_probability(e, t, tau) -
                            qzeno::survival_probability(e, t + tau)) -
                           (-cross)) < 1e-12);
        }
    }
}

TEST_CASE("entangled decay rate: reset at the event, two-mode closed form") {
    const auto e = two_mode_eigen();
    CHECK(std::abs(qzeno::entangled_decay_rate(e, 0.77, 0.0)) < 1e-12);
    // vanishes identically at gt = pi/4
    for (double tau : {0.2, 1.0, 3.0})
        CHECK(std::abs(qzeno::entangled_decay_rate(e, pi / 4, tau)) < 1e-12);
    // g cos(3pi/4) sin(pi/4) = -1/2: the rate goes negative past gt = pi/4
    CHECK(qzeno::entangled_decay_rate(e, 3 * pi / 8, pi / 8) ==
          doctest::Approx(-0.5).epsilon(1e-12));

    std::mt19937 rng(777);
    for (int trial = 0; trial < 15; ++trial) {
        const auto er =
            qzeno::diagonalize(qzeno::assemble_hamiltonian(testref::random_model(rng)));
        CHECK(std::abs(qzeno::entangled_decay_rate(er, 0.9, 0.0)) < 1e-10);
    }
}

TEST_CASE("entangled decay rate matches finite differences of the entangled probability") {
    const auto e = three_mode_eigen();
    for (double t : {0.4, 1.1}) {
        for (double tau : {0.3, 0.8, 2.0}) {
            const auto pent = [&](double x) { return qzeno::entangled_probability(e, t, x); };
            const double fd = -testref::central_difference(pent, tau, 1e-5);
            CHECK(qzeno::entangled_decay_rate(e, t, tau) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("short-time expansion is first order in t") {
    const auto e = two_mode_eigen();
    CHECK(std::abs(qzeno::short_time_expansion(e, 0.0) - 1.0) == 0.0);
    // <H> = 0 here, so the expansion stays at 1 and A deviates at second order
    CHECK(std::abs(qzeno::short_time_expansion(e, 0.01) - 1.0) < 1e-14);
    CHECK(std::abs(qzeno::survival_amplitude(e, 0.01) - 1.0) ==
          doctest::Approx(1.0 - std::cos(0.01)).epsilon(1e-6));

    const auto e25 = two_mode_eigen(2.5, 0.3);
    const auto expansion = qzeno::short_time_expansion(e25, 0.001);
    CHECK(expansion.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(expansion.imag() == doctest::Approx(-0.0025).epsilon(1e-10));
    // truncation error is <H^2> t^2 / 2 ~ 3.2e-6 here
    CHECK(std::abs(qzeno::survival_amplitude(e25, 0.001) - expansion) < 1e-5);
}

TEST_CASE("short-time probability loss is quadratic with the variance coefficient") {
    std::mt19937 rng(8181);
    for (int trial = 0; trial < 10; ++trial) {
        const auto e =
            qzeno::diagonalize(qzeno::assemble_hamiltonian(testref::random_model(rng)));
        const double mean = qzeno::mean_energy(e);
        const double mean_sq = (e.weights() * e.frequencies.array().square()).sum();
        const double c = mean_sq - mean * mean;
        const double t0 = 0.01 / std::sqrt(c);
        for (double t : {t0, t0 / 2, t0 / 4}) {
            const double loss = 1.0 - qzeno::survival_probability(e, t);
            CHECK(loss / (c * t * t) == doctest::Approx(1.0).epsilon(1e-3));
        }
    }
}

TEST_CASE("flat band decays exponentially inside the recurrence window") {
    // scaled-down cousin of the production model: same spacing, narrower band
    const auto model = qzeno::build_flat_band(0.0, 0.005, 501, 5.0);
    const auto e = qzeno::diagonalize(qzeno::assemble_hamiltonian(model));
    const double gamma = qzeno::oracles::golden_rule_gamma(0.005, qzeno::uniform_spacing(model));

    double sup_dev = 0.0, sup_b = 0.0;
    for (int i = 0; i <= 300; ++i) {
        const double t = 3.0 / gamma * i / 300.0;
        sup_dev = std::max(sup_dev,
                           std::abs(qzeno::survival_probability(e, t) - std::exp(-gamma * t)));
    }
    for (int i = 0; i <= 24; ++i) {
        for (int j = 0; j <= 24; ++j) {
            const double t = 3.0 / gamma * i / 24.0;
            const double tau = 3.0 / gamma * j / 24.0;
            sup_b = std::max(sup_b, std::abs(qzeno::orthogonal_amplitude(e, t, tau)));
        }
    }
    CHECK(sup_dev < 0.02);
    CHECK(sup_b < 0.02);
    CHECK(qzeno::survival_probability(e, 1.0 / gamma) ==
          doctest::Approx(std::exp(-1.0)).epsilon(0.02));
}

TEST_CASE("amplitude series sampling and CSV emission") {
    const auto e = two_mode_eigen();
    const Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(11, 0.0, 1.0);
    const auto series = qzeno::sample_amplitudes(e, grid);
    REQUIRE(series.size() == 11);
    CHECK(std::abs(series.values[0] - 1.0) < 1e-14);
    CHECK(series.source == "two_mode");

    std::ostringstream out;
    qzeno::write_series_csv(out, e, series);
    const std::string text = out.str();
    CHECK(text.starts_with("t,reA,imA,P,rate\n"));
    CHECK(std::count(text.begin(), text.end(), '\n') == 12);
    CHECK(text.find('\r') == std::string::npos);

    Eigen::VectorXd bad(3);
    bad << 0.0, 1.0, 0.5;
    CHECK_THROWS_AS(qzeno::sample_amplitudes(e, bad), std::invalid_argument);
}
