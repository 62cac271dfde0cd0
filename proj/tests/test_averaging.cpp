#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "grover/averaging.hpp"
#include "support/oracles.hpp"

using namespace grover;
using testsupport::random_state;
using Complex = std::complex<double>;

namespace {

/// Subset-averaged success probability assembled from averaged moments; the
/// averaging identity says this equals the mean of the per-subset values.
double average_from_moments(const MomentAverages<double>& m, double omega, Index t) {
    const double r = double(m.r);
    const double nu = double(m.n_total - m.r);
    const double imbalance = nu * m.mean_abs_abar_u_sq - r * m.mean_abs_abar_m_sq;
    const double angle = 2.0 * omega * double(t);
    return m.mean_p0 + 0.5 * imbalance - 0.5 * imbalance * std::cos(angle) +
           std::sqrt(r * nu) * m.mean_cross.real() * std::sin(angle);
}

} // namespace

TEST_CASE("exact average anchors") {
    const auto eta = uniform_state<double>(2);
    CHECK(average_success_exact(eta, 1, 1).value == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937_64 rng(61);
    const auto s = random_state(3, rng);
    CHECK(average_success_exact(s, 8, 5).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(average_success_exact(s, 3, 0).value == doctest::Approx(3.0 / 8.0).epsilon(1e-12));

    const auto est = average_success_exact(s, 2, 4);
    CHECK(est.method == AverageMethod::enumeration);
    CHECK(est.std_error == 0.0);
    CHECK(est.samples == 28);
    CHECK_THROWS_AS(average_success_exact(s, 0, 1), InvalidCount);
}

TEST_CASE("enumeration budget is enforced") {
    std::mt19937_64 rng(62);
    const auto s = random_state(10, rng);
    CHECK_THROWS_AS(average_success_exact(s, 5, 1), BudgetExceeded);
    CHECK_THROWS_AS(moment_averages(s, 5, MomentMethod::enumeration), BudgetExceeded);
    CHECK_NOTHROW(moment_averages(s, 5, MomentMethod::closed_form));
}

TEST_CASE("Monte Carlo reproduces the symmetric case exactly") {
    const auto eta = uniform_state<double>(2);
    for (std::uint64_t seed : {0ULL, 7ULL, 991ULL}) {
        const auto est = average_success_mc(eta, 1, 1, 50, seed);
        const auto exact = average_success_exact(eta, 1, 1);
        CHECK(est.value == exact.value);
        CHECK(est.std_error == 0.0);
    }
}

TEST_CASE("Monte Carlo is deterministic in the seed") {
    std::mt19937_64 rng(63);
    const auto s = random_state(4, rng);
    const auto a = average_success_mc(s, 2, 3, 500, 42);
    const auto b = average_success_mc(s, 2, 3, 500, 42);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    const auto c = average_success_mc(s, 2, 3, 500, 43);
    CHECK(a.value != c.value);
    CHECK_THROWS_AS(average_success_mc(s, 2, 3, 1, 42), InvalidCount);
}

TEST_CASE("Monte Carlo agrees with enumeration within its error bar") {
    std::mt19937_64 rng(64);
    const auto s = random_state(4, rng);
    const auto exact = average_success_exact(s, 2, 3);
    const auto mc = average_success_mc(s, 2, 3, 5000, 11);
    CHECK(std::abs(mc.value - exact.value) <= 4.0 * mc.std_error);
    CHECK(mc.method == AverageMethod::monte_carlo);
    CHECK(mc.samples == 5000);
}

TEST_CASE("Monte Carlo is unbiased across seeds") {
    std::mt19937_64 rng(65);
    const auto s = random_state(4, rng);
    const auto exact = average_success_exact(s, 2, 5);

    double total = 0;
    double pooled_var = 0;
    const int n_seeds = 50;
    for (int seed = 0; seed < n_seeds; ++seed) {
        const auto est = average_success_mc(s, 2, 5, 400, static_cast<std::uint64_t>(seed));
        total += est.value;
        pooled_var += est.std_error * est.std_error;
    }
    const double mean = total / n_seeds;
    const double pooled_se = std::sqrt(pooled_var) / n_seeds;
    CHECK(std::abs(mean - exact.value) <= 4.0 * pooled_se);
}

TEST_CASE("closed-form average anchors") {
    for (int n : {2, 4, 6}) {
        const auto eta = uniform_state<double>(n);
        const Index dim = dimension(n);
        for (Index r : {Index{1}, Index{2}}) {
            const double w = rotation_angle<double>(dim, r);
            for (Index t : {0, 1, 5}) {
                const double expected = std::pow(std::sin(w * (double(t) + 0.5)), 2);
                CHECK(average_success_closed(eta, r, t) ==
                      doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }

    // A state with zero mean amplitude only keeps the r/N correction term.
    const double inv = 1.0 / std::sqrt(2.0);
    ComplexVector<double> v(4);
    v << Complex(inv, 0), Complex(-inv, 0), Complex(0, 0), Complex(0, 0);
    const PureState<double> zero_mean(2, std::move(v));
    CHECK(average_success_closed(zero_mean, 1, 3) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("closed-form average tracks enumeration at large N") {
    std::mt19937_64 rng(66);
    const int n = 8;
    const Index dim = dimension(n);
    const Index tau = optimal_iterations(dim, 1);
    for (int rep = 0; rep < 5; ++rep) {
        const auto s = random_state(n, rng);
        for (Index t : {Index{0}, tau / 2, tau, 2 * tau}) {
            const double exact = average_success_exact(s, 1, t).value;
            const double closed = average_success_closed(s, 1, t);
            CHECK(std::abs(exact - closed) <= 10.0 / double(dim));
        }
    }
}

TEST_CASE("enumerated moments match the exact finite-N formulas") {
    std::mt19937_64 rng(67);
    for (int n : {4, 6}) {
        const Index dim = dimension(n);
        for (Index r : {Index{1}, Index{2}, Index{4}}) {
            const auto s = random_state(n, rng);
            const auto enumerated = moment_averages(s, r, MomentMethod::enumeration);
            const auto exact = testsupport::exact_moments(s, r);
            CHECK(std::abs(enumerated.mean_p0 - exact.mean_p0) < 1e-12);
            CHECK(std::abs(enumerated.mean_p0 - double(r) / double(dim)) < 1e-12);
            CHECK(std::abs(enumerated.mean_abs_abar_u_sq - exact.mean_abs_abar_u_sq) < 1e-12);
            CHECK(std::abs(enumerated.mean_abs_abar_m_sq - exact.mean_abs_abar_m_sq) < 1e-12);
            CHECK(std::abs(enumerated.mean_cross - Complex(exact.mean_cross, 0)) < 1e-12);

            const auto closed = moment_averages(s, r, MomentMethod::closed_form);
            const double bound = 50.0 / (double(dim) * double(dim));
            CHECK(std::abs(closed.mean_abs_abar_u_sq - exact.mean_abs_abar_u_sq) <= bound);
            CHECK(std::abs(closed.mean_abs_abar_m_sq - exact.mean_abs_abar_m_sq) <= bound);
            CHECK(std::abs(closed.mean_cross.real() - exact.mean_cross) <= bound);
        }
    }
}

TEST_CASE("moments of the uniform state") {
    const auto eta = uniform_state<double>(3);
    const auto m = moment_averages(eta, 2, MomentMethod::enumeration);
    CHECK(m.mean_abs_abar_u_sq == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
    CHECK(m.mean_abs_abar_m_sq == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
    CHECK(m.mean_p0 == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("averaging identity: mean of the closed form equals the moment form") {
    std::mt19937_64 rng(68);
    const int n = 4;
    const Index dim = dimension(n);
    for (Index r : {Index{1}, Index{2}, Index{3}}) {
        const double w = rotation_angle<double>(dim, r);
        for (int rep = 0; rep < 5; ++rep) {
            const auto s = random_state(n, rng);
            const auto moments = moment_averages(s, r, MomentMethod::enumeration);
            for (Index t : {0, 1, 2, 3, 7, 11}) {
                const double lhs = average_success_exact(s, r, t).value;
                const double rhs = average_from_moments(moments, w, t);
                CHECK(std::abs(lhs - rhs) < 1e-10);
            }
        }
    }
}

TEST_CASE("the optimal iteration count maximizes the averaged probability") {
    for (int n : {4, 6, 8, 10}) {
        const Index dim = dimension(n);
        for (Index r : {Index{1}, Index{2}}) {
            const auto eta = uniform_state<double>(n);
            const Index tau = optimal_iterations(dim, r);
            Index argmax = 0;
            double best = -1;
            for (Index t = 0; t <= 2 * tau; ++t) {
                const double value = average_success_closed(eta, r, t);
                if (value > best) {
                    best = value;
                    argmax = t;
                }
            }
            CHECK(argmax >= tau - 1);
            CHECK(argmax <= tau + 1);
        }
    }
}

TEST_CASE("maximal success probability") {
    CHECK(max_success(uniform_state<double>(3), 1) == doctest::Approx(1.0).epsilon(1e-12));

    ComplexVector<double> basis = ComplexVector<double>::Zero(8);
    basis(5) = Complex(1, 0);
    CHECK(max_success(PureState<double>(3, std::move(basis)), 1) ==
          doctest::Approx(1.0 / 8.0).epsilon(1e-12));

    const double inv = 1.0 / std::sqrt(2.0);
    ComplexVector<double> v(4);
    v << Complex(inv, 0), Complex(-inv, 0), Complex(0, 0), Complex(0, 0);
    CHECK(max_success(PureState<double>(2, std::move(v)), 1) == doctest::Approx(0.0));

    // Identity with the squared overlap against the equal superposition.
    std::mt19937_64 rng(69);
    for (int rep = 0; rep < 10; ++rep) {
        const auto s = random_state(5, rng);
        const auto eta = uniform_state<double>(5);
        const double overlap = std::norm(eta.amplitudes().dot(s.amplitudes()));
        CHECK(std::abs(max_success(s, 1) - overlap) < 1e-12);
    }
}
