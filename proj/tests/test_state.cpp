#include <doctest.h>

#include <complex>
#include <random>

#include "grover/state.hpp"
#include "support/oracles.hpp"

using namespace grover;
using testsupport::random_state;
using Complex = std::complex<double>;

namespace {

ComplexVector<double> amps(std::initializer_list<Complex> values) {
    ComplexVector<double> v(static_cast<Index>(values.size()));
    Index i = 0;
    for (Complex c : values) v(i++) = c;
    return v;
}

} // namespace

TEST_CASE("pure state construction validates length and norm") {
    CHECK_NOTHROW(PureState<double>(2, amps({0.5, 0.5, 0.5, 0.5})));
    CHECK_NOTHROW(PureState<double>(1, amps({1.0, 0.0})));
    CHECK_THROWS_AS(PureState<double>(1, amps({0.9, 0.0})), NotNormalized);
    CHECK_THROWS_AS(PureState<double>(2, amps({1.0, 0.0})), LengthMismatch);
    CHECK_THROWS_AS(PureState<double>(0, amps({1.0})), InvalidCount);
}

TEST_CASE("amplitudes are stored exactly as given") {
    const double x = 0.6, y = 0.8;
    PureState<double> s(1, amps({x, y}));
    CHECK(s.amplitude(0) == Complex(x, 0));
    CHECK(s.amplitude(1) == Complex(y, 0));
}

TEST_CASE("marked set canonicalization and validation") {
    MarkedSet m(2, {3, 1});
    CHECK(m.indices() == std::vector<Index>{1, 3});
    CHECK(m == MarkedSet(2, {1, 3}));
    CHECK(m.contains(3));
    CHECK_FALSE(m.contains(2));
    CHECK_THROWS_AS(MarkedSet(2, {}), InvalidCount);
    CHECK_THROWS_AS(MarkedSet(2, {4}), InvalidCount);
    CHECK_THROWS_AS(MarkedSet(2, {-1}), InvalidCount);
    CHECK_THROWS_AS(MarkedSet(2, {1, 1}), InvalidCount);
    CHECK_NOTHROW(MarkedSet(2, {0, 1, 2, 3}));
}

TEST_CASE("uniform state") {
    const auto s1 = uniform_state<double>(1);
    CHECK(s1.amplitude(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    const auto s2 = uniform_state<double>(2);
    for (Index i = 0; i < 4; ++i) CHECK(s2.amplitude(i) == Complex(0.5, 0));
    const auto s10 = uniform_state<double>(10);
    CHECK(std::abs(global_mean(s10) - Complex(1.0 / 32.0, 0)) < 1e-15);
}

TEST_CASE("global mean") {
    CHECK(std::abs(global_mean(uniform_state<double>(3)) - Complex(1.0 / std::sqrt(8.0), 0)) <
          1e-15);
    const PureState<double> antisym(1, amps({1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}));
    CHECK(std::abs(global_mean(antisym)) < 1e-16);

    std::mt19937_64 rng(71);
    for (int rep = 0; rep < 20; ++rep) {
        const auto s = random_state(7, rng);
        const auto ref = testsupport::ref_partition(s, MarkedSet(7, {0}));
        CHECK(std::abs(global_mean(s) - ref.abar) < 1e-15);
    }
}

TEST_CASE("partition stats on the uniform state") {
    const auto eta = uniform_state<double>(2);
    const auto stats = partition_stats(eta, MarkedSet(2, {3}));
    CHECK(stats.p0 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(std::abs(stats.abar_m - Complex(0.5, 0)) < 1e-15);
    CHECK(std::abs(stats.abar_u - Complex(0.5, 0)) < 1e-15);
    CHECK(std::abs(stats.abar - Complex(0.5, 0)) < 1e-15);
    CHECK(stats.r == 1);
    CHECK(stats.n_total == 4);
    CHECK_FALSE(stats.fully_marked());
}

TEST_CASE("partition stats on a basis state") {
    const PureState<double> basis(2, amps({1.0, 0.0, 0.0, 0.0}));
    const auto stats = partition_stats(basis, MarkedSet(2, {0}));
    CHECK(stats.p0 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(stats.abar_m - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(stats.abar_u) < 1e-15);
}

TEST_CASE("partition stats match the reference summation on random states") {
    std::mt19937_64 rng(1234);
    for (int rep = 0; rep < 30; ++rep) {
        const auto s = random_state(6, rng);
        const MarkedSet marked(6, testsupport::random_subset_naive(64, 1 + (rep % 9), rng));
        const auto stats = partition_stats(s, marked);
        const auto ref = testsupport::ref_partition(s, marked);
        CHECK(std::abs(stats.p0 - ref.p0) < 1e-15);
        CHECK(std::abs(stats.abar_m - ref.abar_m) < 1e-15);
        CHECK(std::abs(stats.abar_u - ref.abar_u) < 1e-15);
        CHECK(std::abs(stats.abar - ref.abar) < 1e-15);
    }
}

TEST_CASE("partition stats requires matching dimensions") {
    CHECK_THROWS_AS(partition_stats(uniform_state<double>(2), MarkedSet(3, {1})),
                    DimensionMismatch);
}

TEST_CASE("fully marked partition zeroes the unmarked mean") {
    std::mt19937_64 rng(9);
    const auto s = random_state(3, rng);
    const auto stats = partition_stats(s, MarkedSet(3, {0, 1, 2, 3, 4, 5, 6, 7}));
    CHECK(stats.fully_marked());
    CHECK(stats.abar_u == Complex{});
    CHECK(stats.p0 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("probability splits between the partition halves") {
    std::mt19937_64 rng(55);
    for (int rep = 0; rep < 20; ++rep) {
        const auto s = random_state(5, rng);
        const Index r = 1 + static_cast<Index>(rng() % 31);
        const MarkedSet marked(5, testsupport::random_subset_naive(32, r, rng));
        const auto stats = partition_stats(s, marked);
        double unmarked = 0;
        for (Index i = 0; i < s.size(); ++i) {
            if (!marked.contains(i)) unmarked += std::norm(s.amplitude(i));
        }
        CHECK(stats.p0 + unmarked == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("mean linearity: r*abar_m + (N-r)*abar_u = N*abar") {
    std::mt19937_64 rng(56);
    for (int rep = 0; rep < 20; ++rep) {
        const auto s = random_state(6, rng);
        const Index r = 1 + static_cast<Index>(rng() % 63);
        const MarkedSet marked(6, testsupport::random_subset_naive(64, r, rng));
        const auto stats = partition_stats(s, marked);
        const Complex lhs = double(stats.r) * stats.abar_m +
                            double(stats.n_total - stats.r) * stats.abar_u;
        const Complex rhs = double(stats.n_total) * stats.abar;
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("partition stats is permutation covariant") {
    std::mt19937_64 rng(57);
    const auto s = random_state(4, rng);
    const MarkedSet marked(4, {2, 5, 11});

    std::vector<Index> perm(16);
    for (Index i = 0; i < 16; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);

    ComplexVector<double> permuted(16);
    for (Index i = 0; i < 16; ++i) permuted(perm[static_cast<std::size_t>(i)]) = s.amplitude(i);
    std::vector<Index> mapped;
    for (Index m : marked.indices()) mapped.push_back(perm[static_cast<std::size_t>(m)]);

    const auto stats = partition_stats(s, marked);
    const auto stats_p = partition_stats(PureState<double>(4, std::move(permuted)),
                                         MarkedSet(4, std::move(mapped)));
    CHECK(std::abs(stats.p0 - stats_p.p0) < 1e-15);
    CHECK(std::abs(stats.abar_m - stats_p.abar_m) < 1e-15);
    CHECK(std::abs(stats.abar_u - stats_p.abar_u) < 1e-15);
}

TEST_CASE("mean-square bound |abar|^2 <= 1/N, equality only for eta") {
    std::mt19937_64 rng(58);
    for (int n = 1; n <= 8; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            const auto s = random_state(n, rng);
            CHECK(std::norm(global_mean(s)) <= 1.0 / double(s.size()) + 1e-12);
        }
        const auto eta = uniform_state<double>(n);
        CHECK(std::norm(global_mean(eta)) ==
              doctest::Approx(1.0 / double(eta.size())).epsilon(1e-15));
    }
}

TEST_CASE("mixed ensemble validation") {
    const auto eta = uniform_state<double>(2);
    const PureState<double> basis(2, amps({1.0, 0.0, 0.0, 0.0}));
    CHECK_NOTHROW(MixedEnsemble<double>(2, {{0.5, eta}, {0.5, basis}}));
    CHECK_THROWS_AS(MixedEnsemble<double>(2, {{0.5, eta}, {0.4, basis}}), NotNormalized);
    CHECK_THROWS_AS(MixedEnsemble<double>(2, {{1.5, eta}, {-0.5, basis}}), InvalidWeight);
    CHECK_THROWS_AS(MixedEnsemble<double>(2, {{1.0, uniform_state<double>(3)}}),
                    DimensionMismatch);
    CHECK_THROWS_AS(MixedEnsemble<double>(2, {}), InvalidCount);
}
