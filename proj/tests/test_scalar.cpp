// Instantiation smoke test: the core stays usable with a different scalar.

#include <doctest.h>

#include <cmath>

#include "grover/algebraic.hpp"
#include "grover/averaging.hpp"
#include "grover/special_cases.hpp"
#include "grover/statevector.hpp"

using namespace grover;

TEST_CASE("single-precision instantiation of the core pipeline") {
    const auto eta = uniform_state<float>(3);
    const MarkedSet marked(3, {5});
    const auto stats = partition_stats(eta, marked);
    CHECK(stats.p0 == doctest::Approx(0.125f).epsilon(1e-5));

    const float omega = rotation_angle<float>(8, 1);
    const auto stepped = grover_step(eta, marked);
    CHECK(success_probability(stepped, marked) ==
          doctest::Approx(success_probability_closed(stats, omega, Index{1})).epsilon(1e-5));

    const auto rebuilt = reconstruct_state(eta, marked, 2);
    const auto evolved = evolve(eta, marked, 2);
    CHECK((rebuilt.amplitudes() - evolved.amplitudes()).norm() < 1e-5f);

    const auto frame = build_frame(eta, marked);
    CHECK_FALSE(frame.psi_m.has_value());
    CHECK(classify(eta, marked).kind == CaseKind::single_marked);
    CHECK(average_success_closed(eta, Index{1}, Index{1}) ==
          doctest::Approx(std::pow(std::sin(omega * 1.5f), 2.0f)).epsilon(1e-4));
}
