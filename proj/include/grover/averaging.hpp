#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "grover/algebraic.hpp"
#include "grover/numeric.hpp"
#include "grover/state.hpp"
#include "grover/subsets.hpp"

namespace grover {

/// Exact subset averages stay under a second up to this many subsets, which
/// covers N <= 64 at small r.
inline constexpr std::uint64_t kEnumerationBudget = 1'000'000;

/// Second moments of the amplitude partition over all r-subset choices.
template <typename T = double>
struct MomentAverages {
    T mean_p0{};
    T mean_abs_abar_u_sq{};
    T mean_abs_abar_m_sq{};
    std::complex<T> mean_cross{};  // <conj(abar_u) * abar_m>
    Index r{};
    Index n_total{};
};

enum class AverageMethod { enumeration, monte_carlo, closed_form };

inline const char* to_string(AverageMethod method) {
    switch (method) {
        case AverageMethod::enumeration: return "enumeration";
        case AverageMethod::monte_carlo: return "monte_carlo";
        case AverageMethod::closed_form: return "closed_form";
    }
    return "closed_form";
}

template <typename T = double>
struct AverageEstimate {
    T value{};
    T std_error{};
    Index samples{};
    AverageMethod method{};
};

enum class MomentMethod { enumeration, closed_form };

namespace detail {

/// Partition statistics of one subset from the subset sums and the global
/// sum; O(r) per subset instead of O(N).
template <typename T>
PartitionStats<T> subset_stats(const PureState<T>& state, const std::complex<T>& total_sum,
                               const std::vector<Index>& subset, const VectorX<T>& abs_sq) {
    const Index dim = state.size();
    const Index r = static_cast<Index>(subset.size());
    const auto& amps = state.amplitudes();
    std::complex<T> sum_m{};
    T p0{};
    for (Index m : subset) {
        sum_m += amps(m);
        p0 += abs_sq(m);
    }
    PartitionStats<T> stats;
    stats.r = r;
    stats.n_total = dim;
    stats.p0 = p0;
    stats.abar_m = sum_m / T(r);
    stats.abar_u = (r == dim) ? std::complex<T>{} : (total_sum - sum_m) / T(dim - r);
    stats.abar = total_sum / T(dim);
    return stats;
}

inline std::uint64_t checked_subset_count(Index n_total, Index r) {
    const auto count = binomial_within(n_total, r, kEnumerationBudget);
    if (!count) {
        throw BudgetExceeded("C(" + std::to_string(n_total) + ", " + std::to_string(r) +
                             ") exceeds the enumeration budget of " +
                             std::to_string(kEnumerationBudget));
    }
    return *count;
}

} // namespace detail

/// Mean success probability over every choice of r marked indices, by
/// lexicographic enumeration with a fixed-order compensated accumulation.
template <typename T>
AverageEstimate<T> average_success_exact(const PureState<T>& state, Index r, Index t) {
    const Index dim = state.size();
    if (r < 1 || r > dim) throw InvalidCount("marked count must satisfy 1 <= r <= N");
    const std::uint64_t count = detail::checked_subset_count(dim, r);

    const T omega = rotation_angle<T>(dim, r);
    const std::complex<T> total_sum = compensated_sum(state.amplitudes());
    const VectorX<T> abs_sq = state.amplitudes().array().abs2();

    CompensatedSum<T> acc;
    SubsetEnumerator subsets(dim, r);
    do {
        const PartitionStats<T> stats =
            detail::subset_stats(state, total_sum, subsets.current(), abs_sq);
        acc.add(success_probability_closed(stats, omega, t));
    } while (subsets.next());

    AverageEstimate<T> est;
    est.value = acc.value() / T(static_cast<double>(count));
    est.std_error = T(0);
    est.samples = static_cast<Index>(count);
    est.method = AverageMethod::enumeration;
    return est;
}

/// Unbiased Monte Carlo estimate of the same average from uniformly sampled
/// r-subsets. Sample j draws from a stream derived from (seed, j) only, so
/// the estimate is reproducible and independent of evaluation order.
template <typename T>
AverageEstimate<T> average_success_mc(const PureState<T>& state, Index r, Index t,
                                      Index samples, std::uint64_t seed) {
    const Index dim = state.size();
    if (r < 1 || r > dim) throw InvalidCount("marked count must satisfy 1 <= r <= N");
    if (samples < 2) throw InvalidCount("Monte Carlo needs at least 2 samples");

    const T omega = rotation_angle<T>(dim, r);
    const std::complex<T> total_sum = compensated_sum(state.amplitudes());
    const VectorX<T> abs_sq = state.amplitudes().array().abs2();

    std::vector<Index> pool(static_cast<std::size_t>(dim));
    for (Index i = 0; i < dim; ++i) pool[static_cast<std::size_t>(i)] = i;

    // Welford accumulation; deterministic in the fixed j order.
    T mean{};
    T m2{};
    for (Index j = 0; j < samples; ++j) {
        SplitMix64 rng = sample_stream(seed, static_cast<std::uint64_t>(j));
        const std::vector<Index> subset = sample_subset(pool, r, rng);
        const PartitionStats<T> stats = detail::subset_stats(state, total_sum, subset, abs_sq);
        const T x = success_probability_closed(stats, omega, t);
        const T delta = x - mean;
        mean += delta / T(j + 1);
        m2 += delta * (x - mean);
    }

    AverageEstimate<T> est;
    est.value = mean;
    est.std_error = std::sqrt(m2 / T(samples - 1)) / std::sqrt(T(samples));
    est.samples = samples;
    est.method = AverageMethod::monte_carlo;
    return est;
}

/// Closed form of the averaged success probability: the leading
/// N|abar|^2 sin^2[w(t+1/2)] term plus the (r/N)(1 - N|abar|^2) correction,
/// dropping only the O(1/N) remainder.
template <typename T>
T average_success_closed(const PureState<T>& state, Index r, Index t) {
    const Index dim = state.size();
    const T omega = rotation_angle<T>(dim, r);  // validates r
    const T n_abar_sq = T(dim) * std::norm(global_mean(state));
    const T s = std::sin(omega * (T(static_cast<double>(t)) + T(0.5)));
    return n_abar_sq * s * s + (T(r) / T(dim)) * (T(1) - n_abar_sq);
}

/// Subset-choice moments, either by exact enumeration or from the leading
/// closed forms.
template <typename T>
MomentAverages<T> moment_averages(const PureState<T>& state, Index r, MomentMethod method) {
    const Index dim = state.size();
    if (r < 1 || r > dim) throw InvalidCount("marked count must satisfy 1 <= r <= N");

    MomentAverages<T> moments;
    moments.r = r;
    moments.n_total = dim;

    if (method == MomentMethod::closed_form) {
        const T abar_sq = std::norm(global_mean(state));
        moments.mean_p0 = T(r) / T(dim);
        moments.mean_abs_abar_u_sq = abar_sq;
        moments.mean_abs_abar_m_sq = abar_sq * (T(1) - T(1) / T(r)) + T(1) / (T(r) * T(dim));
        moments.mean_cross = abar_sq;
        return moments;
    }

    const std::uint64_t count = detail::checked_subset_count(dim, r);
    const std::complex<T> total_sum = compensated_sum(state.amplitudes());
    const VectorX<T> abs_sq = state.amplitudes().array().abs2();

    CompensatedSum<T> acc_p0;
    CompensatedSum<T> acc_u;
    CompensatedSum<T> acc_m;
    CompensatedSum<std::complex<T>> acc_cross;
    SubsetEnumerator subsets(dim, r);
    do {
        const PartitionStats<T> stats =
            detail::subset_stats(state, total_sum, subsets.current(), abs_sq);
        acc_p0.add(stats.p0);
        acc_u.add(std::norm(stats.abar_u));
        acc_m.add(std::norm(stats.abar_m));
        acc_cross.add(std::conj(stats.abar_u) * stats.abar_m);
    } while (subsets.next());

    const T inv_count = T(1) / T(static_cast<double>(count));
    moments.mean_p0 = acc_p0.value() * inv_count;
    moments.mean_abs_abar_u_sq = acc_u.value() * inv_count;
    moments.mean_abs_abar_m_sq = acc_m.value() * inv_count;
    moments.mean_cross = acc_cross.value() * inv_count;
    return moments;
}

/// Success probability of a measurement at the optimal time, to leading
/// order: N|abar|^2, which coincides with the squared overlap with the equal
/// superposition state.
template <typename T>
T max_success(const PureState<T>& state, Index /*r*/) {
    return T(state.size()) * std::norm(global_mean(state));
}

} // namespace grover
