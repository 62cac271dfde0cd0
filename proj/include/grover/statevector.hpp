#pragma once

#include <string>
#include <vector>

#include "grover/numeric.hpp"
#include "grover/state.hpp"

namespace grover {

/// Per-iteration record of the measured success probability, the fixed
/// probability bounds of the run, and the mean marked/unmarked amplitudes.
template <typename T = double>
struct ProbabilityTrace {
    struct Entry {
        Index t;
        T p_success;
        T p_min;
        T p_max;
        std::complex<T> kbar;
        std::complex<T> lbar;
    };
    std::vector<Entry> entries;
};

namespace detail {

template <typename T>
void check_dims(const PureState<T>& state, const MarkedSet& marked) {
    if (state.num_qubits() != marked.num_qubits()) {
        throw DimensionMismatch("state has n=" + std::to_string(state.num_qubits()) +
                                ", marked set has n=" + std::to_string(marked.num_qubits()));
    }
}

template <typename T>
void oracle_in_place(ComplexVector<T>& amps, const MarkedSet& marked) {
    for (Index m : marked.indices()) amps(m) = -amps(m);
}

template <typename T>
void diffusion_in_place(ComplexVector<T>& amps) {
    const std::complex<T> abar = compensated_mean(amps);
    amps = (T(2) * abar - amps.array()).matrix();
}

} // namespace detail

/// Phase oracle: a_m -> -a_m on the marked indices.
template <typename T>
PureState<T> apply_oracle(const PureState<T>& state, const MarkedSet& marked) {
    detail::check_dims(state, marked);
    ComplexVector<T> amps = state.amplitudes();
    detail::oracle_in_place(amps, marked);
    return PureState<T>(state.num_qubits(), std::move(amps));
}

/// Inversion about the mean including its global sign: a_i -> 2*abar - a_i.
template <typename T>
PureState<T> apply_diffusion(const PureState<T>& state) {
    ComplexVector<T> amps = state.amplitudes();
    detail::diffusion_in_place(amps);
    return PureState<T>(state.num_qubits(), std::move(amps));
}

/// One search iteration: diffusion after the oracle, no extra global phase.
template <typename T>
PureState<T> grover_step(const PureState<T>& state, const MarkedSet& marked) {
    detail::check_dims(state, marked);
    ComplexVector<T> amps = state.amplitudes();
    detail::oracle_in_place(amps, marked);
    detail::diffusion_in_place(amps);
    return PureState<T>(state.num_qubits(), std::move(amps));
}

/// t search iterations by repeated stepping on a single working vector;
/// memory stays at one dense copy of the register.
template <typename T>
PureState<T> evolve(const PureState<T>& state, const MarkedSet& marked, Index t) {
    detail::check_dims(state, marked);
    if (t < 0) throw InvalidCount("iteration count must be >= 0");
    ComplexVector<T> amps = state.amplitudes();
    for (Index step = 0; step < t; ++step) {
        detail::oracle_in_place(amps, marked);
        detail::diffusion_in_place(amps);
    }
    return PureState<T>(state.num_qubits(), std::move(amps));
}

/// Probability of measuring any marked index.
template <typename T>
T success_probability(const PureState<T>& state, const MarkedSet& marked) {
    detail::check_dims(state, marked);
    CompensatedSum<T> p;
    for (Index m : marked.indices()) p.add(std::norm(state.amplitude(m)));
    return p.value();
}

namespace detail {

/// Empirical means of the marked and unmarked amplitudes of a state. With an
/// empty unmarked set the unmarked mean is reported as 0.
template <typename T>
std::pair<std::complex<T>, std::complex<T>> empirical_means(const ComplexVector<T>& amps,
                                                            const MarkedSet& marked) {
    const Index dim = amps.size();
    const Index r = marked.count();
    const auto& idx = marked.indices();
    CompensatedSum<std::complex<T>> sum_m;
    CompensatedSum<std::complex<T>> sum_u;
    std::size_t next_marked = 0;
    for (Index i = 0; i < dim; ++i) {
        if (next_marked < idx.size() && idx[next_marked] == i) {
            sum_m.add(amps(i));
            ++next_marked;
        } else {
            sum_u.add(amps(i));
        }
    }
    const std::complex<T> kbar = sum_m.value() / T(r);
    const std::complex<T> lbar = (r == dim) ? std::complex<T>{} : sum_u.value() / T(dim - r);
    return {kbar, lbar};
}

} // namespace detail

/// Evolve step by step, recording one entry per t in [0, t_max]. The bound
/// columns carry the initial-state bounds, which the rotation picture keeps
/// constant over the run.
template <typename T>
ProbabilityTrace<T> trace_run(const PureState<T>& state, const MarkedSet& marked, Index t_max) {
    detail::check_dims(state, marked);
    if (t_max < 0) throw InvalidCount("iteration count must be >= 0");

    const PartitionStats<T> stats = partition_stats(state, marked);
    const T p_min = std::max(T(0), stats.p0 - T(stats.r) * std::norm(stats.abar_m));
    const T p_max = std::min(T(1), stats.p0 + T(stats.n_total - stats.r) * std::norm(stats.abar_u));

    ProbabilityTrace<T> trace;
    trace.entries.reserve(static_cast<std::size_t>(t_max) + 1);
    ComplexVector<T> amps = state.amplitudes();
    for (Index t = 0; t <= t_max; ++t) {
        if (t > 0) {
            detail::oracle_in_place(amps, marked);
            detail::diffusion_in_place(amps);
        }
        CompensatedSum<T> p;
        for (Index m : marked.indices()) p.add(std::norm(amps(m)));
        const auto [kbar, lbar] = detail::empirical_means(amps, marked);
        trace.entries.push_back({t, p.value(), p_min, p_max, kbar, lbar});
    }
    return trace;
}

} // namespace grover
