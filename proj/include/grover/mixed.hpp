#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "grover/averaging.hpp"
#include "grover/state.hpp"
#include "grover/statevector.hpp"

namespace grover {

/// Ensemble members below this probability carry no weight in the reduced
/// density operator and are dropped.
inline constexpr double kMemberDropThreshold = 1e-14;

/// Pure state of an (n_alice + k_bob)-qubit register shared by two parties,
/// stored Bob-major: amplitude(mu, i) sits at index mu * N + i, with mu
/// indexing Bob's basis and i indexing Alice's.
template <typename T = double>
class BipartiteState {
  public:
    BipartiteState(int n_alice, int k_bob, ComplexVector<T> amplitudes)
        : n_alice_(n_alice), k_bob_(k_bob), amplitudes_(std::move(amplitudes)) {
        if (n_alice_ < 1 || k_bob_ < 1) throw InvalidCount("both registers need at least one qubit");
        const Index expected = dimension(n_alice_) * dimension(k_bob_);
        if (amplitudes_.size() != expected) {
            throw LengthMismatch("expected " + std::to_string(expected) + " amplitudes, got " +
                                 std::to_string(amplitudes_.size()));
        }
        const T norm_sq = amplitudes_.squaredNorm();
        if (std::abs(norm_sq - T(1)) > detail::scaled_tolerance<T>(kStateNormTolerance)) {
            throw NotNormalized("squared norm is " + std::to_string(static_cast<double>(norm_sq)));
        }
    }

    int n_alice() const { return n_alice_; }
    int k_bob() const { return k_bob_; }
    Index alice_dim() const { return dimension(n_alice_); }
    Index bob_dim() const { return dimension(k_bob_); }
    const ComplexVector<T>& amplitudes() const { return amplitudes_; }
    std::complex<T> amplitude(Index mu, Index i) const {
        return amplitudes_(mu * alice_dim() + i);
    }

  private:
    int n_alice_;
    int k_bob_;
    ComplexVector<T> amplitudes_;
};

/// Success probabilities of searching the joint register versus Alice's
/// reduced state alone, to leading order in r/N.
template <typename T = double>
struct PartialSearchReport {
    T p_ab;
    T p_a;
    T gap;
};

/// Evolve every member by the exact iteration; weights are untouched.
template <typename T>
MixedEnsemble<T> evolve_ensemble(const MixedEnsemble<T>& ens, const MarkedSet& marked, Index t) {
    if (ens.num_qubits() != marked.num_qubits()) {
        throw DimensionMismatch("ensemble has n=" + std::to_string(ens.num_qubits()) +
                                ", marked set has n=" + std::to_string(marked.num_qubits()));
    }
    std::vector<typename MixedEnsemble<T>::Member> members;
    members.reserve(ens.members().size());
    for (const auto& m : ens.members()) {
        members.push_back({m.weight, evolve(m.state, marked, t)});
    }
    return MixedEnsemble<T>(ens.num_qubits(), std::move(members));
}

/// Probability-weighted success probability of the evolved ensemble.
template <typename T>
T success_probability_mixed(const MixedEnsemble<T>& ens, const MarkedSet& marked, Index t) {
    if (ens.num_qubits() != marked.num_qubits()) {
        throw DimensionMismatch("ensemble has n=" + std::to_string(ens.num_qubits()) +
                                ", marked set has n=" + std::to_string(marked.num_qubits()));
    }
    CompensatedSum<T> acc;
    for (const auto& m : ens.members()) {
        acc.add(m.weight * success_probability(evolve(m.state, marked, t), marked));
    }
    return acc.value();
}

/// Closed form of the subset-averaged success probability of a mixed state,
/// applied member-wise so the correction term enters with each member's own
/// mean amplitude.
template <typename T>
T average_success_mixed_closed(const MixedEnsemble<T>& ens, Index r, Index t) {
    CompensatedSum<T> acc;
    for (const auto& m : ens.members()) {
        acc.add(m.weight * average_success_closed(m.state, r, t));
    }
    return acc.value();
}

/// Maximal averaged success probability of a mixed initial state: the
/// squared fidelity between the ensemble and the equal superposition state.
template <typename T>
T max_success_fidelity(const MixedEnsemble<T>& ens) {
    const PureState<T> eta = uniform_state<T>(ens.num_qubits());
    CompensatedSum<T> acc;
    for (const auto& m : ens.members()) {
        acc.add(m.weight * std::norm(eta.amplitudes().dot(m.state.amplitudes())));
    }
    return acc.value();
}

/// Maximal success probability when the initial state is the pseudo-pure
/// mixture (1-eps) I/N + eps |psi><psi|.
template <typename T>
T pseudo_pure_max(T epsilon, const PureState<T>& psi) {
    if (!(epsilon >= T(0) && epsilon <= T(1))) {
        throw InvalidEpsilon("epsilon must lie in [0, 1]");
    }
    const Index dim = psi.size();
    return (T(1) - epsilon) / T(dim) + epsilon * T(dim) * std::norm(global_mean(psi));
}

/// Trace out Bob: the ensemble over his computational basis, with weights
/// |c_mu|^2. Members below the drop threshold are removed; the survivors are
/// rescaled only when that removal shifts the total weight by less than
/// 1e-12.
template <typename T>
MixedEnsemble<T> bipartite_reduce(const BipartiteState<T>& state) {
    const Index n_dim = state.alice_dim();
    const Index k_dim = state.bob_dim();
    const auto& amps = state.amplitudes();

    std::vector<typename MixedEnsemble<T>::Member> members;
    members.reserve(static_cast<std::size_t>(k_dim));
    CompensatedSum<T> kept;
    CompensatedSum<T> dropped;
    for (Index mu = 0; mu < k_dim; ++mu) {
        const auto block = amps.segment(mu * n_dim, n_dim);
        const T c_sq = block.squaredNorm();
        if (c_sq < T(kMemberDropThreshold)) {
            dropped.add(c_sq);
            continue;
        }
        kept.add(c_sq);
        members.push_back(
            {c_sq, PureState<T>(state.n_alice(), (block / std::sqrt(c_sq)).eval())});
    }
    if (dropped.value() < T(1e-12)) {
        const T total = kept.value();
        for (auto& m : members) m.weight /= total;
    }
    return MixedEnsemble<T>(state.n_alice(), std::move(members));
}

/// Leading-order success probabilities of the joint search and of Alice's
/// partial search, and their gap. The gap is nonnegative up to roundoff.
template <typename T>
PartialSearchReport<T> compare_partial_search(const BipartiteState<T>& state, Index r) {
    const Index n_dim = state.alice_dim();
    const Index k_dim = state.bob_dim();
    if (r < 1 || r >= n_dim) throw InvalidCount("marked count must satisfy 1 <= r < N");

    // x_mu = c_mu * abar_mu = (1/N) sum_i b_{mu i}.
    CompensatedSum<std::complex<T>> sum_x;
    CompensatedSum<T> sum_abs_sq;
    const auto& amps = state.amplitudes();
    for (Index mu = 0; mu < k_dim; ++mu) {
        const std::complex<T> x =
            compensated_sum(amps.segment(mu * n_dim, n_dim)) / T(n_dim);
        sum_x.add(x);
        sum_abs_sq.add(std::norm(x));
    }

    PartialSearchReport<T> report;
    report.p_ab = (T(n_dim) / T(k_dim)) * std::norm(sum_x.value());
    report.p_a = T(n_dim) * sum_abs_sq.value();
    report.gap = report.p_a - report.p_ab;
    return report;
}

} // namespace grover
