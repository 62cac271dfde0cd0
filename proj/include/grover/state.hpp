#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "grover/errors.hpp"
#include "grover/numeric.hpp"
#include "grover/types.hpp"

namespace grover {

/// Input states may come from low-precision sources; internal identities are
/// checked at double-precision tolerances instead.
inline constexpr double kStateNormTolerance = 1e-8;
inline constexpr double kEnsembleWeightTolerance = 1e-10;

namespace detail {

/// Contract tolerances are calibrated for double; scalars with less
/// precision get the equivalent floor in their own epsilon.
template <typename T>
constexpr T scaled_tolerance(double calibrated) {
    return std::max(static_cast<T>(calibrated), T(100) * std::numeric_limits<T>::epsilon());
}

} // namespace detail

/// Normalized pure state of an n-qubit register. Amplitudes are stored
/// exactly as given; construction rejects rather than renormalizes, so a
/// mis-scaled fixture fails loudly instead of being silently patched.
template <typename T = double>
class PureState {
  public:
    using Scalar = std::complex<T>;
    using Vector = ComplexVector<T>;

    PureState(int num_qubits, Vector amplitudes)
        : n_(num_qubits), amplitudes_(std::move(amplitudes)) {
        if (n_ < 1) throw InvalidCount("qubit count must be >= 1");
        if (amplitudes_.size() != dimension(n_)) {
            throw LengthMismatch("expected " + std::to_string(dimension(n_)) +
                                 " amplitudes for n=" + std::to_string(n_) + ", got " +
                                 std::to_string(amplitudes_.size()));
        }
        const T norm_sq = amplitudes_.squaredNorm();
        if (std::abs(norm_sq - T(1)) > detail::scaled_tolerance<T>(kStateNormTolerance)) {
            throw NotNormalized("squared norm is " + std::to_string(static_cast<double>(norm_sq)));
        }
    }

    int num_qubits() const { return n_; }
    Index size() const { return amplitudes_.size(); }
    const Vector& amplitudes() const { return amplitudes_; }
    Scalar amplitude(Index i) const { return amplitudes_(i); }

  private:
    int n_;
    Vector amplitudes_;
};

/// The r marked basis indices of a search instance. Canonicalized to sorted
/// order at construction, so set equality is sequence equality.
class MarkedSet {
  public:
    MarkedSet(int num_qubits, std::vector<Index> indices)
        : n_(num_qubits), indices_(std::move(indices)) {
        if (n_ < 1) throw InvalidCount("qubit count must be >= 1");
        const Index dim = dimension(n_);
        if (indices_.empty() || static_cast<Index>(indices_.size()) > dim) {
            throw InvalidCount("marked set size must satisfy 1 <= r <= " + std::to_string(dim));
        }
        std::sort(indices_.begin(), indices_.end());
        for (std::size_t i = 0; i < indices_.size(); ++i) {
            if (indices_[i] < 0 || indices_[i] >= dim) {
                throw InvalidCount("marked index " + std::to_string(indices_[i]) + " out of range");
            }
            if (i > 0 && indices_[i] == indices_[i - 1]) {
                throw InvalidCount("duplicate marked index " + std::to_string(indices_[i]));
            }
        }
    }

    int num_qubits() const { return n_; }
    Index count() const { return static_cast<Index>(indices_.size()); }
    const std::vector<Index>& indices() const { return indices_; }
    bool contains(Index i) const {
        return std::binary_search(indices_.begin(), indices_.end(), i);
    }

    friend bool operator==(const MarkedSet& a, const MarkedSet& b) {
        return a.n_ == b.n_ && a.indices_ == b.indices_;
    }

  private:
    int n_;
    std::vector<Index> indices_;
};

/// Probability on the marked subspace and the mean amplitudes of the marked
/// set, its complement, and the whole register. When r = N the unmarked set
/// is empty; abar_u is fixed to 0 and fully_marked() signals callers to take
/// their degenerate branches.
template <typename T = double>
struct PartitionStats {
    T p0{};
    std::complex<T> abar_m{};
    std::complex<T> abar_u{};
    std::complex<T> abar{};
    Index r{};
    Index n_total{};

    bool fully_marked() const { return r == n_total; }
};

/// Probability-weighted ensemble of pure states realizing a density operator.
template <typename T = double>
class MixedEnsemble {
  public:
    struct Member {
        T weight;
        PureState<T> state;
    };

    MixedEnsemble(int num_qubits, std::vector<Member> members)
        : n_(num_qubits), members_(std::move(members)) {
        if (members_.empty()) throw InvalidCount("ensemble must have at least one member");
        CompensatedSum<T> total;
        for (const Member& m : members_) {
            if (!(m.weight > T(0))) throw InvalidWeight("ensemble weights must be positive");
            if (m.state.num_qubits() != n_) {
                throw DimensionMismatch("ensemble member has n=" +
                                        std::to_string(m.state.num_qubits()) + ", expected " +
                                        std::to_string(n_));
            }
            total.add(m.weight);
        }
        if (std::abs(total.value() - T(1)) > detail::scaled_tolerance<T>(kEnsembleWeightTolerance)) {
            throw NotNormalized("ensemble weights sum to " +
                                std::to_string(static_cast<double>(total.value())));
        }
    }

    int num_qubits() const { return n_; }
    const std::vector<Member>& members() const { return members_; }

  private:
    int n_;
    std::vector<Member> members_;
};

/// Equal superposition of all N basis states.
template <typename T = double>
PureState<T> uniform_state(int num_qubits) {
    if (num_qubits < 1) throw InvalidCount("qubit count must be >= 1");
    const Index dim = dimension(num_qubits);
    const T amp = T(1) / std::sqrt(T(dim));
    return PureState<T>(num_qubits,
                        ComplexVector<T>::Constant(dim, std::complex<T>(amp, T(0))));
}

/// Mean of all N amplitudes.
template <typename T>
std::complex<T> global_mean(const PureState<T>& state) {
    return compensated_mean(state.amplitudes());
}

/// Direct summation over the marked indices and their complement in one
/// sweep; no quantity is derived by subtraction from a global total.
template <typename T>
PartitionStats<T> partition_stats(const PureState<T>& state, const MarkedSet& marked) {
    if (state.num_qubits() != marked.num_qubits()) {
        throw DimensionMismatch("state has n=" + std::to_string(state.num_qubits()) +
                                ", marked set has n=" + std::to_string(marked.num_qubits()));
    }
    const auto& amps = state.amplitudes();
    const Index dim = amps.size();
    const Index r = marked.count();
    const auto& idx = marked.indices();

    CompensatedSum<T> p0;
    CompensatedSum<std::complex<T>> sum_marked;
    CompensatedSum<std::complex<T>> sum_unmarked;
    CompensatedSum<std::complex<T>> sum_all;

    std::size_t next_marked = 0;
    for (Index i = 0; i < dim; ++i) {
        const std::complex<T> a = amps(i);
        sum_all.add(a);
        if (next_marked < idx.size() && idx[next_marked] == i) {
            p0.add(std::norm(a));
            sum_marked.add(a);
            ++next_marked;
        } else {
            sum_unmarked.add(a);
        }
    }

    PartitionStats<T> stats;
    stats.r = r;
    stats.n_total = dim;
    stats.p0 = p0.value();
    stats.abar_m = sum_marked.value() / T(r);
    stats.abar_u = (r == dim) ? std::complex<T>{} : sum_unmarked.value() / T(dim - r);
    stats.abar = sum_all.value() / T(dim);
    return stats;
}

} // namespace grover
