#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "grover/numeric.hpp"
#include "grover/state.hpp"

namespace grover {

/// Below this value the Gram-Schmidt direction is numerically meaningless and
/// its coordinate is provably of the same magnitude, so the member is dropped.
inline constexpr double kGramSchmidtThreshold = 1e-7;
inline constexpr double kBoundsTolerance = 1e-12;

/// Orthonormal invariant quadruple of a search instance. psi_m / psi_u are
/// the components of the initial state perpendicular to the plane spanned by
/// eta_u and eta_m, inside the marked and unmarked subspaces respectively;
/// either may be absent when the state has no such component.
template <typename T = double>
struct FourDFrame {
    std::optional<PureState<T>> psi_m;
    std::optional<PureState<T>> psi_u;
    PureState<T> eta_u;
    PureState<T> eta_m;
    T omega;
    Index r;
    int n;
};

/// Coordinates of a state in a FourDFrame, ordered (psi_m, psi_u, eta_u, eta_m).
template <typename T = double>
struct FourDVector {
    std::complex<T> c_psi_m{};
    std::complex<T> c_psi_u{};
    std::complex<T> c_eta_u{};
    std::complex<T> c_eta_m{};

    T squared_norm() const {
        return std::norm(c_psi_m) + std::norm(c_psi_u) + std::norm(c_eta_u) + std::norm(c_eta_m);
    }
};

/// Rotation angle of one search iteration within the eta plane, from the
/// exact rationals cos w = 1 - 2r/N and sin w = 2 sqrt((r/N)(1 - r/N)).
template <typename T = double>
T rotation_angle(Index n_total, Index r) {
    if (r < 1 || r > n_total) throw InvalidCount("marked count must satisfy 1 <= r <= N");
    const T ratio = T(r) / T(n_total);
    const T cos_w = T(1) - T(2) * ratio;
    const T sin_w = T(2) * std::sqrt(ratio * (T(1) - ratio));
    return std::atan2(sin_w, cos_w);
}

/// floor((pi/4) sqrt(N/r)), the measurement time that maximizes the averaged
/// success probability.
inline Index optimal_iterations(Index n_total, Index r) {
    if (r < 1 || r > n_total) throw InvalidCount("marked count must satisfy 1 <= r <= N");
    const double x =
        (std::numbers::pi / 4.0) * std::sqrt(static_cast<double>(n_total) / static_cast<double>(r));
    return static_cast<Index>(std::floor(x));
}

/// Construct the invariant frame of (state, marked). Requires r < N; with
/// every index marked the unmarked eta direction does not exist and callers
/// must use the degenerate P_s = 1 path instead.
template <typename T>
FourDFrame<T> build_frame(const PureState<T>& state, const MarkedSet& marked) {
    if (state.num_qubits() != marked.num_qubits()) {
        throw DimensionMismatch("state has n=" + std::to_string(state.num_qubits()) +
                                ", marked set has n=" + std::to_string(marked.num_qubits()));
    }
    const Index dim = state.size();
    const Index r = marked.count();
    if (r == dim) throw FullyMarked("frame requires at least one unmarked index");

    const auto& amps = state.amplitudes();
    const auto& idx = marked.indices();
    const PartitionStats<T> stats = partition_stats(state, marked);

    ComplexVector<T> eta_m_vec = ComplexVector<T>::Zero(dim);
    ComplexVector<T> eta_u_vec =
        ComplexVector<T>::Constant(dim, std::complex<T>(T(1) / std::sqrt(T(dim - r)), T(0)));
    const std::complex<T> marked_fill(T(1) / std::sqrt(T(r)), T(0));
    for (Index m : idx) {
        eta_m_vec(m) = marked_fill;
        eta_u_vec(m) = std::complex<T>{};
    }

    // Deviations from the subset means; these are exactly the unnormalized
    // Gram-Schmidt complements of the projected state.
    ComplexVector<T> dev_m = ComplexVector<T>::Zero(dim);
    ComplexVector<T> dev_u = ComplexVector<T>::Zero(dim);
    std::size_t next_marked = 0;
    for (Index i = 0; i < dim; ++i) {
        if (next_marked < idx.size() && idx[next_marked] == i) {
            dev_m(i) = amps(i) - stats.abar_m;
            ++next_marked;
        } else {
            dev_u(i) = amps(i) - stats.abar_u;
        }
    }

    FourDFrame<T> frame{std::nullopt,
                        std::nullopt,
                        PureState<T>(state.num_qubits(), std::move(eta_u_vec)),
                        PureState<T>(state.num_qubits(), std::move(eta_m_vec)),
                        rotation_angle<T>(dim, r),
                        r,
                        state.num_qubits()};

    const T norm_m = dev_m.norm();
    if (norm_m >= T(kGramSchmidtThreshold)) {
        frame.psi_m.emplace(state.num_qubits(), (dev_m / norm_m).eval());
    }
    const T norm_u = dev_u.norm();
    if (norm_u >= T(kGramSchmidtThreshold)) {
        frame.psi_u.emplace(state.num_qubits(), (dev_u / norm_u).eval());
    }
    return frame;
}

/// Coordinates of the state that built the frame, straight from its
/// partition statistics. Coordinates of absent frame members are 0.
template <typename T>
FourDVector<T> decompose(const PureState<T>& state, const FourDFrame<T>& frame,
                         const PartitionStats<T>& stats) {
    if (state.num_qubits() != frame.n) {
        throw FrameMismatch("state has n=" + std::to_string(state.num_qubits()) +
                            ", frame has n=" + std::to_string(frame.n));
    }
    if (stats.r != frame.r || stats.n_total != state.size()) {
        throw FrameMismatch("partition statistics do not match the frame");
    }
    const Index dim = stats.n_total;
    const Index r = stats.r;

    FourDVector<T> vec;
    if (frame.psi_m) {
        vec.c_psi_m = std::sqrt(std::max(T(0), stats.p0 - T(r) * std::norm(stats.abar_m)));
    }
    if (frame.psi_u) {
        vec.c_psi_u = std::sqrt(
            std::max(T(0), T(1) - stats.p0 - T(dim - r) * std::norm(stats.abar_u)));
    }
    vec.c_eta_u = std::sqrt(T(dim - r)) * stats.abar_u;
    vec.c_eta_m = std::sqrt(T(r)) * stats.abar_m;
    return vec;
}

/// One application of the iteration in frame coordinates, raised to the t-th
/// power: psi_m is fixed, psi_u alternates sign, and the eta plane rotates by
/// omega*t. The trig pair is taken directly from the angle product, so no
/// error accumulates over repeated 2x2 products.
template <typename T>
FourDVector<T> evolve_closed(const FourDVector<T>& vec, T omega, Index t) {
    if (t < 0) throw InvalidCount("iteration count must be >= 0");
    const T angle = omega * T(static_cast<double>(t));
    const T c = std::cos(angle);
    const T s = std::sin(angle);
    FourDVector<T> out;
    out.c_psi_m = vec.c_psi_m;
    out.c_psi_u = parity_sign<T>(t) * vec.c_psi_u;
    out.c_eta_u = c * vec.c_eta_u - s * vec.c_eta_m;
    out.c_eta_m = s * vec.c_eta_u + c * vec.c_eta_m;
    return out;
}

/// Success probability after t iterations, in the explicit three-term
/// cos(2wt)/sin(2wt) form.
template <typename T>
T success_probability_closed(const PartitionStats<T>& stats, T omega, Index t) {
    const T r = T(stats.r);
    const T nu = T(stats.n_total - stats.r);
    const T imbalance = nu * std::norm(stats.abar_u) - r * std::norm(stats.abar_m);
    const T cross = std::real(std::conj(stats.abar_u) * stats.abar_m) +
                    std::real(std::conj(stats.abar_m) * stats.abar_u);
    const T angle = T(2) * omega * T(static_cast<double>(t));
    return stats.p0 + T(0.5) * imbalance - T(0.5) * imbalance * std::cos(angle) +
           T(0.5) * std::sqrt(r * nu) * cross * std::sin(angle);
}

/// Time-independent envelope of the success probability: the projections of
/// the initial state onto the marked plane and onto everything but psi_u.
/// Values may sit outside [0,1] only by roundoff; anything worse means the
/// statistics are inconsistent.
template <typename T>
std::pair<T, T> probability_bounds(const PartitionStats<T>& stats) {
    T p_min = stats.p0 - T(stats.r) * std::norm(stats.abar_m);
    T p_max = stats.p0 + T(stats.n_total - stats.r) * std::norm(stats.abar_u);
    if (p_min < -T(kBoundsTolerance) || p_min > T(1) + T(kBoundsTolerance) ||
        p_max < -T(kBoundsTolerance) || p_max > T(1) + T(kBoundsTolerance)) {
        throw InconsistentStats("bounds [" + std::to_string(static_cast<double>(p_min)) + ", " +
                                std::to_string(static_cast<double>(p_max)) + "] escape [0, 1]");
    }
    p_min = std::min(std::max(p_min, T(0)), T(1));
    p_max = std::min(std::max(p_max, T(0)), T(1));
    return {p_min, p_max};
}

/// Mean amplitudes (marked, unmarked) after t iterations.
template <typename T>
std::pair<std::complex<T>, std::complex<T>> mean_amplitudes(const PartitionStats<T>& stats,
                                                            T omega, Index t) {
    if (stats.fully_marked()) throw FullyMarked("no unmarked amplitudes to average");
    const T r = T(stats.r);
    const T nu = T(stats.n_total - stats.r);
    const T angle = omega * T(static_cast<double>(t));
    const T c = std::cos(angle);
    const T s = std::sin(angle);
    const std::complex<T> kbar = std::sqrt(nu / r) * stats.abar_u * s + stats.abar_m * c;
    const std::complex<T> lbar = stats.abar_u * c - std::sqrt(r / nu) * stats.abar_m * s;
    return {kbar, lbar};
}

/// Assemble the full register state after t iterations from the closed-form
/// means and the frozen t=0 deviations. The unmarked deviations alternate
/// sign with t; the marked ones do not. For N=2 with r=1 both deviation
/// vectors are identically zero, so the formula stays valid even though both
/// perpendicular directions degenerate.
template <typename T>
PureState<T> reconstruct_state(const PureState<T>& initial, const MarkedSet& marked, Index t) {
    if (initial.num_qubits() != marked.num_qubits()) {
        throw DimensionMismatch("state has n=" + std::to_string(initial.num_qubits()) +
                                ", marked set has n=" + std::to_string(marked.num_qubits()));
    }
    if (t < 0) throw InvalidCount("iteration count must be >= 0");
    const Index dim = initial.size();
    const Index r = marked.count();
    if (r == dim) throw FullyMarked("reconstruction requires at least one unmarked index");

    const PartitionStats<T> stats = partition_stats(initial, marked);
    const T omega = rotation_angle<T>(dim, r);
    const auto [kbar, lbar] = mean_amplitudes(stats, omega, t);
    const T sign = parity_sign<T>(t);

    const auto& amps = initial.amplitudes();
    const auto& idx = marked.indices();
    ComplexVector<T> out(dim);
    std::size_t next_marked = 0;
    for (Index i = 0; i < dim; ++i) {
        if (next_marked < idx.size() && idx[next_marked] == i) {
            out(i) = kbar + (amps(i) - stats.abar_m);
            ++next_marked;
        } else {
            out(i) = lbar + sign * (amps(i) - stats.abar_u);
        }
    }
    return PureState<T>(initial.num_qubits(), std::move(out));
}

} // namespace grover
