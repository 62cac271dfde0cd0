#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "grover/algebraic.hpp"
#include "grover/state.hpp"

namespace grover {

/// Stricter than the frame-construction threshold so a state is never
/// labelled special while its frame directions are numerically ambiguous.
inline constexpr double kClassifyTolerance = 1e-9;
inline constexpr double kRealAmplitudeTolerance = 1e-12;

enum class CaseKind { single_marked, in_plane, perpendicular, generic };

inline const char* to_string(CaseKind kind) {
    switch (kind) {
        case CaseKind::single_marked: return "single_marked";
        case CaseKind::in_plane: return "in_plane";
        case CaseKind::perpendicular: return "perpendicular";
        case CaseKind::generic: return "generic";
    }
    return "generic";
}

/// Classification of an initial state together with the coordinate
/// magnitudes the decision was based on.
template <typename T = double>
struct CaseLabel {
    struct Witness {
        T c_psi_m;
        T c_psi_u;
        T c_eta_u;
        T c_eta_m;
    };
    CaseKind kind;
    Witness witness;
};

/// Radius of the rotation circle and length of the axis segment traced by a
/// real-amplitude single-marked-state search.
template <typename T = double>
struct CylinderGeometry {
    T radius;
    T length;
};

/// Label a search instance: single marked state, initial state inside the
/// eta plane, perpendicular to it, or generic. The witness magnitudes come
/// from the partition statistics alone, so this also covers r = N, where the
/// plane degenerates to the eta_m axis.
template <typename T>
CaseLabel<T> classify(const PureState<T>& state, const MarkedSet& marked) {
    if (state.num_qubits() != marked.num_qubits()) {
        throw DimensionMismatch("state has n=" + std::to_string(state.num_qubits()) +
                                ", marked set has n=" + std::to_string(marked.num_qubits()));
    }
    const PartitionStats<T> stats = partition_stats(state, marked);
    const T r = T(stats.r);
    const T nu = T(stats.n_total - stats.r);

    // The perpendicular components are measured as deviation norms rather
    // than by the cancellation-prone 1 - P0 - ... form, so exact degeneracies
    // (single-element subsets) come out as exact zeros.
    CompensatedSum<T> dev_m_sq;
    CompensatedSum<T> dev_u_sq;
    for (Index i = 0; i < state.size(); ++i) {
        if (marked.contains(i)) {
            dev_m_sq.add(std::norm(state.amplitude(i) - stats.abar_m));
        } else {
            dev_u_sq.add(std::norm(state.amplitude(i) - stats.abar_u));
        }
    }

    typename CaseLabel<T>::Witness w{};
    w.c_psi_m = std::sqrt(dev_m_sq.value());
    w.c_psi_u = std::sqrt(dev_u_sq.value());
    w.c_eta_u = std::sqrt(nu) * std::abs(stats.abar_u);
    w.c_eta_m = std::sqrt(r) * std::abs(stats.abar_m);

    CaseKind kind = CaseKind::generic;
    if (stats.r == 1) {
        kind = CaseKind::single_marked;
    } else if (w.c_psi_m <= T(kClassifyTolerance) && w.c_psi_u <= T(kClassifyTolerance)) {
        kind = CaseKind::in_plane;
    } else if (w.c_eta_m <= T(kClassifyTolerance) && w.c_eta_u <= T(kClassifyTolerance)) {
        kind = CaseKind::perpendicular;
    }
    return {kind, w};
}

/// Cylinder picture of a single-marked-state search. Only defined for real
/// amplitudes; complex inputs are rejected rather than given a silently
/// wrong geometric readout.
template <typename T>
CylinderGeometry<T> cylinder_geometry(const PureState<T>& state, Index marked_index) {
    const Index dim = state.size();
    if (marked_index < 0 || marked_index >= dim) {
        throw DimensionMismatch("marked index " + std::to_string(marked_index) +
                                " out of range for N=" + std::to_string(dim));
    }
    const auto& amps = state.amplitudes();
    for (Index i = 0; i < dim; ++i) {
        if (std::abs(amps(i).imag()) > T(kRealAmplitudeTolerance)) {
            throw ComplexAmplitudes("amplitude " + std::to_string(i) +
                                    " has a nonzero imaginary part");
        }
    }
    const PartitionStats<T> stats =
        partition_stats(state, MarkedSet(state.num_qubits(), {marked_index}));
    const T radius_sq =
        T(dim - 1) * std::norm(stats.abar_u) + std::norm(amps(marked_index));
    const T radius = std::sqrt(radius_sq);
    const T length = T(2) * std::sqrt(std::max(T(0), T(1) - radius_sq));
    return {radius, length};
}

/// Rotation of an in-plane state's (eta_u, eta_m) coordinates by omega*t.
template <typename T>
std::pair<std::complex<T>, std::complex<T>> in_plane_evolution(std::complex<T> alpha,
                                                               std::complex<T> beta, T omega,
                                                               Index t) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - T(1)) > T(1e-10)) {
        throw NotNormalized("in-plane coordinates must satisfy |alpha|^2 + |beta|^2 = 1");
    }
    const T angle = omega * T(static_cast<double>(t));
    const T c = std::cos(angle);
    const T s = std::sin(angle);
    return {alpha * c - beta * s, alpha * s + beta * c};
}

/// A state perpendicular to the eta plane only alternates the sign of its
/// psi_u component, so its success probability never moves.
template <typename T>
T perpendicular_evolution(T p0, Index /*t*/) {
    return p0;
}

} // namespace grover
