#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace grover {

using Index = Eigen::Index;

template <typename T>
using VectorX = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using ComplexVector = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, 1>;
template <typename T>
using ComplexMatrix = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic>;

/// Number of basis states of an n-qubit register.
constexpr Index dimension(int num_qubits) { return Index{1} << num_qubits; }

} // namespace grover
