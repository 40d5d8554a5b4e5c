#pragma once

// Brute-force dense operators in the position basis of a small Grid. These
// are the ground truth the spectral propagators are checked against.

#include <Eigen/Dense>

#include "qfall/core.hpp"

namespace qfall::oracle {

inline constexpr std::size_t kMaxHamiltonianSize = 1024;
inline constexpr std::size_t kMaxCommutatorSize = 512;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

struct DenseOperator {
    Grid grid;
    Eigen::MatrixXcd matrix;
};

/// H = P^2/2m + m g X, with X diagonal on the position nodes and P the
/// spectral momentum operator F^dagger diag(hbar k) F. Throws Errc::TooLarge
/// above kMaxHamiltonianSize nodes.
DenseOperator dense_hamiltonian(const Grid& grid, const PhysicalParams& params);

/// Position operator X (diagonal).
DenseOperator position_operator(const Grid& grid);

/// U = exp(-i H t / hbar) by Hermitian eigendecomposition.
/// Throws Errc::NotHermitian if max|H - H^dagger| exceeds kHermitianTolerance.
DenseOperator dense_propagator(const DenseOperator& h, double t, const PhysicalParams& params);

/// Heisenberg-picture position x(t) = U^dagger X U.
/// Throws Errc::NotUnitary if max|U^dagger U - I| exceeds kUnitaryTolerance.
DenseOperator heisenberg_position(const DenseOperator& u, const Grid& grid);

/// <phi| [x(t), x(0)] |psi> with dense operators, for margin-localised
/// inputs on grids of at most kMaxCommutatorSize nodes.
cplx commutator_element(const WavePacket& phi, const WavePacket& psi, double t, const Grid& grid,
                        const PhysicalParams& params);

WavePacket apply(const DenseOperator& op, const WavePacket& psi);

/// <phi| op |psi> including the dx quadrature weight.
cplx matrix_element(const WavePacket& phi, const DenseOperator& op, const WavePacket& psi);

double max_hermitian_defect(const Eigen::MatrixXcd& m);
double max_unitary_defect(const Eigen::MatrixXcd& m);

} // namespace qfall::oracle
