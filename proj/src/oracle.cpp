#include "qfall/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

namespace qfall::oracle {
namespace {

Eigen::VectorXcd to_vector(const WavePacket& psi)
{
    Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.size()));
    for (std::size_t i = 0; i < psi.size(); ++i) v(static_cast<Eigen::Index>(i)) = psi[i];
    return v;
}

void require_grid(const Grid& expected, const Grid& actual, const char* who)
{
    if (!(expected == actual)) throw Error(Errc::GridMismatch, std::string(who) + ": operator and state grids differ");
}

} // namespace

double max_hermitian_defect(const Eigen::MatrixXcd& m)
{
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_unitary_defect(const Eigen::MatrixXcd& m)
{
    const auto n = m.rows();
    return (m.adjoint() * m - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

DenseOperator dense_hamiltonian(const Grid& grid, const PhysicalParams& params)
{
    params.validate();
    const std::size_t n = grid.size();
    if (n > kMaxHamiltonianSize)
        throw Error(Errc::TooLarge, "dense Hamiltonian limited to " + std::to_string(kMaxHamiltonianSize) +
                                        " nodes, got " + std::to_string(n));

    // Kinetic matrix T_ab = (1/n) sum_j e^{i k_j (x_a - x_b)} hbar^2 k_j^2 / 2m.
    // It depends on a - b only, so one row of the circulant is enough.
    const double dx = grid.dx();
    Eigen::VectorXcd row(static_cast<Eigen::Index>(n));
    for (std::size_t d = 0; d < n; ++d) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double k = grid.k_fft(j);
            s += std::polar(params.hbar * params.hbar * k * k / (2.0 * params.m),
                            k * dx * static_cast<double>(d));
        }
        row(static_cast<Eigen::Index>(d)) = s / static_cast<double>(n);
    }

    Eigen::MatrixXcd h(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t d = (a + n - b) % n;
            h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = row(static_cast<Eigen::Index>(d));
        }
        h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) += params.m * params.g * grid.x(a);
    }
    // Remove round-off asymmetry from the summed exponentials.
    Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
    return DenseOperator{grid, std::move(sym)};
}

DenseOperator position_operator(const Grid& grid)
{
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) x(i, i) = grid.x(static_cast<std::size_t>(i));
    return DenseOperator{grid, std::move(x)};
}

DenseOperator dense_propagator(const DenseOperator& h, double t, const PhysicalParams& params)
{
    const double defect = max_hermitian_defect(h.matrix);
    if (defect > kHermitianTolerance)
        throw Error(Errc::NotHermitian, "Hamiltonian Hermiticity defect " + std::to_string(defect));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h.matrix);
    const auto& energies = eig.eigenvalues();
    const auto& vectors = eig.eigenvectors();
    Eigen::VectorXcd phases(energies.size());
    for (Eigen::Index i = 0; i < energies.size(); ++i) phases(i) = std::polar(1.0, -energies(i) * t / params.hbar);
    Eigen::MatrixXcd u = vectors * phases.asDiagonal() * vectors.adjoint();
    return DenseOperator{h.grid, std::move(u)};
}

DenseOperator heisenberg_position(const DenseOperator& u, const Grid& grid)
{
    require_grid(u.grid, grid, "heisenberg_position");
    const double defect = max_unitary_defect(u.matrix);
    if (defect > kUnitaryTolerance)
        throw Error(Errc::NotUnitary, "propagator unitarity defect " + std::to_string(defect));

    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::VectorXd xs(n);
    for (Eigen::Index i = 0; i < n; ++i) xs(i) = grid.x(static_cast<std::size_t>(i));
    Eigen::MatrixXcd xu = xs.asDiagonal() * u.matrix;
    Eigen::MatrixXcd xt = u.matrix.adjoint() * xu;
    return DenseOperator{grid, std::move(xt)};
}

WavePacket apply(const DenseOperator& op, const WavePacket& psi)
{
    require_grid(op.grid, psi.grid(), "apply");
    const Eigen::VectorXcd out = op.matrix * to_vector(psi);
    return WavePacket(psi.grid(), std::vector<cplx>(out.data(), out.data() + out.size()));
}

cplx matrix_element(const WavePacket& phi, const DenseOperator& op, const WavePacket& psi)
{
    require_grid(op.grid, phi.grid(), "matrix_element");
    require_grid(op.grid, psi.grid(), "matrix_element");
    return to_vector(phi).dot(op.matrix * to_vector(psi)) * phi.grid().dx();
}

cplx commutator_element(const WavePacket& phi, const WavePacket& psi, double t, const Grid& grid,
                        const PhysicalParams& params)
{
    if (grid.size() > kMaxCommutatorSize)
        throw Error(Errc::TooLarge, "commutator check limited to " + std::to_string(kMaxCommutatorSize) + " nodes");
    require_grid(grid, phi.grid(), "commutator_element");
    require_grid(grid, psi.grid(), "commutator_element");
    check_margin(phi, "commutator_element bra");
    check_margin(psi, "commutator_element ket");
    if (t == 0.0) return 0.0;

    const auto h = dense_hamiltonian(grid, params);
    const auto u = dense_propagator(h, t, params);
    const auto xt = heisenberg_position(u, grid);

    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::VectorXd xs(n);
    for (Eigen::Index i = 0; i < n; ++i) xs(i) = grid.x(static_cast<std::size_t>(i));

    const Eigen::VectorXcd ket = to_vector(psi);
    const Eigen::VectorXcd x0_ket = xs.asDiagonal() * ket;
    const Eigen::VectorXcd a = xt.matrix * x0_ket;                     // x(t) x(0) |psi>
    const Eigen::VectorXcd b = xs.asDiagonal() * (xt.matrix * ket);     // x(0) x(t) |psi>
    return to_vector(phi).dot(a - b) * grid.dx();
}

} // namespace qfall::oracle
