#pragma once

#include <vector>

#include "gsteer/graph.hpp"
#include "gsteer/qudit.hpp"

namespace gsteer {

/// omega^k with omega = exp(2 pi i / d).
cplx root_of_unity(int d, long long k);

/// F|v'> = sum_v omega^{v' v} |v> / sqrt(d).
Operator fourier_op(int d);
/// Z = diag(omega^v).
Operator z_op(int d);
/// X|v> = |v + 1 mod d>.  With these conventions F^dagger Z F = X.
Operator x_op(int d);

/// Operator that is diagonal in the computational basis, stored as its diagonal.
struct DiagonalOperator {
    QuditRegister reg;
    Eigen::VectorXcd diagonal;

    Operator to_operator() const;
    DiagonalOperator operator*(const DiagonalOperator& other) const;
};

/// Controlled phase sum_v |v><v|_i (x) Z_j^v on the full register: the phase
/// omega^{v_i v_j} on every basis state.
DiagonalOperator edge_unitary(int i, int j, const QuditRegister& reg);

/// prod_{(i,j) in E} U_(i,j) applied to (x)_k F|0>_k, edges in the order stored in `g`.
/// Throws NotTwoColorable for graphs with an odd cycle.
PureState build_graph_state(const Graph& g, int d);

/// prod_k X_k^{x_k} Z_k^{z_k}, with X applied after Z on each qudit.
struct PauliWord {
    std::vector<int> x;
    std::vector<int> z;

    int n_qudits() const { return static_cast<int>(x.size()); }
    friend bool operator==(const PauliWord&, const PauliWord&) = default;
};

Eigen::MatrixXcd pauli_matrix(const PauliWord& w, int d);
/// Applies the word to a state vector without materializing the matrix.
Eigen::VectorXcd apply_pauli(const PauliWord& w, const QuditRegister& reg, const Eigen::VectorXcd& psi);

/// K_a = X_a prod_{b in N(a)} Z_b for a = 1..N; each fixes build_graph_state(g, d).
std::vector<PauliWord> stabilizer_generators(const Graph& g, int d);

/// Generator variant with X_a^{x_sign} (x_sign = +1 or -1); used to pin the
/// dagger placement by direct numerical check.
std::vector<PauliWord> stabilizer_generators(const Graph& g, int d, int x_sign);

} // namespace gsteer
