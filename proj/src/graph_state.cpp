#include "gsteer/graph_state.hpp"

#include <cmath>
#include <numbers>

namespace gsteer {

namespace {

int mod(long long a, int d)
{
    const long long r = a % d;
    return static_cast<int>(r < 0 ? r + d : r);
}

void require_dim(int d)
{
    if (d < 2) throw ValidationError("local dimension must be >= 2");
}

} // namespace

cplx root_of_unity(int d, long long k)
{
    const int r = mod(k, d);
    if (r == 0) return {1.0, 0.0};
    if (2 * r == d) return {-1.0, 0.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * r / d);
}

Operator fourier_op(int d)
{
    require_dim(d);
    Eigen::MatrixXcd f(d, d);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (int v = 0; v < d; ++v)
        for (int vp = 0; vp < d; ++vp) f(v, vp) = s * root_of_unity(d, static_cast<long long>(v) * vp);
    return {f, true};
}

Operator z_op(int d)
{
    require_dim(d);
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(d, d);
    for (int v = 0; v < d; ++v) z(v, v) = root_of_unity(d, v);
    return {z, true};
}

Operator x_op(int d)
{
    require_dim(d);
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
    for (int v = 0; v < d; ++v) x((v + 1) % d, v) = 1.0;
    return {x, true};
}

Operator DiagonalOperator::to_operator() const
{
    return {diagonal.asDiagonal().toDenseMatrix(), true};
}

DiagonalOperator DiagonalOperator::operator*(const DiagonalOperator& other) const
{
    if (!(reg == other.reg)) throw ValidationError("DiagonalOperator: register mismatch");
    return {reg, diagonal.cwiseProduct(other.diagonal)};
}

DiagonalOperator edge_unitary(int i, int j, const QuditRegister& reg)
{
    const int n = reg.n_qudits();
    if (i == j) throw ValidationError("edge_unitary: i == j");
    if (i < 1 || i > n || j < 1 || j > n) throw ValidationError("edge_unitary: qudit out of range");
    const int d = reg.local_dim();
    Eigen::VectorXcd diag(static_cast<Eigen::Index>(reg.total_dim()));
    for (std::size_t k = 0; k < reg.total_dim(); ++k)
        diag(static_cast<Eigen::Index>(k)) =
            root_of_unity(d, static_cast<long long>(reg.digit(k, i)) * reg.digit(k, j));
    return {reg, diag};
}

PureState build_graph_state(const Graph& g, int d)
{
    require_dim(d);
    two_color(g);
    QuditRegister reg(g.n_vertices(), d);

    // (x)_k F|0>_k is the uniform superposition
    const auto dim = static_cast<Eigen::Index>(reg.total_dim());
    Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    for (auto [i, j] : g.edges())
        psi = psi.cwiseProduct(edge_unitary(i, j, reg).diagonal);
    return PureState(reg, std::move(psi));
}

Eigen::MatrixXcd pauli_matrix(const PauliWord& w, int d)
{
    const Eigen::MatrixXcd x = x_op(d).matrix;
    const Eigen::MatrixXcd z = z_op(d).matrix;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < w.n_qudits(); ++k) {
        Eigen::MatrixXcd local = Eigen::MatrixXcd::Identity(d, d);
        for (int e = 0; e < mod(w.x[static_cast<std::size_t>(k)], d); ++e) local = x * local;
        Eigen::MatrixXcd zp = Eigen::MatrixXcd::Identity(d, d);
        for (int e = 0; e < mod(w.z[static_cast<std::size_t>(k)], d); ++e) zp = z * zp;
        out = kron(out, local * zp);
    }
    return out;
}

Eigen::VectorXcd apply_pauli(const PauliWord& w, const QuditRegister& reg, const Eigen::VectorXcd& psi)
{
    const int n = reg.n_qudits();
    const int d = reg.local_dim();
    if (w.n_qudits() != n) throw ValidationError("apply_pauli: word length does not match register");
    Eigen::VectorXcd out(psi.size());
    // X^x Z^z |u> = omega^{z u} |u + x>
    for (std::size_t i = 0; i < reg.total_dim(); ++i) {
        long long phase = 0;
        std::size_t target = 0;
        for (int k = 1; k <= n; ++k) {
            const int u = reg.digit(i, k);
            phase += static_cast<long long>(w.z[static_cast<std::size_t>(k - 1)]) * u;
            target = target * static_cast<std::size_t>(d) +
                     static_cast<std::size_t>(mod(u + w.x[static_cast<std::size_t>(k - 1)], d));
        }
        out(static_cast<Eigen::Index>(target)) = root_of_unity(d, phase) * psi(static_cast<Eigen::Index>(i));
    }
    return out;
}

std::vector<PauliWord> stabilizer_generators(const Graph& g, int d, int x_sign)
{
    require_dim(d);
    if (x_sign != 1 && x_sign != -1) throw ValidationError("stabilizer_generators: x_sign must be +1 or -1");
    two_color(g);
    const auto n = static_cast<std::size_t>(g.n_vertices());
    std::vector<PauliWord> out;
    out.reserve(n);
    for (int a = 1; a <= g.n_vertices(); ++a) {
        PauliWord w{std::vector<int>(n, 0), std::vector<int>(n, 0)};
        w.x[static_cast<std::size_t>(a - 1)] = mod(x_sign, d);
        for (int b : g.neighbors(a)) w.z[static_cast<std::size_t>(b - 1)] = 1;
        out.push_back(std::move(w));
    }
    return out;
}

std::vector<PauliWord> stabilizer_generators(const Graph& g, int d)
{
    // X_a shifts v_a by +1, which multiplies the amplitude by
    // omega^{-sum_{b in N(a)} v_b}; the Z_b factors restore it.
    return stabilizer_generators(g, d, +1);
}

} // namespace gsteer
