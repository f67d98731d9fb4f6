#include "gsteer/qudit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gsteer {

namespace {

std::vector<std::size_t> permutation_map(const QuditRegister& reg, std::span<const int> order)
{
    const int n = reg.n_qudits();
    if (static_cast<int>(order.size()) != n)
        throw ValidationError("permute_qudits: order has " + std::to_string(order.size()) +
                              " entries, register has " + std::to_string(n));
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int q : order) {
        if (q < 1 || q > n || seen[static_cast<std::size_t>(q)])
            throw ValidationError("permute_qudits: order is not a permutation of 1..N");
        seen[static_cast<std::size_t>(q)] = true;
    }
    // new index -> old index
    std::vector<std::size_t> map(reg.total_dim());
    std::vector<std::size_t> old_stride(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) old_stride[static_cast<std::size_t>(k)] = reg.stride(order[static_cast<std::size_t>(k)]);
    for (std::size_t i = 0; i < map.size(); ++i) {
        std::size_t old = 0;
        for (int k = 1; k <= n; ++k)
            old += static_cast<std::size_t>(reg.digit(i, k)) * old_stride[static_cast<std::size_t>(k - 1)];
        map[i] = old;
    }
    return map;
}

// keep (ascending) followed by the traced qudits (ascending)
std::vector<int> keep_first_order(const QuditRegister& reg, std::span<const int> keep)
{
    if (keep.empty())
        throw ValidationError("partial_trace: empty keep set");
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
        throw ValidationError("partial_trace: duplicate qudit in keep set");
    for (int q : kept)
        if (q < 1 || q > reg.n_qudits())
            throw ValidationError("partial_trace: qudit index " + std::to_string(q) + " out of range");
    std::vector<int> order = kept;
    for (int q = 1; q <= reg.n_qudits(); ++q)
        if (!std::binary_search(kept.begin(), kept.end(), q)) order.push_back(q);
    return order;
}

} // namespace

QuditRegister::QuditRegister(int n_qudits, int local_dim) : n_(n_qudits), d_(local_dim), dim_(1)
{
    if (n_qudits < 1) throw ValidationError("QuditRegister: need at least one qudit");
    if (local_dim < 2) throw ValidationError("QuditRegister: local dimension must be >= 2");
    for (int k = 0; k < n_qudits; ++k) {
        if (dim_ > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(local_dim))
            throw ValidationError("QuditRegister: d^N overflows");
        dim_ *= static_cast<std::size_t>(local_dim);
    }
}

std::vector<int> QuditRegister::decode(std::size_t index) const
{
    std::vector<int> digits(static_cast<std::size_t>(n_));
    for (int k = n_ - 1; k >= 0; --k) {
        digits[static_cast<std::size_t>(k)] = static_cast<int>(index % static_cast<std::size_t>(d_));
        index /= static_cast<std::size_t>(d_);
    }
    return digits;
}

std::size_t QuditRegister::encode(std::span<const int> digits) const
{
    if (static_cast<int>(digits.size()) != n_)
        throw ValidationError("QuditRegister::encode: wrong number of digits");
    std::size_t index = 0;
    for (int v : digits) {
        if (v < 0 || v >= d_) throw ValidationError("QuditRegister::encode: digit out of range");
        index = index * static_cast<std::size_t>(d_) + static_cast<std::size_t>(v);
    }
    return index;
}

std::size_t QuditRegister::stride(int q) const
{
    std::size_t s = 1;
    for (int k = q; k < n_; ++k) s *= static_cast<std::size_t>(d_);
    return s;
}

int QuditRegister::digit(std::size_t index, int q) const
{
    return static_cast<int>((index / stride(q)) % static_cast<std::size_t>(d_));
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

PureState::PureState(QuditRegister reg, Eigen::VectorXcd amplitudes)
    : reg_(reg), amps_(std::move(amplitudes))
{
    if (static_cast<std::size_t>(amps_.size()) != reg_.total_dim())
        throw ValidationError("PureState: amplitude count does not match d^N");
    if (std::abs(amps_.squaredNorm() - 1.0) > kAlgebraTol)
        throw ValidationError("PureState: not normalized");
}

PureState PureState::basis(const QuditRegister& reg, std::span<const int> digits)
{
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(reg.total_dim()));
    v(static_cast<Eigen::Index>(reg.encode(digits))) = 1.0;
    return PureState(reg, std::move(v));
}

DensityOperator DensityOperator::from_matrix(QuditRegister reg, Eigen::MatrixXcd m)
{
    const auto dim = static_cast<Eigen::Index>(reg.total_dim());
    if (m.rows() != dim || m.cols() != dim)
        throw ValidationError("DensityOperator: matrix is not d^N x d^N");
    if (hermiticity_defect(m) > kAlgebraTol)
        throw ValidationError("DensityOperator: matrix is not Hermitian");
    if (std::abs(m.trace() - cplx(1.0)) > kAlgebraTol)
        throw ValidationError("DensityOperator: trace is not 1");
    if (hermitian_eigenvalues(m).minCoeff() < -kEigenTol)
        throw ValidationError("DensityOperator: matrix has a negative eigenvalue");
    return DensityOperator(reg, std::move(m));
}

DensityOperator DensityOperator::trusted(QuditRegister reg, Eigen::MatrixXcd m)
{
    return DensityOperator(reg, std::move(m));
}

DensityOperator DensityOperator::from_pure(const PureState& psi)
{
    return DensityOperator(psi.reg(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityOperator DensityOperator::maximally_mixed(const QuditRegister& reg)
{
    const auto dim = static_cast<Eigen::Index>(reg.total_dim());
    return DensityOperator(reg, Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

Operator identity_op(std::size_t dim)
{
    const auto n = static_cast<Eigen::Index>(dim);
    return {Eigen::MatrixXcd::Identity(n, n), true};
}

PureState tensor_product(const PureState& a, const PureState& b)
{
    if (a.reg().local_dim() != b.reg().local_dim())
        throw ValidationError("tensor_product: local dimensions differ");
    QuditRegister reg(a.reg().n_qudits() + b.reg().n_qudits(), a.reg().local_dim());
    Eigen::VectorXcd v = kron(a.amplitudes(), b.amplitudes());
    // renormalize away rounding so the product passes the 1e-12 norm check
    v /= v.norm();
    return PureState(reg, std::move(v));
}

Operator tensor_product(const Operator& a, const Operator& b)
{
    return {kron(a.matrix, b.matrix), a.unitary && b.unitary};
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b)
{
    if (a.reg().local_dim() != b.reg().local_dim())
        throw ValidationError("tensor_product: local dimensions differ");
    QuditRegister reg(a.reg().n_qudits() + b.reg().n_qudits(), a.reg().local_dim());
    return DensityOperator::trusted(reg, kron(a.matrix(), b.matrix()));
}

PureState apply(const Operator& u, const PureState& psi)
{
    if (u.in_dim() != psi.amplitudes().size() || u.out_dim() != u.in_dim())
        throw ValidationError("apply: operator dimension does not match the state");
    if (!u.unitary)
        throw ValidationError("apply: operator is not flagged unitary");
    Eigen::VectorXcd out = u.matrix * psi.amplitudes();
    return PureState(psi.reg(), std::move(out));
}

PureState permute_qudits(const PureState& psi, std::span<const int> order)
{
    const auto map = permutation_map(psi.reg(), order);
    Eigen::VectorXcd out(psi.amplitudes().size());
    for (std::size_t i = 0; i < map.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = psi[map[i]];
    return PureState(psi.reg(), std::move(out));
}

Eigen::MatrixXcd permute_qudits(const Eigen::MatrixXcd& m, const QuditRegister& reg,
                                std::span<const int> order)
{
    const auto map = permutation_map(reg, order);
    const auto dim = static_cast<Eigen::Index>(map.size());
    if (m.rows() != dim || m.cols() != dim)
        throw ValidationError("permute_qudits: matrix is not d^N x d^N");
    Eigen::MatrixXcd out(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i)
            out(i, j) = m(static_cast<Eigen::Index>(map[static_cast<std::size_t>(i)]),
                          static_cast<Eigen::Index>(map[static_cast<std::size_t>(j)]));
    return out;
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep)
{
    const auto& reg = rho.reg();
    const auto order = keep_first_order(reg, keep);
    const int n_keep = static_cast<int>(keep.size());
    QuditRegister kept(n_keep, reg.local_dim());
    const auto k = static_cast<Eigen::Index>(kept.total_dim());
    const auto t = static_cast<Eigen::Index>(reg.total_dim()) / k;

    const Eigen::MatrixXcd p = permute_qudits(rho.matrix(), reg, order);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            out(i, j) = p.block(i * t, j * t, t, t).trace();
    return DensityOperator::trusted(kept, std::move(out));
}

DensityOperator partial_trace(const PureState& psi, std::span<const int> keep)
{
    const auto& reg = psi.reg();
    const auto order = keep_first_order(reg, keep);
    QuditRegister kept(static_cast<int>(keep.size()), reg.local_dim());
    const auto k = static_cast<Eigen::Index>(kept.total_dim());
    const auto t = static_cast<Eigen::Index>(reg.total_dim()) / k;

    const PureState p = permute_qudits(psi, order);
    // row-major reshape: row = kept index, column = traced index
    const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        block(p.amplitudes().data(), k, t);
    Eigen::MatrixXcd out = block * block.adjoint();
    return DensityOperator::trusted(kept, std::move(out));
}

double fidelity(const PureState& a, const PureState& b)
{
    if (a.amplitudes().size() != b.amplitudes().size())
        throw ValidationError("fidelity: dimension mismatch");
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double phase_insensitive_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b)
{
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    Eigen::Index imax = 0;
    a.cwiseAbs().maxCoeff(&imax);
    cplx phase(1.0);
    if (std::abs(b(imax)) > 0.0) {
        const cplx r = a(imax) / b(imax);
        phase = r / std::abs(r);
    }
    return (a - phase * b).cwiseAbs().maxCoeff();
}

Eigen::VectorXcd haar_vector(std::size_t dim, Rng& rng)
{
    if (dim == 0) throw ValidationError("haar_vector: dimension must be positive");
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = cplx(re, im);
    }
    return v / v.norm();
}

PureState random_state(const QuditRegister& reg, Rng& rng)
{
    return PureState(reg, haar_vector(reg.total_dim(), rng));
}

} // namespace gsteer
