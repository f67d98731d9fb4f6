#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gsteer/error.hpp"

namespace gsteer {

using cplx = std::complex<double>;
using Rng = std::mt19937_64;

inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kEigenTol = 1e-10;

/// N qudits of local dimension d. Amplitude index i encodes the digits
/// (v_1, ..., v_N) in base d with qudit 1 the most significant digit.
class QuditRegister {
public:
    QuditRegister(int n_qudits, int local_dim);

    int n_qudits() const { return n_; }
    int local_dim() const { return d_; }
    std::size_t total_dim() const { return dim_; }

    /// Digits of a basis index, qudit 1 first.
    std::vector<int> decode(std::size_t index) const;
    std::size_t encode(std::span<const int> digits) const;

    /// Digit of qudit `q` (1-indexed) in basis index `index`.
    int digit(std::size_t index, int q) const;
    /// Place value d^(N-q) of qudit `q` (1-indexed).
    std::size_t stride(int q) const;

    friend bool operator==(const QuditRegister&, const QuditRegister&) = default;

private:
    int n_;
    int d_;
    std::size_t dim_;
};

// ---- expression-friendly dense helpers --------------------------------------

template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
{
    using Scalar = typename DerivedA::Scalar;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                              a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

template <typename Derived>
double unitarity_defect(const Eigen::MatrixBase<Derived>& u)
{
    using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Plain prod = u.adjoint() * u;
    return (prod - Plain::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m)
{
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Eigenvalues (ascending) of a Hermitian matrix; only the lower triangle is read.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m);

// ---- states and operators ----------------------------------------------------

class PureState {
public:
    /// Throws ValidationError if the size does not match or the norm is off by > 1e-12.
    PureState(QuditRegister reg, Eigen::VectorXcd amplitudes);

    static PureState basis(const QuditRegister& reg, std::span<const int> digits);

    const QuditRegister& reg() const { return reg_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

private:
    QuditRegister reg_;
    Eigen::VectorXcd amps_;
};

class DensityOperator {
public:
    /// Checked construction: Hermitian and unit trace within 1e-12,
    /// eigenvalues >= -1e-10.
    static DensityOperator from_matrix(QuditRegister reg, Eigen::MatrixXcd m);
    static DensityOperator from_pure(const PureState& psi);
    static DensityOperator maximally_mixed(const QuditRegister& reg);

    const QuditRegister& reg() const { return reg_; }
    const Eigen::MatrixXcd& matrix() const { return m_; }
    double trace() const { return m_.trace().real(); }

    /// Skips the spectral check; for operators assembled from convex mixtures
    /// of valid states.
    static DensityOperator trusted(QuditRegister reg, Eigen::MatrixXcd m);

private:
    DensityOperator(QuditRegister reg, Eigen::MatrixXcd m) : reg_(reg), m_(std::move(m)) {}

    QuditRegister reg_;
    Eigen::MatrixXcd m_;
};

struct Operator {
    Eigen::MatrixXcd matrix;
    bool unitary = false;

    Eigen::Index in_dim() const { return matrix.cols(); }
    Eigen::Index out_dim() const { return matrix.rows(); }
};

Operator identity_op(std::size_t dim);

PureState tensor_product(const PureState& a, const PureState& b);
Operator tensor_product(const Operator& a, const Operator& b);
DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);

PureState apply(const Operator& u, const PureState& psi);

/// Reorders qudits: qudit k of the result is qudit order[k-1] of the input
/// (both 1-indexed). `order` must be a permutation of 1..N.
PureState permute_qudits(const PureState& psi, std::span<const int> order);
Eigen::MatrixXcd permute_qudits(const Eigen::MatrixXcd& m, const QuditRegister& reg,
                                std::span<const int> order);

/// Reduced state on the `keep` qudits (1-indexed, any order; result keeps
/// them in ascending order).
DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep);
DensityOperator partial_trace(const PureState& psi, std::span<const int> keep);

/// |<a|b>|^2.
double fidelity(const PureState& a, const PureState& b);

/// max_i |a_i - e^{i theta} b_i| with theta fixed by the largest-magnitude
/// amplitude of `a`.
double phase_insensitive_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

/// Haar-random unit vector (normalized complex Gaussian components).
Eigen::VectorXcd haar_vector(std::size_t dim, Rng& rng);
PureState random_state(const QuditRegister& reg, Rng& rng);

} // namespace gsteer
