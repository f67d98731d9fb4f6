#include <doctest.h>

#include <cmath>
#include <numeric>

#include "gsteer/graph_state.hpp"
#include "gsteer/qudit.hpp"

using namespace gsteer;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

DensityOperator random_density(const QuditRegister& reg, Rng& rng)
{
    // mixture of three random pure states
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(reg.total_dim()),
                                                static_cast<Eigen::Index>(reg.total_dim()));
    const double w[3] = {0.5, 0.3, 0.2};
    for (double x : w) {
        const auto v = haar_vector(reg.total_dim(), rng);
        m += x * v * v.adjoint();
    }
    return DensityOperator::from_matrix(reg, m);
}

// Independent reduced-state oracle: explicit sums over basis indices.
Eigen::MatrixXcd trace_out_last(const Eigen::MatrixXcd& rho, Eigen::Index keep_dim, Eigen::Index drop_dim)
{
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(keep_dim, keep_dim);
    for (Eigen::Index i = 0; i < keep_dim; ++i)
        for (Eigen::Index j = 0; j < keep_dim; ++j)
            for (Eigen::Index k = 0; k < drop_dim; ++k) out(i, j) += rho(i * drop_dim + k, j * drop_dim + k);
    return out;
}

} // namespace

TEST_CASE("register index convention round-trips exhaustively")
{
    for (int d = 2; d <= 3; ++d)
        for (int n = 1; n <= 4; ++n) {
            const QuditRegister reg(n, d);
            CHECK(reg.total_dim() == static_cast<std::size_t>(std::pow(d, n)));
            for (std::size_t i = 0; i < reg.total_dim(); ++i) {
                const auto digits = reg.decode(i);
                CHECK(reg.encode(digits) == i);
                std::size_t manual = 0;
                for (int k = 0; k < n; ++k) manual = manual * static_cast<std::size_t>(d) + static_cast<std::size_t>(digits[static_cast<std::size_t>(k)]);
                CHECK(manual == i);
                for (int q = 1; q <= n; ++q) CHECK(reg.digit(i, q) == digits[static_cast<std::size_t>(q - 1)]);
            }
        }
}

TEST_CASE("register rejects bad shapes")
{
    CHECK_THROWS_AS(QuditRegister(0, 2), ValidationError);
    CHECK_THROWS_AS(QuditRegister(2, 1), ValidationError);
    const QuditRegister reg(2, 3);
    CHECK_THROWS_AS(reg.encode(std::vector<int>{0, 3}), ValidationError);
}

TEST_CASE("pure state normalization is enforced")
{
    const QuditRegister reg(1, 2);
    CHECK_THROWS_AS(PureState(reg, Eigen::Vector2cd(1.0, 1.0)), ValidationError);
    CHECK_THROWS_AS(PureState(reg, Eigen::Vector3cd(1.0, 0.0, 0.0)), ValidationError);
    CHECK_NOTHROW(PureState(reg, Eigen::Vector2cd(kInvSqrt2, kInvSqrt2)));
}

TEST_CASE("tensor product of basis states")
{
    const QuditRegister one(1, 2);
    const auto zero = PureState::basis(one, std::vector<int>{0});
    const auto p = tensor_product(zero, zero);
    CHECK(std::abs(p[0] - cplx(1.0)) < 1e-15);
    for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(p[i]) < 1e-15);

    const auto id = tensor_product(identity_op(2), identity_op(2));
    CHECK((id.matrix - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-15);
}

TEST_CASE("F|0> tensor |1> has weight at indices 1 and 3")
{
    const QuditRegister one(1, 2);
    const auto plus = apply(fourier_op(2), PureState::basis(one, std::vector<int>{0}));
    const auto s = tensor_product(plus, PureState::basis(one, std::vector<int>{1}));
    CHECK(std::abs(s[1] - cplx(kInvSqrt2)) < 1e-15);
    CHECK(std::abs(s[3] - cplx(kInvSqrt2)) < 1e-15);
    CHECK(std::abs(s[0]) < 1e-15);
    CHECK(std::abs(s[2]) < 1e-15);
}

TEST_CASE("tensor product rejects mismatched local dimension")
{
    const auto a = PureState::basis(QuditRegister(1, 2), std::vector<int>{0});
    const auto b = PureState::basis(QuditRegister(1, 3), std::vector<int>{0});
    CHECK_THROWS_AS(tensor_product(a, b), ValidationError);
}

TEST_CASE("apply: Fourier, Z and identity")
{
    for (int d = 2; d <= 5; ++d) {
        const QuditRegister reg(1, d);
        const auto out = apply(fourier_op(d), PureState::basis(reg, std::vector<int>{0}));
        for (int v = 0; v < d; ++v) CHECK(std::abs(out[static_cast<std::size_t>(v)] - cplx(1.0 / std::sqrt(d))) < 1e-14);
    }
    const QuditRegister r3(1, 3);
    const auto z1 = apply(z_op(3), PureState::basis(r3, std::vector<int>{1}));
    const cplx omega = std::polar(1.0, 2.0 * M_PI / 3.0);
    CHECK(std::abs(z1[1] - omega) < 1e-14);

    Rng rng(3);
    const auto psi = random_state(QuditRegister(2, 3), rng);
    const auto same = apply(identity_op(9), psi);
    CHECK((same.amplitudes() - psi.amplitudes()).norm() < 1e-15);
}

TEST_CASE("apply refuses non-unitary operators and wrong sizes")
{
    Rng rng(1);
    const auto psi = random_state(QuditRegister(1, 2), rng);
    Operator scale{Eigen::MatrixXcd::Identity(2, 2) * 2.0, false};
    CHECK_THROWS_AS(apply(scale, psi), ValidationError);
    CHECK_THROWS_AS(apply(identity_op(3), psi), ValidationError);
}

TEST_CASE("apply preserves the norm on random unitaries")
{
    Rng rng(21);
    for (int s = 0; s < 20; ++s) {
        Eigen::MatrixXcd g(8, 8);
        for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = haar_vector(1, rng)(0) * static_cast<double>(s + 1);
        const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
        const auto psi = random_state(QuditRegister(3, 2), rng);
        CHECK(std::abs(apply(Operator{q, true}, psi).amplitudes().norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("partial trace of a Bell pair is I/2")
{
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(0) = v(3) = kInvSqrt2;
    const PureState bell(QuditRegister(2, 2), v);
    for (int keep : {1, 2}) {
        const auto r = partial_trace(bell, std::vector<int>{keep});
        CHECK((r.matrix() - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("partial trace of a product state recovers the factor")
{
    Rng rng(8);
    const QuditRegister ra(1, 3), rb(2, 3);
    const auto a = random_density(ra, rng);
    const auto b = random_density(rb, rng);
    const auto ab = tensor_product(a, b);
    CHECK((partial_trace(ab, std::vector<int>{1}).matrix() - a.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((partial_trace(ab, std::vector<int>{2, 3}).matrix() - b.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace matches an explicit index-sum oracle")
{
    Rng rng(13);
    for (int d = 2; d <= 3; ++d) {
        const QuditRegister reg(3, d);
        const auto rho = random_density(reg, rng);
        const auto got = partial_trace(rho, std::vector<int>{1, 2});
        CHECK((got.matrix() - trace_out_last(rho.matrix(), d * d, d)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("partial trace composes and preserves trace")
{
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const QuditRegister reg(4, 2);
        const auto rho = random_density(reg, rng);
        // drop qudits 2 and 4 in two steps versus one
        const auto step1 = partial_trace(rho, std::vector<int>{1, 3, 4});  // qudits (1, 3, 4)
        const auto step2 = partial_trace(step1, std::vector<int>{1, 2});   // keeps old 1, 3
        const auto direct = partial_trace(rho, std::vector<int>{1, 3});
        CHECK((step2.matrix() - direct.matrix()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(direct.trace() - 1.0) < 1e-12);
    }
}

TEST_CASE("partial trace errors")
{
    const auto rho = DensityOperator::maximally_mixed(QuditRegister(2, 2));
    CHECK_THROWS_AS(partial_trace(rho, std::vector<int>{}), ValidationError);
    CHECK_THROWS_AS(partial_trace(rho, std::vector<int>{3}), ValidationError);
    CHECK_THROWS_AS(partial_trace(rho, std::vector<int>{0}), ValidationError);
}

TEST_CASE("density operator validation")
{
    const QuditRegister reg(1, 2);
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(DensityOperator::from_matrix(reg, bad), ValidationError);  // trace 2
    Eigen::MatrixXcd neg(2, 2);
    neg << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(DensityOperator::from_matrix(reg, neg), ValidationError);
    Eigen::MatrixXcd nonh(2, 2);
    nonh << 0.5, 0.1, 0.0, 0.5;
    CHECK_THROWS_AS(DensityOperator::from_matrix(reg, nonh), ValidationError);
}

TEST_CASE("random states: normalized, seeded, distinct")
{
    Rng a(99), b(99), c(100);
    const QuditRegister reg(2, 3);
    const auto x = random_state(reg, a);
    const auto y = random_state(reg, b);
    const auto z = random_state(reg, c);
    CHECK(std::abs(x.amplitudes().norm() - 1.0) < 1e-12);
    CHECK(x.amplitudes() == y.amplitudes());
    CHECK(fidelity(x, z) < 1.0 - 1e-6);
    Rng r(1);
    CHECK_THROWS_AS(haar_vector(0, r), ValidationError);
}

TEST_CASE("qudit permutation moves digits")
{
    const QuditRegister reg(3, 3);
    const auto psi = PureState::basis(reg, std::vector<int>{0, 1, 2});
    const auto moved = permute_qudits(psi, std::vector<int>{3, 1, 2});
    CHECK(std::abs(moved[reg.encode(std::vector<int>{2, 0, 1})] - cplx(1.0)) < 1e-15);
    CHECK_THROWS_AS(permute_qudits(psi, std::vector<int>{1, 1, 2}), ValidationError);
}

TEST_CASE("phase-insensitive distance ignores a global phase only")
{
    Rng rng(6);
    const auto v = haar_vector(5, rng);
    const cplx phase = std::polar(1.0, 0.7);
    CHECK(phase_insensitive_distance(v, phase * v) < 1e-14);
    Eigen::VectorXcd w = v;
    w(0) *= -1.0;
    CHECK(phase_insensitive_distance(v, w) > 1e-3);
}
