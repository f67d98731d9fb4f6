#include <doctest.h>

#include <cmath>

#include "gsteer/cloner.hpp"
#include "gsteer/steering.hpp"

using namespace gsteer;

namespace {

double log2d(int d)
{
    return std::log2(static_cast<double>(d));
}

Eigen::MatrixXd delta00(int d)
{
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
    g(0, 0) = 1.0;
    return g;
}

// Explicit Bell vector built from the defining sum, for the oracle.
Eigen::VectorXcd bell_oracle(int j, int k, int d)
{
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
    for (int x = 0; x < d; ++x) v(x * d + (x + j) % d) = std::polar(1.0 / std::sqrt(d), 2.0 * M_PI * x * k / d);
    return v;
}

} // namespace

TEST_CASE("Bell states")
{
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Vector4cd phi(s, 0, 0, s), psi(0, s, s, 0);
    CHECK((bell_state(0, 0, 2).amplitudes() - Eigen::VectorXcd(phi)).norm() < 1e-15);
    CHECK((bell_state(1, 0, 2).amplitudes() - Eigen::VectorXcd(psi)).norm() < 1e-15);
    for (int d : {2, 3, 5}) {
        Eigen::MatrixXcd basis(d * d, d * d);
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                basis.col(j * d + k) = bell_state(j, k, d).amplitudes();
                CHECK((basis.col(j * d + k) - bell_oracle(j, k, d)).norm() < 1e-14);
            }
        CHECK((basis.adjoint() * basis - Eigen::MatrixXcd::Identity(d * d, d * d)).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(bell_state(2, 0, 2), ValidationError);
    CHECK_THROWS_AS(bell_state(0, -1, 2), ValidationError);
}

TEST_CASE("gamma validation and sampling")
{
    CHECK_THROWS_AS(GammaDistribution{Eigen::MatrixXd::Constant(2, 2, 0.3)}, ValidationError);
    Eigen::MatrixXd neg = delta00(2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(GammaDistribution{neg}, ValidationError);
    CHECK_THROWS_AS(GammaDistribution{Eigen::MatrixXd::Constant(2, 3, 1.0 / 6.0)}, ValidationError);

    Rng a(1), b(1);
    const auto ga = random_gamma(3, a);
    const auto gb = random_gamma(3, b);
    CHECK(ga.table() == gb.table());
    CHECK(std::abs(ga.table().sum() - 1.0) < 1e-12);
    CHECK(ga.table().minCoeff() > 0.0);

    // Dirichlet(1) cell means are 1/d^2
    Rng r(5);
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(2, 2);
    for (int t = 0; t < 20000; ++t) mean += random_gamma(2, r).table();
    mean /= 20000.0;
    CHECK((mean.array() - 0.25).abs().maxCoeff() < 0.01);
}

TEST_CASE("cloner output")
{
    for (int d = 2; d <= 3; ++d) {
        const auto out = cloner_output(GammaDistribution(delta00(d)));
        const Eigen::VectorXcd expect = kron(bell_state(0, 0, d).amplitudes(), bell_state(0, 0, d).amplitudes());
        CHECK(phase_insensitive_distance(out.state.amplitudes(), expect) < 1e-12);
    }
    Rng rng(8);
    for (int d : {2, 3, 5}) {
        for (int t = 0; t < 10; ++t) {
            const auto gamma = random_gamma(d, rng);
            const auto out = cloner_output(gamma);
            CHECK(std::abs(out.state.amplitudes().norm() - 1.0) < 1e-12);
            Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(d * d, d * d);
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    const auto v = bell_oracle(j, k, d);
                    mix += gamma(j, k) * v * v.adjoint();
                }
            const auto ab = partial_trace(out.state, std::vector<int>{1, 2});
            CHECK((ab.matrix() - mix).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("q marginals")
{
    for (int d = 2; d <= 4; ++d) {
        const GammaDistribution g(delta00(d));
        for (int m = 1; m <= 2; ++m) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
            e(0) = 1.0;
            CHECK((q_marginals(g, m) - e).norm() < 1e-15);
        }
    }
    Rng rng(3);
    for (int d = 2; d <= 5; ++d) {
        const auto r = random_gamma(d, rng).table().rowwise().sum().eval();
        const auto s = random_gamma(d, rng).table().colwise().sum().transpose().eval();
        const GammaDistribution g(r * s.transpose());
        CHECK((q_marginals(g, 1) - r).cwiseAbs().maxCoeff() < 1e-12);
        const auto q2 = q_marginals(g, 2);
        for (int t = 0; t < d; ++t) CHECK(std::abs(q2(t) - s((d - t) % d)) < 1e-12);
        for (int t = 0; t < 20; ++t) {
            const auto rg = random_gamma(d, rng);
            CHECK(std::abs(q_marginals(rg, 1).sum() - 1.0) < 1e-12);
            CHECK(std::abs(q_marginals(rg, 2).sum() - 1.0) < 1e-12);
        }
        CHECK_THROWS_AS(q_marginals(g, 3), ValidationError);
    }
}

TEST_CASE("formula mutual information and Holevo against the explicit state")
{
    for (int d = 2; d <= 3; ++d) {
        CHECK(std::abs(mutual_info_ab(GammaDistribution(delta00(d)), 1) - log2d(d)) < 1e-12);
        CHECK(std::abs(mutual_info_ab(GammaDistribution(Eigen::MatrixXd::Constant(d, d, 1.0 / (d * d))), 2)) < 1e-12);
    }
    Rng rng(19);
    for (int d : {2, 3, 5}) {
        const int samples = d == 5 ? 30 : 100;
        for (int t = 0; t < samples; ++t) {
            const auto gamma = random_gamma(d, rng);
            const auto out = cloner_output(gamma);
            for (int m = 1; m <= 2; ++m) {
                const double i_ab = mutual_information(measured_joint_ab(out, m));
                CHECK(std::abs(i_ab - mutual_info_ab(gamma, m)) < 1e-9);
                const double chi = holevo(eavesdropper_ensemble(out, m));
                CHECK(std::abs(chi - holevo_ac(gamma, m)) < 1e-9);
                // C's measured information never beats the Holevo bound
                CHECK(mutual_information(measured_joint_ac(out, m)) <= chi + 1e-9);
            }
        }
    }
}

TEST_CASE("q marginals are the measured distribution of b - a")
{
    // entropies cannot tell cyclic index conventions apart, the vectors can
    Rng rng(41);
    for (int d : {2, 3, 5}) {
        double worst = 0.0, worst_shifted = 0.0;
        for (int t = 0; t < 20; ++t) {
            const auto gamma = random_gamma(d, rng);
            const auto out = cloner_output(gamma);
            for (int m = 1; m <= 2; ++m) {
                const auto joint = measured_joint_ab(out, m);
                Eigen::VectorXd diff = Eigen::VectorXd::Zero(d);
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b) diff((b - a + d) % d) += joint(a, b);
                worst = std::max(worst, (diff - q_marginals(gamma, m)).cwiseAbs().maxCoeff());
                if (m == 2) {
                    Eigen::VectorXd shifted(d);
                    for (int s = 0; s < d; ++s) shifted(s) = gamma.table().col((d - s + 1) % d).sum();
                    worst_shifted = std::max(worst_shifted, (diff - shifted).cwiseAbs().maxCoeff());
                }
            }
        }
        CHECK(worst < 1e-12);
        CHECK(worst_shifted > 1e-3);
    }
}

TEST_CASE("no-sharing sums")
{
    for (int d = 2; d <= 3; ++d) {
        const auto s = no_sharing_sum(GammaDistribution(delta00(d)));
        CHECK(std::abs(s.sum_ab - 2.0 * log2d(d)) < 1e-12);
        CHECK(std::abs(s.sum_ac_bound) < 1e-12);
        CHECK(std::abs(s.total - 2.0 * log2d(d)) < 1e-12);
    }
    const auto u = no_sharing_sum(GammaDistribution(Eigen::MatrixXd::Constant(2, 2, 0.25)));
    CHECK(std::abs(u.sum_ab) < 1e-12);
    CHECK(std::abs(u.sum_ac_bound - 2.0) < 1e-12);
    CHECK(std::abs(u.total - 2.0) < 1e-12);

    Rng rng(42);
    for (int d : {2, 3, 5}) {
        const double bound = 2.0 * log2d(d);
        int violations = 0;
        for (int t = 0; t < 1000; ++t) {
            const auto gamma = random_gamma(d, rng);
            const auto s = no_sharing_sum(gamma);
            if (s.total > bound + 1e-9) ++violations;
            if (s.sum_ab + s.sum_ac_holevo > bound + 1e-9) ++violations;
            CHECK(s.sum_ac_holevo <= s.sum_ac_bound + 1e-12);
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("phase-covariant family")
{
    for (int d = 2; d <= 4; ++d) {
        CHECK((phase_covariant_gamma(0.0, d).table() - delta00(d)).cwiseAbs().maxCoeff() < 1e-15);
        double prev_ab = 1e9, prev_ac = -1e9;
        const double top = static_cast<double>(d - 1) / d;
        for (int k = 0; k <= 20; ++k) {
            const double D = top * k / 20.0;
            const auto g = phase_covariant_gamma(D, d);
            const double h = disturbance_entropy(D, d);
            CHECK(std::abs(shannon_entropy(q_marginals(g, 1)) - h) < 1e-12);
            CHECK(std::abs(shannon_entropy(q_marginals(g, 2)) - h) < 1e-12);
            CHECK(std::abs(shannon_entropy(g.table()) - 2.0 * h) < 1e-12);
            const auto s = no_sharing_sum(g);
            CHECK(s.sum_ab < prev_ab);
            CHECK(s.sum_ac_bound > prev_ac);
            prev_ab = s.sum_ab;
            prev_ac = s.sum_ac_bound;
        }
    }
    CHECK_THROWS_AS(phase_covariant_gamma(-0.1, 2), ValidationError);
    CHECK_THROWS_AS(phase_covariant_gamma(1.1, 2), ValidationError);
}

TEST_CASE("Devetak-Winter rate of the phase-covariant attack")
{
    for (int d = 2; d <= 3; ++d)
        for (int k = 0; k <= 6; ++k) {
            const double D = 0.05 * k;
            const auto out = cloner_output(phase_covariant_gamma(D, d));
            for (int m = 1; m <= 2; ++m) {
                const double rate = mutual_information(measured_joint_ab(out, m)) - holevo(eavesdropper_ensemble(out, m));
                CHECK(std::abs(rate - (log2d(d) - 2.0 * disturbance_entropy(D, d))) < 1e-9);
            }
        }
}

TEST_CASE("rate vanishes at the critical disturbance")
{
    for (int d = 2; d <= 3; ++d) {
        const double dc = critical_disturbance(d);
        const auto out = cloner_output(phase_covariant_gamma(dc, d));
        const double rate = mutual_information(measured_joint_ab(out, 1)) - holevo(eavesdropper_ensemble(out, 1));
        CHECK(std::abs(rate) < 1e-8);
    }
}

TEST_CASE("measurement frames")
{
    for (int d = 2; d <= 4; ++d)
        for (int m = 1; m <= 2; ++m)
            for (bool dealer : {true, false}) CHECK(unitarity_defect(schmidt_frame(d, m, dealer)) < 1e-12);
    // |Psi_00> gives matched outcomes in both bases
    for (int d = 2; d <= 4; ++d) {
        const auto out = cloner_output(GammaDistribution(delta00(d)));
        for (int m = 1; m <= 2; ++m)
            CHECK((measured_joint_ab(out, m) - Eigen::MatrixXd::Identity(d, d) / d).cwiseAbs().maxCoeff() < 1e-12);
        // mismatched bases are uncorrelated
        CHECK((measured_joint_ab(out, 1, 2).array() - 1.0 / (d * d)).abs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(schmidt_frame(2, 0, true), ValidationError);
}
