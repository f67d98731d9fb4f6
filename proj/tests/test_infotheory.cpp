#include <doctest.h>

#include <cmath>

#include "gsteer/cloner.hpp"
#include "gsteer/graph_state.hpp"
#include "gsteer/infotheory.hpp"
#include "gsteer/steering.hpp"

using namespace gsteer;

namespace {

Eigen::MatrixXd random_table(Eigen::Index r, Eigen::Index c, Rng& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::MatrixXd p(r, c);
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = u(rng);
    return p / p.sum();
}

Povm basis_povm(const Eigen::MatrixXcd& u)
{
    Povm p;
    for (Eigen::Index k = 0; k < u.cols(); ++k) p.effects.push_back(u.col(k) * u.col(k).adjoint());
    return p;
}

// H(B) - H(B|A) from explicit conditional distributions.
double mi_oracle(const Eigen::MatrixXd& joint)
{
    double h_b = 0.0, h_b_given_a = 0.0;
    const Eigen::VectorXd pb = joint.colwise().sum();
    for (Eigen::Index b = 0; b < pb.size(); ++b)
        if (pb(b) > 0) h_b -= pb(b) * std::log2(pb(b));
    for (Eigen::Index a = 0; a < joint.rows(); ++a) {
        const double pa = joint.row(a).sum();
        if (pa <= 0) continue;
        for (Eigen::Index b = 0; b < joint.cols(); ++b) {
            const double c = joint(a, b) / pa;
            if (c > 0) h_b_given_a -= pa * c * std::log2(c);
        }
    }
    return h_b - h_b_given_a;
}

} // namespace

TEST_CASE("Shannon entropy")
{
    for (int d = 2; d <= 6; ++d) CHECK(std::abs(shannon_entropy(Eigen::VectorXd::Constant(d, 1.0 / d)) - std::log2(d)) < 1e-12);
    Eigen::Vector3d det(0.0, 1.0, 0.0);
    CHECK(shannon_entropy(det) == 0.0);
    Eigen::Vector2d dc(0.89, 0.11);
    CHECK(std::abs(shannon_entropy(dc) - 0.49998) < 1e-4);
}

TEST_CASE("Shannon entropy is concave")
{
    Rng rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const Eigen::MatrixXd p = random_table(5, 1, rng);
        const Eigen::MatrixXd q = random_table(5, 1, rng);
        const double l = u(rng);
        const Eigen::MatrixXd mix = l * p + (1.0 - l) * q;
        CHECK(shannon_entropy(mix) >= l * shannon_entropy(p) + (1.0 - l) * shannon_entropy(q) - 1e-12);
    }
}

TEST_CASE("distribution validation")
{
    Eigen::Vector2d bad(0.6, 0.6);
    CHECK_THROWS_AS(validate_distribution(bad), ValidationError);
    Eigen::Vector2d neg(1.2, -0.2);
    CHECK_THROWS_AS(validate_distribution(neg), ValidationError);
    CHECK_THROWS_AS(mutual_information(Eigen::MatrixXd::Constant(2, 2, 0.3)), ValidationError);
}

TEST_CASE("mutual information examples")
{
    Eigen::Vector3d pa(0.2, 0.3, 0.5);
    Eigen::Vector2d pb(0.4, 0.6);
    CHECK(std::abs(mutual_information(pa * pb.transpose())) < 1e-12);
    for (int d = 2; d <= 5; ++d)
        CHECK(std::abs(mutual_information(Eigen::MatrixXd::Identity(d, d) / d) - std::log2(d)) < 1e-12);

    // white noise at the d = 2 threshold: half a bit per setting
    const double p = 0.22;
    Eigen::MatrixXd noisy = (1.0 - p) * Eigen::MatrixXd::Identity(2, 2) / 2.0 + Eigen::MatrixXd::Constant(2, 2, p / 4.0);
    CHECK(std::abs(mutual_information(noisy) - 0.5) < 5e-4);
}

TEST_CASE("mutual information: bounds, symmetry, oracle")
{
    Rng rng(23);
    for (int t = 0; t < 300; ++t) {
        const Eigen::Index r = 2 + t % 3, c = 2 + (t / 3) % 4;
        const Eigen::MatrixXd p = random_table(r, c, rng);
        const double i = mutual_information(p);
        CHECK(i >= -1e-12);
        CHECK(i <= std::min(std::log2(static_cast<double>(r)), std::log2(static_cast<double>(c))) + 1e-12);
        CHECK(std::abs(i - mutual_information(p.transpose())) < 1e-12);
        CHECK(std::abs(i - mi_oracle(p)) < 1e-12);
        CHECK(std::abs(conditional_entropy(p) - (shannon_entropy(p) - shannon_entropy(p.rowwise().sum()))) < 1e-12);
    }
}

TEST_CASE("von Neumann entropy")
{
    Rng rng(2);
    const auto psi = haar_vector(6, rng);
    CHECK(std::abs(von_neumann_entropy(Eigen::MatrixXcd(psi * psi.adjoint()))) < 1e-10);
    for (int d = 2; d <= 5; ++d)
        CHECK(std::abs(von_neumann_entropy(DensityOperator::maximally_mixed(QuditRegister(1, d))) - std::log2(d)) < 1e-12);

    // C C' marginal of a product-form cloner: spectrum is gamma itself
    for (int d = 2; d <= 3; ++d)
        for (double D : {0.05, 0.15, 0.3}) {
            const auto gamma = phase_covariant_gamma(D, d);
            const auto cc = partial_trace(cloner_output(gamma).state, std::vector<int>{3, 4});
            CHECK(std::abs(von_neumann_entropy(cc) - 2.0 * disturbance_entropy(D, d)) < 1e-9);
        }
}

TEST_CASE("Holevo quantity")
{
    Rng rng(9);
    const auto v = haar_vector(3, rng);
    const Eigen::MatrixXcd rho = v * v.adjoint();
    CqEnsemble same{Eigen::Vector3d(0.2, 0.3, 0.5), {rho, rho, rho}};
    CHECK(std::abs(holevo(same)) < 1e-10);

    CqEnsemble ortho;
    ortho.priors = Eigen::Vector3d(0.5, 0.25, 0.25);
    for (int k = 0; k < 3; ++k) {
        Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(3, 3);
        e(k, k) = 1.0;
        ortho.conditionals.push_back(e);
    }
    CHECK(std::abs(holevo(ortho) - 1.5) < 1e-12);

    // chi <= S(average) on random mixed ensembles
    for (int t = 0; t < 50; ++t) {
        CqEnsemble ens;
        ens.priors = random_table(3, 1, rng);
        Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(4, 4);
        for (int k = 0; k < 3; ++k) {
            const auto a = haar_vector(4, rng), b = haar_vector(4, rng);
            Eigen::MatrixXcd r = 0.7 * a * a.adjoint() + 0.3 * b * b.adjoint();
            avg += ens.priors(k) * r;
            ens.conditionals.push_back(r);
        }
        const double chi = holevo(ens);
        CHECK(chi >= -1e-12);
        CHECK(chi <= von_neumann_entropy(avg) + 1e-12);
    }

    CqEnsemble mismatch{Eigen::Vector2d(0.5, 0.5), {Eigen::MatrixXcd::Identity(2, 2) / 2.0, Eigen::MatrixXcd::Identity(3, 3) / 3.0}};
    CHECK_THROWS_AS(holevo(mismatch), ValidationError);
}

TEST_CASE("phase-covariant cloner ensemble saturates chi = H(D)")
{
    for (int d = 2; d <= 3; ++d)
        for (double D : {0.0, 0.1, 0.2, 0.3}) {
            const auto out = cloner_output(phase_covariant_gamma(D, d));
            for (int m = 1; m <= 2; ++m)
                CHECK(std::abs(holevo(eavesdropper_ensemble(out, m)) - disturbance_entropy(D, d)) < 1e-9);
        }
}

TEST_CASE("uncertainty floor: mutually unbiased single-qudit bases")
{
    Rng rng(3);
    for (int d = 2; d <= 3; ++d) {
        const auto comp = basis_povm(Eigen::MatrixXcd::Identity(d, d));
        const auto four = basis_povm(fourier_op(d).matrix);
        const double floor = uncertainty_floor(comp, four, 2000, rng);
        CHECK(floor >= std::log2(d) - 1e-7);
        CHECK(floor <= std::log2(d) + 1e-7);  // attained at basis states
        CHECK(uncertainty_floor(comp, comp, 50, rng) < 1e-12);
    }
}

TEST_CASE("uncertainty floor: star(3) B-side POVMs")
{
    Rng rng(4);
    const auto setup = prepare_steering(make_star(3), 2, Bipartition(3, {1}));
    CHECK(uncertainty_floor(setup.povm_b[0], setup.povm_b[1], 2000, rng) >= 1.0 - 1e-7);
}

TEST_CASE("povm_distribution")
{
    const auto four = basis_povm(fourier_op(3).matrix);
    Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(3);
    zero(0) = 1.0;
    const auto p = povm_distribution(four, zero);
    CHECK((p.array() - 1.0 / 3.0).abs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(povm_distribution(four, Eigen::VectorXcd::Ones(2) / std::sqrt(2.0)), ValidationError);
}
