#include "gsteer/infotheory.hpp"

#include <algorithm>
#include <limits>

namespace gsteer {

void validate_distribution(const Eigen::Ref<const Eigen::MatrixXd>& p)
{
    if (p.size() == 0) throw ValidationError("probability table is empty");
    if (p.minCoeff() < -kAlgebraTol) throw ValidationError("probability table has a negative entry");
    if (std::abs(p.sum() - 1.0) > kEigenTol) throw ValidationError("probability table does not sum to 1");
}

double conditional_entropy(const Eigen::Ref<const Eigen::MatrixXd>& joint)
{
    validate_distribution(joint);
    double h = 0.0;
    for (Eigen::Index a = 0; a < joint.rows(); ++a) {
        const double pa = joint.row(a).sum();
        if (pa <= 0.0) continue;
        h += pa * shannon_entropy(joint.row(a) / pa);
    }
    return h;
}

double mutual_information(const Eigen::Ref<const Eigen::MatrixXd>& joint)
{
    const Eigen::RowVectorXd pb = joint.colwise().sum();
    return shannon_entropy(pb) - conditional_entropy(joint);
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho)
{
    const Eigen::VectorXd ev = hermitian_eigenvalues(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > kAlgebraTol) s -= ev(i) * std::log2(ev(i));
    return s;
}

double von_neumann_entropy(const DensityOperator& rho)
{
    return von_neumann_entropy(rho.matrix());
}

double holevo(const CqEnsemble& ens)
{
    validate_distribution(ens.priors);
    if (static_cast<Eigen::Index>(ens.conditionals.size()) != ens.priors.size())
        throw ValidationError("holevo: prior and conditional counts differ");
    const auto dim = ens.conditionals.front().rows();
    Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(dim, dim);
    double mixed = 0.0;
    for (std::size_t v = 0; v < ens.conditionals.size(); ++v) {
        const auto& rho = ens.conditionals[v];
        if (rho.rows() != dim || rho.cols() != dim) throw ValidationError("holevo: conditional dimension mismatch");
        const double p = ens.priors(static_cast<Eigen::Index>(v));
        avg += p * rho;
        if (p > 0.0) mixed += p * von_neumann_entropy(rho);
    }
    return von_neumann_entropy(avg) - mixed;
}

Eigen::VectorXd povm_distribution(const Povm& povm, const Eigen::VectorXcd& psi)
{
    if (psi.size() != povm.dim()) throw ValidationError("povm_distribution: state dimension does not match the POVM");
    Eigen::VectorXd p(povm.outcomes());
    for (int t = 0; t < povm.outcomes(); ++t)
        p(t) = std::max(0.0, psi.dot(povm.effects[static_cast<std::size_t>(t)] * psi).real());
    return p;
}

double uncertainty_floor(const Povm& povm1, const Povm& povm2, int n_samples, Rng& rng)
{
    if (povm1.dim() != povm2.dim()) throw ValidationError("uncertainty_floor: POVMs act on different spaces");
    auto entropy_sum = [&](const Eigen::VectorXcd& psi) {
        return shannon_entropy(povm_distribution(povm1, psi)) + shannon_entropy(povm_distribution(povm2, psi));
    };
    double best = std::numeric_limits<double>::infinity();
    for (const Povm* povm : {&povm1, &povm2}) {
        for (const auto& e : povm->effects) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e);
            for (Eigen::Index k = 0; k < e.cols(); ++k) best = std::min(best, entropy_sum(es.eigenvectors().col(k)));
        }
    }
    for (int s = 0; s < n_samples; ++s)
        best = std::min(best, entropy_sum(haar_vector(static_cast<std::size_t>(povm1.dim()), rng)));
    return best;
}

} // namespace gsteer
