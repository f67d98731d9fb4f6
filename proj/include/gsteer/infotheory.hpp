#pragma once

#include <cmath>
#include <vector>

#include "gsteer/qudit.hpp"
#include "gsteer/schmidt.hpp"

namespace gsteer {

// All entropies are in bits.

/// Throws ValidationError unless entries are >= -1e-12 and sum to 1 within 1e-10.
void validate_distribution(const Eigen::Ref<const Eigen::MatrixXd>& p);

/// -sum p log2 p with 0 log 0 = 0. Works on any dense table (1-D or 2-D).
template <typename Derived>
double shannon_entropy(const Eigen::DenseBase<Derived>& p)
{
    double h = 0.0;
    for (Eigen::Index j = 0; j < p.cols(); ++j)
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
            const double x = p(i, j);
            if (x > 0.0) h -= x * std::log2(x);
        }
    return h;
}

/// H(B) - H(B|A) for a joint table P(a, b) with rows indexed by a.
double mutual_information(const Eigen::Ref<const Eigen::MatrixXd>& joint);

/// H(B|A) for a joint table P(a, b).
double conditional_entropy(const Eigen::Ref<const Eigen::MatrixXd>& joint);

/// -sum lambda log2 lambda over eigenvalues above 1e-12.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);
double von_neumann_entropy(const DensityOperator& rho);

/// Classical-quantum ensemble {P(v), rho_v}.
struct CqEnsemble {
    Eigen::VectorXd priors;
    std::vector<Eigen::MatrixXcd> conditionals;
};

/// S(sum_v P(v) rho_v) - sum_v P(v) S(rho_v).
double holevo(const CqEnsemble& ens);

/// Outcome distribution of a POVM on a pure state.
Eigen::VectorXd povm_distribution(const Povm& povm, const Eigen::VectorXcd& psi);

/// Smallest H_1 + H_2 observed over `n_samples` Haar-random pure states. The
/// eigenvectors of every effect of both POVMs are evaluated as well, so
/// minima attained on basis states are found exactly.
double uncertainty_floor(const Povm& povm1, const Povm& povm2, int n_samples, Rng& rng);

} // namespace gsteer
