#include "gsteer/cloner.hpp"

#include <array>
#include <cmath>
#include <string>

#include "gsteer/graph_state.hpp"

namespace gsteer {

namespace {

int mod(int a, int d)
{
    const int r = a % d;
    return r < 0 ? r + d : r;
}

Eigen::MatrixXd measured_pair(const ClonerOutput& out, int m_a, int m_other, int second)
{
    const int d = out.state.reg().local_dim();
    const std::array<int, 2> keep{1, second};
    const auto rho = partial_trace(out.state, keep);
    const Eigen::MatrixXcd w = kron(schmidt_frame(d, m_a, true), schmidt_frame(d, m_other, false));
    const Eigen::MatrixXcd rotated = w * rho.matrix() * w.adjoint();
    Eigen::MatrixXd table(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) table(a, b) = std::max(0.0, rotated(a * d + b, a * d + b).real());
    return table;
}

} // namespace

GammaDistribution::GammaDistribution(Eigen::MatrixXd gamma) : g_(std::move(gamma))
{
    if (g_.rows() < 2 || g_.rows() != g_.cols()) throw ValidationError("gamma: table must be d x d with d >= 2");
    if (g_.minCoeff() < 0.0) throw ValidationError("gamma: negative entry");
    if (std::abs(g_.sum() - 1.0) > kAlgebraTol) throw ValidationError("gamma: entries do not sum to 1");
}

PureState bell_state(int j, int k, int d)
{
    if (d < 2) throw ValidationError("bell_state: d must be >= 2");
    if (j < 0 || j >= d || k < 0 || k >= d) throw ValidationError("bell_state: index out of range");
    const QuditRegister reg(2, d);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (int x = 0; x < d; ++x) v(x * d + (x + j) % d) = s * root_of_unity(d, static_cast<long long>(x) * k);
    return PureState(reg, std::move(v));
}

ClonerOutput cloner_output(const GammaDistribution& gamma)
{
    const int d = gamma.d();
    const QuditRegister reg(4, d);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(reg.total_dim()));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            const double w = gamma(j, k);
            if (w == 0.0) continue;
            v += std::sqrt(w) * kron(bell_state(j, k, d).amplitudes(), bell_state(j, mod(-k, d), d).amplitudes());
        }
    v /= v.norm();
    return {PureState(reg, std::move(v))};
}

Eigen::VectorXd q_marginals(const GammaDistribution& gamma, int m)
{
    const int d = gamma.d();
    if (m == 1) return gamma.table().rowwise().sum();
    if (m != 2) throw ValidationError("q_marginals: m must be 1 or 2");
    Eigen::VectorXd q(d);
    for (int t = 0; t < d; ++t) q(t) = gamma.table().col(mod(-t, d)).sum();
    return q;
}

double mutual_info_ab(const GammaDistribution& gamma, int m)
{
    return std::log2(static_cast<double>(gamma.d())) - shannon_entropy(q_marginals(gamma, m));
}

double holevo_ac(const GammaDistribution& gamma, int m)
{
    return shannon_entropy(gamma.table()) - shannon_entropy(q_marginals(gamma, m));
}

NoSharingSums no_sharing_sum(const GammaDistribution& gamma)
{
    const double h1 = shannon_entropy(q_marginals(gamma, 1));
    const double h2 = shannon_entropy(q_marginals(gamma, 2));
    NoSharingSums s;
    s.sum_ab = mutual_info_ab(gamma, 1) + mutual_info_ab(gamma, 2);
    s.sum_ac_bound = (h1 + h2 - h1) + (h1 + h2 - h2);
    s.sum_ac_holevo = holevo_ac(gamma, 1) + holevo_ac(gamma, 2);
    s.total = s.sum_ab + s.sum_ac_bound;
    return s;
}

GammaDistribution phase_covariant_gamma(double D, int d)
{
    if (!(D >= 0.0 && D <= 1.0)) throw ValidationError("phase_covariant_gamma: D must lie in [0, 1]");
    if (d < 2) throw ValidationError("phase_covariant_gamma: d must be >= 2");
    Eigen::VectorXd r = Eigen::VectorXd::Constant(d, D / (d - 1));
    r(0) = 1.0 - D;
    Eigen::MatrixXd g = r * r.transpose();
    g /= g.sum();
    return GammaDistribution(std::move(g));
}

GammaDistribution random_gamma(int d, Rng& rng)
{
    if (d < 2) throw ValidationError("random_gamma: d must be >= 2");
    std::exponential_distribution<double> expo(1.0);
    Eigen::MatrixXd g(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) g(j, k) = expo(rng);
    g /= g.sum();
    return GammaDistribution(std::move(g));
}

Eigen::MatrixXcd schmidt_frame(int d, int m, bool dealer)
{
    if (m == 1) return Eigen::MatrixXcd::Identity(d, d);
    if (m != 2) throw ValidationError("schmidt_frame: m must be 1 or 2");
    const Eigen::MatrixXcd f = fourier_op(d).matrix;
    // rows <F x| = (F^dagger)_x for the dealer; rows <conj(F) x| = F^T = F otherwise
    return dealer ? Eigen::MatrixXcd(f.adjoint()) : f;
}

Eigen::MatrixXd measured_joint_ab(const ClonerOutput& out, int m)
{
    return measured_pair(out, m, m, 2);
}

Eigen::MatrixXd measured_joint_ab(const ClonerOutput& out, int m_a, int m_b)
{
    return measured_pair(out, m_a, m_b, 2);
}

Eigen::MatrixXd measured_joint_ac(const ClonerOutput& out, int m)
{
    return measured_pair(out, m, m, 3);
}

CqEnsemble eavesdropper_ensemble(const ClonerOutput& out, int m)
{
    const int d = out.state.reg().local_dim();
    const std::array<int, 3> keep{1, 3, 4};
    const auto rho = partial_trace(out.state, keep);
    const Eigen::MatrixXcd w = kron(schmidt_frame(d, m, true), Eigen::MatrixXcd::Identity(d * d, d * d));
    const Eigen::MatrixXcd rotated = w * rho.matrix() * w.adjoint();

    CqEnsemble ens;
    ens.priors.resize(d);
    const int block = d * d;
    for (int a = 0; a < d; ++a) {
        Eigen::MatrixXcd cond = rotated.block(a * block, a * block, block, block);
        const double p = cond.trace().real();
        ens.priors(a) = p;
        ens.conditionals.push_back(p > 0.0 ? Eigen::MatrixXcd(cond / p) : cond);
    }
    ens.priors /= ens.priors.sum();
    return ens;
}

} // namespace gsteer
