#pragma once

#include "gsteer/infotheory.hpp"
#include "gsteer/qudit.hpp"

namespace gsteer {

/// d x d table gamma_jk of non-negative weights summing to 1.
class GammaDistribution {
public:
    explicit GammaDistribution(Eigen::MatrixXd gamma);

    int d() const { return static_cast<int>(g_.rows()); }
    const Eigen::MatrixXd& table() const { return g_; }
    double operator()(int j, int k) const { return g_(j, k); }

private:
    Eigen::MatrixXd g_;
};

/// |Psi_jk> = d^{-1/2} sum_v omega^{v k} |v>|v + j mod d>.
PureState bell_state(int j, int k, int d);

/// Cloner output on four d-level registers ordered (A, B, C, C').
struct ClonerOutput {
    PureState state;
};

/// sum_jk sqrt(gamma_jk) |Psi_jk>_AB |Psi_{j, -k mod d}>_CC'.
ClonerOutput cloner_output(const GammaDistribution& gamma);

/// q_1^t = sum_k gamma_tk, q_2^t = sum_j gamma_{j, -t mod d}: the probability
/// that the B outcome exceeds the A outcome by t (mod d) in basis m.
Eigen::VectorXd q_marginals(const GammaDistribution& gamma, int m);

/// log2 d + sum_t q_m^t log2 q_m^t.
double mutual_info_ab(const GammaDistribution& gamma, int m);

/// Holevo quantity of the eavesdropper ensemble from the closed form
/// H(gamma) - H(q_m).
double holevo_ac(const GammaDistribution& gamma, int m);

struct NoSharingSums {
    double sum_ab = 0.0;        // sum_m I(A_m : B_m)
    double sum_ac_bound = 0.0;  // sum_m [H(q_1) + H(q_2) - H(q_m)] = H(q_1) + H(q_2)
    double sum_ac_holevo = 0.0; // sum_m chi_m, the tighter link of the same chain
    double total = 0.0;         // sum_ab + sum_ac_bound
};

NoSharingSums no_sharing_sum(const GammaDistribution& gamma);

/// Product table r (x) r with r = (1 - D, D/(d-1), ..., D/(d-1)).
GammaDistribution phase_covariant_gamma(double D, int d);

/// Symmetric Dirichlet(1) sample over the d^2 cells.
GammaDistribution random_gamma(int d, Rng& rng);

// ---- direct computation on the explicit four-register state ----------------

/// Measurement frame for a register in Schmidt basis m: rows are the bra
/// vectors of the basis. m = 1 is computational; m = 2 uses F|x> for A and
/// conj(F)|x> for the receivers, so matched outcomes are equal on |Psi_00>.
Eigen::MatrixXcd schmidt_frame(int d, int m, bool dealer);

/// P(a, b) from measuring registers A and B of the output in basis m.
Eigen::MatrixXd measured_joint_ab(const ClonerOutput& out, int m);
/// Mixed settings: A in basis m_a, B in basis m_b.
Eigen::MatrixXd measured_joint_ab(const ClonerOutput& out, int m_a, int m_b);
/// P(a, c) from measuring registers A and C in basis m.
Eigen::MatrixXd measured_joint_ac(const ClonerOutput& out, int m);

/// {P(v_A), rho_{CC'|v_A}} for A measured in basis m.
CqEnsemble eavesdropper_ensemble(const ClonerOutput& out, int m);

} // namespace gsteer
