#pragma once

#include <vector>

#include "gsteer/graph.hpp"
#include "gsteer/graph_state.hpp"
#include "gsteer/qudit.hpp"

namespace gsteer {

/// Schmidt decomposition of a pure state across a bipartition. Qudits are
/// reordered A-side first (each side ascending) before reshaping, so column v
/// of `a_vectors` lives on the A-side qudits in ascending order and likewise
/// for `b_vectors`.
struct SchmidtForm {
    Eigen::VectorXd coefficients;  // descending
    Eigen::MatrixXcd a_vectors;    // columns
    Eigen::MatrixXcd b_vectors;    // columns
    int rank = 0;                  // coefficients above 1e-8

    /// sum_v lambda_v a_v (x) b_v, in the A-first qudit order.
    Eigen::VectorXcd reconstruct() const;
};

SchmidtForm schmidt_decompose(const PureState& psi, const Bipartition& part);

enum class LocalBasis { computational, fourier };

enum class Side { a, b };

/// One of the two local measurement settings for a bipartition: every qudit
/// is measured in its local basis and each side reports a linear form of its
/// outcomes over Z_d. On the ideal graph state f_A(a) = f_B(b) + offset (mod d).
struct MeasurementSetting {
    int m = 1;
    int d = 2;
    std::vector<LocalBasis> local_bases;  // indexed by vertex, [0] unused
    std::vector<int> side_a;              // vertices, ascending
    std::vector<int> side_b;
    std::vector<int> fa_coeffs;           // aligned with side_a
    std::vector<int> fb_coeffs;           // aligned with side_b
    int offset = 0;
    /// Exponent of each generator K_v in the stabilizer element the forms came
    /// from, indexed by vertex ([0] unused; zero for unused generators).
    std::vector<int> multiplicities;

    LocalBasis basis(int vertex) const { return local_bases[static_cast<std::size_t>(vertex)]; }
    const std::vector<int>& vertices(Side s) const { return s == Side::a ? side_a : side_b; }
    const std::vector<int>& coeffs(Side s) const { return s == Side::a ? fa_coeffs : fb_coeffs; }

    /// Coarse-grained outcome of side `s` for local outcomes listed in the
    /// side's vertex order; includes the offset on side B.
    int outcome(Side s, std::span<const int> local_outcomes) const;
};

/// Derives setting m (1 or 2). For m = 1 color-0 vertices are measured in the
/// computational basis and color-1 vertices in the Fourier basis; m = 2 swaps.
/// The forms come from the stabilizer element generated by the Fourier-measured
/// class whose side forms are surjective and whose Z weight across the cut
/// generates Z_d (so the sides are genuinely correlated), preferring the smallest combined
/// support, then the lexicographically smallest support, then the smallest
/// multiplicity vector. Throws NoCorrelationForm if no element qualifies.
MeasurementSetting derive_setting(const Graph& g, int d, const TwoColoring& coloring,
                                  const Bipartition& part, int m);

/// Pinned settings of the worked three-qubit star example (d = 2, A = {1}):
/// m = 1 reads a_1 against b_2 with qubits 2 and 3 in the Fourier basis,
/// m = 2 reads a_1 in the Fourier basis against b_2 + b_3. Throws
/// ValidationError for any other configuration.
MeasurementSetting paper_exact_setting(const Graph& g, int d, const Bipartition& part, int m);

/// gcd test for surjectivity of x -> sum_k c_k x_k onto Z_d.
bool is_surjective_form(std::span<const int> coeffs, int d);

/// d effects labelled 0..d-1.
struct Povm {
    std::vector<Eigen::MatrixXcd> effects;

    int outcomes() const { return static_cast<int>(effects.size()); }
    Eigen::Index dim() const { return effects.empty() ? 0 : effects.front().rows(); }

    /// Throws ValidationError unless effects sum to I and are PSD within `tol`.
    void validate(double tol = kEigenTol) const;
};

/// Effect for outcome t: sum over local product-basis outcomes with coarse
/// outcome t of the product projector. Acts on the side's qudits in ascending order.
Povm build_povm(const MeasurementSetting& setting, Side side);

/// P(a, b) = tr(rho E_a (x) F_b) with rho reordered A-side first. Entries in
/// [-1e-10, 0) are clipped to 0.
Eigen::MatrixXd joint_distribution(const DensityOperator& rho, const Povm& povm_a, const Povm& povm_b,
                                   const Bipartition& part);

/// Same table for a pure state, computed by rotating each qudit into its local
/// basis and binning |amplitude|^2. A-side qudits follow `setting_a`, B-side
/// qudits `setting_b`.
Eigen::MatrixXd outcome_distribution(const PureState& psi, const MeasurementSetting& setting_a,
                                     const MeasurementSetting& setting_b, const Bipartition& part);

/// Schmidt vectors adapted to a setting: for each label v, the leading
/// singular triple of (E_v (x) F_v)|psi>. On the ideal state these are the
/// basis vectors |v>_{A m}, |v>_{B m} with coefficients 1/sqrt(d).
struct SettingSchmidtBasis {
    Eigen::VectorXd coefficients;  // indexed by label v
    Eigen::MatrixXcd a_vectors;
    Eigen::MatrixXcd b_vectors;
    /// Largest second singular value over labels; zero when every projected
    /// component is a product state.
    double residual = 0.0;

    Eigen::VectorXcd reconstruct() const;
};

SettingSchmidtBasis setting_schmidt_basis(const PureState& psi, const MeasurementSetting& setting,
                                          const Bipartition& part);

} // namespace gsteer
