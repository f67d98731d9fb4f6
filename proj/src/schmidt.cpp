#include "gsteer/schmidt.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

namespace gsteer {

namespace {

using RowMajorMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

int mod(long long a, int d)
{
    const long long r = a % d;
    return static_cast<int>(r < 0 ? r + d : r);
}

int inverse_mod(int u, int d)
{
    for (int x = 1; x < d; ++x)
        if (mod(static_cast<long long>(u) * x, d) == 1) return x;
    return 0;
}

// Amplitudes reordered A-side first and viewed as a dim(A) x dim(B) matrix.
RowMajorMatrix bipartite_matrix(const PureState& psi, const Bipartition& part)
{
    if (part.n_vertices() != psi.reg().n_qudits())
        throw ValidationError("bipartition does not match the number of qudits");
    const auto order = part.qudit_order();
    const PureState p = permute_qudits(psi, order);
    const QuditRegister reg_a(static_cast<int>(part.side_a().size()), psi.reg().local_dim());
    const auto da = static_cast<Eigen::Index>(reg_a.total_dim());
    const auto db = static_cast<Eigen::Index>(psi.reg().total_dim()) / da;
    return Eigen::Map<const RowMajorMatrix>(p.amplitudes().data(), da, db);
}

// Applies a single-qudit gate to qudit q (1-indexed) of a state vector.
void apply_local(const Eigen::MatrixXcd& gate, int q, const QuditRegister& reg, Eigen::VectorXcd& v)
{
    const auto d = static_cast<std::size_t>(reg.local_dim());
    const std::size_t stride = reg.stride(q);
    const std::size_t block = stride * d;
    std::vector<cplx> buf(d);
    for (std::size_t hi = 0; hi < reg.total_dim(); hi += block) {
        for (std::size_t lo = 0; lo < stride; ++lo) {
            for (std::size_t a = 0; a < d; ++a) {
                cplx acc = 0.0;
                for (std::size_t b = 0; b < d; ++b)
                    acc += gate(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *
                           v(static_cast<Eigen::Index>(hi + lo + b * stride));
                buf[a] = acc;
            }
            for (std::size_t a = 0; a < d; ++a) v(static_cast<Eigen::Index>(hi + lo + a * stride)) = buf[a];
        }
    }
}

} // namespace

Eigen::VectorXcd SchmidtForm::reconstruct() const
{
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(a_vectors.rows() * b_vectors.rows());
    for (Eigen::Index v = 0; v < coefficients.size(); ++v)
        out += coefficients(v) * kron(a_vectors.col(v), b_vectors.col(v));
    return out;
}

SchmidtForm schmidt_decompose(const PureState& psi, const Bipartition& part)
{
    const Eigen::MatrixXcd m = bipartite_matrix(psi, part);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtForm out;
    out.coefficients = svd.singularValues();
    out.a_vectors = svd.matrixU();
    // M = U S V^dagger, so M_ij = sum_v s_v U_iv conj(V_jv)
    out.b_vectors = svd.matrixV().conjugate();
    out.rank = static_cast<int>((out.coefficients.array() > 1e-8).count());
    return out;
}

int MeasurementSetting::outcome(Side s, std::span<const int> local_outcomes) const
{
    const auto& c = coeffs(s);
    long long acc = (s == Side::b) ? offset : 0;
    for (std::size_t k = 0; k < c.size(); ++k) acc += static_cast<long long>(c[k]) * local_outcomes[k];
    return mod(acc, d);
}

bool is_surjective_form(std::span<const int> coeffs, int d)
{
    int g = d;
    for (int c : coeffs) g = std::gcd(g, mod(c, d));
    return g == 1;
}

MeasurementSetting derive_setting(const Graph& g, int d, const TwoColoring& coloring,
                                  const Bipartition& part, int m)
{
    if (m != 1 && m != 2) throw ValidationError("derive_setting: m must be 1 or 2");
    if (d < 2) throw ValidationError("derive_setting: local dimension must be >= 2");
    const int n = g.n_vertices();
    if (part.n_vertices() != n) throw ValidationError("derive_setting: bipartition does not match the graph");
    if (static_cast<int>(coloring.colors.size()) != n + 1)
        throw ValidationError("derive_setting: coloring does not match the graph");
    for (auto [i, j] : g.edges())
        if (coloring[i] == coloring[j]) throw ValidationError("derive_setting: coloring is not proper");

    const int fourier_color = (m == 1) ? 1 : 0;
    MeasurementSetting s;
    s.m = m;
    s.d = d;
    s.side_a = part.side_a();
    s.side_b = part.side_b();
    s.local_bases.assign(static_cast<std::size_t>(n) + 1, LocalBasis::computational);
    for (int v = 1; v <= n; ++v)
        if (coloring[v] == fourier_color) s.local_bases[static_cast<std::size_t>(v)] = LocalBasis::fourier;
    const std::vector<int> fourier = coloring.vertices(fourier_color);

    // Element prod_{a in F} K_a^{c_a} = prod_a X_a^{c_a} prod_b Z_b^{z_b} with
    // z_b = sum_{a in N(b)} c_a. Z_b has eigenvalue omega^{z u} on |u>, X_a has
    // eigenvalue omega^{-v} on F|v>, so the outcomes obey
    // sum_C z_b u_b - sum_F c_a v_a = 0 (mod d).
    using Key = std::tuple<int, std::vector<int>, std::vector<int>>;
    bool found = false;
    Key best;
    std::vector<int> best_coef;

    std::vector<int> c(fourier.size(), 0);
    std::vector<int> coef(static_cast<std::size_t>(n) + 1);
    auto next = [&]() {
        for (std::size_t k = c.size(); k-- > 0;) {
            if (++c[k] < d) return true;
            c[k] = 0;
        }
        return false;
    };
    while (next()) {
        std::fill(coef.begin(), coef.end(), 0);
        for (std::size_t f = 0; f < fourier.size(); ++f) {
            const int a = fourier[f];
            coef[static_cast<std::size_t>(a)] = mod(coef[static_cast<std::size_t>(a)] - c[f], d);
            for (int b : g.neighbors(a)) coef[static_cast<std::size_t>(b)] = mod(coef[static_cast<std::size_t>(b)] + c[f], d);
        }
        std::vector<int> fa, fb;
        for (int v : s.side_a) fa.push_back(coef[static_cast<std::size_t>(v)]);
        for (int v : s.side_b) fb.push_back(mod(-coef[static_cast<std::size_t>(v)], d));
        if (!is_surjective_form(fa, d) || !is_surjective_form(fb, d)) continue;
        // Z weight each side receives from generators on the other side. If it
        // does not generate Z_d, some power of the A part is itself a
        // stabilizer and the side outcomes are not uniformly distributed.
        std::vector<int> cross;
        for (int v = 1; v <= n; ++v) {
            if (s.local_bases[static_cast<std::size_t>(v)] != LocalBasis::computational) continue;
            long long w = 0;
            for (std::size_t f = 0; f < fourier.size(); ++f)
                if (part.in_a(fourier[f]) != part.in_a(v) && g.has_edge(v, fourier[f])) w += c[f];
            cross.push_back(mod(w, d));
        }
        if (!is_surjective_form(cross, d)) continue;

        std::vector<int> support;
        for (int v = 1; v <= n; ++v)
            if (coef[static_cast<std::size_t>(v)] != 0) support.push_back(v);
        Key key{static_cast<int>(support.size()), support, c};
        if (!found || key < best) {
            best = std::move(key);
            best_coef = coef;
            found = true;
        }
    }
    if (!found)
        throw NoCorrelationForm("NoCorrelationForm: no stabilizer element gives surjective forms on both sides (m=" +
                                std::to_string(m) + ")");

    s.multiplicities.assign(static_cast<std::size_t>(n) + 1, 0);
    const auto& mult = std::get<2>(best);
    for (std::size_t f = 0; f < fourier.size(); ++f) s.multiplicities[static_cast<std::size_t>(fourier[f])] = mult[f];
    for (int v : s.side_a) s.fa_coeffs.push_back(best_coef[static_cast<std::size_t>(v)]);
    for (int v : s.side_b) s.fb_coeffs.push_back(mod(-best_coef[static_cast<std::size_t>(v)], d));

    // scale both forms so the leading A coefficient is 1 when it is a unit
    auto lead = std::find_if(s.fa_coeffs.begin(), s.fa_coeffs.end(), [](int x) { return x != 0; });
    if (lead != s.fa_coeffs.end()) {
        if (const int inv = inverse_mod(*lead, d); inv != 0) {
            for (int& x : s.fa_coeffs) x = mod(static_cast<long long>(x) * inv, d);
            for (int& x : s.fb_coeffs) x = mod(static_cast<long long>(x) * inv, d);
        }
    }
    return s;
}

MeasurementSetting paper_exact_setting(const Graph& g, int d, const Bipartition& part, int m)
{
    if (m != 1 && m != 2) throw ValidationError("paper_exact_setting: m must be 1 or 2");
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end());
    if (d != 2 || g.n_vertices() != 3 || edges != make_star(3).edges() || part.side_a() != std::vector<int>{1})
        throw ValidationError("paper-exact settings exist only for star(3), d=2, partition 1");
    MeasurementSetting s;
    s.m = m;
    s.d = 2;
    s.side_a = {1};
    s.side_b = {2, 3};
    const LocalBasis hub = m == 1 ? LocalBasis::computational : LocalBasis::fourier;
    const LocalBasis leaf = m == 1 ? LocalBasis::fourier : LocalBasis::computational;
    s.local_bases = {LocalBasis::computational, hub, leaf, leaf};
    s.fa_coeffs = {1};
    s.fb_coeffs = m == 1 ? std::vector<int>{1, 0} : std::vector<int>{1, 1};
    s.multiplicities = m == 1 ? std::vector<int>{0, 0, 1, 0} : std::vector<int>{0, 1, 0, 0};
    return s;
}

void Povm::validate(double tol) const
{
    if (effects.empty()) throw ValidationError("povm: no effects");
    const Eigen::Index n = dim();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& e : effects) {
        if (e.rows() != n || e.cols() != n) throw ValidationError("povm: effects differ in size");
        if (hermiticity_defect(e) > tol) throw ValidationError("povm: effect is not Hermitian");
        if (hermitian_eigenvalues(e).minCoeff() < -tol) throw ValidationError("povm: effect is not PSD");
        sum += e;
    }
    if ((sum - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > tol)
        throw ValidationError("povm: effects do not sum to identity");
}

Povm build_povm(const MeasurementSetting& setting, Side side)
{
    const auto& verts = setting.vertices(side);
    const int d = setting.d;
    const QuditRegister reg(static_cast<int>(verts.size()), d);
    const auto dim = static_cast<Eigen::Index>(reg.total_dim());

    const Eigen::MatrixXcd f = fourier_op(d).matrix;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(1, 1);
    for (int v : verts)
        u = kron(u, setting.basis(v) == LocalBasis::fourier ? f : Eigen::MatrixXcd::Identity(d, d));

    std::vector<Eigen::VectorXd> masks(static_cast<std::size_t>(d), Eigen::VectorXd::Zero(dim));
    for (std::size_t i = 0; i < reg.total_dim(); ++i) {
        const auto digits = reg.decode(i);
        masks[static_cast<std::size_t>(setting.outcome(side, digits))](static_cast<Eigen::Index>(i)) = 1.0;
    }
    Povm out;
    for (const auto& mask : masks)
        out.effects.push_back(u * mask.cast<cplx>().asDiagonal() * u.adjoint());
    return out;
}

Eigen::MatrixXd joint_distribution(const DensityOperator& rho, const Povm& povm_a, const Povm& povm_b,
                                   const Bipartition& part)
{
    const auto& reg = rho.reg();
    if (part.n_vertices() != reg.n_qudits())
        throw ValidationError("joint_distribution: bipartition does not match the register");
    if (povm_a.dim() * povm_b.dim() != static_cast<Eigen::Index>(reg.total_dim()))
        throw ValidationError("joint_distribution: POVM dimensions do not match the state");
    const Eigen::MatrixXcd p = permute_qudits(rho.matrix(), reg, part.qudit_order());

    Eigen::MatrixXd table(povm_a.outcomes(), povm_b.outcomes());
    for (int a = 0; a < povm_a.outcomes(); ++a) {
        for (int b = 0; b < povm_b.outcomes(); ++b) {
            const Eigen::MatrixXcd e = kron(povm_a.effects[static_cast<std::size_t>(a)],
                                            povm_b.effects[static_cast<std::size_t>(b)]);
            // tr(P E) = sum_ij P_ij E_ji
            double val = (p.transpose().cwiseProduct(e)).sum().real();
            if (val < 0.0) {
                if (val < -kEigenTol) throw ValidationError("joint_distribution: negative probability");
                val = 0.0;
            }
            table(a, b) = val;
        }
    }
    return table;
}

Eigen::MatrixXd outcome_distribution(const PureState& psi, const MeasurementSetting& setting_a,
                                     const MeasurementSetting& setting_b, const Bipartition& part)
{
    const auto& reg = psi.reg();
    const int d = reg.local_dim();
    if (setting_a.d != d || setting_b.d != d)
        throw ValidationError("outcome_distribution: setting dimension does not match the state");
    if (setting_a.side_a != part.side_a() || setting_b.side_b != part.side_b())
        throw ValidationError("outcome_distribution: settings were derived for another bipartition");
    const PureState p = permute_qudits(psi, part.qudit_order());
    Eigen::VectorXcd v = p.amplitudes();

    const Eigen::MatrixXcd f_dag = fourier_op(d).matrix.adjoint();
    const auto order = part.qudit_order();
    const auto na = part.side_a().size();
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& s = (k < na) ? setting_a : setting_b;
        if (s.basis(order[k]) == LocalBasis::fourier) apply_local(f_dag, static_cast<int>(k) + 1, reg, v);
    }

    Eigen::MatrixXd table = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < reg.total_dim(); ++i) {
        const auto digits = reg.decode(i);
        const std::span<const int> all(digits);
        const int a = setting_a.outcome(Side::a, all.first(na));
        const int b = setting_b.outcome(Side::b, all.subspan(na));
        table(a, b) += std::norm(v(static_cast<Eigen::Index>(i)));
    }
    return table;
}

Eigen::VectorXcd SettingSchmidtBasis::reconstruct() const
{
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(a_vectors.rows() * b_vectors.rows());
    for (Eigen::Index v = 0; v < coefficients.size(); ++v)
        out += coefficients(v) * kron(a_vectors.col(v), b_vectors.col(v));
    return out;
}

SettingSchmidtBasis setting_schmidt_basis(const PureState& psi, const MeasurementSetting& setting,
                                          const Bipartition& part)
{
    const Eigen::MatrixXcd m = bipartite_matrix(psi, part);
    const Povm pa = build_povm(setting, Side::a);
    const Povm pb = build_povm(setting, Side::b);
    const int d = setting.d;

    SettingSchmidtBasis out;
    out.coefficients.resize(d);
    out.a_vectors.resize(m.rows(), d);
    out.b_vectors.resize(m.cols(), d);
    for (int v = 0; v < d; ++v) {
        // (E (x) F) vec(M) = vec(E M F^T) for row-major vec
        const Eigen::MatrixXcd comp = pa.effects[static_cast<std::size_t>(v)] * m *
                                      pb.effects[static_cast<std::size_t>(v)].transpose();
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(comp, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        out.coefficients(v) = sv(0);
        out.a_vectors.col(v) = svd.matrixU().col(0);
        out.b_vectors.col(v) = svd.matrixV().col(0).conjugate();
        if (sv.size() > 1) out.residual = std::max(out.residual, sv(1));
    }
    return out;
}

} // namespace gsteer
