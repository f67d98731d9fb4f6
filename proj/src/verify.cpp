#include "gsteer/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "gsteer/cloner.hpp"
#include "gsteer/graph_state.hpp"
#include "gsteer/qss.hpp"
#include "gsteer/schmidt.hpp"
#include "gsteer/steering.hpp"

namespace gsteer {

namespace {

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

// A check returns the observed defect; it passes when the defect is within tol.
void run(std::vector<CheckResult>& out, const char* module, const char* name, double tol,
         const std::function<double()>& defect)
{
    CheckResult r{module, name, false, {}};
    try {
        const double x = defect();
        r.passed = std::isfinite(x) && x <= tol;
        r.detail = "defect " + fmt(x) + " (tol " + fmt(tol) + ")";
    } catch (const std::exception& e) {
        r.detail = std::string("threw: ") + e.what();
    }
    out.push_back(std::move(r));
}

std::vector<std::pair<Graph, Bipartition>> sweep()
{
    std::vector<std::pair<Graph, Bipartition>> cases;
    auto add = [&](const Graph& g) {
        for (const auto& part : all_bipartitions(g.n_vertices()))
            if (is_single_constraint_cut(g, part)) cases.emplace_back(g, part);
    };
    for (int n = 2; n <= 4; ++n) add(make_star(n));
    for (int n = 3; n <= 4; ++n) add(make_chain(n));
    return cases;
}

} // namespace

std::vector<CheckResult> run_invariant_suite()
{
    std::vector<CheckResult> out;

    run(out, "qudit-core", "fourier unitary, F^dagger Z F = X", kAlgebraTol, [] {
        double worst = 0.0;
        for (int d = 2; d <= 5; ++d) {
            const auto f = fourier_op(d).matrix;
            worst = std::max(worst, unitarity_defect(f));
            worst = std::max(worst, (f.adjoint() * z_op(d).matrix * f - x_op(d).matrix).cwiseAbs().maxCoeff());
        }
        return worst;
    });
    run(out, "qudit-core", "partial trace preserves trace", kAlgebraTol, [] {
        Rng rng(7);
        const QuditRegister reg(3, 3);
        const auto rho = partial_trace(random_state(reg, rng), std::vector<int>{1, 3});
        return std::abs(rho.trace() - 1.0);
    });

    run(out, "graph-model", "star and chain are two-colorable", 0.0, [] {
        double bad = 0.0;
        for (int n = 2; n <= 6; ++n)
            for (const auto& g : {make_star(n), make_chain(n)}) {
                const auto c = two_color(g);
                for (auto [i, j] : g.edges()) bad += c[i] == c[j] ? 1.0 : 0.0;
            }
        return bad;
    });

    run(out, "graph-state", "stabilizers fix the state", kAlgebraTol, [] {
        double worst = 0.0;
        for (int d = 2; d <= 3; ++d)
            for (const auto& g : {make_star(4), make_chain(4)}) {
                const auto psi = build_graph_state(g, d);
                for (const auto& k : stabilizer_generators(g, d))
                    worst = std::max(worst, (apply_pauli(k, psi.reg(), psi.amplitudes()) - psi.amplitudes())
                                                .cwiseAbs()
                                                .maxCoeff());
            }
        return worst;
    });

    run(out, "schmidt-measure", "Schmidt rank d with flat coefficients", 1e-9, [] {
        double worst = 0.0;
        for (int d = 2; d <= 3; ++d)
            for (const auto& [g, part] : sweep()) {
                const auto sf = schmidt_decompose(build_graph_state(g, d), part);
                if (sf.rank != d) return 1.0;
                for (Eigen::Index k = 0; k < sf.coefficients.size(); ++k) {
                    const double target = k < d ? 1.0 / std::sqrt(static_cast<double>(d)) : 0.0;
                    worst = std::max(worst, std::abs(sf.coefficients(k) - target));
                }
            }
        return worst;
    });
    run(out, "schmidt-measure", "POVMs are valid", kEigenTol, [] {
        for (const auto& [g, part] : sweep()) {
            const auto setup = prepare_steering(g, 3, part);
            for (std::size_t m = 0; m < 2; ++m) {
                setup.povm_a[m].validate();
                setup.povm_b[m].validate();
            }
        }
        return 0.0;
    });

    run(out, "infotheory", "0 <= I(A:B) <= min entropy", 1e-12, [] {
        Rng rng(11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int s = 0; s < 200; ++s) {
            Eigen::MatrixXd p(3, 4);
            for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = u(rng);
            p /= p.sum();
            const double i = mutual_information(p);
            const double cap = std::min(shannon_entropy(p.rowwise().sum()), shannon_entropy(p.colwise().sum()));
            worst = std::max({worst, -i, i - cap});
        }
        return worst;
    });

    run(out, "steering-keyrate", "ideal i_total = 2 log2 d", 1e-9, [] {
        double worst = 0.0;
        for (int d = 2; d <= 3; ++d)
            for (const auto& [g, part] : sweep()) {
                const auto setup = prepare_steering(g, d, part);
                const auto r = steering_statistic(DensityOperator::from_pure(build_graph_state(g, d)), setup);
                worst = std::max(worst, std::abs(r.i_total - 2.0 * std::log2(static_cast<double>(d))));
            }
        return worst;
    });
    run(out, "steering-keyrate", "H(D_c) = log2(d) / 2", 1e-9, [] {
        double worst = 0.0;
        for (int d = 2; d <= 5; ++d)
            worst = std::max(worst, std::abs(disturbance_entropy(critical_disturbance(d), d) -
                                             0.5 * std::log2(static_cast<double>(d))));
        return worst;
    });

    run(out, "cloner", "no-sharing sum within 2 log2 d", 1e-9, [] {
        Rng rng(42);
        double worst = -1.0;
        for (int d = 2; d <= 3; ++d)
            for (int s = 0; s < 100; ++s) {
                const auto g = random_gamma(d, rng);
                const auto sums = no_sharing_sum(g);
                const double bound = 2.0 * std::log2(static_cast<double>(d));
                worst = std::max({worst, sums.total - bound, sums.sum_ab + sums.sum_ac_holevo - bound});
            }
        return std::max(0.0, worst);
    });
    run(out, "cloner", "formula matches explicit state", 1e-9, [] {
        Rng rng(5);
        double worst = 0.0;
        for (int s = 0; s < 20; ++s) {
            const auto g = random_gamma(3, rng);
            const auto state = cloner_output(g);
            for (int m = 1; m <= 2; ++m) {
                worst = std::max(worst, std::abs(mutual_information(measured_joint_ab(state, m)) - mutual_info_ab(g, m)));
                worst = std::max(worst, std::abs(holevo(eavesdropper_ensemble(state, m)) - holevo_ac(g, m)));
            }
        }
        return worst;
    });

    run(out, "qss-sim", "transcript is reproducible", 0.0, [] {
        ProtocolConfig cfg{make_star(3), 2, Bipartition(3, {1}), 0.1, std::nullopt, 2000, 99};
        const auto a = run_protocol(cfg);
        const auto b = run_protocol(cfg);
        double diff = 0.0;
        for (std::size_t k = 0; k < a.records.size(); ++k) {
            const auto& x = a.records[k];
            const auto& y = b.records[k];
            diff += (x.ma != y.ma || x.mb != y.mb || x.a != y.a || x.b != y.b) ? 1.0 : 0.0;
        }
        return diff;
    });

    return out;
}

} // namespace gsteer
