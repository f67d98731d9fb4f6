#include "gsteer/steering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsteer/graph_state.hpp"

namespace gsteer {

SteeringReport make_steering_report(double i1, double i2, int d)
{
    SteeringReport r;
    r.i_per_setting = {i1, i2};
    r.i_total = i1 + i2;
    r.threshold = std::log2(static_cast<double>(d));
    r.margin = r.i_total - r.threshold;
    r.steerable = r.margin > kSteeringMargin;
    return r;
}

SteeringSetup prepare_steering(const Graph& g, int d, const Bipartition& part, bool paper_exact)
{
    const TwoColoring coloring = two_color(g);
    SteeringSetup s{d, part, {}, {}, {}};
    for (int m = 1; m <= 2; ++m)
        s.settings[static_cast<std::size_t>(m - 1)] =
            paper_exact ? paper_exact_setting(g, d, part, m) : derive_setting(g, d, coloring, part, m);
    for (std::size_t m = 0; m < 2; ++m) {
        s.povm_a[m] = build_povm(s.settings[m], Side::a);
        s.povm_b[m] = build_povm(s.settings[m], Side::b);
    }
    return s;
}

DensityOperator white_noise(const PureState& psi, double p)
{
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("white_noise: p must lie in [0, 1]");
    const auto dim = static_cast<Eigen::Index>(psi.reg().total_dim());
    Eigen::MatrixXcd m = (1.0 - p) * (psi.amplitudes() * psi.amplitudes().adjoint());
    m.diagonal().array() += p / static_cast<double>(dim);
    return DensityOperator::trusted(psi.reg(), std::move(m));
}

SteeringReport steering_statistic(const DensityOperator& rho, const SteeringSetup& setup)
{
    std::array<double, 2> info{};
    for (std::size_t m = 0; m < 2; ++m)
        info[m] = mutual_information(joint_distribution(rho, setup.povm_a[m], setup.povm_b[m], setup.part));
    return make_steering_report(info[0], info[1], setup.d);
}

SteeringReport steering_statistic(const DensityOperator& rho, const std::array<MeasurementSetting, 2>& settings,
                                  const Bipartition& part)
{
    SteeringSetup setup{settings[0].d, part, settings, {}, {}};
    for (std::size_t m = 0; m < 2; ++m) {
        setup.povm_a[m] = build_povm(settings[m], Side::a);
        setup.povm_b[m] = build_povm(settings[m], Side::b);
    }
    return steering_statistic(rho, setup);
}

double noise_threshold(const Graph& g, int d, const Bipartition& part)
{
    const SteeringSetup setup = prepare_steering(g, d, part);
    const PureState psi = build_graph_state(g, d);
    const auto pure = DensityOperator::from_pure(psi);
    const auto mixed = DensityOperator::maximally_mixed(psi.reg());

    std::array<Eigen::MatrixXd, 2> ideal, uniform;
    for (std::size_t m = 0; m < 2; ++m) {
        ideal[m] = joint_distribution(pure, setup.povm_a[m], setup.povm_b[m], part);
        uniform[m] = joint_distribution(mixed, setup.povm_a[m], setup.povm_b[m], part);
    }
    const double threshold = std::log2(static_cast<double>(d));
    auto excess = [&](double p) {
        double total = 0.0;
        for (std::size_t m = 0; m < 2; ++m)
            total += mutual_information((1.0 - p) * ideal[m] + p * uniform[m]);
        return total - threshold;
    };
    double lo = 0.0, hi = 1.0;
    if (!(excess(lo) > 0.0 && excess(hi) < 0.0))
        throw Error("noise_threshold: criterion does not bracket a root; the settings do not certify the ideal state");
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

KeyRateReport key_rate_lower(const SteeringReport& report)
{
    const double raw = report.i_total - report.threshold;
    const int d = static_cast<int>(std::lround(std::exp2(report.threshold)));
    return {std::max(0.0, raw), report.i_total, d, raw < 0.0};
}

double disturbance_entropy(double D, int d)
{
    if (!(D >= 0.0 && D <= 1.0)) throw ValidationError("disturbance_entropy: D must lie in [0, 1]");
    if (d < 2) throw ValidationError("disturbance_entropy: d must be >= 2");
    double h = 0.0;
    if (D < 1.0) h -= (1.0 - D) * std::log2(1.0 - D);
    if (D > 0.0) h -= D * std::log2(D / (d - 1));
    return h;
}

double critical_disturbance(int d)
{
    if (d < 2) throw ValidationError("critical_disturbance: d must be >= 2");
    const double target = 0.5 * std::log2(static_cast<double>(d));
    double lo = 0.0;
    double hi = static_cast<double>(d - 1) / d;
    // H is increasing on [0, (d-1)/d] with H(0) = 0 and H((d-1)/d) = log2 d
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (disturbance_entropy(mid, d) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double white_noise_setting_information(double p, int d)
{
    return std::log2(static_cast<double>(d)) - disturbance_entropy(p * (d - 1) / d, d);
}

std::vector<ScanRow> key_rate_scan(const Graph& g, int d, const Bipartition& part, const std::vector<double>& p_grid)
{
    const SteeringSetup setup = prepare_steering(g, d, part);
    const PureState psi = build_graph_state(g, d);
    std::vector<ScanRow> rows;
    rows.reserve(p_grid.size());
    for (double p : p_grid) {
        const auto report = steering_statistic(white_noise(psi, p), setup);
        rows.push_back({p, report.i_total, key_rate_lower(report).r_lower});
    }
    return rows;
}

} // namespace gsteer
