#pragma once

#include <array>
#include <vector>

#include "gsteer/graph.hpp"
#include "gsteer/infotheory.hpp"
#include "gsteer/schmidt.hpp"

namespace gsteer {

/// Margin above log2(d) required to call a state steerable.
inline constexpr double kSteeringMargin = 1e-10;

struct SteeringReport {
    std::array<double, 2> i_per_setting{};
    double i_total = 0.0;
    double threshold = 0.0;  // log2 d
    bool steerable = false;
    double margin = 0.0;     // i_total - threshold
};

SteeringReport make_steering_report(double i1, double i2, int d);

struct KeyRateReport {
    double r_lower = 0.0;
    double i_total = 0.0;
    int d = 2;
    bool clamped = false;
};

/// Both settings and their POVMs for one (graph, d, bipartition).
struct SteeringSetup {
    int d;
    Bipartition part;
    std::array<MeasurementSetting, 2> settings;
    std::array<Povm, 2> povm_a;
    std::array<Povm, 2> povm_b;
};

/// `paper_exact` swaps the canonical search for the pinned worked-example settings.
SteeringSetup prepare_steering(const Graph& g, int d, const Bipartition& part, bool paper_exact = false);

/// (p / d^N) I + (1 - p) |psi><psi|.
DensityOperator white_noise(const PureState& psi, double p);

SteeringReport steering_statistic(const DensityOperator& rho, const SteeringSetup& setup);
SteeringReport steering_statistic(const DensityOperator& rho, const std::array<MeasurementSetting, 2>& settings,
                                  const Bipartition& part);

/// Noise intensity at which i_total drops to log2 d, by bisection to 1e-10.
/// The joint tables are affine in p, so they are computed at p = 0 and p = 1
/// through the density-matrix pipeline and mixed.
double noise_threshold(const Graph& g, int d, const Bipartition& part);

/// R_L = max(0, i_total - log2 d), with log2 d taken from the report threshold.
KeyRateReport key_rate_lower(const SteeringReport& report);

/// H(D) = -(1 - D) log2(1 - D) - D log2(D / (d - 1)).
double disturbance_entropy(double D, int d);

/// Root of H(D) = log2(d) / 2 on (0, (d - 1)/d).
double critical_disturbance(int d);

/// Closed-form per-setting mutual information under white noise:
/// log2 d - H(p (d - 1)/d).
double white_noise_setting_information(double p, int d);

struct ScanRow {
    double p;
    double i_total;
    double r_lower;
};

/// Runs the full density-matrix pipeline at every grid point.
std::vector<ScanRow> key_rate_scan(const Graph& g, int d, const Bipartition& part, const std::vector<double>& p_grid);

} // namespace gsteer
