#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "gsteer/graph.hpp"
#include "gsteer/qudit.hpp"

namespace gsteer {

/// Secret-sharing run: the dealer holds the A side of the bipartition, the
/// collaborating receivers the B side; an optional phase-covariant cloner
/// intercepts the B qudits.
struct ProtocolConfig {
    Graph graph;
    int d;
    Bipartition part;
    double noise_p = 0.0;
    std::optional<double> cloner_disturbance;
    long long rounds = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct RoundRecord {
    long long round;
    int ma;
    int mb;
    int a;
    int b;
    bool sifted;
};

struct Transcript {
    int d = 2;
    std::vector<RoundRecord> records;
    /// Sifted-round counts per setting: counts[m-1](a, b).
    std::array<Eigen::MatrixXd, 2> counts;
};

struct RateEstimate {
    std::array<double, 2> i_hat{};
    double i_hat_total = 0.0;
    double r_hat_lower = 0.0;
    std::array<long long, 2> sifted_rounds{};
    bool steerable_hat = false;
};

/// Joint outcome tables for every setting pair, tables[ma-1][mb-1](a, b).
/// Without a cloner they come from the white-noise graph state through the
/// POVM pipeline. With a cloner the phase-covariant attack acts on the
/// noiseless Schmidt-space correlation first and the noise is mixed into the
/// resulting table: (1 - p) P_cloned + p / d^2.
std::array<std::array<Eigen::MatrixXd, 2>, 2> effective_joint_tables(const ProtocolConfig& cfg);

/// Deterministic given the seed: both parties pick m uniformly and
/// independently each round, then (a, b) is drawn from the matching table.
Transcript run_protocol(const ProtocolConfig& cfg);

/// Plug-in mutual information per setting from the sifted counts. Throws
/// InsufficientData when a setting has no sifted rounds.
RateEstimate estimate_rates(const Transcript& t, int d);

/// One JSON object per round: {"round":k,"ma":..,"mb":..,"a":..,"b":..,"sifted":..}.
void write_transcript_jsonl(std::ostream& os, const Transcript& t);

} // namespace gsteer
