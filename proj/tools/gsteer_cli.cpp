// gsteer: certification, attack analysis and protocol simulation for
// two-colorable qudit graph states.

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsteer/cloner.hpp"
#include "gsteer/graph_state.hpp"
#include "gsteer/qss.hpp"
#include "gsteer/steering.hpp"
#include "gsteer/verify.hpp"

#ifndef GSTEER_VERSION
#define GSTEER_VERSION "0.0.0"
#endif

using json = nlohmann::ordered_json;
using namespace gsteer;

namespace {

/// Raised when a computed artifact contradicts a closed form or bound.
class InvariantFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string num(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string iso_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json manifest(const std::string& command, json params, std::optional<std::uint64_t> seed = std::nullopt)
{
    json m;
    m["command"] = command;
    m["parameters"] = std::move(params);
    m["seed"] = seed ? json(*seed) : json(nullptr);
    m["tool_version"] = GSTEER_VERSION;
    m["timestamp"] = iso_timestamp();
    return m;
}

/// Writes to `path` through a sibling temporary and a rename; empty path or
/// "-" means standard output.
void emit(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw ValidationError("cannot open output file " + tmp.string());
        os << content;
        if (!os) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

GraphFile load_graph(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ValidationError("cannot read graph file " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_graph(ss.str());
}

void check_d_list(const std::vector<int>& ds)
{
    if (ds.empty()) throw ValidationError("--d: at least one dimension required");
    for (int d : ds)
        if (d < 2) throw ValidationError("--d: dimensions must be >= 2");
}

std::vector<double> p_grid(double p_max, int steps)
{
    if (!(p_max >= 0.0 && p_max <= 1.0)) throw ValidationError("--p-max must lie in [0, 1]");
    if (steps < 1) throw ValidationError("--steps must be >= 1");
    std::vector<double> grid;
    if (steps == 1) return {p_max};
    for (int k = 0; k < steps; ++k) grid.push_back(p_max * k / (steps - 1));
    return grid;
}

double closed_form_rate(double p, int d)
{
    return std::max(0.0, std::log2(static_cast<double>(d)) -
                             2.0 * disturbance_entropy(p * (d - 1) / d, d));
}

// ---- commands --------------------------------------------------------------

struct CertifyArgs {
    std::string graph_file;
    std::string partition = "1";
    double p = 0.0;
    std::string format = "json";
    std::string out;
    bool paper_exact = false;
};

void cmd_certify(const CertifyArgs& a)
{
    const GraphFile gf = load_graph(a.graph_file);
    const Bipartition part(gf.graph.n_vertices(), parse_vertex_list(a.partition));
    if (!(a.p >= 0.0 && a.p <= 1.0)) throw ValidationError("--p must lie in [0, 1]");
    const SteeringSetup setup = prepare_steering(gf.graph, gf.local_dim, part, a.paper_exact);
    const auto rho = white_noise(build_graph_state(gf.graph, gf.local_dim), a.p);
    const SteeringReport r = steering_statistic(rho, setup);

    const json m = manifest("certify", {{"graph_file", a.graph_file},
                                        {"graph", json::parse(serialize_graph(gf.graph, gf.local_dim))},
                                        {"partition", part.side_a()},
                                        {"p", a.p},
                                        {"paper_exact", a.paper_exact}});
    if (a.format == "csv") {
        std::string s = "# manifest: " + m.dump() + "\n";
        s += "i_1,i_2,i_total,threshold,steerable,margin\n";
        s += num(r.i_per_setting[0]) + "," + num(r.i_per_setting[1]) + "," + num(r.i_total) + "," +
             num(r.threshold) + "," + (r.steerable ? "true" : "false") + "," + num(r.margin) + "\n";
        emit(a.out, s);
        return;
    }
    json doc;
    doc["manifest"] = m;
    doc["i_per_setting"] = {r.i_per_setting[0], r.i_per_setting[1]};
    doc["i_total"] = r.i_total;
    doc["threshold"] = r.threshold;
    doc["steerable"] = r.steerable;
    doc["margin"] = r.margin;
    emit(a.out, doc.dump(2) + "\n");
}

struct Fig4Args {
    std::vector<int> ds{2, 3, 5};
    int n = 3;
    double p_max = 0.3;
    int steps = 61;
    std::string out;
};

void cmd_fig4(const Fig4Args& a)
{
    check_d_list(a.ds);
    if (a.n < 2) throw ValidationError("--n must be >= 2");
    const auto grid = p_grid(a.p_max, a.steps);
    const Graph g = make_star(a.n);
    const Bipartition part(a.n, {1});

    const json m = manifest("fig4", {{"d", a.ds}, {"n", a.n}, {"p_max", a.p_max}, {"steps", a.steps}});
    std::string s = "# manifest: " + m.dump() + "\n";
    s += "d,N,p,i_total,r_lower\n";
    int deviations = 0;
    for (int d : a.ds) {
        for (const auto& row : key_rate_scan(g, d, part, grid)) {
            if (std::abs(row.r_lower - closed_form_rate(row.p, d)) > 1e-9) ++deviations;
            s += std::to_string(d) + "," + std::to_string(a.n) + "," + num(row.p) + "," + num(row.i_total) + "," +
                 num(row.r_lower) + "\n";
        }
    }
    emit(a.out, s);
    if (deviations > 0)
        throw InvariantFailure(std::to_string(deviations) + " rows deviate from the N-independent closed form by > 1e-9");
}

void cmd_dc(const std::vector<int>& ds, const std::string& out)
{
    check_d_list(ds);
    std::string s = "# manifest: " + manifest("dc", {{"d", ds}}).dump() + "\n";
    s += "d,D_c\n";
    for (int d : ds) s += std::to_string(d) + "," + num(critical_disturbance(d)) + "\n";
    emit(out, s);
}

void cmd_fig5(const std::vector<int>& ds, int n, const std::string& out)
{
    check_d_list(ds);
    if (n < 2) throw ValidationError("--n must be >= 2");
    std::string s = "# manifest: " + manifest("fig5", {{"d", ds}, {"n", n}}).dump() + "\n";
    s += "d,p_noise\n";
    int mismatches = 0;
    for (int d : ds) {
        const double p = noise_threshold(make_star(n), d, Bipartition(n, {1}));
        if (std::abs(p * (d - 1) / d - critical_disturbance(d)) > 1e-6) ++mismatches;
        s += std::to_string(d) + "," + num(p) + "\n";
    }
    emit(out, s);
    if (mismatches > 0) throw InvariantFailure("noise threshold disagrees with the critical disturbance");
}

void cmd_nosharing(int d, int samples, std::uint64_t seed, const std::string& out)
{
    if (d < 2) throw ValidationError("--d must be >= 2");
    if (samples < 1) throw ValidationError("--samples must be >= 1");
    Rng rng(seed);
    const double bound = 2.0 * std::log2(static_cast<double>(d));
    double max_total = -1.0;
    double max_holevo_route = -1.0;
    int violations = 0;
    for (int s = 0; s < samples; ++s) {
        const auto sums = no_sharing_sum(random_gamma(d, rng));
        const double holevo_route = sums.sum_ab + sums.sum_ac_holevo;
        max_total = std::max(max_total, sums.total);
        max_holevo_route = std::max(max_holevo_route, holevo_route);
        if (sums.total > bound + 1e-9 || holevo_route > bound + 1e-9) ++violations;
    }
    json doc;
    doc["manifest"] = manifest("nosharing", {{"d", d}, {"samples", samples}}, seed);
    doc["samples"] = samples;
    doc["max_total"] = max_total;
    doc["max_total_holevo"] = max_holevo_route;
    doc["bound"] = bound;
    doc["violations"] = violations;
    emit(out, doc.dump(2) + "\n");
    if (violations > 0) throw InvariantFailure(std::to_string(violations) + " samples exceed 2 log2 d");
}

struct QssArgs {
    std::string graph_file;
    int n = 3;
    int d = 2;
    std::string partition = "1";
    double p = 0.0;
    std::optional<double> cloner_d;
    long long rounds = 100000;
    std::uint64_t seed = 1;
    std::string out;
    std::string report;
};

void cmd_qss(const QssArgs& a)
{
    Graph g = make_star(std::max(a.n, 2));
    int d = a.d;
    if (!a.graph_file.empty()) {
        GraphFile gf = load_graph(a.graph_file);
        g = std::move(gf.graph);
        d = gf.local_dim;
    } else if (a.n < 2) {
        throw ValidationError("--n must be >= 2");
    }
    ProtocolConfig cfg{g, d, Bipartition(g.n_vertices(), parse_vertex_list(a.partition)), a.p, a.cloner_d,
                       a.rounds, a.seed};
    const Transcript t = run_protocol(cfg);
    const RateEstimate est = estimate_rates(t, d);

    json params{{"graph", json::parse(serialize_graph(g, d))},
                {"partition", cfg.part.side_a()},
                {"p", a.p},
                {"cloner_D", a.cloner_d ? json(*a.cloner_d) : json(nullptr)},
                {"rounds", a.rounds}};
    const json m = manifest("qss", params, a.seed);

    if (!a.out.empty()) {
        std::ostringstream os;
        os << json{{"manifest", m}}.dump() << '\n';
        write_transcript_jsonl(os, t);
        emit(a.out, os.str());
    }
    json doc;
    doc["manifest"] = m;
    doc["i_hat"] = {est.i_hat[0], est.i_hat[1]};
    doc["i_hat_total"] = est.i_hat_total;
    doc["r_hat_lower"] = est.r_hat_lower;
    doc["sifted_rounds"] = {est.sifted_rounds[0], est.sifted_rounds[1]};
    doc["steerable_hat"] = est.steerable_hat;
    emit(a.report, doc.dump(2) + "\n");
}

void cmd_verify()
{
    int failures = 0;
    for (const auto& r : run_invariant_suite()) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.module << ": " << r.name << " [" << r.detail << "]\n";
        if (!r.passed) ++failures;
    }
    if (failures > 0) throw InvariantFailure(std::to_string(failures) + " invariant checks failed");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multipartite steering certification and secret-sharing analysis on qudit graph states"};
    app.set_version_flag("--version", GSTEER_VERSION);
    app.require_subcommand(1);

    CertifyArgs certify;
    auto* c = app.add_subcommand("certify", "Steering statistic of a (noisy) graph state");
    c->add_option("graph-file,--graph-file", certify.graph_file, "Graph JSON {n, d, edges}")->required();
    c->add_option("--partition", certify.partition, "Comma-separated A-side vertices");
    c->add_option("--p", certify.p, "White-noise intensity");
    c->add_option("--format", certify.format)->check(CLI::IsMember({"json", "csv"}));
    c->add_option("--out", certify.out, "Output file (default stdout)");
    c->add_flag("--paper-exact", certify.paper_exact, "Pinned settings of the star(3), d=2 worked example");

    Fig4Args fig4;
    auto* f4 = app.add_subcommand("fig4", "Key-rate lower bound versus white noise (CSV)");
    f4->add_option("--d", fig4.ds)->delimiter(',');
    f4->add_option("--n", fig4.n, "Star size N");
    f4->add_option("--p-max", fig4.p_max);
    f4->add_option("--steps", fig4.steps);
    f4->add_option("--out", fig4.out);

    std::vector<int> dc_ds{2, 3};
    std::string dc_out;
    auto* dc = app.add_subcommand("dc", "Critical cloner disturbance per d (CSV)");
    dc->add_option("--d", dc_ds)->delimiter(',');
    dc->add_option("--out", dc_out);

    std::vector<int> f5_ds{2, 3};
    int f5_n = 3;
    std::string f5_out;
    auto* f5 = app.add_subcommand("fig5", "Steering noise threshold per d (CSV)");
    f5->add_option("--d", f5_ds)->delimiter(',');
    f5->add_option("--n", f5_n, "Star size N");
    f5->add_option("--out", f5_out);

    int ns_d = 3;
    int ns_samples = 1000;
    std::uint64_t ns_seed = 42;
    std::string ns_out;
    auto* ns = app.add_subcommand("nosharing", "No-sharing sum over random cloner tables (JSON)");
    ns->add_option("--d", ns_d);
    ns->add_option("--samples", ns_samples);
    ns->add_option("--seed", ns_seed);
    ns->add_option("--out", ns_out);

    QssArgs qss;
    double qss_cloner = -1.0;
    auto* q = app.add_subcommand("qss", "Simulate the secret-sharing protocol");
    q->add_option("--graph-file", qss.graph_file, "Graph JSON (default star(N) with --d)");
    q->add_option("--n", qss.n);
    q->add_option("--d", qss.d);
    q->add_option("--partition", qss.partition);
    q->add_option("--p", qss.p);
    auto* cloner_opt = q->add_option("--cloner-D", qss_cloner, "Phase-covariant cloner disturbance");
    q->add_option("--rounds", qss.rounds);
    q->add_option("--seed", qss.seed);
    q->add_option("--out", qss.out, "Transcript JSONL");
    q->add_option("--report", qss.report, "Rate estimate JSON (default stdout)");

    auto* v = app.add_subcommand("verify", "Run the module invariant suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c) cmd_certify(certify);
        else if (*f4) cmd_fig4(fig4);
        else if (*dc) cmd_dc(dc_ds, dc_out);
        else if (*f5) cmd_fig5(f5_ds, f5_n, f5_out);
        else if (*ns) cmd_nosharing(ns_d, ns_samples, ns_seed, ns_out);
        else if (*q) {
            if (*cloner_opt) qss.cloner_d = qss_cloner;
            cmd_qss(qss);
        } else if (*v) cmd_verify();
    } catch (const ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const NoCorrelationForm& e) {
        std::cerr << e.what() << '\n';
        return 3;
    } catch (const InsufficientData& e) {
        std::cerr << e.what() << '\n';
        return 3;
    } catch (const InvariantFailure& e) {
        std::cerr << "invariant failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
