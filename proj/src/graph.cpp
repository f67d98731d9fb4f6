#include "gsteer/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>

#include <json.hpp>

namespace gsteer {

using nlohmann::json;

Graph::Graph(int n_vertices, std::vector<Edge> edges) : n_(n_vertices)
{
    if (n_vertices < 1) throw ValidationError("graph: n must be >= 1");
    adj_.resize(static_cast<std::size_t>(n_) + 1);
    std::set<Edge> seen;
    edges_.reserve(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto [i, j] = edges[k];
        const std::string where = "edges[" + std::to_string(k) + "]";
        if (i < 1 || i > n_ || j < 1 || j > n_)
            throw ValidationError(where + ": vertex out of range 1.." + std::to_string(n_));
        if (i == j) throw ValidationError(where + ": self-loop on vertex " + std::to_string(i));
        const Edge e{std::min(i, j), std::max(i, j)};
        if (!seen.insert(e).second)
            throw ValidationError(where + ": duplicate edge (" + std::to_string(e.first) + "," +
                                  std::to_string(e.second) + ")");
        edges_.push_back(e);
        adj_[static_cast<std::size_t>(i)].push_back(j);
        adj_[static_cast<std::size_t>(j)].push_back(i);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(int i, int j) const
{
    if (i < 1 || i > n_) return false;
    const auto& a = adj_[static_cast<std::size_t>(i)];
    return std::binary_search(a.begin(), a.end(), j);
}

std::vector<int> Graph::neighbors(int v) const
{
    if (v < 1 || v > n_) throw ValidationError("neighbors: vertex out of range");
    return adj_[static_cast<std::size_t>(v)];
}

Graph make_star(int n)
{
    if (n < 2) throw ValidationError("make_star: n must be >= 2");
    std::vector<Graph::Edge> e;
    for (int k = 2; k <= n; ++k) e.emplace_back(1, k);
    return Graph(n, std::move(e));
}

Graph make_chain(int n)
{
    if (n < 2) throw ValidationError("make_chain: n must be >= 2");
    std::vector<Graph::Edge> e;
    for (int k = 1; k < n; ++k) e.emplace_back(k, k + 1);
    return Graph(n, std::move(e));
}

std::vector<int> TwoColoring::vertices(int color) const
{
    std::vector<int> out;
    for (std::size_t v = 1; v < colors.size(); ++v)
        if (colors[v] == color) out.push_back(static_cast<int>(v));
    return out;
}

namespace {

struct BfsResult {
    std::vector<int> colors;
    std::vector<int> cycle;
};

BfsResult bfs_color(const Graph& g)
{
    const auto n = static_cast<std::size_t>(g.n_vertices());
    std::vector<int> color(n + 1, -1);
    std::vector<int> parent(n + 1, 0);
    for (int root = 1; root <= g.n_vertices(); ++root) {
        if (color[static_cast<std::size_t>(root)] != -1) continue;
        color[static_cast<std::size_t>(root)] = 0;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int w : g.neighbors(u)) {
                auto& cw = color[static_cast<std::size_t>(w)];
                if (cw == -1) {
                    cw = 1 - color[static_cast<std::size_t>(u)];
                    parent[static_cast<std::size_t>(w)] = u;
                    queue.push_back(w);
                } else if (cw == color[static_cast<std::size_t>(u)]) {
                    // u and w are at equal BFS parity: walk both up to their
                    // common ancestor to close the odd cycle.
                    std::vector<int> up_u{u}, up_w{w};
                    for (int x = u; parent[static_cast<std::size_t>(x)] != 0;) {
                        x = parent[static_cast<std::size_t>(x)];
                        up_u.push_back(x);
                    }
                    for (int x = w; parent[static_cast<std::size_t>(x)] != 0;) {
                        x = parent[static_cast<std::size_t>(x)];
                        up_w.push_back(x);
                    }
                    while (up_u.size() > 1 && up_w.size() > 1 &&
                           up_u[up_u.size() - 2] == up_w[up_w.size() - 2]) {
                        up_u.pop_back();
                        up_w.pop_back();
                    }
                    std::vector<int> cycle(up_u.begin(), up_u.end());
                    for (auto it = up_w.rbegin() + 1; it != up_w.rend(); ++it) cycle.push_back(*it);
                    return {{}, cycle};
                }
            }
        }
    }
    return {color, {}};
}

} // namespace

std::vector<int> find_odd_cycle(const Graph& g)
{
    return bfs_color(g).cycle;
}

TwoColoring two_color(const Graph& g)
{
    auto res = bfs_color(g);
    if (!res.cycle.empty()) {
        std::string msg = "NotTwoColorable: odd cycle";
        for (int v : res.cycle) msg += " " + std::to_string(v);
        throw NotTwoColorable(msg);
    }
    res.colors[0] = 0;
    return TwoColoring{std::move(res.colors)};
}

Bipartition::Bipartition(int n_vertices, std::vector<int> side_a)
{
    std::sort(side_a.begin(), side_a.end());
    if (std::adjacent_find(side_a.begin(), side_a.end()) != side_a.end())
        throw ValidationError("bipartition: duplicate vertex on side A");
    for (int v : side_a)
        if (v < 1 || v > n_vertices)
            throw ValidationError("bipartition: vertex " + std::to_string(v) + " out of range");
    if (side_a.empty()) throw ValidationError("bipartition: side A is empty");
    if (static_cast<int>(side_a.size()) == n_vertices)
        throw ValidationError("bipartition: side B is empty");
    for (int v = 1; v <= n_vertices; ++v)
        if (!std::binary_search(side_a.begin(), side_a.end(), v)) b_.push_back(v);
    a_ = std::move(side_a);
}

bool Bipartition::in_a(int v) const
{
    return std::binary_search(a_.begin(), a_.end(), v);
}

std::vector<int> Bipartition::qudit_order() const
{
    std::vector<int> order = a_;
    order.insert(order.end(), b_.begin(), b_.end());
    return order;
}

std::vector<Bipartition> all_bipartitions(int n_vertices)
{
    std::vector<Bipartition> out;
    const unsigned full = (1u << n_vertices) - 1u;
    for (unsigned mask = 1; mask < full; ++mask) {
        std::vector<int> a;
        for (int v = 1; v <= n_vertices; ++v)
            if (mask & (1u << (v - 1))) a.push_back(v);
        out.emplace_back(n_vertices, std::move(a));
    }
    return out;
}

bool is_single_constraint_cut(const Graph& g, const Bipartition& part)
{
    std::vector<int> row;
    bool have_row = false;
    for (int a : part.side_a()) {
        std::vector<int> cross;
        for (int w : g.neighbors(a))
            if (!part.in_a(w)) cross.push_back(w);
        if (cross.empty()) continue;
        if (have_row && cross != row) return false;
        row = std::move(cross);
        have_row = true;
    }
    return have_row;
}

GraphFile parse_graph(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("graph file: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("graph file: top level must be an object");

    auto int_field = [&](const char* name) {
        if (!doc.contains(name)) throw ValidationError(std::string("graph file: missing field \"") + name + "\"");
        const auto& f = doc.at(name);
        if (!f.is_number_integer())
            throw ValidationError(std::string("graph file: field \"") + name + "\" must be an integer");
        return f.get<long long>();
    };
    const long long n = int_field("n");
    const long long d = int_field("d");
    if (n < 1 || n > 64) throw ValidationError("graph file: field \"n\" must be in 1..64");
    if (d < 2 || d > 1024) throw ValidationError("graph file: field \"d\" must be >= 2");

    if (!doc.contains("edges") || !doc.at("edges").is_array())
        throw ValidationError("graph file: field \"edges\" must be an array");
    std::vector<Graph::Edge> edges;
    const auto& arr = doc.at("edges");
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const auto& e = arr[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw ValidationError("graph file: edges[" + std::to_string(k) + "] must be a pair of integers");
        const auto i = e[0].get<long long>();
        const auto j = e[1].get<long long>();
        if (i < 1 || i > n || j < 1 || j > n)
            throw ValidationError("graph file: edges[" + std::to_string(k) + "]: vertex out of range 1.." +
                                  std::to_string(n));
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    try {
        return GraphFile{Graph(static_cast<int>(n), std::move(edges)), static_cast<int>(d)};
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("graph file: ") + e.what());
    }
}

std::string serialize_graph(const Graph& g, int local_dim)
{
    json edges = json::array();
    for (auto [i, j] : g.edges()) edges.push_back({i, j});
    return json{{"n", g.n_vertices()}, {"d", local_dim}, {"edges", edges}}.dump();
}

std::vector<int> parse_vertex_list(std::string_view text)
{
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        auto token = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        int v = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
            throw ValidationError("vertex list: cannot parse \"" + std::string(token) + "\"");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace gsteer
