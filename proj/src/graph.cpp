#include "isinglab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace isinglab {

namespace {

std::vector<Edge> canonicalize(int max_vertex, std::vector<Edge> edges) {
    std::map<std::pair<int, int>, double> merged;
    for (auto& e : edges) {
        if (e.u == e.v) throw std::invalid_argument("self-pair in edge list");
        if (e.u < 0 || e.v < 0 || e.u > max_vertex || e.v > max_vertex)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.J < 0.0 || !std::isfinite(e.J))
            throw std::invalid_argument("couplings must be finite and >= 0");
        if (e.J == 0.0) continue;
        auto key = std::minmax(e.u, e.v);
        merged[key] += e.J;
    }
    std::vector<Edge> out;
    out.reserve(merged.size());
    for (auto& [key, J] : merged) out.push_back({key.first, key.second, J});
    return out;
}

}  // namespace

WeightedGraph::WeightedGraph(int n, bool has_ghost, double beta, double h,
                             std::vector<Edge> edges)
    : n_(n), has_ghost_(has_ghost), beta_(beta), h_(h), edges_(std::move(edges)) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
    if (h < 0.0) throw std::invalid_argument("field must be >= 0");
    incident_.assign(n_ + (has_ghost_ ? 1 : 0), {});
    for (int i = 0; i < (int)edges_.size(); ++i) {
        incident_[edges_[i].u].push_back(i);
        incident_[edges_[i].v].push_back(i);
    }
}

WeightedGraph WeightedGraph::with_field(int n, std::vector<Edge> edges, double beta,
                                        double h) {
    return WeightedGraph(n, false, beta, h, canonicalize(n - 1, std::move(edges)));
}

WeightedGraph WeightedGraph::with_ghost(int n, std::vector<Edge> edges, double beta) {
    return WeightedGraph(n, true, beta, 0.0, canonicalize(n, std::move(edges)));
}

WeightedGraph WeightedGraph::ghost_form() const {
    if (has_ghost_ || h_ == 0.0) return *this;
    return ghost_augment(*this);
}

WeightedGraph WeightedGraph::with_beta(double beta) const {
    return WeightedGraph(n_, has_ghost_, beta, h_, edges_);
}

WeightedGraph WeightedGraph::induced(VertexSet S, bool keep_field) const {
    std::vector<int> remap(n_, -1);
    int m = 0;
    for (int v = 0; v < n_; ++v)
        if (vs_contains(S, v)) remap[v] = m++;
    std::vector<Edge> sub;
    bool ghost_edges = false;
    for (const auto& e : edges_) {
        bool ug = is_ghost(e.u), vg = is_ghost(e.v);
        if (ug || vg) {
            if (!keep_field) continue;
            int x = ug ? e.v : e.u;
            if (remap[x] < 0) continue;
            sub.push_back({remap[x], m, e.J});
            ghost_edges = true;
        } else {
            if (remap[e.u] < 0 || remap[e.v] < 0) continue;
            sub.push_back({remap[e.u], remap[e.v], e.J});
        }
    }
    if (ghost_edges) return with_ghost(m, std::move(sub), beta_);
    return with_field(m, std::move(sub), beta_, keep_field ? h_ : 0.0);
}

bool WeightedGraph::connected() const {
    int total = n_ + (has_ghost_ ? 1 : 0);
    if (total <= 1) return true;
    std::vector<char> seen(total, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int ei : incident_[v]) {
            const auto& e = edges_[ei];
            int w = e.u == v ? e.v : e.u;
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == total;
}

double energy(const WeightedGraph& g, const SpinConfig& sigma) {
    if ((int)sigma.size() != g.num_vertices())
        throw std::domain_error("spin configuration does not match vertex set");
    auto spin = [&](int v) { return g.is_ghost(v) ? 1 : sigma[v]; };
    double e = 0.0;
    for (const auto& ed : g.edges()) e -= ed.J * spin(ed.u) * spin(ed.v);
    if (g.field() != 0.0)
        for (int s : sigma) e -= g.field() * s;
    return e;
}

WeightedGraph ghost_augment(const WeightedGraph& g) {
    if (g.has_ghost() || g.field() == 0.0) return g;
    std::vector<Edge> edges = g.edges();
    for (int x = 0; x < g.num_vertices(); ++x)
        edges.push_back({x, g.num_vertices(), g.field()});
    return WeightedGraph::with_ghost(g.num_vertices(), std::move(edges), g.beta());
}

VertexSet vs_parse(const std::string& csv) {
    VertexSet s = 0;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        s |= 1u << std::stoi(tok);
    }
    return s;
}

WeightedGraph WeightedGraph::from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("graph JSON parse error: ") + e.what());
    }
    int n = j.at("vertices").get<int>();
    double beta = j.value("beta", 1.0);
    double h = j.value("h", 0.0);
    std::vector<Edge> edges;
    for (const auto& row : j.at("edges"))
        edges.push_back({row.at(0).get<int>(), row.at(1).get<int>(), row.at(2).get<double>()});
    WeightedGraph g = with_field(n, std::move(edges), beta, h);
    return h > 0.0 ? ghost_augment(g) : g;
}

WeightedGraph WeightedGraph::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_string(buf.str());
}

std::string WeightedGraph::to_json_string() const {
    nlohmann::json j;
    j["vertices"] = n_;
    j["beta"] = beta_;
    auto out = nlohmann::json::array();
    double h = h_;
    for (const auto& e : edges_) {
        if (is_ghost(e.u) || is_ghost(e.v)) {
            h = e.J;  // ghost edges all carry the field
            continue;
        }
        out.push_back({e.u, e.v, e.J});
    }
    j["edges"] = out;
    j["h"] = h;
    return j.dump();
}

// --- generators -----------------------------------------------------------

namespace {
WeightedGraph finish(int n, std::vector<Edge> edges, double beta, double h) {
    WeightedGraph g = WeightedGraph::with_field(n, std::move(edges), beta, h);
    return h > 0.0 ? ghost_augment(g) : g;
}
}  // namespace

WeightedGraph make_path(int n, double beta, double J, double h) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, J});
    return finish(n, std::move(e), beta, h);
}

WeightedGraph make_cycle(int n, double beta, double J, double h) {
    std::vector<Edge> e;
    if (n == 2) {
        e.push_back({0, 1, 2 * J});  // merged parallel pair
    } else if (n > 2) {
        for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, J});
    }
    return finish(n, std::move(e), beta, h);
}

WeightedGraph make_complete(int n, double beta, double J, double h) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.push_back({i, j, J});
    return finish(n, std::move(e), beta, h);
}

WeightedGraph make_grid(int w, int l, double beta, double J, double h) {
    std::vector<Edge> e;
    auto id = [&](int x, int y) { return y * w + x; };
    for (int y = 0; y < l; ++y)
        for (int x = 0; x < w; ++x) {
            if (x + 1 < w) e.push_back({id(x, y), id(x + 1, y), J});
            if (y + 1 < l) e.push_back({id(x, y), id(x, y + 1), J});
        }
    return finish(w * l, std::move(e), beta, h);
}

WeightedGraph make_torus(int w, int l, double beta, double J, double h) {
    std::vector<Edge> e;
    auto id = [&](int x, int y) { return y * w + x; };
    for (int y = 0; y < l; ++y)
        for (int x = 0; x < w; ++x) {
            if (w > 1) e.push_back({id(x, y), id((x + 1) % w, y), J});
            if (l > 1) e.push_back({id(x, y), id(x, (y + 1) % l), J});
        }
    // canonicalize() merges the doubled edges of circumference-2 rings
    return finish(w * l, std::move(e), beta, h);
}

WeightedGraph make_generator(const std::string& desc, double beta, double h) {
    auto colon = desc.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("generator must look like name:params");
    std::string name = desc.substr(0, colon);
    std::string params = desc.substr(colon + 1);
    auto parse_pair = [&]() {
        auto x = params.find('x');
        if (x == std::string::npos)
            throw std::invalid_argument("generator " + name + " needs WxL parameters");
        return std::pair<int, int>{std::stoi(params.substr(0, x)),
                                   std::stoi(params.substr(x + 1))};
    };
    if (name == "path") return make_path(std::stoi(params), beta, 1.0, h);
    if (name == "cycle") return make_cycle(std::stoi(params), beta, 1.0, h);
    if (name == "complete") return make_complete(std::stoi(params), beta, 1.0, h);
    if (name == "grid") {
        auto [w, l] = parse_pair();
        return make_grid(w, l, beta, 1.0, h);
    }
    if (name == "torus") {
        auto [w, l] = parse_pair();
        return make_torus(w, l, beta, 1.0, h);
    }
    throw std::invalid_argument("unknown generator: " + name);
}

}  // namespace isinglab
