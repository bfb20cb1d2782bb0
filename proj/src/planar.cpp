#include "isinglab/planar.hpp"

#include <algorithm>

namespace isinglab {

std::vector<int> grid_boundary_ccw(int w, int l) {
    auto id = [&](int x, int y) { return y * w + x; };
    std::vector<int> cycle;
    if (w == 1 && l == 1) return {0};
    for (int x = 0; x < w; ++x) cycle.push_back(id(x, 0));
    for (int y = 1; y < l; ++y) cycle.push_back(id(w - 1, y));
    if (l > 1)
        for (int x = w - 2; x >= 0; --x) cycle.push_back(id(x, l - 1));
    if (w > 1)
        for (int y = l - 2; y >= 1; --y) cycle.push_back(id(0, y));
    return cycle;
}

void validate_boundary_ccw(int w, int l, const std::vector<int>& xs) {
    auto cycle = grid_boundary_ccw(w, l);
    std::vector<int> pos;
    for (int x : xs) {
        auto it = std::find(cycle.begin(), cycle.end(), x);
        if (it == cycle.end())
            throw std::domain_error("vertex " + std::to_string(x) +
                                    " is not on the grid boundary");
        pos.push_back((int)(it - cycle.begin()));
    }
    std::vector<int> sorted = pos;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::domain_error("boundary vertices must be distinct");
    // cyclic rotation of the sorted positions
    auto min_it = std::min_element(pos.begin(), pos.end());
    std::vector<int> rotated(pos.size());
    std::rotate_copy(pos.begin(), min_it, pos.end(), rotated.begin());
    if (!std::is_sorted(rotated.begin(), rotated.end()))
        throw std::domain_error("boundary vertices are not in ccw order");
}

namespace {

void validate_grid_model(const WeightedGraph& g, int w, int l, size_t npts) {
    if (g.num_vertices() != w * l)
        throw std::domain_error("graph is not a " + std::to_string(w) + "x" +
                                std::to_string(l) + " grid");
    if (g.has_ghost() || g.field() != 0.0)
        throw std::domain_error("boundary Wick identities require h = 0");
    if (npts % 2 != 0 || npts < 2 || npts > 8)
        throw std::domain_error("need an even number (2..8) of boundary vertices");
}

}  // namespace

std::vector<std::pair<std::vector<std::pair<int, int>>, int>> signed_pairings(int n) {
    std::vector<std::pair<std::vector<std::pair<int, int>>, int>> out;
    std::vector<std::pair<int, int>> current;
    std::vector<char> used(2 * n, 0);
    auto rec = [&](auto&& self) -> void {
        int a = -1;
        for (int i = 0; i < 2 * n; ++i)
            if (!used[i]) {
                a = i;
                break;
            }
        if (a < 0) {
            int crossings = 0;
            for (size_t i = 0; i < current.size(); ++i)
                for (size_t j = i + 1; j < current.size(); ++j) {
                    auto [p, q] = current[i];
                    auto [r, s] = current[j];
                    if (p > r) std::swap(p, r), std::swap(q, s);
                    if (r < q && q < s) ++crossings;
                }
            out.emplace_back(current, crossings % 2 == 0 ? 1 : -1);
            return;
        }
        used[a] = 1;
        for (int b = a + 1; b < 2 * n; ++b) {
            if (used[b]) continue;
            used[b] = 1;
            current.emplace_back(a, b);
            self(self);
            current.pop_back();
            used[b] = 0;
        }
        used[a] = 0;
    };
    rec(rec);
    return out;
}

LhsRhs fermionic_wick_2n(const WeightedGraph& g, int w, int l,
                         const std::vector<int>& xs) {
    validate_grid_model(g, w, l, xs.size());
    validate_boundary_ccw(w, l, xs);
    const int n = (int)xs.size() / 2;
    VertexSet all = 0;
    for (int x : xs) all ^= 1u << x;
    LhsRhs out;
    out.lhs = corr_spin(g, all);
    for (const auto& [pairs, sign] : signed_pairings(n)) {
        double term = sign;
        for (auto [a, b] : pairs)
            term *= corr_spin(g, (1u << xs[a]) ^ (1u << xs[b]));
        out.rhs += term;
    }
    return out;
}

LhsRhs boundary_wick4(const WeightedGraph& g, int w, int l,
                      const std::vector<int>& xs) {
    if (xs.size() != 4)
        throw std::domain_error("boundary_wick4 needs exactly four vertices");
    return fermionic_wick_2n(g, w, l, xs);
}

}  // namespace isinglab
