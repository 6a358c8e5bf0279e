#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "triramsey/colorings.hpp"
#include "triramsey/hypergraph.hpp"
#include "triramsey/rng.hpp"
#include "triramsey/tree.hpp"
#include "triramsey/trifference.hpp"

namespace triramsey {

struct Violation {
    std::string what;
    std::vector<int> witness;
};

struct CheckReport {
    std::string check;
    std::vector<std::string> parameters;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// The red triples of a coloring as a 3-graph on the same vertex set.
inline ThreeGraph red_subgraph(const TripleColoring& chi) {
    const int n = chi.num_vertices();
    std::vector<Edge> edges;
    std::int64_t rank = 0;
    const auto& bits = chi.raw();
    for (int c = 2; c < n; ++c)
        for (int b = 1; b < c; ++b)
            for (int a = 0; a < b; ++a, ++rank)
                if ((bits[rank >> 6] >> (rank & 63)) & 1)
                    edges.push_back({a, b, c});
    return ThreeGraph(n, std::move(edges));
}

struct RedComponentInfo {
    std::vector<int> support;
    std::optional<Tripartition> tripartition;
};

struct RedStructureReport {
    std::vector<RedComponentInfo> components;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Decompose the red subgraph into tight components and run the forced
/// tripartition on each; any component with no tripartition is a violation.
inline RedStructureReport check_red_components_tripartite(const TripleColoring& chi) {
    RedStructureReport report;
    ThreeGraph red = red_subgraph(chi);
    auto dec = tight_components(red);
    for (std::size_t ci = 0; ci < dec.components.size(); ++ci) {
        std::vector<Edge> comp_edges;
        for (int ei : dec.components[ci]) comp_edges.push_back(red.edges()[ei]);
        ThreeGraph comp(red.num_vertices(), comp_edges);
        RedComponentInfo info;
        info.support = dec.vertex_supports[ci];
        info.tripartition = forced_tripartition(comp);
        if (!info.tripartition)
            report.violations.push_back(
                {"red tight component admits no tripartition", info.support});
        report.components.push_back(std::move(info));
    }
    return report;
}

/// Phi(e) = {phi of the three pairs of e} must be constant across each red
/// tight component. With cross_part_law (Theorem-5 style instances), also
/// check phi(uv) = c^(k) for u, v in distinct parts i, j of the component's
/// tripartition, over all such pairs.
inline CheckReport check_phi_constancy(const TripleColoring& chi,
                                       const PairColoring& phi,
                                       bool cross_part_law = false) {
    if (chi.num_vertices() != phi.num_vertices())
        throw std::invalid_argument("check_phi_constancy: vertex count mismatch");
    CheckReport report;
    report.check = "phi-constancy";
    ThreeGraph red = red_subgraph(chi);
    auto dec = tight_components(red);
    for (std::size_t ci = 0; ci < dec.components.size(); ++ci) {
        const auto& comp = dec.components[ci];
        auto phi_set = [&](const Edge& e) {
            std::array<std::uint32_t, 3> s{phi.color(e[0], e[1]), phi.color(e[1], e[2]),
                                           phi.color(e[0], e[2])};
            std::sort(s.begin(), s.end());
            return s;
        };
        auto ref = phi_set(red.edges()[comp[0]]);
        for (std::size_t k = 1; k < comp.size(); ++k) {
            const auto& e = red.edges()[comp[k]];
            if (phi_set(e) != ref) {
                report.violations.push_back(
                    {"Phi differs across edges of a red tight component",
                     {e[0], e[1], e[2]}});
            }
        }
        if (cross_part_law && report.violations.empty()) {
            std::vector<Edge> comp_edges;
            for (int ei : comp) comp_edges.push_back(red.edges()[ei]);
            ThreeGraph comp_graph(red.num_vertices(), comp_edges);
            auto tp = forced_tripartition(comp_graph);
            if (!tp) {
                report.violations.push_back(
                    {"component not tripartite", dec.vertex_supports[ci]});
                continue;
            }
            // c^(k) from a seed edge: the pair avoiding part k carries it.
            const auto& seed = comp_edges[0];
            std::uint32_t c_of_part[4] = {0, 0, 0, 0};
            c_of_part[tp->part_of.at(seed[2])] = phi.color(seed[0], seed[1]);
            c_of_part[tp->part_of.at(seed[0])] = phi.color(seed[1], seed[2]);
            c_of_part[tp->part_of.at(seed[1])] = phi.color(seed[0], seed[2]);
            const auto& support = dec.vertex_supports[ci];
            for (std::size_t a = 0; a < support.size(); ++a)
                for (std::size_t b = a + 1; b < support.size(); ++b) {
                    int u = support[a], v = support[b];
                    int pu = tp->part_of.at(u), pv = tp->part_of.at(v);
                    if (pu == pv) continue;
                    int k = 6 - pu - pv;
                    if (phi.color(u, v) != c_of_part[k])
                        report.violations.push_back(
                            {"cross-part pair color differs from the component color",
                             {u, v}});
                }
        }
    }
    return report;
}

struct PairwiseUnionOptions {
    int max_components = 64;
    RecognizerOptions recognizer;
};

/// Every red subgraph with at most two tight components must be iterated
/// tripartite: run the recognizer on each component and on each pairwise
/// union, restricted to its vertex support.
inline CheckReport check_pairwise_unions_iterated(const TripleColoring& chi,
                                                  PairwiseUnionOptions opts = {}) {
    CheckReport report;
    report.check = "pairwise-iterated";
    ThreeGraph red = red_subgraph(chi);
    auto dec = tight_components(red);
    const int nc = static_cast<int>(dec.components.size());
    if (nc > opts.max_components)
        throw std::invalid_argument(
            "check_pairwise_unions_iterated: too many red tight components");
    auto run = [&](const std::vector<int>& edge_ids, std::vector<int> support) {
        std::vector<Edge> es;
        for (int ei : edge_ids) es.push_back(red.edges()[ei]);
        ThreeGraph g(red.num_vertices(), es);
        auto cert = is_iterated_tripartite_on(g, support, opts.recognizer);
        if (!cert)
            report.violations.push_back(
                {"red component union not iterated tripartite", support});
    };
    for (int i = 0; i < nc; ++i) run(dec.components[i], dec.vertex_supports[i]);
    for (int i = 0; i < nc; ++i)
        for (int j = i + 1; j < nc; ++j) {
            std::vector<int> edge_ids = dec.components[i];
            edge_ids.insert(edge_ids.end(), dec.components[j].begin(),
                            dec.components[j].end());
            std::vector<int> support = dec.vertex_supports[i];
            support.insert(support.end(), dec.vertex_supports[j].begin(),
                           dec.vertex_supports[j].end());
            std::sort(support.begin(), support.end());
            support.erase(std::unique(support.begin(), support.end()), support.end());
            run(edge_ids, support);
        }
    return report;
}

struct BlueCliqueOptions {
    int exact_bound = 64;       // refuse larger instances without a size limit
    int size_limit = 0;         // 0 = unlimited
};

/// Branch and bound over vertex sets with every internal triple blue. A
/// vertex extends the current clique only if it forms a blue triple with
/// every pair already inside.
inline std::pair<int, std::vector<int>> max_blue_clique_exact(
    const TripleColoring& chi, BlueCliqueOptions opts = {}) {
    const int n = chi.num_vertices();
    if (n > opts.exact_bound && opts.size_limit == 0)
        throw std::invalid_argument(
            "max_blue_clique_exact: instance above the exact-search bound; set a "
            "size limit");
    std::vector<int> best, current;
    // Sets of size <= 2 contain no triples and are vacuously blue.
    if (n >= 1) best = {0};
    if (n >= 2) best = {0, 1};

    std::function<void(int, std::vector<int>&)> extend =
        [&](int, std::vector<int>& cand) {
            if (opts.size_limit && static_cast<int>(best.size()) >= opts.size_limit)
                return;
            if (current.size() + cand.size() <= best.size()) return;
            for (std::size_t i = 0; i < cand.size(); ++i) {
                if (current.size() + (cand.size() - i) <= best.size()) return;
                int v = cand[i];
                std::vector<int> next;
                for (std::size_t j = i + 1; j < cand.size(); ++j) {
                    int w = cand[j];
                    bool ok = true;
                    for (int q : current)
                        if (chi.red(q, v, w)) { ok = false; break; }
                    if (ok) next.push_back(w);
                }
                current.push_back(v);
                if (current.size() > best.size()) best = current;
                extend(0, next);
                current.pop_back();
                if (opts.size_limit && static_cast<int>(best.size()) >= opts.size_limit)
                    return;
            }
        };
    std::vector<int> cand(n);
    for (int i = 0; i < n; ++i) cand[i] = i;
    // Candidates after picking v must stay blue with every pair of the
    // current clique; pairs within the candidate set are filtered when their
    // second member is picked.
    extend(0, cand);
    std::sort(best.begin(), best.end());
    return {static_cast<int>(best.size()), best};
}

/// Randomized greedy extension with restarts; the result is always a
/// verified blue clique, so it lower-bounds the exact maximum.
inline std::pair<int, std::vector<int>> greedy_blue_clique(const TripleColoring& chi,
                                                           int restarts,
                                                           std::uint64_t seed) {
    const int n = chi.num_vertices();
    SplitMix64 rng = substream(seed, "greedy-clique");
    std::vector<int> best;
    for (int it = 0; it < std::max(1, restarts); ++it) {
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.next_below(i + 1)]);
        std::vector<int> clique;
        for (int v : perm) {
            bool ok = true;
            for (std::size_t a = 0; a < clique.size() && ok; ++a)
                for (std::size_t b = a + 1; b < clique.size(); ++b)
                    if (chi.red(clique[a], clique[b], v)) { ok = false; break; }
            if (ok) clique.push_back(v);
        }
        if (clique.size() > best.size()) best = clique;
    }
    std::sort(best.begin(), best.end());
    return {static_cast<int>(best.size()), best};
}

/// Each color class must be a vertex-disjoint union of complete bipartite
/// graphs: 2-color every connected component and demand all cross pairs.
inline CheckReport check_biclique_structure(const PairColoring& pc) {
    CheckReport report;
    report.check = "biclique";
    const int n = pc.num_vertices();
    std::map<std::uint32_t, std::vector<std::pair<int, int>>> classes;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) classes[pc.color(u, v)].push_back({u, v});

    for (const auto& [color, edges] : classes) {
        std::map<int, std::vector<int>> adj;
        std::set<std::pair<int, int>> edge_set(edges.begin(), edges.end());
        for (auto [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        std::map<int, int> side; // 0 / 1 within the component being explored
        for (const auto& [start, nbrs] : adj) {
            (void)nbrs;
            if (side.count(start)) continue;
            std::vector<int> stack{start}, comp{start};
            side[start] = 0;
            bool odd_cycle = false;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int v : adj[u]) {
                    auto it = side.find(v);
                    if (it == side.end()) {
                        side[v] = 1 - side[u];
                        comp.push_back(v);
                        stack.push_back(v);
                    } else if (it->second == side[u]) {
                        odd_cycle = true;
                        report.violations.push_back(
                            {"color class contains an odd cycle (color " +
                                 std::to_string(color) + ")",
                             {u, v}});
                    }
                }
            }
            if (odd_cycle) continue;
            std::vector<int> left, right;
            for (int v : comp) (side[v] == 0 ? left : right).push_back(v);
            for (int l : left)
                for (int r : right) {
                    auto p = std::minmax(l, r);
                    if (!edge_set.count({p.first, p.second}))
                        report.violations.push_back(
                            {"biclique component missing a cross pair (color " +
                                 std::to_string(color) + ")",
                             {l, r}});
                }
        }
    }
    return report;
}

/// Triples of S whose three pair colors are pairwise distinct.
inline std::int64_t count_rainbow_triangles(const PairColoring& pc,
                                            const std::vector<int>& s) {
    std::int64_t count = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            for (std::size_t k = j + 1; k < s.size(); ++k) {
                std::uint32_t a = pc.color(s[i], s[j]);
                std::uint32_t b = pc.color(s[j], s[k]);
                std::uint32_t c = pc.color(s[i], s[k]);
                if (a != b && b != c && a != c) ++count;
            }
    return count;
}

/// Greedy maximal edge-disjoint set of rainbow triangles in S, scanning
/// triples in colex order on the sorted subset.
inline std::vector<std::array<int, 3>> edge_disjoint_rainbow_packing(
    const PairColoring& pc, const std::vector<int>& s_in) {
    std::vector<int> s = s_in;
    std::sort(s.begin(), s.end());
    std::set<std::pair<int, int>> used;
    std::vector<std::array<int, 3>> packing;
    auto pair_of = [](int a, int b) { return std::minmax(a, b); };
    for (std::size_t k = 2; k < s.size(); ++k)
        for (std::size_t j = 1; j < k; ++j)
            for (std::size_t i = 0; i < j; ++i) {
                int u = s[i], v = s[j], w = s[k];
                std::uint32_t a = pc.color(u, v), b = pc.color(v, w), c = pc.color(u, w);
                if (a == b || b == c || a == c) continue;
                if (used.count(pair_of(u, v)) || used.count(pair_of(v, w)) ||
                    used.count(pair_of(u, w)))
                    continue;
                used.insert(pair_of(u, v));
                used.insert(pair_of(v, w));
                used.insert(pair_of(u, w));
                packing.push_back({u, v, w});
            }
    return packing;
}

/// Exact probability that the triangle uvw is phi-monochromatic:
/// |c(uv) ∩ c(vw) ∩ c(uw)| / (|c(uv)| |c(vw)| |c(uw)|).
inline Rat mono_triangle_probability(const TrifferenceCode& code, int u, int v, int w) {
    if (u == v || v == w || u == w)
        throw std::invalid_argument("mono_triangle_probability: distinct words required");
    auto cuv = difference_set(code.word(u), code.word(v));
    auto cvw = difference_set(code.word(v), code.word(w));
    auto cuw = difference_set(code.word(u), code.word(w));
    std::vector<int> tmp, inter;
    std::set_intersection(cuv.begin(), cuv.end(), cvw.begin(), cvw.end(),
                          std::back_inserter(tmp));
    std::set_intersection(tmp.begin(), tmp.end(), cuw.begin(), cuw.end(),
                          std::back_inserter(inter));
    Rat denom = Rat(cuv.size()) * Rat(cvw.size()) * Rat(cuw.size());
    return Rat(inter.size()) / denom;
}

/// Exact expected number of phi-monochromatic triangles within S.
inline Rat expected_mono_triangles(const TrifferenceCode& code,
                                   const std::vector<int>& s) {
    Rat total = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            for (std::size_t k = j + 1; k < s.size(); ++k)
                total += mono_triangle_probability(code, s[i], s[j], s[k]);
    return total;
}

} // namespace triramsey
