#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "triramsey/colorings.hpp"
#include "triramsey/hypergraph.hpp"
#include "triramsey/verify.hpp"

namespace triramsey {

/// The 2-graph on V \ {v} whose edge wx inherits the color of the triple vwx.
struct LinkGraph {
    int center;
    int num_vertices;                       // of the ambient coloring
    std::vector<std::pair<int, int>> red_edges; // pairs wx with vwx red
    bool red(int w, int x) const {
        auto p = std::minmax(w, x);
        return std::binary_search(red_edges.begin(), red_edges.end(),
                                  std::pair<int, int>(p.first, p.second));
    }
};

inline LinkGraph link_graph(const TripleColoring& chi, int v) {
    const int n = chi.num_vertices();
    if (v < 0 || v >= n) throw std::invalid_argument("link_graph: vertex out of range");
    LinkGraph g{v, n, {}};
    for (int x = 1; x < n; ++x) {
        if (x == v) continue;
        for (int w = 0; w < x; ++w) {
            if (w == v) continue;
            if (chi.red(v, w, x)) g.red_edges.push_back({w, x});
        }
    }
    return g;
}

struct ExtractionStep {
    int chosen_vertex = -1;             // halving: the peeled vertex
    std::vector<int> chosen_set;        // the subset recursed into
};

struct ExtractionResult {
    std::vector<int> clique;            // verified blue
    std::vector<ExtractionStep> trace;
};

namespace detail {

inline void verify_blue(const TripleColoring& chi, const std::vector<int>& s,
                        const char* who) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            for (std::size_t k = j + 1; k < s.size(); ++k)
                if (chi.red(s[i], s[j], s[k]))
                    throw std::logic_error(std::string(who) +
                                           ": extracted set contains a red triple");
}

} // namespace detail

/// Halving recursion: peel the smallest vertex v, 2-color the red edges of
/// its link graph (bipartite when every red tight component is tripartite),
/// keep the larger bipartition class plus all red-isolated vertices, and
/// recurse. Returns a verified blue clique of size >= floor(log2(N + 1)).
inline ExtractionResult extract_blue_clique_halving(const TripleColoring& chi) {
    {
        auto report = check_red_components_tripartite(chi);
        if (!report.ok())
            throw std::invalid_argument(
                "extract_blue_clique_halving: a red tight component is not "
                "tripartite");
    }
    ExtractionResult result;
    std::vector<int> vertices(chi.num_vertices());
    for (int i = 0; i < chi.num_vertices(); ++i) vertices[i] = i;

    std::vector<int> current = vertices;
    while (!current.empty()) {
        int v = current.front(); // smallest: current stays sorted
        result.clique.push_back(v);
        if (current.size() <= 1) break;

        // Red edges of the link graph restricted to the current set.
        std::map<int, std::vector<int>> adj;
        for (std::size_t j = 1; j < current.size(); ++j)
            for (std::size_t i = 1; i < j; ++i)
                if (chi.red(v, current[i], current[j])) {
                    adj[current[i]].push_back(current[j]);
                    adj[current[j]].push_back(current[i]);
                }

        // 2-color each red component; keep the larger side (ties to the side
        // holding the smallest vertex). Vertices untouched by red survive.
        std::vector<int> keep;
        std::map<int, int> side;
        for (std::size_t idx = 1; idx < current.size(); ++idx) {
            int start = current[idx];
            if (!adj.count(start)) {
                keep.push_back(start);
                continue;
            }
            if (side.count(start)) continue;
            std::vector<int> stack{start};
            std::vector<int> cls[2];
            side[start] = 0;
            cls[0].push_back(start);
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int w : adj[u]) {
                    auto it = side.find(w);
                    if (it == side.end()) {
                        side[w] = 1 - side[u];
                        cls[side[w]].push_back(w);
                        stack.push_back(w);
                    } else if (it->second == side[u]) {
                        throw std::invalid_argument(
                            "extract_blue_clique_halving: red link graph is not "
                            "bipartite");
                    }
                }
            }
            int pick;
            if (cls[0].size() != cls[1].size())
                pick = cls[0].size() > cls[1].size() ? 0 : 1;
            else
                pick = *std::min_element(cls[0].begin(), cls[0].end()) <
                               *std::min_element(cls[1].begin(), cls[1].end())
                           ? 0
                           : 1;
            keep.insert(keep.end(), cls[pick].begin(), cls[pick].end());
        }
        std::sort(keep.begin(), keep.end());
        result.trace.push_back({v, keep});
        current = std::move(keep);
    }
    std::sort(result.clique.begin(), result.clique.end());
    detail::verify_blue(chi, result.clique, "extract_blue_clique_halving");
    return result;
}

namespace detail {

// One level of the iterated extraction: partition `vertices` so that every
// red edge inside is crossing or internal, padding red-isolated vertices to
// balance the parts, then recurse into the two largest parts.
inline std::vector<int> extract_iterated_level(const TripleColoring& chi,
                                               const std::vector<int>& vertices,
                                               const RecognizerOptions& opts,
                                               std::vector<ExtractionStep>& trace) {
    if (vertices.size() <= 2) return vertices;

    std::vector<Edge> red_edges;
    for (std::size_t k = 2; k < vertices.size(); ++k)
        for (std::size_t j = 1; j < k; ++j)
            for (std::size_t i = 0; i < j; ++i)
                if (chi.red(vertices[i], vertices[j], vertices[k]))
                    red_edges.push_back({vertices[i], vertices[j], vertices[k]});

    std::array<std::vector<int>, 3> parts;
    if (red_edges.empty()) {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            parts[i % 3].push_back(vertices[i]);
    } else {
        std::vector<int> support;
        for (const auto& e : red_edges)
            for (int v : e) support.push_back(v);
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());

        ThreeGraph red(chi.num_vertices(), red_edges);
        RecognizerOptions level_opts = opts;
        level_opts.prefer_balanced = true;
        auto cert = is_iterated_tripartite_on(red, support, level_opts);
        if (!cert)
            throw std::invalid_argument(
                "extract_blue_clique_iterated: red subgraph is not iterated "
                "tripartite");
        parts = cert->root.parts;
        // Pad the remaining vertices to balance part sizes.
        std::vector<bool> in_support(chi.num_vertices(), false);
        for (int v : support) in_support[v] = true;
        for (int v : vertices) {
            if (in_support[v]) continue;
            auto smallest = std::min_element(
                parts.begin(), parts.end(),
                [](const auto& a, const auto& b) { return a.size() < b.size(); });
            smallest->push_back(v);
        }
    }

    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });
    for (auto& p : parts) std::sort(p.begin(), p.end());

    trace.push_back({-1, parts[0]});
    std::vector<int> b1 = extract_iterated_level(chi, parts[0], opts, trace);
    trace.push_back({-1, parts[1]});
    std::vector<int> b2 = extract_iterated_level(chi, parts[1], opts, trace);
    b1.insert(b1.end(), b2.begin(), b2.end());
    return b1;
}

} // namespace detail

/// Two-largest-parts recursion over the iterated-tripartite structure of the
/// red subgraph: triples meeting exactly two parts are blue, so cliques from
/// two parts always join. Size >= 2^floor(log3 N) on balanced certificates.
inline ExtractionResult extract_blue_clique_iterated(const TripleColoring& chi,
                                                     RecognizerOptions opts = {}) {
    ExtractionResult result;
    std::vector<int> vertices(chi.num_vertices());
    for (int i = 0; i < chi.num_vertices(); ++i) vertices[i] = i;
    result.clique = detail::extract_iterated_level(chi, vertices, opts, result.trace);
    std::sort(result.clique.begin(), result.clique.end());
    detail::verify_blue(chi, result.clique, "extract_blue_clique_iterated");
    return result;
}

} // namespace triramsey
