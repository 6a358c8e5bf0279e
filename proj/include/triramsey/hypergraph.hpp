#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace triramsey {

using Edge = std::array<int, 3>; // always stored sorted ascending

inline Edge make_edge(int a, int b, int c) {
    Edge e{a, b, c};
    std::sort(e.begin(), e.end());
    if (e[0] == e[1] || e[1] == e[2])
        throw std::invalid_argument("edge vertices must be distinct");
    return e;
}

/// A 3-uniform hypergraph on dense 0-based vertices with canonical
/// sorted-triple edge storage.
class ThreeGraph {
public:
    ThreeGraph() = default;

    ThreeGraph(int num_vertices, std::vector<Edge> edges)
        : n_(num_vertices), edges_(std::move(edges)) {
        if (n_ < 0) throw std::invalid_argument("negative vertex count");
        for (auto& e : edges_) {
            std::sort(e.begin(), e.end());
            if (e[0] == e[1] || e[1] == e[2])
                throw std::invalid_argument("edge vertices must be distinct");
            if (e[0] < 0 || e[2] >= n_)
                throw std::invalid_argument("edge vertex out of range");
        }
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    }

    static ThreeGraph complete(int n) {
        std::vector<Edge> es;
        for (int c = 2; c < n; ++c)
            for (int b = 1; b < c; ++b)
                for (int a = 0; a < b; ++a) es.push_back({a, b, c});
        return ThreeGraph(n, std::move(es));
    }

    int num_vertices() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t num_edges() const { return edges_.size(); }

    bool has_edge(int a, int b, int c) const {
        Edge e = make_edge(a, b, c);
        return std::binary_search(edges_.begin(), edges_.end(), e);
    }

    /// Induced subgraph on a vertex subset, keeping original vertex ids.
    ThreeGraph induced(const std::vector<int>& vertices) const {
        std::vector<bool> in(n_, false);
        for (int v : vertices) in[v] = true;
        std::vector<Edge> es;
        for (const auto& e : edges_)
            if (in[e[0]] && in[e[1]] && in[e[2]]) es.push_back(e);
        return ThreeGraph(n_, std::move(es));
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

struct TightComponentDecomposition {
    // Edge indices into the graph's edge list, one vector per component.
    std::vector<std::vector<int>> components;
    // Vertices covered by each component, sorted.
    std::vector<std::vector<int>> vertex_supports;
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }
    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::vector<int> parent_;
};

} // namespace detail

/// Decompose the edge set into tight components: maximal edge sets where any
/// two edges are joined by a chain of edges, consecutive ones sharing two
/// vertices. Empty graph gives an empty decomposition.
inline TightComponentDecomposition tight_components(const ThreeGraph& h) {
    const auto& es = h.edges();
    const int m = static_cast<int>(es.size());
    detail::UnionFind uf(m);
    // Edges sharing a pair of vertices are tight-adjacent; index by pair.
    std::map<std::pair<int, int>, int> last_with_pair;
    for (int i = 0; i < m; ++i) {
        const auto& e = es[i];
        const std::pair<int, int> pairs[3] = {
            {e[0], e[1]}, {e[0], e[2]}, {e[1], e[2]}};
        for (const auto& p : pairs) {
            auto [it, inserted] = last_with_pair.try_emplace(p, i);
            if (!inserted) uf.unite(i, it->second);
        }
    }
    std::map<int, int> root_to_comp;
    TightComponentDecomposition dec;
    for (int i = 0; i < m; ++i) {
        int r = uf.find(i);
        auto [it, inserted] =
            root_to_comp.try_emplace(r, static_cast<int>(dec.components.size()));
        if (inserted) dec.components.emplace_back();
        dec.components[it->second].push_back(i);
    }
    for (const auto& comp : dec.components) {
        std::vector<int> support;
        for (int i : comp)
            for (int v : es[i]) support.push_back(v);
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
        dec.vertex_supports.push_back(std::move(support));
    }
    return dec;
}

/// Edgeless graphs are not tightly connected by convention.
inline bool is_tightly_connected(const ThreeGraph& h) {
    return tight_components(h).components.size() == 1;
}

/// Vertex labels in {1,2,3}; defined on the vertices covered by edges.
struct Tripartition {
    std::map<int, int> part_of;
};

/// For a tightly connected component, the tripartition is forced: seed one
/// edge with labels 1,2,3 and propagate across edges sharing two vertices
/// (the new vertex inherits the label of the replaced one). Returns absent
/// if propagation contradicts itself or some edge is not rainbow-labeled.
inline std::optional<Tripartition> forced_tripartition(const ThreeGraph& component) {
    if (component.num_edges() == 0)
        throw std::invalid_argument("forced_tripartition: component has no edges");
    if (!is_tightly_connected(component))
        throw std::invalid_argument("forced_tripartition: input not tightly connected");

    const auto& es = component.edges();
    Tripartition tp;
    const auto& seed = es[0];
    tp.part_of[seed[0]] = 1;
    tp.part_of[seed[1]] = 2;
    tp.part_of[seed[2]] = 3;

    // Propagate until no edge adds a label. The component is tightly
    // connected, so every edge is eventually reached.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& e : es) {
            int known = 0, unknown_v = -1;
            int used = 0; // bitmask of labels seen
            for (int v : e) {
                auto it = tp.part_of.find(v);
                if (it != tp.part_of.end()) {
                    ++known;
                    used |= 1 << it->second;
                } else {
                    unknown_v = v;
                }
            }
            if (known == 2) {
                int missing = (0b1110 ^ used);
                // missing has exactly one bit set unless two known labels
                // coincide; that conflict surfaces in the verify pass.
                if (missing == 0b0010 || missing == 0b0100 || missing == 0b1000) {
                    tp.part_of[unknown_v] = missing == 0b0010 ? 1 : missing == 0b0100 ? 2 : 3;
                    changed = true;
                }
            }
        }
    }

    for (const auto& e : es) {
        int used = 0;
        for (int v : e) {
            auto it = tp.part_of.find(v);
            if (it == tp.part_of.end()) return std::nullopt;
            used |= 1 << it->second;
        }
        if (used != 0b1110) return std::nullopt;
    }
    return tp;
}

/// Recursive witness that a graph embeds in an iterated blowup of an edge.
/// Leaves cover <= 2 vertices or edgeless sets; internal nodes carry a 3-way
/// partition where every inside edge is crossing or internal to one part.
struct IteratedTripartiteCertificate {
    struct Node {
        std::vector<int> vertices;               // sorted
        std::array<std::vector<int>, 3> parts;   // empty for leaves
        std::vector<Node> children;              // one per part, internal only
        bool is_leaf() const { return children.empty(); }
    };
    Node root;
};

struct RecognizerOptions {
    int max_vertices = 15;   // exponential search guard
    bool prefer_balanced = false; // balanced thirds on edgeless levels
};

namespace detail {

// Backtracking over 3-labelings of `verts` with canonical symmetry breaking:
// a vertex may open part p only if parts < p are already open. Every edge is
// checked once its last vertex is labeled: all-distinct or all-equal parts.
inline bool iterated_partition_search(
    const std::vector<int>& verts, const std::vector<Edge>& edges,
    const RecognizerOptions& opts, IteratedTripartiteCertificate::Node& out);

inline bool iterated_node(const std::vector<int>& verts,
                          const std::vector<Edge>& edges,
                          const RecognizerOptions& opts,
                          IteratedTripartiteCertificate::Node& out) {
    out = {};
    out.vertices = verts;
    if (verts.size() <= 2 || edges.empty()) {
        if (!edges.empty()) return false; // cannot happen: an edge needs 3 vertices
        if (opts.prefer_balanced && verts.size() >= 3) {
            // Edgeless: any partition works; split into near-equal thirds so
            // downstream consumers that depend on balance get it.
            const std::size_t k = verts.size();
            std::array<std::vector<int>, 3> parts;
            for (std::size_t i = 0; i < k; ++i)
                parts[i % 3].push_back(verts[i]);
            for (auto& p : parts) std::sort(p.begin(), p.end());
            out.parts = parts;
            out.children.resize(3);
            for (int p = 0; p < 3; ++p)
                iterated_node(parts[p], {}, opts, out.children[p]);
        }
        return true;
    }
    return iterated_partition_search(verts, edges, opts, out);
}

inline bool iterated_partition_search(
    const std::vector<int>& verts, const std::vector<Edge>& edges,
    const RecognizerOptions& opts, IteratedTripartiteCertificate::Node& out) {
    const int k = static_cast<int>(verts.size());
    std::map<int, int> pos;
    for (int i = 0; i < k; ++i) pos[verts[i]] = i;
    // Edges whose last (by assignment order) vertex is i.
    std::vector<std::vector<int>> edges_closing_at(k);
    for (std::size_t ei = 0; ei < edges.size(); ++ei) {
        int last = std::max({pos[edges[ei][0]], pos[edges[ei][1]], pos[edges[ei][2]]});
        edges_closing_at[last].push_back(static_cast<int>(ei));
    }

    std::vector<int> label(k, -1);
    std::function<bool(int, int)> assign = [&](int i, int max_used) -> bool {
        if (i == k) {
            std::array<std::vector<int>, 3> parts;
            for (int j = 0; j < k; ++j) parts[label[j]].push_back(verts[j]);
            if (parts[1].empty() || parts[2].empty()) return false;
            out.parts = parts;
            out.children.assign(3, {});
            for (int p = 0; p < 3; ++p) {
                std::vector<Edge> inner;
                std::vector<bool> in(parts[p].empty() ? 0 : parts[p].back() + 1, false);
                for (int v : parts[p]) in[v] = true;
                for (const auto& e : edges) {
                    bool all = true;
                    for (int v : e)
                        if (v >= static_cast<int>(in.size()) || !in[v]) all = false;
                    if (all) inner.push_back(e);
                }
                if (!iterated_node(parts[p], inner, opts, out.children[p]))
                    return false;
            }
            return true;
        }
        int limit = std::min(max_used + 1, 2);
        for (int p = 0; p <= limit; ++p) {
            label[i] = p;
            bool ok = true;
            for (int ei : edges_closing_at[i]) {
                int a = label[pos[edges[ei][0]]];
                int b = label[pos[edges[ei][1]]];
                int c = label[pos[edges[ei][2]]];
                bool all_same = (a == b && b == c);
                bool all_diff = (a != b && b != c && a != c);
                if (!all_same && !all_diff) { ok = false; break; }
            }
            if (ok && assign(i + 1, std::max(max_used, p))) return true;
        }
        label[i] = -1;
        return false;
    };
    return assign(0, -1);
}

} // namespace detail

/// Certificate iff H is contained in an iterated blowup of an edge.
/// Backtracking over recursive 3-partitions; exponential, guarded by
/// opts.max_vertices.
inline std::optional<IteratedTripartiteCertificate>
is_iterated_tripartite(const ThreeGraph& h, RecognizerOptions opts = {}) {
    std::vector<int> verts(h.num_vertices());
    for (int i = 0; i < h.num_vertices(); ++i) verts[i] = i;
    if (h.num_vertices() > opts.max_vertices)
        throw std::invalid_argument(
            "is_iterated_tripartite: graph too large for exhaustive recognition "
            "(raise the vertex bound to opt in)");
    IteratedTripartiteCertificate cert;
    if (detail::iterated_node(verts, h.edges(), opts, cert.root))
        return cert;
    return std::nullopt;
}

/// Recognizer restricted to a vertex subset (edges induced).
inline std::optional<IteratedTripartiteCertificate>
is_iterated_tripartite_on(const ThreeGraph& h, const std::vector<int>& vertices,
                          RecognizerOptions opts = {}) {
    if (vertices.size() > static_cast<std::size_t>(opts.max_vertices))
        throw std::invalid_argument(
            "is_iterated_tripartite: vertex set too large for exhaustive "
            "recognition (raise the vertex bound to opt in)");
    std::vector<int> verts = vertices;
    std::sort(verts.begin(), verts.end());
    std::vector<bool> in(h.num_vertices(), false);
    for (int v : verts) in[v] = true;
    std::vector<Edge> inner;
    for (const auto& e : h.edges())
        if (in[e[0]] && in[e[1]] && in[e[2]]) inner.push_back(e);
    IteratedTripartiteCertificate cert;
    if (detail::iterated_node(verts, inner, opts, cert.root))
        return cert;
    return std::nullopt;
}

/// t(s): maximum edge count of an iterated tripartite 3-graph on s vertices.
/// t(1) = t(2) = 0; t(s) = max over a+b+c=s of a*b*c + t(a) + t(b) + t(c).
inline std::int64_t max_iterated_tripartite_edges(int s) {
    if (s < 1) throw std::invalid_argument("s must be positive");
    static thread_local std::vector<std::int64_t> memo{0, 0, 0}; // t(0) unused
    while (static_cast<int>(memo.size()) <= s) {
        int t = static_cast<int>(memo.size());
        std::int64_t best = 0;
        for (int a = 1; a <= t - 2; ++a)
            for (int b = a; a + b <= t - 1; ++b) {
                int c = t - a - b;
                if (c < b) break;
                best = std::max(best, static_cast<std::int64_t>(a) * b * c +
                                          memo[a] + memo[b] + memo[c]);
            }
        memo.push_back(best);
    }
    return memo[s];
}

/// Backtracking subhypergraph embedding: find an injective map from V(H)
/// into [0, n) under which every edge of H satisfies `red`. Vertices of H are
/// ordered greedily by connectivity to the already-placed prefix.
template <class RedFn>
std::optional<std::vector<int>> find_red_embedding(int n, RedFn&& red,
                                                   const ThreeGraph& h,
                                                   RecognizerOptions opts = {}) {
    const int k = h.num_vertices();
    if (k > opts.max_vertices)
        throw std::invalid_argument("find_red_embedding: pattern too large");
    if (k > n) return std::nullopt;

    // Order: start at a max-degree vertex, then always pick the vertex with
    // the most edges into the placed prefix (degeneracy-style).
    std::vector<int> degree(k, 0);
    for (const auto& e : h.edges())
        for (int v : e) ++degree[v];
    std::vector<int> order;
    std::vector<bool> placed(k, false);
    for (int step = 0; step < k; ++step) {
        int best = -1, best_score = -1;
        for (int v = 0; v < k; ++v) {
            if (placed[v]) continue;
            int score = 0;
            for (const auto& e : h.edges()) {
                bool has_v = e[0] == v || e[1] == v || e[2] == v;
                if (!has_v) continue;
                int in_prefix = 0;
                for (int w : e)
                    if (w != v && placed[w]) ++in_prefix;
                score += in_prefix;
            }
            score = score * (k + 1) + degree[v];
            if (score > best_score) { best_score = score; best = v; }
        }
        placed[best] = true;
        order.push_back(best);
    }
    std::vector<int> rank(k);
    for (int i = 0; i < k; ++i) rank[order[i]] = i;
    std::vector<std::vector<Edge>> closing_at(k);
    for (const auto& e : h.edges()) {
        int last = std::max({rank[e[0]], rank[e[1]], rank[e[2]]});
        closing_at[last].push_back(e);
    }

    std::vector<int> image(k, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> place = [&](int i) -> bool {
        if (i == k) return true;
        int v = order[i];
        for (int target = 0; target < n; ++target) {
            if (used[target]) continue;
            image[v] = target;
            bool ok = true;
            for (const auto& e : closing_at[i])
                if (!red(image[e[0]], image[e[1]], image[e[2]])) { ok = false; break; }
            if (ok) {
                used[target] = true;
                if (place(i + 1)) return true;
                used[target] = false;
            }
        }
        image[v] = -1;
        return false;
    };
    if (place(0)) return image;
    return std::nullopt;
}

} // namespace triramsey
