#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace triramsey {

using Rat = boost::multiprecision::cpp_rational;

/// Rooted binary tree with cached per-node leaf counts n_v and LCA triple
/// counts m_v = n_x * n_y * (n_x + n_y - 2) / 2 for children x, y. Internal
/// nodes carry weight n_v - 2. Value semantics throughout; rotate returns a
/// new tree.
struct BinaryTree {
    struct Node {
        int left = -1, right = -1;
        int leaf_id = -1;          // >= 0 for leaves
        std::int64_t n = 1;        // leaves under this node
        std::int64_t m = 0;        // triples of leaves with LCA here
        bool is_leaf() const { return left < 0; }
    };

    std::vector<Node> nodes;
    int root = -1;

    std::int64_t leaf_count() const { return nodes[root].n; }
    std::int64_t weight(int v) const {
        return nodes[v].is_leaf() ? 0 : nodes[v].n - 2;
    }

    int add_leaf(int leaf_id) {
        Node nd;
        nd.leaf_id = leaf_id;
        nodes.push_back(nd);
        return static_cast<int>(nodes.size()) - 1;
    }
    int add_internal(int left, int right) {
        Node nd;
        nd.left = left;
        nd.right = right;
        nodes.push_back(nd);
        recompute(static_cast<int>(nodes.size()) - 1);
        return static_cast<int>(nodes.size()) - 1;
    }

    void recompute(int v) {
        Node& nd = nodes[v];
        if (nd.is_leaf()) {
            nd.n = 1;
            nd.m = 0;
            return;
        }
        std::int64_t nx = nodes[nd.left].n, ny = nodes[nd.right].n;
        nd.n = nx + ny;
        nd.m = nx * ny * (nx + ny - 2) / 2;
    }

    void recompute_all() { recompute_rec(root); }

    /// Internal node indices in preorder (root first, left before right).
    std::vector<int> internal_preorder() const {
        std::vector<int> out, stack{root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (nodes[v].is_leaf()) continue;
            out.push_back(v);
            stack.push_back(nodes[v].right);
            stack.push_back(nodes[v].left);
        }
        return out;
    }

    std::vector<int> leaves_preorder() const {
        std::vector<int> out, stack{root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (nodes[v].is_leaf()) {
                out.push_back(v);
                continue;
            }
            stack.push_back(nodes[v].right);
            stack.push_back(nodes[v].left);
        }
        return out;
    }

    std::int64_t sum_m() const {
        std::int64_t s = 0;
        for (const auto& nd : nodes)
            if (!nd.is_leaf()) s += nd.m;
        return s;
    }

private:
    void recompute_rec(int v) {
        if (nodes[v].is_leaf()) {
            nodes[v].n = 1;
            nodes[v].m = 0;
            return;
        }
        recompute_rec(nodes[v].left);
        recompute_rec(nodes[v].right);
        recompute(v);
    }
};

/// Sum of leaf depths; the termination measure for rotation sequences.
inline std::int64_t d_total(const BinaryTree& t) {
    std::int64_t total = 0;
    std::vector<std::pair<int, int>> stack{{t.root, 0}};
    while (!stack.empty()) {
        auto [v, d] = stack.back();
        stack.pop_back();
        if (t.nodes[v].is_leaf()) {
            total += d;
            continue;
        }
        stack.push_back({t.nodes[v].left, d + 1});
        stack.push_back({t.nodes[v].right, d + 1});
    }
    return total;
}

/// The rotation configuration: u is the parent of v and w, v is the parent
/// of x and y, with n_x > n_w and n_x >= n_y.
struct Imbalance {
    int u, v, w, x, y;
};

namespace detail {

inline void collect_imbalances(const BinaryTree& t, int u, bool first_only,
                               std::vector<Imbalance>& out) {
    const auto& nu = t.nodes[u];
    if (nu.is_leaf()) return;
    // Try both children as v (the grandparent side), both of v's children as x.
    const int cand_v[2] = {nu.left, nu.right};
    const int cand_w[2] = {nu.right, nu.left};
    for (int side = 0; side < 2; ++side) {
        int v = cand_v[side], w = cand_w[side];
        if (t.nodes[v].is_leaf()) continue;
        const int cand_x[2] = {t.nodes[v].left, t.nodes[v].right};
        for (int xi = 0; xi < 2; ++xi) {
            int x = cand_x[xi], y = cand_x[1 - xi];
            if (t.nodes[x].n > t.nodes[w].n && t.nodes[x].n >= t.nodes[y].n) {
                out.push_back({u, v, w, x, y});
                if (first_only) return;
            }
        }
        if (first_only && !out.empty()) return;
    }
    collect_imbalances(t, nu.left, first_only, out);
    if (first_only && !out.empty()) return;
    collect_imbalances(t, nu.right, first_only, out);
}

} // namespace detail

/// First imbalance in deterministic preorder scan, or absent.
inline std::optional<Imbalance> find_imbalance(const BinaryTree& t) {
    std::vector<Imbalance> out;
    detail::collect_imbalances(t, t.root, /*first_only=*/true, out);
    if (out.empty()) return std::nullopt;
    return out.front();
}

inline std::vector<Imbalance> all_imbalances(const BinaryTree& t) {
    std::vector<Imbalance> out;
    detail::collect_imbalances(t, t.root, /*first_only=*/false, out);
    return out;
}

/// Swap the subtree rooted at x with the (smaller) subtree rooted at w.
/// Decreases D_total by exactly n_x - n_w.
inline BinaryTree rotate(const BinaryTree& t, const Imbalance& imb) {
    if (t.nodes[imb.x].n <= t.nodes[imb.w].n ||
        t.nodes[imb.x].n < t.nodes[imb.y].n)
        throw std::invalid_argument("rotate: not an imbalance");
    BinaryTree out = t;
    auto& u = out.nodes[imb.u];
    auto& v = out.nodes[imb.v];
    (u.left == imb.w ? u.left : u.right) = imb.x;
    (v.left == imb.x ? v.left : v.right) = imb.w;
    out.recompute_all();
    return out;
}

/// Rotate imbalances until none remain. Terminates: D_total strictly
/// decreases each step.
inline BinaryTree rotate_to_balance(BinaryTree t) {
    while (auto imb = find_imbalance(t)) t = rotate(t, *imb);
    return t;
}

struct ScoreResult {
    Rat score;
    std::vector<std::pair<int, Rat>> assignment; // (node index, f value)
};

/// nu*_T(W): minimize sum (1 - f(v)) m_v over f : internal -> [0,1] with
/// sum f(v) (n_v - 2) <= W. Separable LP, solved by greedy fractional
/// assignment in decreasing m_v / (n_v - 2); zero-weight nodes get f = 1
/// for free, ratio ties break by preorder index.
inline ScoreResult min_score_given_weight(const BinaryTree& t, const Rat& budget) {
    if (budget < 0) throw std::invalid_argument("min_score_given_weight: W < 0");
    auto internal = t.internal_preorder();
    ScoreResult res;
    res.score = 0;
    std::vector<std::pair<int, int>> weighted; // (preorder position, node)
    for (std::size_t i = 0; i < internal.size(); ++i) {
        int v = internal[i];
        res.score += Rat(t.nodes[v].m);
        if (t.weight(v) == 0)
            res.assignment.push_back({v, Rat(1)});
        else
            weighted.push_back({static_cast<int>(i), v});
    }
    std::stable_sort(weighted.begin(), weighted.end(),
                     [&](const auto& a, const auto& b) {
                         // m/weight descending; ties by preorder position
                         std::int64_t lhs = t.nodes[a.second].m * t.weight(b.second);
                         std::int64_t rhs = t.nodes[b.second].m * t.weight(a.second);
                         if (lhs != rhs) return lhs > rhs;
                         return a.first < b.first;
                     });
    Rat remaining = budget;
    for (auto [pos, v] : weighted) {
        (void)pos;
        Rat w = Rat(t.weight(v));
        Rat f = remaining >= w ? Rat(1) : remaining / w;
        remaining -= f * w;
        res.score -= f * Rat(t.nodes[v].m);
        res.assignment.push_back({v, f});
    }
    return res;
}

/// The budgets where the greedy optimum changes slope: prefix sums of node
/// weights in greedy order (0 included).
inline std::vector<Rat> score_breakpoints(const BinaryTree& t) {
    auto internal = t.internal_preorder();
    std::vector<std::pair<int, int>> weighted;
    for (std::size_t i = 0; i < internal.size(); ++i)
        if (t.weight(internal[i]) > 0)
            weighted.push_back({static_cast<int>(i), internal[i]});
    std::stable_sort(weighted.begin(), weighted.end(),
                     [&](const auto& a, const auto& b) {
                         std::int64_t lhs = t.nodes[a.second].m * t.weight(b.second);
                         std::int64_t rhs = t.nodes[b.second].m * t.weight(a.second);
                         if (lhs != rhs) return lhs > rhs;
                         return a.first < b.first;
                     });
    std::vector<Rat> points{Rat(0)};
    Rat acc = 0;
    for (auto [pos, v] : weighted) {
        (void)pos;
        acc += Rat(t.weight(v));
        points.push_back(acc);
    }
    return points;
}

/// Binary tree over a vertex subset of [0, 2^ell), splitting each set on the
/// lowest-order bit where its elements disagree. With the 2-adic rainbow
/// coloring, cross pairs at a node then sit at level exactly t (the split
/// bit) and same-side pairs strictly above it, which is what the good-node
/// rainbow count rests on. S_0 is the larger child, ties to the bit-0 side.
struct SplitTree {
    BinaryTree tree;
    std::vector<std::vector<int>> node_set; // per node index, sorted elements
    std::vector<int> split_bit;             // -1 for leaves
    std::vector<int> s0_child;              // node index of the larger child, -1 for leaves
};

inline SplitTree build_split_tree(const std::vector<int>& elements) {
    if (elements.empty())
        throw std::invalid_argument("build_split_tree: empty set");
    SplitTree st;
    std::vector<int> sorted = elements;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::function<int(const std::vector<int>&)> build =
        [&](const std::vector<int>& s) -> int {
        if (s.size() == 1) {
            int idx = st.tree.add_leaf(s[0]);
            st.node_set.push_back(s);
            st.split_bit.push_back(-1);
            st.s0_child.push_back(-1);
            return idx;
        }
        // lowest bit where some pair disagrees = min v2 over differences
        int bit = 63;
        for (std::size_t i = 1; i < s.size(); ++i) {
            int b = std::countr_zero(static_cast<std::uint64_t>(s[i] ^ s[0]));
            bit = std::min(bit, b);
        }
        std::vector<int> zero_side, one_side;
        for (int v : s)
            ((v >> bit) & 1 ? one_side : zero_side).push_back(v);
        bool zero_is_s0 = zero_side.size() >= one_side.size();
        int left = build(zero_side);
        int right = build(one_side);
        int idx = st.tree.add_internal(left, right);
        st.node_set.push_back(s);
        st.split_bit.push_back(bit);
        st.s0_child.push_back(zero_is_s0 ? left : right);
        return idx;
    };
    st.tree.root = build(sorted);
    return st;
}

enum class NodeLabel { Good, Bad, Neutral };

/// Label internal nodes with |S'| >= 3 good iff no color appears more than
/// |S'_0| / 2 times among c_t(u), u in S'_0, where t is the node's split
/// bit. Smaller nodes are neutral and carry zero weight.
inline std::vector<NodeLabel> classify_good_nodes(
    const SplitTree& st,
    const std::vector<std::vector<std::uint32_t>>& vertex_colors) {
    std::vector<NodeLabel> labels(st.tree.nodes.size(), NodeLabel::Neutral);
    for (std::size_t v = 0; v < st.tree.nodes.size(); ++v) {
        if (st.tree.nodes[v].is_leaf() || st.node_set[v].size() < 3) continue;
        int t = st.split_bit[v];
        if (t >= static_cast<int>(vertex_colors.size()))
            throw std::invalid_argument("classify_good_nodes: missing color level");
        const auto& s0 = st.node_set[st.s0_child[v]];
        std::vector<std::uint32_t> colors;
        for (int u : s0) {
            if (u >= static_cast<int>(vertex_colors[t].size()))
                throw std::invalid_argument("classify_good_nodes: missing color entry");
            colors.push_back(vertex_colors[t][u]);
        }
        std::sort(colors.begin(), colors.end());
        std::size_t best_run = 0, run = 1;
        for (std::size_t i = 1; i <= colors.size(); ++i) {
            if (i < colors.size() && colors[i] == colors[i - 1])
                ++run;
            else {
                best_run = std::max(best_run, run);
                run = 1;
            }
        }
        labels[v] = (2 * best_run > s0.size()) ? NodeLabel::Bad : NodeLabel::Good;
    }
    return labels;
}

/// Sum of m_v over good nodes: triples of leaves whose LCA is good.
inline std::int64_t good_lca_triple_count(const SplitTree& st,
                                          const std::vector<NodeLabel>& labels) {
    std::int64_t total = 0;
    for (std::size_t v = 0; v < st.tree.nodes.size(); ++v)
        if (labels[v] == NodeLabel::Good) total += st.tree.nodes[v].m;
    return total;
}

} // namespace triramsey
