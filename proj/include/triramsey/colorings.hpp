#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "triramsey/rng.hpp"
#include "triramsey/trifference.hpp"

namespace triramsey {

// Colex ranks: pairs and triples over [0, n) in canonical storage order.
inline std::int64_t pair_rank(int a, int b) { // a < b
    return static_cast<std::int64_t>(b) * (b - 1) / 2 + a;
}
inline std::int64_t triple_rank(int a, int b, int c) { // a < b < c
    return static_cast<std::int64_t>(c) * (c - 1) * (c - 2) / 6 +
           static_cast<std::int64_t>(b) * (b - 1) / 2 + a;
}
inline std::int64_t num_pairs(int n) { return static_cast<std::int64_t>(n) * (n - 1) / 2; }
inline std::int64_t num_triples(int n) {
    return static_cast<std::int64_t>(n) * (n - 1) * (n - 2) / 6;
}

/// Total symmetric coloring of all pairs of [0, n). For the rainbow
/// construction the color id encodes the structured pair (level, residue) as
/// level * A + residue.
class PairColoring {
public:
    PairColoring(int n, std::uint32_t palette_size)
        : n_(n), palette_(palette_size), color_(num_pairs(n), 0) {}

    int num_vertices() const { return n_; }
    std::uint32_t palette_size() const { return palette_; }

    std::uint32_t color(int u, int v) const {
        if (u == v) throw std::invalid_argument("PairColoring: u == v");
        if (u > v) std::swap(u, v);
        return color_[pair_rank(u, v)];
    }
    void set_color(int u, int v, std::uint32_t c) {
        if (u > v) std::swap(u, v);
        color_[pair_rank(u, v)] = c;
    }
    const std::vector<std::uint32_t>& raw() const { return color_; }
    std::vector<std::uint32_t>& raw() { return color_; }

    // artifact provenance, carried into files and manifests
    std::string tag;
    std::uint64_t seed = 0;
    std::vector<std::string> params;

private:
    int n_;
    std::uint32_t palette_;
    std::vector<std::uint32_t> color_;
};

/// Red/blue assignment on all triples of [0, n), one bit per colex rank.
class TripleColoring {
public:
    explicit TripleColoring(int n)
        : n_(n), bits_((num_triples(n) + 63) / 64, 0) {}

    int num_vertices() const { return n_; }
    std::int64_t total_triples() const { return num_triples(n_); }

    bool red(int a, int b, int c) const {
        normalize(a, b, c);
        std::int64_t r = triple_rank(a, b, c);
        return (bits_[r >> 6] >> (r & 63)) & 1;
    }
    void set_red(int a, int b, int c, bool value = true) {
        normalize(a, b, c);
        std::int64_t r = triple_rank(a, b, c);
        if (value)
            bits_[r >> 6] |= std::uint64_t{1} << (r & 63);
        else
            bits_[r >> 6] &= ~(std::uint64_t{1} << (r & 63));
    }

    std::int64_t red_count() const {
        std::int64_t c = 0;
        for (auto w : bits_) c += std::popcount(w);
        return c;
    }

    const std::vector<std::uint64_t>& raw() const { return bits_; }
    std::vector<std::uint64_t>& raw() { return bits_; }

    std::string tag;
    std::uint64_t seed = 0;
    std::vector<std::string> params;

private:
    static void normalize(int& a, int& b, int& c) {
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        if (a == b || b == c)
            throw std::invalid_argument("TripleColoring: vertices must be distinct");
    }

    int n_;
    std::vector<std::uint64_t> bits_;
};

/// The sampled helper functions behind the builders: g and f_1..f_3 per pair
/// (two-component construction), per-vertex strings (alternative tight
/// construction), per-(level, vertex) colors (rainbow construction).
struct AuxiliaryFunctions {
    std::vector<std::uint8_t> g;          // pair colex rank -> {1,2,3}
    std::vector<std::uint32_t> f1, f2, f3; // pair colex rank -> [0, ell*A)
    std::vector<std::string> vertex_strings;
    std::vector<std::vector<std::uint32_t>> vertex_colors; // [level][vertex] -> [0, A)
};

struct TightColoring {
    PairColoring phi;   // colors are 1-based code coordinates
    TripleColoring chi;
};

/// Theorem-3 style construction: phi(uv) uniform over the coordinates where
/// u, v differ; a triple is red iff its three phi values coincide. RNG
/// stream: pairs in colex order.
inline TightColoring build_tight_coloring(const TrifferenceCode& code,
                                          std::uint64_t seed) {
    if (!code.verified())
        throw std::invalid_argument("build_tight_coloring: code not verified");
    const int n = code.size();
    TightColoring out{PairColoring(n, static_cast<std::uint32_t>(code.ell()) + 1),
                      TripleColoring(n)};
    SplitMix64 rng = substream(seed, "tight-phi");
    for (int b = 1; b < n; ++b)
        for (int a = 0; a < b; ++a) {
            auto diff = difference_set(code.word(a), code.word(b));
            out.phi.set_color(a, b, static_cast<std::uint32_t>(
                                        diff[rng.next_below(diff.size())]));
        }
    for (int c = 2; c < n; ++c)
        for (int b = 1; b < c; ++b)
            for (int a = 0; a < b; ++a) {
                std::uint32_t x = out.phi.color(a, b);
                if (x == out.phi.color(b, c) && x == out.phi.color(a, c))
                    out.chi.set_red(a, b, c);
            }
    out.phi.tag = "tight";
    out.phi.seed = seed;
    out.chi.tag = "tight";
    out.chi.seed = seed;
    return out;
}

struct AltTightColoring {
    PairColoring phi;   // colors in [1, ell]
    TripleColoring chi;
    AuxiliaryFunctions aux; // vertex_strings populated
};

/// Alternative single-component construction: phi(uv) uniform in [1, ell],
/// f(v) a uniform string in {1,2,3}^ell; a triple is red iff phi agrees on
/// its three pairs with common value i and the three f_i values are all
/// distinct. RNG streams: phi over pairs in colex order, then strings over
/// vertices in increasing order.
inline AltTightColoring build_alt_tight_coloring(int n, int ell,
                                                 std::uint64_t seed) {
    if (n < 3 || ell < 1)
        throw std::invalid_argument("build_alt_tight_coloring: need N >= 3, ell >= 1");
    AltTightColoring out{PairColoring(n, static_cast<std::uint32_t>(ell) + 1),
                         TripleColoring(n), {}};
    SplitMix64 rng = substream(seed, "alt-tight");
    for (int b = 1; b < n; ++b)
        for (int a = 0; a < b; ++a)
            out.phi.set_color(a, b, 1 + static_cast<std::uint32_t>(rng.next_below(ell)));
    out.aux.vertex_strings.resize(n);
    for (int v = 0; v < n; ++v) {
        std::string s(ell, '0');
        for (int i = 0; i < ell; ++i)
            s[i] = static_cast<char>('1' + rng.next_below(3));
        out.aux.vertex_strings[v] = std::move(s);
    }
    for (int c = 2; c < n; ++c)
        for (int b = 1; b < c; ++b)
            for (int a = 0; a < b; ++a) {
                std::uint32_t i = out.phi.color(a, b);
                if (i != out.phi.color(b, c) || i != out.phi.color(a, c)) continue;
                char x = out.aux.vertex_strings[a][i - 1];
                char y = out.aux.vertex_strings[b][i - 1];
                char z = out.aux.vertex_strings[c][i - 1];
                if (x != y && y != z && x != z) out.chi.set_red(a, b, c);
            }
    out.phi.tag = "alt-tight";
    out.phi.seed = seed;
    out.chi.tag = "alt-tight";
    out.chi.seed = seed;
    return out;
}

/// Largest t with 2^t dividing x; x must be positive.
inline int two_adic_valuation(std::int64_t x) {
    if (x <= 0) throw std::invalid_argument("two_adic_valuation: x must be positive");
    return std::countr_zero(static_cast<std::uint64_t>(x));
}

struct RainbowColoring {
    PairColoring phi;   // color id = level * A + residue
    AuxiliaryFunctions aux; // vertex_colors populated
    int ell = 0;
    int a_palette = 0;  // A
};

/// Lemma-5 style 2-adic coloring of K_{2^ell}: with t = v_2(u - v), the edge
/// uv gets color (t, (-1)^{floor(u / 2^t)} (c_t(u) - c_t(v)) mod A). The sign
/// convention makes the color order-independent, and each color class is a
/// vertex-disjoint union of bicliques. RNG stream: levels outermost, then
/// vertices in increasing order.
inline RainbowColoring build_rainbow_coloring(int ell, int a, std::uint64_t seed,
                                              bool allow_small_a = false) {
    if (ell < 1) throw std::invalid_argument("build_rainbow_coloring: ell >= 1");
    if (a < 20 && !allow_small_a)
        throw std::invalid_argument(
            "build_rainbow_coloring: A >= 20 required (pass allow_small_a to "
            "override for micro-tests)");
    const int n = 1 << ell;
    RainbowColoring out{PairColoring(n, static_cast<std::uint32_t>(ell) * a), {}, ell, a};
    SplitMix64 rng = substream(seed, "rainbow-ct");
    out.aux.vertex_colors.assign(ell, std::vector<std::uint32_t>(n));
    for (int t = 0; t < ell; ++t)
        for (int u = 0; u < n; ++u)
            out.aux.vertex_colors[t][u] = static_cast<std::uint32_t>(rng.next_below(a));
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) {
            int t = two_adic_valuation(v - u);
            std::int64_t d = static_cast<std::int64_t>(out.aux.vertex_colors[t][u]) -
                             static_cast<std::int64_t>(out.aux.vertex_colors[t][v]);
            if ((u >> t) & 1) d = -d;
            std::int64_t residue = ((d % a) + a) % a;
            out.phi.set_color(u, v, static_cast<std::uint32_t>(t * a + residue));
        }
    out.phi.tag = "rainbow";
    out.phi.seed = seed;
    out.phi.params = {"ell=" + std::to_string(ell), "A=" + std::to_string(a)};
    return out;
}

namespace detail {

/// The Theorem-5 redness predicate for an ordered triple u < v < w, given
/// the pair colors and sampled g, f values. Factored out so tests can
/// enumerate it exhaustively.
inline bool two_component_red(std::uint32_t phi_uv, std::uint32_t phi_vw,
                              std::uint32_t phi_uw, int g_uv, int g_vw, int g_uw,
                              std::uint32_t f1_uv, std::uint32_t f1_vw, std::uint32_t f1_uw,
                              std::uint32_t f2_uv, std::uint32_t f2_vw, std::uint32_t f2_uw,
                              std::uint32_t f3_uv, std::uint32_t f3_vw, std::uint32_t f3_uw) {
    bool rainbow = phi_uv != phi_vw && phi_vw != phi_uw && phi_uv != phi_uw;
    return rainbow && g_uv == 1 && g_vw == 2 && g_uw == 3 &&
           f1_uw == phi_uv && f1_vw == phi_uv &&
           f2_uv == phi_vw && f2_uw == phi_vw &&
           f3_uv == phi_uw && f3_vw == phi_uw;
}

} // namespace detail

struct TwoComponentColoring {
    TripleColoring chi;
    AuxiliaryFunctions aux; // g, f1, f2, f3 populated
};

/// Theorem-5 style triple coloring on top of a rainbow pair coloring: a
/// triple u < v < w (natural integer order) is red iff it is rainbow under
/// phi and the sampled g, f_1, f_2, f_3 values satisfy the five agreement
/// conditions. RNG streams: g over pairs in colex order, then f1, f2, f3
/// each over pairs in colex order.
inline TwoComponentColoring build_two_component_coloring(const PairColoring& rainbow,
                                                         std::uint64_t seed) {
    const int n = rainbow.num_vertices();
    const std::uint64_t palette = rainbow.palette_size();
    if (palette == 0)
        throw std::invalid_argument("build_two_component_coloring: empty palette");
    TwoComponentColoring out{TripleColoring(n), {}};
    const std::int64_t np = num_pairs(n);
    SplitMix64 rng = substream(seed, "two-component");
    out.aux.g.resize(np);
    for (std::int64_t i = 0; i < np; ++i)
        out.aux.g[i] = static_cast<std::uint8_t>(1 + rng.next_below(3));
    for (auto* f : {&out.aux.f1, &out.aux.f2, &out.aux.f3}) {
        f->resize(np);
        for (std::int64_t i = 0; i < np; ++i)
            (*f)[i] = static_cast<std::uint32_t>(rng.next_below(palette));
    }
    for (int w = 2; w < n; ++w)
        for (int v = 1; v < w; ++v)
            for (int u = 0; u < v; ++u) {
                std::int64_t uv = pair_rank(u, v), vw = pair_rank(v, w), uw = pair_rank(u, w);
                if (detail::two_component_red(
                        rainbow.color(u, v), rainbow.color(v, w), rainbow.color(u, w),
                        out.aux.g[uv], out.aux.g[vw], out.aux.g[uw],
                        out.aux.f1[uv], out.aux.f1[vw], out.aux.f1[uw],
                        out.aux.f2[uv], out.aux.f2[vw], out.aux.f2[uw],
                        out.aux.f3[uv], out.aux.f3[vw], out.aux.f3[uw]))
                    out.chi.set_red(u, v, w);
            }
    out.chi.tag = "two-component";
    out.chi.seed = seed;
    return out;
}

} // namespace triramsey
