#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "triramsey/rng.hpp"

namespace triramsey {

/// One word over {1,2,3}, stored as two one-hot bitplanes (symbol 3 is
/// derived). Triple enumeration dominates runtime, so trifference tests are
/// a handful of word-level operations per 64 coordinates.
struct TrifWord {
    int len = 0;
    std::vector<std::uint64_t> m1, m2; // bit i set iff symbol at coord i is 1 / 2

    static TrifWord from_symbols(const std::vector<int>& symbols) {
        TrifWord w;
        w.len = static_cast<int>(symbols.size());
        const std::size_t chunks = (symbols.size() + 63) / 64;
        w.m1.assign(chunks, 0);
        w.m2.assign(chunks, 0);
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (symbols[i] < 1 || symbols[i] > 3)
                throw std::invalid_argument("symbol out of alphabet {1,2,3}");
            if (symbols[i] == 1) w.m1[i / 64] |= std::uint64_t{1} << (i % 64);
            if (symbols[i] == 2) w.m2[i / 64] |= std::uint64_t{1} << (i % 64);
        }
        return w;
    }

    static TrifWord from_string(const std::string& s) {
        std::vector<int> sym(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < '1' || s[i] > '3')
                throw std::invalid_argument("word symbol must be 1, 2 or 3");
            sym[i] = s[i] - '0';
        }
        return from_symbols(sym);
    }

    int symbol(int i) const {
        std::uint64_t bit = std::uint64_t{1} << (i % 64);
        if (m1[i / 64] & bit) return 1;
        if (m2[i / 64] & bit) return 2;
        return 3;
    }

    std::string to_string() const {
        std::string s(len, '3');
        for (int i = 0; i < len; ++i) s[i] = static_cast<char>('0' + symbol(i));
        return s;
    }

    std::uint64_t m3(std::size_t chunk) const {
        std::uint64_t tail = (chunk + 1 == m1.size() && len % 64 != 0)
                                 ? (std::uint64_t{1} << (len % 64)) - 1
                                 : ~std::uint64_t{0};
        return ~(m1[chunk] | m2[chunk]) & tail;
    }

    bool operator==(const TrifWord& o) const {
        return len == o.len && m1 == o.m1 && m2 == o.m2;
    }
};

/// Number of coordinates where the three symbols are pairwise distinct,
/// i.e. {u_i, v_i, w_i} = {1,2,3}.
inline int trifference_count(const TrifWord& u, const TrifWord& v, const TrifWord& w) {
    if (u.len != v.len || v.len != w.len)
        throw std::invalid_argument("trifference_count: length mismatch");
    int count = 0;
    for (std::size_t c = 0; c < u.m1.size(); ++c) {
        std::uint64_t p1 = u.m1[c] | v.m1[c] | w.m1[c];
        std::uint64_t p2 = u.m2[c] | v.m2[c] | w.m2[c];
        std::uint64_t p3 = u.m3(c) | v.m3(c) | w.m3(c);
        count += std::popcount(p1 & p2 & p3);
    }
    return count;
}

/// c(uv): the 1-based coordinates where u and v differ. Nonempty by the
/// distinctness precondition.
inline std::vector<int> difference_set(const TrifWord& u, const TrifWord& v) {
    if (u.len != v.len)
        throw std::invalid_argument("difference_set: length mismatch");
    std::vector<int> coords;
    for (std::size_t c = 0; c < u.m1.size(); ++c) {
        std::uint64_t same = (u.m1[c] & v.m1[c]) | (u.m2[c] & v.m2[c]) | (u.m3(c) & v.m3(c));
        std::uint64_t tail = (c + 1 == u.m1.size() && u.len % 64 != 0)
                                 ? (std::uint64_t{1} << (u.len % 64)) - 1
                                 : ~std::uint64_t{0};
        std::uint64_t diff = ~same & tail;
        while (diff) {
            int b = std::countr_zero(diff);
            coords.push_back(static_cast<int>(c) * 64 + b + 1);
            diff &= diff - 1;
        }
    }
    if (coords.empty())
        throw std::invalid_argument("difference_set: identical words");
    return coords;
}

struct TrifferenceViolation {
    int i, j, k;        // word indices
    int count;          // trifference count of the triple
};

class TrifferenceCode {
public:
    TrifferenceCode(int ell, int r, std::vector<TrifWord> words)
        : ell_(ell), r_(r), words_(std::move(words)) {
        if (r_ > ell_) throw std::invalid_argument("r exceeds word length");
        for (const auto& w : words_)
            if (w.len != ell_) throw std::invalid_argument("word length mismatch");
        for (std::size_t i = 0; i < words_.size(); ++i)
            for (std::size_t j = i + 1; j < words_.size(); ++j)
                if (words_[i] == words_[j])
                    throw std::invalid_argument("duplicate codeword");
    }

    int ell() const { return ell_; }
    int r() const { return r_; }
    int size() const { return static_cast<int>(words_.size()); }
    const std::vector<TrifWord>& words() const { return words_; }
    const TrifWord& word(int i) const { return words_[i]; }

    bool verified() const { return verified_; }

    /// Exhaustive O(N^3 * ell / 64) check of the triple invariant. Records
    /// the verdict on the code so downstream builders can require it.
    std::optional<TrifferenceViolation> verify() {
        const int n = size();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    int c = trifference_count(words_[i], words_[j], words_[k]);
                    if (c < r_) return TrifferenceViolation{i, j, k, c};
                }
        verified_ = true;
        return std::nullopt;
    }

private:
    int ell_, r_;
    std::vector<TrifWord> words_;
    bool verified_ = false;
};

struct CodeGenError : std::runtime_error {
    CodeGenError(const std::string& msg, int best)
        : std::runtime_error(msg), best_min_trifference(best) {}
    int best_min_trifference; // best minimum triple count over all attempts
};

/// Whole-code rejection sampling: draw N uniform words, keep the sample only
/// if every triple has at least r trifferent coordinates. Deterministic for
/// a fixed seed; throws CodeGenError when the retry budget runs out,
/// reporting the best minimum observed so the caller can judge feasibility.
inline TrifferenceCode generate_code(int n, int ell, int r, std::uint64_t seed,
                                     int max_retries = 100) {
    if (n < 3) throw std::invalid_argument("generate_code: need N >= 3");
    if (r > ell) throw std::invalid_argument("generate_code: r > ell");
    SplitMix64 rng = substream(seed, "trifcode");
    int best = -1;
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<TrifWord> words;
        words.reserve(n);
        for (int i = 0; i < n; ++i) {
            for (;;) {
                std::vector<int> sym(ell);
                for (int j = 0; j < ell; ++j)
                    sym[j] = 1 + static_cast<int>(rng.next_below(3));
                TrifWord w = TrifWord::from_symbols(sym);
                // redraw in-place on the (rare) duplicate
                bool dup = false;
                for (const auto& prev : words)
                    if (prev == w) { dup = true; break; }
                if (!dup) { words.push_back(std::move(w)); break; }
            }
        }
        TrifferenceCode code(ell, r, std::move(words));
        if (r == 0) { code.verify(); return code; }
        int min_count = ell;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j)
                for (int k = j + 1; k < n; ++k) {
                    int c = trifference_count(code.word(i), code.word(j), code.word(k));
                    min_count = std::min(min_count, c);
                    if (c < r) { ok = false; break; }
                }
        best = std::max(best, min_count);
        if (ok) {
            code.verify();
            return code;
        }
    }
    throw CodeGenError("generate_code: retry budget exhausted (best minimum "
                       "trifference count seen: " + std::to_string(best) + ")",
                       best);
}

} // namespace triramsey
