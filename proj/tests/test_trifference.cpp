#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "triramsey/trifference.hpp"

using namespace triramsey;

namespace {
TrifWord W(const std::string& s) { return TrifWord::from_string(s); }
} // namespace

TEST_CASE("trifference_count") {
    REQUIRE(trifference_count(W("112"), W("221"), W("333")) == 3);
    REQUIRE(trifference_count(W("11"), W("11"), W("23")) == 0);
    REQUIRE(trifference_count(W("123"), W("231"), W("312")) == 3);
    REQUIRE_THROWS_AS(trifference_count(W("1"), W("12"), W("21")),
                      std::invalid_argument);
}

TEST_CASE("trifference_count across chunk boundaries") {
    // 70 coordinates: forces two 64-bit chunks.
    std::string a(70, '1'), b(70, '2'), c(70, '3');
    REQUIRE(trifference_count(W(a), W(b), W(c)) == 70);
    c[69] = '1';
    REQUIRE(trifference_count(W(a), W(b), W(c)) == 69);
}

TEST_CASE("difference_set") {
    REQUIRE(difference_set(W("11"), W("12")) == std::vector<int>{2});
    REQUIRE(difference_set(W("123"), W("321")) == std::vector<int>{1, 3});
    REQUIRE_THROWS_AS(difference_set(W("12"), W("12")), std::invalid_argument);
}

TEST_CASE("trifference invariants") {
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        int ell = 1 + static_cast<int>(rng.next_below(90));
        std::vector<int> su(ell), sv(ell), sw(ell);
        for (int i = 0; i < ell; ++i) {
            su[i] = 1 + static_cast<int>(rng.next_below(3));
            sv[i] = 1 + static_cast<int>(rng.next_below(3));
            sw[i] = 1 + static_cast<int>(rng.next_below(3));
        }
        auto u = TrifWord::from_symbols(su), v = TrifWord::from_symbols(sv),
             w = TrifWord::from_symbols(sw);
        int t = trifference_count(u, v, w);
        // invariant under permuting the arguments
        REQUIRE(t == trifference_count(v, w, u));
        REQUIRE(t == trifference_count(w, u, v));
        REQUIRE(t == trifference_count(u, w, v));
        // bounded by each pairwise difference count
        if (!(u == v) && !(v == w) && !(u == w)) {
            REQUIRE(t <= static_cast<int>(difference_set(u, v).size()));
            REQUIRE(t <= static_cast<int>(difference_set(v, w).size()));
            REQUIRE(t <= static_cast<int>(difference_set(u, w).size()));
        }
        // invariant under an alphabet permutation applied at one coordinate
        int coord = static_cast<int>(rng.next_below(ell));
        auto rotate = [&](std::vector<int> s) {
            s[coord] = s[coord] % 3 + 1;
            return s;
        };
        REQUIRE(t == trifference_count(TrifWord::from_symbols(rotate(su)),
                                       TrifWord::from_symbols(rotate(sv)),
                                       TrifWord::from_symbols(rotate(sw))));
    }
}

TEST_CASE("verify_code") {
    TrifferenceCode good(1, 1, {W("1"), W("2"), W("3")});
    REQUIRE_FALSE(good.verify().has_value());
    REQUIRE(good.verified());

    TrifferenceCode bad(2, 1, {W("11"), W("12"), W("21")});
    auto violation = bad.verify();
    REQUIRE(violation.has_value());
    REQUIRE(violation->count == 0);
    REQUIRE_FALSE(bad.verified());

    REQUIRE_THROWS_AS(TrifferenceCode(2, 1, {W("11"), W("11")}),
                      std::invalid_argument);
}

TEST_CASE("generate_code: N=3, ell=1 finds the unique code") {
    auto code = generate_code(3, 1, 1, /*seed=*/7);
    REQUIRE(code.verified());
    std::set<std::string> words;
    for (const auto& w : code.words()) words.insert(w.to_string());
    REQUIRE(words == std::set<std::string>{"1", "2", "3"});
}

TEST_CASE("generate_code: r=0 accepts the first sample") {
    auto a = generate_code(5, 4, 0, 99);
    auto b = generate_code(5, 4, 0, 99);
    REQUIRE(a.verified());
    for (int i = 0; i < 5; ++i)
        REQUIRE(a.word(i).to_string() == b.word(i).to_string()); // bit-reproducible
}

TEST_CASE("generate_code: desk-scale r=1 instance") {
    auto code = generate_code(64, 60, 1, 1, /*max_retries=*/100);
    REQUIRE(code.size() == 64);
    REQUIRE(code.verified());
}

TEST_CASE("generate_code: failure carries the best violation count") {
    // 27 words of length 3 cannot all pairwise-triple trifference at r=3:
    // retries run out quickly at infeasible parameters.
    try {
        generate_code(27, 3, 3, 5, /*max_retries=*/3);
        FAIL("expected CodeGenError");
    } catch (const CodeGenError& e) {
        REQUIRE(e.best_min_trifference >= 0);
        REQUIRE(e.best_min_trifference < 3);
    }
}
