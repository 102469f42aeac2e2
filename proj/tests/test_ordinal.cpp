#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "autostruct/ordinal.hpp"

using namespace autostruct;

namespace {

// Independent oracle for the natural sum on ordinals below w*20, encoded
// as pairs (a, b) = w*a + b. Implements the recursive definition: the
// least ordinal strictly greater than gamma +' beta for all gamma < alpha
// and alpha +' gamma for all gamma < beta. Limit slices are handled by
// probing the cofinal sequence (a-1, b') and taking the exact supremum of
// the observed pattern; the pattern assumptions are asserted.
struct PairOrd {
    int a, b;
    bool operator<(const PairOrd& o) const { return a != o.a ? a < o.a : b < o.b; }
    bool operator==(const PairOrd& o) const = default;
    PairOrd succ() const { return {a, b + 1}; }
};

struct NatSumOracle {
    std::map<std::tuple<int, int, int, int>, PairOrd> memo;

    PairOrd sum(PairOrd x, PairOrd y) {
        auto key = std::make_tuple(x.a, x.b, y.a, y.b);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        PairOrd r;
        if (x == PairOrd{0, 0})
            r = y;
        else if (y == PairOrd{0, 0})
            r = x;
        else {
            PairOrd bound1 = slice_bound(x, y, true);
            PairOrd bound2 = slice_bound(y, x, false);
            r = std::max(bound1, bound2);
        }
        memo.emplace(key, r);
        return r;
    }

    // least strict upper bound of { sum(gamma, other) : gamma < alpha };
    // first=false swaps argument order
    PairOrd slice_bound(PairOrd alpha, PairOrd other, bool first) {
        if (alpha == PairOrd{0, 0}) return {0, 0};
        auto eval = [&](PairOrd g) { return first ? sum(g, other) : sum(other, g); };
        if (alpha.b > 0) return eval({alpha.a, alpha.b - 1}).succ();
        // limit: probe the cofinal sequence (a-1, b')
        PairOrd h0 = eval({alpha.a - 1, 0});
        for (int bp = 1; bp <= 4; ++bp) {
            PairOrd h = eval({alpha.a - 1, bp});
            REQUIRE(h.a == h0.a);            // omega-part stabilizes
            REQUIRE(h.b == h0.b + bp);       // finite part climbs by one
        }
        return {h0.a + 1, 0}; // sup of (c, d), (c, d+1), ... is w*(c+1)
    }
};

OrdinalCNF cnf_of(PairOrd p) {
    return natural_sum(OrdinalCNF::omega_power(1, static_cast<uint64_t>(p.a)),
                       OrdinalCNF(static_cast<uint64_t>(p.b)));
}

} // namespace

TEST_CASE("natural_sum agrees with the recursive definition below w*10") {
    NatSumOracle oracle;
    for (int a1 = 0; a1 < 10; ++a1)
        for (int b1 = 0; b1 < 10; ++b1)
            for (int a2 = 0; a2 < 10; ++a2)
                for (int b2 = 0; b2 < 10; ++b2) {
                    PairOrd expect = oracle.sum({a1, b1}, {a2, b2});
                    OrdinalCNF got = natural_sum(cnf_of({a1, b1}), cnf_of({a2, b2}));
                    REQUIRE(got == cnf_of(expect));
                }
}

TEST_CASE("natural_sum examples") {
    OrdinalCNF zero;
    OrdinalCNF one(1);
    OrdinalCNF w = OrdinalCNF::omega_power(1);
    CHECK(natural_sum(zero, w) == w);
    CHECK(natural_sum(w, zero) == w);

    OrdinalCNF w_plus_1 = OrdinalCNF::from_terms({{1, 1}, {0, 1}});
    CHECK(natural_sum(w, one) == w_plus_1);
    CHECK(natural_sum(one, w) == w_plus_1); // commutative, unlike ordinal sum

    OrdinalCNF a = OrdinalCNF::from_terms({{1, 2}, {0, 3}}); // w*2 + 3
    OrdinalCNF b = OrdinalCNF::from_terms({{1, 1}, {0, 1}}); // w + 1
    CHECK(natural_sum(a, b) == OrdinalCNF::from_terms({{1, 3}, {0, 4}}));
}

TEST_CASE("cnf_compare is the ordinal order") {
    OrdinalCNF five(5);
    OrdinalCNF w = OrdinalCNF::omega_power(1);
    OrdinalCNF w2 = OrdinalCNF::omega_power(2);
    OrdinalCNF w9_9 = OrdinalCNF::from_terms({{1, 9}, {0, 9}});
    CHECK(cnf_less(five, w));
    CHECK(cnf_less(w9_9, w2));
    CHECK(cnf_compare(w, w) == std::strong_ordering::equal);
    CHECK(cnf_less(OrdinalCNF(0), OrdinalCNF(1)));
    CHECK_FALSE(cnf_less(w, w));
}

TEST_CASE("natural_sum is commutative, associative and monotone") {
    std::mt19937 rng(7);
    auto random_cnf = [&]() {
        std::vector<OrdinalCNF::Term> terms;
        for (uint32_t e = 0; e < 4; ++e)
            if (rng() % 2) terms.push_back({e, rng() % 5 + 1});
        return OrdinalCNF::from_terms(std::move(terms));
    };
    for (int trial = 0; trial < 500; ++trial) {
        OrdinalCNF a = random_cnf(), b = random_cnf(), c = random_cnf();
        REQUIRE(natural_sum(a, b) == natural_sum(b, a));
        REQUIRE(natural_sum(natural_sum(a, b), c) == natural_sum(a, natural_sum(b, c)));
        if (cnf_less(a, b)) {
            REQUIRE(cnf_less(natural_sum(a, c), natural_sum(b, c)));
            REQUIRE(cnf_less(natural_sum(c, a), natural_sum(c, b)));
        }
    }
}

TEST_CASE("ordinal_sum absorbs low terms") {
    OrdinalCNF one(1);
    OrdinalCNF w = OrdinalCNF::omega_power(1);
    CHECK(ordinal_sum(one, w) == w);                                        // 1 + w = w
    CHECK(ordinal_sum(w, one) == OrdinalCNF::from_terms({{1, 1}, {0, 1}})); // w + 1
    OrdinalCNF a = OrdinalCNF::from_terms({{2, 1}, {0, 5}});                // w^2 + 5
    OrdinalCNF b = OrdinalCNF::from_terms({{1, 2}});                        // w*2
    CHECK(ordinal_sum(a, b) == OrdinalCNF::from_terms({{2, 1}, {1, 2}}));
}

TEST_CASE("printing and parsing") {
    OrdinalCNF x = OrdinalCNF::from_terms({{3, 2}, {1, 1}, {0, 7}});
    CHECK(x.to_string() == "w^3*2 + w + 7");
    CHECK(OrdinalCNF::parse("w^3*2 + w + 7") == x);
    CHECK(OrdinalCNF().to_string() == "0");
    CHECK(OrdinalCNF::parse("0") == OrdinalCNF());
    CHECK(OrdinalCNF::parse("w*3") == OrdinalCNF::omega_power(1, 3));
    for (const auto& o : {x, OrdinalCNF(12), OrdinalCNF::omega_power(5, 2)})
        CHECK(OrdinalCNF::parse(o.to_string()) == o);
}

TEST_CASE("finite values") {
    CHECK(OrdinalCNF(7).finite_value() == 7);
    CHECK(OrdinalCNF().finite_value() == 0);
    CHECK(OrdinalCNF(7).is_finite());
    CHECK_FALSE(OrdinalCNF::omega_power(1).is_finite());
    CHECK_THROWS(OrdinalCNF::omega_power(1).finite_value());
}
