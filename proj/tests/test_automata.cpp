#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "autostruct/automata.hpp"
#include "autostruct/formats.hpp"

using namespace autostruct;

namespace {

TrackedAlphabet ab1() { return TrackedAlphabet({"a", "b"}, 1); }

// all canonical column words over the alphabet with length <= maxlen
std::vector<std::vector<uint32_t>> all_canonical_words(const TrackedAlphabet& al, size_t maxlen) {
    std::vector<std::vector<uint32_t>> out{{}};
    Dfa u = universe_dfa(al);
    std::vector<std::vector<uint32_t>> layer{{}};
    for (size_t len = 1; len <= maxlen; ++len) {
        std::vector<std::vector<uint32_t>> next;
        for (const auto& w : layer)
            for (uint32_t c = 0; c < al.num_columns(); ++c) {
                auto w2 = w;
                w2.push_back(c);
                if (u.accepts(w2)) next.push_back(std::move(w2));
            }
        for (const auto& w : next) out.push_back(w);
        layer = std::move(next);
    }
    return out;
}

std::set<std::vector<uint32_t>> language_upto(const Dfa& a, size_t maxlen) {
    std::set<std::vector<uint32_t>> out;
    for (const auto& w : all_canonical_words(a.alphabet, maxlen))
        if (a.accepts(w)) out.insert(w);
    return out;
}

// NFA membership by direct simulation, independent of determinization
bool nfa_accepts(const Nfa& a, const std::vector<uint32_t>& w) {
    std::set<int> cur(a.initial.begin(), a.initial.end());
    for (uint32_t c : w) {
        std::set<int> nxt;
        for (int s : cur)
            for (const auto& [col, t] : a.edges[static_cast<size_t>(s)])
                if (col == c) nxt.insert(t);
        cur = std::move(nxt);
        if (cur.empty()) return false;
    }
    for (int s : cur)
        if (a.accepting[static_cast<size_t>(s)]) return true;
    return false;
}

// (a|b)*a
Nfa nfa_ending_in_a() {
    Nfa n;
    n.alphabet = ab1();
    int s0 = n.add_state(false);
    int s1 = n.add_state(true);
    uint32_t ca = n.alphabet.encode({0}), cb = n.alphabet.encode({1});
    n.add_edge(s0, ca, s0);
    n.add_edge(s0, cb, s0);
    n.add_edge(s0, ca, s1);
    n.add_initial(s0);
    n.sort_edges();
    return n;
}

Dfa dfa_from_words(const TrackedAlphabet& al, const std::vector<std::string>& words) {
    Nfa n;
    n.alphabet = al;
    int root = n.add_state(false);
    n.add_initial(root);
    for (const auto& text : words) {
        Word w = al.parse_word(text);
        int cur = root;
        for (size_t i = 0; i < w.size(); ++i) {
            int nxt = n.add_state(i + 1 == w.size());
            n.add_edge(cur, al.encode({w[i]}), nxt);
            cur = nxt;
        }
        if (w.empty()) n.accepting[static_cast<size_t>(root)] = 1;
    }
    n.sort_edges();
    return canonical_dfa(n);
}

std::mt19937 rng(20240811);

Nfa random_nfa(const TrackedAlphabet& al, int max_states) {
    Nfa n;
    n.alphabet = al;
    std::uniform_int_distribution<int> nstates(1, max_states);
    int k = nstates(rng);
    for (int i = 0; i < k; ++i) n.add_state(rng() % 3 == 0);
    n.add_initial(static_cast<int>(rng() % static_cast<unsigned>(k)));
    std::uniform_int_distribution<int> nedges(0, 3 * k);
    int e = nedges(rng);
    for (int i = 0; i < e; ++i)
        n.add_edge(static_cast<int>(rng() % static_cast<unsigned>(k)),
                   rng() % al.num_columns(),
                   static_cast<int>(rng() % static_cast<unsigned>(k)));
    if (!std::any_of(n.accepting.begin(), n.accepting.end(), [](char c) { return c; }))
        n.accepting[static_cast<size_t>(rng() % static_cast<unsigned>(k))] = 1;
    n.sort_edges();
    return n;
}

} // namespace

TEST_CASE("convolution round trip and padding") {
    TrackedAlphabet al({"a", "b", "c"}, 2);
    Word wab = {0, 1}, wc = {2};
    auto conv = convolve(al, {wab, wc});
    REQUIRE(conv.size() == 2);
    CHECK(al.format_column(conv[0]) == "a|c");
    CHECK(al.format_column(conv[1]) == "b|_");
    auto back = deconvolve(al, conv);
    CHECK(back[0] == wab);
    CHECK(back[1] == wc);

    CHECK(convolve(al, {{}, {}}).empty());

    TrackedAlphabet bits({"0", "1"}, 2);
    auto c2 = convolve(bits, {bits.parse_word("01"), bits.parse_word("011")});
    REQUIRE(c2.size() == 3);
    CHECK(bits.format_column(c2[0]) == "0|0");
    CHECK(bits.format_column(c2[1]) == "1|1");
    CHECK(bits.format_column(c2[2]) == "_|1");

    // pad then resume is rejected
    std::vector<uint32_t> bad{bits.parse_column("_|0"), bits.parse_column("0|1")};
    CHECK_THROWS_AS(deconvolve(bits, bad), std::invalid_argument);
}

TEST_CASE("convolution round trip exhaustive over length <= 4") {
    TrackedAlphabet al({"a", "b"}, 2);
    std::vector<Word> words{{}};
    for (size_t len = 1; len <= 4; ++len) {
        size_t count = 1;
        for (size_t i = 0; i < len; ++i) count *= 2;
        for (size_t bits = 0; bits < count; ++bits) {
            Word w;
            for (size_t i = 0; i < len; ++i) w.push_back((bits >> i) & 1);
            words.push_back(w);
        }
    }
    for (const auto& x : words)
        for (const auto& y : words) {
            auto conv = convolve(al, {x, y});
            auto back = deconvolve(al, conv);
            REQUIRE(back[0] == x);
            REQUIRE(back[1] == y);
        }
}

TEST_CASE("canonical_dfa: subset construction and minimality") {
    Nfa n = nfa_ending_in_a();
    Dfa d = canonical_dfa(n);
    CHECK(d.num_states == 2); // words ending in a over {a,b}

    for (const auto& w : all_canonical_words(ab1(), 5))
        CHECK(d.accepts(w) == nfa_accepts(n, w));

    SUBCASE("no accepting states -> one dead state") {
        Nfa dead;
        dead.alphabet = ab1();
        dead.add_state(false);
        dead.add_initial(0);
        Dfa dd = canonical_dfa(dead);
        CHECK(dd.num_states == 1);
        CHECK(is_empty(dd));
    }

    SUBCASE("idempotence") {
        Dfa d2 = canonical_dfa(d.to_nfa());
        CHECK(language_equal(d, d2));
        CHECK(d2.num_states == d.num_states);
    }
}

TEST_CASE("canonical_dfa preserves language on random NFAs") {
    for (int trial = 0; trial < 50; ++trial) {
        Nfa n = random_nfa(ab1(), 6);
        Dfa d = canonical_dfa(n);
        for (const auto& w : all_canonical_words(ab1(), 5))
            REQUIRE(d.accepts(w) == nfa_accepts(n, w));
    }
}

TEST_CASE("combine matches language-level boolean operations") {
    // L(a) = a*, L(b) = ab*
    Dfa astar, abstar;
    {
        Nfa n;
        n.alphabet = ab1();
        n.add_state(true);
        n.add_edge(0, n.alphabet.encode({0}), 0);
        n.add_initial(0);
        astar = canonical_dfa(n);
    }
    {
        Nfa n;
        n.alphabet = ab1();
        n.add_state(false);
        n.add_state(true);
        n.add_edge(0, n.alphabet.encode({0}), 1);
        n.add_edge(1, n.alphabet.encode({1}), 1);
        n.add_initial(0);
        abstar = canonical_dfa(n);
    }
    Dfa inter = combine(astar, abstar, BoolOp::And);
    auto words = shortlex_enumerate(inter, 10);
    REQUIRE(words.size() == 1); // exactly "a"
    CHECK(words[0] == std::vector<uint32_t>{ab1().encode({0})});

    Dfa empty;
    empty.alphabet = ab1();
    empty.add_state(false, -1);
    CHECK(language_equal(combine(astar, empty, BoolOp::Or), astar));
    CHECK(is_empty(combine(abstar, abstar, BoolOp::Minus)));
}

TEST_CASE("boolean algebra laws by exhaustive membership, random automata") {
    for (int trial = 0; trial < 25; ++trial) {
        Dfa x = canonical_dfa(random_nfa(ab1(), 5));
        Dfa y = canonical_dfa(random_nfa(ab1(), 5));
        Dfa ix = combine(x, y, BoolOp::And);
        Dfa ux = combine(x, y, BoolOp::Or);
        Dfa mx = combine(x, y, BoolOp::Minus);
        Dfa cx = complement(x);
        for (const auto& w : all_canonical_words(ab1(), 5)) {
            bool wx = x.accepts(w), wy = y.accepts(w);
            REQUIRE(ix.accepts(w) == (wx && wy));
            REQUIRE(ux.accepts(w) == (wx || wy));
            REQUIRE(mx.accepts(w) == (wx && !wy));
            REQUIRE(cx.accepts(w) == !wx);
        }
    }
}

TEST_CASE("complement edge cases") {
    Dfa empty;
    empty.alphabet = ab1();
    empty.add_state(false, -1);
    Dfa all = complement(empty);
    CHECK(language_equal(all, universe_dfa(ab1())));

    Dfa ends_a = canonical_dfa(nfa_ending_in_a());
    CHECK(language_equal(complement(complement(ends_a)), ends_a));

    // complement of "ends in a" = epsilon or ends in b
    Dfa c = complement(ends_a);
    CHECK(c.accepts({}));
    CHECK(c.accepts({ab1().encode({1})}));
    CHECK_FALSE(c.accepts({ab1().encode({0})}));
    CHECK(c.accepts({ab1().encode({0}), ab1().encode({1})}));
}

TEST_CASE("emptiness and infiniteness") {
    Nfa astar;
    astar.alphabet = ab1();
    astar.add_state(true);
    astar.add_edge(0, astar.alphabet.encode({0}), 0);
    astar.add_initial(0);
    astar.sort_edges();
    CHECK_FALSE(is_empty(astar));
    CHECK(is_infinite(astar));

    Dfa eps = dfa_from_words(ab1(), {""});
    CHECK_FALSE(is_empty(eps));
    CHECK_FALSE(is_infinite(eps));

    Dfa none;
    none.alphabet = ab1();
    none.add_state(false, -1);
    CHECK(is_empty(none));
    CHECK_FALSE(is_infinite(none));
}

TEST_CASE("is_infinite agrees with pumping on random automata") {
    for (int trial = 0; trial < 50; ++trial) {
        Nfa n = random_nfa(ab1(), 6);
        Dfa d = canonical_dfa(n);
        // pumping criterion: some accepted word longer than the state count
        bool pumpable = false;
        auto words = shortlex_enumerate(d, 4096);
        for (const auto& w : words)
            if (w.size() > static_cast<size_t>(d.num_states)) pumpable = true;
        if (words.size() == 4096) pumpable = true; // enumeration cap only hit by infinite L here
        REQUIRE(is_infinite(d) == pumpable);
    }
}

TEST_CASE("accepts and shortlex enumeration") {
    // a*b
    Dfa d;
    {
        Nfa n;
        n.alphabet = ab1();
        n.add_state(false);
        n.add_state(true);
        n.add_edge(0, n.alphabet.encode({0}), 0);
        n.add_edge(0, n.alphabet.encode({1}), 1);
        n.add_initial(0);
        d = canonical_dfa(n);
    }
    CHECK(d.accepts(convolve(ab1(), {ab1().parse_word("aab")})));
    CHECK_FALSE(d.accepts(convolve(ab1(), {ab1().parse_word("aba")})));

    TrackedAlphabet unary({"1"}, 1);
    Nfa ones;
    ones.alphabet = unary;
    ones.add_state(true);
    ones.add_edge(0, unary.encode({0}), 0);
    ones.add_initial(0);
    ones.sort_edges();
    auto first3 = shortlex_enumerate(ones, 3);
    REQUIRE(first3.size() == 3);
    CHECK(first3[0].empty());
    CHECK(first3[1].size() == 1);
    CHECK(first3[2].size() == 2);

    Nfa dead;
    dead.alphabet = unary;
    dead.add_state(false);
    dead.add_initial(0);
    CHECK(shortlex_enumerate(dead, 5).empty());

    // shortlex order: length first, then column code order
    Dfa all = universe_dfa(ab1());
    auto words = shortlex_enumerate(all, 7);
    REQUIRE(words.size() == 7);
    CHECK(words[0].empty());
    CHECK(words[1] == std::vector<uint32_t>{ab1().encode({0})});
    CHECK(words[2] == std::vector<uint32_t>{ab1().encode({1})});
    CHECK(words[3].size() == 2);
}

TEST_CASE("cylindrify") {
    TrackedAlphabet al({"a", "b"}, 1);
    Dfa eps = dfa_from_words(al, {""});
    Dfa cyl = cylindrify(eps, 1);
    CHECK(cyl.alphabet.tracks() == 2);
    // accepts exactly c(eps, w): track 0 all pads
    TrackedAlphabet al2 = al.with_tracks(2);
    CHECK(cyl.accepts({}));
    CHECK(cyl.accepts({al2.parse_column("_|a")}));
    CHECK(cyl.accepts({al2.parse_column("_|a"), al2.parse_column("_|b")}));
    CHECK_FALSE(cyl.accepts({al2.parse_column("a|a")}));

    Dfa none;
    none.alphabet = al;
    none.add_state(false, -1);
    CHECK(is_empty(cylindrify(none, 0)));

    // section of a cylinder: projecting the added track recovers the language
    Dfa some = dfa_from_words(al, {"ab", "b", ""});
    for (int at = 0; at <= 1; ++at) {
        Dfa up = cylindrify(some, at);
        Dfa down = project_pad_closed(up, at);
        CHECK(language_equal(down, some));
    }
}

TEST_CASE("project_pad_closed") {
    TrackedAlphabet unary({"1"}, 1);
    TrackedAlphabet unary2 = unary.with_tracks(2);

    // equal-length pairs c(1^n, 1^n): projecting either track gives 1*
    Dfa equal_pairs;
    {
        Nfa n;
        n.alphabet = unary2;
        n.add_state(true);
        n.add_edge(0, unary2.parse_column("1|1"), 0);
        n.add_initial(0);
        equal_pairs = canonical_dfa(n);
    }
    Dfa ones = project_pad_closed(equal_pairs, 1);
    CHECK(ones.alphabet.tracks() == 1);
    CHECK(ones.accepts({}));
    CHECK(ones.accepts({unary.encode({0})}));
    CHECK(is_infinite(ones));

    // c({(w, w1) : w in 1*}) projected on track 0 gives 1 1*
    Dfa succ;
    {
        Nfa n;
        n.alphabet = unary2;
        n.add_state(false);
        n.add_state(true);
        n.add_edge(0, unary2.parse_column("1|1"), 0);
        n.add_edge(0, unary2.parse_column("_|1"), 1);
        n.add_initial(0);
        succ = canonical_dfa(n);
    }
    Dfa plus = project_pad_closed(succ, 0);
    CHECK_FALSE(plus.accepts({}));
    CHECK(plus.accepts({unary.encode({0})}));
    CHECK(plus.accepts({unary.encode({0}), unary.encode({0})}));

    Dfa none;
    none.alphabet = unary2;
    none.add_state(false, -1);
    CHECK(is_empty(project_pad_closed(none, 0)));
}

TEST_CASE("projection agrees with brute-force witness search") {
    TrackedAlphabet al2({"a", "b"}, 2);
    TrackedAlphabet al1({"a", "b"}, 1);
    for (int trial = 0; trial < 30; ++trial) {
        Nfa n = random_nfa(al2, 6);
        Dfa src = restrict_canonical(canonical_dfa(n));
        for (int drop = 0; drop < 2; ++drop) {
            Dfa proj = project_pad_closed(src, drop);
            for (const auto& w : all_canonical_words(al1, 5)) {
                // witness length bound: |w| + states of src suffices (pad run pumps)
                bool expect = false;
                auto kept = deconvolve(al1, w)[0];
                size_t wit_max = w.size() + static_cast<size_t>(src.num_states) + 1;
                std::vector<Word> cand{{}};
                for (size_t len = 1; len <= wit_max && !expect; ++len) {
                    std::vector<Word> next;
                    for (const auto& u : cand)
                        for (int s = 0; s < 2; ++s) {
                            Word u2 = u;
                            u2.push_back(s);
                            next.push_back(u2);
                        }
                    cand = std::move(next);
                    for (const auto& u : cand) {
                        std::vector<Word> tup(2);
                        tup[static_cast<size_t>(drop)] = u;
                        tup[static_cast<size_t>(1 - drop)] = kept;
                        if (src.accepts(convolve(al2, tup))) {
                            expect = true;
                            break;
                        }
                    }
                }
                if (!expect) {
                    std::vector<Word> tup(2);
                    tup[static_cast<size_t>(drop)] = {};
                    tup[static_cast<size_t>(1 - drop)] = kept;
                    expect = src.accepts(convolve(al2, tup));
                }
                REQUIRE(proj.accepts(w) == expect);
            }
        }
    }
}

TEST_CASE("permute and equality helpers") {
    TrackedAlphabet al2({"a", "b"}, 2);
    Dfa eq = track_equality_dfa(al2, 0, 1);
    CHECK(eq.accepts(convolve(al2, {al2.parse_word("ab"), al2.parse_word("ab")})));
    CHECK_FALSE(eq.accepts(convolve(al2, {al2.parse_word("ab"), al2.parse_word("aa")})));
    CHECK_FALSE(eq.accepts(convolve(al2, {al2.parse_word("ab"), al2.parse_word("a")})));

    // swap tracks of the "track 0 shorter" relation
    Nfa n;
    n.alphabet = al2;
    n.add_state(false);
    n.add_state(true);
    n.add_edge(0, al2.parse_column("a|a"), 0);
    n.add_edge(0, al2.parse_column("_|a"), 1);
    n.add_edge(1, al2.parse_column("_|a"), 1);
    n.add_initial(0);
    Dfa shorter = canonical_dfa(n);
    Dfa longer = permute_tracks(shorter, {1, 0});
    CHECK(longer.accepts(convolve(al2, {al2.parse_word("aa"), al2.parse_word("a")})));
    CHECK_FALSE(longer.accepts(convolve(al2, {al2.parse_word("a"), al2.parse_word("aa")})));
}

TEST_CASE("fix_track_word sections") {
    TrackedAlphabet al2({"a", "b"}, 2);
    Dfa eq = track_equality_dfa(al2, 0, 1);
    Word ab = {0, 1};
    Dfa sect = fix_track_word(eq, 1, ab);
    // only c(ab, ab) remains
    auto words = shortlex_enumerate(sect, 4);
    REQUIRE(words.size() == 1);
    CHECK(deconvolve(al2, words[0])[0] == ab);
}

TEST_CASE("restrict_canonical trims junk words") {
    TrackedAlphabet al2({"a"}, 2);
    Nfa n;
    n.alphabet = al2;
    n.add_state(true);
    for (uint32_t c = 0; c < al2.num_columns(); ++c) n.add_edge(0, c, 0);
    n.add_initial(0);
    Dfa everything = canonical_dfa(n); // includes non-canonical words
    Dfa canon = restrict_canonical(everything);
    CHECK(language_equal(canon, universe_dfa(al2)));
    CHECK_FALSE(canon.accepts({al2.parse_column("_|a"), al2.parse_column("a|a")}));
    CHECK(canon.accepts({al2.parse_column("a|a"), al2.parse_column("_|a")}));
}

TEST_CASE("automaton text format round trip") {
    Nfa n = nfa_ending_in_a();
    std::string text = automaton_to_string(n);
    Nfa back = automaton_from_string(text);
    CHECK(automaton_to_string(back) == text);
    CHECK(language_equal(canonical_dfa(back), canonical_dfa(n)));

    Dfa d = canonical_dfa(n);
    std::string dt = automaton_to_string(d);
    Nfa loaded = automaton_from_string(dt);
    CHECK(language_equal(canonical_dfa(loaded), d));
}

TEST_CASE("multi-track format with pads") {
    TrackedAlphabet al2({"a", "b"}, 2);
    Nfa n;
    n.alphabet = al2;
    n.add_state(false);
    n.add_state(true);
    n.add_edge(0, al2.parse_column("a|_"), 1);
    n.add_initial(0);
    std::string text = automaton_to_string(n);
    CHECK(text.find("a|_") != std::string::npos);
    Nfa back = automaton_from_string(text);
    CHECK(automaton_to_string(back) == text);
}
