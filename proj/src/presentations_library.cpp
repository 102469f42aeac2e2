#include "autostruct/presentations_library.hpp"

#include <algorithm>
#include <map>

#include "autostruct/logic.hpp"

namespace autostruct {

namespace {

Dfa empty_language(const TrackedAlphabet& al) {
    Dfa d;
    d.alphabet = al;
    d.add_state(false, -1);
    return d;
}

} // namespace

// ---------------------------------------------------------------------------
// column_product

Dfa column_product(const TrackedAlphabet& wide, const std::vector<ColumnPart>& parts) {
    if (wide.num_columns() > 300000) throw std::runtime_error("column_product: alphabet too wide");
    // per-part state: narrow state * 2 + frozen flag
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> tuples;
    Dfa d;
    d.alphabet = wide;
    auto accepting = [&](const std::vector<int>& tup) {
        for (size_t i = 0; i < parts.size(); ++i)
            if (!parts[i].automaton->accepting[static_cast<size_t>(tup[i] >> 1)]) return false;
        return true;
    };
    auto intern = [&](const std::vector<int>& tup) {
        auto it = ids.find(tup);
        if (it != ids.end()) return it->second;
        int s = static_cast<int>(tuples.size());
        ids.emplace(tup, s);
        tuples.push_back(tup);
        d.add_state(accepting(tup), -1);
        return s;
    };
    std::vector<int> init(parts.size());
    for (size_t i = 0; i < parts.size(); ++i) init[i] = parts[i].automaton->initial << 1;
    d.initial = intern(init);
    for (size_t i = 0; i < tuples.size(); ++i) {
        const std::vector<int> tup = tuples[i];
        std::vector<std::pair<uint32_t, int>> row;
        for (uint32_t c = 0; c < wide.num_columns(); ++c) {
            std::vector<int> nxt(parts.size());
            bool dead = false;
            for (size_t j = 0; j < parts.size() && !dead; ++j) {
                int64_t derived = parts[j].fn(c);
                int ns = tup[j] >> 1;
                bool frozen = tup[j] & 1;
                if (derived == kRejectColumn) {
                    dead = true;
                } else if (derived == kFrozenColumn) {
                    nxt[j] = (ns << 1) | 1;
                } else {
                    if (frozen) {
                        dead = true; // a finished component resumed
                    } else {
                        int t = parts[j].automaton->step(ns, static_cast<uint32_t>(derived));
                        if (t < 0)
                            dead = true;
                        else
                            nxt[j] = t << 1;
                    }
                }
            }
            if (!dead) row.emplace_back(c, intern(nxt));
        }
        d.edges[i] = std::move(row);
    }
    return minimize(d);
}

TrackedAlphabet pair_alphabet(const std::vector<std::string>& left,
                              const std::vector<std::string>& right, int tracks) {
    std::vector<std::string> syms;
    for (size_t i = 0; i <= left.size(); ++i)
        for (size_t j = 0; j <= right.size(); ++j) {
            if (i == left.size() && j == right.size()) continue;
            std::string l = i < left.size() ? left[i] : ".";
            std::string r = j < right.size() ? right[j] : ".";
            syms.push_back(l + ":" + r);
        }
    return TrackedAlphabet(syms, tracks);
}

int pair_left_letter(const TrackedAlphabet& pairs, int nleft, int nright, int letter) {
    if (letter == pairs.pad()) return nleft;
    return letter / (nright + 1);
}

int pair_right_letter(const TrackedAlphabet& pairs, int nleft, int nright, int letter) {
    (void)nleft;
    if (letter == pairs.pad()) return nright;
    return letter % (nright + 1);
}

// ---------------------------------------------------------------------------
// nat_unary

Presentation nat_unary() {
    TrackedAlphabet al({"1"}, 1);
    TrackedAlphabet al2 = al.with_tracks(2);
    Dfa domain;
    domain.alphabet = al;
    domain.add_state(true, -1);
    domain.set_edge(0, al.encode({0}), 0);
    domain = minimize(domain);

    Dfa le;
    le.alphabet = al2;
    le.add_state(true, -1);
    le.add_state(true, -1);
    le.set_edge(0, al2.parse_column("1|1"), 0);
    le.set_edge(0, al2.parse_column("_|1"), 1);
    le.set_edge(1, al2.parse_column("_|1"), 1);

    Dfa succ;
    succ.alphabet = al2;
    succ.add_state(false, -1);
    succ.add_state(true, -1);
    succ.set_edge(0, al2.parse_column("1|1"), 0);
    succ.set_edge(0, al2.parse_column("_|1"), 1);

    std::map<std::string, Dfa> rels;
    rels["le"] = finish_relation(le, domain);
    rels["succ"] = finish_relation(succ, domain);
    return Presentation("nat_unary", al, domain, std::move(rels),
                        "naturals in unary; le = prefix, succ = one more letter");
}

// ---------------------------------------------------------------------------
// omega_power

Presentation omega_power(int n) {
    if (n < 1) throw std::invalid_argument("omega_power needs n >= 1");
    if (n > 6) throw std::invalid_argument("omega_power: n too large for desk scale");
    int full = (1 << n) - 1;
    std::vector<std::string> syms;
    for (int m = 1; m <= full; ++m) {
        std::string s;
        for (int j = 0; j < n; ++j) s += (m >> j) & 1 ? '1' : '.';
        syms.push_back(s);
    }
    TrackedAlphabet al(syms, 1);
    TrackedAlphabet al2 = al.with_tracks(2);

    // domain: per-column masks shrink (each unary track is a prefix of 1s)
    Dfa domain;
    domain.alphabet = al;
    for (int m = 0; m <= full; ++m) domain.add_state(true, -1); // state = allowed mask
    domain.initial = full;
    for (int m = 0; m <= full; ++m)
        for (int s = 1; s <= full; ++s)
            if ((s & ~m) == 0) domain.set_edge(m, al.encode({s - 1}), s);
    domain = minimize(domain);

    // le: per-track comparison status, decided most significant track first
    int pow3 = 1;
    for (int j = 0; j < n; ++j) pow3 *= 3;
    Dfa le;
    le.alphabet = al2;
    auto status_accept = [&](int st) {
        std::vector<int> digits(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            digits[static_cast<size_t>(j)] = st % 3;
            st /= 3;
        }
        for (int j = n - 1; j >= 0; --j) {
            if (digits[static_cast<size_t>(j)] == 1) return true;  // lt
            if (digits[static_cast<size_t>(j)] == 2) return false; // gt
        }
        return true; // equal
    };
    for (int st = 0; st < pow3; ++st) le.add_state(status_accept(st), -1);
    le.initial = 0;
    for (int st = 0; st < pow3; ++st) {
        for (int l1 = 0; l1 <= al.num_symbols(); ++l1)
            for (int l2 = 0; l2 <= al.num_symbols(); ++l2) {
                if (l1 == al.pad() && l2 == al.pad()) continue;
                int m1 = l1 == al.pad() ? 0 : l1 + 1;
                int m2 = l2 == al.pad() ? 0 : l2 + 1;
                int nst = 0, base = 1, cur = st;
                for (int j = 0; j < n; ++j, base *= 3) {
                    int dj = cur % 3;
                    cur /= 3;
                    if (dj == 0) {
                        bool x = (m1 >> j) & 1, y = (m2 >> j) & 1;
                        if (!x && y)
                            dj = 1;
                        else if (x && !y)
                            dj = 2;
                    }
                    nst += dj * base;
                }
                le.set_edge(st, al2.encode({l1, l2}), nst);
            }
    }
    std::map<std::string, Dfa> rels;
    rels["le"] = finish_relation(le, domain);
    return Presentation("omega_power_" + std::to_string(n), al, domain, std::move(rels),
                        "ordinal omega^" + std::to_string(n) +
                            "; words are n-track unary convolutions packed into column symbols; "
                            "encoding is a conforming choice");
}

// ---------------------------------------------------------------------------
// finite trees T_n

Presentation tree_T_n(int n) {
    if (n < 0) throw std::invalid_argument("tree_T_n needs n >= 0");
    std::vector<std::string> syms;
    for (int i = 1; i <= std::max(n, 1); ++i) syms.push_back("a" + std::to_string(i));
    TrackedAlphabet al(syms, 1);
    TrackedAlphabet al2 = al.with_tracks(2);

    if (n == 0) {
        std::map<std::string, Dfa> rels;
        rels["le"] = empty_language(al2);
        rels["S"] = empty_language(al2);
        return Presentation("tree_T_0", al, empty_language(al), std::move(rels),
                            "the empty tree; alphabet is a placeholder");
    }

    Dfa domain;
    domain.alphabet = al;
    for (int b = 0; b < n; ++b) domain.add_state(true, -1); // state = current block
    domain.initial = 0;
    for (int b = 0; b < n; ++b)
        for (int j = b; j < n; ++j) domain.set_edge(b, al.encode({j}), j);
    domain = minimize(domain);

    Dfa le;
    le.alphabet = al2;
    le.add_state(true, -1);
    le.add_state(true, -1);
    for (int s = 0; s < n; ++s) {
        le.set_edge(0, al2.encode({s, s}), 0);
        le.set_edge(0, al2.encode({al.pad(), s}), 1);
        le.set_edge(1, al2.encode({al.pad(), s}), 1);
    }

    Dfa succ;
    succ.alphabet = al2;
    succ.add_state(false, -1);
    succ.add_state(true, -1);
    for (int s = 0; s < n; ++s) {
        succ.set_edge(0, al2.encode({s, s}), 0);
        succ.set_edge(0, al2.encode({al.pad(), s}), 1);
    }

    std::map<std::string, Dfa> rels;
    rels["le"] = finish_relation(le, domain);
    rels["S"] = finish_relation(succ, domain);
    return Presentation("tree_T_" + std::to_string(n), al, domain, std::move(rels),
                        "prefix tree over a1*...a" + std::to_string(n) + "*");
}

// ---------------------------------------------------------------------------
// T_{omega+1}

Presentation tree_T_omega_plus_1() {
    TrackedAlphabet al({"0", "1"}, 1);
    TrackedAlphabet al2 = al.with_tracks(2);
    Dfa domain = all_words_dfa(al);

    const int z = 0, o = 1; // letters
    auto col = [&](int a, int b) { return al2.encode({a, b}); };
    const int P = al.pad();

    Nfa s;
    s.alphabet = al2;
    // S(1^n) = {1^n 0, 1^(n+1)}
    int a0 = s.add_state(false);
    int aAcc = s.add_state(true);
    s.add_edge(a0, col(o, o), a0);
    s.add_edge(a0, col(P, z), aAcc);
    s.add_edge(a0, col(P, o), aAcc);
    s.add_initial(a0);
    // S(0u) = {0u0}
    int c0 = s.add_state(false);
    int c1 = s.add_state(false);
    int cAcc = s.add_state(true);
    s.add_edge(c0, col(z, z), c1);
    s.add_edge(c1, col(z, z), c1);
    s.add_edge(c1, col(o, o), c1);
    s.add_edge(c1, col(P, z), cAcc);
    s.add_initial(c0);
    // S(1^n 0 u) contains 1^n 0 u 0 for n >= 1
    int d0 = s.add_state(false);
    int d1 = s.add_state(false);
    int d2 = s.add_state(false);
    int dAcc = s.add_state(true);
    s.add_edge(d0, col(o, o), d1);
    s.add_edge(d1, col(o, o), d1);
    s.add_edge(d1, col(z, z), d2);
    s.add_edge(d2, col(z, z), d2);
    s.add_edge(d2, col(o, o), d2);
    s.add_edge(d2, col(P, z), dAcc);
    s.add_initial(d0);
    // S(1^n 0 u) contains 1^(n-1) 0 u 1: equal length, one symbol shifted
    int r = s.add_state(false);
    int s0 = s.add_state(false);
    int s1 = s.add_state(true); // last emitted second-track symbol was 1
    s.add_edge(r, col(o, o), r);
    s.add_edge(r, col(o, z), s0);
    s.add_edge(s0, col(z, z), s0);
    s.add_edge(s0, col(z, o), s1);
    s.add_edge(s1, col(o, z), s0);
    s.add_edge(s1, col(o, o), s1);
    s.add_initial(r);
    s.sort_edges();

    std::map<std::string, Dfa> rels;
    rels["S"] = finish_relation(canonical_dfa(s), domain);
    return Presentation("tree_T_omega_plus_1", al, domain, std::move(rels),
                        "successor tree of CB rank omega+1");
}

// ---------------------------------------------------------------------------
// T_omega

Presentation tree_T_omega() {
    TrackedAlphabet al({"0", "1", "a"}, 1);
    TrackedAlphabet al2 = al.with_tracks(2);
    const int z = 0, o = 1, A = 2, P = al.pad();
    auto col = [&](int a, int b) { return al2.encode({a, b}); };

    // domain {0,1}* U {0,a}*
    Dfa domain;
    domain.alphabet = al;
    int st = domain.add_state(true, -1);  // only zeros so far
    int bin = domain.add_state(true, -1); // committed to {0,1}
    int aa = domain.add_state(true, -1);  // committed to {0,a}
    domain.initial = st;
    domain.set_edge(st, al.encode({z}), st);
    domain.set_edge(st, al.encode({o}), bin);
    domain.set_edge(st, al.encode({A}), aa);
    domain.set_edge(bin, al.encode({z}), bin);
    domain.set_edge(bin, al.encode({o}), bin);
    domain.set_edge(aa, al.encode({z}), aa);
    domain.set_edge(aa, al.encode({A}), aa);
    domain = minimize(domain);

    Nfa s;
    s.alphabet = al2;
    // S(u1v) = {u1v0, u1v1}
    int u0 = s.add_state(false);
    int u1 = s.add_state(false);
    int uAcc = s.add_state(true);
    s.add_edge(u0, col(z, z), u0);
    s.add_edge(u0, col(o, o), u1);
    s.add_edge(u1, col(z, z), u1);
    s.add_edge(u1, col(o, o), u1);
    s.add_edge(u1, col(P, z), uAcc);
    s.add_edge(u1, col(P, o), uAcc);
    s.add_initial(u0);
    // S(0^n) = {0^(n+1), 0^n 1, 0^n a}
    int v0 = s.add_state(false);
    int vAcc = s.add_state(true);
    s.add_edge(v0, col(z, z), v0);
    s.add_edge(v0, col(P, z), vAcc);
    s.add_edge(v0, col(P, o), vAcc);
    s.add_edge(v0, col(P, A), vAcc);
    s.add_initial(v0);
    // S(au) = {aua}
    int w0 = s.add_state(false);
    int w1 = s.add_state(false);
    int wAcc = s.add_state(true);
    s.add_edge(w0, col(A, A), w1);
    s.add_edge(w1, col(z, z), w1);
    s.add_edge(w1, col(A, A), w1);
    s.add_edge(w1, col(P, A), wAcc);
    s.add_initial(w0);
    // S(0^n a u) contains 0^n a u a for n >= 1
    int z0 = s.add_state(false);
    int z1 = s.add_state(false);
    int z2 = s.add_state(false);
    int zAcc = s.add_state(true);
    s.add_edge(z0, col(z, z), z1);
    s.add_edge(z1, col(z, z), z1);
    s.add_edge(z1, col(A, A), z2);
    s.add_edge(z2, col(z, z), z2);
    s.add_edge(z2, col(A, A), z2);
    s.add_edge(z2, col(P, A), zAcc);
    s.add_initial(z0);
    // S(0^n a u) contains 0^(n-1) a u 0: equal length, one symbol shifted
    int r = s.add_state(false);
    int sa = s.add_state(false);
    int s0 = s.add_state(true); // last second-track symbol was 0
    s.add_edge(r, col(z, z), r);
    s.add_edge(r, col(z, A), sa);
    s.add_edge(sa, col(A, A), sa);
    s.add_edge(sa, col(A, z), s0);
    s.add_edge(s0, col(z, A), sa);
    s.add_edge(s0, col(z, z), s0);
    s.add_initial(r);
    s.sort_edges();

    std::map<std::string, Dfa> rels;
    rels["S"] = finish_relation(canonical_dfa(s), domain);
    return Presentation("tree_T_omega", al, domain, std::move(rels),
                        "successor tree of CB rank omega");
}

// ---------------------------------------------------------------------------
// fan

Presentation fan() {
    std::vector<std::string> syms{"r", "0:1", "0:.", "1:1", "1:.", ".:1"};
    TrackedAlphabet al(syms, 1);
    TrackedAlphabet al2 = al.with_tracks(2);
    auto sym = [&](const std::string& s) { return al.symbol_index(s); };
    const int R = sym("r");
    auto left_of = [&](int letter) -> char {
        if (letter == al.pad() || letter == R) return '#';
        return al.symbol_name(letter)[0]; // '0', '1' or '.'
    };
    auto right_of = [&](int letter) -> char {
        if (letter == al.pad() || letter == R) return '#';
        return al.symbol_name(letter)[2];
    };

    // domain: "r" plus pair words spelling c(0^a 1^b, 1^i) with b >= 1
    Dfa domain;
    domain.alphabet = al;
    // states x tag flag: 0 start, 1 root(done), 2 zeros, 3 ones, 4 tail
    // tag flag folded in: even = tag alive, odd = tag done
    auto did = [&](int phase, bool tag_done) { return phase * 2 + (tag_done ? 1 : 0); };
    for (int i = 0; i < 10; ++i) {
        int phase = i / 2;
        domain.add_state(phase == 1 || phase == 3 || phase == 4, -1);
    }
    domain.initial = did(0, false);
    for (int letter = 0; letter < al.num_symbols(); ++letter) {
        if (letter == R) continue;
        char l = left_of(letter), r = right_of(letter);
        for (int tag = 0; tag < 2; ++tag) {
            bool tag_done = tag == 1;
            if (tag_done && r == '1') continue; // tag resumed
            bool ntag = r == '.' ? true : tag_done;
            auto go = [&](int from_phase, int to_phase) {
                domain.set_edge(did(from_phase, tag_done), letter, did(to_phase, ntag));
            };
            if (l == '0') {
                go(0, 2);
                go(2, 2);
            } else if (l == '1') {
                go(0, 3);
                go(2, 3);
                go(3, 3);
            } else if (l == '.') {
                go(3, 4);
                go(4, 4);
            }
        }
    }
    domain.set_edge(did(0, false), R, did(1, false));
    domain = minimize(domain);

    // E piece 1: root -> first node of each chain (left part 0^a 1)
    Nfa e;
    e.alphabet = al2;
    int q0 = e.add_state(false);
    int qz = e.add_state(false);
    int qo = e.add_state(true);
    int qt = e.add_state(true);
    e.add_initial(q0);
    for (int letter = 0; letter < al.num_symbols(); ++letter) {
        if (letter == R) continue;
        char l = left_of(letter);
        uint32_t first = al2.encode({R, letter});
        uint32_t rest = al2.encode({al.pad(), letter});
        if (l == '0') {
            e.add_edge(q0, first, qz);
            e.add_edge(qz, rest, qz);
        } else if (l == '1') {
            e.add_edge(q0, first, qo);
            e.add_edge(qz, rest, qo);
        } else if (l == '.') {
            e.add_edge(qo, rest, qt);
            e.add_edge(qt, rest, qt);
        }
    }
    // E piece 2: within a chain, flip the last 0 before the 1-run
    int pA = e.add_state(false);
    int pB = e.add_state(true);
    int pC = e.add_state(true);
    e.add_initial(pA);
    for (int l1 = 0; l1 < al.num_symbols(); ++l1)
        for (int l2 = 0; l2 < al.num_symbols(); ++l2) {
            if (l1 == R || l2 == R) continue;
            if (right_of(l1) != right_of(l2)) continue; // same copy tag
            char a = left_of(l1), b = left_of(l2);
            uint32_t c = al2.encode({l1, l2});
            if (a == '0' && b == '0') e.add_edge(pA, c, pA);
            if (a == '0' && b == '1') e.add_edge(pA, c, pB);
            if (a == '1' && b == '1') e.add_edge(pB, c, pB);
            if (a == '.' && b == '.') {
                e.add_edge(pB, c, pC);
                e.add_edge(pC, c, pC);
            }
        }
    e.sort_edges();

    std::map<std::string, Dfa> rels;
    rels["E"] = finish_relation(canonical_dfa(e), domain);
    return Presentation("fan", al, domain, std::move(rels),
                        "one root, omega many chains of every finite length; chain nodes are "
                        "tagged pair words c(0^(l-p) 1^p, 1^i); conforming encoding");
}

// ---------------------------------------------------------------------------
// omega-fold disjoint union

Presentation omega_fold_union(const Presentation& p) {
    const TrackedAlphabet& base = p.alphabet();
    int nl = base.num_symbols();
    TrackedAlphabet pairs = pair_alphabet(base.symbols(), {"1"}, 1);
    TrackedAlphabet tagal({"t"}, 1);
    Dfa tag_univ = all_words_dfa(tagal);

    auto left1 = [&, nl](uint32_t c) -> int64_t {
        int l = pair_left_letter(pairs, nl, 1, static_cast<int>(c));
        if (l == nl) return kFrozenColumn;
        return l;
    };
    auto right1 = [&, nl](uint32_t c) -> int64_t {
        int r = pair_right_letter(pairs, nl, 1, static_cast<int>(c));
        if (r == 1) return kFrozenColumn;
        return tagal.encode({0});
    };
    Dfa domain = column_product(pairs, {{&p.domain(), left1}, {&tag_univ, right1}});

    std::map<std::string, Dfa> rels;
    for (const auto& [rname, rel] : p.relations()) {
        int k = rel.alphabet.tracks();
        TrackedAlphabet wide = pairs.with_tracks(k);
        TrackedAlphabet narrow = base.with_tracks(k);
        auto extract_rel = [&, nl, k](uint32_t c) -> int64_t {
            Column cols = wide.decode(c);
            Column out(static_cast<size_t>(k));
            bool all_pad = true;
            for (int t = 0; t < k; ++t) {
                int l = pair_left_letter(pairs, nl, 1, cols[static_cast<size_t>(t)]);
                out[static_cast<size_t>(t)] = l == nl ? narrow.pad() : l;
                if (l != nl) all_pad = false;
            }
            if (all_pad) return kFrozenColumn;
            return narrow.encode(out);
        };
        auto tags_equal = [&, nl, k](uint32_t c) -> int64_t {
            Column cols = wide.decode(c);
            int live = 0;
            for (int t = 0; t < k; ++t)
                if (pair_right_letter(pairs, nl, 1, cols[static_cast<size_t>(t)]) == 0) ++live;
            if (live == 0) return kFrozenColumn;
            if (live < k) return kRejectColumn; // copy tags differ
            return tagal.encode({0});
        };
        Dfa lifted = column_product(wide, {{&rel, extract_rel}, {&tag_univ, tags_equal}});
        rels[rname] = finish_relation(std::move(lifted), domain);
    }
    return Presentation("omega_fold_" + p.name(), pairs, domain, std::move(rels),
                        "omega-fold disjoint union of " + p.name() +
                            "; words are c(w, 1^i) pair words, relations require equal tags");
}

// ---------------------------------------------------------------------------
// tree product

Presentation tree_product(const Presentation& p1, const Presentation& p2) {
    const Dfa& s1 = p1.relation("S");
    const Dfa& s2 = p2.relation("S");
    const TrackedAlphabet& a1 = p1.alphabet();
    const TrackedAlphabet& a2 = p2.alphabet();
    int nl = a1.num_symbols(), nr = a2.num_symbols();
    TrackedAlphabet pairs = pair_alphabet(a1.symbols(), a2.symbols(), 1);
    TrackedAlphabet pairs2 = pairs.with_tracks(2);

    auto left1 = [&, nl, nr](uint32_t c) -> int64_t {
        int l = pair_left_letter(pairs, nl, nr, static_cast<int>(c));
        return l == nl ? kFrozenColumn : l;
    };
    auto right1 = [&, nl, nr](uint32_t c) -> int64_t {
        int r = pair_right_letter(pairs, nl, nr, static_cast<int>(c));
        return r == nr ? kFrozenColumn : r;
    };
    Dfa domain = column_product(pairs, {{&p1.domain(), left1}, {&p2.domain(), right1}});

    Word root2 = tree_root(p2);
    Dfa root2_dfa = singleton_dfa(a2, root2);
    TrackedAlphabet n1 = a1.with_tracks(2);
    TrackedAlphabet n2 = a2.with_tracks(2);
    Dfa eq1 = track_equality_dfa(n1, 0, 1);
    Dfa eq2 = track_equality_dfa(n2, 0, 1);

    auto lefts2 = [&, nl, nr](uint32_t c) -> int64_t {
        Column cols = pairs2.decode(c);
        int x = pair_left_letter(pairs, nl, nr, cols[0]);
        int u = pair_left_letter(pairs, nl, nr, cols[1]);
        if (x == nl && u == nl) return kFrozenColumn;
        return n1.encode({x, u});
    };
    auto rights2 = [&, nl, nr](uint32_t c) -> int64_t {
        Column cols = pairs2.decode(c);
        int y = pair_right_letter(pairs, nl, nr, cols[0]);
        int v = pair_right_letter(pairs, nl, nr, cols[1]);
        if (y == nr && v == nr) return kFrozenColumn;
        return n2.encode({y, v});
    };
    auto right_first = [&, nl, nr](uint32_t c) -> int64_t {
        int y = pair_right_letter(pairs, nl, nr, pairs2.decode(c)[0]);
        return y == nr ? kFrozenColumn : y;
    };
    auto right_second = [&, nl, nr](uint32_t c) -> int64_t {
        int v = pair_right_letter(pairs, nl, nr, pairs2.decode(c)[1]);
        return v == nr ? kFrozenColumn : v;
    };

    // step in the second component
    Dfa piece1 = column_product(pairs2, {{&eq1, lefts2}, {&s2, rights2}});
    // step in the first while the second sits at the root
    Dfa piece2 = column_product(
        pairs2, {{&s1, lefts2}, {&eq2, rights2}, {&root2_dfa, right_first}, {&root2_dfa, right_second}});
    Dfa s = canonical_dfa(union_nfa(piece1.to_nfa(), piece2.to_nfa()));

    std::map<std::string, Dfa> rels;
    rels["S"] = finish_relation(std::move(s), domain);
    return Presentation("product_" + p1.name() + "_" + p2.name(), pairs, domain, std::move(rels),
                        "successor-tree product");
}

// ---------------------------------------------------------------------------

Presentation successor_from_order(const Presentation& p) {
    if (!p.has_relation("le")) throw std::invalid_argument("presentation lacks relation le");
    CompiledRelation cr = compile(
        p,
        "(and (and (le x y) (not (= x y))) (not (exists z (and (and (le x z) (not (= x z))) (and "
        "(le z y) (not (= z y)))))))",
        {"x", "y"});
    return p.with_relation("S", cr.dfa);
}

Word tree_root(const Presentation& p, const std::string& rel) {
    Dfa range = project_pad_closed(p.relation(rel), 0);
    Dfa roots = combine(p.domain(), range, BoolOp::Minus);
    if (is_infinite(roots)) throw std::invalid_argument("tree has infinitely many roots");
    auto words = shortlex_enumerate(roots, 2);
    if (words.size() != 1) throw std::invalid_argument("tree root is not unique");
    return deconvolve(p.alphabet(), words[0])[0];
}

} // namespace autostruct
