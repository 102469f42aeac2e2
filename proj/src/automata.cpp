#include "autostruct/automata.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace autostruct {

namespace {

constexpr size_t kStateCap = 2000000;     // safety valve for subset blow-ups
constexpr size_t kMaterializeCap = 8000000; // max explicit edges when completing

uint32_t pad_pattern(const TrackedAlphabet& al, uint32_t col) {
    uint32_t mask = 0;
    for (int t = 0; t < al.tracks(); ++t)
        if (al.letter(col, t) == al.pad()) mask |= 1u << t;
    return mask;
}

// All columns whose pad positions are exactly `pattern`.
void columns_with_pattern(const TrackedAlphabet& al, uint32_t pattern,
                          std::vector<uint32_t>& out) {
    int k = al.tracks();
    int nsym = al.num_symbols();
    std::vector<int> free_tracks;
    for (int t = 0; t < k; ++t)
        if (!(pattern & (1u << t))) free_tracks.push_back(t);
    if (free_tracks.empty()) return; // all-pad column does not exist
    Column col(static_cast<size_t>(k), al.pad());
    std::vector<int> idx(free_tracks.size(), 0);
    while (true) {
        for (size_t i = 0; i < free_tracks.size(); ++i)
            col[static_cast<size_t>(free_tracks[i])] = idx[i];
        out.push_back(al.encode(col));
        size_t j = 0;
        while (j < idx.size()) {
            if (++idx[j] < nsym) break;
            idx[j] = 0;
            ++j;
        }
        if (j == idx.size()) break;
    }
}

struct PairHash {
    size_t operator()(const std::pair<int64_t, int64_t>& p) const {
        return std::hash<int64_t>()(p.first * 1000003LL + p.second);
    }
};

// A fallback is only meaningful while some column is unlisted.
int effective_fb(const Dfa& a, int s) {
    if (a.edges[static_cast<size_t>(s)].size() >= a.alphabet.num_columns()) return -1;
    return a.fallback[static_cast<size_t>(s)];
}

} // namespace

int Nfa::add_state(bool accept) {
    accepting.push_back(accept ? 1 : 0);
    edges.emplace_back();
    return num_states++;
}

void Nfa::add_edge(int from, uint32_t col, int to) {
    edges[static_cast<size_t>(from)].emplace_back(col, to);
}

void Nfa::add_initial(int s) {
    auto it = std::lower_bound(initial.begin(), initial.end(), s);
    if (it == initial.end() || *it != s) initial.insert(it, s);
}

void Nfa::sort_edges() {
    for (auto& e : edges) {
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
    }
}

int Dfa::add_state(bool accept, int fb) {
    accepting.push_back(accept ? 1 : 0);
    edges.emplace_back();
    fallback.push_back(fb);
    return num_states++;
}

void Dfa::set_edge(int from, uint32_t col, int to) {
    auto& row = edges[static_cast<size_t>(from)];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(col, 0),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it != row.end() && it->first == col)
        it->second = to;
    else
        row.insert(it, {col, to});
}

int Dfa::step(int state, uint32_t col) const {
    if (state < 0) return -1;
    const auto& row = edges[static_cast<size_t>(state)];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(col, 0),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it != row.end() && it->first == col) return it->second;
    return fallback[static_cast<size_t>(state)];
}

bool Dfa::accepts(const std::vector<uint32_t>& cols) const {
    int s = initial;
    for (uint32_t c : cols) {
        s = step(s, c);
        if (s < 0) return false;
    }
    return s >= 0 && accepting[static_cast<size_t>(s)];
}

Nfa Dfa::to_nfa() const {
    Nfa n;
    n.alphabet = alphabet;
    n.num_states = num_states;
    n.accepting = accepting;
    n.edges.resize(static_cast<size_t>(num_states));
    size_t extra = 0;
    for (int s = 0; s < num_states; ++s)
        if (fallback[static_cast<size_t>(s)] >= 0)
            extra += alphabet.num_columns() - edges[static_cast<size_t>(s)].size();
    if (extra > kMaterializeCap) throw std::runtime_error("alphabet too wide to materialize");
    for (int s = 0; s < num_states; ++s) {
        const auto& row = edges[static_cast<size_t>(s)];
        for (const auto& [c, t] : row)
            if (t >= 0) n.edges[static_cast<size_t>(s)].emplace_back(c, t);
        int fb = fallback[static_cast<size_t>(s)];
        if (fb >= 0) {
            size_t i = 0;
            for (uint32_t c = 0; c < alphabet.num_columns(); ++c) {
                while (i < row.size() && row[i].first < c) ++i;
                if (i < row.size() && row[i].first == c) continue;
                n.edges[static_cast<size_t>(s)].emplace_back(c, fb);
            }
        }
    }
    n.initial = {initial};
    n.sort_edges();
    return n;
}

bool accepts(const Dfa& a, const std::vector<uint32_t>& cols) { return a.accepts(cols); }

// ---------------------------------------------------------------------------
// Determinization

Dfa canonical_dfa(const Nfa& a) {
    Nfa n = a;
    n.sort_edges();

    std::map<std::vector<int>, int> subset_id;
    std::vector<std::vector<int>> subsets;
    Dfa d;
    d.alphabet = n.alphabet;

    auto intern = [&](std::vector<int> set) -> int {
        auto it = subset_id.find(set);
        if (it != subset_id.end()) return it->second;
        if (subsets.size() >= kStateCap) throw std::runtime_error("determinization too large");
        int id = static_cast<int>(subsets.size());
        subset_id.emplace(set, id);
        bool acc = false;
        for (int s : set)
            if (n.accepting[static_cast<size_t>(s)]) acc = true;
        subsets.push_back(std::move(set));
        d.add_state(acc, -1);
        return id;
    };

    std::vector<int> init = n.initial;
    int start = intern(init);
    d.initial = start;

    std::deque<int> work{start};
    std::vector<char> queued(1, 1);
    while (!work.empty()) {
        int id = work.front();
        work.pop_front();
        const std::vector<int> set = subsets[static_cast<size_t>(id)];
        // merge the sorted edge rows of all member states
        std::map<uint32_t, std::vector<int>> targets;
        for (int s : set)
            for (const auto& [c, t] : n.edges[static_cast<size_t>(s)]) targets[c].push_back(t);
        for (auto& [c, ts] : targets) {
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
            int tid = intern(std::move(ts));
            d.edges[static_cast<size_t>(id)].emplace_back(c, tid);
            if (static_cast<size_t>(tid) >= queued.size()) {
                queued.resize(static_cast<size_t>(tid) + 1, 0);
            }
            if (!queued[static_cast<size_t>(tid)]) {
                queued[static_cast<size_t>(tid)] = 1;
                work.push_back(tid);
            }
        }
    }
    return minimize(d);
}

// ---------------------------------------------------------------------------
// Minimization (Moore refinement over the sparse + fallback representation)

Dfa minimize(const Dfa& a) {
    const int n = a.num_states;
    // forward reachability
    std::vector<char> reach(static_cast<size_t>(n), 0);
    {
        std::deque<int> q{a.initial};
        reach[static_cast<size_t>(a.initial)] = 1;
        while (!q.empty()) {
            int s = q.front();
            q.pop_front();
            auto visit = [&](int t) {
                if (t >= 0 && !reach[static_cast<size_t>(t)]) {
                    reach[static_cast<size_t>(t)] = 1;
                    q.push_back(t);
                }
            };
            for (const auto& [c, t] : a.edges[static_cast<size_t>(s)]) visit(t);
            visit(effective_fb(a, s));
        }
    }
    // backward liveness (reaches an accepting state)
    std::vector<char> live(static_cast<size_t>(n), 0);
    {
        std::vector<std::vector<int>> rev(static_cast<size_t>(n));
        std::deque<int> q;
        for (int s = 0; s < n; ++s) {
            if (!reach[static_cast<size_t>(s)]) continue;
            auto link = [&](int t) {
                if (t >= 0) rev[static_cast<size_t>(t)].push_back(s);
            };
            for (const auto& [c, t] : a.edges[static_cast<size_t>(s)]) link(t);
            link(effective_fb(a, s));
            if (a.accepting[static_cast<size_t>(s)]) {
                live[static_cast<size_t>(s)] = 1;
                q.push_back(s);
            }
        }
        while (!q.empty()) {
            int s = q.front();
            q.pop_front();
            for (int p : rev[static_cast<size_t>(s)])
                if (reach[static_cast<size_t>(p)] && !live[static_cast<size_t>(p)]) {
                    live[static_cast<size_t>(p)] = 1;
                    q.push_back(p);
                }
        }
    }
    std::vector<char> keep(static_cast<size_t>(n), 0);
    for (int s = 0; s < n; ++s)
        keep[static_cast<size_t>(s)] = reach[static_cast<size_t>(s)] && live[static_cast<size_t>(s)];

    if (!keep[static_cast<size_t>(a.initial)]) {
        Dfa empty;
        empty.alphabet = a.alphabet;
        empty.add_state(false, -1);
        empty.initial = 0;
        return empty;
    }

    // Moore refinement; class -1 is the implicit dead state.
    std::vector<int> cls(static_cast<size_t>(n), -1);
    for (int s = 0; s < n; ++s)
        if (keep[static_cast<size_t>(s)]) cls[static_cast<size_t>(s)] = a.accepting[static_cast<size_t>(s)] ? 1 : 0;

    auto class_of = [&](int t) { return t < 0 ? -1 : cls[static_cast<size_t>(t)]; };

    int num_classes = 2;
    while (true) {
        std::map<std::tuple<int, int, std::vector<std::pair<uint32_t, int>>>, int> sig_id;
        std::vector<int> next(static_cast<size_t>(n), -1);
        for (int s = 0; s < n; ++s) {
            if (!keep[static_cast<size_t>(s)]) continue;
            int fb_cls = class_of(effective_fb(a, s));
            std::vector<std::pair<uint32_t, int>> sig;
            for (const auto& [c, t] : a.edges[static_cast<size_t>(s)]) {
                int tc = class_of(t);
                if (tc != fb_cls) sig.emplace_back(c, tc);
            }
            auto key = std::make_tuple(cls[static_cast<size_t>(s)], fb_cls, std::move(sig));
            auto [it, inserted] = sig_id.emplace(std::move(key), static_cast<int>(sig_id.size()));
            next[static_cast<size_t>(s)] = it->second;
        }
        int count = static_cast<int>(sig_id.size());
        bool changed = count != num_classes;
        if (!changed) {
            // class labels may have been permuted; detect genuine refinement
            std::unordered_map<int, int> m;
            for (int s = 0; s < n; ++s) {
                if (!keep[static_cast<size_t>(s)]) continue;
                auto it = m.find(cls[static_cast<size_t>(s)]);
                if (it == m.end())
                    m.emplace(cls[static_cast<size_t>(s)], next[static_cast<size_t>(s)]);
                else if (it->second != next[static_cast<size_t>(s)])
                    changed = true;
            }
        }
        cls = std::move(next);
        num_classes = count;
        if (!changed) break;
    }

    // rebuild one state per class
    std::vector<int> rep(static_cast<size_t>(num_classes), -1);
    for (int s = 0; s < n; ++s)
        if (keep[static_cast<size_t>(s)] && rep[static_cast<size_t>(cls[static_cast<size_t>(s)])] < 0)
            rep[static_cast<size_t>(cls[static_cast<size_t>(s)])] = s;

    // canonical BFS numbering over classes
    std::vector<int> order(static_cast<size_t>(num_classes), -1);
    std::vector<int> bfs;
    {
        std::deque<int> q{cls[static_cast<size_t>(a.initial)]};
        order[static_cast<size_t>(cls[static_cast<size_t>(a.initial)])] = 0;
        bfs.push_back(cls[static_cast<size_t>(a.initial)]);
        while (!q.empty()) {
            int c = q.front();
            q.pop_front();
            int s = rep[static_cast<size_t>(c)];
            int fb_cls = class_of(effective_fb(a, s));
            auto visit = [&](int tc) {
                if (tc >= 0 && order[static_cast<size_t>(tc)] < 0) {
                    order[static_cast<size_t>(tc)] = static_cast<int>(bfs.size());
                    bfs.push_back(tc);
                    q.push_back(tc);
                }
            };
            for (const auto& [col, t] : a.edges[static_cast<size_t>(s)]) {
                int tc = class_of(t);
                if (tc != fb_cls) visit(tc);
            }
            visit(fb_cls);
        }
    }

    Dfa out;
    out.alphabet = a.alphabet;
    int materialized = static_cast<int>(bfs.size());
    for (int i = 0; i < materialized; ++i) {
        int c = bfs[static_cast<size_t>(i)];
        int s = rep[static_cast<size_t>(c)];
        out.add_state(a.accepting[static_cast<size_t>(s)], -2); // fixed below
    }
    out.initial = 0;
    for (int i = 0; i < materialized; ++i) {
        int c = bfs[static_cast<size_t>(i)];
        int s = rep[static_cast<size_t>(c)];
        int fb_cls = class_of(effective_fb(a, s));
        out.fallback[static_cast<size_t>(i)] = fb_cls < 0 ? -1 : order[static_cast<size_t>(fb_cls)];
        auto& row = out.edges[static_cast<size_t>(i)];
        for (const auto& [col, t] : a.edges[static_cast<size_t>(s)]) {
            int tc = class_of(t);
            if (tc == fb_cls) continue;
            row.emplace_back(col, tc < 0 ? -1 : order[static_cast<size_t>(tc)]);
        }
        std::sort(row.begin(), row.end());
        // drop explicit dead edges when fallback is already dead
        if (fb_cls < 0)
            row.erase(std::remove_if(row.begin(), row.end(), [](const auto& e) { return e.second < 0; }),
                      row.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Products

Dfa combine(const Dfa& a, const Dfa& b, BoolOp op) {
    if (!(a.alphabet == b.alphabet)) throw std::invalid_argument("alphabet mismatch");
    auto acc = [&](int sa, int sb) {
        bool x = sa >= 0 && a.accepting[static_cast<size_t>(sa)];
        bool y = sb >= 0 && b.accepting[static_cast<size_t>(sb)];
        switch (op) {
            case BoolOp::And: return x && y;
            case BoolOp::Or: return x || y;
            case BoolOp::Minus: return x && !y;
            case BoolOp::Xor: return x != y;
        }
        return false;
    };
    // a pair is virtually dead when no continuation can ever accept
    auto dead_pair = [&](int sa, int sb) {
        if (sa >= 0 || sb >= 0) return false;
        return true; // (-1,-1) accepts nothing under every op
    };

    std::unordered_map<std::pair<int64_t, int64_t>, int, PairHash> id;
    std::vector<std::pair<int, int>> pairs;
    Dfa d;
    d.alphabet = a.alphabet;
    auto intern = [&](int sa, int sb) -> int {
        if (dead_pair(sa, sb)) return -1;
        auto key = std::make_pair<int64_t, int64_t>(sa, sb);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        if (pairs.size() >= kStateCap) throw std::runtime_error("product too large");
        int s = static_cast<int>(pairs.size());
        id.emplace(key, s);
        pairs.emplace_back(sa, sb);
        d.add_state(acc(sa, sb), -2);
        return s;
    };
    d.initial = intern(a.initial, b.initial);
    for (size_t i = 0; i < pairs.size(); ++i) {
        auto [sa, sb] = pairs[i];
        int fa = sa < 0 ? -1 : a.fallback[static_cast<size_t>(sa)];
        int fb = sb < 0 ? -1 : b.fallback[static_cast<size_t>(sb)];
        const std::vector<std::pair<uint32_t, int>> empty_row;
        const auto& ra = sa < 0 ? empty_row : a.edges[static_cast<size_t>(sa)];
        const auto& rb = sb < 0 ? empty_row : b.edges[static_cast<size_t>(sb)];
        size_t ia = 0, ib = 0;
        std::vector<std::pair<uint32_t, int>> row; // intern() grows d.edges
        while (ia < ra.size() || ib < rb.size()) {
            uint32_t c;
            int ta, tb;
            if (ib >= rb.size() || (ia < ra.size() && ra[ia].first < rb[ib].first)) {
                c = ra[ia].first;
                ta = ra[ia].second;
                tb = fb;
                ++ia;
            } else if (ia >= ra.size() || rb[ib].first < ra[ia].first) {
                c = rb[ib].first;
                ta = fa;
                tb = rb[ib].second;
                ++ib;
            } else {
                c = ra[ia].first;
                ta = ra[ia].second;
                tb = rb[ib].second;
                ++ia;
                ++ib;
            }
            row.emplace_back(c, intern(ta, tb));
        }
        int pf = intern(fa, fb);
        d.edges[i] = std::move(row);
        d.fallback[i] = pf;
    }
    return minimize(d);
}

bool subset_of(const Dfa& a, const Dfa& b) { return is_empty(combine(a, b, BoolOp::Minus)); }

bool language_equal(const Dfa& a, const Dfa& b) { return is_empty(combine(a, b, BoolOp::Xor)); }

// ---------------------------------------------------------------------------
// Canonical-word universe

Dfa universe_dfa(const TrackedAlphabet& al) {
    int k = al.tracks();
    uint32_t nmasks = 1u << k;
    if (static_cast<size_t>(nmasks) * al.num_columns() > kMaterializeCap)
        throw std::runtime_error("alphabet too wide for explicit universe");
    Dfa d;
    d.alphabet = al;
    for (uint32_t m = 0; m < nmasks; ++m) d.add_state(true, -1);
    d.initial = 0;
    for (uint32_t m = 0; m < nmasks; ++m) {
        for (uint32_t c = 0; c < al.num_columns(); ++c) {
            uint32_t p = pad_pattern(al, c);
            uint32_t nonpad = ~p & (nmasks - 1);
            if (nonpad & m) continue; // a padded track resumed
            d.set_edge(static_cast<int>(m), c, static_cast<int>(m | p));
        }
    }
    return minimize(d);
}

Dfa restrict_canonical(const Dfa& a) {
    const TrackedAlphabet& al = a.alphabet;
    int k = al.tracks();
    uint32_t full = (1u << k) - 1;

    std::unordered_map<std::pair<int64_t, int64_t>, int, PairHash> id;
    std::vector<std::pair<int, uint32_t>> states;
    Dfa d;
    d.alphabet = al;
    auto intern = [&](int s, uint32_t mask) -> int {
        if (s < 0) return -1;
        auto key = std::make_pair<int64_t, int64_t>(s, mask);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        if (states.size() >= kStateCap) throw std::runtime_error("product too large");
        int n = static_cast<int>(states.size());
        id.emplace(key, n);
        states.emplace_back(s, mask);
        d.add_state(a.accepting[static_cast<size_t>(s)], -2);
        return n;
    };
    d.initial = intern(a.initial, 0);

    // columns grouped by pad pattern, computed once per pattern on demand
    std::unordered_map<uint32_t, std::vector<uint32_t>> pattern_cols;
    auto cols_for = [&](uint32_t p) -> const std::vector<uint32_t>& {
        auto it = pattern_cols.find(p);
        if (it == pattern_cols.end()) {
            std::vector<uint32_t> v;
            columns_with_pattern(al, p, v);
            it = pattern_cols.emplace(p, std::move(v)).first;
        }
        return it->second;
    };

    for (size_t i = 0; i < states.size(); ++i) {
        auto [s, mask] = states[i];
        const auto& row = a.edges[static_cast<size_t>(s)];
        int fb = a.fallback[static_cast<size_t>(s)];
        std::vector<std::pair<uint32_t, int>> out_row; // intern() grows d.edges
        for (const auto& [c, t] : row) {
            uint32_t p = pad_pattern(al, c);
            bool compatible = !((~p & full) & mask); // no padded track resumes
            int tgt = compatible ? intern(t, mask | p) : -1;
            out_row.emplace_back(c, tgt); // keep dead edges: fallback may be live
        }
        int pf = -1;
        if (fb >= 0) {
            // unlisted columns: live-on-all-tracks columns keep the mask and
            // are legal only when mask is empty; padded patterns P need
            // mask subset of P and are enumerated explicitly.
            pf = mask == 0 ? intern(fb, 0) : -1;
            for (uint32_t p = 1; p <= full; ++p) {
                if ((mask & ~p) != 0) continue;
                if (p == full) continue; // all-pad column absent
                for (uint32_t c : cols_for(p)) {
                    bool listed = std::binary_search(
                        row.begin(), row.end(), std::make_pair(c, 0),
                        [](const auto& x, const auto& y) { return x.first < y.first; });
                    if (listed) continue;
                    int tgt = intern(fb, p);
                    if (tgt >= 0) out_row.emplace_back(c, tgt);
                }
            }
            std::sort(out_row.begin(), out_row.end());
        }
        d.edges[i] = std::move(out_row);
        d.fallback[i] = pf;
    }
    return minimize(d);
}

Dfa complement(const Dfa& a) {
    Dfa b = a;
    int sink = b.add_state(false, -1);
    b.fallback[static_cast<size_t>(sink)] = sink;
    for (int s = 0; s < b.num_states; ++s) {
        if (b.fallback[static_cast<size_t>(s)] < 0) b.fallback[static_cast<size_t>(s)] = sink;
        for (auto& [c, t] : b.edges[static_cast<size_t>(s)])
            if (t < 0) t = sink;
        b.accepting[static_cast<size_t>(s)] = b.accepting[static_cast<size_t>(s)] ? 0 : 1;
    }
    return restrict_canonical(b);
}

// ---------------------------------------------------------------------------
// Queries

bool is_empty(const Dfa& a) {
    std::vector<char> seen(static_cast<size_t>(a.num_states), 0);
    std::deque<int> q{a.initial};
    seen[static_cast<size_t>(a.initial)] = 1;
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        if (a.accepting[static_cast<size_t>(s)]) return false;
        auto visit = [&](int t) {
            if (t >= 0 && !seen[static_cast<size_t>(t)]) {
                seen[static_cast<size_t>(t)] = 1;
                q.push_back(t);
            }
        };
        for (const auto& [c, t] : a.edges[static_cast<size_t>(s)]) visit(t);
        visit(effective_fb(a, s));
    }
    return true;
}

bool is_empty(const Nfa& a) {
    std::vector<char> seen(static_cast<size_t>(a.num_states), 0);
    std::deque<int> q;
    for (int s : a.initial) {
        seen[static_cast<size_t>(s)] = 1;
        q.push_back(s);
    }
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        if (a.accepting[static_cast<size_t>(s)]) return false;
        for (const auto& [c, t] : a.edges[static_cast<size_t>(s)])
            if (!seen[static_cast<size_t>(t)]) {
                seen[static_cast<size_t>(t)] = 1;
                q.push_back(t);
            }
    }
    return true;
}

namespace {

// states both reachable and able to reach an accepting state
std::vector<char> trim_mask(const Dfa& a) {
    int n = a.num_states;
    std::vector<char> reach(static_cast<size_t>(n), 0);
    std::deque<int> q{a.initial};
    reach[static_cast<size_t>(a.initial)] = 1;
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        auto visit = [&](int t) {
            if (t >= 0 && !reach[static_cast<size_t>(t)]) {
                reach[static_cast<size_t>(t)] = 1;
                q.push_back(t);
            }
        };
        for (const auto& [c, t] : a.edges[static_cast<size_t>(s)]) visit(t);
        visit(effective_fb(a, s));
    }
    std::vector<std::vector<int>> rev(static_cast<size_t>(n));
    std::vector<char> live(static_cast<size_t>(n), 0);
    std::deque<int> q2;
    for (int s = 0; s < n; ++s) {
        if (!reach[static_cast<size_t>(s)]) continue;
        auto link = [&](int t) {
            if (t >= 0) rev[static_cast<size_t>(t)].push_back(s);
        };
        for (const auto& [c, t] : a.edges[static_cast<size_t>(s)]) link(t);
        link(effective_fb(a, s));
        if (a.accepting[static_cast<size_t>(s)]) {
            live[static_cast<size_t>(s)] = 1;
            q2.push_back(s);
        }
    }
    while (!q2.empty()) {
        int s = q2.front();
        q2.pop_front();
        for (int p : rev[static_cast<size_t>(s)])
            if (reach[static_cast<size_t>(p)] && !live[static_cast<size_t>(p)]) {
                live[static_cast<size_t>(p)] = 1;
                q2.push_back(p);
            }
    }
    for (int s = 0; s < n; ++s)
        live[static_cast<size_t>(s)] = live[static_cast<size_t>(s)] && reach[static_cast<size_t>(s)];
    return live;
}

} // namespace

bool is_infinite(const Dfa& a) {
    std::vector<char> t = trim_mask(a);
    // cycle within the trimmed subgraph -> pumpable accepted words
    int n = a.num_states;
    std::vector<int> color(static_cast<size_t>(n), 0);
    std::vector<int> stack;
    for (int s0 = 0; s0 < n; ++s0) {
        if (!t[static_cast<size_t>(s0)] || color[static_cast<size_t>(s0)]) continue;
        stack.push_back(s0);
        std::vector<size_t> pos{0};
        std::vector<std::vector<int>> succs;
        auto succ_of = [&](int s) {
            std::vector<int> out;
            for (const auto& [c, tt] : a.edges[static_cast<size_t>(s)])
                if (tt >= 0 && t[static_cast<size_t>(tt)]) out.push_back(tt);
            int fb = a.fallback[static_cast<size_t>(s)];
            if (fb >= 0 && t[static_cast<size_t>(fb)] &&
                a.edges[static_cast<size_t>(s)].size() < a.alphabet.num_columns())
                out.push_back(fb);
            return out;
        };
        succs.push_back(succ_of(s0));
        color[static_cast<size_t>(s0)] = 1;
        while (!stack.empty()) {
            int s = stack.back();
            if (pos.back() < succs.back().size()) {
                int nx = succs.back()[pos.back()++];
                if (color[static_cast<size_t>(nx)] == 1) return true;
                if (color[static_cast<size_t>(nx)] == 0) {
                    color[static_cast<size_t>(nx)] = 1;
                    stack.push_back(nx);
                    pos.push_back(0);
                    succs.push_back(succ_of(nx));
                }
            } else {
                color[static_cast<size_t>(s)] = 2;
                stack.pop_back();
                pos.pop_back();
                succs.pop_back();
            }
        }
    }
    return false;
}

bool is_infinite(const Nfa& a) { return is_infinite(canonical_dfa(a)); }

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// first column not explicitly listed, or num_columns if the row is full
std::vector<uint32_t> row_gaps(const Dfa& a, int s, size_t cap) {
    std::vector<uint32_t> out;
    const auto& row = a.edges[static_cast<size_t>(s)];
    size_t i = 0;
    for (uint32_t c = 0; c < a.alphabet.num_columns() && out.size() < cap; ++c) {
        while (i < row.size() && row[i].first < c) ++i;
        if (i < row.size() && row[i].first == c) continue;
        out.push_back(c);
    }
    return out;
}

} // namespace

std::vector<std::vector<uint32_t>> shortlex_enumerate(const Dfa& a, size_t limit) {
    std::vector<std::vector<uint32_t>> out;
    if (limit == 0) return out;
    std::vector<char> alive = trim_mask(a);
    if (!alive[static_cast<size_t>(a.initial)]) return out;

    // distance-to-accept for layer termination
    for (size_t len = 0;; ++len) {
        // states reachable in exactly `len` steps within the trimmed part
        std::vector<char> cur(static_cast<size_t>(a.num_states), 0);
        cur[static_cast<size_t>(a.initial)] = 1;
        bool any = true;
        for (size_t d = 0; d < len && any; ++d) {
            std::vector<char> nxt(static_cast<size_t>(a.num_states), 0);
            any = false;
            for (int s = 0; s < a.num_states; ++s) {
                if (!cur[static_cast<size_t>(s)] || !alive[static_cast<size_t>(s)]) continue;
                for (const auto& [c, t] : a.edges[static_cast<size_t>(s)])
                    if (t >= 0 && alive[static_cast<size_t>(t)]) nxt[static_cast<size_t>(t)] = 1, any = true;
                int fb = a.fallback[static_cast<size_t>(s)];
                if (fb >= 0 && alive[static_cast<size_t>(fb)] &&
                    a.edges[static_cast<size_t>(s)].size() < a.alphabet.num_columns())
                    nxt[static_cast<size_t>(fb)] = 1, any = true;
            }
            cur = std::move(nxt);
        }
        bool layer_alive = false;
        for (int s = 0; s < a.num_states && !layer_alive; ++s)
            layer_alive = cur[static_cast<size_t>(s)] && alive[static_cast<size_t>(s)];
        if (!layer_alive) return out;

        // can[s][r]: a length-r accepted continuation exists from s
        std::vector<std::vector<char>> can(len + 1, std::vector<char>(static_cast<size_t>(a.num_states), 0));
        for (int s = 0; s < a.num_states; ++s)
            can[0][static_cast<size_t>(s)] = a.accepting[static_cast<size_t>(s)];
        for (size_t r = 1; r <= len; ++r)
            for (int s = 0; s < a.num_states; ++s) {
                bool ok = false;
                for (const auto& [c, t] : a.edges[static_cast<size_t>(s)])
                    if (t >= 0 && can[r - 1][static_cast<size_t>(t)]) {
                        ok = true;
                        break;
                    }
                int fb = a.fallback[static_cast<size_t>(s)];
                if (!ok && fb >= 0 && can[r - 1][static_cast<size_t>(fb)] &&
                    a.edges[static_cast<size_t>(s)].size() < a.alphabet.num_columns())
                    ok = true;
                can[r][static_cast<size_t>(s)] = ok;
            }
        if (!can[len][static_cast<size_t>(a.initial)]) continue;

        // lexicographic DFS over column codes
        std::vector<uint32_t> word;
        std::function<bool(int, size_t)> dfs = [&](int s, size_t rem) -> bool {
            if (rem == 0) {
                if (a.accepting[static_cast<size_t>(s)]) {
                    out.push_back(word);
                    if (out.size() >= limit) return true;
                }
                return false;
            }
            const auto& row = a.edges[static_cast<size_t>(s)];
            int fb = a.fallback[static_cast<size_t>(s)];
            bool fb_ok = fb >= 0 && can[rem - 1][static_cast<size_t>(fb)];
            auto descend = [&](uint32_t c, int t) {
                word.push_back(c);
                bool full = dfs(t, rem - 1);
                word.pop_back();
                return full;
            };
            if (!fb_ok) {
                for (const auto& [c, t] : row) {
                    if (t < 0 || !can[rem - 1][static_cast<size_t>(t)]) continue;
                    if (descend(c, t)) return true;
                }
            } else {
                size_t i = 0;
                for (uint32_t c = 0; c < a.alphabet.num_columns(); ++c) {
                    int t = fb;
                    if (i < row.size() && row[i].first == c) {
                        t = row[i].second;
                        ++i;
                    }
                    if (t < 0 || !can[rem - 1][static_cast<size_t>(t)]) continue;
                    if (descend(c, t)) return true;
                }
            }
            return false;
        };
        if (dfs(a.initial, len)) return out;
    }
}

std::vector<std::vector<uint32_t>> shortlex_enumerate(const Nfa& a, size_t limit) {
    return shortlex_enumerate(canonical_dfa(a), limit);
}

std::optional<std::vector<uint32_t>> shortest_word(const Dfa& a) {
    auto v = shortlex_enumerate(a, 1);
    if (v.empty()) return std::nullopt;
    return v[0];
}

// ---------------------------------------------------------------------------
// Track surgery

namespace {

Dfa materialize_complete(const Dfa& a) {
    bool needed = false;
    for (int s = 0; s < a.num_states; ++s)
        if (a.fallback[static_cast<size_t>(s)] >= 0) needed = true;
    if (!needed) return a;
    size_t total = static_cast<size_t>(a.num_states) * a.alphabet.num_columns();
    if (total > kMaterializeCap) throw std::runtime_error("alphabet too wide to materialize");
    Dfa b = a;
    for (int s = 0; s < b.num_states; ++s) {
        int fb = b.fallback[static_cast<size_t>(s)];
        if (fb < 0) continue;
        for (uint32_t c : row_gaps(b, s, b.alphabet.num_columns()))
            b.edges[static_cast<size_t>(s)].emplace_back(c, fb);
        std::sort(b.edges[static_cast<size_t>(s)].begin(), b.edges[static_cast<size_t>(s)].end());
        b.fallback[static_cast<size_t>(s)] = -1;
    }
    return b;
}

} // namespace

Dfa permute_tracks(const Dfa& a, const std::vector<int>& perm) {
    const TrackedAlphabet& al = a.alphabet;
    if (static_cast<int>(perm.size()) != al.tracks()) throw std::invalid_argument("bad permutation");
    Dfa b = materialize_complete(a);
    Nfa n;
    n.alphabet = al;
    n.num_states = b.num_states;
    n.accepting = b.accepting;
    n.initial = {b.initial};
    n.edges.resize(static_cast<size_t>(b.num_states));
    for (int s = 0; s < b.num_states; ++s)
        for (const auto& [c, t] : b.edges[static_cast<size_t>(s)]) {
            if (t < 0) continue;
            Column col = al.decode(c);
            Column out(col.size());
            for (int tr = 0; tr < al.tracks(); ++tr)
                out[static_cast<size_t>(perm[static_cast<size_t>(tr)])] = col[static_cast<size_t>(tr)];
            n.add_edge(s, al.encode(out), t);
        }
    return canonical_dfa(n);
}

Dfa cylindrify(const Dfa& a, int at) {
    const TrackedAlphabet& al = a.alphabet;
    if (at < 0 || at > al.tracks()) throw std::out_of_range("cylindrify position");
    TrackedAlphabet wide = al.with_tracks(al.tracks() + 1);
    Dfa b = materialize_complete(a);
    Nfa n;
    n.alphabet = wide;
    n.num_states = b.num_states;
    n.accepting = b.accepting;
    n.initial = {b.initial};
    n.edges.resize(static_cast<size_t>(b.num_states));
    for (int s = 0; s < b.num_states; ++s) {
        for (const auto& [c, t] : b.edges[static_cast<size_t>(s)]) {
            if (t < 0) continue;
            Column col = al.decode(c);
            Column out(col.size() + 1);
            for (int tr = 0, j = 0; tr < wide.tracks(); ++tr)
                if (tr != at) out[static_cast<size_t>(tr)] = col[static_cast<size_t>(j++)];
            for (int letter = 0; letter <= wide.pad(); ++letter) {
                out[static_cast<size_t>(at)] = letter;
                n.add_edge(s, wide.encode(out), t);
            }
        }
        // the fresh track may keep running after all original tracks padded
        Column out(static_cast<size_t>(wide.tracks()), wide.pad());
        for (int letter = 0; letter < wide.num_symbols(); ++letter) {
            out[static_cast<size_t>(at)] = letter;
            n.add_edge(s, wide.encode(out), s);
        }
    }
    Dfa res = canonical_dfa(n);
    return restrict_canonical(res);
}

Dfa project_pad_closed(const Nfa& a, int drop) {
    const TrackedAlphabet& al = a.alphabet;
    if (al.tracks() < 2) throw std::invalid_argument("cannot project a 1-track automaton");
    if (drop < 0 || drop >= al.tracks()) throw std::out_of_range("track index");
    Dfa clean = restrict_canonical(canonical_dfa(a));
    Dfa c = materialize_complete(clean);
    TrackedAlphabet narrow = al.with_tracks(al.tracks() - 1);

    Nfa n;
    n.alphabet = narrow;
    n.num_states = c.num_states;
    n.accepting = c.accepting;
    n.initial = {c.initial};
    n.edges.resize(static_cast<size_t>(c.num_states));
    std::vector<std::vector<int>> pad_rev(static_cast<size_t>(c.num_states));
    for (int s = 0; s < c.num_states; ++s)
        for (const auto& [col, t] : c.edges[static_cast<size_t>(s)]) {
            if (t < 0) continue;
            Column full = al.decode(col);
            Column rest;
            bool all_pad = true;
            for (int tr = 0; tr < al.tracks(); ++tr) {
                if (tr == drop) continue;
                rest.push_back(full[static_cast<size_t>(tr)]);
                if (full[static_cast<size_t>(tr)] != al.pad()) all_pad = false;
            }
            if (all_pad)
                pad_rev[static_cast<size_t>(t)].push_back(s); // only the dropped track was live
            else
                n.add_edge(s, narrow.encode(rest), t);
        }
    // accept anywhere an accepting state is reachable via dropped-track-only columns
    std::deque<int> q;
    for (int s = 0; s < c.num_states; ++s)
        if (n.accepting[static_cast<size_t>(s)]) q.push_back(s);
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        for (int p : pad_rev[static_cast<size_t>(s)])
            if (!n.accepting[static_cast<size_t>(p)]) {
                n.accepting[static_cast<size_t>(p)] = 1;
                q.push_back(p);
            }
    }
    return canonical_dfa(n);
}

Dfa project_pad_closed(const Dfa& a, int drop) { return project_pad_closed(a.to_nfa(), drop); }

Dfa singleton_dfa(const TrackedAlphabet& al, const Word& w) {
    if (al.tracks() != 1) throw std::invalid_argument("singleton_dfa expects 1 track");
    Dfa d;
    d.alphabet = al;
    for (size_t i = 0; i <= w.size(); ++i) d.add_state(i == w.size(), -1);
    d.initial = 0;
    for (size_t i = 0; i < w.size(); ++i)
        d.set_edge(static_cast<int>(i), al.encode({w[i]}), static_cast<int>(i + 1));
    return d;
}

Dfa all_words_dfa(const TrackedAlphabet& al) { return universe_dfa(al); }

Dfa track_equality_dfa(const TrackedAlphabet& al, int t1, int t2) {
    if (t1 == t2 || t1 >= al.tracks() || t2 >= al.tracks()) throw std::invalid_argument("bad tracks");
    // running: both tracks live and equal; done: both padded
    size_t total = 2u * al.num_columns();
    if (total > kMaterializeCap) throw std::runtime_error("alphabet too wide");
    Dfa d;
    d.alphabet = al;
    d.add_state(true, -1);
    d.add_state(true, -1);
    d.initial = 0;
    for (uint32_t c = 0; c < al.num_columns(); ++c) {
        int l1 = al.letter(c, t1), l2 = al.letter(c, t2);
        if (l1 == l2 && l1 != al.pad()) d.set_edge(0, c, 0);
        if (l1 == al.pad() && l2 == al.pad()) {
            d.set_edge(0, c, 1);
            d.set_edge(1, c, 1);
        }
    }
    return restrict_canonical(d);
}

Dfa intersect_lifted(const Dfa& wide_base, const Dfa& narrow, const std::vector<int>& tracks) {
    const TrackedAlphabet& al = wide_base.alphabet;
    if (static_cast<int>(tracks.size()) != narrow.alphabet.tracks())
        throw std::invalid_argument("track selection does not match narrow arity");
    if (!al.same_symbols(narrow.alphabet)) throw std::invalid_argument("symbol set mismatch");
    Dfa wide = materialize_complete(wide_base);
    const TrackedAlphabet& nal = narrow.alphabet;

    std::unordered_map<std::pair<int64_t, int64_t>, int, PairHash> id;
    std::vector<std::pair<int, int>> states;
    Dfa d;
    d.alphabet = al;
    auto intern = [&](int w, int n) -> int {
        if (w < 0 || n < 0) return -1;
        auto key = std::make_pair<int64_t, int64_t>(w, n);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        if (states.size() >= kStateCap) throw std::runtime_error("product too large");
        int s = static_cast<int>(states.size());
        id.emplace(key, s);
        states.emplace_back(w, n);
        d.add_state(wide.accepting[static_cast<size_t>(w)] && narrow.accepting[static_cast<size_t>(n)], -1);
        return s;
    };
    d.initial = intern(wide.initial, narrow.initial);
    if (d.initial < 0) {
        Dfa empty;
        empty.alphabet = al;
        empty.add_state(false, -1);
        return empty;
    }
    for (size_t i = 0; i < states.size(); ++i) {
        auto [w, ns] = states[i];
        for (const auto& [c, t] : wide.edges[static_cast<size_t>(w)]) {
            if (t < 0) continue;
            Column sub(tracks.size());
            bool all_pad = true;
            for (size_t j = 0; j < tracks.size(); ++j) {
                sub[j] = al.letter(c, tracks[j]);
                if (sub[j] != al.pad()) all_pad = false;
            }
            int n2 = all_pad ? ns : narrow.step(ns, nal.encode(sub));
            int tgt = intern(t, n2);
            if (tgt >= 0) d.edges[i].emplace_back(c, tgt);
        }
        std::sort(d.edges[i].begin(), d.edges[i].end());
    }
    return minimize(d);
}

Dfa fix_track_word(const Dfa& a, int track, const Word& w) {
    Dfa single = singleton_dfa(a.alphabet.with_tracks(1), w);
    return intersect_lifted(a, single, {track});
}

Dfa translate_alphabet(const Dfa& a, const TrackedAlphabet& wider) {
    if (wider.tracks() != a.alphabet.tracks()) throw std::invalid_argument("track mismatch");
    std::vector<int> remap(static_cast<size_t>(a.alphabet.num_symbols() + 1));
    for (int i = 0; i < a.alphabet.num_symbols(); ++i) {
        int j = wider.symbol_index(a.alphabet.symbol_name(i));
        if (j < 0) throw std::invalid_argument("target alphabet misses symbol " + a.alphabet.symbol_name(i));
        remap[static_cast<size_t>(i)] = j;
    }
    remap[static_cast<size_t>(a.alphabet.num_symbols())] = wider.pad();
    Dfa b = materialize_complete(a);
    Dfa d;
    d.alphabet = wider;
    d.num_states = b.num_states;
    d.initial = b.initial;
    d.accepting = b.accepting;
    d.fallback.assign(static_cast<size_t>(b.num_states), -1);
    d.edges.resize(static_cast<size_t>(b.num_states));
    for (int s = 0; s < b.num_states; ++s) {
        for (const auto& [c, t] : b.edges[static_cast<size_t>(s)]) {
            if (t < 0) continue;
            Column col = a.alphabet.decode(c);
            for (auto& x : col) x = remap[static_cast<size_t>(x)];
            d.edges[static_cast<size_t>(s)].emplace_back(wider.encode(col), t);
        }
        std::sort(d.edges[static_cast<size_t>(s)].begin(), d.edges[static_cast<size_t>(s)].end());
    }
    return minimize(d);
}

Nfa translate_alphabet(const Nfa& a, const TrackedAlphabet& wider) {
    if (wider.tracks() != a.alphabet.tracks()) throw std::invalid_argument("track mismatch");
    std::vector<int> remap(static_cast<size_t>(a.alphabet.num_symbols() + 1));
    for (int i = 0; i < a.alphabet.num_symbols(); ++i) {
        int j = wider.symbol_index(a.alphabet.symbol_name(i));
        if (j < 0) throw std::invalid_argument("target alphabet misses symbol " + a.alphabet.symbol_name(i));
        remap[static_cast<size_t>(i)] = j;
    }
    remap[static_cast<size_t>(a.alphabet.num_symbols())] = wider.pad();
    Nfa n = a;
    n.alphabet = wider;
    for (auto& row : n.edges)
        for (auto& [c, t] : row) {
            Column col = a.alphabet.decode(c);
            for (auto& x : col) x = remap[static_cast<size_t>(x)];
            c = wider.encode(col);
        }
    n.sort_edges();
    return n;
}

Nfa union_nfa(const Nfa& a, const Nfa& b) {
    if (!(a.alphabet == b.alphabet)) throw std::invalid_argument("alphabet mismatch");
    Nfa n = a;
    int base = n.num_states;
    for (int s = 0; s < b.num_states; ++s) n.add_state(b.accepting[static_cast<size_t>(s)]);
    for (int s = 0; s < b.num_states; ++s)
        for (const auto& [c, t] : b.edges[static_cast<size_t>(s)]) n.add_edge(base + s, c, base + t);
    for (int s : b.initial) n.add_initial(base + s);
    n.sort_edges();
    return n;
}

Dfa prepend_column(const Dfa& a, uint32_t col) {
    Dfa d = a;
    int fresh = d.add_state(false, -1);
    d.set_edge(fresh, col, d.initial);
    d.initial = fresh;
    return minimize(d);
}

} // namespace autostruct
