#include "autostruct/ranks.hpp"

#include "autostruct/presentations_library.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace autostruct {

namespace {

int fb_of(const Dfa& a, int s) {
    if (a.edges[static_cast<size_t>(s)].size() >= a.alphabet.num_columns()) return -1;
    return a.fallback[static_cast<size_t>(s)];
}

} // namespace

RankAssignment ordinal_height_finite(int num_elements,
                                     const std::vector<std::pair<int, int>>& edges,
                                     bool downward_closed) {
    std::vector<std::vector<int>> preds(static_cast<size_t>(num_elements));
    for (const auto& [lo, hi] : edges) preds[static_cast<size_t>(hi)].push_back(lo);

    RankAssignment out;
    out.ranks.assign(static_cast<size_t>(num_elements), -1);
    out.exact = downward_closed;
    std::vector<int> color(static_cast<size_t>(num_elements), 0); // 0 new, 1 active, 2 done
    std::vector<int> stack;

    // iterative DFS computing rank(x) = max over preds of rank+1
    for (int root = 0; root < num_elements; ++root) {
        if (color[static_cast<size_t>(root)]) continue;
        std::vector<std::pair<int, size_t>> frames{{root, 0}};
        color[static_cast<size_t>(root)] = 1;
        stack.push_back(root);
        while (!frames.empty()) {
            auto& [x, i] = frames.back();
            if (i < preds[static_cast<size_t>(x)].size()) {
                int y = preds[static_cast<size_t>(x)][i++];
                if (color[static_cast<size_t>(y)] == 1) {
                    // cycle witness: slice the DFS stack from y
                    std::vector<int> cyc;
                    auto it = std::find(stack.begin(), stack.end(), y);
                    cyc.assign(it, stack.end());
                    throw CycleError(std::move(cyc));
                }
                if (color[static_cast<size_t>(y)] == 0) {
                    color[static_cast<size_t>(y)] = 1;
                    stack.push_back(y);
                    frames.emplace_back(y, 0);
                }
            } else {
                int r = 0;
                for (int y : preds[static_cast<size_t>(x)])
                    r = std::max(r, out.ranks[static_cast<size_t>(y)] + 1);
                out.ranks[static_cast<size_t>(x)] = r;
                color[static_cast<size_t>(x)] = 2;
                stack.pop_back();
                frames.pop_back();
            }
        }
    }
    for (int r : out.ranks) out.height = std::max(out.height, r);
    return out;
}

int Fragment::index_of(const Word& w) const {
    auto it = std::find(elements.begin(), elements.end(), w);
    return it == elements.end() ? -1 : static_cast<int>(it - elements.begin());
}

Fragment reachable_fragment(const Presentation& p, const std::string& rel,
                            const std::vector<Word>& seeds, int depth, size_t pred_cap) {
    CompiledRelation r = compile(p, "(" + rel + " x y)", {"x", "y"});
    Fragment f;
    std::map<Word, int> index;
    std::deque<std::pair<Word, int>> queue;
    for (const Word& s : seeds) {
        if (index.count(s)) continue;
        index.emplace(s, static_cast<int>(f.elements.size()));
        f.elements.push_back(s);
        queue.emplace_back(s, 0);
    }
    while (!queue.empty()) {
        auto [w, d] = queue.front();
        queue.pop_front();
        if (d >= depth) {
            // unexplored frontier: predecessors may be missing
            CompiledRelation ps = substitute_constant(p, r, "y", w);
            if (!is_empty(ps.dfa)) {
                for (const auto& cw : shortlex_enumerate(ps.dfa, pred_cap + 1)) {
                    Word y = deconvolve(p.alphabet(), cw)[0];
                    if (!index.count(y)) {
                        f.closed = false;
                        break;
                    }
                }
            }
            continue;
        }
        CompiledRelation ps = substitute_constant(p, r, "y", w);
        if (is_infinite(ps.dfa)) f.closed = false;
        auto preds = shortlex_enumerate(ps.dfa, pred_cap + 1);
        if (preds.size() > pred_cap) {
            f.closed = false;
            preds.resize(pred_cap);
        }
        for (const auto& cw : preds) {
            Word y = deconvolve(p.alphabet(), cw)[0];
            if (!index.count(y)) {
                index.emplace(y, static_cast<int>(f.elements.size()));
                f.elements.push_back(y);
                queue.emplace_back(y, d + 1);
            }
        }
    }
    // all relation edges inside the fragment
    const Dfa& rd = r.dfa;
    for (size_t i = 0; i < f.elements.size(); ++i)
        for (size_t j = 0; j < f.elements.size(); ++j)
            if (rd.accepts(convolve(rd.alphabet, {f.elements[i], f.elements[j]})))
                f.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return f;
}

RankAssignment fragment_height(const Fragment& f) {
    RankAssignment r =
        ordinal_height_finite(static_cast<int>(f.elements.size()), f.edges, f.closed);
    if (!f.closed) r.fragment_note = "fragment truncated; ranks are lower bounds";
    return r;
}

Dfa down_set(const Presentation& p, const Word& u) {
    if (!p.has_relation("le")) throw std::invalid_argument("presentation lacks relation le");
    CompiledRelation strict = compile(p, "(and (le x y) (not (= x y)))", {"x", "y"});
    return substitute_constant(p, strict, "y", u).dfa;
}

Dfa residual_set(const Presentation& p, const Word& u, const Word& v) {
    Dfa cone = down_set(p, u);
    // words extending v
    Dfa pre;
    pre.alphabet = p.alphabet();
    for (size_t i = 0; i <= v.size(); ++i) pre.add_state(i == v.size(), -1);
    pre.initial = 0;
    for (size_t i = 0; i < v.size(); ++i)
        pre.set_edge(static_cast<int>(i), p.alphabet().encode({v[i]}), static_cast<int>(i + 1));
    pre.fallback[v.size()] = static_cast<int>(v.size());
    return combine(cone, pre, BoolOp::And);
}

Dfa strict_order_dfa(const Presentation& p) {
    return compile(p, "(and (le x y) (not (= x y)))", {"x", "y"}).dfa;
}

StateSignature state_signature(const Presentation& p, const Dfa& le, const Word& u,
                               const Word& v) {
    if (u.size() != v.size()) throw std::invalid_argument("signature needs equal lengths");
    const Dfa& dom = p.domain();
    int ds = dom.initial;
    for (int s : v) {
        ds = dom.step(ds, p.alphabet().encode({s}));
        if (ds < 0) break;
    }
    int ls = le.initial;
    auto cols = convolve(le.alphabet, {v, u});
    for (uint32_t c : cols) {
        ls = le.step(ls, c);
        if (ls < 0) break;
    }
    return StateSignature{ds, ls};
}

StateSignature state_signature(const Presentation& p, const Word& u, const Word& v) {
    return state_signature(p, strict_order_dfa(p), u, v);
}

// ---------------------------------------------------------------------------
// Cantor-Bendixson machinery

namespace {

// graph successors of a DFA state, fallback included when meaningful
std::vector<std::pair<uint32_t, int>> state_successors(const Dfa& a, int s, bool& has_fb,
                                                       int& fb_target) {
    std::vector<std::pair<uint32_t, int>> out;
    for (const auto& [c, t] : a.edges[static_cast<size_t>(s)])
        if (t >= 0) out.emplace_back(c, t);
    int fb = fb_of(a, s);
    has_fb = fb >= 0;
    fb_target = fb;
    return out;
}

} // namespace

Dfa cb_derivative_prefix(const Dfa& tree) {
    if (tree.alphabet.tracks() != 1)
        throw std::invalid_argument("prefix trees are 1-track languages");
    Dfa t = minimize(tree);
    if (is_empty(t)) return t;
    // prefix-closedness: closing under prefixes must not add words; in the
    // trimmed minimal automaton every state reaches an accepting state, so
    // the closure just accepts everywhere
    {
        Dfa closure = t;
        for (int s = 0; s < closure.num_states; ++s) closure.accepting[static_cast<size_t>(s)] = 1;
        closure = minimize(closure);
        if (!language_equal(closure, t))
            throw std::invalid_argument("language is not prefix-closed");
    }
    int n = t.num_states;

    // states on cycles (within the trimmed minimal automaton)
    std::vector<char> on_cycle(static_cast<size_t>(n), 0);
    {
        std::vector<int> color(static_cast<size_t>(n), 0);
        std::vector<int> stack;
        for (int root = 0; root < n; ++root) {
            if (color[static_cast<size_t>(root)]) continue;
            std::vector<std::pair<int, int>> frames{{root, 0}};
            color[static_cast<size_t>(root)] = 1;
            stack.push_back(root);
            while (!frames.empty()) {
                auto& [s, phase] = frames.back();
                bool has_fb;
                int fb;
                auto succ = state_successors(t, s, has_fb, fb);
                if (has_fb) succ.emplace_back(0, fb);
                if (phase < static_cast<int>(succ.size())) {
                    int nx = succ[static_cast<size_t>(phase++)].second;
                    if (color[static_cast<size_t>(nx)] == 1) {
                        // mark every state on the stack segment as cyclic
                        auto it = std::find(stack.begin(), stack.end(), nx);
                        for (; it != stack.end(); ++it) on_cycle[static_cast<size_t>(*it)] = 1;
                    } else if (color[static_cast<size_t>(nx)] == 0) {
                        color[static_cast<size_t>(nx)] = 1;
                        stack.push_back(nx);
                        frames.emplace_back(nx, 0);
                    }
                } else {
                    color[static_cast<size_t>(s)] = 2;
                    stack.pop_back();
                    frames.pop_back();
                }
            }
        }
    }
    // inf[s]: some cycle is reachable from s
    std::vector<char> inf(static_cast<size_t>(n), 0);
    {
        std::vector<std::vector<int>> rev(static_cast<size_t>(n));
        std::deque<int> q;
        for (int s = 0; s < n; ++s) {
            bool has_fb;
            int fb;
            for (const auto& [c, tgt] : state_successors(t, s, has_fb, fb))
                rev[static_cast<size_t>(tgt)].push_back(s);
            if (has_fb) rev[static_cast<size_t>(fb)].push_back(s);
            if (on_cycle[static_cast<size_t>(s)]) {
                inf[static_cast<size_t>(s)] = 1;
                q.push_back(s);
            }
        }
        while (!q.empty()) {
            int s = q.front();
            q.pop_front();
            for (int p : rev[static_cast<size_t>(s)])
                if (!inf[static_cast<size_t>(p)]) {
                    inf[static_cast<size_t>(p)] = 1;
                    q.push_back(p);
                }
        }
    }
    // branching states: two distinct letters with infinite subtrees
    std::vector<char> branching(static_cast<size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
        int count = 0;
        bool has_fb;
        int fb;
        auto succ = state_successors(t, s, has_fb, fb);
        for (const auto& [c, tgt] : succ)
            if (inf[static_cast<size_t>(tgt)]) ++count;
        if (has_fb && inf[static_cast<size_t>(fb)])
            count += static_cast<int>(t.alphabet.num_columns() - t.edges[static_cast<size_t>(s)].size());
        branching[static_cast<size_t>(s)] = count >= 2;
    }
    // d(T): words from which a branching state is reachable
    std::vector<char> keep(static_cast<size_t>(n), 0);
    {
        std::vector<std::vector<int>> rev(static_cast<size_t>(n));
        std::deque<int> q;
        for (int s = 0; s < n; ++s) {
            bool has_fb;
            int fb;
            for (const auto& [c, tgt] : state_successors(t, s, has_fb, fb))
                rev[static_cast<size_t>(tgt)].push_back(s);
            if (has_fb) rev[static_cast<size_t>(fb)].push_back(s);
            if (branching[static_cast<size_t>(s)]) {
                keep[static_cast<size_t>(s)] = 1;
                q.push_back(s);
            }
        }
        while (!q.empty()) {
            int s = q.front();
            q.pop_front();
            for (int p : rev[static_cast<size_t>(s)])
                if (!keep[static_cast<size_t>(p)]) {
                    keep[static_cast<size_t>(p)] = 1;
                    q.push_back(p);
                }
        }
    }
    Dfa d = t;
    for (int s = 0; s < n; ++s) d.accepting[static_cast<size_t>(s)] = keep[static_cast<size_t>(s)];
    return minimize(d);
}

CbRankResult cb_rank_prefix(const Dfa& tree, int budget) {
    CbRankResult out{false, 0, {}};
    Dfa stage = minimize(tree);
    out.stage_sizes.push_back(stage.num_states);
    for (int k = 0; k < budget; ++k) {
        Dfa next = cb_derivative_prefix(stage);
        if (language_equal(next, stage)) {
            out.exact = true;
            out.rank = k;
            return out;
        }
        stage = std::move(next);
        out.stage_sizes.push_back(stage.num_states);
    }
    // the budget'th derivative might close the loop exactly at the cap
    Dfa next = cb_derivative_prefix(stage);
    if (language_equal(next, stage)) {
        out.exact = true;
        out.rank = budget;
    } else {
        out.exact = false;
        out.rank = budget; // lower bound
    }
    return out;
}

size_t CbStageReport::surviving(size_t stage) const {
    size_t n = 0;
    for (char c : stages[stage]) n += c != 0;
    return n;
}

CbStageReport cb_estimate_truncated(const Presentation& p, int depth, int max_iterations,
                                    const std::string& rel) {
    CbStageReport rep;
    rep.depth_budget = depth;
    Word root = tree_root(p, rel);
    CompiledRelation s = compile(p, "(" + rel + " x y)", {"x", "y"});

    std::map<Word, int> index;
    auto add = [&](const Word& w, int d, int parent) {
        index.emplace(w, static_cast<int>(rep.nodes.size()));
        rep.nodes.push_back(w);
        rep.node_depth.push_back(d);
        rep.parent.push_back(parent);
    };
    add(root, 0, -1);
    std::vector<std::vector<int>> children;
    children.emplace_back();
    for (size_t i = 0; i < rep.nodes.size(); ++i) {
        if (rep.node_depth[i] >= depth) continue;
        CompiledRelation kids = substitute_constant(p, s, "x", rep.nodes[i]);
        if (is_infinite(kids.dfa))
            throw std::runtime_error("node has infinitely many successors; not a desk-scale tree");
        for (const auto& cw : shortlex_enumerate(kids.dfa, 4096)) {
            Word y = deconvolve(p.alphabet(), cw)[0];
            if (index.count(y)) continue; // re-entrant successor; tree check elsewhere
            add(y, rep.node_depth[i] + 1, static_cast<int>(i));
            children.emplace_back();
            children[i].push_back(static_cast<int>(rep.nodes.size()) - 1);
        }
    }

    size_t n = rep.nodes.size();
    std::vector<char> cur(n, 1);
    rep.stages.push_back(cur);
    for (int it = 0; it < max_iterations; ++it) {
        // Each derivative consumes one layer of the truncation, so the
        // pseudo-infinite frontier recedes with the stage index.
        int frontier = depth - it;
        std::vector<char> alive(n, 0);
        for (size_t i = n; i-- > 0;) {
            if (!cur[i]) continue;
            if (rep.node_depth[i] >= frontier) alive[i] = 1;
            for (int c : children[i])
                if (cur[static_cast<size_t>(c)] && alive[static_cast<size_t>(c)]) alive[i] = 1;
        }
        // branch = at least two alive children
        std::vector<char> branch(n, 0);
        for (size_t i = 0; i < n; ++i) {
            if (!cur[i]) continue;
            int cnt = 0;
            for (int c : children[i])
                if (cur[static_cast<size_t>(c)] && alive[static_cast<size_t>(c)]) ++cnt;
            branch[i] = cnt >= 2;
        }
        // survive = some branching node in the subtree
        std::vector<char> next(n, 0);
        for (size_t i = n; i-- > 0;) {
            if (!cur[i]) continue;
            if (branch[i]) next[i] = 1;
            for (int c : children[i])
                if (cur[static_cast<size_t>(c)] && next[static_cast<size_t>(c)]) next[i] = 1;
        }
        rep.stages.push_back(next);
        if (next == cur) break;
        cur = std::move(next);
    }
    return rep;
}

FiniteStructure fragment_structure(const Presentation& p, const std::vector<Word>& elements) {
    FiniteStructure s;
    s.size = static_cast<int>(elements.size());
    for (const auto& [rname, rel] : p.relations()) {
        FiniteStructure::Rel r{rname, rel.alphabet.tracks(), {}};
        int arity = r.arity;
        std::vector<int> idx(static_cast<size_t>(arity), 0);
        if (!elements.empty()) {
            while (true) {
                std::vector<Word> tuple;
                std::vector<int> t;
                for (int k = 0; k < arity; ++k) {
                    tuple.push_back(elements[static_cast<size_t>(idx[static_cast<size_t>(k)])]);
                    t.push_back(idx[static_cast<size_t>(k)]);
                }
                if (rel.accepts(convolve(rel.alphabet, tuple))) r.tuples.insert(t);
                int k = arity - 1;
                while (k >= 0 && ++idx[static_cast<size_t>(k)] == static_cast<int>(elements.size())) {
                    idx[static_cast<size_t>(k)] = 0;
                    --k;
                }
                if (k < 0) break;
            }
        }
        s.relations.push_back(std::move(r));
    }
    return s;
}

std::string rank_assignment_to_text(const RankAssignment& r, const std::vector<Word>& elements,
                                    const TrackedAlphabet& al) {
    std::ostringstream os;
    os << "height\t" << r.height << '\n';
    os << "exact\t" << (r.exact ? "true" : "false") << '\n';
    if (!r.fragment_note.empty()) os << "note\t" << r.fragment_note << '\n';
    for (size_t i = 0; i < elements.size(); ++i)
        os << "rank\t" << al.format_word(elements[i]) << '\t' << r.ranks[i] << '\n';
    return os.str();
}

std::string cb_stage_report_to_text(const CbStageReport& r, const TrackedAlphabet& al) {
    std::ostringstream os;
    os << "depth_budget\t" << r.depth_budget << '\n';
    os << "nodes\t" << r.nodes.size() << '\n';
    for (size_t s = 0; s < r.stages.size(); ++s)
        os << "stage\t" << s << '\t' << r.surviving(s) << '\n';
    (void)al;
    return os.str();
}

} // namespace autostruct
