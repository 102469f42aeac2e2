#include "autostruct/turing.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace autostruct {

// ---------------------------------------------------------------------------
// machine basics

int TuringMachine::add_state(const std::string& name, bool is_halting) {
    state_names.push_back(name);
    halting.push_back(is_halting ? 1 : 0);
    return static_cast<int>(state_names.size()) - 1;
}

int TuringMachine::add_symbol(const std::string& name, bool is_input) {
    symbols.push_back(name);
    input_symbol.push_back(is_input ? 1 : 0);
    return static_cast<int>(symbols.size()) - 1;
}

int TuringMachine::state_index(const std::string& name) const {
    for (size_t i = 0; i < state_names.size(); ++i)
        if (state_names[i] == name) return static_cast<int>(i);
    return -1;
}

int TuringMachine::symbol_index(const std::string& name) const {
    for (size_t i = 0; i < symbols.size(); ++i)
        if (symbols[i] == name) return static_cast<int>(i);
    return -1;
}

void TuringMachine::add_rule(const std::string& from, const std::vector<std::string>& read,
                             const std::string& to, const std::vector<std::string>& write,
                             const std::string& moves) {
    Rule r;
    r.state = state_index(from);
    r.next = state_index(to);
    if (r.state < 0 || r.next < 0) throw std::invalid_argument("rule references unknown state");
    if (static_cast<int>(read.size()) != tapes || static_cast<int>(write.size()) != tapes ||
        static_cast<int>(moves.size()) != tapes)
        throw std::invalid_argument("rule arity does not match tape count");
    for (int t = 0; t < tapes; ++t) {
        int a = symbol_index(read[static_cast<size_t>(t)]);
        int w = symbol_index(write[static_cast<size_t>(t)]);
        if (a < 0 || w < 0) throw std::invalid_argument("rule references unknown symbol");
        r.read.push_back(a);
        r.write.push_back(w);
        char mc = moves[static_cast<size_t>(t)];
        r.move.push_back(mc == 'L' ? Move::Left : mc == 'R' ? Move::Right : Move::Stay);
        if (mc != 'L' && mc != 'R' && mc != 'S') throw std::invalid_argument("bad move " + moves);
    }
    rules.push_back(std::move(r));
}

const TuringMachine::Rule* TuringMachine::rule_for(int state, const std::vector<int>& read) const {
    for (const Rule& r : rules)
        if (r.state == state && r.read == read) return &r;
    return nullptr;
}

void TuringMachine::validate() const {
    if (tapes != 1 && tapes != 3) throw std::invalid_argument("machines have 1 or 3 tapes");
    if (symbols.empty() || blank < 0 || blank >= static_cast<int>(symbols.size()))
        throw std::invalid_argument("bad blank symbol");
    if (input_symbol[static_cast<size_t>(blank)])
        throw std::invalid_argument("blank cannot be an input symbol");
    std::set<std::pair<int, std::vector<int>>> domains;
    for (const Rule& r : rules) {
        if (halting[static_cast<size_t>(r.state)])
            throw std::invalid_argument("halting state has an outgoing rule");
        if (!domains.insert({r.state, r.read}).second)
            throw std::invalid_argument("machine is not deterministic");
    }
}

Word TuringMachine::parse_input(const std::string& text) const {
    std::vector<std::string> names;
    // inputs use the same greedy longest-match convention as alphabets
    size_t pos = 0;
    Word out;
    while (pos < text.size()) {
        int best = -1;
        size_t best_len = 0;
        for (size_t i = 0; i < symbols.size(); ++i)
            if (symbols[i].size() > best_len && text.compare(pos, symbols[i].size(), symbols[i]) == 0) {
                best = static_cast<int>(i);
                best_len = symbols[i].size();
            }
        if (best < 0 || !input_symbol[static_cast<size_t>(best)])
            throw std::invalid_argument("cannot tokenize machine input: " + text);
        out.push_back(best);
        pos += best_len;
    }
    return out;
}

std::string TuringMachine::format_word(const Word& w) const {
    std::string s;
    for (int x : w) s += symbols[static_cast<size_t>(x)];
    return s;
}

// ---------------------------------------------------------------------------
// configurations

void canonicalize(const TuringMachine& m, Configuration& c) {
    for (Tape& t : c.tapes) {
        size_t lead = 0;
        while (lead < t.left.size() && t.left[lead] == m.blank) ++lead;
        t.left.erase(t.left.begin(), t.left.begin() + static_cast<long>(lead));
        while (!t.right.empty() && t.right.back() == m.blank) t.right.pop_back();
    }
}

Configuration initial_configuration(const TuringMachine& m, const Word& input) {
    Configuration c;
    c.state = m.initial;
    c.tapes.resize(static_cast<size_t>(m.tapes));
    c.tapes[0].right = input;
    canonicalize(m, c);
    return c;
}

std::optional<Configuration> step(const TuringMachine& m, const Configuration& c) {
    if (m.halting[static_cast<size_t>(c.state)]) return std::nullopt;
    std::vector<int> reads;
    for (const Tape& t : c.tapes) reads.push_back(t.right.empty() ? m.blank : t.right[0]);
    const TuringMachine::Rule* r = m.rule_for(c.state, reads);
    if (!r) return std::nullopt;
    Configuration n = c;
    n.state = r->next;
    for (int t = 0; t < m.tapes; ++t) {
        Tape& tp = n.tapes[static_cast<size_t>(t)];
        if (tp.right.empty()) tp.right.push_back(m.blank);
        tp.right[0] = r->write[static_cast<size_t>(t)];
        switch (r->move[static_cast<size_t>(t)]) {
            case Move::Stay:
                break;
            case Move::Right:
                tp.left.push_back(tp.right[0]);
                tp.right.erase(tp.right.begin());
                break;
            case Move::Left:
                if (tp.left.empty())
                    tp.right.insert(tp.right.begin(), m.blank);
                else {
                    tp.right.insert(tp.right.begin(), tp.left.back());
                    tp.left.pop_back();
                }
                break;
        }
    }
    canonicalize(m, n);
    return n;
}

RunResult run(const TuringMachine& m, const Word& input, long budget) {
    RunResult res;
    Configuration c = initial_configuration(m, input);
    for (long i = 0; i <= budget; ++i) {
        auto n = step(m, c);
        if (!n) {
            res.halted = true;
            res.steps = i;
            res.final = c;
            const Tape& out = c.tapes[static_cast<size_t>(m.tapes == 3 ? 2 : 0)];
            res.output = out.left;
            res.output.insert(res.output.end(), out.right.begin(), out.right.end());
            // trim blanks at both ends of the content
            while (!res.output.empty() && res.output.front() == m.blank)
                res.output.erase(res.output.begin());
            while (!res.output.empty() && res.output.back() == m.blank) res.output.pop_back();
            return res;
        }
        c = *n;
    }
    res.halted = false;
    res.final = c;
    res.steps = budget;
    return res;
}

std::vector<Configuration> predecessors(const TuringMachine& m, const Configuration& c) {
    std::vector<Configuration> out;
    for (const TuringMachine::Rule& r : m.rules) {
        if (r.next != c.state) continue;
        Configuration cand = c;
        cand.state = r.state;
        bool feasible = true;
        for (int t = 0; t < m.tapes && feasible; ++t) {
            Tape& tp = cand.tapes[static_cast<size_t>(t)];
            // undo the move
            switch (r.move[static_cast<size_t>(t)]) {
                case Move::Stay:
                    break;
                case Move::Right: // head came from the left cell
                    if (tp.left.empty())
                        tp.right.insert(tp.right.begin(), m.blank);
                    else {
                        tp.right.insert(tp.right.begin(), tp.left.back());
                        tp.left.pop_back();
                    }
                    break;
                case Move::Left: // head came from the right cell
                    if (tp.right.empty()) {
                        feasible = false;
                        break;
                    }
                    tp.left.push_back(tp.right[0]);
                    tp.right.erase(tp.right.begin());
                    break;
            }
            if (!feasible) break;
            // the cell under the head must hold what the rule wrote
            int head = tp.right.empty() ? m.blank : tp.right[0];
            if (head != r.write[static_cast<size_t>(t)]) {
                feasible = false;
                break;
            }
            if (tp.right.empty()) tp.right.push_back(m.blank);
            tp.right[0] = r.read[static_cast<size_t>(t)];
        }
        if (!feasible) continue;
        canonicalize(m, cand);
        auto fwd = step(m, cand);
        if (fwd && *fwd == c && !(cand == c)) out.push_back(cand);
        else if (fwd && *fwd == c && cand == c) out.push_back(cand); // self loop
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ChainClass classify_chain(const TuringMachine& m, const Configuration& base, long budget) {
    if (!predecessors(m, base).empty())
        throw std::invalid_argument("configuration is not a chain base");
    Dfa init = valid_initial_dfa(m);
    bool valid = init.accepts(convolve(config_alphabet(m), {encode_configuration(m, base)}));
    if (!valid) return {ChainClass::Tag::Unproductive, 0};
    Configuration c = base;
    for (long i = 0; i <= budget; ++i) {
        auto n = step(m, c);
        if (!n) return {ChainClass::Tag::Terminating, i};
        c = *n;
    }
    return {ChainClass::Tag::NonterminatingWithinBudgetUnknown, 0};
}

// ---------------------------------------------------------------------------
// Bennett transform

namespace {

std::string mark_name(size_t k) { return "m" + std::to_string(k); }

} // namespace

TuringMachine reversible_transform(const TuringMachine& m0) {
    if (m0.tapes != 1) throw std::invalid_argument("reversible_transform expects a 1-tape machine");
    TuringMachine m = m0;
    m.validate();
    // the initial state must never be re-entered, so that retracing
    // terminates exactly when the history empties
    bool reentered = false;
    for (const auto& r : m.rules)
        if (r.next == m.initial) reentered = true;
    if (reentered) {
        int fresh = m.add_state("init0");
        for (auto& r : std::vector<TuringMachine::Rule>(m.rules))
            if (r.state == m.initial) {
                TuringMachine::Rule nr = r;
                nr.state = fresh;
                m.rules.push_back(nr);
            }
        m.initial = fresh;
    }

    TuringMachine b;
    b.tapes = 3;
    // tape alphabet: original symbols, then one mark per rule plus the
    // copy-entry and copy-step marks
    b.symbols = m.symbols;
    b.blank = m.blank;
    b.input_symbol = m.input_symbol;
    std::vector<int> mark(m.rules.size());
    for (size_t k = 0; k < m.rules.size(); ++k) mark[k] = b.add_symbol(mark_name(k));
    int copy_step = b.add_symbol("mg");
    std::map<int, int> copy_entry; // per halting state

    auto bsym = [&](int s) { return b.symbols[static_cast<size_t>(s)]; };
    const int BL = b.blank;

    // states
    std::vector<int> cs(m.state_names.size()), rs(m.state_names.size()), rds(m.state_names.size());
    for (size_t q = 0; q < m.state_names.size(); ++q) cs[q] = b.add_state("c:" + m.state_names[q]);
    std::map<int, int> cp, rw; // copy / rewind per halting state
    for (size_t q = 0; q < m.state_names.size(); ++q)
        if (m.halting[q]) {
            cp[static_cast<int>(q)] = b.add_state("cp:" + m.state_names[q]);
            rw[static_cast<int>(q)] = b.add_state("rw:" + m.state_names[q]);
            copy_entry[static_cast<int>(q)] = b.add_symbol("me:" + m.state_names[q]);
        }
    for (size_t q = 0; q < m.state_names.size(); ++q) rs[q] = b.add_state("r:" + m.state_names[q]);
    for (size_t q = 0; q < m.state_names.size(); ++q)
        rds[q] = b.add_state("rd:" + m.state_names[q]);
    std::vector<int> un(m.rules.size());
    for (size_t k = 0; k < m.rules.size(); ++k) un[k] = b.add_state("un:" + std::to_string(k));
    int fin = b.add_state("f", true);
    b.initial = cs[static_cast<size_t>(m.initial)];

    auto rule3 = [&](int from, int a1, int a2, int a3, int to, int w1, int w2, int w3,
                     const char* mv) {
        b.add_rule(b.state_names[static_cast<size_t>(from)],
                   {bsym(a1), bsym(a2), bsym(a3)},
                   b.state_names[static_cast<size_t>(to)],
                   {bsym(w1), bsym(w2), bsym(w3)}, mv);
    };
    auto mv3 = [](Move d) {
        switch (d) {
            case Move::Left: return "LRS";
            case Move::Right: return "RRS";
            default: return "SRS";
        }
    };

    // phase 1: compute, recording one mark per executed rule
    for (size_t k = 0; k < m.rules.size(); ++k) {
        const auto& r = m.rules[k];
        rule3(cs[static_cast<size_t>(r.state)], r.read[0], BL, BL,
              cs[static_cast<size_t>(r.next)], r.write[0], mark[k], BL, mv3(r.move[0]));
    }
    // phase 2 per halting state: copy the output to tape 3, marking the
    // history so the rewind can find its way back, then pop those marks
    for (auto [h, cph] : cp) {
        int rwh = rw[h];
        int eh = copy_entry[h];
        for (int s = 0; s < static_cast<int>(m.symbols.size()); ++s) {
            if (s == BL) continue;
            rule3(cs[static_cast<size_t>(h)], s, BL, BL, cph, s, eh, s, "RRR");
            rule3(cph, s, BL, BL, cph, s, copy_step, s, "RRR");
            rule3(rwh, s, copy_step, s, rwh, s, BL, s, "LLL");
            rule3(rwh, s, eh, s, rs[static_cast<size_t>(h)], s, BL, s, "SSS");
        }
        rule3(cph, BL, BL, BL, rwh, BL, BL, BL, "LLL");
        rule3(cs[static_cast<size_t>(h)], BL, BL, BL, rs[static_cast<size_t>(h)], BL, BL, BL,
              "SSS");
    }
    // phase 3: retrace. r_q: step onto the top history mark; rd_q: branch
    // on the mark; un_k: undo rule k's write and pop the mark.
    for (size_t q = 0; q < m.state_names.size(); ++q) {
        if (static_cast<int>(q) == m.initial) continue; // terminal case below
        bool targeted = false;
        for (const auto& r : m.rules)
            if (r.next == static_cast<int>(q)) targeted = true;
        if (!targeted && !m.halting[q]) continue; // r_q unreachable
        for (int s1 = 0; s1 < static_cast<int>(m.symbols.size()); ++s1)
            for (int s3 = 0; s3 < static_cast<int>(m.symbols.size()); ++s3)
                rule3(rs[q], s1, BL, s3, rds[q], s1, BL, s3, "SLS");
    }
    for (size_t k = 0; k < m.rules.size(); ++k) {
        const auto& r = m.rules[k];
        const char* back = r.move[0] == Move::Left    ? "RSS"
                           : r.move[0] == Move::Right ? "LSS"
                                                      : "SSS";
        for (int s1 = 0; s1 < static_cast<int>(m.symbols.size()); ++s1)
            for (int s3 = 0; s3 < static_cast<int>(m.symbols.size()); ++s3)
                rule3(rds[static_cast<size_t>(r.next)], s1, mark[k], s3, un[k], s1, mark[k], s3,
                      back);
        for (int s3 = 0; s3 < static_cast<int>(m.symbols.size()); ++s3)
            rule3(un[k], r.write[0], mark[k], s3, rs[static_cast<size_t>(r.state)], r.read[0], BL,
                  s3, "SSS");
    }
    // history exhausted: the machine sits in r_initial; finish
    for (int s1 = 0; s1 < static_cast<int>(m.symbols.size()); ++s1)
        for (int s3 = 0; s3 < static_cast<int>(m.symbols.size()); ++s3)
            rule3(rs[static_cast<size_t>(m.initial)], s1, BL, s3, fin, s1, BL, s3, "SSS");

    b.validate();
    return b;
}

std::optional<std::string> check_reversible_syntax(const TuringMachine& m) {
    for (size_t i = 0; i < m.rules.size(); ++i)
        for (size_t j = i + 1; j < m.rules.size(); ++j) {
            const auto& a = m.rules[i];
            const auto& c = m.rules[j];
            if (a.state == c.state && a.read == c.read)
                return "rules " + std::to_string(i) + " and " + std::to_string(j) +
                       " share a domain";
            if (a.next != c.next) continue;
            bool separated = false;
            for (int t = 0; t < m.tapes; ++t)
                if (a.move[static_cast<size_t>(t)] == c.move[static_cast<size_t>(t)] &&
                    a.write[static_cast<size_t>(t)] != c.write[static_cast<size_t>(t)])
                    separated = true;
            if (!separated)
                return "rules " + std::to_string(i) + " and " + std::to_string(j) +
                       " may overlap in range";
        }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// configuration encodings

TrackedAlphabet config_alphabet(const TuringMachine& m) {
    std::vector<std::string> syms = m.symbols;
    // '_' is the pad token of the automaton formats; encode the blank as '~'
    for (auto& s : syms)
        if (s == "_") s = "~";
    for (const auto& q : m.state_names) syms.push_back("q:" + q);
    if (m.tapes == 3) {
        syms.push_back("#");
        syms.push_back("^");
    }
    return TrackedAlphabet(syms, 1);
}

namespace {

int state_letter(const TuringMachine& m, int q) {
    return static_cast<int>(m.symbols.size()) + q;
}
int hash_letter(const TuringMachine& m) { return static_cast<int>(m.symbols.size() + m.state_names.size()); }
int caret_letter(const TuringMachine& m) { return hash_letter(m) + 1; }

} // namespace


namespace {

// Encoding order of tape sections: the history tape (tape 2, index 1)
// goes last so its per-step length changes only shift the word tail.
std::vector<int> section_order(const TuringMachine& m) {
    if (m.tapes == 3) return {0, 2, 1};
    return {0};
}

} // namespace

Word encode_configuration(const TuringMachine& m, const Configuration& c) {
    Word w;
    bool first = true;
    for (int t : section_order(m)) {
        if (!first) w.push_back(hash_letter(m));
        first = false;
        const Tape& tp = c.tapes[static_cast<size_t>(t)];
        for (int s : tp.left) w.push_back(s);
        w.push_back(t == 0 ? state_letter(m, c.state) : caret_letter(m));
        for (int s : tp.right) w.push_back(s);
    }
    return w;
}

Configuration decode_configuration(const TuringMachine& m, const Word& w) {
    Configuration c;
    c.tapes.resize(static_cast<size_t>(m.tapes));
    std::vector<int> order = section_order(m);
    size_t section = 0;
    bool after_marker = false;
    int nsym = static_cast<int>(m.symbols.size());
    for (int x : w) {
        if (m.tapes == 3 && x == hash_letter(m)) {
            ++section;
            after_marker = false;
            if (section >= order.size()) throw std::invalid_argument("bad configuration word");
            continue;
        }
        bool first_section = section == 0;
        if ((first_section && x >= nsym && x < nsym + static_cast<int>(m.state_names.size())) ||
            (!first_section && x == caret_letter(m))) {
            if (after_marker) throw std::invalid_argument("bad configuration word");
            if (first_section) c.state = x - nsym;
            after_marker = true;
            continue;
        }
        if (x >= nsym) throw std::invalid_argument("bad configuration word");
        Tape& tp = c.tapes[static_cast<size_t>(order[section])];
        (after_marker ? tp.right : tp.left).push_back(x);
    }
    canonicalize(m, c);
    return c;
}

Dfa config_domain_dfa(const TuringMachine& m) {
    TrackedAlphabet al = config_alphabet(m);
    Nfa n;
    n.alphabet = al;
    int nsym = static_cast<int>(m.symbols.size());
    auto tape_section = [&](int marker_from, int marker_to, bool state_markers) {
        // L (no leading blank) marker R (no trailing blank)
        int start = n.add_state(false);
        int mid = n.add_state(false);
        int afterA = marker_to; // accepting-ish states handled by caller
        (void)afterA;
        for (int s = 0; s < nsym; ++s) {
            if (s != m.blank) n.add_edge(start, al.encode({s}), mid);
            n.add_edge(mid, al.encode({s}), mid);
        }
        // marker edges
        int done_empty = marker_to; // w' = lambda
        if (state_markers) {
            for (size_t q = 0; q < m.state_names.size(); ++q) {
                n.add_edge(start, al.encode({state_letter(m, static_cast<int>(q))}), done_empty);
                n.add_edge(mid, al.encode({state_letter(m, static_cast<int>(q))}), done_empty);
            }
        } else {
            n.add_edge(start, al.encode({caret_letter(m)}), done_empty);
            n.add_edge(mid, al.encode({caret_letter(m)}), done_empty);
        }
        (void)marker_from;
        return start;
    };
    // build manually: sections chained by '#'
    // states per tape: start, mid (before marker), afterEmpty (R = lambda so far
    // last symbol nonblank or nothing), afterBlank (pending blanks)
    std::vector<int> starts, after_ok, after_blank;
    n = Nfa{};
    n.alphabet = al;
    for (size_t sec = 0; sec < section_order(m).size(); ++sec) {
        int t = static_cast<int>(sec); // marker kind depends on the section position only
        int start = n.add_state(false);
        int mid = n.add_state(false);
        int aok = n.add_state(false);   // R ends here legally
        int abad = n.add_state(false);  // trailing blanks pending
        starts.push_back(start);
        after_ok.push_back(aok);
        after_blank.push_back(abad);
        for (int s = 0; s < nsym; ++s) {
            if (s != m.blank) n.add_edge(start, al.encode({s}), mid);
            n.add_edge(mid, al.encode({s}), mid);
            if (s != m.blank) {
                n.add_edge(aok, al.encode({s}), aok);
                n.add_edge(abad, al.encode({s}), aok);
            } else {
                n.add_edge(aok, al.encode({s}), abad);
                n.add_edge(abad, al.encode({s}), abad);
            }
        }
        if (t == 0) {
            for (size_t q = 0; q < m.state_names.size(); ++q) {
                n.add_edge(start, al.encode({state_letter(m, static_cast<int>(q))}), aok);
                n.add_edge(mid, al.encode({state_letter(m, static_cast<int>(q))}), aok);
            }
        } else {
            n.add_edge(start, al.encode({caret_letter(m)}), aok);
            n.add_edge(mid, al.encode({caret_letter(m)}), aok);
        }
    }
    for (int t = 0; t + 1 < m.tapes; ++t)
        n.add_edge(after_ok[static_cast<size_t>(t)], al.encode({hash_letter(m)}),
                   starts[static_cast<size_t>(t + 1)]);
    n.add_initial(starts[0]);
    n.accepting[static_cast<size_t>(after_ok[static_cast<size_t>(m.tapes - 1)])] = 1;
    n.sort_edges();
    (void)tape_section;
    return canonical_dfa(n);
}

Dfa valid_initial_dfa(const TuringMachine& m) {
    TrackedAlphabet al = config_alphabet(m);
    Nfa n;
    n.alphabet = al;
    int s0 = n.add_state(false);
    int in = n.add_state(true); // reading the input word
    n.add_initial(s0);
    n.add_edge(s0, al.encode({state_letter(m, m.initial)}), in);
    for (int s = 0; s < static_cast<int>(m.symbols.size()); ++s)
        if (m.input_symbol[static_cast<size_t>(s)]) n.add_edge(in, al.encode({s}), in);
    if (m.tapes == 3) {
        n.accepting[static_cast<size_t>(in)] = 0;
        int h1 = n.add_state(false);
        int c1 = n.add_state(false);
        int h2 = n.add_state(false);
        int c2 = n.add_state(true);
        n.add_edge(in, al.encode({hash_letter(m)}), h1);
        n.add_edge(h1, al.encode({caret_letter(m)}), c1);
        n.add_edge(c1, al.encode({hash_letter(m)}), h2);
        n.add_edge(h2, al.encode({caret_letter(m)}), c2);
    }
    n.sort_edges();
    return canonical_dfa(n);
}

Dfa final_dfa(const TuringMachine& m) {
    TrackedAlphabet al = config_alphabet(m);
    Nfa n;
    n.alphabet = al;
    int nsym = static_cast<int>(m.symbols.size());
    int s0 = n.add_state(false);
    n.add_initial(s0);
    // halting state symbol, then tape-1 content with no trailing blank
    int ok1 = n.add_state(m.tapes == 1);
    int bad1 = n.add_state(false);
    for (size_t q = 0; q < m.state_names.size(); ++q)
        if (m.halting[q]) n.add_edge(s0, al.encode({state_letter(m, static_cast<int>(q))}), ok1);
    for (int s = 0; s < nsym; ++s) {
        n.add_edge(ok1, al.encode({s}), s == m.blank ? bad1 : ok1);
        n.add_edge(bad1, al.encode({s}), s == m.blank ? bad1 : ok1);
    }
    if (m.tapes == 3) {
        // "# ^ <output> # ^": output section with the head at its left end,
        // then the empty history section
        int h1 = n.add_state(false);
        int ok3 = n.add_state(false);
        int bad3 = n.add_state(false);
        int h2 = n.add_state(false);
        int c2 = n.add_state(true);
        n.add_edge(ok1, al.encode({hash_letter(m)}), h1);
        n.add_edge(h1, al.encode({caret_letter(m)}), ok3);
        for (int s = 0; s < nsym; ++s) {
            n.add_edge(ok3, al.encode({s}), s == m.blank ? bad3 : ok3);
            n.add_edge(bad3, al.encode({s}), s == m.blank ? bad3 : ok3);
        }
        n.add_edge(ok3, al.encode({hash_letter(m)}), h2);
        n.add_edge(h2, al.encode({caret_letter(m)}), c2);
    }
    n.sort_edges();
    return canonical_dfa(n);
}

// ---------------------------------------------------------------------------
// the one-step relation as a 2-track automaton
//
// Each rule contributes patterns describing enc(c1) against enc(c2) as two
// symbol sequences built from literals, shared star segments (equal
// unknown content, matched across bounded skew through a FIFO) and shared
// single-symbol variables. Patterns may overapproximate on non-canonical
// words; the result is intersected with the configuration domain on both
// tracks, which makes them exact.

namespace {

struct PItem {
    enum class Kind { Lit, Star, Var } kind;
    int lit = -1;
    int star_id = -1;
    int var_id = -1;
    std::vector<int> sub; // star/var alphabet
};

struct PairPattern {
    std::vector<PItem> side1, side2;
    std::map<int, int> star_cap; // per star: exact lead bound at its position

    // While both sides are still consuming, per-column symbol counts are
    // equal, so the progress gap inside star k equals the difference of
    // non-star symbols consumed before it on either side.
    void compute_caps() {
        std::map<int, int> cum1, cum2;
        int c = 0;
        for (const auto& it : side1) {
            if (it.kind == PItem::Kind::Star)
                cum1[it.star_id] = c;
            else
                ++c;
        }
        c = 0;
        for (const auto& it : side2) {
            if (it.kind == PItem::Kind::Star)
                cum2[it.star_id] = c;
            else
                ++c;
        }
        for (const auto& [k, v] : cum1)
            star_cap[k] = std::abs(v - (cum2.count(k) ? cum2[k] : v));
    }
};

PItem lit_item(int s) {
    PItem it;
    it.kind = PItem::Kind::Lit;
    it.lit = s;
    return it;
}
PItem star_item(int id, std::vector<int> sub) {
    PItem it;
    it.kind = PItem::Kind::Star;
    it.star_id = id;
    it.sub = std::move(sub);
    return it;
}
PItem var_item(int id, std::vector<int> sub) {
    PItem it;
    it.kind = PItem::Kind::Var;
    it.var_id = id;
    it.sub = std::move(sub);
    return it;
}

// NFA accepting { c(x, y) : x matches side1, y matches side2 } with shared
// stars and variables. States are interned tuples
//   (i1, i2, fifo owner, fifo entries (star, sym)..., open vars (id, val, mask)...).
void add_pattern(Nfa& e, const TrackedAlphabet& al2, const PairPattern& pat) {
    struct St {
        size_t i1, i2;
        int owner; // 0 none, 1, 2
        std::vector<std::pair<int, int>> fifo;      // (star_id, symbol)
        std::vector<std::array<int, 3>> vars;       // (var_id, value, consumed mask)
        bool operator<(const St& o) const {
            return std::tie(i1, i2, owner, fifo, vars) <
                   std::tie(o.i1, o.i2, o.owner, o.fifo, o.vars);
        }
    };
    std::map<St, int> ids;
    std::deque<St> work;
    auto intern = [&](const St& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int id = e.add_state(false);
        ids.emplace(s, id);
        work.push_back(s);
        return id;
    };

    const auto& s1 = pat.side1;
    const auto& s2 = pat.side2;

    // positions from which side `who` can consume a symbol after lazily
    // closing star segments: list of item indices; SIZE_MAX means complete
    auto options = [&](const std::vector<PItem>& seq, size_t i) {
        std::vector<size_t> out;
        while (true) {
            if (i == seq.size()) {
                out.push_back(SIZE_MAX);
                return out;
            }
            out.push_back(i);
            if (seq[i].kind != PItem::Kind::Star) return out; // must consume here
            ++i;                                              // or close the star
        }
    };

    // apply one consumption; returns false if impossible
    auto consume = [&](St& st, int who, size_t item_idx, int sym) -> bool {
        const std::vector<PItem>& seq = who == 1 ? s1 : s2;
        size_t& pos = who == 1 ? st.i1 : st.i2;
        const PItem& it = seq[item_idx];
        switch (it.kind) {
            case PItem::Kind::Lit:
                if (sym != it.lit) return false;
                pos = item_idx + 1;
                return true;
            case PItem::Kind::Star: {
                if (std::find(it.sub.begin(), it.sub.end(), sym) == it.sub.end()) return false;
                pos = item_idx; // stay inside the star
                int other = 3 - who;
                if (st.owner == other && !st.fifo.empty()) {
                    if (st.fifo.front() != std::make_pair(it.star_id, sym)) return false;
                    st.fifo.erase(st.fifo.begin());
                    if (st.fifo.empty()) st.owner = 0;
                    return true;
                }
                auto cap_it = pat.star_cap.find(it.star_id);
                int cap = cap_it == pat.star_cap.end() ? 0 : cap_it->second;
                int held = 0;
                for (const auto& [sid, s2] : st.fifo)
                    if (sid == it.star_id) ++held;
                if (held >= cap) return false;
                st.fifo.emplace_back(it.star_id, sym);
                st.owner = who;
                return true;
            }
            case PItem::Kind::Var: {
                if (std::find(it.sub.begin(), it.sub.end(), sym) == it.sub.end()) return false;
                pos = item_idx + 1;
                for (auto& v : st.vars)
                    if (v[0] == it.var_id) {
                        if (v[1] != sym || (v[2] & who)) return false;
                        v[2] |= who;
                        return true;
                    }
                st.vars.push_back({it.var_id, sym, who});
                return true;
            }
        }
        return false;
    };

    auto cleanup = [&](St& st) {
        st.vars.erase(std::remove_if(st.vars.begin(), st.vars.end(),
                                     [](const std::array<int, 3>& v) { return v[2] == 3; }),
                      st.vars.end());
        std::sort(st.vars.begin(), st.vars.end());
    };

    auto accepting = [&](const St& st) {
        if (!st.fifo.empty() || !st.vars.empty()) return false;
        // both sides must be able to close out remaining stars
        for (size_t i = st.i1; i < s1.size(); ++i)
            if (s1[i].kind != PItem::Kind::Star) return false;
        for (size_t i = st.i2; i < s2.size(); ++i)
            if (s2[i].kind != PItem::Kind::Star) return false;
        return true;
    };

    St init{0, 0, 0, {}, {}};
    int init_id = intern(init);
    e.add_initial(init_id);
    if (accepting(init)) e.accepting[static_cast<size_t>(init_id)] = 1;

    int pad = al2.pad();
    while (!work.empty()) {
        St st = work.front();
        work.pop_front();
        int sid = ids[st];
        if (accepting(st)) e.accepting[static_cast<size_t>(sid)] = 1;
        // candidate letters per side
        auto letters = [&](const std::vector<PItem>& seq, size_t i) {
            std::set<int> out;
            for (size_t o : options(seq, i)) {
                if (o == SIZE_MAX) continue;
                const PItem& it = seq[o];
                if (it.kind == PItem::Kind::Lit)
                    out.insert(it.lit);
                else
                    for (int s : it.sub) out.insert(s);
            }
            return out;
        };
        std::set<int> l1 = letters(s1, st.i1);
        std::set<int> l2 = letters(s2, st.i2);
        bool done1 = false, done2 = false;
        for (size_t o : options(s1, st.i1))
            if (o == SIZE_MAX) done1 = true;
        for (size_t o : options(s2, st.i2))
            if (o == SIZE_MAX) done2 = true;
        l1.insert(-1); // -1 = word pad
        l2.insert(-1);
        // one side's consumption forks over every feasible option
        auto expand = [&](std::vector<St>& states, int who, int sym) {
            std::vector<St> out;
            for (const St& cur : states) {
                if (sym == -1) {
                    bool done = false;
                    const auto& seq = who == 1 ? s1 : s2;
                    for (size_t o : options(seq, who == 1 ? cur.i1 : cur.i2))
                        if (o == SIZE_MAX) done = true;
                    if (done) {
                        St nx = cur;
                        (who == 1 ? nx.i1 : nx.i2) = (who == 1 ? s1.size() : s2.size());
                        out.push_back(std::move(nx));
                    }
                    continue;
                }
                const auto& seq = who == 1 ? s1 : s2;
                for (size_t o : options(seq, who == 1 ? cur.i1 : cur.i2)) {
                    if (o == SIZE_MAX) continue;
                    St trial = cur;
                    if (consume(trial, who, o, sym)) out.push_back(std::move(trial));
                }
            }
            return out;
        };
        for (int a : l1)
            for (int bsym : l2) {
                if (a == -1 && bsym == -1) continue;
                std::vector<St> results;
                for (int order = 0; order < 2; ++order) {
                    std::vector<St> states{st};
                    if (order == 0) {
                        states = expand(states, 1, a);
                        states = expand(states, 2, bsym);
                    } else {
                        states = expand(states, 2, bsym);
                        states = expand(states, 1, a);
                    }
                    for (auto& nx : states) results.push_back(std::move(nx));
                }
                uint32_t col = al2.encode({a == -1 ? pad : a, bsym == -1 ? pad : bsym});
                std::set<int> targets;
                for (St& nx : results) {
                    cleanup(nx);
                    int tid = intern(nx);
                    if (accepting(ids.find(nx)->first)) e.accepting[static_cast<size_t>(tid)] = 1;
                    targets.insert(tid);
                }
                for (int tid : targets) e.add_edge(sid, col, tid);
            }
    }
}

} // namespace

Presentation config_space(const TuringMachine& m) {
    m.validate();
    TrackedAlphabet al = config_alphabet(m);
    TrackedAlphabet al2 = al.with_tracks(2);
    Dfa domain = config_domain_dfa(m);

    // tape content alphabets (tape 1 everything, tapes 2-3 everything too:
    // garbage configurations may hold any symbol anywhere)
    std::vector<int> tape_syms;
    for (int s = 0; s < static_cast<int>(m.symbols.size()); ++s) tape_syms.push_back(s);

    int next_star = 0, next_var = 0;
    auto star = [&](std::vector<int> sub) { return star_item(next_star++, std::move(sub)); };
    auto var = [&](std::vector<int> sub) { return var_item(next_var++, std::move(sub)); };

    // per-tape variant fragments: pairs of item sequences
    struct Frag {
        std::vector<PItem> a, b;
    };
    const int BL = m.blank;
    std::vector<int> nonblank;
    for (int s : tape_syms)
        if (s != BL) nonblank.push_back(s);

    // Emits the two-sided patterns for one tape of one rule. Variants
    // cover head-at-edge and blank-trimming cases; patterns may also match
    // non-canonical encodings, which the domain intersection removes.
    auto emit_tape = [&](std::vector<Frag>& out, int m1, int m2, bool ident,
                         const std::vector<int>& ident_set, int a, int w, Move d) {
        auto add = [&](std::vector<PItem> x, std::vector<PItem> y) {
            out.push_back({std::move(x), std::move(y)});
        };
        const PItem M1 = lit_item(m1), M2 = lit_item(m2), B = lit_item(BL);
        bool ident_blank =
            ident && std::find(ident_set.begin(), ident_set.end(), BL) != ident_set.end();
        switch (d) {
            case Move::Stay: {
                if (ident) {
                    PItem L = star(tape_syms), R = star(tape_syms), H = var(ident_set);
                    add({L, M1, H, R}, {L, M2, H, R});
                    if (ident_blank) {
                        PItem L2 = star(tape_syms);
                        add({L2, M1}, {L2, M2});
                    }
                } else {
                    {
                        PItem L = star(tape_syms), R = star(tape_syms);
                        add({L, M1, lit_item(a), R}, {L, M2, lit_item(w), R});
                    }
                    if (w == BL) {
                        PItem L = star(tape_syms);
                        add({L, M1, lit_item(a)}, {L, M2});
                    }
                    if (a == BL) {
                        PItem L = star(tape_syms);
                        if (w != BL)
                            add({L, M1}, {L, M2, lit_item(w)});
                        else
                            add({L, M1}, {L, M2});
                    }
                }
                break;
            }
            case Move::Right: {
                if (ident) {
                    {
                        PItem L = star(tape_syms), R = star(tape_syms), H = var(ident_set);
                        add({L, M1, H, R}, {L, H, M2, R});
                    }
                    if (ident_blank) {
                        {
                            PItem R = star(tape_syms);
                            add({M1, B, R}, {M2, R}); // L = lambda, head blank, trim
                        }
                        {
                            PItem L = star(tape_syms);
                            add({L, M1}, {L, B, M2}); // R = lambda
                        }
                        add({M1}, {M2}); // both empty
                    }
                } else {
                    {
                        PItem L = star(tape_syms), R = star(tape_syms);
                        add({L, M1, lit_item(a), R}, {L, lit_item(w), M2, R});
                    }
                    if (w == BL) {
                        PItem R = star(tape_syms);
                        add({M1, lit_item(a), R}, {M2, R});
                    }
                    if (a == BL) {
                        PItem L = star(tape_syms);
                        add({L, M1}, {L, lit_item(w), M2});
                        if (w == BL) add({M1}, {M2});
                    }
                }
                break;
            }
            case Move::Left: {
                if (ident) {
                    {
                        PItem L = star(tape_syms), R = star(tape_syms), H = var(ident_set),
                              V = var(tape_syms);
                        add({L, V, M1, H, R}, {L, M2, V, H, R});
                    }
                    {
                        PItem R = star(tape_syms), H = var(ident_set);
                        add({M1, H, R}, {M2, B, H, R}); // L = lambda
                    }
                    if (ident_blank) { // R = lambda, reading past the content
                        {
                            PItem L = star(tape_syms), V = var(nonblank);
                            add({L, V, M1}, {L, M2, V});
                        }
                        {
                            PItem L = star(tape_syms);
                            add({L, B, M1}, {L, M2});
                        }
                        add({M1}, {M2});
                    }
                } else {
                    {
                        PItem L = star(tape_syms), R = star(tape_syms), V = var(tape_syms);
                        add({L, V, M1, lit_item(a), R}, {L, M2, V, lit_item(w), R});
                    }
                    if (w == BL) {
                        {
                            PItem L = star(tape_syms), V = var(nonblank);
                            add({L, V, M1, lit_item(a)}, {L, M2, V});
                        }
                        {
                            PItem L = star(tape_syms);
                            add({L, B, M1, lit_item(a)}, {L, M2});
                        }
                    }
                    { // L = lambda
                        PItem R = star(tape_syms);
                        add({M1, lit_item(a), R}, {M2, B, lit_item(w), R});
                    }
                    if (w == BL) add({M1, lit_item(a)}, {M2});
                    if (a == BL) { // R = lambda
                        if (w != BL) {
                            PItem L = star(tape_syms), V = var(tape_syms);
                            add({L, V, M1}, {L, M2, V, lit_item(w)});
                            add({M1}, {M2, B, lit_item(w)});
                        } else {
                            {
                                PItem L = star(tape_syms), V = var(nonblank);
                                add({L, V, M1}, {L, M2, V});
                            }
                            {
                                PItem L = star(tape_syms);
                                add({L, B, M1}, {L, M2});
                            }
                            add({M1}, {M2});
                        }
                    }
                }
                break;
            }
        }
    };

    // group rules: same states, moves, and per-tape action where identity
    // tapes form full cartesian read sets
    struct GroupKey {
        int state, next;
        std::vector<int> move;
        std::vector<std::pair<int, int>> concrete; // per tape: (read, write) or (-1,-1)
        bool operator<(const GroupKey& o) const {
            return std::tie(state, next, move, concrete) <
                   std::tie(o.state, o.next, o.move, o.concrete);
        }
    };
    std::map<GroupKey, std::vector<const TuringMachine::Rule*>> groups;
    for (const auto& r : m.rules) {
        GroupKey k;
        k.state = r.state;
        k.next = r.next;
        for (Move mv : r.move) k.move.push_back(static_cast<int>(mv));
        for (int t = 0; t < m.tapes; ++t) {
            if (r.read[static_cast<size_t>(t)] == r.write[static_cast<size_t>(t)])
                k.concrete.emplace_back(-1, -1);
            else
                k.concrete.emplace_back(r.read[static_cast<size_t>(t)],
                                        r.write[static_cast<size_t>(t)]);
        }
        groups[k].push_back(&r);
    }

    std::vector<Dfa> group_dfas;
    for (const auto& [key, rs] : groups) {
        // identity tapes: collect per-tape read sets and verify the group is
        // their full product; otherwise emit rules individually
        std::vector<std::vector<int>> sets(static_cast<size_t>(m.tapes));
        for (int t = 0; t < m.tapes; ++t) {
            std::set<int> st;
            for (const auto* r : rs)
                if (key.concrete[static_cast<size_t>(t)].first < 0)
                    st.insert(r->read[static_cast<size_t>(t)]);
            sets[static_cast<size_t>(t)].assign(st.begin(), st.end());
        }
        size_t product = 1;
        for (int t = 0; t < m.tapes; ++t)
            if (key.concrete[static_cast<size_t>(t)].first < 0)
                product *= sets[static_cast<size_t>(t)].size();
        std::vector<std::vector<const TuringMachine::Rule*>> units;
        if (product == rs.size() && product > 0)
            units.push_back(rs);
        else
            for (const auto* r : rs) units.push_back({r});

        for (const auto& unit : units) {
            const auto* r0 = unit[0];
            // per-tape fragments
            std::vector<std::vector<Frag>> per_tape(static_cast<size_t>(m.tapes));
            for (int t = 0; t < m.tapes; ++t) {
                int m1 = t == 0 ? state_letter(m, r0->state) : caret_letter(m);
                int m2 = t == 0 ? state_letter(m, r0->next) : caret_letter(m);
                bool ident = key.concrete[static_cast<size_t>(t)].first < 0 && unit.size() > 1;
                std::vector<int> iset;
                if (key.concrete[static_cast<size_t>(t)].first < 0) {
                    if (unit.size() > 1)
                        iset = sets[static_cast<size_t>(t)];
                    else
                        iset = {r0->read[static_cast<size_t>(t)]};
                    emit_tape(per_tape[static_cast<size_t>(t)], m1, m2, true, iset, -1, -1,
                              r0->move[static_cast<size_t>(t)]);
                } else {
                    emit_tape(per_tape[static_cast<size_t>(t)], m1, m2, false, {},
                              r0->read[static_cast<size_t>(t)], r0->write[static_cast<size_t>(t)],
                              r0->move[static_cast<size_t>(t)]);
                }
                (void)ident;
            }
            // combine tapes: cartesian product of fragments joined by '#'
            std::vector<PairPattern> pats;
            std::vector<size_t> idx(static_cast<size_t>(m.tapes), 0);
            while (true) {
                PairPattern p;
                bool first_sec = true;
                for (int t : section_order(m)) {
                    if (!first_sec) {
                        p.side1.push_back(lit_item(hash_letter(m)));
                        p.side2.push_back(lit_item(hash_letter(m)));
                    }
                    first_sec = false;
                    const Frag& f = per_tape[static_cast<size_t>(t)][idx[static_cast<size_t>(t)]];
                    for (const auto& it : f.a) p.side1.push_back(it);
                    for (const auto& it : f.b) p.side2.push_back(it);
                }
                p.compute_caps();
                pats.push_back(std::move(p));
                int t = m.tapes - 1;
                while (t >= 0 &&
                       ++idx[static_cast<size_t>(t)] == per_tape[static_cast<size_t>(t)].size()) {
                    idx[static_cast<size_t>(t)] = 0;
                    --t;
                }
                if (t < 0) break;
            }
            Nfa gn;
            gn.alphabet = al2;
            for (const auto& p : pats) add_pattern(gn, al2, p);
            gn.sort_edges();
            if (getenv("AUTOSTRUCT_DEBUG")) {
                Dfa gd = canonical_dfa(gn);
                fprintf(stderr, "[conf] unit %s->%s pats=%zu nfa=%d dfa=%d\n",
                        m.state_names[static_cast<size_t>(r0->state)].c_str(),
                        m.state_names[static_cast<size_t>(r0->next)].c_str(), pats.size(),
                        gn.num_states, gd.num_states);
                group_dfas.push_back(std::move(gd));
            } else {
                group_dfas.push_back(canonical_dfa(gn));
            }
        }
    }

    // balanced union
    if (getenv("AUTOSTRUCT_DEBUG")) fprintf(stderr, "[conf] uniting %zu groups\n", group_dfas.size());
    while (group_dfas.size() > 1) {
        std::vector<Dfa> next;
        for (size_t i = 0; i + 1 < group_dfas.size(); i += 2)
            next.push_back(combine(group_dfas[i], group_dfas[i + 1], BoolOp::Or));
        if (group_dfas.size() % 2) next.push_back(group_dfas.back());
        group_dfas = std::move(next);
    }
    Dfa e;
    if (group_dfas.empty()) {
        e.alphabet = al2;
        e.add_state(false, -1);
    } else {
        e = std::move(group_dfas[0]);
    }
    std::map<std::string, Dfa> rels;
    rels["E"] = finish_relation(std::move(e), domain);
    return Presentation("conf", al, domain, std::move(rels),
                        "configuration space; E is the one-step relation");
}

// ---------------------------------------------------------------------------
// text format

void write_machine(std::ostream& os, const TuringMachine& m) {
    os << "tm " << m.tapes << '\n';
    for (size_t q = 0; q < m.state_names.size(); ++q) {
        os << "state " << m.state_names[q];
        if (static_cast<int>(q) == m.initial) os << " initial";
        if (m.halting[q]) os << " halting";
        os << '\n';
    }
    for (size_t s = 0; s < m.symbols.size(); ++s) {
        os << "sym " << m.symbols[s];
        if (static_cast<int>(s) == m.blank) os << " blank";
        if (m.input_symbol[s]) os << " input";
        os << '\n';
    }
    for (const auto& r : m.rules) {
        os << "rule " << m.state_names[static_cast<size_t>(r.state)];
        for (int a : r.read) os << ' ' << m.symbols[static_cast<size_t>(a)];
        os << " -> " << m.state_names[static_cast<size_t>(r.next)];
        for (int w : r.write) os << ' ' << m.symbols[static_cast<size_t>(w)];
        os << ' ';
        for (Move mv : r.move)
            os << (mv == Move::Left ? 'L' : mv == Move::Right ? 'R' : 'S');
        os << '\n';
    }
}

TuringMachine read_machine(std::istream& is) {
    TuringMachine m;
    m.tapes = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "tm") {
            ls >> m.tapes;
        } else if (kw == "state") {
            std::string name, flag;
            ls >> name;
            int id = m.add_state(name);
            while (ls >> flag) {
                if (flag == "initial")
                    m.initial = id;
                else if (flag == "halting")
                    m.halting[static_cast<size_t>(id)] = 1;
                else
                    throw std::runtime_error("tm: unknown state flag " + flag);
            }
        } else if (kw == "sym") {
            std::string name, flag;
            ls >> name;
            int id = m.add_symbol(name);
            while (ls >> flag) {
                if (flag == "blank")
                    m.blank = id;
                else if (flag == "input")
                    m.input_symbol[static_cast<size_t>(id)] = 1;
                else
                    throw std::runtime_error("tm: unknown symbol flag " + flag);
            }
        } else if (kw == "rule") {
            if (m.tapes < 1) throw std::runtime_error("tm: rule before header");
            std::string from, to, arrow, moves;
            std::vector<std::string> read(static_cast<size_t>(m.tapes));
            std::vector<std::string> write(static_cast<size_t>(m.tapes));
            ls >> from;
            for (auto& s : read) ls >> s;
            ls >> arrow;
            if (arrow != "->") throw std::runtime_error("tm: expected ->");
            ls >> to;
            for (auto& s : write) ls >> s;
            ls >> moves;
            m.add_rule(from, read, to, write, moves);
        } else if (kw == "end") {
            break;
        } else {
            throw std::runtime_error("tm: unknown directive " + kw);
        }
    }
    if (m.tapes < 1) throw std::runtime_error("tm: missing header");
    m.validate();
    return m;
}

std::string machine_to_string(const TuringMachine& m) {
    std::ostringstream os;
    write_machine(os, m);
    return os.str();
}

TuringMachine machine_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_machine(is);
}

// ---------------------------------------------------------------------------
// corpus

TuringMachine tm_immediate_halter() {
    TuringMachine m;
    m.tapes = 1;
    m.add_state("h", true);
    m.initial = 0;
    m.blank = m.add_symbol("_");
    m.add_symbol("a", true);
    m.validate();
    return m;
}

TuringMachine tm_unary_incrementer() {
    TuringMachine m;
    m.tapes = 1;
    m.add_state("scan");
    m.add_state("back");
    m.add_state("h", true);
    m.initial = 0;
    m.blank = m.add_symbol("_");
    m.add_symbol("1", true);
    m.add_rule("scan", {"1"}, "scan", {"1"}, "R");
    m.add_rule("scan", {"_"}, "back", {"1"}, "L");
    m.add_rule("back", {"1"}, "back", {"1"}, "L");
    m.add_rule("back", {"_"}, "h", {"_"}, "R");
    m.validate();
    return m;
}

TuringMachine tm_palindrome() {
    TuringMachine m;
    m.tapes = 1;
    for (const char* q : {"s", "ra", "rb", "ca", "cb", "lb", "no", "n2"}) m.add_state(q);
    m.add_state("h", true);
    m.initial = 0;
    m.blank = m.add_symbol("_");
    m.add_symbol("a", true);
    m.add_symbol("b", true);
    m.add_symbol("Y");
    m.add_symbol("N");
    m.add_rule("s", {"a"}, "ra", {"_"}, "R");
    m.add_rule("s", {"b"}, "rb", {"_"}, "R");
    m.add_rule("s", {"_"}, "h", {"Y"}, "S");
    for (const char* rr : {"ra", "rb"}) {
        m.add_rule(rr, {"a"}, rr, {"a"}, "R");
        m.add_rule(rr, {"b"}, rr, {"b"}, "R");
    }
    m.add_rule("ra", {"_"}, "ca", {"_"}, "L");
    m.add_rule("rb", {"_"}, "cb", {"_"}, "L");
    m.add_rule("ca", {"a"}, "lb", {"_"}, "L");
    m.add_rule("ca", {"b"}, "no", {"_"}, "L");
    m.add_rule("ca", {"_"}, "h", {"Y"}, "S");
    m.add_rule("cb", {"b"}, "lb", {"_"}, "L");
    m.add_rule("cb", {"a"}, "no", {"_"}, "L");
    m.add_rule("cb", {"_"}, "h", {"Y"}, "S");
    m.add_rule("lb", {"a"}, "lb", {"a"}, "L");
    m.add_rule("lb", {"b"}, "lb", {"b"}, "L");
    m.add_rule("lb", {"_"}, "s", {"_"}, "R");
    m.add_rule("no", {"a"}, "no", {"_"}, "L");
    m.add_rule("no", {"b"}, "no", {"_"}, "L");
    m.add_rule("no", {"_"}, "n2", {"_"}, "R");
    m.add_rule("n2", {"_"}, "h", {"N"}, "S");
    m.validate();
    return m;
}

TuringMachine tm_looper() {
    TuringMachine m;
    m.tapes = 1;
    m.add_state("go");
    m.add_state("h", true); // declared but unreachable
    m.initial = 0;
    m.blank = m.add_symbol("_");
    m.add_symbol("a", true);
    m.add_rule("go", {"a"}, "go", {"a"}, "R");
    m.add_rule("go", {"_"}, "go", {"_"}, "R");
    m.validate();
    return m;
}

// Input is the convolution of (x, y) over the unary alphabet {1}: columns
// B = (1,1), D = (_,1), C = (1,_). Yes-words: D, DD, BD.
TuringMachine tm_three_chain_decider() {
    TuringMachine m;
    m.tapes = 1;
    for (const char* q : {"s", "pA", "pAA", "pB", "pBA", "pe", "bY", "bN"}) m.add_state(q);
    m.add_state("h", true);
    m.initial = 0;
    m.blank = m.add_symbol("_");
    m.add_symbol("B", true); // (1,1)
    m.add_symbol("D", true); // (_,1)
    m.add_symbol("C", true); // (1,_)
    m.add_symbol("M");
    m.add_symbol("Y");
    m.add_symbol("N");
    m.add_rule("s", {"_"}, "h", {"N"}, "S");
    m.add_rule("s", {"D"}, "pA", {"M"}, "R");
    m.add_rule("s", {"B"}, "pB", {"M"}, "R");
    m.add_rule("s", {"C"}, "pe", {"M"}, "R");
    m.add_rule("pA", {"_"}, "bY", {"_"}, "L");
    m.add_rule("pA", {"D"}, "pAA", {"D"}, "R");
    m.add_rule("pA", {"B"}, "pe", {"B"}, "R");
    m.add_rule("pA", {"C"}, "pe", {"C"}, "R");
    m.add_rule("pAA", {"_"}, "bY", {"_"}, "L");
    for (const char* c : {"B", "D", "C"}) m.add_rule("pAA", {c}, "pe", {c}, "R");
    m.add_rule("pB", {"D"}, "pBA", {"D"}, "R");
    m.add_rule("pB", {"_"}, "bN", {"_"}, "L");
    m.add_rule("pB", {"B"}, "pe", {"B"}, "R");
    m.add_rule("pB", {"C"}, "pe", {"C"}, "R");
    m.add_rule("pBA", {"_"}, "bY", {"_"}, "L");
    for (const char* c : {"B", "D", "C"}) m.add_rule("pBA", {c}, "pe", {c}, "R");
    for (const char* c : {"B", "D", "C"}) m.add_rule("pe", {c}, "pe", {c}, "R");
    m.add_rule("pe", {"_"}, "bN", {"_"}, "L");
    for (const char* c : {"B", "D", "C"}) m.add_rule("bY", {c}, "bY", {"_"}, "L");
    m.add_rule("bY", {"M"}, "h", {"Y"}, "S");
    for (const char* c : {"B", "D", "C"}) m.add_rule("bN", {c}, "bN", {"_"}, "L");
    m.add_rule("bN", {"M"}, "h", {"N"}, "S");
    m.validate();
    return m;
}

bool three_chain_holds(const Word& x, const Word& y) {
    auto ok = [](const Word& w) {
        return w.size() <= 2 && std::all_of(w.begin(), w.end(), [](int s) { return s == 0; });
    };
    return ok(x) && ok(y) && x.size() < y.size();
}

// Input is the convolution of (x, y) over {0,1}: columns code pairs of
// bits or a single live side. Yes iff x = 0^n and either y = 0^(n+1) or
// |y| = n with y != x.
TuringMachine tm_tree_successor_decider() {
    TuringMachine m;
    m.tapes = 1;
    // scan states track: x all zeros so far / y all zeros so far / relation
    // of lengths seen so far
    for (const char* q : {"s", "eq", "ext", "pe", "bY", "bN"}) m.add_state(q);
    m.add_state("h", true);
    m.initial = 0;
    m.blank = m.add_symbol("_");
    // column symbols (x bit | y bit), 'p' = that side already ended
    m.add_symbol("c00", true);
    m.add_symbol("c01", true);
    m.add_symbol("c10", true);
    m.add_symbol("c11", true);
    m.add_symbol("c0p", true);
    m.add_symbol("c1p", true);
    m.add_symbol("cp0", true);
    m.add_symbol("cp1", true);
    m.add_symbol("M");
    m.add_symbol("Y");
    m.add_symbol("N");
    // s: first column; eq: x=0^k so far, y running same length, y has only
    // zeros too OR y deviated (then only the equal-length-with-some-one
    // case can accept); ext: saw (p,0): y exactly one longer, must end.
    // We fold "y deviated from 0^*" into whether we saw a 1 in y: states:
    //   eq  = lengths equal so far, x all zeros, y all zeros
    //   dev = lengths equal so far, x all zeros, y has a one
    // accept on end: dev (|y| = |x|, y != x) or after (p,0) from eq/dev
    // (y = x + one zero... the paper tree wants y = 0^(n+1)) -> the
    // extension symbol must be 0 and y's previous part all zeros: ext only
    // from eq via cp0.
    m.add_state("dev");
    auto C = [&](const char* s) { return s; };
    // first/continuing columns while both sides run
    for (const char* st : {"s", "eq"}) {
        m.add_rule(st, {C("c00")}, "eq", {st[0] == 's' ? "M" : "c00"}, "R");
        m.add_rule(st, {C("c01")}, "dev", {st[0] == 's' ? "M" : "c01"}, "R");
        m.add_rule(st, {C("cp0")}, "ext", {st[0] == 's' ? "M" : "cp0"}, "R");
        // x has a one, or x outlives y: never a successor
        for (const char* bad : {"c10", "c11", "c0p", "c1p", "cp1"})
            m.add_rule(st, {bad}, "pe", {st[0] == 's' ? "M" : bad}, "R");
    }
    m.add_rule("s", {"_"}, "h", {"N"}, "S");
    m.add_rule("eq", {"_"}, "bN", {"_"}, "L"); // y = x = 0^n: not a successor
    // dev: lengths equal, y left 0^* already
    for (const char* c : {"c00", "c01"}) m.add_rule("dev", {c}, "dev", {c}, "R");
    for (const char* bad : {"c10", "c11", "c0p", "c1p", "cp0", "cp1"})
        m.add_rule("dev", {bad}, "pe", {bad}, "R");
    m.add_rule("dev", {"_"}, "bY", {"_"}, "L");
    // ext: y = 0^(n+1) if the word ends right after the single (p,0)
    for (const char* bad : {"c00", "c01", "c10", "c11", "c0p", "c1p", "cp0", "cp1"})
        m.add_rule("ext", {bad}, "pe", {bad}, "R");
    m.add_rule("ext", {"_"}, "bY", {"_"}, "L");
    for (const char* c : {"c00", "c01", "c10", "c11", "c0p", "c1p", "cp0", "cp1"})
        m.add_rule("pe", {c}, "pe", {c}, "R");
    m.add_rule("pe", {"_"}, "bN", {"_"}, "L");
    for (const char* c : {"c00", "c01", "c10", "c11", "c0p", "c1p", "cp0", "cp1"}) {
        m.add_rule("bY", {c}, "bY", {"_"}, "L");
        m.add_rule("bN", {c}, "bN", {"_"}, "L");
    }
    m.add_rule("bY", {"M"}, "h", {"Y"}, "S");
    m.add_rule("bN", {"M"}, "h", {"N"}, "S");
    m.validate();
    return m;
}

bool spine_tree_successor(const Word& x, const Word& y) {
    bool x_zero = std::all_of(x.begin(), x.end(), [](int b) { return b == 0; });
    if (!x_zero) return false;
    bool y_zero = std::all_of(y.begin(), y.end(), [](int b) { return b == 0; });
    if (y_zero) return y.size() == x.size() + 1;
    return y.size() == x.size();
}

std::vector<TuringMachine> corpus_machines() {
    return {tm_immediate_halter(), tm_unary_incrementer(), tm_palindrome(), tm_looper(),
            tm_three_chain_decider()};
}

} // namespace autostruct
