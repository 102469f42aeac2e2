#ifndef AUTOSTRUCT_TEST_ORACLE_HELPERS_HPP
#define AUTOSTRUCT_TEST_ORACLE_HELPERS_HPP

// Brute-force evaluation used as an independent check of the automata
// pipeline: semantic membership comes from hand-written predicates per
// presentation, never from the automata under test.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "autostruct/logic.hpp"
#include "autostruct/presentation.hpp"

namespace oracle {

using autostruct::Formula;
using autostruct::FormulaPtr;
using autostruct::Word;

// Quantifier fragments may grow with nesting depth; for sentences with
// alternations an inner block must reach witnesses for every outer
// element, so levels like {4, 6, 8} make truncation faithful for the
// regression corpus while a single level suffices for tuple checks.
struct Structure {
    std::vector<std::vector<Word>> levels; // quantifier range per nesting depth
    std::function<bool(const std::vector<Word>&, const std::string&)> holds;
    std::function<Word(const std::string&)> constant;

    const std::vector<Word>& universe_at(size_t depth) const {
        return levels[std::min(depth, levels.size() - 1)];
    }
    const std::vector<Word>& universe() const { return levels.back(); }
};

inline bool eval(const Structure& s, const FormulaPtr& f, std::map<std::string, Word>& env,
                 size_t depth = 0) {
    using K = Formula::Kind;
    auto term = [&](const autostruct::Term& t) -> Word {
        if (t.is_const) return s.constant(t.text);
        return env.at(t.text);
    };
    switch (f->kind) {
        case K::Rel: {
            std::vector<Word> args;
            for (const auto& t : f->args) args.push_back(term(t));
            return s.holds(args, f->rel);
        }
        case K::Eq:
            return term(f->args[0]) == term(f->args[1]);
        case K::Not:
            return !eval(s, f->sub[0], env, depth);
        case K::And:
            return eval(s, f->sub[0], env, depth) && eval(s, f->sub[1], env, depth);
        case K::Or:
            return eval(s, f->sub[0], env, depth) || eval(s, f->sub[1], env, depth);
        case K::Implies:
            return !eval(s, f->sub[0], env, depth) || eval(s, f->sub[1], env, depth);
        case K::Exists: {
            for (const auto& w : s.universe_at(depth)) {
                env[f->var] = w;
                bool ok = eval(s, f->sub[0], env, depth + 1);
                env.erase(f->var);
                if (ok) return true;
            }
            return false;
        }
        case K::Forall: {
            for (const auto& w : s.universe_at(depth)) {
                env[f->var] = w;
                bool ok = eval(s, f->sub[0], env, depth + 1);
                env.erase(f->var);
                if (!ok) return false;
            }
            return true;
        }
    }
    return false;
}

inline bool eval_sentence(const Structure& s, const std::string& text) {
    std::map<std::string, Word> env;
    return eval(s, autostruct::parse_formula(text), env);
}

// unary words 1^0 .. 1^max
inline std::vector<Word> unary_fragment(int max) {
    std::vector<Word> out;
    for (int n = 0; n <= max; ++n) out.push_back(Word(static_cast<size_t>(n), 0));
    return out;
}

// hand semantics for nat_unary: le = prefix, succ = one longer
inline Structure nat_oracle(std::vector<int> sizes) {
    Structure s;
    for (int sz : sizes) s.levels.push_back(unary_fragment(sz));
    s.holds = [](const std::vector<Word>& a, const std::string& r) {
        if (r == "le") return a[0].size() <= a[1].size();
        if (r == "succ") return a[1].size() == a[0].size() + 1;
        throw std::invalid_argument("unknown relation " + r);
    };
    s.constant = [](const std::string& text) {
        Word w;
        for (char c : text) {
            if (c != '1') throw std::invalid_argument("bad constant");
            w.push_back(0);
        }
        return w;
    };
    return s;
}

inline Structure nat_oracle(int fragment) { return nat_oracle(std::vector<int>{fragment}); }

// hand semantics for tree_T_2 over a1* a2*: le = prefix, S = one-letter cover
inline Structure tree2_oracle(std::vector<int> sizes) {
    Structure s;
    for (int sz : sizes) {
        std::vector<Word> frag;
        for (int i = 0; i <= sz; ++i)
            for (int j = 0; i + j <= sz; ++j) {
                Word w;
                for (int k = 0; k < i; ++k) w.push_back(0);
                for (int k = 0; k < j; ++k) w.push_back(1);
                frag.push_back(w);
            }
        s.levels.push_back(std::move(frag));
    }
    auto is_prefix = [](const Word& a, const Word& b) {
        if (a.size() > b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return false;
        return true;
    };
    s.holds = [is_prefix](const std::vector<Word>& a, const std::string& r) {
        if (r == "le") return is_prefix(a[0], a[1]);
        if (r == "S") return a[1].size() == a[0].size() + 1 && is_prefix(a[0], a[1]);
        throw std::invalid_argument("unknown relation " + r);
    };
    s.constant = [](const std::string& text) {
        Word w;
        for (size_t i = 0; i + 1 < text.size(); i += 2) {
            if (text[i] != 'a') throw std::invalid_argument("bad constant");
            w.push_back(text[i + 1] - '1');
        }
        return w;
    };
    return s;
}

inline Structure tree2_oracle(int fragment) { return tree2_oracle(std::vector<int>{fragment}); }

} // namespace oracle

#endif
