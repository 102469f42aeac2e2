#include "autostruct/logic.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace autostruct {

namespace {

// ---------------------------------------------------------------------------
// Parsing

struct Token {
    enum class Kind { LParen, RParen, Atom, String } kind;
    std::string text;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '(') {
            out.push_back({Token::Kind::LParen, "("});
            ++i;
        } else if (c == ')') {
            out.push_back({Token::Kind::RParen, ")"});
            ++i;
        } else if (c == '"') {
            size_t j = s.find('"', i + 1);
            if (j == std::string::npos) throw std::invalid_argument("unterminated string literal");
            out.push_back({Token::Kind::String, s.substr(i + 1, j - i - 1)});
            i = j + 1;
        } else {
            size_t j = i;
            while (j < s.size() && !isspace(static_cast<unsigned char>(s[j])) && s[j] != '(' &&
                   s[j] != ')' && s[j] != '"')
                ++j;
            out.push_back({Token::Kind::Atom, s.substr(i, j - i)});
            i = j;
        }
    }
    return out;
}

Term parse_term(const Token& t) {
    if (t.kind == Token::Kind::String) return Term{true, t.text};
    if (t.kind == Token::Kind::Atom) return Term{false, t.text};
    throw std::invalid_argument("expected a variable or constant");
}

FormulaPtr parse_expr(const std::vector<Token>& toks, size_t& i) {
    if (i >= toks.size()) throw std::invalid_argument("unexpected end of formula");
    if (toks[i].kind != Token::Kind::LParen) throw std::invalid_argument("expected (");
    ++i;
    if (i >= toks.size() || toks[i].kind != Token::Kind::Atom)
        throw std::invalid_argument("expected an operator or relation name");
    std::string head = toks[i].text;
    ++i;
    auto f = std::make_shared<Formula>();
    auto expect_close = [&]() {
        if (i >= toks.size() || toks[i].kind != Token::Kind::RParen)
            throw std::invalid_argument("expected ) after " + head);
        ++i;
    };
    if (head == "not") {
        f->kind = Formula::Kind::Not;
        f->sub.push_back(parse_expr(toks, i));
        expect_close();
    } else if (head == "and" || head == "or" || head == "implies") {
        f->kind = head == "and"  ? Formula::Kind::And
                : head == "or"   ? Formula::Kind::Or
                                 : Formula::Kind::Implies;
        f->sub.push_back(parse_expr(toks, i));
        f->sub.push_back(parse_expr(toks, i));
        // n-ary and/or fold to the left
        while (f->kind != Formula::Kind::Implies && i < toks.size() &&
               toks[i].kind == Token::Kind::LParen) {
            auto g = std::make_shared<Formula>();
            g->kind = f->kind;
            g->sub.push_back(f);
            g->sub.push_back(parse_expr(toks, i));
            f = g;
        }
        expect_close();
    } else if (head == "exists" || head == "forall") {
        f->kind = head == "exists" ? Formula::Kind::Exists : Formula::Kind::Forall;
        if (i >= toks.size() || toks[i].kind != Token::Kind::Atom)
            throw std::invalid_argument("expected a variable after " + head);
        f->var = toks[i].text;
        ++i;
        f->sub.push_back(parse_expr(toks, i));
        expect_close();
    } else if (head == "=") {
        f->kind = Formula::Kind::Eq;
        for (int n = 0; n < 2; ++n) {
            if (i >= toks.size()) throw std::invalid_argument("= needs two arguments");
            f->args.push_back(parse_term(toks[i]));
            ++i;
        }
        expect_close();
    } else {
        f->kind = Formula::Kind::Rel;
        f->rel = head;
        while (i < toks.size() && toks[i].kind != Token::Kind::RParen) {
            f->args.push_back(parse_term(toks[i]));
            ++i;
        }
        expect_close();
        if (f->args.empty()) throw std::invalid_argument("relation atom needs arguments");
    }
    return f;
}

void collect_free(const FormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f->kind) {
        case Formula::Kind::Rel:
        case Formula::Kind::Eq:
            for (const auto& t : f->args)
                if (!t.is_const && !bound.count(t.text)) out.insert(t.text);
            break;
        case Formula::Kind::Not:
            collect_free(f->sub[0], bound, out);
            break;
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
            collect_free(f->sub[0], bound, out);
            collect_free(f->sub[1], bound, out);
            break;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            bool added = bound.insert(f->var).second;
            collect_free(f->sub[0], bound, out);
            if (added) bound.erase(f->var);
            break;
        }
    }
}

void collect_all_names(const FormulaPtr& f, std::set<std::string>& out) {
    for (const auto& t : f->args)
        if (!t.is_const) out.insert(t.text);
    if (!f->var.empty()) out.insert(f->var);
    for (const auto& s : f->sub) collect_all_names(s, out);
}

FormulaPtr rename_rec(const FormulaPtr& f, std::map<std::string, std::string>& scope,
                      std::set<std::string>& used) {
    auto g = std::make_shared<Formula>(*f);
    switch (f->kind) {
        case Formula::Kind::Rel:
        case Formula::Kind::Eq:
            for (auto& t : g->args)
                if (!t.is_const) {
                    auto it = scope.find(t.text);
                    if (it != scope.end()) t.text = it->second;
                }
            break;
        case Formula::Kind::Not:
            g->sub[0] = rename_rec(f->sub[0], scope, used);
            break;
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
            g->sub[0] = rename_rec(f->sub[0], scope, used);
            g->sub[1] = rename_rec(f->sub[1], scope, used);
            break;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            std::string fresh = f->var;
            int n = 0;
            while (used.count(fresh)) fresh = f->var + "#" + std::to_string(++n);
            used.insert(fresh);
            auto saved = scope.find(f->var);
            std::string old;
            bool had = saved != scope.end();
            if (had) old = saved->second;
            scope[f->var] = fresh;
            g->var = fresh;
            g->sub[0] = rename_rec(f->sub[0], scope, used);
            if (had)
                scope[f->var] = old;
            else
                scope.erase(f->var);
            break;
        }
    }
    return g;
}

} // namespace

FormulaPtr parse_formula(const std::string& text) {
    auto toks = tokenize(text);
    size_t i = 0;
    FormulaPtr f = parse_expr(toks, i);
    if (i != toks.size()) throw std::invalid_argument("trailing input after formula");
    return rename_apart(f);
}

std::set<std::string> free_variables(const FormulaPtr& f) {
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

FormulaPtr rename_apart(const FormulaPtr& f) {
    std::set<std::string> used = free_variables(f);
    std::map<std::string, std::string> scope;
    return rename_rec(f, scope, used);
}

std::string formula_to_string(const FormulaPtr& f) {
    std::ostringstream os;
    auto term = [&](const Term& t) {
        if (t.is_const)
            os << '"' << t.text << '"';
        else
            os << t.text;
    };
    switch (f->kind) {
        case Formula::Kind::Rel:
            os << '(' << f->rel;
            for (const auto& t : f->args) {
                os << ' ';
                term(t);
            }
            os << ')';
            break;
        case Formula::Kind::Eq:
            os << "(= ";
            term(f->args[0]);
            os << ' ';
            term(f->args[1]);
            os << ')';
            break;
        case Formula::Kind::Not:
            os << "(not " << formula_to_string(f->sub[0]) << ')';
            break;
        case Formula::Kind::And:
            os << "(and " << formula_to_string(f->sub[0]) << ' ' << formula_to_string(f->sub[1]) << ')';
            break;
        case Formula::Kind::Or:
            os << "(or " << formula_to_string(f->sub[0]) << ' ' << formula_to_string(f->sub[1]) << ')';
            break;
        case Formula::Kind::Implies:
            os << "(implies " << formula_to_string(f->sub[0]) << ' ' << formula_to_string(f->sub[1])
               << ')';
            break;
        case Formula::Kind::Exists:
            os << "(exists " << f->var << ' ' << formula_to_string(f->sub[0]) << ')';
            break;
        case Formula::Kind::Forall:
            os << "(forall " << f->var << ' ' << formula_to_string(f->sub[0]) << ')';
            break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

// Relation over a sorted, duplicate-free variable list; empty list means
// the subformula was closed and evaluated to `truth`.
struct Node {
    bool closed = false;
    bool truth = false;
    std::vector<std::string> vars;
    Dfa dfa;
};

struct Compiler {
    const Presentation& p;

    Word const_word(const std::string& text) const {
        Word w = p.alphabet().parse_word(text);
        if (!p.in_domain(w))
            throw std::invalid_argument("constant \"" + text + "\" is not a domain word");
        return w;
    }

    Dfa domain_restrict(Dfa d, const std::vector<int>& tracks) const {
        for (int t : tracks) d = intersect_lifted(d, p.domain(), {t});
        return d;
    }

    // inserts unconstrained (but domain-restricted) tracks so that `c`
    // ranges over exactly `target` (sorted superset of c.vars)
    Node embed(Node c, const std::vector<std::string>& target) const {
        assert(!c.closed);
        if (c.vars == target) return c;
        std::vector<int> fresh;
        Dfa d = std::move(c.dfa);
        size_t j = 0;
        for (size_t i = 0; i < target.size(); ++i) {
            if (j < c.vars.size() && c.vars[j] == target[i]) {
                ++j;
                continue;
            }
            d = cylindrify(d, static_cast<int>(i));
            fresh.push_back(static_cast<int>(i));
        }
        if (j != c.vars.size()) throw std::logic_error("embed: target misses a variable");
        d = domain_restrict(std::move(d), fresh);
        return Node{false, false, target, std::move(d)};
    }

    Node make_empty(std::vector<std::string> vars) const {
        Dfa d;
        d.alphabet = p.alphabet().with_tracks(static_cast<int>(vars.size()));
        d.add_state(false, -1);
        return Node{false, false, std::move(vars), std::move(d)};
    }

    Node negate(Node c) const {
        if (c.closed) {
            c.truth = !c.truth;
            return c;
        }
        Dfa d = complement(c.dfa);
        std::vector<int> all(c.vars.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        c.dfa = domain_restrict(std::move(d), all);
        return c;
    }

    Node atom(const std::string& rel_name, const std::vector<Term>& args) const {
        const Dfa& rel = p.relation(rel_name);
        int arity = rel.alphabet.tracks();
        if (static_cast<int>(args.size()) != arity)
            throw std::invalid_argument("arity mismatch for relation " + rel_name);

        // ground atom: direct membership
        bool ground = std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_const; });
        if (ground) {
            std::vector<Word> tuple;
            for (const auto& t : args) tuple.push_back(const_word(t.text));
            return Node{true, rel.accepts(convolve(rel.alphabet, tuple)), {}, {}};
        }

        // substitute constants right to left
        Dfa d = rel;
        std::vector<std::string> vars; // per remaining track, in arg order
        for (const auto& t : args)
            if (!t.is_const) vars.push_back(t.text);
        for (int t = arity - 1; t >= 0; --t) {
            if (!args[static_cast<size_t>(t)].is_const) continue;
            Word w = const_word(args[static_cast<size_t>(t)].text);
            d = fix_track_word(d, t, w);
            d = project_pad_closed(d, t);
        }
        // collapse repeated variables via equality sections
        for (size_t i = 0; i < vars.size(); ++i) {
            for (size_t j = vars.size(); j-- > i + 1;) {
                if (vars[j] != vars[i]) continue;
                Dfa eq = track_equality_dfa(d.alphabet, static_cast<int>(i), static_cast<int>(j));
                d = combine(d, eq, BoolOp::And);
                d = project_pad_closed(d, static_cast<int>(j));
                vars.erase(vars.begin() + static_cast<long>(j));
            }
        }
        // sort variables by name
        std::vector<std::string> sorted = vars;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != vars) {
            std::vector<int> perm(vars.size());
            std::vector<bool> taken(vars.size(), false);
            for (size_t i = 0; i < vars.size(); ++i)
                for (size_t k = 0; k < sorted.size(); ++k)
                    if (!taken[k] && sorted[k] == vars[i]) {
                        perm[i] = static_cast<int>(k);
                        taken[k] = true;
                        break;
                    }
            d = permute_tracks(d, perm);
        }
        return Node{false, false, std::move(sorted), minimize(d)};
    }

    Node equality(const Term& a, const Term& b) const {
        if (a.is_const && b.is_const) {
            Word wa = const_word(a.text), wb = const_word(b.text);
            return Node{true, wa == wb, {}, {}};
        }
        if (a.is_const || b.is_const) {
            const Term& cv = a.is_const ? a : b;
            const Term& vv = a.is_const ? b : a;
            Word w = const_word(cv.text);
            return Node{false, false, {vv.text}, singleton_dfa(p.alphabet(), w)};
        }
        if (a.text == b.text) return Node{false, false, {a.text}, p.domain()};
        Dfa eq = track_equality_dfa(p.alphabet().with_tracks(2), 0, 1);
        eq = domain_restrict(std::move(eq), {0, 1});
        std::vector<std::string> vars{a.text, b.text};
        if (vars[0] > vars[1]) std::swap(vars[0], vars[1]); // language is symmetric
        return Node{false, false, std::move(vars), std::move(eq)};
    }

    Node binary(Formula::Kind kind, Node x, Node y) const {
        if (kind == Formula::Kind::Implies)
            return binary(Formula::Kind::Or, negate(std::move(x)), std::move(y));
        bool conj = kind == Formula::Kind::And;
        if (x.closed && y.closed)
            return Node{true, conj ? (x.truth && y.truth) : (x.truth || y.truth), {}, {}};
        if (x.closed) std::swap(x, y);
        if (y.closed) {
            if (conj) return y.truth ? x : make_empty(x.vars);
            if (y.truth) {
                // truth over x's variables: the full domain tuple
                Node full{false, false, x.vars, p.domain_tuple(static_cast<int>(x.vars.size()))};
                return full;
            }
            return x;
        }
        std::vector<std::string> target;
        std::set_union(x.vars.begin(), x.vars.end(), y.vars.begin(), y.vars.end(),
                       std::back_inserter(target));
        Node xe = embed(std::move(x), target);
        Node ye = embed(std::move(y), target);
        Dfa d = combine(xe.dfa, ye.dfa, conj ? BoolOp::And : BoolOp::Or);
        return Node{false, false, std::move(target), std::move(d)};
    }

    Node exists(const std::string& var, Node body) const {
        if (body.closed)
            return Node{true, body.truth && !is_empty(p.domain()), {}, {}};
        auto it = std::find(body.vars.begin(), body.vars.end(), var);
        if (it == body.vars.end()) {
            if (is_empty(p.domain())) {
                if (body.vars.empty()) return Node{true, false, {}, {}};
                return make_empty(body.vars);
            }
            return body;
        }
        int track = static_cast<int>(it - body.vars.begin());
        if (body.vars.size() == 1)
            return Node{true, !is_empty(body.dfa), {}, {}};
        Dfa d = project_pad_closed(body.dfa, track);
        body.vars.erase(it);
        body.dfa = std::move(d);
        return body;
    }

    Node compile_rec(const FormulaPtr& f) const {
        switch (f->kind) {
            case Formula::Kind::Rel:
                return atom(f->rel, f->args);
            case Formula::Kind::Eq:
                return equality(f->args[0], f->args[1]);
            case Formula::Kind::Not:
                return negate(compile_rec(f->sub[0]));
            case Formula::Kind::And:
            case Formula::Kind::Or:
            case Formula::Kind::Implies:
                return binary(f->kind, compile_rec(f->sub[0]), compile_rec(f->sub[1]));
            case Formula::Kind::Exists:
                return exists(f->var, compile_rec(f->sub[0]));
            case Formula::Kind::Forall: {
                auto inner = std::make_shared<Formula>();
                inner->kind = Formula::Kind::Not;
                inner->sub.push_back(f->sub[0]);
                auto ex = std::make_shared<Formula>();
                ex->kind = Formula::Kind::Exists;
                ex->var = f->var;
                ex->sub.push_back(inner);
                return negate(exists(f->var, compile_rec(inner)));
            }
        }
        throw std::logic_error("unreachable");
    }
};

} // namespace

CompiledRelation compile(const Presentation& p, const FormulaPtr& formula,
                         const std::vector<std::string>& var_order) {
    if (var_order.empty()) throw std::invalid_argument("var_order must be nonempty");
    {
        std::set<std::string> seen(var_order.begin(), var_order.end());
        if (seen.size() != var_order.size())
            throw std::invalid_argument("var_order contains duplicates");
        for (const auto& v : free_variables(formula))
            if (!seen.count(v))
                throw std::invalid_argument("var_order misses free variable " + v);
    }
    FormulaPtr f = rename_apart(formula);
    Compiler cc{p};
    Node n = cc.compile_rec(f);
    if (n.closed) {
        int k = static_cast<int>(var_order.size());
        Dfa d = n.truth ? p.domain_tuple(k) : Dfa{};
        if (!n.truth) {
            d.alphabet = p.alphabet().with_tracks(k);
            d.add_state(false, -1);
        }
        return CompiledRelation{std::move(d), var_order};
    }
    std::vector<std::string> sorted_target = var_order;
    std::sort(sorted_target.begin(), sorted_target.end());
    Node full = cc.embed(std::move(n), sorted_target);
    // permute from sorted order into the requested order
    std::vector<int> perm(var_order.size());
    for (size_t i = 0; i < sorted_target.size(); ++i) {
        auto it = std::find(var_order.begin(), var_order.end(), sorted_target[i]);
        perm[i] = static_cast<int>(it - var_order.begin());
    }
    bool identity = true;
    for (size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != static_cast<int>(i)) identity = false;
    Dfa d = identity ? std::move(full.dfa) : permute_tracks(full.dfa, perm);
    return CompiledRelation{std::move(d), var_order};
}

CompiledRelation compile(const Presentation& p, const std::string& text,
                         const std::vector<std::string>& var_order) {
    return compile(p, parse_formula(text), var_order);
}

bool decide(const Presentation& p, const FormulaPtr& sentence) {
    if (!free_variables(sentence).empty())
        throw std::invalid_argument("decide needs a sentence without free variables");
    FormulaPtr f = rename_apart(sentence);
    Compiler cc{p};
    switch (f->kind) {
        case Formula::Kind::Not:
            return !decide(p, f->sub[0]);
        case Formula::Kind::And:
            return decide(p, f->sub[0]) && decide(p, f->sub[1]);
        case Formula::Kind::Or:
            return decide(p, f->sub[0]) || decide(p, f->sub[1]);
        case Formula::Kind::Implies:
            return !decide(p, f->sub[0]) || decide(p, f->sub[1]);
        case Formula::Kind::Exists: {
            CompiledRelation cr = compile(p, f->sub[0], {f->var});
            return !is_empty(cr.dfa);
        }
        case Formula::Kind::Forall: {
            auto neg = std::make_shared<Formula>();
            neg->kind = Formula::Kind::Not;
            neg->sub.push_back(f->sub[0]);
            CompiledRelation cr = compile(p, FormulaPtr(neg), {f->var});
            return is_empty(cr.dfa);
        }
        case Formula::Kind::Rel:
        case Formula::Kind::Eq: {
            Node n = f->kind == Formula::Kind::Rel ? cc.atom(f->rel, f->args)
                                                   : cc.equality(f->args[0], f->args[1]);
            assert(n.closed);
            return n.truth;
        }
    }
    throw std::logic_error("unreachable");
}

bool decide(const Presentation& p, const std::string& text) {
    return decide(p, parse_formula(text));
}

std::vector<std::vector<Word>> enumerate_models(const Presentation& p, const FormulaPtr& f,
                                                const std::vector<std::string>& var_order,
                                                size_t limit) {
    CompiledRelation cr = compile(p, f, var_order);
    std::vector<std::vector<Word>> out;
    for (const auto& w : shortlex_enumerate(cr.dfa, limit))
        out.push_back(deconvolve(cr.dfa.alphabet, w));
    return out;
}

std::vector<std::vector<Word>> enumerate_models(const Presentation& p, const std::string& text,
                                                const std::vector<std::string>& var_order,
                                                size_t limit) {
    return enumerate_models(p, parse_formula(text), var_order, limit);
}

CompiledRelation substitute_constant(const Presentation& p, const CompiledRelation& cr,
                                     const std::string& var, const Word& w) {
    auto it = std::find(cr.var_order.begin(), cr.var_order.end(), var);
    if (it == cr.var_order.end()) throw std::invalid_argument("variable not in var_order");
    if (cr.var_order.size() < 2)
        throw std::invalid_argument("cannot drop the last track of a relation");
    if (!p.in_domain(w)) throw std::invalid_argument("substituted word is not in the domain");
    int track = static_cast<int>(it - cr.var_order.begin());
    Dfa d = fix_track_word(cr.dfa, track, w);
    d = project_pad_closed(d, track);
    std::vector<std::string> vars = cr.var_order;
    vars.erase(vars.begin() + track);
    return CompiledRelation{std::move(d), std::move(vars)};
}

} // namespace autostruct
