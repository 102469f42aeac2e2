#ifndef AUTOSTRUCT_LOGIC_HPP
#define AUTOSTRUCT_LOGIC_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "autostruct/presentation.hpp"

namespace autostruct {

// First-order syntax over a presentation's named relations and equality.
// Text form is a prefix s-expression, e.g.
//   (forall x (exists y (and (le x y) (not (= x y)))))
// Double-quoted strings denote domain-word constants.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Term {
    bool is_const = false;
    std::string text; // variable name, or constant spelling
};

struct Formula {
    enum class Kind { Rel, Eq, Not, And, Or, Implies, Exists, Forall };
    Kind kind;
    std::string rel;             // Rel: relation name
    std::vector<Term> args;      // Rel: arguments; Eq: exactly two
    std::string var;             // Exists/Forall: bound variable
    std::vector<FormulaPtr> sub; // Not: 1, And/Or/Implies: 2, quantifiers: 1
};

FormulaPtr parse_formula(const std::string& text);
std::string formula_to_string(const FormulaPtr& f);
std::set<std::string> free_variables(const FormulaPtr& f);

// Bound variables are renamed apart so that no variable occurs both free
// and bound and no two binders share a name.
FormulaPtr rename_apart(const FormulaPtr& f);

struct CompiledRelation {
    Dfa dfa;                            // k tracks, track i carries var_order[i]
    std::vector<std::string> var_order;
};

// Compiles f into an automaton whose language is
//   { c(w_0..w_{k-1}) : w_i in domain, p |= f under var_order[i] := w_i }.
// var_order must cover the free variables of f and be duplicate-free.
CompiledRelation compile(const Presentation& p, const FormulaPtr& f,
                         const std::vector<std::string>& var_order);
CompiledRelation compile(const Presentation& p, const std::string& text,
                         const std::vector<std::string>& var_order);

// Sentence decision. Convention (the automaton encoding cannot carry
// zero-track languages): sentences are decided structurally — boolean
// connectives in bool, a quantifier (exists x phi) via emptiness of
// compile(phi, [x]), ground atoms by direct membership. This makes the
// empty structure satisfy every universal and no existential sentence.
bool decide(const Presentation& p, const FormulaPtr& sentence);
bool decide(const Presentation& p, const std::string& text);

// Satisfying tuples in shortlex order of their convolutions.
std::vector<std::vector<Word>> enumerate_models(const Presentation& p, const FormulaPtr& f,
                                                const std::vector<std::string>& var_order,
                                                size_t limit);
std::vector<std::vector<Word>> enumerate_models(const Presentation& p, const std::string& text,
                                                const std::vector<std::string>& var_order,
                                                size_t limit);

// Section of the relation at track(var) = w; the track is removed.
// Throws if w is not a domain word or the relation would drop to 0 tracks.
CompiledRelation substitute_constant(const Presentation& p, const CompiledRelation& cr,
                                     const std::string& var, const Word& w);

} // namespace autostruct

#endif
