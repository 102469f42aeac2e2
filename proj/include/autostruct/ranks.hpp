#ifndef AUTOSTRUCT_RANKS_HPP
#define AUTOSTRUCT_RANKS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "autostruct/logic.hpp"
#include "autostruct/ordinal.hpp"
#include "autostruct/presentation.hpp"
#include "autostruct/structures.hpp"

namespace autostruct {

// Exact ranks over a finite fragment. ranks[i] is the ordinal height of
// element i restricted to the fragment; exact means the fragment is
// downward closed, so these equal the ranks in the full structure.
struct RankAssignment {
    std::vector<int> ranks;
    int height = 0; // max rank; 0 when the fragment is empty
    bool exact = false;
    std::string fragment_note;
};

struct CycleError : std::runtime_error {
    std::vector<int> cycle;
    explicit CycleError(std::vector<int> c)
        : std::runtime_error("relation is not well-founded on the fragment"), cycle(std::move(c)) {}
};

// Edges are (lower, upper) pairs: rank(lower) < rank(upper). Throws
// CycleError with a witness when the fragment is cyclic.
RankAssignment ordinal_height_finite(int num_elements,
                                     const std::vector<std::pair<int, int>>& edges,
                                     bool downward_closed = true);

// A materialized substructure: elements plus all relation edges between
// them; closed reports whether every predecessor of a member was found.
struct Fragment {
    std::vector<Word> elements;
    std::vector<std::pair<int, int>> edges; // (pred, succ)
    bool closed = true;
    int index_of(const Word& w) const;
};

// BFS along predecessors of the named binary relation, up to `depth`
// steps, visiting at most `pred_cap` predecessors per element (an element
// with more, or infinitely many, marks the fragment as not closed).
Fragment reachable_fragment(const Presentation& p, const std::string& rel,
                            const std::vector<Word>& seeds, int depth, size_t pred_cap = 64);

RankAssignment fragment_height(const Fragment& f);

// Strict lower cone { x : x < u } of a presentation with "le".
Dfa down_set(const Presentation& p, const Word& u);

// X_v^u = { vw in A : vw < u }.
Dfa residual_set(const Presentation& p, const Word& u, const Word& v);

// Pair of DFA states (domain after v, order comparison after c(v, u));
// |u| = |v|. The comparison automaton is the strict order x < y: the
// non-strict one cannot tell vw = u from vw < u at w = empty, which the
// residual map g(vw) = v'w must distinguish. Equal signatures make g an
// order isomorphism of residual sets.
struct StateSignature {
    int domain_state;
    int le_state;
    bool operator==(const StateSignature&) const = default;
    bool operator<(const StateSignature& o) const {
        return domain_state != o.domain_state ? domain_state < o.domain_state
                                              : le_state < o.le_state;
    }
};
Dfa strict_order_dfa(const Presentation& p);
StateSignature state_signature(const Presentation& p, const Dfa& strict_le, const Word& u,
                               const Word& v);
StateSignature state_signature(const Presentation& p, const Word& u, const Word& v);

// Derivative of a prefix-closed regular tree: the prefix-closed language
// of nodes lying on at least two infinite paths. Throws if the input is
// not prefix-closed.
Dfa cb_derivative_prefix(const Dfa& tree);

struct CbRankResult {
    bool exact;
    int rank; // exact rank, or the exhausted iteration budget as a lower bound
    std::vector<int> stage_sizes; // automaton sizes per stage, for reports
};
CbRankResult cb_rank_prefix(const Dfa& tree, int budget);

// Depth-truncated derivative stages of a successor tree: BFS the tree to
// `depth`, treat "reaches the truncation depth" as infinite, and iterate
// finite derivatives. Heuristic evidence only; never claims exact ranks.
struct CbStageReport {
    std::vector<Word> nodes;
    std::vector<int> node_depth;
    std::vector<int> parent; // -1 at the root
    std::vector<std::vector<char>> stages; // survival per stage, stage 0 = everything
    int depth_budget = 0;
    size_t surviving(size_t stage) const;
};
CbStageReport cb_estimate_truncated(const Presentation& p, int depth, int max_iterations,
                                    const std::string& rel = "S");

// Materializes the induced substructure on the given domain words.
FiniteStructure fragment_structure(const Presentation& p, const std::vector<Word>& elements);

// Line-oriented "key<TAB>value" serialization plus JSON for reports.
std::string rank_assignment_to_text(const RankAssignment& r, const std::vector<Word>& elements,
                                    const TrackedAlphabet& al);
std::string cb_stage_report_to_text(const CbStageReport& r, const TrackedAlphabet& al);

} // namespace autostruct

#endif
