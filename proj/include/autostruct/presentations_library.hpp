#ifndef AUTOSTRUCT_PRESENTATIONS_LIBRARY_HPP
#define AUTOSTRUCT_PRESENTATIONS_LIBRARY_HPP

#include <functional>

#include "autostruct/presentation.hpp"

namespace autostruct {

// (N, <=, S) in unary: domain 1*, "le" is the prefix relation, "succ" adds
// one letter.
Presentation nat_unary();

// The ordinal omega^n. Domain words are n-track unary convolutions packed
// into single column symbols (strings over '1'/'.'); "le" compares the
// exponent tuples (k_n, ..., k_1) lexicographically, most significant
// first. The word encoding is a conforming choice, not paper-prescribed.
Presentation omega_power(int n);

// The finite-CB-rank trees: domain a1*...an*, "le" the prefix order, "S"
// its cover relation. n = 0 gives the empty tree.
Presentation tree_T_n(int n);

// Successor tree of CB rank omega+1 over {0,1}*, successor only.
Presentation tree_T_omega_plus_1();

// Successor tree of CB rank omega over {0,1}* and {0,a}*, successor only.
Presentation tree_T_omega();

// One root with omega many dangling chains of every finite length,
// relation "E". Chain nodes are tagged pair words c(0^(l-p) 1^p, 1^i);
// the encoding is conforming, the isomorphism type is what matters.
Presentation fan();

// omega-fold disjoint union: domain words become c(w, 1^i) pair words and
// every relation additionally requires equal copy tags.
Presentation omega_fold_union(const Presentation& p);

// Product of successor trees: pair domain, successor steps in the second
// component, or in the first while the second sits at its root.
Presentation tree_product(const Presentation& p1, const Presentation& p2);

// Adds "S" compiled from S(x,y) <-> x < y and nothing strictly between.
Presentation successor_from_order(const Presentation& p);

// Unique S-minimal element of a successor tree (error if not unique).
Word tree_root(const Presentation& p, const std::string& rel = "S");

// Shared machinery for structures whose symbols pack several component
// letters into one string. A part reads a derived column: fn returns the
// narrow column code, kFrozen once this component's word has ended, or
// kReject for columns the component rules out entirely. A frozen
// component must stay frozen; acceptance needs every part accepting.
inline constexpr int64_t kFrozenColumn = -1;
inline constexpr int64_t kRejectColumn = -2;
using ColumnFn = std::function<int64_t(uint32_t)>;

struct ColumnPart {
    const Dfa* automaton;
    ColumnFn fn;
};

Dfa column_product(const TrackedAlphabet& wide, const std::vector<ColumnPart>& parts);

// Pair-symbol helpers: symbols "<left>:<right>" with '.' as the component
// pad; at least one side of every symbol is live.
TrackedAlphabet pair_alphabet(const std::vector<std::string>& left,
                              const std::vector<std::string>& right, int tracks);
int pair_left_letter(const TrackedAlphabet& pairs, int nleft, int nright, int letter);
int pair_right_letter(const TrackedAlphabet& pairs, int nleft, int nright, int letter);

} // namespace autostruct

#endif
