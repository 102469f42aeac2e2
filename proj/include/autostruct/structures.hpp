#ifndef AUTOSTRUCT_STRUCTURES_HPP
#define AUTOSTRUCT_STRUCTURES_HPP

#include <set>
#include <string>
#include <vector>

namespace autostruct {

// A finite relational structure over universe {0, ..., size-1}.
struct FiniteStructure {
    struct Rel {
        std::string name;
        int arity;
        std::set<std::vector<int>> tuples;
    };
    int size = 0;
    std::vector<Rel> relations;

    bool holds(size_t rel, const std::vector<int>& tuple) const {
        return relations[rel].tuples.count(tuple) != 0;
    }
    static FiniteStructure graph(int n, const std::set<std::pair<int, int>>& edges);
};

bool same_vocabulary(const FiniteStructure& a, const FiniteStructure& b);

// Tuple pairs are games over positions: a position is the set of pairs
// (a_i, b_i), which carries exactly the quantifier-free information of
// the tuple pair. Level-0 equivalence is "the position is a partial
// isomorphism"; level m+1 plays extension moves that are distinct-element
// tuples of length <= |A| (as subsets), answered by arbitrary same-length
// tuples. This matches the layered back-and-forth definition on finite
// structures; the distinct-tuple reduction is validated in the tests
// against a literal unrestricted-tuple oracle.
bool back_and_forth(const FiniteStructure& a, const FiniteStructure& b,
                    const std::vector<int>& atuple, const std::vector<int>& btuple, int level);

// Same check with a caller-chosen extension bound (move sets of size <= bound).
bool back_and_forth_bounded(const FiniteStructure& a, const FiniteStructure& b,
                            const std::vector<int>& atuple, const std::vector<int>& btuple,
                            int level, int bound);

// Is there an automorphism of `a` mapping atuple to btuple pointwise?
// Exhaustive permutation search; |a| must stay desk-sized.
bool tuple_isomorphic(const FiniteStructure& a, const std::vector<int>& atuple,
                      const std::vector<int>& btuple);

// Least beta such that for all same-length tuples b, a-tuple =^beta b
// implies (A, a-tuple) ~ (A, b). Injective tuples only; repeats add no
// quantifier-free information.
int scott_rank_tuple(const FiniteStructure& a, const std::vector<int>& tuple);

// max over tuples (lengths <= tuple_cap) of their Scott rank, plus one.
// Throws when the structure exceeds the configured size guard.
int scott_rank_finite(const FiniteStructure& a, int tuple_cap = -1);

// B_n(U) under the symmetric closure of the named binary relation.
std::set<int> neighborhood(const FiniteStructure& a, const std::vector<int>& tuple, int n,
                           const std::string& rel = "E");

} // namespace autostruct

#endif
