#ifndef AUTOSTRUCT_AUTOMATA_HPP
#define AUTOSTRUCT_AUTOMATA_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autostruct/alphabet.hpp"

namespace autostruct {

// Nondeterministic automaton over a track-structured alphabet. A set of
// initial states stands in for epsilon moves; missing transitions die.
struct Nfa {
    TrackedAlphabet alphabet;
    int num_states = 0;
    std::vector<int> initial;   // ascending
    std::vector<char> accepting;
    // Per state, (column, target) pairs sorted by column then target.
    std::vector<std::vector<std::pair<uint32_t, int>>> edges;

    int add_state(bool accept = false);
    void add_edge(int from, uint32_t col, int to);
    void add_initial(int s);
    void sort_edges();
};

// Deterministic, logically complete automaton: columns missing from a
// state's edge list go to fallback[s]; fallback -1 is a virtual dead state.
// canonical_dfa output is minimal with BFS state numbering, so equal
// languages over equal alphabets yield structurally identical values.
struct Dfa {
    TrackedAlphabet alphabet;
    int num_states = 0;
    int initial = 0;
    std::vector<char> accepting;
    std::vector<std::vector<std::pair<uint32_t, int>>> edges; // sorted by column
    std::vector<int> fallback;

    int add_state(bool accept, int fb = -1);
    void set_edge(int from, uint32_t col, int to);
    int step(int state, uint32_t col) const; // -1 once dead
    bool accepts(const std::vector<uint32_t>& cols) const;

    Nfa to_nfa() const;
};

enum class BoolOp { And, Or, Minus, Xor };

// Subset construction + Moore minimization + canonical renumbering.
Dfa canonical_dfa(const Nfa& a);
Dfa minimize(const Dfa& a);

// Pointwise boolean combination; alphabets must agree.
Dfa combine(const Dfa& a, const Dfa& b, BoolOp op);

// Canonical-word universe: no all-pad column, per-track padding is a
// contiguous suffix. Every language this library builds lives inside it.
Dfa universe_dfa(const TrackedAlphabet& alphabet);

// Canonical words not in L(a).
Dfa complement(const Dfa& a);

// Intersection with the canonical-word universe, computed lazily so wide
// alphabets never materialize the full column space.
Dfa restrict_canonical(const Dfa& a);

bool is_empty(const Nfa& a);
bool is_empty(const Dfa& a);
bool is_infinite(const Nfa& a);
bool is_infinite(const Dfa& a);
bool language_equal(const Dfa& a, const Dfa& b);
bool subset_of(const Dfa& a, const Dfa& b);

bool accepts(const Dfa& a, const std::vector<uint32_t>& cols);

// Words of L(a) in shortlex order: by length, then by packed column code
// (declaration order of symbols, pad last). At most `limit` words.
std::vector<std::vector<uint32_t>> shortlex_enumerate(const Nfa& a, size_t limit);
std::vector<std::vector<uint32_t>> shortlex_enumerate(const Dfa& a, size_t limit);

// Shortest accepted word, if any.
std::optional<std::vector<uint32_t>> shortest_word(const Dfa& a);

// Remaps every column through `perm`: letter on track t moves to track
// perm[t]. perm must be a permutation of 0..k-1.
Dfa permute_tracks(const Dfa& a, const std::vector<int>& perm);

// Inserts an unconstrained track at index `at` (0 <= at <= k): the result
// accepts exactly the canonical k+1-track words whose projection dropping
// track `at` lies in L(a).
Dfa cylindrify(const Dfa& a, int at);

// Existential projection: drops track `drop`, closing over runs where only
// the dropped track was still live, and re-canonicalizes. Requires k >= 2.
Dfa project_pad_closed(const Nfa& a, int drop);
Dfa project_pad_closed(const Dfa& a, int drop);

// L(a) restricted to words whose track t spells exactly w then pads.
Dfa fix_track_word(const Dfa& a, int track, const Word& w);

// Canonical convolutions where tracks t1 and t2 carry the same word.
Dfa track_equality_dfa(const TrackedAlphabet& alphabet, int t1, int t2);

// Lifts a narrow automaton onto selected tracks of a wide alphabet: the
// result accepts wide words whose restriction to `tracks` (dropping the
// all-pad tail that restriction produces) lies in L(narrow). Only touches
// columns realized in `wide_base`, with which it is intersected.
Dfa intersect_lifted(const Dfa& wide_base, const Dfa& narrow, const std::vector<int>& tracks);

// Single-word language {w} over a 1-track alphabet.
Dfa singleton_dfa(const TrackedAlphabet& alphabet, const Word& w);

// All canonical words over the alphabet (equals universe_dfa; kept for
// 1-track readability where it is just Sigma*).
Dfa all_words_dfa(const TrackedAlphabet& alphabet);

// Reinterpret over a larger symbol set that contains the old one; symbol
// indices are remapped by name.
Dfa translate_alphabet(const Dfa& a, const TrackedAlphabet& wider);
Nfa translate_alphabet(const Nfa& a, const TrackedAlphabet& wider);

Nfa union_nfa(const Nfa& a, const Nfa& b);

// Prepends a fixed column to every word of the language.
Dfa prepend_column(const Dfa& a, uint32_t col);

} // namespace autostruct

#endif
