#ifndef AUTOSTRUCT_TURING_HPP
#define AUTOSTRUCT_TURING_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autostruct/presentation.hpp"

namespace autostruct {

enum class Move : int { Left = -1, Stay = 0, Right = 1 };

// Deterministic 1- or 3-tape machine. Halting states have no outgoing
// rules; the blank is never an input symbol. Decider convention used by
// the corpus: halt with the head on the leftmost output symbol and the
// tape holding exactly the output word.
struct TuringMachine {
    int tapes = 1;
    std::vector<std::string> state_names;
    int initial = 0;
    std::vector<char> halting;
    std::vector<std::string> symbols; // tape alphabet
    int blank = 0;
    std::vector<char> input_symbol;

    struct Rule {
        int state;
        std::vector<int> read;
        int next;
        std::vector<int> write;
        std::vector<Move> move;
    };
    std::vector<Rule> rules;

    int add_state(const std::string& name, bool is_halting = false);
    int add_symbol(const std::string& name, bool is_input = false);
    void add_rule(const std::string& from, const std::vector<std::string>& read,
                  const std::string& to, const std::vector<std::string>& write,
                  const std::string& moves); // moves like "RSL"
    int state_index(const std::string& name) const;
    int symbol_index(const std::string& name) const;
    const Rule* rule_for(int state, const std::vector<int>& read) const;
    void validate() const;

    Word parse_input(const std::string& text) const;
    std::string format_word(const Word& w) const;
};

// One tape: content left of the head (no leading blanks) and from the
// head rightward (no trailing blanks).
struct Tape {
    Word left, right;
    bool operator==(const Tape&) const = default;
    bool operator<(const Tape& o) const {
        return left != o.left ? left < o.left : right < o.right;
    }
};

struct Configuration {
    int state = 0;
    std::vector<Tape> tapes;
    bool operator==(const Configuration&) const = default;
    bool operator<(const Configuration& o) const {
        return state != o.state ? state < o.state : tapes < o.tapes;
    }
};

Configuration initial_configuration(const TuringMachine& m, const Word& input);
void canonicalize(const TuringMachine& m, Configuration& c);

// nullopt once halted (halting state or no applicable rule)
std::optional<Configuration> step(const TuringMachine& m, const Configuration& c);

struct RunResult {
    bool halted = false;
    long steps = 0;
    Configuration final;
    Word output; // content of the output tape (tape 1, or tape 3 when present)
};
RunResult run(const TuringMachine& m, const Word& input, long budget);

// Exact predecessor set, computed by inverting every rule and verifying
// with step(); reversible machines yield at most one.
std::vector<Configuration> predecessors(const TuringMachine& m, const Configuration& c);

struct ChainClass {
    enum class Tag { Terminating, NonterminatingWithinBudgetUnknown, Unproductive } tag;
    long length = 0; // defined iff Terminating
};
// base must have in-degree 0; throws otherwise.
ChainClass classify_chain(const TuringMachine& m, const Configuration& base, long budget);

// Bennett's three-phase construction: compute while recording one history
// mark per executed rule, copy the output to tape 3, then retrace the
// history to restore the input and erase tape 2. The result accepts the
// same inputs and its configuration graph has in- and out-degree <= 1.
TuringMachine reversible_transform(const TuringMachine& m);

// Morita-style syntactic reversibility: rule domains pairwise distinct,
// and rules entering the same state must differ in the written symbol on
// some tape where both make the same move. Returns a violation
// description, or nullopt when the check passes.
std::optional<std::string> check_reversible_syntax(const TuringMachine& m);

// Configuration words: <w1> q <w1'> for one tape, and
// <w1> q <w1'> # <w2> ^ <w2'> # <w3> ^ <w3'> for three.
TrackedAlphabet config_alphabet(const TuringMachine& m);
Word encode_configuration(const TuringMachine& m, const Configuration& c);
Configuration decode_configuration(const TuringMachine& m, const Word& w);

Dfa config_domain_dfa(const TuringMachine& m);
Dfa valid_initial_dfa(const TuringMachine& m);
Dfa final_dfa(const TuringMachine& m);

// Conf(M) as a presentation: regular domain of configuration encodings
// plus the one-step relation "E" as a 2-track automaton.
Presentation config_space(const TuringMachine& m);

// Text format: tm <tapes> / state <id> [initial] [halting] /
// sym <symbol> [blank] [input] / rule <state> <read...> -> <state>
// <write...> <moves>. Bit-exact round trip.
void write_machine(std::ostream& os, const TuringMachine& m);
TuringMachine read_machine(std::istream& is);
std::string machine_to_string(const TuringMachine& m);
TuringMachine machine_from_string(const std::string& text);

// Shipped corpus.
TuringMachine tm_immediate_halter();
TuringMachine tm_unary_incrementer();
TuringMachine tm_palindrome();
TuringMachine tm_looper();
TuringMachine tm_three_chain_decider();  // decides x < y on the chain eps < 1 < 11
TuringMachine tm_tree_successor_decider(); // successor of the spine-and-stars tree on {0,1}*
std::vector<TuringMachine> corpus_machines();

// Oracle for the three-chain relation (test support): x < y on {eps,1,11}.
bool three_chain_holds(const Word& x, const Word& y);
// Oracle for the spine-and-stars tree successor on {0,1}*:
// S(x,y) iff x = 0^n and (y = 0^(n+1) or (|y| = n and y != 0^n)).
bool spine_tree_successor(const Word& x, const Word& y);

} // namespace autostruct

#endif
