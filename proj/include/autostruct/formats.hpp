#ifndef AUTOSTRUCT_FORMATS_HPP
#define AUTOSTRUCT_FORMATS_HPP

#include <iosfwd>
#include <string>

#include "autostruct/automata.hpp"

namespace autostruct {

// Line-oriented automaton format:
//   nfa <tracks> <symbols...>
//   state <id> [initial] [accepting]
//   trans <from> <col> <to>
// where <col> joins one token per track with '|' and '_' denotes the pad.
// Emission is deterministic (states ascending, transitions sorted), so
// save/load round-trips bit-exactly.
void write_automaton(std::ostream& os, const Nfa& a);
Nfa read_automaton(std::istream& is);

void write_automaton(std::ostream& os, const Dfa& a);

std::string automaton_to_string(const Nfa& a);
std::string automaton_to_string(const Dfa& a);
Nfa automaton_from_string(const std::string& text);

Nfa load_automaton_file(const std::string& path);
void save_automaton_file(const std::string& path, const Nfa& a);
void save_automaton_file(const std::string& path, const Dfa& a);

} // namespace autostruct

#endif
