#ifndef AUTOSTRUCT_PRESENTATION_HPP
#define AUTOSTRUCT_PRESENTATION_HPP

#include <iosfwd>
#include <map>
#include <string>

#include "autostruct/automata.hpp"

namespace autostruct {

// An automatic structure: a regular domain over a 1-track alphabet plus
// named relations given by multi-track automata over the same symbols.
// Construction verifies that every relation accepts only canonical
// convolutions of domain-word tuples.
class Presentation {
public:
    Presentation() = default;
    Presentation(std::string name, TrackedAlphabet alphabet, Dfa domain,
                 std::map<std::string, Dfa> relations, std::string notes = "");

    const std::string& name() const { return name_; }
    const TrackedAlphabet& alphabet() const { return alphabet_; }
    const Dfa& domain() const { return domain_; }
    const std::map<std::string, Dfa>& relations() const { return relations_; }
    const std::string& notes() const { return notes_; }

    bool has_relation(const std::string& r) const { return relations_.count(r) != 0; }
    const Dfa& relation(const std::string& r) const;
    int arity(const std::string& r) const { return relation(r).alphabet.tracks(); }

    bool in_domain(const Word& w) const;

    // Product language of domain words on every track of a k-track space.
    Dfa domain_tuple(int arity) const;

    Presentation with_relation(const std::string& name, Dfa rel) const;
    Presentation renamed(std::string name) const;

private:
    std::string name_;
    TrackedAlphabet alphabet_;
    Dfa domain_;
    std::map<std::string, Dfa> relations_;
    std::string notes_;
};

// Restricts a raw relation automaton to canonical convolutions of domain
// words on every track; every library constructor funnels through this
// before handing relations to the Presentation constructor.
Dfa finish_relation(Dfa rel, const Dfa& domain);

// Manifest format:
//   presentation <name> <symbols...>
//   domain
//   <automaton lines> end
//   relation <name> <arity>
//   <automaton lines> end
//   note <free text>            (optional, repeated)
// Round-trips bit-exactly through save/load.
void write_presentation(std::ostream& os, const Presentation& p);
Presentation read_presentation(std::istream& is);
std::string presentation_to_string(const Presentation& p);
Presentation presentation_from_string(const std::string& text);
Presentation load_presentation_file(const std::string& path);
void save_presentation_file(const std::string& path, const Presentation& p);

} // namespace autostruct

#endif
