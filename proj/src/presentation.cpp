#include "autostruct/presentation.hpp"

#include <fstream>
#include <sstream>

#include "autostruct/formats.hpp"

namespace autostruct {

Presentation::Presentation(std::string name, TrackedAlphabet alphabet, Dfa domain,
                           std::map<std::string, Dfa> relations, std::string notes)
    : name_(std::move(name)),
      alphabet_(std::move(alphabet)),
      domain_(std::move(domain)),
      relations_(std::move(relations)),
      notes_(std::move(notes)) {
    if (alphabet_.tracks() != 1) throw std::invalid_argument("domain alphabet must be 1-track");
    if (!domain_.alphabet.same_symbols(alphabet_))
        throw std::invalid_argument("domain automaton over wrong symbols");
    for (const auto& [rname, rel] : relations_) {
        if (!rel.alphabet.same_symbols(alphabet_))
            throw std::invalid_argument("relation " + rname + " over wrong symbols");
        int k = rel.alphabet.tracks();
        if (k < 1) throw std::invalid_argument("relation arity must be >= 1");
        // only canonical convolutions of domain words may be accepted
        Dfa canon = restrict_canonical(rel);
        if (!language_equal(rel, canon))
            throw std::invalid_argument("relation " + rname + " accepts non-canonical words");
        for (int t = 0; t < k; ++t) {
            Dfa on_domain = intersect_lifted(rel, domain_, {t});
            if (!language_equal(rel, on_domain))
                throw std::invalid_argument("relation " + rname + " leaves the domain on track " +
                                            std::to_string(t));
        }
    }
}

const Dfa& Presentation::relation(const std::string& r) const {
    auto it = relations_.find(r);
    if (it == relations_.end()) throw std::invalid_argument("unknown relation " + r);
    return it->second;
}

bool Presentation::in_domain(const Word& w) const {
    return domain_.accepts(convolve(alphabet_, {w}));
}

Dfa Presentation::domain_tuple(int arity) const {
    if (arity < 1) throw std::invalid_argument("arity must be positive");
    if (arity == 1) return domain_;
    Dfa cur = universe_dfa(alphabet_.with_tracks(arity));
    for (int t = 0; t < arity; ++t) cur = intersect_lifted(cur, domain_, {t});
    return cur;
}

Presentation Presentation::with_relation(const std::string& name, Dfa rel) const {
    auto rels = relations_;
    rels[name] = std::move(rel);
    return Presentation(name_, alphabet_, domain_, std::move(rels), notes_);
}

Presentation Presentation::renamed(std::string name) const {
    return Presentation(std::move(name), alphabet_, domain_, relations_, notes_);
}

Dfa finish_relation(Dfa rel, const Dfa& domain) {
    rel = restrict_canonical(rel);
    for (int t = 0; t < rel.alphabet.tracks(); ++t) rel = intersect_lifted(rel, domain, {t});
    return minimize(rel);
}

void write_presentation(std::ostream& os, const Presentation& p) {
    os << "presentation " << p.name();
    for (const auto& s : p.alphabet().symbols()) os << ' ' << s;
    os << '\n';
    os << "domain\n";
    write_automaton(os, p.domain());
    os << "end\n";
    for (const auto& [rname, rel] : p.relations()) {
        os << "relation " << rname << ' ' << rel.alphabet.tracks() << '\n';
        write_automaton(os, rel);
        os << "end\n";
    }
    std::istringstream notes(p.notes());
    std::string line;
    while (std::getline(notes, line)) os << "note " << line << '\n';
}

Presentation read_presentation(std::istream& is) {
    std::string line;
    std::string name;
    std::vector<std::string> symbols;
    bool have_header = false;
    Dfa domain;
    bool have_domain = false;
    std::map<std::string, Dfa> relations;
    std::string notes;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "presentation") {
            ls >> name;
            std::string s;
            while (ls >> s) symbols.push_back(s);
            have_header = true;
        } else if (kw == "domain") {
            domain = canonical_dfa(read_automaton(is));
            have_domain = true;
        } else if (kw == "relation") {
            std::string rname;
            int arity;
            ls >> rname >> arity;
            Nfa rel = read_automaton(is);
            if (rel.alphabet.tracks() != arity)
                throw std::runtime_error("relation " + rname + " arity mismatch");
            relations[rname] = canonical_dfa(rel);
        } else if (kw == "note") {
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
            if (!notes.empty()) notes += '\n';
            notes += rest;
        } else {
            throw std::runtime_error("presentation: unknown directive " + kw);
        }
    }
    if (!have_header || !have_domain) throw std::runtime_error("presentation: incomplete manifest");
    return Presentation(name, TrackedAlphabet(symbols, 1), domain, std::move(relations), notes);
}

std::string presentation_to_string(const Presentation& p) {
    std::ostringstream os;
    write_presentation(os, p);
    return os.str();
}

Presentation presentation_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_presentation(is);
}

Presentation load_presentation_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_presentation(f);
}

void save_presentation_file(const std::string& path, const Presentation& p) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    write_presentation(f, p);
}

} // namespace autostruct
