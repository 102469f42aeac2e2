#include "autostruct/formats.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace autostruct {

void write_automaton(std::ostream& os, const Nfa& a) {
    os << "nfa " << a.alphabet.tracks();
    for (const auto& s : a.alphabet.symbols()) os << ' ' << s;
    os << '\n';
    for (int s = 0; s < a.num_states; ++s) {
        os << "state " << s;
        if (std::binary_search(a.initial.begin(), a.initial.end(), s)) os << " initial";
        if (a.accepting[static_cast<size_t>(s)]) os << " accepting";
        os << '\n';
    }
    for (int s = 0; s < a.num_states; ++s)
        for (const auto& [c, t] : a.edges[static_cast<size_t>(s)])
            os << "trans " << s << ' ' << a.alphabet.format_column(c) << ' ' << t << '\n';
}

void write_automaton(std::ostream& os, const Dfa& a) { write_automaton(os, a.to_nfa()); }

Nfa read_automaton(std::istream& is) {
    std::string line;
    Nfa a;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "end") break;
        if (kw == "nfa") {
            int tracks;
            ls >> tracks;
            std::vector<std::string> syms;
            std::string s;
            while (ls >> s) syms.push_back(s);
            a.alphabet = TrackedAlphabet(syms, tracks);
            have_header = true;
        } else if (kw == "state") {
            if (!have_header) throw std::runtime_error("automaton: state before header");
            int id;
            ls >> id;
            while (a.num_states <= id) a.add_state(false);
            std::string flag;
            while (ls >> flag) {
                if (flag == "initial")
                    a.add_initial(id);
                else if (flag == "accepting")
                    a.accepting[static_cast<size_t>(id)] = 1;
                else
                    throw std::runtime_error("automaton: unknown state flag " + flag);
            }
        } else if (kw == "trans") {
            if (!have_header) throw std::runtime_error("automaton: trans before header");
            int from, to;
            std::string col;
            ls >> from >> col >> to;
            if (from >= a.num_states || to >= a.num_states || from < 0 || to < 0)
                throw std::runtime_error("automaton: transition references unknown state");
            a.add_edge(from, a.alphabet.parse_column(col), to);
        } else {
            throw std::runtime_error("automaton: unknown directive " + kw);
        }
    }
    if (!have_header) throw std::runtime_error("automaton: missing header");
    a.sort_edges();
    return a;
}

std::string automaton_to_string(const Nfa& a) {
    std::ostringstream os;
    write_automaton(os, a);
    return os.str();
}

std::string automaton_to_string(const Dfa& a) {
    std::ostringstream os;
    write_automaton(os, a);
    return os.str();
}

Nfa automaton_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_automaton(is);
}

Nfa load_automaton_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_automaton(f);
}

void save_automaton_file(const std::string& path, const Nfa& a) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    write_automaton(f, a);
}

void save_automaton_file(const std::string& path, const Dfa& a) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    write_automaton(f, a);
}

} // namespace autostruct
