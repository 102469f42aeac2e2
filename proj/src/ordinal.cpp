#include "autostruct/ordinal.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace autostruct {

OrdinalCNF::OrdinalCNF(uint64_t n) {
    if (n > 0) terms_.push_back({0, n});
}

OrdinalCNF OrdinalCNF::omega_power(uint32_t e, uint64_t c) {
    OrdinalCNF o;
    if (c > 0) o.terms_.push_back({e, c});
    return o;
}

OrdinalCNF OrdinalCNF::from_terms(std::vector<Term> terms) {
    std::map<uint32_t, uint64_t> merged;
    for (const auto& t : terms)
        if (t.coefficient > 0) merged[t.exponent] += t.coefficient;
    OrdinalCNF o;
    for (auto it = merged.rbegin(); it != merged.rend(); ++it)
        o.terms_.push_back({it->first, it->second});
    return o;
}

uint64_t OrdinalCNF::finite_value() const {
    if (is_zero()) return 0;
    if (!is_finite()) throw std::domain_error("ordinal is infinite");
    return terms_[0].coefficient;
}

std::string OrdinalCNF::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        if (t.exponent == 0) {
            os << t.coefficient;
        } else {
            if (t.exponent == 1)
                os << "w";
            else
                os << "w^" << t.exponent;
            if (t.coefficient != 1) os << "*" << t.coefficient;
        }
    }
    return os.str();
}

OrdinalCNF OrdinalCNF::parse(const std::string& text) {
    std::vector<Term> terms;
    std::istringstream is(text);
    std::string tok;
    bool expect_plus = false;
    while (is >> tok) {
        if (expect_plus) {
            if (tok != "+") throw std::invalid_argument("ordinal: expected +");
            expect_plus = false;
            continue;
        }
        Term t{0, 1};
        size_t pos = 0;
        if (tok == "0") {
            expect_plus = true;
            continue;
        }
        if (tok[0] == 'w') {
            t.exponent = 1;
            pos = 1;
            if (pos < tok.size() && tok[pos] == '^') {
                size_t end;
                t.exponent = static_cast<uint32_t>(std::stoul(tok.substr(pos + 1), &end));
                pos += 1 + end;
            }
            if (pos < tok.size()) {
                if (tok[pos] != '*') throw std::invalid_argument("ordinal: expected *");
                t.coefficient = std::stoull(tok.substr(pos + 1));
            }
        } else {
            t.coefficient = std::stoull(tok, &pos);
            t.exponent = 0;
            if (pos != tok.size()) throw std::invalid_argument("ordinal: bad term " + tok);
        }
        terms.push_back(t);
        expect_plus = true;
    }
    return from_terms(std::move(terms));
}

std::strong_ordering cnf_compare(const OrdinalCNF& a, const OrdinalCNF& b) {
    const auto& x = a.terms();
    const auto& y = b.terms();
    for (size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        if (x[i].exponent != y[i].exponent)
            return x[i].exponent <=> y[i].exponent;
        if (x[i].coefficient != y[i].coefficient)
            return x[i].coefficient <=> y[i].coefficient;
    }
    return x.size() <=> y.size();
}

bool cnf_less(const OrdinalCNF& a, const OrdinalCNF& b) {
    return cnf_compare(a, b) == std::strong_ordering::less;
}

OrdinalCNF natural_sum(const OrdinalCNF& a, const OrdinalCNF& b) {
    std::vector<OrdinalCNF::Term> terms = a.terms();
    for (const auto& t : b.terms()) terms.push_back(t);
    return OrdinalCNF::from_terms(std::move(terms));
}

OrdinalCNF ordinal_sum(const OrdinalCNF& a, const OrdinalCNF& b) {
    if (b.is_zero()) return a;
    uint32_t lead = b.terms()[0].exponent;
    // terms of a below w^lead are absorbed
    std::vector<OrdinalCNF::Term> terms;
    for (const auto& t : a.terms())
        if (t.exponent > lead) terms.push_back(t);
    bool merged = false;
    for (const auto& t : a.terms())
        if (t.exponent == lead) {
            terms.push_back({lead, t.coefficient + b.terms()[0].coefficient});
            merged = true;
        }
    for (size_t i = merged ? 1 : 0; i < b.terms().size(); ++i) terms.push_back(b.terms()[i]);
    return OrdinalCNF::from_terms(std::move(terms));
}

} // namespace autostruct
