#ifndef AUTOSTRUCT_ORDINAL_HPP
#define AUTOSTRUCT_ORDINAL_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace autostruct {

// Ordinals below omega^omega in Cantor normal form: a sum of terms
// w^e * c with strictly decreasing exponents and positive coefficients.
// The empty sum is 0.
class OrdinalCNF {
public:
    struct Term {
        uint32_t exponent;
        uint64_t coefficient;
        bool operator==(const Term&) const = default;
    };

    OrdinalCNF() = default;
    explicit OrdinalCNF(uint64_t n); // finite ordinal
    static OrdinalCNF omega_power(uint32_t e, uint64_t c = 1);
    // terms may arrive unsorted; equal exponents merge
    static OrdinalCNF from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_finite() const { return terms_.empty() || terms_[0].exponent == 0; }
    uint64_t finite_value() const; // throws unless is_finite()

    // "w^e*c + ..." with w^0*c printed as c, w^1 as w, coefficient 1 omitted
    std::string to_string() const;
    static OrdinalCNF parse(const std::string& text);

    bool operator==(const OrdinalCNF&) const = default;

private:
    std::vector<Term> terms_; // strictly decreasing exponents
};

// ordinal order: lexicographic on the term sequences
std::strong_ordering cnf_compare(const OrdinalCNF& a, const OrdinalCNF& b);
bool cnf_less(const OrdinalCNF& a, const OrdinalCNF& b);

// natural (Hessenberg) sum: coefficient-wise addition of CNF terms
OrdinalCNF natural_sum(const OrdinalCNF& a, const OrdinalCNF& b);

// ordinary ordinal sum, for reporting bounds like w + r(C)
OrdinalCNF ordinal_sum(const OrdinalCNF& a, const OrdinalCNF& b);

} // namespace autostruct

#endif
