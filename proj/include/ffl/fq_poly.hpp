#ifndef FFL_FQ_POLY_HPP
#define FFL_FQ_POLY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ffl/finite_field.hpp"

namespace ffl {

// Dense polynomial over F_q, coefficients stored as field codes, lowest degree
// first, no trailing zeros.
class FqPoly {
  public:
    FqPoly() = default;
    FqPoly(FqRef field, std::vector<uint64_t> coeffs);

    static FqPoly zero(FqRef field) { return FqPoly(std::move(field), {}); }
    static FqPoly one(FqRef field) { return FqPoly(std::move(field), {1}); }
    static FqPoly t(FqRef field) { return FqPoly(std::move(field), {0, 1}); }
    static FqPoly constant(FqRef field, uint64_t code) { return FqPoly(std::move(field), {code}); }
    // Coefficients given as integers, reduced into the prime subfield.
    static FqPoly from_int_coeffs(FqRef field, const std::vector<long>& coeffs);
    // Monic polynomial of degree d whose non-leading coefficients are the
    // base-q digits of `code` (constant term = lowest digit). Numeric order on
    // codes is the lexicographic order used throughout.
    static FqPoly monic_from_code(FqRef field, unsigned d, uint64_t code);

    const FqRef& field() const { return F_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    uint64_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<uint64_t>& coeffs() const { return c_; }
    uint64_t leading() const;

    uint64_t monic_code() const; // inverse of monic_from_code

    FqPoly operator+(const FqPoly& rhs) const;
    FqPoly operator-(const FqPoly& rhs) const;
    FqPoly operator-() const;
    FqPoly operator*(const FqPoly& rhs) const;
    FqPoly scaled(uint64_t code) const;
    std::pair<FqPoly, FqPoly> divrem(const FqPoly& rhs) const;
    FqPoly operator%(const FqPoly& rhs) const { return divrem(rhs).second; }
    FqPoly operator/(const FqPoly& rhs) const { return divrem(rhs).first; }
    bool divides(const FqPoly& multiple) const;

    FqPoly make_monic() const;
    FqPoly pow_u(unsigned e) const;
    FqPoly derivative() const;

    uint64_t eval(uint64_t x) const;
    // Horner evaluation in an extension field after embedding the coefficients.
    uint64_t eval_embedded(const SubfieldEmbedding& emb, uint64_t x_big) const;

    // Multiplicity of pi in *this (*this nonzero).
    unsigned valuation(const FqPoly& pi) const;

    bool operator==(const FqPoly& rhs) const;
    bool operator!=(const FqPoly& rhs) const { return !(*this == rhs); }
    // Degree first, then coefficients from the top down (code order).
    static int compare(const FqPoly& a, const FqPoly& b);
    bool operator<(const FqPoly& rhs) const { return compare(*this, rhs) < 0; }

    std::string to_string(const std::string& var = "t") const;

  private:
    void trim();

    FqRef F_;
    std::vector<uint64_t> c_;
};

FqPoly gcd(const FqPoly& a, const FqPoly& b); // monic gcd

// Rabin irreducibility test over F_q.
bool is_irreducible(const FqPoly& f);

// All monic irreducibles of degree d, ascending code order (lexicographic).
// Sieve-based: marks every product of a lower-degree irreducible with a monic
// cofactor, then collects the survivors.
std::vector<FqPoly> monic_irreducibles(const FqRef& field, unsigned d);

// Gauss necklace count (1/d) * sum_{e|d} mu(e) q^{d/e}.
uint64_t count_monic_irreducibles(uint64_t q, unsigned d);

int moebius(unsigned n);

} // namespace ffl

#endif
