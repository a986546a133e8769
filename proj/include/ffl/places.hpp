#ifndef FFL_PLACES_HPP
#define FFL_PLACES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffl/fq_poly.hpp"

namespace ffl {

// A closed point of P^1 over F_q: a monic irreducible of F_q[t], or the
// degree-1 place at infinity.
class Place {
  public:
    static Place finite(FqPoly pi);           // validates monic + irreducible
    static Place finite_unchecked(FqPoly pi); // for callers that already know
    static Place infinity(FqRef field);

    bool is_infinity() const { return infinite_; }
    unsigned degree() const { return infinite_ ? 1 : static_cast<unsigned>(pi_.degree()); }
    const FqPoly& poly() const;
    const FqRef& field() const { return F_; }
    // Residue field order q^deg.
    uint64_t norm() const;

    bool operator==(const Place& rhs) const;
    bool operator!=(const Place& rhs) const { return !(*this == rhs); }
    // Finite places by (degree, code); infinity sorts after the finite
    // degree-1 places.
    bool operator<(const Place& rhs) const;

    std::string to_string() const;

  private:
    Place(FqRef field, FqPoly pi, bool infinite) : F_(std::move(field)), pi_(std::move(pi)), infinite_(infinite) {}

    FqRef F_;
    FqPoly pi_;
    bool infinite_;
};

// The residue field F_q[t]/pi as the standard F_{p^(e*deg)} representation.
FqRef residue_field(const Place& place);

// Image of f in the residue field under the fixed isomorphism t -> theta,
// where theta is the smallest-code root of pi in the standard representation.
FqElem residue_map(const Place& place, const FqPoly& f);
// Reduction of f/g; BadReductionOfFunction if pi divides g.
FqElem residue_map(const Place& place, const FqPoly& f_num, const FqPoly& f_den);

// The deterministic root theta used by residue_map (exposed for reuse).
uint64_t residue_root(const Place& place, const FqRef& big);

// Effective divisor: finite formal sum of places with positive multiplicities.
class EffectiveDivisor {
  public:
    EffectiveDivisor() = default;

    void add(const Place& v, unsigned mult);
    unsigned multiplicity(const Place& v) const;
    unsigned degree() const;
    const std::map<Place, unsigned>& support() const { return terms_; }
    bool operator==(const EffectiveDivisor& rhs) const { return terms_ == rhs.terms_; }

    std::string to_string() const;

  private:
    std::map<Place, unsigned> terms_;
};

// All places of degree <= max_degree in sorted order (finite by (degree,
// code), then infinity if requested).
std::vector<Place> places_up_to(const FqRef& field, unsigned max_degree, bool include_infinity);

// Every effective divisor of total degree exactly m, deterministically
// ordered. With finite places only, there are q^m of them.
std::vector<EffectiveDivisor> enumerate_effective_divisors(const FqRef& field, unsigned m, bool include_infinity);

} // namespace ffl

#endif
