#ifndef FFL_CHARACTERS_HPP
#define FFL_CHARACTERS_HPP

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ffl/cyclotomic.hpp"
#include "ffl/places.hpp"

namespace ffl {

// (F_q[t]/m)^x for a monic modulus of degree >= 1, with a generating set in
// which every unit has a unique exponent vector. Built by brute enumeration:
// element orders are computed directly, generators are picked greedily
// (largest order first, smallest residue code breaking ties) and a candidate
// is accepted only when it extends the span as a direct factor; the final
// table is checked to cover the whole group.
class UnitGroup {
  public:
    static std::shared_ptr<const UnitGroup> create(const FqPoly& modulus);

    const FqPoly& modulus() const { return m_; }
    const FqRef& field() const { return F_; }
    uint64_t order() const { return order_; }
    const std::vector<FqPoly>& generators() const { return gens_; }
    const std::vector<uint64_t>& generator_orders() const { return gen_orders_; }

    bool is_unit(const FqPoly& f) const;
    // Exponent vector of f mod m w.r.t. the generators; nullopt if not coprime.
    std::optional<std::vector<uint64_t>> exponents_of(const FqPoly& f) const;

    // Packed code of a residue (degree < deg m), base q.
    uint64_t residue_code(const FqPoly& f) const;

  private:
    UnitGroup() = default;

    FqRef F_;
    FqPoly m_;
    uint64_t order_ = 0;
    std::vector<FqPoly> gens_;
    std::vector<uint64_t> gen_orders_;
    std::unordered_map<uint64_t, std::vector<uint64_t>> dlog_;
};

using UnitGroupRef = std::shared_ptr<const UnitGroup>;

// Value of chi at the infinite place: a root of unity zeta_n^j, or ramified.
struct InfinityBehavior {
    bool ramified = true;
    unsigned exponent = 0;

    static InfinityBehavior make_ramified() { return {}; }
    static InfinityBehavior unramified(unsigned j) { return {false, j}; }
    bool operator==(const InfinityBehavior& o) const {
        return ramified == o.ramified && (ramified || exponent == o.exponent);
    }
};

// Dirichlet character of modulus m: the 1-dimensional Artin representation
// sending the i-th generator to zeta_n^{e_i}. Values lie in mu_n or are 0 on
// non-units. At a finite place v, chi(v) := chi(pi_v).
class DirichletCharacter {
  public:
    DirichletCharacter(UnitGroupRef group, unsigned order, std::vector<unsigned> exponents,
                       InfinityBehavior infinity = InfinityBehavior::make_ramified());

    const UnitGroupRef& group() const { return G_; }
    const FqPoly& modulus() const { return G_->modulus(); }
    unsigned order() const { return n_; }
    const std::vector<unsigned>& exponents() const { return e_; }
    const InfinityBehavior& infinity_behavior() const { return inf_; }

    bool is_trivial() const;

    // 0 on non-units, zeta_n^(sum e_i x_i) otherwise; completely
    // multiplicative on arguments coprime to the modulus.
    Cyclotomic eval(const FqPoly& f) const;
    // Root-of-unity exponent of chi(f), nullopt on non-units.
    std::optional<unsigned> eval_exponent(const FqPoly& f) const;

    bool is_ramified_at(const Place& v) const;
    // chi(pi_v) for finite v, the configured value at infinity; 0 if ramified.
    Cyclotomic value_at(const Place& v) const;
    std::optional<unsigned> exponent_at(const Place& v) const; // nullopt if ramified at v

    // Nontrivial on the kernel of reduction to every proper monic divisor of m.
    bool is_primitive() const;

    // sigma with conductor n acts by e -> a*e mod n.
    DirichletCharacter conjugate(const GaloisAutomorphism& sigma) const;
    DirichletCharacter power(unsigned k) const;

    bool operator==(const DirichletCharacter& rhs) const;

    std::string to_string() const;

  private:
    UnitGroupRef G_;
    unsigned n_;
    std::vector<unsigned> e_;
    InfinityBehavior inf_;
};

// All characters of the group, deterministically ordered (exponent tuples in
// odometer order); each comes with its exact order.
std::vector<DirichletCharacter> all_characters(const UnitGroupRef& group);

// tau = chi_1 + ... + chi_r as an ordered direct sum.
using CharacterTuple = std::vector<DirichletCharacter>;

} // namespace ffl

#endif
