#ifndef FFL_CYCLOTOMIC_HPP
#define FFL_CYCLOTOMIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ffl/rational.hpp"

namespace ffl {

unsigned euler_phi(unsigned n);
unsigned gcd_u(unsigned a, unsigned b);
unsigned lcm_u(unsigned a, unsigned b);

// Galois automorphism of Q(zeta_n) given by zeta_n -> zeta_n^a, gcd(a, n) = 1.
// Conductor 1 is the identity on Q.
class GaloisAutomorphism {
  public:
    GaloisAutomorphism(unsigned conductor, unsigned exponent);

    unsigned conductor() const { return n_; }
    unsigned exponent() const { return a_; }
    bool is_identity() const { return a_ == 1; }

    // Composition: apply rhs first, then lhs. Conductors must match.
    GaloisAutomorphism operator*(const GaloisAutomorphism& rhs) const;
    bool operator==(const GaloisAutomorphism& rhs) const { return n_ == rhs.n_ && a_ == rhs.a_; }

  private:
    unsigned n_;
    unsigned a_;
};

// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1),
// reduced modulo the n-th cyclotomic polynomial. Values are immutable;
// mixed-conductor arithmetic embeds both operands into Q(zeta_lcm).
class Cyclotomic {
  public:
    Cyclotomic() : n_(1), c_(1, Rational(0)) {}
    Cyclotomic(long v) : n_(1), c_(1, Rational(v)) {}
    Cyclotomic(const Rational& v) : n_(1), c_(1, v) {}

    static Cyclotomic zeta(unsigned n) { return root_of_unity(n, 1); }
    static Cyclotomic root_of_unity(unsigned n, long k);
    // Interprets coeffs[i] as the coefficient of zeta_n^i (any length; exponents
    // are taken mod n and the result is reduced mod Phi_n).
    static Cyclotomic from_power_coeffs(unsigned n, const std::vector<Rational>& coeffs);

    unsigned conductor() const { return n_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const; // throws std::logic_error unless is_rational()

    // Embeds into Q(zeta_m); requires conductor() | m.
    Cyclotomic promoted(unsigned m) const;

    Cyclotomic operator-() const;
    Cyclotomic operator+(const Cyclotomic& rhs) const;
    Cyclotomic operator-(const Cyclotomic& rhs) const;
    Cyclotomic operator*(const Cyclotomic& rhs) const;
    Cyclotomic operator/(const Cyclotomic& rhs) const;
    Cyclotomic& operator+=(const Cyclotomic& rhs) { return *this = *this + rhs; }
    Cyclotomic& operator-=(const Cyclotomic& rhs) { return *this = *this - rhs; }
    Cyclotomic& operator*=(const Cyclotomic& rhs) { return *this = *this * rhs; }

    Cyclotomic inverse() const; // DivisionByZero on zero

    // zeta_n -> zeta_n^a, Q-linear; requires conductor() | sigma.conductor().
    Cyclotomic apply(const GaloisAutomorphism& sigma) const;

    bool operator==(const Cyclotomic& rhs) const;
    bool operator!=(const Cyclotomic& rhs) const { return !(*this == rhs); }

    std::string to_string() const; // e.g. "3/2 + z^2" with z = zeta_n

  private:
    Cyclotomic(unsigned n, std::vector<Rational> reduced) : n_(n), c_(std::move(reduced)) {}

    unsigned n_;
    std::vector<Rational> c_;
};

inline Cyclotomic cyclo_automorphism(const Cyclotomic& x, const GaloisAutomorphism& sigma) {
    return x.apply(sigma);
}

inline bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
inline Cyclotomic inverse(const Cyclotomic& x) { return x.inverse(); }

// All a in [1, n) with gcd(a, n) = 1, ascending.
std::vector<unsigned> coprime_exponents(unsigned n);

} // namespace ffl

#endif
