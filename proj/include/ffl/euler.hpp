#ifndef FFL_EULER_HPP
#define FFL_EULER_HPP

#include "ffl/characters.hpp"
#include "ffl/elliptic.hpp"

namespace ffl {

// Local factor det(1 - X * Fr_v | inertia invariants) at a place, as a
// polynomial in X = T^{deg v} with constant term 1 and degree at most 2.
struct EulerFactor {
    Place place;
    std::vector<Cyclotomic> coeffs; // coeffs[0] = 1

    unsigned degree_x() const { return static_cast<unsigned>(coeffs.size()) - 1; }
};

// rho = 1: the zeta factor 1 - X.
EulerFactor euler_factor_trivial(const Place& v);

// rho = H^1 of the curve: Good -> 1 - a_v X + q_v X^2, split/nonsplit
// multiplicative -> 1 -+ X, additive -> 1.
EulerFactor euler_factor_curve(const ReductionData& red);

// The Dirichlet-series factor of a (possibly imprimitive) character:
// 1 - chi(pi_v) X when v is prime to the modulus, 1 otherwise. This is the
// definition of the classical L(chi, T) = sum over monic f of chi(f) T^deg f.
EulerFactor euler_factor_character(const DirichletCharacter& chi, const Place& v);

// Twist of the curve factor by a primitive character (ImprimitiveCharacter
// otherwise): chi unramified at v scales coefficient i by chi(pi_v)^i; chi
// ramified at a good place gives the factor 1; ramified at a bad place is
// refused (UnsupportedRamificationOverlap).
EulerFactor twisted_euler_factor(const ReductionData& red, const DirichletCharacter& chi);

// The same with rho trivial (Artin L-series of a primitive character):
// 1 - chi(pi_v) X unramified, 1 ramified.
EulerFactor twisted_euler_factor(const DirichletCharacter& chi, const Place& v);

} // namespace ffl

#endif
