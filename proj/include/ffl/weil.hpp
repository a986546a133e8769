#ifndef FFL_WEIL_HPP
#define FFL_WEIL_HPP

#include <complex>
#include <vector>

#include "ffl/cyclotomic.hpp"
#include "ffl/polynomial.hpp"

namespace ffl {

std::complex<double> to_complex(const Cyclotomic& x);

// All complex roots of p (degree >= 1), Durand-Kerner iteration on the
// complex embedding zeta_n -> exp(2 pi i / n).
std::vector<std::complex<double>> complex_roots(const Polynomial<Cyclotomic>& p);

// Inverse-root (Frobenius eigenvalue) moduli of an L-polynomial written as
// prod (1 - alpha_i T): the alpha_i are the roots of the reversed polynomial.
std::vector<double> inverse_root_moduli(const Polynomial<Cyclotomic>& p);

// Every inverse root has modulus 1, sqrt(q) or q within the relative
// tolerance.
bool weil_moduli_ok(const Polynomial<Cyclotomic>& p, uint64_t q, double tol = 1e-6);

} // namespace ffl

#endif
