#include "ffl/weil.hpp"

#include <cmath>

namespace ffl {

std::complex<double> to_complex(const Cyclotomic& x) {
    const double two_pi = 6.283185307179586476925286766559;
    std::complex<double> acc(0.0, 0.0);
    unsigned n = x.conductor();
    for (size_t i = 0; i < x.coeffs().size(); ++i) {
        double c = x.coeffs()[i].get_d();
        if (c == 0.0) continue;
        double ang = two_pi * static_cast<double>(i) / static_cast<double>(n);
        acc += c * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc;
}

std::vector<std::complex<double>> complex_roots(const Polynomial<Cyclotomic>& p) {
    const long deg = p.degree();
    if (deg < 1) return {};
    std::vector<std::complex<double>> c(deg + 1);
    for (long i = 0; i <= deg; ++i) c[i] = to_complex(p.coeff(static_cast<size_t>(i)));
    for (long i = 0; i <= deg; ++i) c[i] /= c[deg];

    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc(0.0, 0.0);
        for (long i = deg; i >= 0; --i) acc = acc * z + c[i];
        return acc;
    };

    // root magnitude scale from the coefficient bound
    double scale = 0.0;
    for (long i = 0; i < deg; ++i) scale = std::max(scale, std::pow(std::abs(c[i]), 1.0 / (deg - i)));
    scale = std::max(scale, 0.5);

    std::vector<std::complex<double>> z(deg);
    const std::complex<double> seed(0.4, 0.9);
    std::complex<double> w(1.0, 0.0);
    for (long i = 0; i < deg; ++i) {
        w *= seed;
        z[i] = scale * w * (1.0 + 1e-3 * static_cast<double>(i));
    }
    for (unsigned iter = 0; iter < 2000; ++iter) {
        double moved = 0.0;
        for (long i = 0; i < deg; ++i) {
            std::complex<double> denom(1.0, 0.0);
            for (long j = 0; j < deg; ++j)
                if (j != i) denom *= z[i] - z[j];
            std::complex<double> delta = eval(z[i]) / denom;
            z[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-13 * std::max(1.0, scale)) break;
    }
    return z;
}

std::vector<double> inverse_root_moduli(const Polynomial<Cyclotomic>& p) {
    // reversed polynomial: roots of sum c_{d-i} T^i are the inverse roots
    std::vector<Cyclotomic> rev(p.coeffs().rbegin(), p.coeffs().rend());
    Polynomial<Cyclotomic> reversed{std::move(rev)};
    std::vector<double> out;
    for (const auto& z : complex_roots(reversed)) out.push_back(std::abs(z));
    return out;
}

bool weil_moduli_ok(const Polynomial<Cyclotomic>& p, uint64_t q, double tol) {
    const double targets[3] = {1.0, std::sqrt(static_cast<double>(q)), static_cast<double>(q)};
    for (double m : inverse_root_moduli(p)) {
        bool ok = false;
        for (double t : targets)
            if (std::abs(m - t) <= tol * t) ok = true;
        if (!ok) return false;
    }
    return true;
}

} // namespace ffl
