#include "ffl/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ffl {

unsigned gcd_u(unsigned a, unsigned b) {
    while (b) {
        unsigned t = a % b;
        a = b;
        b = t;
    }
    return a;
}

unsigned lcm_u(unsigned a, unsigned b) { return a / gcd_u(a, b) * b; }

unsigned euler_phi(unsigned n) {
    unsigned result = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

std::vector<unsigned> coprime_exponents(unsigned n) {
    std::vector<unsigned> out;
    if (n == 1) return {1};
    for (unsigned a = 1; a < n; ++a)
        if (gcd_u(a, n) == 1) out.push_back(a);
    return out;
}

namespace {

// Phi_n over Z plus the reduction rows zeta_n^m mod Phi_n for m in [0, 2n).
// Every internal arithmetic path produces exponents below 2n before reduction.
struct CycloContext {
    unsigned n = 1;
    unsigned phi = 1;
    std::vector<mpz_class> phi_poly;            // monic, length phi+1
    std::vector<std::vector<mpz_class>> power;  // power[m], length phi each
};

// Exact division of integer polynomials, used to peel Phi_d out of x^n - 1.
std::vector<mpz_class> exact_div(const std::vector<mpz_class>& num, const std::vector<mpz_class>& den) {
    const size_t dd = den.size() - 1;
    if (den.back() != 1) throw std::logic_error("cyclotomic divisor not monic");
    if (num.size() < den.size()) throw std::logic_error("cyclotomic division underflow");
    std::vector<mpz_class> rem = num;
    std::vector<mpz_class> quot(num.size() - dd, 0);
    for (size_t shift = quot.size(); shift-- > 0;) {
        mpz_class c = rem[shift + dd];
        if (c == 0) continue;
        quot[shift] = c;
        for (size_t j = 0; j <= dd; ++j) rem[shift + j] -= c * den[j];
    }
    for (const auto& r : rem)
        if (r != 0) throw std::logic_error("cyclotomic division not exact");
    return quot;
}

std::vector<mpz_class> cyclotomic_poly(unsigned n, std::map<unsigned, std::vector<mpz_class>>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::vector<mpz_class> poly(n + 1, 0);
    poly[0] = -1;
    poly[n] = 1; // x^n - 1
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        poly = exact_div(poly, cyclotomic_poly(d, memo));
    }
    memo[n] = poly;
    return poly;
}

const CycloContext& context(unsigned n) {
    static std::mutex mtx;
    static std::map<unsigned, CycloContext> cache;
    static std::map<unsigned, std::vector<mpz_class>> phi_memo;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    CycloContext ctx;
    ctx.n = n;
    ctx.phi_poly = cyclotomic_poly(n, phi_memo);
    ctx.phi = static_cast<unsigned>(ctx.phi_poly.size() - 1);
    ctx.power.resize(2 * n);
    for (unsigned m = 0; m < 2 * n; ++m) {
        std::vector<mpz_class> row(ctx.phi, 0);
        if (m < ctx.phi) {
            row[m] = 1;
        } else {
            // x * power[m-1], then replace x^phi by -(lower part of Phi_n)
            const auto& prev = ctx.power[m - 1];
            mpz_class top = prev[ctx.phi - 1];
            for (unsigned i = ctx.phi - 1; i >= 1; --i) row[i] = prev[i - 1];
            row[0] = 0;
            if (top != 0)
                for (unsigned i = 0; i < ctx.phi; ++i) row[i] -= top * ctx.phi_poly[i];
        }
        ctx.power[m] = std::move(row);
    }
    auto res = cache.emplace(n, std::move(ctx));
    return res.first->second;
}

// Reduce sum_{m} raw[m] * zeta_n^m (exponents already < 2n) to the power basis.
std::vector<Rational> reduce_rows(unsigned n, const std::vector<Rational>& raw) {
    const CycloContext& ctx = context(n);
    std::vector<Rational> out(ctx.phi, Rational(0));
    for (size_t m = 0; m < raw.size(); ++m) {
        if (sgn(raw[m]) == 0) continue;
        if (m < ctx.phi) {
            out[m] += raw[m];
        } else {
            const auto& row = ctx.power[m];
            for (unsigned i = 0; i < ctx.phi; ++i)
                if (row[i] != 0) out[i] += raw[m] * Rational(row[i]);
        }
    }
    return out;
}

} // namespace

GaloisAutomorphism::GaloisAutomorphism(unsigned conductor, unsigned exponent) : n_(conductor), a_(exponent) {
    if (n_ == 0) throw Error(ErrorKind::InvalidAutomorphism, "conductor must be positive");
    if (n_ == 1) {
        a_ = 1;
        return;
    }
    a_ %= n_;
    if (a_ == 0 || gcd_u(a_, n_) != 1)
        throw Error(ErrorKind::InvalidAutomorphism,
                    "exponent " + std::to_string(exponent) + " not invertible mod " + std::to_string(n_));
}

GaloisAutomorphism GaloisAutomorphism::operator*(const GaloisAutomorphism& rhs) const {
    if (n_ != rhs.n_) throw Error(ErrorKind::InvalidAutomorphism, "composing automorphisms of different conductors");
    return GaloisAutomorphism(n_, static_cast<unsigned>((static_cast<uint64_t>(a_) * rhs.a_) % n_));
}

Cyclotomic Cyclotomic::root_of_unity(unsigned n, long k) {
    if (n == 0) throw std::invalid_argument("root_of_unity: conductor must be positive");
    long kk = k % static_cast<long>(n);
    if (kk < 0) kk += n;
    std::vector<Rational> raw(static_cast<size_t>(kk) + 1, Rational(0));
    raw[static_cast<size_t>(kk)] = 1;
    return Cyclotomic(n, reduce_rows(n, raw));
}

Cyclotomic Cyclotomic::from_power_coeffs(unsigned n, const std::vector<Rational>& coeffs) {
    if (n == 0) throw std::invalid_argument("from_power_coeffs: conductor must be positive");
    std::vector<Rational> raw(n, Rational(0));
    for (size_t i = 0; i < coeffs.size(); ++i) raw[i % n] += coeffs[i];
    return Cyclotomic(n, reduce_rows(n, raw));
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : c_)
        if (sgn(c) != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw std::logic_error("cyclotomic value is not rational");
    return c_[0];
}

Cyclotomic Cyclotomic::promoted(unsigned m) const {
    if (m == n_) return *this;
    if (m % n_ != 0) throw std::invalid_argument("promotion target conductor must be a multiple");
    unsigned step = m / n_;
    std::vector<Rational> raw;
    raw.resize(static_cast<size_t>(c_.size() - 1) * step + 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) raw[i * step] = c_[i];
    return Cyclotomic(m, reduce_rows(m, raw));
}

Cyclotomic Cyclotomic::operator-() const {
    std::vector<Rational> out = c_;
    for (auto& c : out) c = -c;
    return Cyclotomic(n_, std::move(out));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& rhs) const {
    unsigned n = lcm_u(n_, rhs.n_);
    Cyclotomic a = promoted(n), b = rhs.promoted(n);
    std::vector<Rational> out = a.c_;
    for (size_t i = 0; i < out.size(); ++i) out[i] += b.c_[i];
    return Cyclotomic(n, std::move(out));
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& rhs) const { return *this + (-rhs); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& rhs) const {
    unsigned n = lcm_u(n_, rhs.n_);
    Cyclotomic a = promoted(n), b = rhs.promoted(n);
    std::vector<Rational> raw(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (sgn(b.c_[j]) == 0) continue;
            raw[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return Cyclotomic(n, reduce_rows(n, raw));
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero cyclotomic number");
    if (is_rational()) return Cyclotomic(ffl::inverse(c_[0])).promoted(n_);
    // Extended Euclid in Q[x] against Phi_n: u*self + v*Phi = 1.
    const CycloContext& ctx = context(n_);
    std::vector<Rational> r0(ctx.phi_poly.size());
    for (size_t i = 0; i < ctx.phi_poly.size(); ++i) r0[i] = Rational(ctx.phi_poly[i]);
    std::vector<Rational> r1 = c_;
    while (!r1.empty() && sgn(r1.back()) == 0) r1.pop_back();
    std::vector<Rational> u0{Rational(0)}, u1{Rational(1)};
    auto trim = [](std::vector<Rational>& v) {
        while (!v.empty() && sgn(v.back()) == 0) v.pop_back();
    };
    while (r1.size() > 1) {
        // divide r0 by r1
        std::vector<Rational> q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, Rational(0));
        std::vector<Rational> rem = r0;
        while (rem.size() >= r1.size()) {
            if (sgn(rem.back()) == 0) {
                rem.pop_back();
                continue;
            }
            Rational f = rem.back() / r1.back();
            size_t shift = rem.size() - r1.size();
            q[shift] = f;
            for (size_t j = 0; j < r1.size(); ++j) rem[shift + j] -= f * r1[j];
            rem.pop_back();
        }
        trim(rem);
        // u_new = u0 - q*u1
        std::vector<Rational> unew = u0;
        if (!q.empty() && !u1.empty()) unew.resize(std::max(unew.size(), q.size() + u1.size() - 1), Rational(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (sgn(q[i]) == 0) continue;
            for (size_t j = 0; j < u1.size(); ++j) unew[i + j] -= q[i] * u1[j];
        }
        trim(unew);
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = std::move(unew);
    }
    if (r1.empty()) throw std::logic_error("cyclotomic inverse: gcd with Phi_n not constant");
    Rational scale = ffl::inverse(r1[0]);
    std::vector<Rational> raw = u1;
    for (auto& c : raw) c *= scale;
    return Cyclotomic(n_, reduce_rows(n_, raw));
}

Cyclotomic Cyclotomic::operator/(const Cyclotomic& rhs) const { return *this * rhs.inverse(); }

Cyclotomic Cyclotomic::apply(const GaloisAutomorphism& sigma) const {
    if (sigma.conductor() % n_ != 0)
        throw Error(ErrorKind::InvalidAutomorphism, "automorphism conductor does not cover the element");
    if (n_ == 1) return *this;
    unsigned a = sigma.exponent() % n_;
    std::vector<Rational> raw(n_, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        raw[(i * a) % n_] += c_[i];
    }
    return Cyclotomic(n_, reduce_rows(n_, raw));
}

bool Cyclotomic::operator==(const Cyclotomic& rhs) const {
    if (n_ == rhs.n_) return c_ == rhs.c_;
    unsigned n = lcm_u(n_, rhs.n_);
    return promoted(n).c_ == rhs.promoted(n).c_;
}

std::string Cyclotomic::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        if (!first) os << (sgn(c_[i]) > 0 ? " + " : " - ");
        Rational a = first ? c_[i] : Rational(abs(c_[i]));
        if (i == 0)
            os << a.get_str();
        else {
            if (a != 1) os << a.get_str() << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) return "0";
    return os.str();
}

} // namespace ffl
