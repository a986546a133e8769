#ifndef FFL_SERIES_HPP
#define FFL_SERIES_HPP

#include <algorithm>
#include <vector>

#include "ffl/cyclotomic.hpp"
#include "ffl/polynomial.hpp"

namespace ffl {

// Power series in T truncated at order N: coefficients of T^0..T^N are exact,
// anything beyond is never read. Binary operations truncate to the smaller
// order of the two operands.
template <typename K>
class TruncatedSeries {
  public:
    explicit TruncatedSeries(unsigned order) : c_(order + 1, K(0)) {}
    TruncatedSeries(unsigned order, std::vector<K> coeffs) : c_(std::move(coeffs)) {
        c_.resize(order + 1, K(0));
    }

    static TruncatedSeries from_poly(const Polynomial<K>& p, unsigned order) {
        TruncatedSeries s(order);
        for (size_t i = 0; i < p.coeffs().size() && i <= order; ++i) s.c_[i] = p.coeffs()[i];
        return s;
    }
    static TruncatedSeries one(unsigned order) {
        TruncatedSeries s(order);
        s.c_[0] = K(1);
        return s;
    }

    unsigned order() const { return static_cast<unsigned>(c_.size()) - 1; }
    const std::vector<K>& coeffs() const { return c_; }
    const K& coeff(unsigned i) const { return c_.at(i); }
    void set_coeff(unsigned i, const K& v) { c_.at(i) = v; }

    TruncatedSeries truncated(unsigned order) const {
        TruncatedSeries out(order);
        for (unsigned i = 0; i <= order && i < c_.size(); ++i) out.c_[i] = c_[i];
        return out;
    }

    TruncatedSeries operator+(const TruncatedSeries& rhs) const {
        unsigned n = std::min(order(), rhs.order());
        TruncatedSeries out(n);
        for (unsigned i = 0; i <= n; ++i) out.c_[i] = c_[i] + rhs.c_[i];
        return out;
    }

    TruncatedSeries operator-(const TruncatedSeries& rhs) const {
        unsigned n = std::min(order(), rhs.order());
        TruncatedSeries out(n);
        for (unsigned i = 0; i <= n; ++i) out.c_[i] = c_[i] - rhs.c_[i];
        return out;
    }

    TruncatedSeries operator*(const TruncatedSeries& rhs) const {
        unsigned n = std::min(order(), rhs.order());
        TruncatedSeries out(n);
        for (unsigned i = 0; i <= n; ++i) {
            if (coeff_zero(c_[i])) continue;
            for (unsigned j = 0; i + j <= n; ++j) {
                if (coeff_zero(rhs.c_[j])) continue;
                out.c_[i + j] += c_[i] * rhs.c_[j];
            }
        }
        return out;
    }

    // Divides by a series with invertible constant term; result order is the
    // smaller of the two operand orders.
    TruncatedSeries operator/(const TruncatedSeries& rhs) const {
        unsigned n = std::min(order(), rhs.order());
        if (coeff_zero(rhs.c_[0]))
            throw Error(ErrorKind::NotInvertibleSeries, "series division needs nonzero constant term");
        TruncatedSeries out(n);
        for (unsigned i = 0; i <= n; ++i) {
            K acc = c_[i];
            for (unsigned j = 1; j <= i; ++j) {
                if (coeff_zero(rhs.c_[j]) || coeff_zero(out.c_[i - j])) continue;
                acc -= rhs.c_[j] * out.c_[i - j];
            }
            out.c_[i] = acc / rhs.c_[0];
        }
        return out;
    }

    TruncatedSeries inverse() const { return one(order()) / *this; }

    bool operator==(const TruncatedSeries& rhs) const { return c_ == rhs.c_; }
    bool operator!=(const TruncatedSeries& rhs) const { return !(*this == rhs); }

  private:
    static bool coeff_zero(const K& x) {
        using ffl::is_zero;
        return is_zero(x);
    }

    std::vector<K> c_;
};

// P = R / Q with P*Q = R through the truncation order of Q.
template <typename K>
TruncatedSeries<K> series_div(const Polynomial<K>& numerator, const TruncatedSeries<K>& q) {
    return TruncatedSeries<K>::from_poly(numerator, q.order()) / q;
}

// T*P'(T)/P(T); requires P(0) = 1. When P = 1/det(1 - T*M), the coefficient of
// T^n is the n-th power sum of the eigenvalues of M.
template <typename K>
TruncatedSeries<K> series_log_derivative(const TruncatedSeries<K>& p) {
    if (!(p.coeff(0) == K(1)))
        throw Error(ErrorKind::NotNormalized, "log derivative needs constant term 1");
    TruncatedSeries<K> num(p.order());
    for (unsigned i = 1; i <= p.order(); ++i) num.set_coeff(i, p.coeff(i) * K(static_cast<long>(i)));
    return num / p;
}

// Coefficient-wise Galois action; truncation order preserved.
inline TruncatedSeries<Cyclotomic> series_automorphism(const TruncatedSeries<Cyclotomic>& p,
                                                       const GaloisAutomorphism& sigma) {
    TruncatedSeries<Cyclotomic> out(p.order());
    for (unsigned i = 0; i <= p.order(); ++i) out.set_coeff(i, p.coeff(i).apply(sigma));
    return out;
}

inline Polynomial<Cyclotomic> poly_automorphism(const Polynomial<Cyclotomic>& p, const GaloisAutomorphism& sigma) {
    std::vector<Cyclotomic> out = p.coeffs();
    for (auto& c : out) c = c.apply(sigma);
    return Polynomial<Cyclotomic>(std::move(out));
}

} // namespace ffl

#endif
