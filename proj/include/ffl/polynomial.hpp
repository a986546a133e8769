#ifndef FFL_POLYNOMIAL_HPP
#define FFL_POLYNOMIAL_HPP

#include <stdexcept>
#include <vector>

#include "ffl/errors.hpp"

namespace ffl {

// Dense univariate polynomial over an exact field K (Rational or Cyclotomic).
// Coefficients are stored lowest degree first with no trailing zeros; the zero
// polynomial has an empty coefficient vector and degree -1.
template <typename K>
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<K> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(const K& v) { return Polynomial(std::vector<K>{v}); }
    static Polynomial monomial(const K& v, unsigned deg) {
        std::vector<K> c(deg + 1, K(0));
        c[deg] = v;
        return Polynomial(std::move(c));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(size_t i) const { return i < c_.size() ? c_[i] : K(0); }
    const K& leading() const {
        if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    Polynomial operator-() const {
        std::vector<K> out = c_;
        for (auto& x : out) x = -x;
        return Polynomial(std::move(out));
    }

    Polynomial operator+(const Polynomial& rhs) const {
        std::vector<K> out(std::max(c_.size(), rhs.c_.size()), K(0));
        for (size_t i = 0; i < out.size(); ++i) {
            if (i < c_.size()) out[i] += c_[i];
            if (i < rhs.c_.size()) out[i] += rhs.c_[i];
        }
        return Polynomial(std::move(out));
    }

    Polynomial operator-(const Polynomial& rhs) const { return *this + (-rhs); }

    Polynomial operator*(const Polynomial& rhs) const {
        if (is_zero() || rhs.is_zero()) return Polynomial();
        std::vector<K> out(c_.size() + rhs.c_.size() - 1, K(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (is_zero_coeff(c_[i])) continue;
            for (size_t j = 0; j < rhs.c_.size(); ++j) out[i + j] += c_[i] * rhs.c_[j];
        }
        return Polynomial(std::move(out));
    }

    Polynomial operator*(const K& s) const {
        std::vector<K> out = c_;
        for (auto& x : out) x = x * s;
        return Polynomial(std::move(out));
    }

    // Euclidean division; divisor must be nonzero.
    std::pair<Polynomial, Polynomial> divrem(const Polynomial& d) const {
        if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
        std::vector<K> rem = c_;
        std::vector<K> quot;
        if (rem.size() >= d.c_.size()) quot.assign(rem.size() - d.c_.size() + 1, K(0));
        while (rem.size() >= d.c_.size()) {
            if (is_zero_coeff(rem.back())) {
                rem.pop_back();
                continue;
            }
            K f = rem.back() / d.leading();
            size_t shift = rem.size() - d.c_.size();
            quot[shift] = f;
            for (size_t j = 0; j + 1 < d.c_.size(); ++j) rem[shift + j] -= f * d.c_[j];
            rem.pop_back();
        }
        return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
    }

    K eval(const K& x) const {
        K acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<K> out(c_.size() - 1, K(0));
        for (size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * K(static_cast<long>(i));
        return Polynomial(std::move(out));
    }

    // Multiplicity of x0 as a root (0 if not a root).
    unsigned root_multiplicity(const K& x0) const {
        if (is_zero()) throw std::logic_error("root multiplicity of zero polynomial");
        Polynomial p = *this;
        Polynomial lin({-x0, K(1)});
        unsigned m = 0;
        while (true) {
            auto [q, r] = p.divrem(lin);
            if (!r.is_zero()) return m;
            ++m;
            p = q;
            if (p.is_zero()) return m;
        }
    }

    bool operator==(const Polynomial& rhs) const { return c_ == rhs.c_; }
    bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

  private:
    static bool is_zero_coeff(const K& x) {
        using ffl::is_zero;
        return is_zero(x);
    }
    void trim() {
        while (!c_.empty() && is_zero_coeff(c_.back())) c_.pop_back();
    }

    std::vector<K> c_;
};

} // namespace ffl

#endif
