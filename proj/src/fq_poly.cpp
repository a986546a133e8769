#include "ffl/fq_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ffl {

namespace {

void require_same_field(const FqPoly& a, const FqPoly& b) {
    if (!a.field() || !b.field() || !a.field()->same_field(*b.field()))
        throw std::invalid_argument("polynomials over different fields");
}

} // namespace

FqPoly::FqPoly(FqRef field, std::vector<uint64_t> coeffs) : F_(std::move(field)), c_(std::move(coeffs)) {
    if (!F_) throw std::invalid_argument("null field");
    for (auto& c : c_)
        if (c >= F_->order()) throw std::invalid_argument("coefficient code out of range");
    trim();
}

void FqPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FqPoly FqPoly::from_int_coeffs(FqRef field, const std::vector<long>& coeffs) {
    std::vector<uint64_t> codes(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) codes[i] = field->from_int(coeffs[i]);
    return FqPoly(std::move(field), std::move(codes));
}

FqPoly FqPoly::monic_from_code(FqRef field, unsigned d, uint64_t code) {
    std::vector<uint64_t> c(d + 1, 0);
    uint64_t q = field->order();
    for (unsigned i = 0; i < d; ++i) {
        c[i] = code % q;
        code /= q;
    }
    c[d] = 1;
    return FqPoly(std::move(field), std::move(c));
}

uint64_t FqPoly::monic_code() const {
    if (!is_monic()) throw std::logic_error("monic_code of non-monic polynomial");
    uint64_t q = F_->order(), code = 0;
    for (size_t i = c_.size() - 1; i-- > 0;) code = code * q + c_[i];
    return code;
}

uint64_t FqPoly::leading() const {
    if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return c_.back();
}

FqPoly FqPoly::operator+(const FqPoly& rhs) const {
    require_same_field(*this, rhs);
    std::vector<uint64_t> out(std::max(c_.size(), rhs.c_.size()), 0);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = F_->add(i < c_.size() ? c_[i] : 0, i < rhs.c_.size() ? rhs.c_[i] : 0);
    return FqPoly(F_, std::move(out));
}

FqPoly FqPoly::operator-() const {
    std::vector<uint64_t> out = c_;
    for (auto& c : out) c = F_->neg(c);
    return FqPoly(F_, std::move(out));
}

FqPoly FqPoly::operator-(const FqPoly& rhs) const { return *this + (-rhs); }

FqPoly FqPoly::operator*(const FqPoly& rhs) const {
    require_same_field(*this, rhs);
    if (is_zero() || rhs.is_zero()) return zero(F_);
    std::vector<uint64_t> out(c_.size() + rhs.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < rhs.c_.size(); ++j) {
            if (rhs.c_[j] == 0) continue;
            out[i + j] = F_->add(out[i + j], F_->mul(c_[i], rhs.c_[j]));
        }
    }
    return FqPoly(F_, std::move(out));
}

FqPoly FqPoly::scaled(uint64_t code) const {
    std::vector<uint64_t> out = c_;
    for (auto& c : out) c = F_->mul(c, code);
    return FqPoly(F_, std::move(out));
}

std::pair<FqPoly, FqPoly> FqPoly::divrem(const FqPoly& rhs) const {
    require_same_field(*this, rhs);
    if (rhs.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    std::vector<uint64_t> rem = c_;
    std::vector<uint64_t> quot;
    if (rem.size() >= rhs.c_.size()) quot.assign(rem.size() - rhs.c_.size() + 1, 0);
    uint64_t lead_inv = F_->inv(rhs.leading());
    while (rem.size() >= rhs.c_.size()) {
        if (rem.back() == 0) {
            rem.pop_back();
            continue;
        }
        uint64_t f = F_->mul(rem.back(), lead_inv);
        size_t shift = rem.size() - rhs.c_.size();
        quot[shift] = f;
        for (size_t j = 0; j + 1 < rhs.c_.size(); ++j)
            rem[shift + j] = F_->sub(rem[shift + j], F_->mul(f, rhs.c_[j]));
        rem.pop_back();
    }
    return {FqPoly(F_, std::move(quot)), FqPoly(F_, std::move(rem))};
}

bool FqPoly::divides(const FqPoly& multiple) const { return multiple.divrem(*this).second.is_zero(); }

FqPoly FqPoly::make_monic() const {
    if (is_zero()) return *this;
    return scaled(F_->inv(leading()));
}

FqPoly FqPoly::pow_u(unsigned e) const {
    FqPoly acc = one(F_);
    FqPoly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

FqPoly FqPoly::derivative() const {
    if (c_.size() <= 1) return zero(F_);
    std::vector<uint64_t> out(c_.size() - 1, 0);
    for (size_t i = 1; i < c_.size(); ++i) {
        uint64_t scalar = F_->from_int(static_cast<long>(i % F_->characteristic()));
        out[i - 1] = F_->mul(c_[i], scalar);
    }
    return FqPoly(F_, std::move(out));
}

uint64_t FqPoly::eval(uint64_t x) const {
    uint64_t acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = F_->add(F_->mul(acc, x), c_[i]);
    return acc;
}

uint64_t FqPoly::eval_embedded(const SubfieldEmbedding& emb, uint64_t x_big) const {
    const Fq& big = *emb.big();
    uint64_t acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = big.add(big.mul(acc, x_big), emb.map(c_[i]));
    return acc;
}

unsigned FqPoly::valuation(const FqPoly& pi) const {
    if (is_zero()) throw std::logic_error("valuation of the zero polynomial");
    unsigned v = 0;
    FqPoly cur = *this;
    while (true) {
        auto [q, r] = cur.divrem(pi);
        if (!r.is_zero()) return v;
        ++v;
        cur = std::move(q);
    }
}

bool FqPoly::operator==(const FqPoly& rhs) const {
    if (!F_ || !rhs.F_) return c_ == rhs.c_ && !F_ == !rhs.F_;
    return F_->same_field(*rhs.F_) && c_ == rhs.c_;
}

int FqPoly::compare(const FqPoly& a, const FqPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (size_t i = a.c_.size(); i-- > 0;) {
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i] ? -1 : 1;
    }
    return 0;
}

std::string FqPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        bool unit = c_[i] == 1;
        if (!unit || i == 0) os << F_->element_to_string(c_[i]);
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

FqPoly gcd(const FqPoly& a, const FqPoly& b) {
    FqPoly x = a, y = b;
    while (!y.is_zero()) {
        FqPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.make_monic();
}

bool is_irreducible(const FqPoly& f) {
    const long d = f.degree();
    if (d <= 0) return false;
    if (d == 1) return true;
    const FqRef& F = f.field();
    const uint64_t q = F->order();
    FqPoly x = FqPoly::t(F) % f;
    auto powmod = [&](FqPoly base, uint64_t e) {
        FqPoly acc = FqPoly::one(F) % f;
        while (e) {
            if (e & 1) acc = (acc * base) % f;
            base = (base * base) % f;
            e >>= 1;
        }
        return acc;
    };
    auto frob_iterate = [&](unsigned times) {
        FqPoly cur = x;
        for (unsigned i = 0; i < times; ++i) cur = powmod(cur, q);
        return cur;
    };
    if (frob_iterate(static_cast<unsigned>(d)) != x) return false;
    for (uint64_t l : prime_factors_u64(static_cast<uint64_t>(d))) {
        FqPoly diff = frob_iterate(static_cast<unsigned>(d / l)) - x;
        if (diff.is_zero()) return false;
        if (gcd(diff, f).degree() != 0) return false;
    }
    return true;
}

std::vector<FqPoly> monic_irreducibles(const FqRef& field, unsigned d) {
    if (d == 0) throw std::invalid_argument("degree must be positive");
    const uint64_t q = field->order();
    if (d == 1) {
        std::vector<FqPoly> out;
        out.reserve(q);
        for (uint64_t c = 0; c < q; ++c) out.push_back(FqPoly::monic_from_code(field, 1, c));
        return out;
    }
    uint64_t total = 1;
    for (unsigned i = 0; i < d; ++i) {
        if (total > (1ull << 62) / q) throw std::invalid_argument("degree too large to enumerate");
        total *= q;
    }
    std::vector<bool> reducible(total, false);
    const Fq& F = *field;
    const bool prime_field = F.degree() == 1;
    const uint64_t p = F.characteristic();
    for (unsigned e = 1; 2 * e <= d; ++e) {
        std::vector<FqPoly> small = monic_irreducibles(field, e);
        const unsigned cd = d - e;
        uint64_t cofactors = 1;
        for (unsigned i = 0; i < cd; ++i) cofactors *= q;
        std::vector<uint64_t> g(cd + 1, 0), pr(d + 1, 0);
        g[cd] = 1;
        for (const FqPoly& pi : small) {
            const auto& pc = pi.coeffs();
            std::fill(g.begin(), g.end() - 1, 0);
            for (uint64_t gcode = 0; gcode < cofactors; ++gcode) {
                std::fill(pr.begin(), pr.end(), 0);
                if (prime_field) {
                    for (unsigned i = 0; i <= e; ++i) {
                        if (pc[i] == 0) continue;
                        for (unsigned j = 0; j <= cd; ++j) pr[i + j] = (pr[i + j] + pc[i] * g[j]) % p;
                    }
                } else {
                    for (unsigned i = 0; i <= e; ++i) {
                        if (pc[i] == 0) continue;
                        for (unsigned j = 0; j <= cd; ++j)
                            if (g[j]) pr[i + j] = F.add(pr[i + j], F.mul(pc[i], g[j]));
                    }
                }
                uint64_t code = 0;
                for (unsigned i = d; i-- > 0;) code = code * q + pr[i];
                reducible[code] = true;
                // next cofactor: increment the base-q digit string
                for (unsigned i = 0; i < cd; ++i) {
                    if (++g[i] < q) break;
                    g[i] = 0;
                }
            }
        }
    }
    std::vector<FqPoly> out;
    out.reserve(count_monic_irreducibles(q, d));
    for (uint64_t code = 0; code < total; ++code)
        if (!reducible[code]) out.push_back(FqPoly::monic_from_code(field, d, code));
    return out;
}

int moebius(unsigned n) {
    int result = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

uint64_t count_monic_irreducibles(uint64_t q, unsigned d) {
    // (1/d) * sum_{e|d} mu(e) q^{d/e}
    long long sum = 0;
    for (unsigned e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        int mu = moebius(e);
        if (mu == 0) continue;
        long long qe = 1;
        for (unsigned i = 0; i < d / e; ++i) qe *= static_cast<long long>(q);
        sum += mu * qe;
    }
    return static_cast<uint64_t>(sum / d);
}

} // namespace ffl
