#include "ffl/finite_field.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ffl {

namespace {

constexpr uint64_t kZechLimit = 1ull << 24;
constexpr unsigned kMaxDegree = 32;

// --- F_p[x] helpers on digit vectors (used for modulus search and generic
// element arithmetic). Vectors are trimmed, lowest degree first. ---

void trim_fp(std::vector<uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

std::vector<uint64_t> mulmod_fp(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b,
                                const std::vector<uint64_t>& mod, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint64_t> out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    // reduce by monic mod
    size_t k = mod.size() - 1;
    for (size_t i = out.size(); i-- > k;) {
        uint64_t c = out[i] % p;
        if (c == 0) continue;
        out[i] = 0;
        for (size_t j = 0; j < k; ++j) out[i - k + j] = (out[i - k + j] + c * (p - mod[j])) % p;
    }
    out.resize(k);
    trim_fp(out);
    return out;
}

std::vector<uint64_t> powmod_fp(std::vector<uint64_t> base, uint64_t e, const std::vector<uint64_t>& mod,
                                uint64_t p) {
    std::vector<uint64_t> result{1};
    while (e) {
        if (e & 1) result = mulmod_fp(result, base, mod, p);
        base = mulmod_fp(base, base, mod, p);
        e >>= 1;
    }
    return result;
}

std::vector<uint64_t> gcd_fp(std::vector<uint64_t> a, std::vector<uint64_t> b, uint64_t p) {
    trim_fp(a);
    trim_fp(b);
    while (!b.empty()) {
        // a mod b
        uint64_t lead_inv = 1;
        {
            // inverse of b.back() mod p by Fermat
            uint64_t l = b.back() % p, e = p - 2, acc = 1;
            while (e) {
                if (e & 1) acc = acc * l % p;
                l = l * l % p;
                e >>= 1;
            }
            lead_inv = acc;
        }
        while (a.size() >= b.size()) {
            if (a.back() == 0) {
                a.pop_back();
                continue;
            }
            uint64_t f = a.back() * lead_inv % p;
            size_t shift = a.size() - b.size();
            for (size_t j = 0; j + 1 < b.size(); ++j) a[shift + j] = (a[shift + j] + f * (p - b[j])) % p;
            a.pop_back();
        }
        trim_fp(a);
        std::swap(a, b);
    }
    return a;
}

// Rabin test over F_p: f (monic, degree k) is irreducible iff x^{p^k} = x
// mod f and gcd(x^{p^{k/l}} - x, f) = 1 for every prime l | k.
bool irreducible_fp(const std::vector<uint64_t>& f, uint64_t p) {
    const size_t k = f.size() - 1;
    if (k == 0) return false;
    std::vector<uint64_t> x = mulmod_fp({1}, {0, 1}, f, p); // x reduced mod f
    // x^{p^j} mod f computed by iterating the p-power map
    auto frob_iterate = [&](unsigned times) {
        std::vector<uint64_t> cur = x;
        for (unsigned i = 0; i < times; ++i) cur = powmod_fp(cur, p, f, p);
        return cur;
    };
    if (frob_iterate(static_cast<unsigned>(k)) != x) return false;
    for (uint64_t l : prime_factors_u64(k)) {
        std::vector<uint64_t> xe = frob_iterate(static_cast<unsigned>(k / l));
        // xe - x
        std::vector<uint64_t> diff = xe;
        diff.resize(std::max(diff.size(), x.size()), 0);
        for (size_t i = 0; i < x.size(); ++i) diff[i] = (diff[i] + p - x[i] % p) % p;
        trim_fp(diff);
        if (diff.empty()) return false; // x^{p^{k/l}} = x: proper subfield splitting
        std::vector<uint64_t> g = gcd_fp(diff, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<uint64_t> prime_factors_u64(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

uint64_t Fq::zech_limit() { return kZechLimit; }

Fq::Fq(uint64_t p, unsigned k, std::vector<uint64_t> modulus)
    : p_(p), k_(k), mod_(std::move(modulus)) {
    pow_p_.resize(k_ + 1);
    pow_p_[0] = 1;
    for (unsigned i = 1; i <= k_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;
    q_ = pow_p_[k_];
}

FqRef Fq::create(uint64_t p, unsigned k) {
    if (!is_prime_u64(p)) throw Error(ErrorKind::InvalidField, std::to_string(p) + " is not prime");
    if (k == 0 || k > kMaxDegree) throw Error(ErrorKind::InvalidField, "extension degree out of range");
    if (p >= (1ull << 30)) throw Error(ErrorKind::InvalidField, "characteristic too large");
    long double size = 1;
    for (unsigned i = 0; i < k; ++i) size *= static_cast<long double>(p);
    if (size > 4.6e18L) throw Error(ErrorKind::InvalidField, "field order too large");

    static std::mutex mtx;
    static std::map<std::pair<uint64_t, unsigned>, std::weak_ptr<const Fq>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(p, k);
    if (auto it = cache.find(key); it != cache.end())
        if (auto held = it->second.lock()) return held;

    // lexicographically smallest monic irreducible: scan non-leading
    // coefficient codes ascending (numeric code order equals comparing
    // coefficients from degree k-1 down to the constant term)
    uint64_t qk = 1;
    for (unsigned i = 0; i < k; ++i) qk *= p;
    std::vector<uint64_t> f(k + 1, 0);
    f[k] = 1;
    bool found = false;
    for (uint64_t code = 0; code < qk; ++code) {
        uint64_t c = code;
        for (unsigned i = 0; i < k; ++i) {
            f[i] = c % p;
            c /= p;
        }
        if (irreducible_fp(f, p)) {
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("no irreducible modulus found");
    auto field = std::shared_ptr<const Fq>(new Fq(p, k, f));
    cache[key] = field;
    return field;
}

FqRef Fq::create_with_modulus(uint64_t p, unsigned k, std::vector<uint64_t> modulus) {
    if (!is_prime_u64(p)) throw Error(ErrorKind::InvalidField, std::to_string(p) + " is not prime");
    if (modulus.size() != k + 1 || modulus[k] != 1)
        throw Error(ErrorKind::InvalidField, "modulus must be monic of the stated degree");
    for (auto& c : modulus) c %= p;
    if (!irreducible_fp(modulus, p)) throw Error(ErrorKind::InvalidField, "modulus is reducible");
    return std::shared_ptr<const Fq>(new Fq(p, k, std::move(modulus)));
}

void Fq::unpack(uint64_t code, uint64_t* out) const {
    for (unsigned i = 0; i < k_; ++i) {
        out[i] = code % p_;
        code /= p_;
    }
}

uint64_t Fq::pack_raw(const uint64_t* digits) const {
    uint64_t code = 0;
    for (unsigned i = k_; i-- > 0;) code = code * p_ + digits[i];
    return code;
}

unsigned Fq::digit(uint64_t code, unsigned i) const {
    for (unsigned j = 0; j < i; ++j) code /= p_;
    return static_cast<unsigned>(code % p_);
}

uint64_t Fq::pack(const std::vector<uint64_t>& digits) const {
    uint64_t code = 0;
    for (unsigned i = k_; i-- > 0;) code = code * p_ + (i < digits.size() ? digits[i] % p_ : 0);
    return code;
}

uint64_t Fq::add(uint64_t a, uint64_t b) const {
    if (k_ == 1) {
        uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint64_t da[kMaxDegree], db[kMaxDegree];
    unpack(a, da);
    unpack(b, db);
    for (unsigned i = 0; i < k_; ++i) {
        da[i] += db[i];
        if (da[i] >= p_) da[i] -= p_;
    }
    return pack_raw(da);
}

uint64_t Fq::neg(uint64_t a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    uint64_t da[kMaxDegree];
    unpack(a, da);
    for (unsigned i = 0; i < k_; ++i) da[i] = da[i] == 0 ? 0 : p_ - da[i];
    return pack_raw(da);
}

uint64_t Fq::sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

uint64_t Fq::mul_generic(uint64_t a, uint64_t b) const {
    uint64_t da[kMaxDegree], db[kMaxDegree], prod[2 * kMaxDegree];
    unpack(a, da);
    unpack(b, db);
    for (unsigned i = 0; i < 2 * k_ - 1; ++i) prod[i] = 0;
    for (unsigned i = 0; i < k_; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    for (unsigned i = 2 * k_ - 1; i-- > k_;) {
        uint64_t c = prod[i];
        if (c == 0) continue;
        for (unsigned j = 0; j < k_; ++j) prod[i - k_ + j] = (prod[i - k_ + j] + c * (p_ - mod_[j])) % p_;
    }
    return pack_raw(prod);
}

uint64_t Fq::mul(uint64_t a, uint64_t b) const {
    if (k_ == 1) return a * b % p_;
    if (a == 0 || b == 0) return 0;
    if (zech_built_) {
        uint64_t s = log_[a] + log_[b];
        uint64_t m = q_ - 1;
        if (s >= m) s -= m;
        return exp_[s];
    }
    return mul_generic(a, b);
}

uint64_t Fq::pow(uint64_t a, uint64_t e) const {
    if (zech_built_ && a != 0) {
        uint64_t m = q_ - 1;
        return exp_[static_cast<uint64_t>((static_cast<unsigned __int128>(log_[a]) * (e % m)) % m)];
    }
    uint64_t acc = 1, base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

uint64_t Fq::inv(uint64_t a) const {
    if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero field element");
    if (zech_built_) {
        uint64_t m = q_ - 1;
        return exp_[(m - log_[a]) % m];
    }
    return pow(a, q_ - 2);
}

uint64_t Fq::from_int(long v) const {
    long r = v % static_cast<long>(p_);
    if (r < 0) r += static_cast<long>(p_);
    return static_cast<uint64_t>(r);
}

int Fq::legendre(uint64_t a) const {
    if (p_ == 2) throw std::logic_error("legendre undefined in characteristic 2");
    if (a == 0) return 0;
    if (zech_built_) return (log_[a] & 1) ? -1 : 1;
    uint64_t v = pow(a, (q_ - 1) / 2);
    return v == 1 ? 1 : -1;
}

uint64_t Fq::smallest_nonsquare() const {
    for (uint64_t c = 2; c < q_; ++c)
        if (legendre(c) < 0) return c;
    throw std::logic_error("no nonsquare found");
}

uint64_t Fq::sqrt(uint64_t a) const {
    if (a == 0) return 0;
    if (legendre(a) < 0) throw std::logic_error("sqrt of a nonsquare");
    if (zech_built_) return exp_[log_[a] / 2];
    // Tonelli-Shanks
    uint64_t m = q_ - 1, s = 0;
    while ((m & 1) == 0) {
        m >>= 1;
        ++s;
    }
    if (s == 1) return pow(a, (q_ + 1) / 4);
    uint64_t z = smallest_nonsquare();
    uint64_t c = pow(z, m);
    uint64_t t = pow(a, m);
    uint64_t r = pow(a, (m + 1) / 2);
    uint64_t e = s;
    while (t != 1) {
        uint64_t t2 = t;
        uint64_t i = 0;
        while (t2 != 1) {
            t2 = mul(t2, t2);
            ++i;
        }
        uint64_t b = c;
        for (uint64_t j = 0; j + i + 1 < e; ++j) b = mul(b, b);
        r = mul(r, b);
        c = mul(b, b);
        t = mul(t, c);
        e = i;
    }
    return r;
}

uint64_t Fq::generator() const {
    uint64_t cached = gen_.load(std::memory_order_relaxed);
    if (cached != 0) return cached;
    auto factors = prime_factors_u64(q_ - 1);
    for (uint64_t c = 1; c < q_; ++c) {
        bool ok = true;
        for (uint64_t l : factors) {
            if (pow(c, (q_ - 1) / l) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen_.store(c, std::memory_order_relaxed);
            return c;
        }
    }
    throw std::logic_error("no generator found");
}

void Fq::ensure_log_tables() const {
    if (q_ > kZechLimit) return;
    std::call_once(zech_once_, [this] {
        uint64_t g = generator();
        uint64_t m = q_ - 1;
        exp_.resize(m);
        log_.assign(q_, ZechView::kNone);
        uint64_t cur = 1;
        for (uint64_t i = 0; i < m; ++i) {
            exp_[i] = static_cast<uint32_t>(cur);
            log_[cur] = static_cast<uint32_t>(i);
            cur = k_ == 1 ? cur * g % p_ : mul_generic(cur, g);
        }
        zech_.resize(m);
        for (uint64_t i = 0; i < m; ++i) {
            uint64_t c = exp_[i];
            uint64_t d0 = c % p_;
            uint64_t c1 = d0 + 1 == p_ ? c - d0 : c + 1;
            zech_[i] = c1 == 0 ? ZechView::kNone : log_[c1];
        }
        zech_built_ = true;
    });
}

Fq::ZechView Fq::zech_view() const {
    if (!zech_built_) throw std::logic_error("log tables not built");
    ZechView v;
    v.q = q_;
    v.m = q_ - 1;
    v.exp = exp_.data();
    v.log = log_.data();
    v.zech = zech_.data();
    return v;
}

std::string Fq::element_to_string(uint64_t code) const {
    if (k_ == 1) return std::to_string(code);
    std::ostringstream os;
    os << "[";
    for (unsigned i = 0; i < k_; ++i) {
        if (i) os << ",";
        os << digit(code, i);
    }
    os << "]";
    return os.str();
}

SubfieldEmbedding::SubfieldEmbedding(FqRef small, FqRef big) : small_(std::move(small)), big_(std::move(big)) {
    if (small_->characteristic() != big_->characteristic() || big_->degree() % small_->degree() != 0)
        throw std::invalid_argument("no embedding between these fields");
    const uint64_t qs = small_->order();
    fwd_.resize(qs);
    if (small_->degree() == 1 || small_->same_field(*big_)) {
        for (uint64_t c = 0; c < qs; ++c) fwd_[c] = c;
    } else {
        // image of the small field variable: smallest root of the small
        // modulus among the elements of the big field with x^qs = x
        std::vector<uint64_t> candidates;
        big_->ensure_log_tables();
        if (big_->log_tables_ready()) {
            auto zv = big_->zech_view();
            uint64_t step = zv.m / (qs - 1);
            candidates.reserve(qs);
            candidates.push_back(0);
            for (uint64_t i = 0; i < qs - 1; ++i) candidates.push_back(zv.exp[i * step]);
            std::sort(candidates.begin(), candidates.end());
        } else {
            if (big_->order() > 50000000ull)
                throw std::invalid_argument("embedding search too large for this field");
            for (uint64_t c = 0; c < big_->order(); ++c) candidates.push_back(c);
        }
        uint64_t theta = 0;
        bool found = false;
        const auto& mod = small_->modulus();
        for (uint64_t cand : candidates) {
            uint64_t acc = 0;
            for (size_t i = mod.size(); i-- > 0;) acc = big_->add(big_->mul(acc, cand), mod[i] % big_->characteristic());
            if (acc == 0) {
                theta = cand;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("embedding root not found");
        // powers of theta
        std::vector<uint64_t> pow_theta(small_->degree(), 1);
        for (unsigned j = 1; j < small_->degree(); ++j) pow_theta[j] = big_->mul(pow_theta[j - 1], theta);
        for (uint64_t c = 0; c < qs; ++c) {
            uint64_t acc = 0;
            for (unsigned j = 0; j < small_->degree(); ++j) {
                unsigned d = small_->digit(c, j);
                if (d) acc = big_->add(acc, big_->mul(d, pow_theta[j]));
            }
            fwd_[c] = acc;
        }
    }
    for (uint64_t c = 0; c < qs; ++c) rev_[fwd_[c]] = c;
}

uint64_t SubfieldEmbedding::unmap(uint64_t big_code) const {
    auto it = rev_.find(big_code);
    if (it == rev_.end()) throw std::invalid_argument("element not in the subfield image");
    return it->second;
}

} // namespace ffl
