#ifndef FFL_FINITE_FIELD_HPP
#define FFL_FINITE_FIELD_HPP

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "ffl/errors.hpp"

namespace ffl {

class Fq;
using FqRef = std::shared_ptr<const Fq>;

// F_{p^k} with a deterministic modulus: the lexicographically smallest monic
// irreducible of degree k over F_p (coefficients compared from the highest
// degree down). Elements are codes in [0, p^k): the base-p digits of the code
// are the coefficients of the residue polynomial, constant term first.
//
// All arithmetic goes through the field object. Fields of order up to
// zech_limit() lazily build discrete-log tables (exp/log/Zech) that turn
// multiplication, inversion and square testing into table lookups; larger
// fields fall back to digit arithmetic.
class Fq : public std::enable_shared_from_this<Fq> {
  public:
    // Shared, cached instance; InvalidField if p is not prime.
    static FqRef create(uint64_t p, unsigned k);
    // Explicit modulus (monic, length k+1, coefficients mod p); not cached.
    static FqRef create_with_modulus(uint64_t p, unsigned k, std::vector<uint64_t> modulus);

    uint64_t characteristic() const { return p_; }
    unsigned degree() const { return k_; }
    uint64_t order() const { return q_; }
    const std::vector<uint64_t>& modulus() const { return mod_; }

    bool same_field(const Fq& other) const {
        return p_ == other.p_ && k_ == other.k_ && mod_ == other.mod_;
    }

    // --- element arithmetic on codes ---
    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const; // DivisionByZero on 0
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t frobenius(uint64_t a) const { return pow(a, p_); }
    uint64_t from_int(long v) const; // prime-subfield embedding of v mod p

    // Quadratic character for odd q: -1, 0, +1.
    int legendre(uint64_t a) const;
    bool is_square(uint64_t a) const { return legendre(a) >= 0; }
    uint64_t sqrt(uint64_t a) const; // requires legendre(a) >= 0
    uint64_t smallest_nonsquare() const;

    // Smallest code generating the multiplicative group.
    uint64_t generator() const;

    unsigned digit(uint64_t code, unsigned i) const;
    uint64_t pack(const std::vector<uint64_t>& digits) const;

    std::string element_to_string(uint64_t code) const;

    // --- discrete-log acceleration ---
    static uint64_t zech_limit();
    bool log_tables_ready() const { return zech_built_; }
    void ensure_log_tables() const; // no-op above zech_limit()

    struct ZechView {
        uint64_t q = 0;
        uint64_t m = 0; // q - 1
        const uint32_t* exp = nullptr;
        const uint32_t* log = nullptr;   // log[0] is the sentinel
        const uint32_t* zech = nullptr;  // zech[i] = log(1 + g^i), sentinel if zero
        static constexpr uint32_t kNone = 0xffffffffu;

        uint64_t mul(uint64_t a, uint64_t b) const {
            if (a == 0 || b == 0) return 0;
            uint64_t s = log[a] + log[b];
            if (s >= m) s -= m;
            return exp[s];
        }
        uint64_t add(uint64_t a, uint64_t b) const {
            if (a == 0) return b;
            if (b == 0) return a;
            uint64_t la = log[a], lb = log[b];
            uint64_t d = lb >= la ? lb - la : lb + m - la;
            uint32_t z = zech[d];
            if (z == kNone) return 0;
            uint64_t s = la + z;
            if (s >= m) s -= m;
            return exp[s];
        }
        uint64_t inv(uint64_t a) const { return a == 0 ? 0 : exp[(m - log[a]) % m]; }
        uint64_t pow_log(uint64_t a, uint64_t e) const {
            if (a == 0) return 0;
            return exp[static_cast<uint64_t>((static_cast<unsigned __int128>(log[a]) * e) % m)];
        }
        int legendre(uint64_t a) const {
            if (a == 0) return 0;
            return (log[a] & 1) ? -1 : 1;
        }
        uint64_t sqrt_of_square(uint64_t a) const {
            if (a == 0) return 0;
            uint64_t l = log[a]; // even
            return exp[l / 2];
        }
    };
    ZechView zech_view() const; // requires log_tables_ready()

  private:
    Fq(uint64_t p, unsigned k, std::vector<uint64_t> modulus);

    void unpack(uint64_t code, uint64_t* out) const;
    uint64_t pack_raw(const uint64_t* digits) const;
    uint64_t mul_generic(uint64_t a, uint64_t b) const;

    uint64_t p_;
    unsigned k_;
    uint64_t q_;
    std::vector<uint64_t> mod_;      // monic, length k_+1
    std::vector<uint64_t> pow_p_;    // p^0..p^k

    mutable std::once_flag zech_once_;
    mutable bool zech_built_ = false;
    mutable std::vector<uint32_t> exp_, log_, zech_;
    mutable std::atomic<uint64_t> gen_{0};
};

// Convenience value type pairing a code with its field.
struct FqElem {
    FqRef field;
    uint64_t code = 0;

    bool operator==(const FqElem& rhs) const {
        return field && rhs.field && field->same_field(*rhs.field) && code == rhs.code;
    }
    bool operator!=(const FqElem& rhs) const { return !(*this == rhs); }
};

// F_p-algebra embedding of a subfield into an extension with compatible
// degrees; the image of the subfield variable is the smallest-code root of the
// subfield modulus, making the embedding deterministic.
class SubfieldEmbedding {
  public:
    SubfieldEmbedding(FqRef small, FqRef big);

    uint64_t map(uint64_t small_code) const { return fwd_[small_code]; }
    // Inverse on the image; throws std::invalid_argument if not in the image.
    uint64_t unmap(uint64_t big_code) const;
    const FqRef& small() const { return small_; }
    const FqRef& big() const { return big_; }

  private:
    FqRef small_, big_;
    std::vector<uint64_t> fwd_;
    std::unordered_map<uint64_t, uint64_t> rev_;
};

bool is_prime_u64(uint64_t n);
std::vector<uint64_t> prime_factors_u64(uint64_t n);

} // namespace ffl

#endif
