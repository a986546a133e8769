#include <algorithm>
#include <cmath>

#include "ffl/elliptic.hpp"

namespace ffl {

namespace {

constexpr uint64_t kNaiveLimit = 2048; // above this, BSGS (Hasse interval stays narrow enough)

uint64_t isqrt_u64(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Affine point arithmetic for y^2 = x^3 + ax + b through a field-op provider.
template <typename Ops>
struct EC {
    const Ops& f;
    uint64_t a;

    struct Pt {
        uint64_t x = 0, y = 0;
        bool inf = true;
    };

    bool eq(const Pt& p, const Pt& q) const {
        if (p.inf || q.inf) return p.inf == q.inf;
        return p.x == q.x && p.y == q.y;
    }

    Pt neg(const Pt& p) const {
        if (p.inf) return p;
        return Pt{p.x, f.neg(p.y), false};
    }

    Pt add(const Pt& p, const Pt& q) const {
        if (p.inf) return q;
        if (q.inf) return p;
        if (p.x == q.x) {
            if (p.y != q.y || p.y == 0) return Pt{}; // opposite points or 2-torsion doubling
            // tangent slope (3x^2 + a) / 2y
            uint64_t x2 = f.mul(p.x, p.x);
            uint64_t num = f.add(f.add(f.add(x2, x2), x2), a);
            uint64_t lam = f.mul(num, f.inv(f.add(p.y, p.y)));
            uint64_t x3 = f.sub(f.mul(lam, lam), f.add(p.x, p.x));
            uint64_t y3 = f.sub(f.mul(lam, f.sub(p.x, x3)), p.y);
            return Pt{x3, y3, false};
        }
        uint64_t lam = f.mul(f.sub(q.y, p.y), f.inv(f.sub(q.x, p.x)));
        uint64_t x3 = f.sub(f.sub(f.mul(lam, lam), p.x), q.x);
        uint64_t y3 = f.sub(f.mul(lam, f.sub(p.x, x3)), p.y);
        return Pt{x3, y3, false};
    }

    Pt smul(uint64_t k, const Pt& p) const {
        Pt acc;
        Pt base = p;
        while (k) {
            if (k & 1) acc = add(acc, base);
            base = add(base, base);
            k >>= 1;
        }
        return acc;
    }
};

// Zech-table ops; inversion and negation are exponent tricks.
struct ZechOps {
    Fq::ZechView v;
    uint64_t log_m1; // log(-1), m/2 for odd q

    explicit ZechOps(const Fq& F) : v(F.zech_view()) { log_m1 = v.m / 2; }

    uint64_t add(uint64_t a, uint64_t b) const { return v.add(a, b); }
    uint64_t mul(uint64_t a, uint64_t b) const { return v.mul(a, b); }
    uint64_t neg(uint64_t a) const {
        if (a == 0) return 0;
        uint64_t s = v.log[a] + log_m1;
        if (s >= v.m) s -= v.m;
        return v.exp[s];
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }
    uint64_t inv(uint64_t a) const { return v.inv(a); }
    int legendre(uint64_t a) const { return v.legendre(a); }
    uint64_t sqrt(uint64_t a) const { return v.sqrt_of_square(a); }
};

// Digit-arithmetic fallback for fields beyond the table limit.
struct GenericOps {
    const Fq& F;

    explicit GenericOps(const Fq& f) : F(f) {}
    uint64_t add(uint64_t a, uint64_t b) const { return F.add(a, b); }
    uint64_t mul(uint64_t a, uint64_t b) const { return F.mul(a, b); }
    uint64_t neg(uint64_t a) const { return F.neg(a); }
    uint64_t sub(uint64_t a, uint64_t b) const { return F.sub(a, b); }
    uint64_t inv(uint64_t a) const { return F.inv(a); }
    int legendre(uint64_t a) const { return F.legendre(a); }
    uint64_t sqrt(uint64_t a) const { return F.sqrt(a); }
};

// All m in [lo, hi] with m*P = O (ascending).
template <typename Ops>
std::vector<uint64_t> annihilators_in_range(const EC<Ops>& ec, const typename EC<Ops>::Pt& P, uint64_t lo,
                                            uint64_t hi) {
    using Pt = typename EC<Ops>::Pt;
    const uint64_t w = hi - lo + 1;
    const uint64_t bs = isqrt_u64(w) + 1;
    // baby steps j*P, j in [0, bs)
    std::vector<std::pair<uint64_t, uint64_t>> baby; // (x, j), y looked up again via recompute
    std::vector<Pt> baby_pts(bs);
    Pt cur;
    for (uint64_t j = 0; j < bs; ++j) {
        baby_pts[j] = cur;
        if (!cur.inf) baby.emplace_back(cur.x, j);
        if (j > 0 && cur.inf) {
            // ord(P) = j: the annihilators are the multiples of j in range
            std::vector<uint64_t> out;
            for (uint64_t m = (lo + j - 1) / j * j; m <= hi; m += j) out.push_back(m);
            return out;
        }
        cur = ec.add(cur, P);
    }
    std::sort(baby.begin(), baby.end());
    auto lookup = [&](uint64_t x) {
        auto it = std::lower_bound(baby.begin(), baby.end(), std::make_pair(x, uint64_t(0)));
        return it;
    };

    std::vector<uint64_t> candidates;
    Pt G = ec.smul(bs, P);
    Pt Q = ec.smul(lo, P);
    for (uint64_t i = 0;; ++i) {
        uint64_t m0 = lo + i * bs;
        if (m0 > hi + bs) break;
        if (Q.inf) {
            if (m0 >= lo && m0 <= hi) candidates.push_back(m0);
        } else {
            for (auto it = lookup(Q.x); it != baby.end() && it->first == Q.x; ++it) {
                uint64_t j = it->second;
                const Pt& bp = baby_pts[j];
                if (Q.y == ec.f.neg(bp.y)) {
                    uint64_t m = m0 + j;
                    if (m >= lo && m <= hi) candidates.push_back(m);
                }
                if (Q.y == bp.y && j != 0) {
                    if (m0 >= lo + j && m0 - j <= hi) candidates.push_back(m0 - j);
                }
            }
        }
        Q = ec.add(Q, G);
    }
    // matches are exact point equalities, so every candidate annihilates P;
    // sorting also collapses the y = -y = 0 double-report
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    return candidates;
}

template <typename Ops>
uint64_t curve_order_impl(const Fq& F, const Ops& ops, uint64_t a, uint64_t b) {
    const uint64_t q = F.order();
    const uint64_t t = isqrt_u64(4 * q);
    const uint64_t lo = q + 1 - t, hi = q + 1 + t;
    // candidate sets for N = #E from points on E and on the quadratic twist
    std::vector<uint64_t> cand;
    bool have = false;

    uint64_t d = F.smallest_nonsquare();
    uint64_t d2 = ops.mul(d, d), d3 = ops.mul(d2, d);
    uint64_t ta = ops.mul(a, d2), tb = ops.mul(b, d3);

    auto intersect = [&](std::vector<uint64_t> s) {
        if (!have) {
            cand = std::move(s);
            have = true;
            return;
        }
        std::vector<uint64_t> merged;
        std::set_intersection(cand.begin(), cand.end(), s.begin(), s.end(), std::back_inserter(merged));
        cand = std::move(merged);
    };

    EC<Ops> ec{ops, a};
    EC<Ops> ect{ops, ta};
    uint64_t x_e = 0, x_t = 0;
    for (unsigned round = 0; round < 256; ++round) {
        bool twist = (round % 2) == 1;
        EC<Ops>& curve = twist ? ect : ec;
        uint64_t& xref = twist ? x_t : x_e;
        uint64_t ca = twist ? ta : a, cb = twist ? tb : b;
        // next point on this curve by ascending x
        typename EC<Ops>::Pt P;
        while (xref < q) {
            uint64_t fx = ops.add(ops.mul(ops.mul(xref, xref), xref), ops.add(ops.mul(ca, xref), cb));
            ++xref;
            if (fx == 0) continue; // 2-torsion points pin little; skip
            if (ops.legendre(fx) == 1) {
                P = {xref - 1, ops.sqrt(fx), false};
                break;
            }
        }
        if (P.inf) continue; // ran out of x on this curve
        std::vector<uint64_t> ann = annihilators_in_range(curve, P, lo, hi);
        if (twist) {
            // #E' = 2(q+1) - N
            std::vector<uint64_t> transformed;
            for (auto it = ann.rbegin(); it != ann.rend(); ++it) transformed.push_back(2 * (q + 1) - *it);
            intersect(std::move(transformed));
        } else {
            intersect(std::move(ann));
        }
        if (have && cand.size() == 1) return cand[0];
        if (have && cand.empty()) throw std::logic_error("curve order candidates became empty");
    }
    // Should not happen for q > 457 (a point with a unique annihilator
    // exists on the curve or its twist); fall back to enumeration.
    return naive_curve_order(F, a, b);
}

} // namespace

uint64_t naive_curve_order(const Fq& F, uint64_t a, uint64_t b) {
    F.ensure_log_tables();
    const uint64_t q = F.order();
    if (F.log_tables_ready()) {
        auto v = F.zech_view();
        const uint64_t m = v.m;
        uint64_t count = q + 1; // infinity + one point per x with f(x)=0 handled below
        int64_t legendre_sum = 0;
        // x = 0
        if (b != 0) legendre_sum += v.legendre(b);
        // x = g^i
        uint64_t la = a == 0 ? 0 : v.log[a];
        uint64_t i3 = 0; // 3i mod m
        uint64_t ia = a == 0 ? 0 : la;
        for (uint64_t i = 0; i < m; ++i) {
            uint64_t x3 = v.exp[i3];
            uint64_t ax = a == 0 ? 0 : v.exp[ia];
            uint64_t fx = v.add(v.add(x3, ax), b);
            if (fx != 0) legendre_sum += (v.log[fx] & 1) ? -1 : 1;
            i3 += 3;
            if (i3 >= m) i3 -= m;
            if (a != 0 && ++ia >= m) ia -= m;
        }
        return static_cast<uint64_t>(static_cast<int64_t>(count) + legendre_sum);
    }
    uint64_t count = q + 1;
    int64_t legendre_sum = 0;
    for (uint64_t x = 0; x < q; ++x) {
        uint64_t fx = F.add(F.mul(F.mul(x, x), x), F.add(F.mul(a, x), b));
        legendre_sum += F.legendre(fx);
    }
    return static_cast<uint64_t>(static_cast<int64_t>(count) + legendre_sum);
}

uint64_t bsgs_curve_order(const Fq& F, uint64_t a, uint64_t b) {
    if (F.characteristic() == 2) throw std::logic_error("counting needs odd characteristic");
    F.ensure_log_tables();
    if (F.log_tables_ready()) {
        ZechOps ops(F);
        return curve_order_impl(F, ops, a, b);
    }
    GenericOps ops(F);
    return curve_order_impl(F, ops, a, b);
}

int64_t fiber_trace(const Fq& F, uint64_t a, uint64_t b) {
    const uint64_t q = F.order();
    uint64_t order = q <= kNaiveLimit ? naive_curve_order(F, a, b) : bsgs_curve_order(F, a, b);
    int64_t trace = static_cast<int64_t>(q) + 1 - static_cast<int64_t>(order);
    if (static_cast<uint64_t>(trace * trace) > 4 * q) throw std::logic_error("Hasse bound violated");
    return trace;
}

} // namespace ffl
