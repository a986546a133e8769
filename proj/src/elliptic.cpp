#include "ffl/elliptic.hpp"

#include <algorithm>
#include <thread>

namespace ffl {

const char* reduction_type_name(ReductionType t) {
    switch (t) {
        case ReductionType::Good: return "good";
        case ReductionType::SplitMultiplicative: return "split multiplicative";
        case ReductionType::NonsplitMultiplicative: return "nonsplit multiplicative";
        case ReductionType::Additive: return "additive";
    }
    return "?";
}

EllipticSurfaceModel validate_model(const FqRef& field, FqPoly A, FqPoly B) {
    if (field->characteristic() < 5)
        throw Error(ErrorKind::UnsupportedCharacteristic, "short Weierstrass models need p >= 5");
    if (!A.field()->same_field(*field) || !B.field()->same_field(*field))
        throw std::invalid_argument("curve coefficients over the wrong field");
    EllipticSurfaceModel m;
    m.field = field;
    m.A = std::move(A);
    m.B = std::move(B);
    const FqPoly four = FqPoly::constant(field, field->from_int(4));
    const FqPoly tseven = FqPoly::constant(field, field->from_int(27));
    FqPoly disc = four * m.A.pow_u(3) + tseven * m.B * m.B; // 4A^3 + 27B^2
    if (disc.is_zero()) throw Error(ErrorKind::SingularModel, "discriminant vanishes identically");
    m.delta = disc.scaled(field->from_int(-16));
    m.c4 = m.A.scaled(field->from_int(-48));
    m.c6 = m.B.scaled(field->from_int(-864));
    return m;
}

namespace {

unsigned ord_or_large(const FqPoly& f, const FqPoly& pi, unsigned cap) {
    // valuation, but the zero polynomial counts as "at least cap"
    if (f.is_zero()) return cap;
    unsigned v = f.valuation(pi);
    return std::min(v, cap);
}

} // namespace

bool is_minimal_at(const EllipticSurfaceModel& model, const Place& v) {
    if (v.is_infinity()) throw std::invalid_argument("minimality at infinity goes through the model change");
    const FqPoly& pi = v.poly();
    return !(ord_or_large(model.A, pi, 4) >= 4 && ord_or_large(model.B, pi, 6) >= 6);
}

EllipticSurfaceModel minimal_model_at(const EllipticSurfaceModel& model, const Place& v) {
    if (v.is_infinity()) throw std::invalid_argument("minimality at infinity goes through the model change");
    const FqPoly& pi = v.poly();
    FqPoly A = model.A, B = model.B;
    FqPoly pi4 = pi.pow_u(4), pi6 = pi.pow_u(6);
    while ((A.is_zero() || A.valuation(pi) >= 4) && (B.is_zero() || B.valuation(pi) >= 6)) {
        A = A / pi4;
        B = B / pi6;
    }
    return validate_model(model.field, std::move(A), std::move(B));
}

ReductionData reduction_type(const EllipticSurfaceModel& model, const Place& v) {
    if (v.is_infinity()) throw std::invalid_argument("classification at infinity goes through the model change");
    if (!is_minimal_at(model, v)) throw Error(ErrorKind::NotMinimal, "model is not minimal at " + v.to_string());
    ReductionData rd{v, ReductionType::Good, std::nullopt, v.norm(), std::nullopt};
    const FqPoly& pi = v.poly();
    if (!(model.delta % pi).is_zero()) return rd; // good; trace via point counting
    if (!(model.c4 % pi).is_zero()) {
        // multiplicative: split iff -c6 is a square in the residue field
        FqElem r = residue_map(v, -model.c6);
        if (r.field->legendre(r.code) == 1) {
            rd.type = ReductionType::SplitMultiplicative;
            rd.trace = 1;
        } else {
            rd.type = ReductionType::NonsplitMultiplicative;
            rd.trace = -1;
        }
        return rd;
    }
    rd.type = ReductionType::Additive;
    rd.trace = 0;
    return rd;
}

std::pair<uint64_t, int64_t> point_count(const EllipticSurfaceModel& model, const Place& v) {
    if (v.is_infinity()) throw std::invalid_argument("counting at infinity goes through the model change");
    if ((model.delta % v.poly()).is_zero())
        throw Error(ErrorKind::BadReductionPlace, "bad reduction at " + v.to_string());
    FqElem a = residue_map(v, model.A);
    FqElem b = residue_map(v, model.B);
    uint64_t count = naive_curve_order(*a.field, a.code, b.code);
    int64_t trace = static_cast<int64_t>(a.field->order()) + 1 - static_cast<int64_t>(count);
    return {count, trace};
}

EllipticSurfaceModel infinite_place_model(const EllipticSurfaceModel& model) {
    long da = model.A.degree(), db = model.B.degree();
    unsigned k = 0;
    if (da >= 0) k = std::max<unsigned>(k, static_cast<unsigned>((da + 3) / 4));
    if (db >= 0) k = std::max<unsigned>(k, static_cast<unsigned>((db + 5) / 6));
    // A'(s) = s^{4k} A(1/s), B'(s) = s^{6k} B(1/s)
    std::vector<uint64_t> ac(4 * k + 1, 0), bc(6 * k + 1, 0);
    for (long i = 0; i <= da; ++i) ac[4 * k - static_cast<unsigned>(i)] = model.A.coeff(static_cast<size_t>(i));
    for (long i = 0; i <= db; ++i) bc[6 * k - static_cast<unsigned>(i)] = model.B.coeff(static_cast<size_t>(i));
    return validate_model(model.field, FqPoly(model.field, std::move(ac)), FqPoly(model.field, std::move(bc)));
}

ReductionData reduction_at(const EllipticSurfaceModel& model, const Place& v) {
    if (v.is_infinity()) {
        EllipticSurfaceModel flipped = infinite_place_model(model);
        Place s0 = Place::finite_unchecked(FqPoly::t(model.field));
        EllipticSurfaceModel mm = minimal_model_at(flipped, s0);
        ReductionData rd = reduction_type(mm, s0);
        if (rd.type == ReductionType::Good) {
            FqElem a = residue_map(s0, mm.A), b = residue_map(s0, mm.B);
            int64_t tr = fiber_trace(*a.field, a.code, b.code);
            rd.trace = tr;
            rd.points = static_cast<uint64_t>(static_cast<int64_t>(a.field->order()) + 1 - tr);
        }
        rd.place = v;
        return rd;
    }
    EllipticSurfaceModel mm = minimal_model_at(model, v);
    ReductionData rd = reduction_type(mm, v);
    if (rd.type == ReductionType::Good) {
        FqElem a = residue_map(v, mm.A), b = residue_map(v, mm.B);
        int64_t tr = fiber_trace(*a.field, a.code, b.code);
        rd.trace = tr;
        rd.points = static_cast<uint64_t>(static_cast<int64_t>(a.field->order()) + 1 - tr);
    }
    return rd;
}

std::vector<PlaceRecord> reduction_scan(const EllipticSurfaceModel& model, unsigned max_degree,
                                        const ScanOptions& opts) {
    const Fq& base = *model.field;
    const uint64_t q = base.order();
    std::vector<PlaceRecord> out;
    for (unsigned d = 1; d <= max_degree; ++d) {
        FqRef big = Fq::create(base.characteristic(), base.degree() * d);
        big->ensure_log_tables();
        SubfieldEmbedding emb(model.field, big);
        const uint64_t Q = big->order();

        // embedded coefficient arrays for Horner evaluation at theta
        auto embed_poly = [&](const FqPoly& f) {
            std::vector<uint64_t> c(f.coeffs().size());
            for (size_t i = 0; i < c.size(); ++i) c[i] = emb.map(f.coeffs()[i]);
            return c;
        };
        std::vector<uint64_t> Ae = embed_poly(model.A), Be = embed_poly(model.B), De = embed_poly(model.delta);
        auto horner = [&](const std::vector<uint64_t>& c, uint64_t x) {
            uint64_t acc = 0;
            for (size_t i = c.size(); i-- > 0;) acc = big->add(big->mul(acc, x), c[i]);
            return acc;
        };

        struct Orbit {
            uint64_t theta;
            uint64_t pi_code;
            int64_t a_good; // valid when good
            uint64_t fa, fb;
            bool good;
        };
        std::vector<Orbit> orbits;
        std::vector<bool> visited(Q, false);
        std::vector<uint64_t> orbit_buf;
        orbit_buf.reserve(d);
        for (uint64_t c = 0; c < Q; ++c) {
            if (visited[c]) continue;
            orbit_buf.clear();
            uint64_t cur = c;
            do {
                visited[cur] = true;
                orbit_buf.push_back(cur);
                cur = big->pow(cur, q);
            } while (cur != c);
            if (orbit_buf.size() != d) continue; // place of smaller degree
            uint64_t theta = *std::min_element(orbit_buf.begin(), orbit_buf.end());
            // minimal polynomial over F_q: prod (x - theta^(q^i)) has
            // coefficients in the image of F_q
            std::vector<uint64_t> mp{1};
            for (uint64_t root : orbit_buf) {
                std::vector<uint64_t> next(mp.size() + 1, 0);
                uint64_t neg = big->neg(root);
                for (size_t i = 0; i < mp.size(); ++i) {
                    next[i + 1] = big->add(next[i + 1], mp[i]);
                    next[i] = big->add(next[i], big->mul(mp[i], neg));
                }
                mp = std::move(next);
            }
            uint64_t pi_code = 0;
            for (size_t i = d; i-- > 0;) pi_code = pi_code * q + emb.unmap(mp[i]);

            Orbit orb{theta, pi_code, 0, 0, 0, false};
            if (horner(De, theta) != 0) {
                orb.good = true;
                orb.fa = horner(Ae, theta);
                orb.fb = horner(Be, theta);
            }
            orbits.push_back(orb);
        }

        // traces: good fibers in parallel, bad fibers through the careful path
        std::vector<PlaceRecord> recs(orbits.size());
        unsigned nthreads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
        nthreads = std::min<unsigned>(nthreads, 16);
        if (orbits.size() < 64) nthreads = 1;
        auto work = [&](unsigned tid) {
            for (size_t i = tid; i < orbits.size(); i += nthreads) {
                const Orbit& orb = orbits[i];
                PlaceRecord rec;
                rec.degree = d;
                rec.pi_code = orb.pi_code;
                if (orb.good) {
                    rec.type = ReductionType::Good;
                    rec.trace = fiber_trace(*big, orb.fa, orb.fb);
                } else {
                    FqPoly pi = FqPoly::monic_from_code(model.field, d, orb.pi_code);
                    Place v = Place::finite_unchecked(std::move(pi));
                    EllipticSurfaceModel mm = minimal_model_at(model, v);
                    ReductionData rd = reduction_type(mm, v);
                    rec.type = rd.type;
                    if (rd.type == ReductionType::Good) {
                        auto ae = embed_poly(mm.A), be = embed_poly(mm.B);
                        rec.trace = fiber_trace(*big, horner(ae, orb.theta), horner(be, orb.theta));
                    } else {
                        rec.trace = rd.trace.value();
                    }
                }
                recs[i] = rec;
            }
        };
        if (nthreads <= 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(work, t);
            work(0);
            for (auto& th : pool) th.join();
        }
        std::sort(recs.begin(), recs.end(), [](const PlaceRecord& a, const PlaceRecord& b) {
            return a.pi_code < b.pi_code;
        });
        out.insert(out.end(), recs.begin(), recs.end());
    }
    return out;
}

} // namespace ffl
