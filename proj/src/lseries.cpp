#include "ffl/lseries.hpp"

#include <algorithm>
#include <map>

namespace ffl {

void SeriesProduct::fold(const std::vector<Cyclotomic>& factor_coeffs, unsigned place_degree) {
    const unsigned N = s_.order();
    const unsigned d = place_degree;
    if (!(factor_coeffs.at(0) == Cyclotomic(1)))
        throw std::invalid_argument("local factor must have constant term 1");
    if (d > N) return; // no effect below the truncation order
    // dividing by f(T^d): S[i] -= sum_j f_j S[i - j d], ascending i
    for (unsigned i = d; i <= N; ++i) {
        Cyclotomic acc = s_.coeff(i);
        bool touched = false;
        for (unsigned j = 1; j < factor_coeffs.size() && j * d <= i; ++j) {
            if (factor_coeffs[j].is_zero()) continue;
            acc -= factor_coeffs[j] * s_.coeff(i - j * d);
            touched = true;
        }
        if (touched) s_.set_coeff(i, acc);
    }
}

LSeries assemble_l_series(const std::vector<EulerFactor>& factors, const FqRef& field, unsigned N,
                          bool include_infinity) {
    // coverage check: every finite place of degree <= N exactly once, and
    // infinity iff requested
    std::vector<const EulerFactor*> sorted;
    sorted.reserve(factors.size());
    unsigned infinity_count = 0;
    std::map<unsigned, uint64_t> finite_count;
    for (const auto& f : factors) {
        if (!f.place.field()->same_field(*field))
            throw std::invalid_argument("factor over the wrong field");
        if (f.place.is_infinity())
            ++infinity_count;
        else if (f.place.degree() <= N)
            ++finite_count[f.place.degree()];
        sorted.push_back(&f);
    }
    if (include_infinity && infinity_count != 1)
        throw Error(ErrorKind::IncompleteLocalData, "expected exactly one factor at infinity");
    if (!include_infinity && infinity_count != 0)
        throw Error(ErrorKind::IncompleteLocalData, "unexpected factor at infinity");
    for (unsigned d = 1; d <= N; ++d) {
        uint64_t expected = count_monic_irreducibles(field->order(), d);
        uint64_t got = finite_count.count(d) ? finite_count[d] : 0;
        if (got != expected)
            throw Error(ErrorKind::IncompleteLocalData,
                        "degree " + std::to_string(d) + ": have " + std::to_string(got) + " factors, need " +
                            std::to_string(expected));
    }
    std::sort(sorted.begin(), sorted.end(), [](const EulerFactor* a, const EulerFactor* b) {
        return a->place < b->place;
    });
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i - 1]->place == sorted[i]->place)
            throw Error(ErrorKind::IncompleteLocalData, "duplicate place " + sorted[i]->place.to_string());

    SeriesProduct prod(N);
    for (const EulerFactor* f : sorted)
        if (f->place.is_infinity() || f->place.degree() <= N) prod.fold(*f);
    LSeries out;
    out.field = field;
    out.N = N;
    out.series = prod.series();
    out.places = {field->order(), N, include_infinity};
    out.label = "assembled";
    return out;
}

LocalExpansion local_expansion(const EulerFactor& f, unsigned terms) {
    TruncatedSeries<Cyclotomic> denom = TruncatedSeries<Cyclotomic>::from_poly(
        Polynomial<Cyclotomic>(std::vector<Cyclotomic>(f.coeffs)), terms);
    TruncatedSeries<Cyclotomic> inv = denom.inverse();
    return {f.place, inv.coeffs()};
}

Cyclotomic divisor_coefficient(const std::vector<LocalExpansion>& locals, unsigned m, const FqRef& field,
                               bool include_infinity) {
    std::map<Place, const LocalExpansion*> by_place;
    for (const auto& le : locals) by_place[le.place] = &le;
    Cyclotomic total(0L);
    for (const EffectiveDivisor& D : enumerate_effective_divisors(field, m, include_infinity)) {
        Cyclotomic term(1L);
        for (const auto& [v, mult] : D.support()) {
            auto it = by_place.find(v);
            if (it == by_place.end())
                throw Error(ErrorKind::IncompleteLocalData, "no local expansion at " + v.to_string());
            if (mult >= it->second->a.size())
                throw Error(ErrorKind::IncompleteLocalData,
                            "local expansion at " + v.to_string() + " too short");
            term = term * it->second->a[mult];
        }
        total += term;
    }
    return total;
}

Cyclotomic trace_sum(const std::vector<EulerFactor>& factors, unsigned n) {
    Cyclotomic total(0L);
    for (const EulerFactor& f : factors) {
        unsigned d = f.place.degree();
        if (d == 0 || n % d != 0) continue;
        unsigned j = n / d;
        unsigned r = f.degree_x();
        Cyclotomic p(0L);
        if (r == 0) {
            continue;
        } else if (r == 1) {
            Cyclotomic alpha = -f.coeffs[1];
            p = alpha;
            for (unsigned i = 1; i < j; ++i) p = p * alpha;
        } else if (r == 2) {
            Cyclotomic e1 = -f.coeffs[1], e2 = f.coeffs[2];
            Cyclotomic p1 = e1;
            Cyclotomic p2 = e1 * e1 - (e2 + e2);
            if (j == 1)
                p = p1;
            else if (j == 2)
                p = p2;
            else {
                Cyclotomic pm2 = p1, pm1 = p2;
                for (unsigned i = 3; i <= j; ++i) {
                    p = e1 * pm1 - e2 * pm2;
                    pm2 = pm1;
                    pm1 = p;
                }
            }
        } else {
            throw std::logic_error("local factor degree above 2");
        }
        total += Cyclotomic(static_cast<long>(d)) * p;
    }
    return total;
}

LSeries reconstruct(LSeries series, unsigned dnum, unsigned dden, unsigned margin) {
    PadeResult<Cyclotomic> pr = pade_reconstruct(series.series, dnum, dden, margin);
    // independent re-expansion against every computed coefficient
    TruncatedSeries<Cyclotomic> redone =
        series_div(pr.num, TruncatedSeries<Cyclotomic>::from_poly(pr.den, series.N));
    for (unsigned i = 0; i <= series.N; ++i)
        if (!(redone.coeff(i) == series.series.coeff(i)))
            throw Error(ErrorKind::ReconstructionFailed, "re-expansion mismatch at T^" + std::to_string(i));
    series.rational_form = std::move(pr);
    return series;
}

LValueReport evaluate_leading(const LSeries& series, unsigned k) {
    if (!series.rational_form) throw std::invalid_argument("evaluate_leading needs a reconstructed series");
    const Cyclotomic center(Rational(1, static_cast<long>(series.field->order())));
    Polynomial<Cyclotomic> R = series.rational_form->num;
    Polynomial<Cyclotomic> Q = series.rational_form->den;
    unsigned mr = R.root_multiplicity(center);
    unsigned mq = Q.root_multiplicity(center);
    const Polynomial<Cyclotomic> lin({-center, Cyclotomic(1)});
    for (unsigned i = 0; i < std::min(mr, mq); ++i) {
        R = R.divrem(lin).first;
        Q = Q.divrem(lin).first;
    }
    LValueReport rep;
    if (mq > mr) {
        rep.pole = true;
        rep.pole_order = mq - mr;
        return rep;
    }
    rep.vanishing_order = mr - mq;
    Polynomial<Cyclotomic> Nj = R, Dj = Q;
    const Polynomial<Cyclotomic> tmono = Polynomial<Cyclotomic>::monomial(Cyclotomic(1), 1);
    for (unsigned j = 0; j <= k; ++j) {
        rep.values.push_back(Nj.eval(center) / Dj.eval(center));
        if (j == k) break;
        Polynomial<Cyclotomic> next = tmono * (Nj.derivative() * Dj - Nj * Dj.derivative());
        Dj = Dj * Dj;
        Nj = std::move(next);
    }
    return rep;
}

LSeries direct_sum_l(const std::vector<LSeries>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct sum of nothing");
    LSeries out = parts.front();
    out.rational_form.reset();
    out.label = "(" + out.label + ")";
    for (size_t i = 1; i < parts.size(); ++i) {
        if (!(parts[i].places == out.places) || !parts[i].field->same_field(*out.field))
            throw Error(ErrorKind::IncomparableSeries, "direct sum over mismatched place sets");
        out.series = out.series * parts[i].series;
        out.label += "(+)(" + parts[i].label + ")";
    }
    return out;
}

// --- pipelines ---

LSeries zeta_series(const FqRef& field, unsigned N, bool include_infinity) {
    SeriesProduct prod(N);
    for (unsigned d = 1; d <= N; ++d) {
        uint64_t count = count_monic_irreducibles(field->order(), d);
        // all factors at degree d coincide, so fold (1 - T^d)^count at once
        std::vector<Cyclotomic> power;
        for (unsigned j = 0; j * d <= N; ++j) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), count, j);
            if (j % 2) binom = -binom;
            power.emplace_back(Rational(binom));
        }
        prod.fold(power, d);
    }
    if (include_infinity) prod.fold({Cyclotomic(1), Cyclotomic(-1)}, 1);
    LSeries out;
    out.field = field;
    out.N = N;
    out.series = prod.series();
    out.places = {field->order(), N, include_infinity};
    out.label = "zeta";
    return out;
}

LSeries dirichlet_series(const DirichletCharacter& chi, unsigned N, bool include_infinity) {
    const FqRef& field = chi.group()->field();
    const unsigned n = chi.order();
    std::vector<Cyclotomic> roots(n);
    for (unsigned j = 0; j < n; ++j) roots[j] = Cyclotomic::root_of_unity(n, j);
    SeriesProduct prod(N);
    for (unsigned d = 1; d <= N; ++d) {
        for (const FqPoly& pi : monic_irreducibles(field, d)) {
            auto j = chi.eval_exponent(pi);
            if (!j) continue; // ramified: factor 1
            prod.fold({Cyclotomic(1), -roots[*j]}, d);
        }
    }
    if (include_infinity && !chi.infinity_behavior().ramified)
        prod.fold({Cyclotomic(1), -roots[chi.infinity_behavior().exponent % n]}, 1);
    LSeries out;
    out.field = field;
    out.N = N;
    out.series = prod.series();
    out.places = {field->order(), N, include_infinity};
    out.label = "L(" + chi.to_string() + ")";
    return out;
}

CurveLocalData::CurveLocalData(EllipticSurfaceModel model, unsigned N, bool include_infinity,
                               const ScanOptions& opts)
    : model_(std::move(model)), N_(N), include_infinity_(include_infinity) {
    records_ = reduction_scan(model_, N, opts);
    if (include_infinity_) infinity_ = reduction_at(model_, Place::infinity(model_.field));
}

ReductionData CurveLocalData::record_to_reduction(const PlaceRecord& rec) const {
    Place v = Place::finite_unchecked(FqPoly::monic_from_code(model_.field, rec.degree, rec.pi_code));
    ReductionData rd{v, rec.type, rec.trace, v.norm(), std::nullopt};
    if (rec.type == ReductionType::Good)
        rd.points = static_cast<uint64_t>(static_cast<int64_t>(rd.norm) + 1 - rec.trace);
    return rd;
}

namespace {

std::vector<Cyclotomic> curve_factor_coeffs(const PlaceRecord& rec, uint64_t norm) {
    switch (rec.type) {
        case ReductionType::Good:
            return {Cyclotomic(1), Cyclotomic(-rec.trace), Cyclotomic(static_cast<long>(norm))};
        case ReductionType::SplitMultiplicative: return {Cyclotomic(1), Cyclotomic(-1)};
        case ReductionType::NonsplitMultiplicative: return {Cyclotomic(1), Cyclotomic(1)};
        case ReductionType::Additive: return {Cyclotomic(1)};
    }
    throw std::logic_error("unreachable");
}

uint64_t norm_of_degree(uint64_t q, unsigned d) {
    uint64_t n = 1;
    for (unsigned i = 0; i < d; ++i) n *= q;
    return n;
}

} // namespace

LSeries curve_series(const CurveLocalData& data) {
    const FqRef& field = data.model().field;
    SeriesProduct prod(data.N());
    for (const PlaceRecord& rec : data.records())
        prod.fold(curve_factor_coeffs(rec, norm_of_degree(field->order(), rec.degree)), rec.degree);
    if (data.include_infinity()) prod.fold(euler_factor_curve(*data.infinity()).coeffs, 1);
    LSeries out;
    out.field = field;
    out.N = data.N();
    out.series = prod.series();
    out.places = {field->order(), data.N(), data.include_infinity()};
    out.label = "L(E: A=" + data.model().A.to_string() + ", B=" + data.model().B.to_string() + ")";
    return out;
}

LSeries twisted_series(const CurveLocalData& data, const DirichletCharacter& chi) {
    if (chi.is_trivial()) {
        LSeries out = curve_series(data);
        out.label = "L(E (x) 1)";
        return out;
    }
    if (!chi.is_primitive())
        throw Error(ErrorKind::ImprimitiveCharacter, "twisting needs a primitive character");
    const FqRef& field = data.model().field;
    if (!field->same_field(*chi.group()->field()))
        throw std::invalid_argument("character and curve over different fields");
    const unsigned n = chi.order();
    std::vector<Cyclotomic> roots(n);
    for (unsigned j = 0; j < n; ++j) roots[j] = Cyclotomic::root_of_unity(n, j);

    SeriesProduct prod(data.N());
    for (const PlaceRecord& rec : data.records()) {
        FqPoly pi = FqPoly::monic_from_code(field, rec.degree, rec.pi_code);
        auto j = chi.eval_exponent(pi);
        if (!j) {
            // ramified at v: needs good reduction there
            if (rec.type != ReductionType::Good)
                throw Error(ErrorKind::UnsupportedRamificationOverlap,
                            "character ramified at a bad place: " + pi.to_string());
            continue; // factor 1
        }
        std::vector<Cyclotomic> coeffs = curve_factor_coeffs(rec, norm_of_degree(field->order(), rec.degree));
        const Cyclotomic& u = roots[*j];
        Cyclotomic upow = u;
        for (size_t i = 1; i < coeffs.size(); ++i) {
            coeffs[i] = coeffs[i] * upow;
            if (i + 1 < coeffs.size()) upow = upow * u;
        }
        prod.fold(coeffs, rec.degree);
    }
    if (data.include_infinity()) {
        const ReductionData& inf = *data.infinity();
        if (chi.infinity_behavior().ramified) {
            if (inf.type != ReductionType::Good)
                throw Error(ErrorKind::UnsupportedRamificationOverlap,
                            "character ramified at infinity where the curve has bad reduction");
            // factor 1
        } else {
            std::vector<Cyclotomic> coeffs = euler_factor_curve(inf).coeffs;
            const Cyclotomic& u = roots[chi.infinity_behavior().exponent % n];
            Cyclotomic upow = u;
            for (size_t i = 1; i < coeffs.size(); ++i) {
                coeffs[i] = coeffs[i] * upow;
                if (i + 1 < coeffs.size()) upow = upow * u;
            }
            prod.fold(coeffs, 1);
        }
    }
    LSeries out;
    out.field = field;
    out.N = data.N();
    out.series = prod.series();
    out.places = {field->order(), data.N(), data.include_infinity()};
    out.label = "L(E (x) " + chi.to_string() + ")";
    return out;
}

ReconstructionBounds default_bounds(const std::optional<EllipticSurfaceModel>& curve,
                                    const std::optional<DirichletCharacter>& chi) {
    ReconstructionBounds b;
    b.dden = 2;
    if (curve) {
        b.dnum = 2 * static_cast<unsigned>(std::max<long>(curve->delta.degree(), 0)) + 4;
    } else if (chi) {
        b.dnum = static_cast<unsigned>(chi->modulus().degree());
    } else {
        b.dnum = 0;
    }
    b.margin = 2;
    return b;
}

std::optional<unsigned> first_series_difference(const LSeries& lhs, const GaloisAutomorphism& sigma,
                                                const LSeries& rhs) {
    if (!(lhs.places == rhs.places) || lhs.N != rhs.N || !lhs.field->same_field(*rhs.field))
        throw Error(ErrorKind::IncomparableSeries, "series over different place sets");
    for (unsigned i = 0; i <= lhs.N; ++i)
        if (!(lhs.series.coeff(i).apply(sigma) == rhs.series.coeff(i))) return i;
    return std::nullopt;
}

EquivarianceReport equivariance_check(const std::optional<CurveLocalData>& curve, const DirichletCharacter& chi,
                                      const GaloisAutomorphism& sigma, unsigned N, unsigned k,
                                      bool include_infinity, const ReconstructionBounds& bounds) {
    EquivarianceReport rep;
    rep.sigma = sigma.exponent();
    DirichletCharacter chi_s = chi.conjugate(sigma);

    LSeries left, right;
    if (curve) {
        if (curve->N() < N || curve->include_infinity() != include_infinity)
            throw std::invalid_argument("local data does not cover the requested product");
        left = twisted_series(*curve, chi);
        right = twisted_series(*curve, chi_s);
    } else {
        left = dirichlet_series(chi, N, include_infinity);
        right = dirichlet_series(chi_s, N, include_infinity);
    }

    // (a) series-level
    rep.first_series_mismatch = first_series_difference(left, sigma, right);
    rep.series_ok = !rep.first_series_mismatch.has_value();

    // (b) per-place local factors
    const FqRef field = chi.group()->field();
    auto check_local = [&](const EulerFactor& f1, const EulerFactor& f2) {
        if (!rep.local_ok) return;
        bool ok = f1.coeffs.size() == f2.coeffs.size();
        for (size_t i = 0; ok && i < f1.coeffs.size(); ++i) ok = f1.coeffs[i].apply(sigma) == f2.coeffs[i];
        if (!ok) {
            rep.local_ok = false;
            rep.first_local_mismatch = f1.place.to_string();
        }
    };
    if (curve) {
        for (const PlaceRecord& rec : curve->records()) {
            ReductionData rd = curve->record_to_reduction(rec);
            check_local(twisted_euler_factor(rd, chi), twisted_euler_factor(rd, chi_s));
            if (!rep.local_ok) break;
        }
        if (rep.local_ok && include_infinity && !chi.infinity_behavior().ramified) {
            // handled through the series at infinity; factor comparison below
            ReductionData rd = *curve->infinity();
            EulerFactor f1 = euler_factor_curve(rd), f2 = euler_factor_curve(rd);
            const unsigned n = chi.order();
            Cyclotomic u1 = Cyclotomic::root_of_unity(n, chi.infinity_behavior().exponent % n);
            Cyclotomic u2 = Cyclotomic::root_of_unity(n, chi_s.infinity_behavior().exponent % n);
            Cyclotomic p1 = u1, p2 = u2;
            for (size_t i = 1; i < f1.coeffs.size(); ++i) {
                f1.coeffs[i] = f1.coeffs[i] * p1;
                f2.coeffs[i] = f2.coeffs[i] * p2;
                p1 = p1 * u1;
                p2 = p2 * u2;
            }
            check_local(f1, f2);
        }
    } else {
        for (unsigned d = 1; d <= N && rep.local_ok; ++d) {
            for (const FqPoly& pi : monic_irreducibles(field, d)) {
                Place v = Place::finite_unchecked(pi);
                check_local(euler_factor_character(chi, v), euler_factor_character(chi_s, v));
                if (!rep.local_ok) break;
            }
        }
    }

    // (c) value-level through the reconstructed forms
    ReconstructionBounds eff = bounds;
    std::optional<EllipticSurfaceModel> model;
    if (curve) model = curve->model();
    ReconstructionBounds defaults = default_bounds(model, chi);
    unsigned dnum = eff.dnum.value_or(defaults.dnum.value());
    unsigned dden = eff.dden.value_or(defaults.dden.value());
    try {
        LSeries lrec = reconstruct(left, dnum, dden, eff.margin);
        LSeries rrec = reconstruct(right, dnum, dden, eff.margin);
        LValueReport lv = evaluate_leading(lrec, k);
        LValueReport rv = evaluate_leading(rrec, k);
        rep.values_checked = true;
        if (lv.pole != rv.pole || lv.pole_order != rv.pole_order) {
            rep.values_ok = false;
            rep.first_value_mismatch = 0;
        } else if (!lv.pole) {
            for (unsigned j = 0; j <= k; ++j) {
                if (!(lv.values[j].apply(sigma) == rv.values[j])) {
                    rep.values_ok = false;
                    rep.first_value_mismatch = j;
                    break;
                }
            }
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ReconstructionFailed) throw;
        rep.values_checked = false;
    }
    return rep;
}

} // namespace ffl
