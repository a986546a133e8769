#include "ffl/job.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace ffl {

namespace {

FqRef field_from(const JobConfig& cfg) { return Fq::create(cfg.p, cfg.e); }

uint64_t code_from_tuple(const Fq& F, const std::vector<long>& tuple) {
    if (tuple.size() > F.degree()) throw std::invalid_argument("coefficient tuple longer than the field degree");
    std::vector<uint64_t> digits(F.degree(), 0);
    for (size_t i = 0; i < tuple.size(); ++i) digits[i] = F.from_int(tuple[i]);
    return F.pack(digits);
}

FqPoly poly_from_spec(const FqRef& F, const std::vector<std::vector<long>>& spec) {
    std::vector<uint64_t> codes(spec.size());
    for (size_t i = 0; i < spec.size(); ++i) codes[i] = code_from_tuple(*F, spec[i]);
    return FqPoly(F, std::move(codes));
}

ordered_json poly_to_json(const FqPoly& f) {
    ordered_json arr = ordered_json::array();
    const Fq& F = *f.field();
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        if (F.degree() == 1) {
            arr.push_back(f.coeffs()[i]);
        } else {
            ordered_json tup = ordered_json::array();
            for (unsigned d = 0; d < F.degree(); ++d) tup.push_back(F.digit(f.coeffs()[i], d));
            arr.push_back(tup);
        }
    }
    return arr;
}

std::vector<std::vector<long>> coeff_spec_from_json(const ordered_json& arr) {
    std::vector<std::vector<long>> out;
    for (const auto& c : arr) {
        if (c.is_array()) {
            std::vector<long> tup;
            for (const auto& x : c) tup.push_back(x.get<long>());
            out.push_back(std::move(tup));
        } else {
            out.push_back({c.get<long>()});
        }
    }
    return out;
}

ordered_json coeff_spec_to_json(const std::vector<std::vector<long>>& spec, unsigned e) {
    ordered_json arr = ordered_json::array();
    for (const auto& tup : spec) {
        if (e == 1) {
            arr.push_back(tup.empty() ? 0 : tup[0]);
        } else {
            ordered_json t = ordered_json::array();
            for (long v : tup) t.push_back(v);
            arr.push_back(t);
        }
    }
    return arr;
}

EllipticSurfaceModel curve_from_spec(const FqRef& F, const CurveSpec& spec) {
    return validate_model(F, poly_from_spec(F, spec.A), poly_from_spec(F, spec.B));
}

DirichletCharacter character_from_spec(const FqRef& F, const CharacterSpec& spec) {
    FqPoly m = poly_from_spec(F, spec.modulus);
    UnitGroupRef G = UnitGroup::create(m);
    if (spec.exponents.size() != G->generators().size())
        throw std::invalid_argument("character needs " + std::to_string(G->generators().size()) +
                                    " generator exponents for modulus " + m.to_string());
    InfinityBehavior inf = spec.infinity_exponent ? InfinityBehavior::unramified(*spec.infinity_exponent)
                                                  : InfinityBehavior::make_ramified();
    return DirichletCharacter(G, spec.order, spec.exponents, inf);
}

// integer power sums of the inverse roots of the untwisted local factor
int64_t untwisted_power_sum(ReductionType type, int64_t a, uint64_t norm, unsigned j) {
    switch (type) {
        case ReductionType::Additive: return 0;
        case ReductionType::SplitMultiplicative: return 1;
        case ReductionType::NonsplitMultiplicative: return (j % 2 == 0) ? 1 : -1;
        case ReductionType::Good: {
            int64_t pm2 = 2, pm1 = a; // p_0 = 2, p_1 = a
            if (j == 0) return 2;
            if (j == 1) return a;
            int64_t qn = static_cast<int64_t>(norm);
            for (unsigned i = 2; i <= j; ++i) {
                int64_t p = a * pm1 - qn * pm2;
                pm2 = pm1;
                pm1 = p;
            }
            return pm1;
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace

std::vector<Cyclotomic> trace_sums_zeta(const FqRef& field, unsigned N, bool include_infinity) {
    std::vector<Cyclotomic> s(N + 1, Cyclotomic(0L));
    for (unsigned d = 1; d <= N; ++d) {
        long count = static_cast<long>(count_monic_irreducibles(field->order(), d));
        for (unsigned n = d; n <= N; n += d) s[n] += Cyclotomic(static_cast<long>(d) * count);
    }
    if (include_infinity)
        for (unsigned n = 1; n <= N; ++n) s[n] += Cyclotomic(1L);
    return s;
}

std::vector<Cyclotomic> trace_sums_dirichlet(const DirichletCharacter& chi, unsigned N, bool include_infinity) {
    const FqRef& field = chi.group()->field();
    const unsigned n_ord = chi.order();
    std::vector<Cyclotomic> roots(n_ord);
    for (unsigned j = 0; j < n_ord; ++j) roots[j] = Cyclotomic::root_of_unity(n_ord, j);
    std::vector<Cyclotomic> s(N + 1, Cyclotomic(0L));
    for (unsigned d = 1; d <= N; ++d) {
        for (const FqPoly& pi : monic_irreducibles(field, d)) {
            auto e = chi.eval_exponent(pi);
            if (!e) continue;
            for (unsigned j = 1; d * j <= N; ++j)
                s[d * j] += Cyclotomic(static_cast<long>(d)) * roots[(*e * j) % n_ord];
        }
    }
    if (include_infinity && !chi.infinity_behavior().ramified) {
        unsigned e = chi.infinity_behavior().exponent % n_ord;
        for (unsigned n = 1; n <= N; ++n) s[n] += roots[(static_cast<uint64_t>(e) * n) % n_ord];
    }
    return s;
}

namespace {

std::vector<Cyclotomic> trace_sums_records(const CurveLocalData& data, const DirichletCharacter* chi) {
    const unsigned N = data.N();
    const FqRef& field = data.model().field;
    const unsigned n_ord = chi ? chi->order() : 1;
    std::vector<Cyclotomic> roots(n_ord);
    for (unsigned j = 0; j < n_ord; ++j) roots[j] = Cyclotomic::root_of_unity(n_ord, j);
    std::vector<Cyclotomic> s(N + 1, Cyclotomic(0L));
    for (const PlaceRecord& rec : data.records()) {
        const unsigned d = rec.degree;
        uint64_t norm = 1;
        for (unsigned i = 0; i < d; ++i) norm *= field->order();
        unsigned e = 0;
        if (chi) {
            FqPoly pi = FqPoly::monic_from_code(field, d, rec.pi_code);
            auto ee = chi->eval_exponent(pi);
            if (!ee) continue; // ramified: trivial invariants (good reduction enforced elsewhere)
            e = *ee;
        }
        for (unsigned j = 1; d * j <= N; ++j) {
            int64_t p = untwisted_power_sum(rec.type, rec.trace, norm, j);
            if (p == 0) continue;
            s[d * j] += Cyclotomic(static_cast<long>(d) * p) * roots[(static_cast<uint64_t>(e) * j) % n_ord];
        }
    }
    if (data.include_infinity()) {
        const ReductionData& inf = *data.infinity();
        bool ramified = chi && chi->infinity_behavior().ramified;
        unsigned e = (chi && !chi->infinity_behavior().ramified) ? chi->infinity_behavior().exponent % n_ord : 0;
        if (!ramified) {
            for (unsigned n = 1; n <= N; ++n) {
                int64_t p = untwisted_power_sum(inf.type, inf.trace.value_or(0), inf.norm, n);
                if (p == 0) continue;
                s[n] += Cyclotomic(static_cast<long>(p)) * roots[(static_cast<uint64_t>(e) * n) % n_ord];
            }
        }
    }
    return s;
}

} // namespace

std::vector<Cyclotomic> trace_sums_curve(const CurveLocalData& data) { return trace_sums_records(data, nullptr); }

std::vector<Cyclotomic> trace_sums_twisted(const CurveLocalData& data, const DirichletCharacter& chi) {
    return trace_sums_records(data, &chi);
}

ordered_json cyclotomic_to_json(const Cyclotomic& x) {
    ordered_json j;
    j["n"] = x.conductor();
    ordered_json arr = ordered_json::array();
    for (const auto& c : x.coeffs()) arr.push_back(rational_to_string(c));
    j["coeffs"] = arr;
    return j;
}

Cyclotomic cyclotomic_from_json(const ordered_json& j) {
    unsigned n = j.at("n").get<unsigned>();
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(rational_from_string(c.get<std::string>()));
    return Cyclotomic::from_power_coeffs(n, coeffs);
}

JobConfig parse_job_config(const ordered_json& j) {
    JobConfig cfg;
    cfg.task = j.value("task", std::string("zeta"));
    if (j.contains("q")) {
        const auto& q = j.at("q");
        cfg.p = q.at("p").get<uint64_t>();
        cfg.e = q.value("e", 1u);
    }
    cfg.N = j.value("N", 8u);
    cfg.derivatives = j.value("derivatives", 0u);
    if (j.contains("sigmas"))
        for (const auto& s : j.at("sigmas")) cfg.sigmas.push_back(s.get<unsigned>());
    cfg.include_infinity = j.value("include_infinity", false);
    if (j.contains("curve")) {
        CurveSpec spec;
        spec.A = coeff_spec_from_json(j.at("curve").at("A"));
        spec.B = coeff_spec_from_json(j.at("curve").at("B"));
        cfg.curve = std::move(spec);
    }
    if (j.contains("characters")) {
        for (const auto& c : j.at("characters")) {
            CharacterSpec spec;
            spec.modulus = coeff_spec_from_json(c.at("modulus"));
            spec.order = c.at("order").get<unsigned>();
            for (const auto& ee : c.at("exponents")) spec.exponents.push_back(ee.get<unsigned>());
            if (c.contains("infinity") && !c.at("infinity").is_string())
                spec.infinity_exponent = c.at("infinity").get<unsigned>();
            cfg.characters.push_back(std::move(spec));
        }
    }
    if (j.contains("bounds")) {
        const auto& b = j.at("bounds");
        if (b.contains("num") && !b.at("num").is_null()) cfg.degree_bound_num = b.at("num").get<unsigned>();
        if (b.contains("den") && !b.at("den").is_null()) cfg.degree_bound_den = b.at("den").get<unsigned>();
        cfg.margin = b.value("margin", 2u);
    }
    cfg.threads = j.value("threads", 0u);
    return cfg;
}

ordered_json job_config_to_json(const JobConfig& cfg) {
    ordered_json j;
    j["task"] = cfg.task;
    j["q"] = ordered_json{{"p", cfg.p}, {"e", cfg.e}};
    j["N"] = cfg.N;
    j["derivatives"] = cfg.derivatives;
    ordered_json sig = ordered_json::array();
    for (unsigned s : cfg.sigmas) sig.push_back(s);
    j["sigmas"] = sig;
    j["include_infinity"] = cfg.include_infinity;
    if (cfg.curve) {
        j["curve"] = ordered_json{{"A", coeff_spec_to_json(cfg.curve->A, cfg.e)},
                                  {"B", coeff_spec_to_json(cfg.curve->B, cfg.e)}};
    }
    if (!cfg.characters.empty()) {
        ordered_json chars = ordered_json::array();
        for (const auto& c : cfg.characters) {
            ordered_json cj;
            cj["modulus"] = coeff_spec_to_json(c.modulus, cfg.e);
            cj["order"] = c.order;
            ordered_json exps = ordered_json::array();
            for (unsigned ee : c.exponents) exps.push_back(ee);
            cj["exponents"] = exps;
            if (c.infinity_exponent)
                cj["infinity"] = *c.infinity_exponent;
            else
                cj["infinity"] = "ramified";
            chars.push_back(std::move(cj));
        }
        j["characters"] = chars;
    }
    ordered_json bounds;
    bounds["num"] = cfg.degree_bound_num ? ordered_json(*cfg.degree_bound_num) : ordered_json(nullptr);
    bounds["den"] = cfg.degree_bound_den ? ordered_json(*cfg.degree_bound_den) : ordered_json(nullptr);
    bounds["margin"] = cfg.margin;
    j["bounds"] = bounds;
    j["threads"] = cfg.threads;
    return j;
}

namespace {

ordered_json series_to_json(const LSeries& L) {
    ordered_json arr = ordered_json::array();
    for (unsigned i = 0; i <= L.N; ++i) arr.push_back(cyclotomic_to_json(L.series.coeff(i)));
    return arr;
}

ordered_json poly_cyclo_to_json(const Polynomial<Cyclotomic>& p) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : p.coeffs()) arr.push_back(cyclotomic_to_json(c));
    return arr;
}

ordered_json values_to_json(const LValueReport& rep) {
    ordered_json j;
    j["pole"] = rep.pole;
    if (rep.pole) {
        j["pole_order"] = rep.pole_order;
    } else {
        j["vanishing_order"] = rep.vanishing_order;
        ordered_json arr = ordered_json::array();
        for (const auto& v : rep.values) arr.push_back(cyclotomic_to_json(v));
        j["A"] = arr;
    }
    return j;
}

struct TraceCheckOutcome {
    bool pass = true;
    std::optional<unsigned> first_mismatch;
};

TraceCheckOutcome check_trace_identity(const LSeries& L, const std::vector<Cyclotomic>& s) {
    TraceCheckOutcome out;
    TruncatedSeries<Cyclotomic> ld = series_log_derivative(L.series);
    for (unsigned n = 1; n <= L.N; ++n) {
        if (!(ld.coeff(n) == s[n])) {
            out.pass = false;
            out.first_mismatch = n;
            break;
        }
    }
    return out;
}

ordered_json trace_outcome_json(const TraceCheckOutcome& out) {
    ordered_json j;
    j["pass"] = out.pass;
    j["first_mismatch"] = out.first_mismatch ? ordered_json(*out.first_mismatch) : ordered_json(nullptr);
    return j;
}

ordered_json equivariance_to_json(const EquivarianceReport& r) {
    ordered_json j;
    j["sigma"] = r.sigma;
    j["series_ok"] = r.series_ok;
    j["first_series_mismatch"] =
        r.first_series_mismatch ? ordered_json(*r.first_series_mismatch) : ordered_json(nullptr);
    j["local_ok"] = r.local_ok;
    j["first_local_mismatch"] =
        r.first_local_mismatch ? ordered_json(*r.first_local_mismatch) : ordered_json(nullptr);
    j["values_checked"] = r.values_checked;
    j["values_ok"] = r.values_ok;
    j["first_value_mismatch"] =
        r.first_value_mismatch ? ordered_json(*r.first_value_mismatch) : ordered_json(nullptr);
    j["pass"] = r.pass();
    return j;
}

// factors for the explicit-check tasks (small N)
std::vector<EulerFactor> build_factor_list(const FqRef& field, unsigned N, bool include_infinity,
                                           const std::optional<CurveLocalData>& data,
                                           const DirichletCharacter* chi) {
    std::vector<EulerFactor> out;
    if (data) {
        for (const PlaceRecord& rec : data->records()) {
            ReductionData rd = data->record_to_reduction(rec);
            out.push_back(chi ? twisted_euler_factor(rd, *chi) : euler_factor_curve(rd));
        }
        if (include_infinity) {
            const ReductionData& inf = *data->infinity();
            if (chi) {
                if (chi->infinity_behavior().ramified) {
                    if (inf.type != ReductionType::Good)
                        throw Error(ErrorKind::UnsupportedRamificationOverlap,
                                    "character ramified at infinity where the curve has bad reduction");
                    out.push_back({Place::infinity(field), {Cyclotomic(1)}});
                } else {
                    EulerFactor f = euler_factor_curve(inf);
                    const unsigned n = chi->order();
                    Cyclotomic u = Cyclotomic::root_of_unity(n, chi->infinity_behavior().exponent % n);
                    Cyclotomic up = u;
                    for (size_t i = 1; i < f.coeffs.size(); ++i) {
                        f.coeffs[i] = f.coeffs[i] * up;
                        up = up * u;
                    }
                    out.push_back(std::move(f));
                }
            } else {
                out.push_back(euler_factor_curve(inf));
            }
        }
    } else {
        for (const Place& v : places_up_to(field, N, include_infinity)) {
            if (v.is_infinity()) {
                if (chi) {
                    out.push_back(euler_factor_character(*chi, v));
                } else {
                    out.push_back(euler_factor_trivial(v));
                }
            } else {
                out.push_back(chi ? euler_factor_character(*chi, v) : euler_factor_trivial(v));
            }
        }
    }
    return out;
}

} // namespace

std::string render_report(const ordered_json& report) { return report.dump(2) + "\n"; }

RunResult run(const JobConfig& cfg) {
    ordered_json rep;
    rep["tool"] = "ffl";
    rep["config"] = job_config_to_json(cfg);
    int exit_code = 0;
    try {
        FqRef field = field_from(cfg);
        if (cfg.N < 1) throw std::invalid_argument("N must be >= 1");
        rep["q"] = field->order();
        rep["N"] = cfg.N;
        rep["places"] =
            ordered_json{{"finite_max_degree", cfg.N}, {"include_infinity", cfg.include_infinity}};

        std::optional<EllipticSurfaceModel> model;
        if (cfg.curve) model = curve_from_spec(field, *cfg.curve);
        std::vector<DirichletCharacter> chars;
        for (const auto& cs : cfg.characters) chars.push_back(character_from_spec(field, cs));

        ScanOptions scan_opts;
        scan_opts.threads = cfg.threads;

        const std::string& task = cfg.task;
        ordered_json checks;

        auto finish_series = [&](LSeries L, const std::vector<Cyclotomic>& s, unsigned default_dnum) {
            rep["label"] = L.label;
            rep["series"] = series_to_json(L);
            TraceCheckOutcome tr = check_trace_identity(L, s);
            checks["trace_identity"] = trace_outcome_json(tr);
            if (!tr.pass) exit_code = 2;
            unsigned dnum = cfg.degree_bound_num.value_or(default_dnum);
            unsigned dden = cfg.degree_bound_den.value_or(2);
            LSeries rec = reconstruct(std::move(L), dnum, dden, cfg.margin);
            checks["reconstruction_verified"] = true;
            rep["reconstruction"] = ordered_json{{"num", poly_cyclo_to_json(rec.rational_form->num)},
                                                 {"den", poly_cyclo_to_json(rec.rational_form->den)}};
            rep["values"] = values_to_json(evaluate_leading(rec, cfg.derivatives));
        };

        if (task == "zeta") {
            LSeries L = zeta_series(field, cfg.N, cfg.include_infinity);
            finish_series(std::move(L), trace_sums_zeta(field, cfg.N, cfg.include_infinity), 0);
        } else if (task == "dirichlet") {
            if (chars.empty()) throw std::invalid_argument("dirichlet task needs at least one character");
            std::vector<LSeries> parts;
            std::vector<Cyclotomic> s(cfg.N + 1, Cyclotomic(0L));
            unsigned dnum = 0;
            for (const auto& chi : chars) {
                parts.push_back(dirichlet_series(chi, cfg.N, cfg.include_infinity));
                auto si = trace_sums_dirichlet(chi, cfg.N, cfg.include_infinity);
                for (unsigned n = 1; n <= cfg.N; ++n) s[n] += si[n];
                dnum += static_cast<unsigned>(chi.modulus().degree());
            }
            LSeries L = parts.size() == 1 ? parts[0] : direct_sum_l(parts);
            finish_series(std::move(L), s, std::max(dnum, 1u));
        } else if (task == "curve") {
            if (!model) throw std::invalid_argument("curve task needs curve coefficients");
            CurveLocalData data(*model, cfg.N, cfg.include_infinity, scan_opts);
            ordered_json bad = ordered_json::array();
            ordered_json all_records = ordered_json::array();
            const bool emit_all = data.records().size() <= 500;
            std::map<std::string, unsigned> type_count;
            auto record_json = [&](const PlaceRecord& recd) {
                FqPoly pi = FqPoly::monic_from_code(field, recd.degree, recd.pi_code);
                uint64_t qv = 1;
                for (unsigned i = 0; i < recd.degree; ++i) qv *= field->order();
                return ordered_json{{"place", pi.to_string()},
                                    {"type", reduction_type_name(recd.type)},
                                    {"a_v", recd.trace},
                                    {"q_v", qv}};
            };
            for (const auto& recd : data.records()) {
                ++type_count[reduction_type_name(recd.type)];
                if (recd.type != ReductionType::Good) bad.push_back(record_json(recd));
                if (emit_all) all_records.push_back(record_json(recd));
            }
            rep["reduction"] = ordered_json{{"counts", type_count}, {"bad_places", bad}};
            if (emit_all) rep["reduction"]["places"] = all_records;
            if (cfg.include_infinity) {
                const auto& inf = *data.infinity();
                rep["reduction"]["infinity"] = ordered_json{{"place", "infinity"},
                                                            {"type", reduction_type_name(inf.type)},
                                                            {"a_v", inf.trace.value_or(0)},
                                                            {"q_v", inf.norm}};
            }
            unsigned default_dnum = 2 * static_cast<unsigned>(std::max<long>(model->delta.degree(), 0)) + 4;
            LSeries L = curve_series(data);
            finish_series(std::move(L), trace_sums_curve(data), default_dnum);
        } else if (task == "twist") {
            if (!model) throw std::invalid_argument("twist task needs curve coefficients");
            if (chars.empty()) throw std::invalid_argument("twist task needs at least one character");
            CurveLocalData data(*model, cfg.N, cfg.include_infinity, scan_opts);
            std::vector<LSeries> parts;
            std::vector<Cyclotomic> s(cfg.N + 1, Cyclotomic(0L));
            for (const auto& chi : chars) {
                parts.push_back(twisted_series(data, chi));
                auto si = trace_sums_twisted(data, chi);
                for (unsigned n = 1; n <= cfg.N; ++n) s[n] += si[n];
            }
            LSeries L = parts.size() == 1 ? parts[0] : direct_sum_l(parts);
            unsigned default_dnum =
                static_cast<unsigned>(chars.size()) *
                (2 * static_cast<unsigned>(std::max<long>(model->delta.degree(), 0)) + 4);
            finish_series(std::move(L), s, default_dnum);
        } else if (task == "equivariance") {
            if (chars.size() != 1) throw std::invalid_argument("equivariance task needs exactly one character");
            const DirichletCharacter& chi = chars[0];
            std::vector<unsigned> sigmas = cfg.sigmas;
            if (sigmas.empty()) sigmas = coprime_exponents(chi.order());
            std::optional<CurveLocalData> data;
            if (model) data.emplace(*model, cfg.N, cfg.include_infinity, scan_opts);
            ReconstructionBounds bounds;
            bounds.dnum = cfg.degree_bound_num;
            bounds.dden = cfg.degree_bound_den;
            bounds.margin = cfg.margin;
            ordered_json verdicts = ordered_json::array();
            bool all_pass = true;
            for (unsigned a : sigmas) {
                GaloisAutomorphism sigma(chi.order(), a);
                EquivarianceReport r =
                    equivariance_check(data, chi, sigma, cfg.N, cfg.derivatives, cfg.include_infinity, bounds);
                verdicts.push_back(equivariance_to_json(r));
                all_pass = all_pass && r.pass();
            }
            rep["equivariance"] = verdicts;
            if (!all_pass) exit_code = 2;
        } else if (task == "trace-check" || task == "divisor-check") {
            if (chars.size() > 1) throw std::invalid_argument(task + " supports at most one character");
            const DirichletCharacter* chi = chars.empty() ? nullptr : &chars[0];
            std::optional<CurveLocalData> data;
            if (model) data.emplace(*model, cfg.N, cfg.include_infinity, scan_opts);
            std::vector<EulerFactor> factors =
                build_factor_list(field, cfg.N, cfg.include_infinity, data, chi);
            LSeries L = assemble_l_series(factors, field, cfg.N, cfg.include_infinity);
            rep["label"] = L.label;
            rep["series"] = series_to_json(L);
            if (task == "trace-check") {
                TruncatedSeries<Cyclotomic> ld = series_log_derivative(L.series);
                ordered_json tr = ordered_json::array();
                std::optional<unsigned> first_bad;
                for (unsigned n = 1; n <= cfg.N; ++n) {
                    Cyclotomic sn = trace_sum(factors, n);
                    bool ok = sn == ld.coeff(n);
                    tr.push_back(ordered_json{{"n", n}, {"s_n", cyclotomic_to_json(sn)}, {"pass", ok}});
                    if (!ok && !first_bad) first_bad = n;
                }
                checks["trace_identity"] = ordered_json{
                    {"pass", !first_bad.has_value()},
                    {"first_mismatch", first_bad ? ordered_json(*first_bad) : ordered_json(nullptr)}};
                rep["trace_sums"] = tr;
                if (first_bad) exit_code = 2;
            } else {
                std::vector<LocalExpansion> locals;
                for (const auto& f : factors) locals.push_back(local_expansion(f, cfg.N));
                ordered_json dc = ordered_json::array();
                std::optional<unsigned> first_bad;
                for (unsigned m = 0; m <= cfg.N; ++m) {
                    Cyclotomic lhs = divisor_coefficient(locals, m, field, cfg.include_infinity);
                    bool ok = lhs == L.series.coeff(m);
                    dc.push_back(ordered_json{{"m", m}, {"sum", cyclotomic_to_json(lhs)}, {"pass", ok}});
                    if (!ok && !first_bad) first_bad = m;
                }
                checks["rearrangement"] = ordered_json{
                    {"pass", !first_bad.has_value()},
                    {"first_mismatch", first_bad ? ordered_json(*first_bad) : ordered_json(nullptr)}};
                rep["divisor_coefficients"] = dc;
                if (first_bad) exit_code = 2;
            }
        } else {
            throw std::invalid_argument("unknown task: " + task);
        }

        rep["checks"] = checks;
        rep["status"] = exit_code == 0 ? "ok" : "exact-check-failed";
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ReconstructionFailed) {
            exit_code = 3;
            rep["status"] = "reconstruction-failed";
        } else {
            exit_code = 1;
            rep["status"] = "validation-error";
        }
        rep["error"] = ordered_json{{"kind", e.kind_name()}, {"message", e.what()}};
    } catch (const std::exception& e) {
        exit_code = 1;
        rep["status"] = "validation-error";
        rep["error"] = ordered_json{{"kind", "invalid"}, {"message", e.what()}};
    }
    return {exit_code, rep};
}

} // namespace ffl
