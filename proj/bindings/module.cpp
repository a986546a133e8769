// Python bindings for the exact L-series engine: cyclotomic arithmetic,
// finite fields and places, characters, curves, and the high-level L-series
// pipelines. Exact values cross the boundary as strings ("p/q") so nothing is
// ever rounded. FiniteField and UnitGroup are immutable shared contexts, so
// they are exposed through small handle classes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "ffl/job.hpp"
#include "ffl/weil.hpp"

namespace py = pybind11;
using namespace ffl;

namespace {

struct PyField {
    FqRef f;
};

struct PyUnitGroup {
    UnitGroupRef g;
};

Cyclotomic cyclo_from_strings(unsigned n, const std::vector<std::string>& coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) c.push_back(rational_from_string(s));
    return Cyclotomic::from_power_coeffs(n, c);
}

std::vector<std::string> cyclo_coeff_strings(const Cyclotomic& x) {
    std::vector<std::string> out;
    out.reserve(x.coeffs().size());
    for (const auto& c : x.coeffs()) out.push_back(rational_to_string(c));
    return out;
}

py::dict lseries_to_dict(const LSeries& L) {
    py::dict d;
    d["q"] = L.field->order();
    d["N"] = L.N;
    d["label"] = L.label;
    d["include_infinity"] = L.places.include_infinity;
    py::list coeffs;
    for (unsigned i = 0; i <= L.N; ++i) coeffs.append(py::cast(L.series.coeff(i)));
    d["coefficients"] = coeffs;
    if (L.rational_form) {
        py::list num, den;
        for (const auto& c : L.rational_form->num.coeffs()) num.append(py::cast(c));
        for (const auto& c : L.rational_form->den.coeffs()) den.append(py::cast(c));
        d["numerator"] = num;
        d["denominator"] = den;
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_ffl, m) {
    m.doc() = "exact L-series of elliptic curves and Dirichlet characters over F_q(t)";

    py::register_exception<Error>(m, "FflError");

    py::class_<GaloisAutomorphism>(m, "GaloisAutomorphism")
        .def(py::init<unsigned, unsigned>(), py::arg("conductor"), py::arg("exponent"))
        .def_property_readonly("conductor", &GaloisAutomorphism::conductor)
        .def_property_readonly("exponent", &GaloisAutomorphism::exponent)
        .def("__mul__", &GaloisAutomorphism::operator*)
        .def("__repr__", [](const GaloisAutomorphism& s) {
            return "GaloisAutomorphism(" + std::to_string(s.conductor()) + ", " +
                   std::to_string(s.exponent()) + ")";
        });

    py::class_<Cyclotomic>(m, "Cyclotomic")
        .def(py::init([](long v) { return Cyclotomic(v); }), py::arg("value"))
        .def(py::init(&cyclo_from_strings), py::arg("conductor"), py::arg("coeffs"))
        .def_static("zeta", &Cyclotomic::zeta, py::arg("n"))
        .def_static("root_of_unity", &Cyclotomic::root_of_unity, py::arg("n"), py::arg("k"))
        .def_property_readonly("conductor", &Cyclotomic::conductor)
        .def_property_readonly("coeffs", &cyclo_coeff_strings)
        .def("is_zero", &Cyclotomic::is_zero)
        .def("is_rational", &Cyclotomic::is_rational)
        .def("rational", [](const Cyclotomic& x) { return rational_to_string(x.rational_value()); })
        .def("apply", &Cyclotomic::apply, py::arg("sigma"))
        .def("inverse", &Cyclotomic::inverse)
        .def("__add__", &Cyclotomic::operator+)
        .def("__sub__",
             static_cast<Cyclotomic (Cyclotomic::*)(const Cyclotomic&) const>(&Cyclotomic::operator-))
        .def("__mul__", &Cyclotomic::operator*)
        .def("__truediv__", &Cyclotomic::operator/)
        .def("__neg__", static_cast<Cyclotomic (Cyclotomic::*)() const>(&Cyclotomic::operator-))
        .def("__eq__", &Cyclotomic::operator==)
        .def("__repr__", &Cyclotomic::to_string);

    py::class_<PyField>(m, "FiniteField")
        .def_static("create", [](uint64_t p, unsigned k) { return PyField{Fq::create(p, k)}; },
                    py::arg("p"), py::arg("k"))
        .def_property_readonly("p", [](const PyField& f) { return f.f->characteristic(); })
        .def_property_readonly("k", [](const PyField& f) { return f.f->degree(); })
        .def_property_readonly("order", [](const PyField& f) { return f.f->order(); })
        .def_property_readonly("modulus", [](const PyField& f) { return f.f->modulus(); })
        .def("add", [](const PyField& f, uint64_t a, uint64_t b) { return f.f->add(a, b); })
        .def("mul", [](const PyField& f, uint64_t a, uint64_t b) { return f.f->mul(a, b); })
        .def("neg", [](const PyField& f, uint64_t a) { return f.f->neg(a); })
        .def("inv", [](const PyField& f, uint64_t a) { return f.f->inv(a); })
        .def("pow", [](const PyField& f, uint64_t a, uint64_t e) { return f.f->pow(a, e); })
        .def("frobenius", [](const PyField& f, uint64_t a) { return f.f->frobenius(a); })
        .def("legendre", [](const PyField& f, uint64_t a) { return f.f->legendre(a); })
        .def("__repr__", [](const PyField& f) {
            return "FiniteField(" + std::to_string(f.f->characteristic()) + "^" +
                   std::to_string(f.f->degree()) + ")";
        });

    py::class_<FqPoly>(m, "FqPoly")
        .def(py::init([](const PyField& field, const std::vector<long>& coeffs) {
                 return FqPoly::from_int_coeffs(field.f, coeffs);
             }),
             py::arg("field"), py::arg("coeffs"))
        .def_property_readonly("degree", &FqPoly::degree)
        .def_property_readonly("coeffs", [](const FqPoly& f) { return f.coeffs(); })
        .def("__add__", &FqPoly::operator+)
        .def("__mul__", &FqPoly::operator*)
        .def("__mod__", &FqPoly::operator%)
        .def("__eq__", &FqPoly::operator==)
        .def("__repr__", [](const FqPoly& f) { return f.to_string(); });

    m.def(
        "monic_irreducibles",
        [](const PyField& field, unsigned d) { return monic_irreducibles(field.f, d); },
        py::arg("field"), py::arg("degree"));
    m.def("count_monic_irreducibles", &count_monic_irreducibles, py::arg("q"), py::arg("degree"));

    py::class_<Place>(m, "Place")
        .def_static("finite", &Place::finite, py::arg("pi"))
        .def_static("infinity", [](const PyField& f) { return Place::infinity(f.f); }, py::arg("field"))
        .def_property_readonly("degree", &Place::degree)
        .def_property_readonly("is_infinity", &Place::is_infinity)
        .def("__repr__", &Place::to_string);

    py::class_<PyUnitGroup>(m, "UnitGroup")
        .def_static("create", [](const FqPoly& m) { return PyUnitGroup{UnitGroup::create(m)}; },
                    py::arg("modulus"))
        .def_property_readonly("order", [](const PyUnitGroup& g) { return g.g->order(); })
        .def_property_readonly("generator_orders",
                               [](const PyUnitGroup& g) { return g.g->generator_orders(); });

    py::class_<DirichletCharacter>(m, "DirichletCharacter")
        .def(py::init([](const PyUnitGroup& group, unsigned order, std::vector<unsigned> exps,
                         std::optional<unsigned> infinity) {
                 InfinityBehavior inf = infinity ? InfinityBehavior::unramified(*infinity)
                                                 : InfinityBehavior::make_ramified();
                 return DirichletCharacter(group.g, order, std::move(exps), inf);
             }),
             py::arg("group"), py::arg("order"), py::arg("exponents"), py::arg("infinity") = py::none())
        .def_property_readonly("order", &DirichletCharacter::order)
        .def_property_readonly("exponents", &DirichletCharacter::exponents)
        .def("eval", &DirichletCharacter::eval, py::arg("f"))
        .def("is_primitive", &DirichletCharacter::is_primitive)
        .def("conjugate", &DirichletCharacter::conjugate, py::arg("sigma"))
        .def("power", &DirichletCharacter::power, py::arg("k"))
        .def("__repr__", &DirichletCharacter::to_string);

    m.def(
        "all_characters", [](const PyUnitGroup& g) { return all_characters(g.g); }, py::arg("group"));

    py::enum_<ReductionType>(m, "ReductionType")
        .value("GOOD", ReductionType::Good)
        .value("SPLIT_MULTIPLICATIVE", ReductionType::SplitMultiplicative)
        .value("NONSPLIT_MULTIPLICATIVE", ReductionType::NonsplitMultiplicative)
        .value("ADDITIVE", ReductionType::Additive);

    py::class_<EllipticSurfaceModel>(m, "EllipticSurfaceModel")
        .def(py::init([](const PyField& field, const std::vector<long>& A, const std::vector<long>& B) {
                 return validate_model(field.f, FqPoly::from_int_coeffs(field.f, A),
                                       FqPoly::from_int_coeffs(field.f, B));
             }),
             py::arg("field"), py::arg("A"), py::arg("B"))
        .def_property_readonly("A", [](const EllipticSurfaceModel& e) { return e.A; })
        .def_property_readonly("B", [](const EllipticSurfaceModel& e) { return e.B; })
        .def_property_readonly("discriminant", [](const EllipticSurfaceModel& e) { return e.delta; });

    py::class_<ReductionData>(m, "ReductionData")
        .def_property_readonly("type", [](const ReductionData& r) { return r.type; })
        .def_property_readonly("a_v", [](const ReductionData& r) { return r.trace.value_or(0); })
        .def_property_readonly("q_v", [](const ReductionData& r) { return r.norm; })
        .def_property_readonly("place", [](const ReductionData& r) { return r.place; });

    m.def("reduction_at", &reduction_at, py::arg("model"), py::arg("place"));
    m.def(
        "point_count",
        [](const EllipticSurfaceModel& model, const Place& v) { return point_count(model, v); },
        py::arg("model"), py::arg("place"));

    py::class_<LValueReport>(m, "LValueReport")
        .def_property_readonly("pole", [](const LValueReport& r) { return r.pole; })
        .def_property_readonly("pole_order", [](const LValueReport& r) { return r.pole_order; })
        .def_property_readonly("vanishing_order", [](const LValueReport& r) { return r.vanishing_order; })
        .def_property_readonly("values", [](const LValueReport& r) { return r.values; });

    // high-level pipelines returning plain dicts
    m.def(
        "zeta_series",
        [](uint64_t p, unsigned e, unsigned N, bool include_infinity) {
            return lseries_to_dict(zeta_series(Fq::create(p, e), N, include_infinity));
        },
        py::arg("p"), py::arg("e"), py::arg("N"), py::arg("include_infinity") = false);

    m.def(
        "dirichlet_l",
        [](const DirichletCharacter& chi, unsigned N, bool include_infinity, std::optional<unsigned> dnum,
           std::optional<unsigned> dden) {
            LSeries L = dirichlet_series(chi, N, include_infinity);
            unsigned bn = dnum.value_or(static_cast<unsigned>(chi.modulus().degree()));
            unsigned bd = dden.value_or(2);
            L = reconstruct(std::move(L), bn, bd);
            return lseries_to_dict(L);
        },
        py::arg("chi"), py::arg("N"), py::arg("include_infinity") = false, py::arg("dnum") = py::none(),
        py::arg("dden") = py::none());

    m.def(
        "curve_l",
        [](const EllipticSurfaceModel& model, unsigned N, bool include_infinity,
           std::optional<unsigned> dnum, std::optional<unsigned> dden, unsigned threads) {
            ScanOptions opts;
            opts.threads = threads;
            CurveLocalData data(model, N, include_infinity, opts);
            LSeries L = curve_series(data);
            auto defaults = default_bounds(model, std::nullopt);
            L = reconstruct(std::move(L), dnum.value_or(defaults.dnum.value()), dden.value_or(2));
            return lseries_to_dict(L);
        },
        py::arg("model"), py::arg("N"), py::arg("include_infinity") = false, py::arg("dnum") = py::none(),
        py::arg("dden") = py::none(), py::arg("threads") = 0);

    m.def(
        "twisted_l",
        [](const EllipticSurfaceModel& model, const DirichletCharacter& chi, unsigned N,
           bool include_infinity, std::optional<unsigned> dnum, std::optional<unsigned> dden,
           unsigned threads) {
            ScanOptions opts;
            opts.threads = threads;
            CurveLocalData data(model, N, include_infinity, opts);
            LSeries L = twisted_series(data, chi);
            auto defaults = default_bounds(model, chi);
            L = reconstruct(std::move(L), dnum.value_or(defaults.dnum.value()), dden.value_or(2));
            return lseries_to_dict(L);
        },
        py::arg("model"), py::arg("chi"), py::arg("N"), py::arg("include_infinity") = false,
        py::arg("dnum") = py::none(), py::arg("dden") = py::none(), py::arg("threads") = 0);

    m.def(
        "evaluate_leading",
        [](const EllipticSurfaceModel& model, const DirichletCharacter& chi, unsigned N, unsigned k,
           std::optional<unsigned> dnum, std::optional<unsigned> dden, unsigned threads) {
            ScanOptions opts;
            opts.threads = threads;
            CurveLocalData data(model, N, false, opts);
            LSeries L = twisted_series(data, chi);
            auto defaults = default_bounds(model, chi);
            L = reconstruct(std::move(L), dnum.value_or(defaults.dnum.value()), dden.value_or(2));
            return evaluate_leading(L, k);
        },
        py::arg("model"), py::arg("chi"), py::arg("N"), py::arg("k"), py::arg("dnum") = py::none(),
        py::arg("dden") = py::none(), py::arg("threads") = 0);

    m.def(
        "equivariance_check",
        [](std::optional<EllipticSurfaceModel> model, const DirichletCharacter& chi, unsigned sigma,
           unsigned N, unsigned k, bool include_infinity, std::optional<unsigned> dnum,
           std::optional<unsigned> dden, unsigned threads) {
            GaloisAutomorphism s(chi.order(), sigma);
            ReconstructionBounds bounds;
            bounds.dnum = dnum;
            bounds.dden = dden;
            std::optional<CurveLocalData> data;
            if (model) {
                ScanOptions opts;
                opts.threads = threads;
                data.emplace(*model, N, include_infinity, opts);
            }
            EquivarianceReport r = equivariance_check(data, chi, s, N, k, include_infinity, bounds);
            py::dict d;
            d["sigma"] = r.sigma;
            d["series_ok"] = r.series_ok;
            d["local_ok"] = r.local_ok;
            d["values_checked"] = r.values_checked;
            d["values_ok"] = r.values_ok;
            d["pass"] = r.pass();
            return d;
        },
        py::arg("model"), py::arg("chi"), py::arg("sigma"), py::arg("N"), py::arg("k") = 0,
        py::arg("include_infinity") = false, py::arg("dnum") = py::none(), py::arg("dden") = py::none(),
        py::arg("threads") = 0);

    m.def(
        "pade_reconstruct",
        [](const std::vector<std::string>& coeffs, unsigned dnum, unsigned dden, unsigned margin) {
            TruncatedSeries<Rational> s(static_cast<unsigned>(coeffs.size()) - 1);
            for (size_t i = 0; i < coeffs.size(); ++i)
                s.set_coeff(static_cast<unsigned>(i), rational_from_string(coeffs[i]));
            auto r = pade_reconstruct(s, dnum, dden, margin);
            std::vector<std::string> num, den;
            for (const auto& c : r.num.coeffs()) num.push_back(rational_to_string(c));
            for (const auto& c : r.den.coeffs()) den.push_back(rational_to_string(c));
            return py::make_tuple(num, den);
        },
        py::arg("coeffs"), py::arg("dnum"), py::arg("dden"), py::arg("margin") = 2);

    m.def(
        "run_job",
        [](const std::string& config_json) {
            JobConfig cfg = parse_job_config(ordered_json::parse(config_json));
            RunResult r = run(cfg);
            return py::make_tuple(r.exit_code, render_report(r.report));
        },
        py::arg("config_json"), "run a batch job from a JSON configuration string");
}
