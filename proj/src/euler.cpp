#include "ffl/euler.hpp"

namespace ffl {

EulerFactor euler_factor_trivial(const Place& v) { return {v, {Cyclotomic(1), Cyclotomic(-1)}}; }

EulerFactor euler_factor_curve(const ReductionData& red) {
    switch (red.type) {
        case ReductionType::Good:
            return {red.place,
                    {Cyclotomic(1), Cyclotomic(-red.a_v()), Cyclotomic(static_cast<long>(red.norm))}};
        case ReductionType::SplitMultiplicative: return {red.place, {Cyclotomic(1), Cyclotomic(-1)}};
        case ReductionType::NonsplitMultiplicative: return {red.place, {Cyclotomic(1), Cyclotomic(1)}};
        case ReductionType::Additive: return {red.place, {Cyclotomic(1)}};
    }
    throw std::logic_error("unreachable");
}

EulerFactor euler_factor_character(const DirichletCharacter& chi, const Place& v) {
    auto j = chi.exponent_at(v);
    if (!j) return {v, {Cyclotomic(1)}};
    return {v, {Cyclotomic(1), -Cyclotomic::root_of_unity(chi.order(), *j)}};
}

namespace {

// The trivial character is the trivial representation: unramified everywhere
// (its stated modulus is presentation only), so it is exempt from the
// primitivity requirement and never removes a factor.
void require_primitive(const DirichletCharacter& chi) {
    if (!chi.is_trivial() && !chi.is_primitive())
        throw Error(ErrorKind::ImprimitiveCharacter, "twisting needs a primitive character");
}

} // namespace

EulerFactor twisted_euler_factor(const ReductionData& red, const DirichletCharacter& chi) {
    require_primitive(chi);
    if (chi.is_trivial()) return euler_factor_curve(red);
    if (chi.is_ramified_at(red.place)) {
        if (red.type != ReductionType::Good)
            throw Error(ErrorKind::UnsupportedRamificationOverlap,
                        "character ramified at a bad place: " + red.place.to_string());
        return {red.place, {Cyclotomic(1)}};
    }
    EulerFactor base = euler_factor_curve(red);
    auto j = chi.exponent_at(red.place);
    Cyclotomic u = Cyclotomic::root_of_unity(chi.order(), static_cast<long>(*j));
    Cyclotomic upow(1);
    for (size_t i = 1; i < base.coeffs.size(); ++i) {
        upow = upow * u;
        base.coeffs[i] = base.coeffs[i] * upow;
    }
    return base;
}

EulerFactor twisted_euler_factor(const DirichletCharacter& chi, const Place& v) {
    require_primitive(chi);
    if (chi.is_trivial()) return euler_factor_trivial(v);
    return euler_factor_character(chi, v);
}

} // namespace ffl
