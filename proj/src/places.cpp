#include "ffl/places.hpp"

#include <sstream>
#include <stdexcept>

namespace ffl {

Place Place::finite(FqPoly pi) {
    if (!pi.is_monic() || pi.degree() < 1)
        throw std::invalid_argument("a finite place needs a monic polynomial of degree >= 1");
    if (!is_irreducible(pi)) throw std::invalid_argument("place polynomial is reducible");
    FqRef f = pi.field();
    return Place(std::move(f), std::move(pi), false);
}

Place Place::finite_unchecked(FqPoly pi) {
    FqRef f = pi.field();
    return Place(std::move(f), std::move(pi), false);
}

Place Place::infinity(FqRef field) { return Place(std::move(field), FqPoly(), true); }

const FqPoly& Place::poly() const {
    if (infinite_) throw std::logic_error("the infinite place has no polynomial");
    return pi_;
}

uint64_t Place::norm() const {
    uint64_t n = 1;
    for (unsigned i = 0; i < degree(); ++i) n *= F_->order();
    return n;
}

bool Place::operator==(const Place& rhs) const {
    if (infinite_ != rhs.infinite_) return false;
    if (infinite_) return F_->same_field(*rhs.F_);
    return pi_ == rhs.pi_;
}

bool Place::operator<(const Place& rhs) const {
    if (degree() != rhs.degree()) return degree() < rhs.degree();
    if (infinite_ != rhs.infinite_) return !infinite_; // infinity last within its degree
    if (infinite_) return false;
    return FqPoly::compare(pi_, rhs.pi_) < 0;
}

std::string Place::to_string() const { return infinite_ ? "infinity" : pi_.to_string(); }

FqRef residue_field(const Place& place) {
    const Fq& base = *place.field();
    return Fq::create(base.characteristic(), base.degree() * place.degree());
}

uint64_t residue_root(const Place& place, const FqRef& big) {
    const FqPoly& pi = place.poly();
    SubfieldEmbedding emb(place.field(), big);
    // smallest-code root of pi in the big field
    const uint64_t order = big->order();
    big->ensure_log_tables();
    if (order > 50000000ull) throw std::invalid_argument("residue field too large for root search");
    for (uint64_t cand = 0; cand < order; ++cand)
        if (pi.eval_embedded(emb, cand) == 0) return cand;
    throw std::logic_error("no root of the place polynomial in its residue field");
}

FqElem residue_map(const Place& place, const FqPoly& f) {
    if (place.is_infinity()) throw std::invalid_argument("residue at infinity goes through the model change");
    if (!f.field()->same_field(*place.field())) throw std::invalid_argument("function over the wrong field");
    FqRef big = residue_field(place);
    SubfieldEmbedding emb(place.field(), big);
    uint64_t theta = residue_root(place, big);
    FqPoly r = f % place.poly();
    return FqElem{big, r.eval_embedded(emb, theta)};
}

FqElem residue_map(const Place& place, const FqPoly& f_num, const FqPoly& f_den) {
    if (place.is_infinity()) throw std::invalid_argument("residue at infinity goes through the model change");
    if ((f_den % place.poly()).is_zero())
        throw Error(ErrorKind::BadReductionOfFunction, "denominator vanishes at the place");
    FqElem num = residue_map(place, f_num);
    FqElem den = residue_map(place, f_den);
    return FqElem{num.field, num.field->mul(num.code, num.field->inv(den.code))};
}

void EffectiveDivisor::add(const Place& v, unsigned mult) {
    if (mult == 0) return;
    terms_[v] += mult;
}

unsigned EffectiveDivisor::multiplicity(const Place& v) const {
    auto it = terms_.find(v);
    return it == terms_.end() ? 0 : it->second;
}

unsigned EffectiveDivisor::degree() const {
    unsigned d = 0;
    for (const auto& [v, m] : terms_) d += v.degree() * m;
    return d;
}

std::string EffectiveDivisor::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, m] : terms_) {
        if (!first) os << " + ";
        if (m != 1) os << m << "*";
        os << "[" << v.to_string() << "]";
        first = false;
    }
    return os.str();
}

std::vector<Place> places_up_to(const FqRef& field, unsigned max_degree, bool include_infinity) {
    std::vector<Place> out;
    for (unsigned d = 1; d <= max_degree; ++d) {
        for (FqPoly& pi : monic_irreducibles(field, d)) out.push_back(Place::finite_unchecked(std::move(pi)));
        if (d == 1 && include_infinity) out.push_back(Place::infinity(field));
    }
    return out;
}

namespace {

void enumerate_rec(const std::vector<Place>& places, size_t idx, unsigned remaining, EffectiveDivisor& current,
                   std::vector<EffectiveDivisor>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    if (idx == places.size()) return;
    const Place& v = places[idx];
    unsigned d = v.degree();
    // skip places that cannot fit anymore
    if (d > remaining) {
        // places are sorted by degree, so nothing further fits either
        return;
    }
    for (unsigned mult = 0; mult * d <= remaining; ++mult) {
        EffectiveDivisor next = current;
        next.add(v, mult);
        enumerate_rec(places, idx + 1, remaining - mult * d, next, out);
    }
}

} // namespace

std::vector<EffectiveDivisor> enumerate_effective_divisors(const FqRef& field, unsigned m, bool include_infinity) {
    std::vector<EffectiveDivisor> out;
    if (m == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<Place> places = places_up_to(field, m, include_infinity);
    EffectiveDivisor cur;
    enumerate_rec(places, 0, m, cur, out);
    return out;
}

} // namespace ffl
