#include "ffl/characters.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ffl {

namespace {

uint64_t lcm_u64(uint64_t a, uint64_t b) { return a / std::gcd(a, b) * b; }

} // namespace

std::shared_ptr<const UnitGroup> UnitGroup::create(const FqPoly& modulus) {
    if (!modulus.is_monic() || modulus.degree() < 1)
        throw std::invalid_argument("unit group modulus must be monic of degree >= 1");
    auto G = std::shared_ptr<UnitGroup>(new UnitGroup());
    G->F_ = modulus.field();
    G->m_ = modulus;
    const Fq& F = *G->F_;
    const uint64_t q = F.order();
    const unsigned dm = static_cast<unsigned>(modulus.degree());
    uint64_t total = 1;
    for (unsigned i = 0; i < dm; ++i) total *= q;

    auto poly_of_code = [&](uint64_t code) {
        std::vector<uint64_t> c(dm, 0);
        for (unsigned i = 0; i < dm; ++i) {
            c[i] = code % q;
            code /= q;
        }
        return FqPoly(G->F_, std::move(c));
    };
    auto code_of_poly = [&](const FqPoly& f) {
        uint64_t code = 0;
        for (unsigned i = dm; i-- > 0;) code = code * q + f.coeff(i);
        return code;
    };

    // collect units and their orders by brute force
    std::vector<uint64_t> units;
    for (uint64_t code = 1; code < total; ++code) {
        FqPoly f = poly_of_code(code);
        if (gcd(f, modulus).degree() == 0) units.push_back(code);
    }
    G->order_ = units.size();

    const FqPoly one = FqPoly::one(G->F_);
    auto mulmod_codes = [&](uint64_t a, uint64_t b) {
        return code_of_poly((poly_of_code(a) * poly_of_code(b)) % modulus);
    };
    std::unordered_map<uint64_t, uint64_t> element_order;
    for (uint64_t u : units) {
        uint64_t ord = 1, cur = u;
        while (cur != 1) {
            cur = mulmod_codes(cur, u);
            ++ord;
        }
        element_order[u] = ord;
    }

    // greedy generator choice: largest order first (then smallest code), a
    // candidate is accepted only if the span grows by a full direct factor
    std::vector<uint64_t> sorted_units = units;
    std::sort(sorted_units.begin(), sorted_units.end(), [&](uint64_t a, uint64_t b) {
        if (element_order[a] != element_order[b]) return element_order[a] > element_order[b];
        return a < b;
    });

    std::unordered_map<uint64_t, std::vector<uint64_t>> dlog;
    dlog[1] = {};
    for (uint64_t cand : sorted_units) {
        if (dlog.size() == G->order_) break;
        if (dlog.count(cand)) continue;
        uint64_t ord = element_order[cand];
        // extend: span_new = { s * cand^j : s in span, 0 <= j < ord }; the
        // extension is kept only if all products are distinct
        std::unordered_map<uint64_t, std::vector<uint64_t>> extended;
        extended.reserve(dlog.size() * ord);
        bool direct = true;
        uint64_t power = 1;
        for (uint64_t j = 0; j < ord && direct; ++j) {
            if (j > 0) power = mulmod_codes(power, cand);
            for (const auto& [s, exps] : dlog) {
                uint64_t val = j == 0 ? s : mulmod_codes(s, power);
                std::vector<uint64_t> e = exps;
                e.push_back(j);
                if (!extended.emplace(val, std::move(e)).second) {
                    direct = false;
                    break;
                }
            }
        }
        if (!direct) continue;
        G->gens_.push_back(poly_of_code(cand));
        G->gen_orders_.push_back(ord);
        dlog = std::move(extended);
    }
    if (dlog.size() != G->order_)
        throw std::logic_error("unit group generator search did not cover the group");
    G->dlog_ = std::move(dlog);
    return G;
}

bool UnitGroup::is_unit(const FqPoly& f) const { return gcd(f % m_, m_).degree() == 0 && !(f % m_).is_zero(); }

uint64_t UnitGroup::residue_code(const FqPoly& f) const {
    FqPoly r = f % m_;
    const uint64_t q = F_->order();
    uint64_t code = 0;
    for (unsigned i = static_cast<unsigned>(m_.degree()); i-- > 0;) code = code * q + r.coeff(i);
    return code;
}

std::optional<std::vector<uint64_t>> UnitGroup::exponents_of(const FqPoly& f) const {
    auto it = dlog_.find(residue_code(f));
    if (it == dlog_.end()) return std::nullopt;
    return it->second;
}

DirichletCharacter::DirichletCharacter(UnitGroupRef group, unsigned order, std::vector<unsigned> exponents,
                                       InfinityBehavior infinity)
    : G_(std::move(group)), n_(order), e_(std::move(exponents)), inf_(infinity) {
    if (!G_) throw std::invalid_argument("character needs a unit group");
    if (n_ == 0) throw std::invalid_argument("character order must be positive");
    if (e_.size() != G_->generators().size())
        throw std::invalid_argument("one exponent per generator required");
    unsigned value_order = 1;
    for (size_t i = 0; i < e_.size(); ++i) {
        e_[i] %= n_;
        // zeta_n^{e_i} must have order dividing ord(g_i)
        uint64_t value_ord = n_ / std::gcd<uint64_t>(e_[i], n_);
        if (G_->generator_orders()[i] % value_ord != 0)
            throw std::invalid_argument("generator image order incompatible with the group");
        value_order = static_cast<unsigned>(lcm_u64(value_order, value_ord));
    }
    if (value_order != n_)
        throw std::invalid_argument("declared order " + std::to_string(n_) + " differs from value order " +
                                    std::to_string(value_order));
    if (!inf_.ramified) inf_.exponent %= n_;
    if (n_ == 1) inf_.exponent = 0;
}

bool DirichletCharacter::is_trivial() const { return n_ == 1; }

std::optional<unsigned> DirichletCharacter::eval_exponent(const FqPoly& f) const {
    auto exps = G_->exponents_of(f);
    if (!exps) return std::nullopt;
    uint64_t acc = 0;
    for (size_t i = 0; i < e_.size(); ++i) acc = (acc + static_cast<uint64_t>(e_[i]) * (*exps)[i]) % n_;
    return static_cast<unsigned>(acc);
}

Cyclotomic DirichletCharacter::eval(const FqPoly& f) const {
    auto j = eval_exponent(f);
    if (!j) return Cyclotomic(0L);
    return Cyclotomic::root_of_unity(n_, *j);
}

bool DirichletCharacter::is_ramified_at(const Place& v) const {
    if (v.is_infinity()) return inf_.ramified;
    return (modulus() % v.poly()).is_zero();
}

std::optional<unsigned> DirichletCharacter::exponent_at(const Place& v) const {
    if (v.is_infinity()) {
        if (inf_.ramified) return std::nullopt;
        return inf_.exponent;
    }
    return eval_exponent(v.poly());
}

Cyclotomic DirichletCharacter::value_at(const Place& v) const {
    auto j = exponent_at(v);
    if (!j) return Cyclotomic(0L);
    return Cyclotomic::root_of_unity(n_, *j);
}

bool DirichletCharacter::is_primitive() const {
    const FqPoly& m = modulus();
    const FqRef& F = G_->field();
    const unsigned dm = static_cast<unsigned>(m.degree());
    const uint64_t q = F->order();
    // proper monic divisors m' of m have degree < deg m; chi must be
    // nontrivial on each kernel of (F_q[t]/m)^x -> (F_q[t]/m')^x
    for (unsigned dd = 0; dd < dm; ++dd) {
        uint64_t count = 1;
        for (unsigned i = 0; i < dd; ++i) count *= q;
        for (uint64_t code = 0; code < count; ++code) {
            FqPoly mp = FqPoly::monic_from_code(F, dd, code);
            if (!mp.divides(m)) continue;
            // kernel: units u = 1 mod m'; chi must be nontrivial on it
            bool nontrivial_on_kernel = false;
            uint64_t residues = 1;
            for (unsigned i = 0; i + dd < dm; ++i) residues *= q;
            for (uint64_t rc = 0; rc < residues && !nontrivial_on_kernel; ++rc) {
                // u = 1 + m' * h, deg h < deg m - deg m'
                uint64_t c = rc;
                std::vector<uint64_t> hc(dm - dd, 0);
                for (unsigned i = 0; i < dm - dd; ++i) {
                    hc[i] = c % q;
                    c /= q;
                }
                FqPoly u = FqPoly::one(F) + mp * FqPoly(F, std::move(hc));
                auto j = eval_exponent(u);
                if (j && *j != 0) nontrivial_on_kernel = true;
            }
            if (!nontrivial_on_kernel) return false;
        }
    }
    return true;
}

DirichletCharacter DirichletCharacter::conjugate(const GaloisAutomorphism& sigma) const {
    if (sigma.conductor() != n_)
        throw Error(ErrorKind::InvalidAutomorphism, "automorphism conductor must equal the character order");
    std::vector<unsigned> e2(e_.size());
    for (size_t i = 0; i < e_.size(); ++i)
        e2[i] = static_cast<unsigned>((static_cast<uint64_t>(e_[i]) * sigma.exponent()) % n_);
    InfinityBehavior inf2 = inf_;
    if (!inf2.ramified)
        inf2.exponent = static_cast<unsigned>((static_cast<uint64_t>(inf2.exponent) * sigma.exponent()) % n_);
    return DirichletCharacter(G_, n_, std::move(e2), inf2);
}

DirichletCharacter DirichletCharacter::power(unsigned k) const {
    std::vector<unsigned> e2(e_.size());
    for (size_t i = 0; i < e_.size(); ++i) e2[i] = static_cast<unsigned>((static_cast<uint64_t>(e_[i]) * k) % n_);
    // order of chi^k
    unsigned n2 = 1;
    for (unsigned x : e2) n2 = static_cast<unsigned>(lcm_u64(n2, n_ / std::gcd<uint64_t>(x, n_)));
    std::vector<unsigned> e3(e2.size());
    for (size_t i = 0; i < e2.size(); ++i) e3[i] = static_cast<unsigned>((static_cast<uint64_t>(e2[i]) * n2 / n_) % n2);
    InfinityBehavior inf2 = inf_;
    if (!inf2.ramified)
        inf2.exponent = static_cast<unsigned>((static_cast<uint64_t>(inf2.exponent) * k) % n_ * n2 / n_ % n2);
    return DirichletCharacter(G_, n2, std::move(e3), inf2);
}

bool DirichletCharacter::operator==(const DirichletCharacter& rhs) const {
    return G_->modulus() == rhs.G_->modulus() && n_ == rhs.n_ && e_ == rhs.e_ && inf_ == rhs.inf_;
}

std::string DirichletCharacter::to_string() const {
    std::ostringstream os;
    os << "chi(mod " << modulus().to_string() << ", order " << n_ << ", exps [";
    for (size_t i = 0; i < e_.size(); ++i) {
        if (i) os << ",";
        os << e_[i];
    }
    os << "])";
    return os.str();
}

std::vector<DirichletCharacter> all_characters(const UnitGroupRef& group) {
    const auto& orders = group->generator_orders();
    std::vector<DirichletCharacter> out;
    std::vector<uint64_t> x(orders.size(), 0);
    while (true) {
        // chi(g_i) = zeta_{d_i}^{x_i}; exact order n = lcm of value orders,
        // and zeta_{d_i}^{x_i} = zeta_n^{x_i n / d_i} (the division is exact)
        uint64_t n = 1;
        for (size_t i = 0; i < x.size(); ++i) n = lcm_u64(n, orders[i] / std::gcd(x[i], orders[i]));
        std::vector<unsigned> e(x.size());
        for (size_t i = 0; i < x.size(); ++i)
            e[i] = static_cast<unsigned>(x[i] * n / orders[i] % n);
        out.emplace_back(group, static_cast<unsigned>(n), std::move(e));
        // odometer
        size_t i = 0;
        for (; i < x.size(); ++i) {
            if (++x[i] < orders[i]) break;
            x[i] = 0;
        }
        if (i == x.size()) break;
    }
    return out;
}

} // namespace ffl
