#ifndef FFL_PADE_HPP
#define FFL_PADE_HPP

#include <optional>
#include <string>

#include "ffl/series.hpp"

namespace ffl {

template <typename K>
struct PadeResult {
    Polynomial<K> num; // R
    Polynomial<K> den; // Q, with Q(0) = 1
};

namespace detail {

// Solves the dd x dd system sum_{j=1..dd} P_{i-j} q_j = -P_i for
// i = dn+1..dn+dd by Gaussian elimination; returns the q_j or nullopt.
// Row i of the matrix is a shifted window of series coefficients, so the
// system is Hankel-structured; any exact solver is acceptable here.
template <typename K>
std::optional<std::vector<K>> solve_denominator(const TruncatedSeries<K>& p, unsigned dn, unsigned dd) {
    using ffl::is_zero;
    auto pc = [&](long i) { return i < 0 ? K(0) : p.coeff(static_cast<unsigned>(i)); };
    std::vector<std::vector<K>> m(dd, std::vector<K>(dd + 1, K(0)));
    for (unsigned r = 0; r < dd; ++r) {
        long i = static_cast<long>(dn) + 1 + r;
        for (unsigned j = 1; j <= dd; ++j) m[r][j - 1] = pc(i - static_cast<long>(j));
        m[r][dd] = -pc(i);
    }
    unsigned row = 0;
    std::vector<int> pivot_of_col(dd, -1);
    for (unsigned col = 0; col < dd && row < dd; ++col) {
        unsigned sel = row;
        while (sel < dd && is_zero(m[sel][col])) ++sel;
        if (sel == dd) continue;
        std::swap(m[sel], m[row]);
        K inv = K(1) / m[row][col];
        for (unsigned j = col; j <= dd; ++j) m[row][j] = m[row][j] * inv;
        for (unsigned r2 = 0; r2 < dd; ++r2) {
            if (r2 == row || is_zero(m[r2][col])) continue;
            K f = m[r2][col];
            for (unsigned j = col; j <= dd; ++j) m[r2][j] -= f * m[row][j];
        }
        pivot_of_col[col] = static_cast<int>(row);
        ++row;
    }
    // inconsistent?
    for (unsigned r = row; r < dd; ++r)
        if (!is_zero(m[r][dd])) return std::nullopt;
    // free variables pinned to zero
    std::vector<K> q(dd, K(0));
    for (unsigned col = 0; col < dd; ++col)
        if (pivot_of_col[col] >= 0) q[col] = m[static_cast<unsigned>(pivot_of_col[col])][dd];
    return q;
}

} // namespace detail

// Exact rational reconstruction: finds R, Q with deg R <= dnum, deg Q <= dden,
// Q(0) = 1 and R/Q = P through order N, preferring the smallest denominator
// degree and then the smallest numerator degree. The truncation order must
// leave at least `margin` coefficients beyond dnum + dden for verification.
template <typename K>
PadeResult<K> pade_reconstruct(const TruncatedSeries<K>& p, unsigned dnum, unsigned dden, unsigned margin = 2) {
    using ffl::is_zero;
    if (margin < 2) margin = 2;
    if (p.order() < dnum + dden + margin)
        throw Error(ErrorKind::ReconstructionFailed,
                    "truncation order " + std::to_string(p.order()) + " below bounds " + std::to_string(dnum) +
                        "+" + std::to_string(dden) + " plus margin " + std::to_string(margin) +
                        "; raise the truncation");
    const unsigned n = p.order();
    for (unsigned dd = 0; dd <= dden; ++dd) {
        for (unsigned dn = 0; dn <= dnum; ++dn) {
            auto q = detail::solve_denominator(p, dn, dd);
            if (!q) continue;
            std::vector<K> qc(dd + 1, K(0));
            qc[0] = K(1);
            for (unsigned j = 1; j <= dd; ++j) qc[j] = (*q)[j - 1];
            Polynomial<K> den(std::move(qc));
            TruncatedSeries<K> prod = p * TruncatedSeries<K>::from_poly(den, n);
            bool ok = true;
            for (unsigned i = dn + 1; i <= n && ok; ++i) ok = is_zero(prod.coeff(i));
            if (!ok) continue;
            std::vector<K> rc(prod.coeffs().begin(), prod.coeffs().begin() + dn + 1);
            return {Polynomial<K>(std::move(rc)), std::move(den)};
        }
    }
    throw Error(ErrorKind::ReconstructionFailed,
                "no rational form within degree bounds (" + std::to_string(dnum) + ", " + std::to_string(dden) +
                    "); raise the truncation or the bounds");
}

} // namespace ffl

#endif
