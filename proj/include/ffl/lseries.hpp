#ifndef FFL_LSERIES_HPP
#define FFL_LSERIES_HPP

#include <functional>
#include <string>

#include "ffl/euler.hpp"
#include "ffl/pade.hpp"
#include "ffl/series.hpp"

namespace ffl {

// Which places went into a product; two series are comparable only when these
// agree (same q, same truncation, same place set).
struct PlaceSetDescriptor {
    uint64_t q = 0;
    unsigned max_finite_degree = 0;
    bool include_infinity = false;

    bool operator==(const PlaceSetDescriptor& o) const {
        return q == o.q && max_finite_degree == o.max_finite_degree && include_infinity == o.include_infinity;
    }
};

// Truncated formal L-series plus, after reconstruction, an exact rational
// form that re-expands to every computed coefficient.
struct LSeries {
    FqRef field;
    unsigned N = 0;
    TruncatedSeries<Cyclotomic> series{0};
    PlaceSetDescriptor places;
    std::string label;
    std::optional<PadeResult<Cyclotomic>> rational_form;
};

// Incremental product of inverse local factors: folding a factor divides the
// accumulated series by the factor polynomial in T^{deg v}.
class SeriesProduct {
  public:
    explicit SeriesProduct(unsigned N) : s_(TruncatedSeries<Cyclotomic>::one(N)) {}

    void fold(const std::vector<Cyclotomic>& factor_coeffs, unsigned place_degree);
    void fold(const EulerFactor& f) { fold(f.coeffs, f.place.degree()); }
    const TruncatedSeries<Cyclotomic>& series() const { return s_; }

  private:
    TruncatedSeries<Cyclotomic> s_;
};

// Product over the supplied factors, which must cover every finite place of
// degree <= N exactly once (and infinity iff the flag is set); the factors
// are folded in (degree, code) order regardless of input order.
LSeries assemble_l_series(const std::vector<EulerFactor>& factors, const FqRef& field, unsigned N,
                          bool include_infinity);

// Coefficients of 1/factor(X) through X^terms.
struct LocalExpansion {
    Place place;
    std::vector<Cyclotomic> a; // a[n] = X^n coefficient of the inverse factor
};
LocalExpansion local_expansion(const EulerFactor& f, unsigned terms);

// sum over effective divisors D of degree m of prod_v a_{v, n_v}: the divisor
// rearrangement of the product, evaluated literally divisor by divisor. Every
// place of degree <= m must be present in `locals`.
Cyclotomic divisor_coefficient(const std::vector<LocalExpansion>& locals, unsigned m, const FqRef& field,
                               bool include_infinity);

// s_n = sum over places v with deg v | n of deg v * (power sum of the inverse
// roots of the factor at exponent n/deg v), via Newton's identities. Equals
// the T^n coefficient of T d/dT log of the assembled series.
Cyclotomic trace_sum(const std::vector<EulerFactor>& factors, unsigned n);

// Rational reconstruction with re-expansion verification against all N+1
// computed coefficients.
LSeries reconstruct(LSeries series, unsigned dnum, unsigned dden, unsigned margin = 2);

// A_j = (T d/dT)^j (R/Q) at T = 1/q for j <= k, plus the vanishing order at
// the central point; a pole there is reported (with its order), never a value.
struct LValueReport {
    bool pole = false;
    unsigned pole_order = 0;
    unsigned vanishing_order = 0;
    std::vector<Cyclotomic> values; // A_0..A_k, empty when pole
};
LValueReport evaluate_leading(const LSeries& series, unsigned k);

// L of a direct sum is the coefficient-wise product; parts must share q, N
// and place set (IncomparableSeries otherwise).
LSeries direct_sum_l(const std::vector<LSeries>& parts);

// --- pipelines over full place sets ---

LSeries zeta_series(const FqRef& field, unsigned N, bool include_infinity);
LSeries dirichlet_series(const DirichletCharacter& chi, unsigned N, bool include_infinity);

// Shared expensive local data for one curve: the reduction scan up to degree
// N plus, optionally, the reduction at infinity.
class CurveLocalData {
  public:
    CurveLocalData(EllipticSurfaceModel model, unsigned N, bool include_infinity,
                   const ScanOptions& opts = {});

    const EllipticSurfaceModel& model() const { return model_; }
    unsigned N() const { return N_; }
    bool include_infinity() const { return include_infinity_; }
    const std::vector<PlaceRecord>& records() const { return records_; }
    const std::optional<ReductionData>& infinity() const { return infinity_; }

    ReductionData record_to_reduction(const PlaceRecord& rec) const;

  private:
    EllipticSurfaceModel model_;
    unsigned N_;
    bool include_infinity_;
    std::vector<PlaceRecord> records_;
    std::optional<ReductionData> infinity_;
};

LSeries curve_series(const CurveLocalData& data);
LSeries twisted_series(const CurveLocalData& data, const DirichletCharacter& chi);

// --- equivariance ---

struct ReconstructionBounds {
    std::optional<unsigned> dnum;
    std::optional<unsigned> dden;
    unsigned margin = 2;
};

// Default degree bounds: dden = 2 always; dnum = deg m for character series,
// 2 deg Delta + 4 for curve twists.
ReconstructionBounds default_bounds(const std::optional<EllipticSurfaceModel>& curve,
                                    const std::optional<DirichletCharacter>& chi);

struct EquivarianceReport {
    unsigned sigma = 1;
    bool series_ok = true;
    std::optional<unsigned> first_series_mismatch;
    bool local_ok = true;
    std::optional<std::string> first_local_mismatch;
    bool values_checked = false;
    bool values_ok = true;
    std::optional<unsigned> first_value_mismatch;

    bool pass() const { return series_ok && local_ok && values_ok; }
};

// Verifies, exactly: (a) sigma applied coefficient-wise to L(rho (x) chi)
// equals L(rho (x) chi^sigma) through N; (b) the same per local factor at
// every place; (c) sigma(A_j(chi)) = A_j(chi^sigma) for j <= k when both
// reconstructions succeed. Both sides are assembled independently.
EquivarianceReport equivariance_check(const std::optional<CurveLocalData>& curve, const DirichletCharacter& chi,
                                      const GaloisAutomorphism& sigma, unsigned N, unsigned k,
                                      bool include_infinity, const ReconstructionBounds& bounds = {});

// Raises IncomparableSeries unless the two series share q, N and place set;
// returns the first index where sigma(lhs) and rhs differ.
std::optional<unsigned> first_series_difference(const LSeries& lhs_conjugated, const GaloisAutomorphism& sigma,
                                                const LSeries& rhs);

} // namespace ffl

#endif
