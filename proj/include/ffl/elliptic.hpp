#ifndef FFL_ELLIPTIC_HPP
#define FFL_ELLIPTIC_HPP

#include <optional>

#include "ffl/places.hpp"

namespace ffl {

enum class ReductionType { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };
const char* reduction_type_name(ReductionType t);

// y^2 = x^3 + A(t) x + B(t) over F_q(t), p >= 5. Discriminant and the c4, c6
// covariants are cached at validation time.
struct EllipticSurfaceModel {
    FqRef field;
    FqPoly A, B;
    FqPoly delta, c4, c6;
};

// SingularModel if delta = 0, UnsupportedCharacteristic if p < 5.
EllipticSurfaceModel validate_model(const FqRef& field, FqPoly A, FqPoly B);

struct ReductionData {
    Place place;
    ReductionType type;
    std::optional<int64_t> trace; // a_v; for Good filled in by point counting
    uint64_t norm = 0;            // q_v
    std::optional<uint64_t> points;

    int64_t a_v() const { return trace.value(); }
};

bool is_minimal_at(const EllipticSurfaceModel& model, const Place& v);
// Rescales (A, B) <- (A/pi^4, B/pi^6) while possible; finite places only.
EllipticSurfaceModel minimal_model_at(const EllipticSurfaceModel& model, const Place& v);

// Classification at a finite place of a locally minimal model (NotMinimal
// otherwise): Good iff ord(delta) = 0; multiplicative iff ord(c4) = 0, split
// iff -c6 is a nonzero square in the residue field; else Additive. The Good
// trace is left for point counting.
ReductionData reduction_type(const EllipticSurfaceModel& model, const Place& v);

// Naive fiber count over the residue field: for each x, 1 + legendre(x^3 +
// A x + B) points, plus the point at infinity. BadReductionPlace unless the
// model has good reduction at v.
std::pair<uint64_t, int64_t> point_count(const EllipticSurfaceModel& model, const Place& v);

// Substitute t = 1/s and clear denominators minimally: the model
// (s^{4k} A(1/s), s^{6k} B(1/s)) over F_q[s]. Reduction at the infinite place
// of F_q(t) is reduction of this model at s = 0.
EllipticSurfaceModel infinite_place_model(const EllipticSurfaceModel& model);

// Full local data at any place: minimalizes (switching models at infinity),
// classifies, and fills the good trace using the fast counting path.
ReductionData reduction_at(const EllipticSurfaceModel& model, const Place& v);

// --- bulk scan ---

// Compact per-place result of a scan; pi_code identifies the monic irreducible
// via FqPoly::monic_from_code at the given degree.
struct PlaceRecord {
    uint64_t pi_code = 0;
    uint32_t degree = 0;
    ReductionType type = ReductionType::Good;
    int64_t trace = 0;
};

struct ScanOptions {
    unsigned threads = 0; // 0 = hardware concurrency
};

// Frobenius traces at every finite place of degree <= max_degree, sorted by
// (degree, pi_code). Walks Frobenius orbits of the residue fields directly,
// so no irreducibility testing is involved; fibers over roots of delta go
// through the careful minimal-model path.
std::vector<PlaceRecord> reduction_scan(const EllipticSurfaceModel& model, unsigned max_degree,
                                        const ScanOptions& opts = {});

// --- counting engine (exact) ---

// #E(F_q) for y^2 = x^3 + ax + b, 4a^3 + 27b^2 != 0; enumeration.
uint64_t naive_curve_order(const Fq& field, uint64_t a, uint64_t b);
// #E(F_q) by baby-step/giant-step on the Hasse interval, alternating with the
// quadratic twist until the candidate order is unique. Exact; q must be odd.
uint64_t bsgs_curve_order(const Fq& field, uint64_t a, uint64_t b);
// Dispatches naive vs BSGS on the field size; returns a = q + 1 - #E.
int64_t fiber_trace(const Fq& field, uint64_t a, uint64_t b);

} // namespace ffl

#endif
