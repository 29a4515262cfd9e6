#pragma once

#include <cstdint>
#include <vector>

#include "kps/field.hpp"
#include "kps/rng.hpp"

namespace kps {

/// The curve family y^2 = x^q + x + a over GF(q^2), a in GF(q), q odd.
/// Genus (q-1)/2; 2q^2 affine rational points plus one point at infinity.
struct Curve {
    FieldPtr ext;        // GF(q^2) as a quadratic tower over GF(q)
    elt a = 0;           // base-field index of the curve parameter
    std::uint64_t q() const { return ext->base_field()->size(); }
    std::uint64_t genus() const { return (q() - 1) / 2; }
    // x^q + x + a as an element of GF(q^2).
    elt rhs(elt x) const;
};

Curve make_curve(FieldPtr tower, elt a);

struct CurvePoint {
    elt x = 0;
    elt y = 0;
    bool infinity = false;

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

bool on_curve(const Curve& c, const CurvePoint& p);
// All 2q^2 affine points followed by the infinity marker.
std::vector<CurvePoint> curve_points(const Curve& c);
// Deterministic ID -> point map: y = (-1)^branch * canonical sqrt of rhs(x).
CurvePoint id_to_point(const Curve& c, elt x, unsigned branch);

/// Monomial basis of the Riemann-Roch space L(uQ): x^{h1} y^{h2} with
/// h2 in {0,1} and pole order 2*h1 + q*h2 <= u, sorted by pole order.
struct RRBasis {
    unsigned u = 0;
    std::vector<std::pair<unsigned, unsigned>> monomials;  // (h1, h2)
    std::size_t size() const { return monomials.size(); }
};

RRBasis rr_basis(std::uint64_t q, unsigned u);   // requires u >= q-2
// Evaluate sum c_m x^{h1} y^{h2} at an affine point; throws at infinity.
elt evaluate_rr(const Curve& c, const RRBasis& basis,
                std::span<const elt> coeffs, const CurvePoint& p);
std::vector<elt> rr_basis_at(const Curve& c, const RRBasis& basis,
                             const CurvePoint& p);

struct HkpsMaster {
    Curve curve;
    unsigned w = 0;
    RRBasis basis;        // basis of L((w+q-1)Q), size w + (q+1)/2
    std::vector<elt> a;   // symmetric m x m over GF(q^2), row-major
};

struct HkpsShare {
    Curve curve;
    unsigned w = 0;
    RRBasis basis;
    CurvePoint owner;
    std::vector<elt> c;   // length w + (q+1)/2
};

HkpsMaster hkps_setup(Curve curve, unsigned w, ElementStream& rng);
HkpsShare hkps_share(const HkpsMaster& master, const CurvePoint& W);
elt hkps_key(const HkpsShare& share, const CurvePoint& peer);
elt hkps_eval(const HkpsMaster& master, const CurvePoint& W1, const CurvePoint& W2);

struct HkpsStorage {
    double actual_bits;   // w + (q+1)/2 elements of GF(q^2)
    double paper_bits;    // 2(w + (q-1)/2) log2 q as printed in the source
};
HkpsStorage hkps_storage_bits(std::uint64_t q, unsigned w);

}  // namespace kps
