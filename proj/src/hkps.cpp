#include "kps/hkps.hpp"

#include <cmath>
#include <stdexcept>

#include "kps/detail/tensor.hpp"

namespace kps {

Curve make_curve(FieldPtr tower, elt a) {
    if (!tower || !tower->has_base() || tower->ext_degree() != 2)
        throw std::invalid_argument("curve requires a quadratic tower GF(q^2)/GF(q)");
    if (tower->characteristic() == 2)
        throw std::invalid_argument("curve family requires odd q");
    if (a >= tower->base_field()->size())
        throw std::invalid_argument("curve parameter a must lie in the base field");
    return Curve{std::move(tower), a};
}

elt Curve::rhs(elt x) const {
    // x^q + x + a; the trace lands in GF(q), so does the sum.
    const elt tr = ext->trace(x);
    return ext->add(ext->embed(tr), ext->embed(a));
}

bool on_curve(const Curve& c, const CurvePoint& p) {
    if (p.infinity) return true;
    return c.ext->mul(p.y, p.y) == c.rhs(p.x);
}

std::vector<CurvePoint> curve_points(const Curve& c) {
    const auto& f = c.ext;
    std::vector<CurvePoint> pts;
    pts.reserve(2 * c.q() * c.q() + 1);
    for (elt x = 0; x < f->size(); ++x) {
        const elt t = f->to_base(c.rhs(x));
        const elt y = f->sqrt_of_base(t);
        pts.push_back({x, y, false});
        const elt ny = f->neg(y);
        if (ny != y) pts.push_back({x, ny, false});
    }
    pts.push_back({0, 0, true});
    return pts;
}

CurvePoint id_to_point(const Curve& c, elt x, unsigned branch) {
    const auto& f = c.ext;
    const elt y0 = f->sqrt_of_base(f->to_base(c.rhs(x)));
    return {x, branch % 2 ? f->neg(y0) : y0, false};
}

RRBasis rr_basis(std::uint64_t q, unsigned u) {
    if (q < 3 || q % 2 == 0) throw std::invalid_argument("q must be an odd prime power >= 3");
    if (u + 2 < q)
        throw std::invalid_argument("dimension formula requires u >= 2g-1 = q-2");
    RRBasis b{u, {}};
    // h2 stays below 2: y^2 reduces to a polynomial in x.  Pole orders 2h1
    // and 2h1+q never collide (q odd), so sorting by pole order is total.
    for (unsigned pole = 0; pole <= u; ++pole) {
        if (pole % 2 == 0) b.monomials.emplace_back(pole / 2, 0);
        else if (pole >= q) b.monomials.emplace_back((pole - q) / 2, 1);
    }
    return b;
}

std::vector<elt> rr_basis_at(const Curve& c, const RRBasis& basis,
                             const CurvePoint& p) {
    if (p.infinity) throw std::invalid_argument("cannot evaluate at the infinity point");
    const auto& f = c.ext;
    std::vector<elt> v(basis.size());
    for (std::size_t m = 0; m < basis.size(); ++m) {
        auto [h1, h2] = basis.monomials[m];
        elt val = f->pow(p.x, h1);
        if (h2) val = f->mul(val, p.y);
        v[m] = val;
    }
    return v;
}

elt evaluate_rr(const Curve& c, const RRBasis& basis,
                std::span<const elt> coeffs, const CurvePoint& p) {
    if (coeffs.size() != basis.size())
        throw std::invalid_argument("coefficient count does not match basis size");
    const auto& f = c.ext;
    auto v = rr_basis_at(c, basis, p);
    elt acc = 0;
    for (std::size_t m = 0; m < basis.size(); ++m)
        acc = f->add(acc, f->mul(coeffs[m], v[m]));
    return acc;
}

HkpsMaster hkps_setup(Curve curve, unsigned w, ElementStream& rng) {
    const std::uint64_t q = curve.q();
    if (!rng.field()->same(*curve.ext)) throw std::invalid_argument("rng field mismatch");
    const std::uint64_t m = w + (q + 1) / 2;
    // Stay inside the regime where the dual-distance argument applies.
    if (w + m > 2 * q * q)
        throw std::invalid_argument("w too large for the evaluation-matrix security argument");
    HkpsMaster out{std::move(curve), w, rr_basis(q, w + static_cast<unsigned>(q) - 1), {}};
    if (out.basis.size() != m) throw std::logic_error("basis size mismatch");
    out.a = detail::draw_symmetric_tensor(static_cast<unsigned>(m), 2, rng);
    return out;
}

HkpsShare hkps_share(const HkpsMaster& master, const CurvePoint& W) {
    if (W.infinity || !on_curve(master.curve, W))
        throw std::invalid_argument("owner ID is not an affine point of the curve");
    const auto& f = master.curve.ext;
    const std::size_t m = master.basis.size();
    auto v = rr_basis_at(master.curve, master.basis, W);
    HkpsShare s{master.curve, master.w, master.basis, W, std::vector<elt>(m, 0)};
    for (std::size_t j = 0; j < m; ++j) {
        elt acc = 0;
        for (std::size_t i = 0; i < m; ++i)
            acc = f->add(acc, f->mul(master.a[i + j * m], v[i]));
        s.c[j] = acc;
    }
    return s;
}

elt hkps_key(const HkpsShare& share, const CurvePoint& peer) {
    if (peer == share.owner) throw std::invalid_argument("self-pairing has no shared key");
    if (peer.infinity || !on_curve(share.curve, peer))
        throw std::invalid_argument("peer ID is not an affine point of the curve");
    const auto& f = share.curve.ext;
    auto v = rr_basis_at(share.curve, share.basis, peer);
    elt acc = 0;
    for (std::size_t j = 0; j < share.basis.size(); ++j)
        acc = f->add(acc, f->mul(share.c[j], v[j]));
    return acc;
}

elt hkps_eval(const HkpsMaster& master, const CurvePoint& W1, const CurvePoint& W2) {
    const auto& f = master.curve.ext;
    const std::size_t m = master.basis.size();
    auto v1 = rr_basis_at(master.curve, master.basis, W1);
    auto v2 = rr_basis_at(master.curve, master.basis, W2);
    elt acc = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            acc = f->add(acc, f->mul(master.a[i + j * m], f->mul(v1[i], v2[j])));
    return acc;
}

HkpsStorage hkps_storage_bits(std::uint64_t q, unsigned w) {
    const double lg = std::log2(static_cast<double>(q));
    const double m = w + (q + 1) / 2.0;
    // Actual layout: m coefficients of GF(q^2), i.e. 2m log2 q bits; the
    // source's printed figure is off by one element.
    return {2 * m * lg, 2 * (w + (q - 1) / 2.0) * lg};
}

}  // namespace kps
