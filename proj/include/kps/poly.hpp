#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kps/field.hpp"

namespace kps {

/// Dense univariate polynomial over a Field, coefficients lowest degree
/// first, normalized (no trailing zeros; the zero polynomial has an empty
/// coefficient vector).
struct Poly {
    FieldPtr f;
    std::vector<elt> c;

    static Poly zero(FieldPtr f) { return Poly{std::move(f), {}}; }
    static Poly constant(FieldPtr f, elt v);
    static Poly x(FieldPtr f);
    static Poly from_coeffs(FieldPtr f, std::vector<elt> coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_monic() const { return !c.empty() && c.back() == f->one(); }
    elt coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    elt eval(elt at) const;

    void normalize();

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);

    Poly scaled(elt s) const;
    Poly monic() const;
    Poly pow(unsigned e) const;
};

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& m);
Poly poly_gcd(Poly a, Poly b);                      // monic gcd
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly poly_powmod(const Poly& a, std::uint64_t e, const Poly& m);

/// Deterministic Rabin-style irreducibility test over the coefficient field.
/// Throws on constant input.
bool is_irreducible(const Poly& f);

struct IrreducibleCount {
    std::int64_t exact;             // Moebius/necklace formula
    std::int64_t paper_lower_bound; // (q^t - sum_{d|t, d<t} q^d) / t, floored
};
IrreducibleCount count_irreducibles(std::uint64_t q, unsigned t);

/// The first `count` monic irreducibles of degree t over `field`, in
/// canonical order (coefficient vectors read as base-q integers).
std::vector<Poly> enumerate_irreducibles(const FieldPtr& field, unsigned t,
                                         std::uint64_t count);

}  // namespace kps
