#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kps {

using elt = std::uint64_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// A finite field GF(p^k), built either directly over the prime field or as
/// a degree-2 extension of another Field (the GF(q) < GF(q^2) tower used by
/// the curve schemes).  Elements are identified by their canonical index:
/// the coefficient vector of the element, constant term first, read as a
/// base-|base| integer.  This single total order drives canonical modulus
/// selection, irreducible enumeration and canonical square roots.
class Field : public std::enable_shared_from_this<Field> {
public:
    static FieldPtr prime(std::uint64_t p);
    // Extension of degree k over GF(p).  Without a modulus the canonically
    // smallest monic irreducible of degree k is selected.  The modulus is
    // given as coefficient indices over GF(p), lowest degree first,
    // length k+1, monic.
    static FieldPtr extension(std::uint64_t p, unsigned k,
                              std::optional<std::vector<elt>> modulus = std::nullopt);
    // Degree-2 extension over an explicit base field (the tower GF(q^2)/GF(q)).
    static FieldPtr quadratic(FieldPtr base,
                              std::optional<std::vector<elt>> modulus = std::nullopt);
    // GF(q) with q = p^k factored automatically, canonical modulus.
    static FieldPtr gf(std::uint64_t q);

    std::uint64_t characteristic() const { return p_; }
    std::uint64_t size() const { return q_; }
    unsigned degree() const { return deg_; }          // over the prime field
    unsigned ext_degree() const { return m_; }        // over base_ (1 for prime fields)
    const FieldPtr& base_field() const { return base_; }
    bool has_base() const { return base_ != nullptr; }
    // Modulus over base_ as coefficient indices, lowest first; empty for prime fields.
    const std::vector<elt>& modulus() const { return mod_; }

    std::string spec() const;                         // canonical text form, e.g. "3^2[1 0 1]"
    bool same(const Field& other) const;

    elt zero() const { return 0; }
    elt one() const { return 1; }
    elt gen() const;                                  // the element "x" of an extension

    elt add(elt a, elt b) const;
    elt sub(elt a, elt b) const;
    elt neg(elt a) const;
    elt mul(elt a, elt b) const;
    elt inv(elt a) const;                             // throws on zero
    elt div(elt a, elt b) const;
    elt pow(elt a, std::uint64_t e) const;

    std::vector<elt> digits(elt a) const;             // m_ base-field indices, constant first
    elt from_digits(std::span<const elt> d) const;

    // Tower helpers (require has_base() and ext_degree() == 2).
    elt embed(elt base_idx) const;                    // base field -> this field
    bool in_base(elt a) const;
    elt to_base(elt a) const;                         // throws if not in the base field
    elt trace(elt a) const;                           // x^q + x, returned as a base index
    elt norm(elt a) const;                            // x^{q+1}, returned as a base index
    // Canonical square root in this field of a base-field element
    // (smallest index of the two roots).  Requires odd characteristic.
    elt sqrt_of_base(elt base_idx) const;

private:
    Field() = default;
    void check_range(elt a) const;

    std::uint64_t p_ = 0;     // characteristic
    std::uint64_t q_ = 0;     // field size
    unsigned deg_ = 1;        // degree over GF(p)
    unsigned m_ = 1;          // degree over base_
    FieldPtr base_;           // null for prime fields
    std::vector<elt> mod_;    // monic modulus over base_, lowest first (empty for prime)
};

/// A field element tagged with its field; arithmetic checks descriptor
/// compatibility.  The library internals work on raw indices; this wrapper is
/// the API surface for callers that mix fields.
struct Element {
    FieldPtr field;
    elt idx = 0;

    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    friend Element operator*(const Element& a, const Element& b);
    friend Element operator/(const Element& a, const Element& b);
    friend bool operator==(const Element& a, const Element& b);
};

enum class ArithKind { add, sub, mul, div };
Element arith(const Element& a, const Element& b, ArithKind kind);

bool is_prime(std::uint64_t n);
// Factor a prime power q = p^k; throws if q is not a prime power.
std::pair<std::uint64_t, unsigned> factor_prime_power(std::uint64_t q);

}  // namespace kps
