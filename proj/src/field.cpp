#include "kps/field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "kps/poly.hpp"

namespace kps {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<std::uint64_t, unsigned> factor_prime_power(std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("not a prime power: " + std::to_string(q));
    for (std::uint64_t p = 2; p * p <= q; ++p) {
        if (q % p != 0) continue;
        unsigned k = 0;
        std::uint64_t r = q;
        while (r % p == 0) { r /= p; ++k; }
        if (r != 1) throw std::invalid_argument("not a prime power: " + std::to_string(q));
        return {p, k};
    }
    return {q, 1};   // q itself is prime
}

void Field::check_range(elt a) const {
    if (a >= q_) throw std::out_of_range("element index out of range for " + spec());
}

FieldPtr Field::prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime, got " + std::to_string(p));
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->q_ = p;
    f->deg_ = 1;
    f->m_ = 1;
    return f;
}

namespace {

// Smallest monic irreducible of degree k over `base`, by canonical index of
// the non-leading coefficient vector.
std::vector<elt> canonical_modulus(const FieldPtr& base, unsigned k) {
    const std::uint64_t b = base->size();
    std::uint64_t total = 1;
    for (unsigned i = 0; i < k; ++i) total *= b;
    for (std::uint64_t j = 0; j < total; ++j) {
        std::vector<elt> coeffs(k + 1, 0);
        std::uint64_t v = j;
        for (unsigned i = 0; i < k; ++i) { coeffs[i] = v % b; v /= b; }
        coeffs[k] = base->one();
        Poly cand = Poly::from_coeffs(base, coeffs);
        if (is_irreducible(cand)) return coeffs;
    }
    throw std::logic_error("no irreducible modulus found");  // unreachable
}

}  // namespace

FieldPtr Field::extension(std::uint64_t p, unsigned k,
                          std::optional<std::vector<elt>> modulus) {
    if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
    FieldPtr pf = prime(p);
    if (k == 1) {
        if (modulus && modulus->size() != 2)
            throw std::invalid_argument("degree-1 modulus expected");
        return pf;
    }
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->deg_ = k;
    f->m_ = k;
    f->base_ = pf;
    f->q_ = 1;
    for (unsigned i = 0; i < k; ++i) f->q_ *= p;
    if (modulus) {
        if (modulus->size() != k + 1 || modulus->back() != 1)
            throw std::invalid_argument("modulus must be monic of degree k");
        for (elt c : *modulus)
            if (c >= p) throw std::out_of_range("modulus coefficient out of range");
        if (!is_irreducible(Poly::from_coeffs(pf, *modulus)))
            throw std::invalid_argument("supplied modulus is reducible");
        f->mod_ = std::move(*modulus);
    } else {
        f->mod_ = canonical_modulus(pf, k);
    }
    return f;
}

FieldPtr Field::quadratic(FieldPtr base, std::optional<std::vector<elt>> modulus) {
    if (!base) throw std::invalid_argument("null base field");
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = base->characteristic();
    f->deg_ = base->degree() * 2;
    f->m_ = 2;
    f->q_ = base->size() * base->size();
    if (modulus) {
        if (modulus->size() != 3 || modulus->back() != base->one())
            throw std::invalid_argument("modulus must be monic of degree 2");
        for (elt c : *modulus)
            if (c >= base->size()) throw std::out_of_range("modulus coefficient out of range");
        if (!is_irreducible(Poly::from_coeffs(base, *modulus)))
            throw std::invalid_argument("supplied modulus is reducible");
        f->base_ = std::move(base);
        f->mod_ = std::move(*modulus);
    } else {
        f->mod_ = canonical_modulus(base, 2);
        f->base_ = std::move(base);
    }
    return f;
}

FieldPtr Field::gf(std::uint64_t q) {
    auto [p, k] = factor_prime_power(q);
    return extension(p, k);
}

std::string Field::spec() const {
    std::ostringstream os;
    if (!base_) {
        os << p_;
        return os.str();
    }
    if (base_->has_base())
        os << "(" << base_->spec() << ")";
    else
        os << base_->size();
    os << "^" << m_ << "[";
    for (std::size_t i = 0; i < mod_.size(); ++i) {
        if (i) os << " ";
        os << mod_[i];
    }
    os << "]";
    return os.str();
}

bool Field::same(const Field& other) const {
    if (this == &other) return true;
    return spec() == other.spec();
}

elt Field::gen() const {
    if (!base_) throw std::domain_error("prime field has no generator element x");
    return base_->size();   // digits (0, 1, 0, ...)
}

std::vector<elt> Field::digits(elt a) const {
    check_range(a);
    const std::uint64_t b = base_ ? base_->size() : p_;
    std::vector<elt> d(m_, 0);
    for (unsigned i = 0; i < m_; ++i) { d[i] = a % b; a /= b; }
    return d;
}

elt Field::from_digits(std::span<const elt> d) const {
    const std::uint64_t b = base_ ? base_->size() : p_;
    elt a = 0;
    for (std::size_t i = d.size(); i-- > 0;) a = a * b + d[i];
    return a;
}

elt Field::add(elt a, elt b) const {
    check_range(a); check_range(b);
    if (!base_) return (a + b) % p_;
    auto da = digits(a), db = digits(b);
    for (unsigned i = 0; i < m_; ++i) da[i] = base_->add(da[i], db[i]);
    return from_digits(da);
}

elt Field::neg(elt a) const {
    check_range(a);
    if (!base_) return a == 0 ? 0 : p_ - a;
    auto d = digits(a);
    for (auto& c : d) c = base_->neg(c);
    return from_digits(d);
}

elt Field::sub(elt a, elt b) const { return add(a, neg(b)); }

elt Field::mul(elt a, elt b) const {
    check_range(a); check_range(b);
    if (!base_) return (a * b) % p_;
    auto da = digits(a), db = digits(b);
    std::vector<elt> c(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < m_; ++j)
            c[i + j] = base_->add(c[i + j], base_->mul(da[i], db[j]));
    }
    // Reduce by the monic modulus.
    for (unsigned i = 2 * m_ - 2; i >= m_; --i) {
        elt t = c[i];
        if (t == 0) continue;
        c[i] = 0;
        for (unsigned j = 0; j < m_; ++j)
            c[i - m_ + j] = base_->sub(c[i - m_ + j], base_->mul(t, mod_[j]));
        if (i == m_) break;
    }
    c.resize(m_);
    return from_digits(c);
}

elt Field::pow(elt a, std::uint64_t e) const {
    check_range(a);
    elt r = one();
    elt b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

elt Field::inv(elt a) const {
    check_range(a);
    if (a == 0) throw std::domain_error("division by zero in " + spec());
    return pow(a, q_ - 2);
}

elt Field::div(elt a, elt b) const { return mul(a, inv(b)); }

elt Field::embed(elt base_idx) const {
    if (!base_) throw std::domain_error("field has no base-field link");
    if (base_idx >= base_->size()) throw std::out_of_range("base element out of range");
    return base_idx;   // constant digit carries weight 1
}

bool Field::in_base(elt a) const {
    check_range(a);
    if (!base_) return true;
    return a < base_->size();
}

elt Field::to_base(elt a) const {
    if (!base_) throw std::domain_error("field has no base-field link");
    if (!in_base(a)) throw std::domain_error("element not in the base field");
    return a;
}

elt Field::trace(elt a) const {
    if (!base_ || m_ != 2) throw std::domain_error("trace requires a quadratic tower");
    return to_base(add(pow(a, base_->size()), a));
}

elt Field::norm(elt a) const {
    if (!base_ || m_ != 2) throw std::domain_error("norm requires a quadratic tower");
    return to_base(pow(a, base_->size() + 1));
}

elt Field::sqrt_of_base(elt base_idx) const {
    if (!base_ || m_ != 2) throw std::domain_error("sqrt_of_base requires a quadratic tower");
    if (p_ == 2) throw std::domain_error("sqrt_of_base requires odd characteristic");
    elt target = embed(base_idx);
    for (elt y = 0; y < q_; ++y)
        if (mul(y, y) == target) return y;   // smallest index = canonical root
    throw std::logic_error("base element has no square root in the tower");
}

// --- Element wrapper --------------------------------------------------------

namespace {
void require_same_field(const Element& a, const Element& b) {
    if (!a.field || !b.field || !a.field->same(*b.field))
        throw std::invalid_argument("field descriptor mismatch");
}
}  // namespace

Element operator+(const Element& a, const Element& b) {
    require_same_field(a, b);
    return {a.field, a.field->add(a.idx, b.idx)};
}
Element operator-(const Element& a, const Element& b) {
    require_same_field(a, b);
    return {a.field, a.field->sub(a.idx, b.idx)};
}
Element operator*(const Element& a, const Element& b) {
    require_same_field(a, b);
    return {a.field, a.field->mul(a.idx, b.idx)};
}
Element operator/(const Element& a, const Element& b) {
    require_same_field(a, b);
    return {a.field, a.field->div(a.idx, b.idx)};
}
bool operator==(const Element& a, const Element& b) {
    require_same_field(a, b);
    return a.idx == b.idx;
}

Element arith(const Element& a, const Element& b, ArithKind kind) {
    switch (kind) {
        case ArithKind::add: return a + b;
        case ArithKind::sub: return a - b;
        case ArithKind::mul: return a * b;
        case ArithKind::div: return a / b;
    }
    throw std::invalid_argument("bad arith kind");
}

}  // namespace kps
