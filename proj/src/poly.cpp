#include "kps/poly.hpp"

#include <stdexcept>

namespace kps {

Poly Poly::constant(FieldPtr f, elt v) {
    Poly p{std::move(f), {v}};
    p.normalize();
    return p;
}

Poly Poly::x(FieldPtr f) {
    Poly p{std::move(f), {0, 1}};
    return p;
}

Poly Poly::from_coeffs(FieldPtr f, std::vector<elt> coeffs) {
    Poly p{std::move(f), std::move(coeffs)};
    for (elt c : p.c)
        if (c >= p.f->size()) throw std::out_of_range("coefficient out of range");
    p.normalize();
    return p;
}

void Poly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

elt Poly::eval(elt at) const {
    elt r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = f->add(f->mul(r, at), c[i]);
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r{a.f, {}};
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = a.f->add(a.coeff(i), b.coeff(i));
    r.normalize();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r{a.f, {}};
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = a.f->sub(a.coeff(i), b.coeff(i));
    r.normalize();
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.f);
    Poly r{a.f, std::vector<elt>(a.c.size() + b.c.size() - 1, 0)};
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = a.f->add(r.c[i + j], a.f->mul(a.c[i], b.c[j]));
    }
    r.normalize();
    return r;
}

bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

Poly Poly::scaled(elt s) const {
    Poly r{f, c};
    for (auto& v : r.c) v = f->mul(v, s);
    r.normalize();
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(f->inv(c.back()));
}

Poly Poly::pow(unsigned e) const {
    Poly r = Poly::constant(f, f->one());
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly rem = a;
    Poly quo{a.f, {}};
    const int db = b.degree();
    const elt lead_inv = a.f->inv(b.c.back());
    if (rem.degree() >= db) quo.c.resize(rem.degree() - db + 1, 0);
    while (rem.degree() >= db) {
        const int shift = rem.degree() - db;
        const elt factor = a.f->mul(rem.c.back(), lead_inv);
        quo.c[shift] = factor;
        for (int i = 0; i <= db; ++i)
            rem.c[shift + i] = a.f->sub(rem.c[shift + i], a.f->mul(factor, b.c[i]));
        rem.normalize();
    }
    quo.normalize();
    return {quo, rem};
}

Poly poly_mod(const Poly& a, const Poly& m) { return poly_divmod(a, m).second; }

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m) {
    return poly_mod(a * b, m);
}

Poly poly_powmod(const Poly& a, std::uint64_t e, const Poly& m) {
    Poly r = Poly::constant(a.f, a.f->one());
    Poly base = poly_mod(a, m);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, m);
        base = poly_mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

bool is_irreducible(const Poly& f0) {
    const int n = f0.degree();
    if (n < 1) throw std::invalid_argument("irreducibility is undefined for constants");
    if (n == 1) return true;
    const Poly f = f0.monic();
    const std::uint64_t q = f.f->size();
    const Poly x = Poly::x(f.f);

    auto frobenius_power = [&](unsigned times) {
        // x^{q^times} mod f
        Poly h = poly_mod(x, f);
        for (unsigned i = 0; i < times; ++i) h = poly_powmod(h, q, f);
        return h;
    };

    // Rabin: for every prime r | n, gcd(x^{q^{n/r}} - x, f) must be trivial,
    // and x^{q^n} must reduce to x.
    unsigned m = static_cast<unsigned>(n);
    std::vector<unsigned> prime_divs;
    for (unsigned d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            prime_divs.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) prime_divs.push_back(m);

    for (unsigned r : prime_divs) {
        Poly h = frobenius_power(static_cast<unsigned>(n) / r);
        Poly g = poly_gcd(h - x, f);
        if (g.degree() > 0) return false;
    }
    return frobenius_power(static_cast<unsigned>(n)) == poly_mod(x, f);
}

namespace {

unsigned char moebius(unsigned n) {
    // returns mu(n) + 1 to keep the type unsigned: 0 -> -1, 1 -> 0, 2 -> +1
    unsigned char parity = 0;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 1;   // squareful
            parity ^= 1;
        }
    }
    if (n > 1) parity ^= 1;
    return parity ? 0 : 2;
}

__int128 ipow128(std::uint64_t q, unsigned e) {
    __int128 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= q;
        if (r > (__int128)1 << 100) throw std::overflow_error("q^t too large");
    }
    return r;
}

}  // namespace

IrreducibleCount count_irreducibles(std::uint64_t q, unsigned t) {
    if (t < 1) throw std::invalid_argument("degree must be >= 1");
    __int128 exact = 0;
    __int128 proper_sum = 0;
    for (unsigned d = 1; d <= t; ++d) {
        if (t % d != 0) continue;
        unsigned char mu = moebius(t / d);
        if (mu == 2) exact += ipow128(q, d);
        else if (mu == 0) exact -= ipow128(q, d);
        if (d < t) proper_sum += ipow128(q, d);
    }
    exact /= t;
    __int128 lower = (ipow128(q, t) - proper_sum) / t;
    if (exact > INT64_MAX || lower > INT64_MAX) throw std::overflow_error("count overflow");
    return {static_cast<std::int64_t>(exact), static_cast<std::int64_t>(lower)};
}

std::vector<Poly> enumerate_irreducibles(const FieldPtr& field, unsigned t,
                                         std::uint64_t count) {
    const std::uint64_t q = field->size();
    const auto avail = count_irreducibles(q, t).exact;
    if (count > static_cast<std::uint64_t>(avail))
        throw std::invalid_argument("requested more irreducibles than exist");
    std::vector<Poly> out;
    out.reserve(count);
    std::uint64_t total = 1;
    for (unsigned i = 0; i < t; ++i) total *= q;
    for (std::uint64_t j = 0; j < total && out.size() < count; ++j) {
        std::vector<elt> coeffs(t + 1, 0);
        std::uint64_t v = j;
        for (unsigned i = 0; i < t; ++i) { coeffs[i] = v % q; v /= q; }
        coeffs[t] = field->one();
        Poly cand = Poly::from_coeffs(field, coeffs);
        if (is_irreducible(cand)) out.push_back(std::move(cand));
    }
    return out;
}

}  // namespace kps
