#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <sstream>

#include "kps/field.hpp"
#include "kps/poly.hpp"
#include "kps/rng.hpp"
#include "kps/serial.hpp"

using namespace kps;

namespace {

// Independent multiplication oracle for GF(p^k) built directly over GF(p):
// schoolbook polynomial product over the integers, reduced mod p and then by
// the (monic) modulus, without touching Field::mul.
elt mul_oracle(const Field& f, elt a, elt b) {
    const std::uint64_t p = f.characteristic();
    const unsigned k = f.ext_degree();
    auto da = f.digits(a), db = f.digits(b);
    std::vector<std::uint64_t> prod(2 * k - 1, 0);
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    const auto& mod = f.modulus();
    if (!mod.empty()) {
        for (std::size_t d = prod.size(); d-- > k;) {
            const std::uint64_t lead = prod[d];
            if (!lead) continue;
            prod[d] = 0;
            for (unsigned i = 0; i < k; ++i) {
                std::uint64_t sub = (lead * mod[i]) % p;
                prod[d - k + i] = (prod[d - k + i] + p - sub) % p;
            }
        }
    }
    std::vector<elt> digits(prod.begin(), prod.begin() + k);
    return f.from_digits(digits);
}

}  // namespace

TEST_CASE("prime power factoring and primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(7919));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK(factor_prime_power(9) == std::pair<std::uint64_t, unsigned>{3, 2});
    CHECK(factor_prime_power(8) == std::pair<std::uint64_t, unsigned>{2, 3});
    CHECK(factor_prime_power(5) == std::pair<std::uint64_t, unsigned>{5, 1});
    CHECK_THROWS_AS(factor_prime_power(12), std::invalid_argument);
    CHECK_THROWS_AS(factor_prime_power(1), std::invalid_argument);
}

TEST_CASE("canonical modulus selection") {
    // Smallest monic irreducible quadratic over GF(3) in base-3 coefficient
    // order is x^2 + 1.
    auto f9 = Field::gf(9);
    CHECK(f9->modulus() == std::vector<elt>{1, 0, 1});
    auto f8 = Field::gf(8);
    // x^3 + x + 1 precedes x^3 + x^2 + 1.
    CHECK(f8->modulus() == std::vector<elt>{1, 1, 0, 1});
}

TEST_CASE("multiplication matches the integer-arithmetic oracle") {
    for (std::uint64_t q : {9ull, 8ull, 25ull, 49ull, 27ull}) {
        auto f = Field::gf(q);
        for (elt a = 0; a < q; ++a)
            for (elt b = 0; b < q; ++b)
                CHECK(f->mul(a, b) == mul_oracle(*f, a, b));
    }
}

TEST_CASE("field axioms hold exhaustively on small fields") {
    for (std::uint64_t q : {7ull, 9ull, 8ull}) {
        auto f = Field::gf(q);
        for (elt a = 0; a < q; ++a) {
            CHECK(f->add(a, f->neg(a)) == 0);
            if (a != 0) CHECK(f->mul(a, f->inv(a)) == 1);
            for (elt b = 0; b < q; ++b) {
                CHECK(f->add(a, b) == f->add(b, a));
                CHECK(f->mul(a, b) == f->mul(b, a));
                CHECK(f->sub(f->add(a, b), b) == a);
                for (elt c = 0; c < q; ++c) {
                    CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
                    CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                    CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("Frobenius and unit-group order") {
    for (std::uint64_t q : {9ull, 25ull, 8ull}) {
        auto f = Field::gf(q);
        const std::uint64_t p = f->characteristic();
        for (elt a = 0; a < q; ++a) {
            CHECK(f->pow(a, q) == a);
            for (elt b = 0; b < q; ++b)
                CHECK(f->pow(f->add(a, b), p) == f->add(f->pow(a, p), f->pow(b, p)));
        }
    }
}

TEST_CASE("quadratic tower embed, trace, norm") {
    for (std::uint64_t q : {3ull, 5ull, 9ull}) {
        auto base = Field::gf(q);
        auto ext = Field::quadratic(base);
        CHECK(ext->size() == q * q);
        CHECK(ext->base_field()->same(*base));
        // Embedding is a ring homomorphism onto the subfield fixed by x -> x^q.
        for (elt a = 0; a < q; ++a) {
            for (elt b = 0; b < q; ++b) {
                CHECK(ext->embed(base->add(a, b)) == ext->add(ext->embed(a), ext->embed(b)));
                CHECK(ext->embed(base->mul(a, b)) == ext->mul(ext->embed(a), ext->embed(b)));
            }
            CHECK(ext->in_base(ext->embed(a)));
            CHECK(ext->to_base(ext->embed(a)) == a);
        }
        for (elt x = 0; x < ext->size(); ++x) {
            const elt frob = ext->pow(x, q);
            CHECK(ext->embed(ext->trace(x)) == ext->add(frob, x));
            CHECK(ext->embed(ext->norm(x)) == ext->mul(frob, x));
        }
    }
}

TEST_CASE("canonical square roots") {
    for (std::uint64_t q : {3ull, 5ull, 7ull, 9ull}) {
        auto base = Field::gf(q);
        auto ext = Field::quadratic(base);
        for (elt t = 0; t < q; ++t) {
            const elt r = ext->sqrt_of_base(t);
            CHECK(ext->mul(r, r) == ext->embed(t));
            // Smallest-index root of the two.
            const elt other = ext->neg(r);
            CHECK(r <= other);
        }
    }
}

TEST_CASE("element wrapper checks field compatibility") {
    auto f9 = Field::gf(9);
    auto f7 = Field::gf(7);
    Element a{f9, 4}, b{f9, 7}, c{f7, 2};
    CHECK((a + b).idx == f9->add(4, 7));
    CHECK((a * b).idx == f9->mul(4, 7));
    CHECK_THROWS_AS(arith(a, c, ArithKind::add), std::invalid_argument);
    CHECK_THROWS(arith(a, Element{f9, 0}, ArithKind::div));
}

TEST_CASE("irreducibility matches trial division") {
    // Oracle: a monic degree-d poly over GF(q) is irreducible iff no monic
    // factor of degree 1..d/2 divides it.
    for (std::uint64_t q : {2ull, 3ull, 5ull}) {
        auto f = Field::gf(q);
        for (unsigned d : {2u, 3u}) {
            std::uint64_t total = 1;
            for (unsigned i = 0; i < d; ++i) total *= q;
            for (std::uint64_t code = 0; code < total; ++code) {
                std::vector<elt> c(d + 1, 1);
                std::uint64_t rem = code;
                for (unsigned i = 0; i < d; ++i) {
                    c[i] = rem % q;
                    rem /= q;
                }
                Poly poly = Poly::from_coeffs(f, c);
                bool has_factor = false;
                for (unsigned e = 1; !has_factor && 2 * e <= d; ++e) {
                    std::uint64_t ftotal = 1;
                    for (unsigned i = 0; i < e; ++i) ftotal *= q;
                    for (std::uint64_t fc = 0; fc < ftotal && !has_factor; ++fc) {
                        std::vector<elt> g(e + 1, 1);
                        std::uint64_t r = fc;
                        for (unsigned i = 0; i < e; ++i) {
                            g[i] = r % q;
                            r /= q;
                        }
                        has_factor = poly_mod(poly, Poly::from_coeffs(f, g)).is_zero();
                    }
                }
                CHECK(is_irreducible(poly) == !has_factor);
            }
        }
    }
}

TEST_CASE("irreducible counts") {
    auto c27 = count_irreducibles(2, 7);
    CHECK(c27.exact == 18);
    CHECK(c27.paper_lower_bound == 18);
    auto c32 = count_irreducibles(3, 2);
    CHECK(c32.exact == 3);
    // Brute-force cross-check at (5, 2): (25 - 5) / 2 = 10.
    CHECK(count_irreducibles(5, 2).exact == 10);
    auto f5 = Field::gf(5);
    CHECK(enumerate_irreducibles(f5, 2, 10).size() == 10);
    // Exact count is never below the closed-form lower bound.
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull})
        for (unsigned t = 2; t <= 6; ++t) {
            auto c = count_irreducibles(q, t);
            CHECK(c.exact >= c.paper_lower_bound);
        }
}

TEST_CASE("irreducible enumeration is canonical and correct") {
    auto f3 = Field::gf(3);
    auto polys = enumerate_irreducibles(f3, 2, 3);
    REQUIRE(polys.size() == 3);
    CHECK(polys[0].c == std::vector<elt>{1, 0, 1});   // x^2 + 1
    CHECK(polys[1].c == std::vector<elt>{2, 1, 1});   // x^2 + x + 2
    CHECK(polys[2].c == std::vector<elt>{2, 2, 1});   // x^2 + 2x + 2
    for (const auto& poly : polys) {
        CHECK(is_irreducible(poly));
        for (elt e = 0; e < 3; ++e) CHECK(poly.eval(e) != 0);
    }
    CHECK_THROWS_AS(enumerate_irreducibles(f3, 2, 4), std::invalid_argument);
}

TEST_CASE("polynomial arithmetic") {
    auto f = Field::gf(7);
    Poly a = Poly::from_coeffs(f, {1, 2, 3});
    Poly b = Poly::from_coeffs(f, {5, 1});
    auto [quot, rem] = poly_divmod(a, b);
    CHECK(quot * b + rem == a);
    CHECK(rem.degree() < b.degree());
    CHECK(poly_gcd(a * b, b).monic() == b.monic());
    for (elt e = 0; e < 7; ++e)
        CHECK((a * b).eval(e) == f->mul(a.eval(e), b.eval(e)));
    CHECK(a.pow(3).degree() == 6);
}

TEST_CASE("element streams are deterministic and context-separated") {
    auto f = Field::gf(9);
    ElementStream s1(f, "seed-material", "ctx");
    ElementStream s2(f, "seed-material", "ctx");
    ElementStream s3(f, "seed-material", "other");
    std::vector<elt> a, b, c;
    for (int i = 0; i < 64; ++i) {
        a.push_back(s1.next());
        b.push_back(s2.next());
        c.push_back(s3.next());
    }
    CHECK(a == b);
    CHECK(a != c);
    for (elt v : a) CHECK(v < 9);

    auto e1 = expand_seed(f, 5, "derive", 16);
    auto e2 = expand_seed(f, 5, "derive", 16);
    auto e3 = expand_seed(f, 6, "derive", 16);
    CHECK(e1 == e2);
    CHECK(e1 != e3);
}

TEST_CASE("stream output is not grossly biased") {
    auto f = Field::gf(5);
    ElementStream s(f, "bias-probe", "x");
    std::vector<int> counts(5, 0);
    for (int i = 0; i < 5000; ++i) ++counts[s.next()];
    for (int c : counts) {
        CHECK(c > 800);
        CHECK(c < 1200);
    }
}

TEST_CASE("element and field serialization round-trips") {
    for (std::uint64_t q : {7ull, 9ull, 8ull, 25ull}) {
        auto f = Field::gf(q);
        CHECK(parse_field_header(field_header(*f))->same(*f));
        CHECK(parse_qspec(qspec_str(*f))->same(*f));
        for (elt a = 0; a < q; ++a) {
            std::string s = element_str(*f, a);
            CHECK(s.size() == f->degree());
            CHECK(parse_element(*f, s) == a);
        }
    }
    auto f9 = Field::gf(9);
    CHECK(element_str(*f9, 5) == "12");   // 1*3 + 2, constant digit last
    CHECK_THROWS(parse_element(*f9, "9"));
    CHECK_THROWS(parse_element(*f9, "123"));
}

TEST_CASE("tower elements serialize through base-p digits") {
    auto ext = Field::quadratic(Field::gf(9));
    for (elt a = 0; a < ext->size(); a += 7) {
        std::string s = element_str(*ext, a);
        CHECK(s.size() == 4);
        CHECK(parse_element(*ext, s) == a);
    }
}
