#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "kps/blom.hpp"
#include "kps/gkps.hpp"
#include "kps/serial.hpp"

using namespace kps;

namespace {

GkpsDescriptor example_descriptor() {
    // GF(9), w = 3, P(x) = 1 + 2x + x^3 (no roots in GF(9)).
    auto f = Field::gf(9);
    return make_gkps_descriptor(f, 3, Poly::from_coeffs(f, {1, 2, 0, 1}));
}

}  // namespace

TEST_CASE("descriptor validation") {
    auto f9 = Field::gf(9);
    // x^2 has the root 0.
    CHECK_THROWS_AS(make_gkps_descriptor(f9, 1, Poly::from_coeffs(f9, {0, 0, 1})),
                    std::invalid_argument);
    // H = 1 < w = 2.
    auto f5 = Field::gf(5);
    CHECK_THROWS_AS(make_gkps_descriptor(f5, 2, Poly::from_coeffs(f5, {2, 1})),
                    std::invalid_argument);
    // x^2 + 2 is root-free over GF(5).
    auto d = make_gkps_descriptor(f5, 2, Poly::from_coeffs(f5, {2, 0, 1}));
    CHECK(d.H() == 2);
    // P = 1 only with the explicit escape hatch.
    CHECK_THROWS_AS(make_gkps_descriptor(f5, 2, Poly::constant(f5, 1)),
                    std::invalid_argument);
    CHECK_NOTHROW(make_gkps_descriptor(f5, 2, Poly::constant(f5, 1), true));
}

TEST_CASE("all 36 pairs over GF(9) agree from both sides") {
    auto d = example_descriptor();
    ElementStream rng(d.field, "gkps-test", "example");
    auto master = gkps_setup(d, rng);
    for (elt a = 0; a < 9; ++a) {
        auto sa = gkps_share(master, a);
        for (elt b = a + 1; b < 9; ++b) {
            auto sb = gkps_share(master, b);
            const elt k = gkps_key(sa, b);
            CHECK(k == gkps_key(sb, a));
            CHECK(k == gkps_eval(master, a, b));
            CHECK(k == gkps_eval(master, b, a));
        }
    }
}

TEST_CASE("basis vectors match the defining formula") {
    auto d = example_descriptor();
    const auto& f = d.field;
    for (elt e = 0; e < 9; ++e) {
        auto u = gkps_basis_at(d, e);
        REQUIRE(u.size() == 4);
        const elt pinv = f->inv(d.pole.eval(e));
        for (unsigned i = 0; i <= 3; ++i)
            CHECK(u[i] == f->mul(f->pow(e, i), pinv));
    }
}

TEST_CASE("constant pole reduces to the polynomial baseline") {
    auto f = Field::gf(7);
    auto d = make_gkps_descriptor(f, 2, Poly::constant(f, 1), true);
    ElementStream r1(f, "reduction", "draw");
    ElementStream r2(f, "reduction", "draw");
    auto gm = gkps_setup(d, r1);
    auto bm = blom_setup(f, 2, 2, r2);
    for (elt a = 0; a < 7; ++a)
        for (elt b = 0; b < 7; ++b) {
            if (a == b) continue;
            const elt peer[] = {b};
            CHECK(gkps_key(gkps_share(gm, a), b) == blom_key(blom_share(bm, a), peer));
        }
}

TEST_CASE("scheme count B_H") {
    auto c = gkps_count(2, 7);
    CHECK(c.bound == 18);
    REQUIRE(c.prime_form.has_value());
    CHECK(*c.prime_form == 18);   // (2^7 - 2) / 7

    CHECK(gkps_count(3, 2).bound == 3);
    CHECK(gkps_count(9, 1).bound == 0);          // degree-1 poles always have roots
    CHECK_FALSE(gkps_count(3, 4).prime_form.has_value());
    // Closed-form bound at H = 4 over GF(3): floor((81-3-9)/4) = 17 from the
    // quartic term plus 3^2 = 9 from squared quadratics.
    CHECK(gkps_count(3, 4).bound == 26);
}

TEST_CASE("storage accounting includes the pole") {
    auto s = gkps_storage_bits(9, 3, 3);
    const double lg = std::log2(9.0);
    CHECK(s.actual_bits == doctest::Approx(4 * lg));
    CHECK(s.paper_bits == doctest::Approx(8 * lg));
}

TEST_CASE("t-variable generalization is consistent with the pairwise scheme") {
    auto f = Field::gf(9);
    auto d = make_gkps_descriptor(f, 2, Poly::from_coeffs(f, {1, 2, 0, 1}));
    ElementStream r1(f, "gkps-t", "draw");
    ElementStream r2(f, "gkps-t", "draw");
    auto tm = gkps_t_setup(d, 2, r1);
    auto pm = gkps_setup(d, r2);
    for (elt a = 0; a < 9; ++a)
        for (elt b = 0; b < 9; ++b) {
            if (a == b) continue;
            const elt peer[] = {b};
            CHECK(gkps_t_key(gkps_t_share(tm, a), peer) ==
                  gkps_key(gkps_share(pm, a), b));
        }
}

TEST_CASE("three-variable group keys agree for every rotation") {
    auto f = Field::gf(5);
    auto d = make_gkps_descriptor(f, 1, Poly::from_coeffs(f, {2, 0, 1}));
    ElementStream rng(f, "gkps-t", "triples");
    auto master = gkps_t_setup(d, 3, rng);
    for (elt a = 0; a < 5; ++a)
        for (elt b = a + 1; b < 5; ++b)
            for (elt c = b + 1; c < 5; ++c) {
                const elt ab[] = {a, b}, bc[] = {b, c}, ca[] = {c, a};
                const elt k = gkps_t_key(gkps_t_share(master, c), ab);
                CHECK(k == gkps_t_key(gkps_t_share(master, a), bc));
                CHECK(k == gkps_t_key(gkps_t_share(master, b), ca));
                const elt ids[] = {a, b, c};
                CHECK(k == gkps_t_eval(master, ids));
            }
}

TEST_CASE("self-pairing throws") {
    auto d = example_descriptor();
    ElementStream rng(d.field, "gkps-test", "self");
    auto master = gkps_setup(d, rng);
    CHECK_THROWS_AS(gkps_key(gkps_share(master, 2), 2), std::invalid_argument);
}

TEST_CASE("master and share files round-trip") {
    auto d = example_descriptor();
    ElementStream rng(d.field, "gkps-test", "io");
    auto master = gkps_setup(d, rng);
    std::string mt = write_gkps_master(master);
    std::istringstream min(mt);
    auto m2 = read_gkps_master(min);
    CHECK(m2.a == master.a);
    CHECK(m2.d.pole.c == master.d.pole.c);
    CHECK(write_gkps_master(m2) == mt);

    auto share = gkps_share(master, 7);
    std::string st = write_gkps_share(share);
    std::istringstream sin(st);
    auto s2 = read_gkps_share(sin);
    CHECK(s2.owner == share.owner);
    CHECK(s2.c == share.c);
    CHECK(write_gkps_share(s2) == st);
    CHECK(gkps_key(s2, 3) == gkps_key(share, 3));
}
