#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kps/gkps.hpp"
#include "kps/hkps.hpp"
#include "kps/verifier.hpp"

using namespace kps;

namespace {

std::vector<elt> all_ids(std::uint64_t q) {
    std::vector<elt> ids(q);
    for (elt e = 0; e < q; ++e) ids[e] = e;
    return ids;
}

}  // namespace

TEST_CASE("rank of hand-checked matrices") {
    auto f = Field::gf(5);
    // Identity.
    CHECK(matrix_rank(f, {1, 0, 0, 1}, 2, 2) == 2);
    // Second row = 2 * first row.
    CHECK(matrix_rank(f, {1, 3, 2, 1}, 2, 2) == 1);
    // Zero matrix.
    CHECK(matrix_rank(f, {0, 0, 0, 0}, 2, 2) == 0);
    // 2x3 with independent rows.
    CHECK(matrix_rank(f, {1, 2, 3, 0, 1, 4}, 2, 3) == 2);
}

TEST_CASE("Vandermonde columns over distinct IDs are independent") {
    auto f = Field::gf(9);
    auto ids = all_ids(9);
    auto m = eval_matrix_vandermonde(f, 3, ids);
    CHECK(m.rows == 4);
    CHECK(m.cols == 9);
    auto res = mds_check(m, 3, true, 0, 0);
    CHECK(res.ok);
    CHECK(res.subsets_checked == 126);
    CHECK(res.exhaustive);
}

TEST_CASE("duplicate columns are caught with a witness") {
    auto f = Field::gf(7);
    std::vector<elt> ids = {0, 1, 2, 2, 3};   // duplicated ID
    auto m = eval_matrix_vandermonde(f, 1, ids);
    auto res = mds_check(m, 1, true, 0, 0);
    CHECK_FALSE(res.ok);
    REQUIRE(res.witness.size() == 2);
    CHECK(res.witness[0] == 2);
    CHECK(res.witness[1] == 3);
}

TEST_CASE("sampled mode also finds planted dependence") {
    auto f = Field::gf(7);
    std::vector<elt> ids = {0, 1, 2, 3, 4, 4};
    auto m = eval_matrix_vandermonde(f, 2, ids);
    auto res = mds_check(m, 2, false, 2000, 42);
    CHECK_FALSE(res.ok);
    CHECK_FALSE(res.exhaustive);
}

TEST_CASE("generalized evaluation matrix certifies the design example") {
    auto f = Field::gf(9);
    auto d = make_gkps_descriptor(f, 3, Poly::from_coeffs(f, {1, 2, 0, 1}));
    auto m = eval_matrix(d, all_ids(9));
    auto res = mds_check(m, 3, true, 0, 0);
    CHECK(res.ok);
    CHECK(res.subsets_checked == 126);
}

TEST_CASE("curve evaluation matrix spans all distinct affine points") {
    Curve c = make_curve(Field::quadratic(Field::gf(5)), 0);
    auto m = eval_matrix(c, 2);
    CHECK(m.rows == 5);                 // w + (q+1)/2
    CHECK(m.cols == 2 * 25 - 5);        // distinct affine points
    auto res = mds_check(m, 2, true, 0, 0);
    CHECK(res.ok);
    CHECK(res.subsets_checked == 14190);   // C(45, 3)
}

TEST_CASE("uniformity oracle certifies a 1-secure generalized scheme") {
    auto f = Field::gf(3);
    auto d = make_gkps_descriptor(f, 1, Poly::from_coeffs(f, {1, 0, 1}));
    std::vector<std::vector<elt>> vectors;
    for (elt e = 0; e < 3; ++e) vectors.push_back(gkps_basis_at(d, e));
    ElementStream rng(f, "verify-test", "u");
    auto master = gkps_setup(d, rng);
    auto v = uniformity_oracle(f, vectors, {0}, {gkps_share(master, 0).c}, 1, 2, 1000000);
    CHECK(v.uniform);
    CHECK(v.consistent_masters == 3);   // 3 free entries, 2 linear constraints
}

TEST_CASE("uniformity oracle refutes a scheme with colliding vectors") {
    auto f = Field::gf(3);
    // Users 0 and 1 share an evaluation vector: the coalition {0} pins the
    // key of the pair (1, 2) exactly.
    std::vector<std::vector<elt>> vectors = {{1, 2}, {1, 2}, {1, 1}};
    std::vector<elt> share0(2);
    {
        // Any consistent share works; take the one from A = identity.
        share0 = {1, 2};
    }
    auto v = uniformity_oracle(f, vectors, {0}, {share0}, 1, 2, 1000000);
    CHECK_FALSE(v.uniform);
}

TEST_CASE("oracle input validation and tractability gate") {
    auto f = Field::gf(3);
    std::vector<std::vector<elt>> vectors = {{1, 0}, {0, 1}, {1, 1}};
    CHECK_THROWS_AS(uniformity_oracle(f, vectors, {1}, {{0, 0}}, 1, 2, 1000000),
                    std::invalid_argument);   // target inside the coalition
    CHECK_THROWS_AS(uniformity_oracle(f, vectors, {0, 1}, {{1, 0}, {0, 1}}, 1, 2, 1000000),
                    std::invalid_argument);   // coalition not below w+1
    CHECK_THROWS_AS(uniformity_oracle(f, vectors, {0}, {{1, 0}}, 1, 2, 2),
                    intractable_error);       // 3^3 masters > limit 2
}

TEST_CASE("numerator root bound") {
    auto f = Field::gf(9);
    auto d = make_gkps_descriptor(f, 3, Poly::from_coeffs(f, {1, 2, 0, 1}));
    ElementStream rng(f, "verify-test", "roots");
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<elt> coeffs(4);
        bool nonzero = false;
        while (!nonzero) {
            for (auto& c : coeffs) {
                c = rng.next();
                nonzero |= c != 0;
            }
        }
        CHECK(numerator_root_count(d, coeffs) <= 3);
    }
}
