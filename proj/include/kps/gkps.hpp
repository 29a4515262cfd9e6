#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kps/field.hpp"
#include "kps/poly.hpp"
#include "kps/rng.hpp"

namespace kps {

/// Generalized Blom-Blundo scheme: basis functions u_i(x) = x^{i}/P(x),
/// i = 0..w, for a pole polynomial P with no roots in GF(q).
struct GkpsDescriptor {
    FieldPtr field;
    unsigned w = 0;
    Poly pole;            // P(x), degree H
    unsigned H() const { return static_cast<unsigned>(pole.degree()); }
};

// Validates H >= w and root-freeness of P over GF(q) by exhaustive
// evaluation.  allow_trivial_pole admits the degenerate P = 1 (test mode
// only; reduces the scheme to the Blom baseline).
GkpsDescriptor make_gkps_descriptor(FieldPtr field, unsigned w, Poly pole,
                                    bool allow_trivial_pole = false);

struct GkpsMaster {
    GkpsDescriptor d;
    std::vector<elt> a;   // symmetric (w+1)x(w+1), row-major
};

struct GkpsShare {
    GkpsDescriptor d;
    elt owner = 0;
    std::vector<elt> c;   // length w+1, c_j = sum_i a_ij u_i(owner)
};

GkpsMaster gkps_setup(GkpsDescriptor d, ElementStream& rng);
GkpsShare gkps_share(const GkpsMaster& master, elt e);
elt gkps_key(const GkpsShare& share, elt peer);   // throws on self-pairing
// Direct master evaluation F(e1, e2) (test oracle / TA-side check).
elt gkps_eval(const GkpsMaster& master, elt e1, elt e2);
// Basis vector (u_0(e), ..., u_w(e)).
std::vector<elt> gkps_basis_at(const GkpsDescriptor& d, elt e);

struct SchemeCount {
    std::int64_t bound;                    // B_H, degree-1 factors excluded
    std::optional<std::int64_t> prime_form; // (q^H - q)/H when H is prime
};
SchemeCount gkps_count(std::uint64_t q, unsigned H);

struct GkpsStorage {
    double actual_bits;   // w+1 coefficients, descriptor stored once
    double paper_bits;    // (H+w+2) log2 q, pole counted inline
};
GkpsStorage gkps_storage_bits(std::uint64_t q, unsigned w, unsigned H);

// --- t-variable variant -----------------------------------------------------

struct GkpsTMaster {
    GkpsDescriptor d;
    unsigned t = 2;
    std::vector<elt> a;   // dense symmetric tensor, (w+1)^t
};

struct GkpsTShare {
    GkpsDescriptor d;
    unsigned t = 2;
    elt owner = 0;
    std::vector<elt> b;   // dense symmetric (t-1)-index tensor
};

GkpsTMaster gkps_t_setup(GkpsDescriptor d, unsigned t, ElementStream& rng);
GkpsTShare gkps_t_share(const GkpsTMaster& master, elt e);
elt gkps_t_key(const GkpsTShare& share, std::span<const elt> others);
elt gkps_t_eval(const GkpsTMaster& master, std::span<const elt> ids);
double gkps_t_storage_bits(std::uint64_t q, unsigned t, unsigned w, unsigned H);

}  // namespace kps
