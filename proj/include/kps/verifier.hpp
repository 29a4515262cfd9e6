#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "kps/gkps.hpp"
#include "kps/hierarchy.hpp"
#include "kps/hkps.hpp"

namespace kps {

/// Raised when an exact verification is refused because the parameter set
/// exceeds the enumeration gate (the CLI maps it to exit status 2).
struct intractable_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Basis functions evaluated at enrolled IDs/points: rows = basis, columns =
/// users.  Every (w+1)-column subset being independent is exactly w-security.
struct EvalMatrix {
    FieldPtr field;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<elt> a;   // row-major

    elt at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

EvalMatrix eval_matrix(const GkpsDescriptor& d, std::span<const elt> ids);
EvalMatrix eval_matrix(const Curve& curve, unsigned w);   // all 2q^2 affine points
EvalMatrix eval_matrix_vandermonde(const FieldPtr& f, unsigned w,
                                   std::span<const elt> ids);

std::size_t matrix_rank(const FieldPtr& f, std::vector<elt> m,
                        std::size_t rows, std::size_t cols);

struct MdsResult {
    bool ok = true;
    std::vector<std::size_t> witness;   // a dependent column subset, if any
    std::uint64_t subsets_checked = 0;
    bool exhaustive = true;
};

// Checks that every (exhaustive) or n sampled (w+1)-column subsets have full
// rank w+1.
MdsResult mds_check(const EvalMatrix& m, unsigned w, bool exhaustive,
                    std::uint64_t samples = 0, std::uint64_t sample_seed = 1);

struct UniformityVerdict {
    bool uniform = false;
    std::uint64_t consistent_masters = 0;
    std::map<elt, std::uint64_t> tally;   // key value -> count
};

/// Exhaustive conditional-distribution oracle for any quadratic-form scheme
/// key = v_a^T A v_b with symmetric A: enumerates every symmetric master
/// consistent with the coalition's shares and tallies the target pair's key.
/// `vectors[i]` is the basis evaluation vector of user i; coalition_shares[j]
/// is the share (A * v) observed by coalition member coalition[j].  Never
/// consults the real master.
UniformityVerdict uniformity_oracle(
    const FieldPtr& field, const std::vector<std::vector<elt>>& vectors,
    const std::vector<std::size_t>& coalition,
    const std::vector<std::vector<elt>>& coalition_shares,
    std::size_t target_a, std::size_t target_b,
    std::uint64_t master_limit = 1000000);

/// Section-6 style resilience check on a hierarchy: conditions the single
/// KPS instance serving the target pair on the shares of its compromised
/// members (taken from their bundles, not from the master).
UniformityVerdict resilience_check(const HierarchyTree& tree,
                                   const std::vector<Path>& compromised,
                                   const Path& target_a, const Path& target_b,
                                   std::uint64_t master_limit = 1000000);

// Roots in GF(q) of sum c_i x^i (the numerator of sum c_i u_i); the zero-count
// argument of the w-security proof needs this to be <= w.
std::size_t numerator_root_count(const GkpsDescriptor& d, std::span<const elt> coeffs);

}  // namespace kps
