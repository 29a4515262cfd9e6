#pragma once

#include <span>
#include <vector>

#include "kps/field.hpp"
#include "kps/rng.hpp"

namespace kps {

/// Classic t-variable, w-secure Blom-Blundo scheme: a random symmetric
/// polynomial with per-variable degrees 0..w.  Coefficient tensors are stored
/// dense, size (w+1)^t, symmetrized over index permutations.
struct BlomMaster {
    FieldPtr field;
    unsigned t = 2;
    unsigned w = 0;
    std::vector<elt> a;   // dense symmetric tensor, index = sum j_i*(w+1)^i
};

struct BlomShare {
    FieldPtr field;
    unsigned t = 2;
    unsigned w = 0;
    elt owner = 0;
    std::vector<elt> b;   // dense symmetric (t-1)-index tensor
};

BlomMaster blom_setup(FieldPtr field, unsigned t, unsigned w, ElementStream& rng);
BlomShare blom_share(const BlomMaster& master, elt e);
// Shared key of the owner together with t-1 other pairwise-distinct IDs.
elt blom_key(const BlomShare& share, std::span<const elt> others);
// Direct evaluation of the master polynomial (test oracle / TA-side check).
elt blom_eval(const BlomMaster& master, std::span<const elt> ids);
double blom_storage_bits(std::uint64_t q, unsigned t, unsigned w);

}  // namespace kps
