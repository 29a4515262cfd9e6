#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kps/field.hpp"

namespace kps {

/// Deterministic stream of field elements keyed by (seed material, context).
/// Identical inputs yield identical streams across runs and platforms; the
/// hierarchy protocol relies on this so two parents holding the same pairwise
/// key derive identical KPS coefficients without interaction.
class ElementStream {
public:
    ElementStream(FieldPtr target, std::string_view seed_material,
                  std::string_view context);
    // Seed from an element of some field (typically a shared key).
    static ElementStream from_element(FieldPtr target, const Field& seed_field,
                                      elt seed_idx, std::string_view context);

    elt next();                          // uniform element index of the target field
    std::uint64_t next_u64();
    std::uint64_t next_below(std::uint64_t n);  // uniform in [0, n)
    const FieldPtr& field() const { return target_; }

private:
    FieldPtr target_;
    std::uint64_t state_;
};

/// The expand_seed operation: n deterministic elements of the seed's field.
std::vector<elt> expand_seed(const FieldPtr& field, elt seed_idx,
                             std::string_view context, std::size_t n);

}  // namespace kps
