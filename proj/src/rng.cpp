#include "kps/rng.hpp"

#include <stdexcept>

namespace kps {

namespace {

std::uint64_t fnv1a(std::uint64_t state, std::string_view bytes) {
    for (unsigned char c : bytes) {
        state ^= c;
        state *= 0x100000001b3ULL;
    }
    return state;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

ElementStream::ElementStream(FieldPtr target, std::string_view seed_material,
                             std::string_view context)
    : target_(std::move(target)) {
    std::uint64_t s = 0xcbf29ce484222325ULL;
    s = fnv1a(s, target_->spec());
    s = fnv1a(s, "\x1f");
    s = fnv1a(s, seed_material);
    s = fnv1a(s, "\x1f");
    s = fnv1a(s, context);
    state_ = s;
}

ElementStream ElementStream::from_element(FieldPtr target, const Field& seed_field,
                                          elt seed_idx, std::string_view context) {
    std::string material = seed_field.spec() + ":" + std::to_string(seed_idx);
    return ElementStream(std::move(target), material, context);
}

std::uint64_t ElementStream::next_u64() { return splitmix64(state_); }

std::uint64_t ElementStream::next_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("empty range");
    // Rejection sampling below the largest multiple of n.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
        r = next_u64();
    } while (r >= limit);
    return r % n;
}

elt ElementStream::next() { return next_below(target_->size()); }

std::vector<elt> expand_seed(const FieldPtr& field, elt seed_idx,
                             std::string_view context, std::size_t n) {
    ElementStream s = ElementStream::from_element(field, *field, seed_idx, context);
    std::vector<elt> out(n);
    for (auto& v : out) v = s.next();
    return out;
}

}  // namespace kps
