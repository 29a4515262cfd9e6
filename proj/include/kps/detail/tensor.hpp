#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "kps/field.hpp"
#include "kps/rng.hpp"

namespace kps::detail {

inline std::size_t tensor_size(unsigned dim, unsigned t) {
    std::size_t s = 1;
    for (unsigned i = 0; i < t; ++i) s *= dim;
    return s;
}

inline std::vector<unsigned> tensor_digits(std::size_t idx, unsigned dim, unsigned t) {
    std::vector<unsigned> d(t);
    for (unsigned i = 0; i < t; ++i) { d[i] = static_cast<unsigned>(idx % dim); idx /= dim; }
    return d;
}

inline std::size_t tensor_index(const std::vector<unsigned>& d, unsigned dim) {
    std::size_t idx = 0;
    for (std::size_t i = d.size(); i-- > 0;) idx = idx * dim + d[i];
    return idx;
}

// Draws a dense symmetric order-t tensor: one stream element per sorted
// multi-index (ascending dense order), mirrored to all permutations.
inline std::vector<elt> draw_symmetric_tensor(unsigned dim, unsigned t,
                                              ElementStream& rng) {
    const std::size_t n = tensor_size(dim, t);
    std::vector<elt> a(n, 0);
    for (std::size_t idx = 0; idx < n; ++idx) {
        auto d = tensor_digits(idx, dim, t);
        bool sorted = true;
        for (unsigned i = 0; i + 1 < t; ++i)
            if (d[i] > d[i + 1]) { sorted = false; break; }
        if (sorted) a[idx] = rng.next();
    }
    for (std::size_t idx = 0; idx < n; ++idx) {
        auto d = tensor_digits(idx, dim, t);
        auto s = d;
        std::sort(s.begin(), s.end());
        if (s != d) a[idx] = a[tensor_index(s, dim)];
    }
    return a;
}

}  // namespace kps::detail
