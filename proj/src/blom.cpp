#include "kps/blom.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "kps/detail/tensor.hpp"

namespace kps {

namespace {

double binom(unsigned n, unsigned k) {
    double r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void check_distinct(std::span<const elt> ids) {
    std::set<elt> seen(ids.begin(), ids.end());
    if (seen.size() != ids.size())
        throw std::invalid_argument("privileged set must have pairwise distinct IDs");
}

}  // namespace

BlomMaster blom_setup(FieldPtr field, unsigned t, unsigned w, ElementStream& rng) {
    if (t < 2) throw std::invalid_argument("blom_setup requires t >= 2");
    if (!rng.field()->same(*field)) throw std::invalid_argument("rng field mismatch");
    BlomMaster m{std::move(field), t, w, {}};
    m.a = detail::draw_symmetric_tensor(w + 1, t, rng);
    return m;
}

BlomShare blom_share(const BlomMaster& master, elt e) {
    if (e >= master.field->size()) throw std::invalid_argument("ID outside the master's field");
    const unsigned dim = master.w + 1;
    const std::size_t out_n = detail::tensor_size(dim, master.t - 1);
    BlomShare s{master.field, master.t, master.w, e, std::vector<elt>(out_n, 0)};
    // b_{j_2..j_t} = sum_{j_1} a_{j_1 j_2..j_t} e^{j_1}
    std::vector<elt> epow(dim);
    epow[0] = master.field->one();
    for (unsigned i = 1; i < dim; ++i) epow[i] = master.field->mul(epow[i - 1], e);
    for (std::size_t rest = 0; rest < out_n; ++rest) {
        elt acc = 0;
        for (unsigned j1 = 0; j1 < dim; ++j1) {
            const std::size_t full = j1 + rest * dim;
            acc = master.field->add(acc, master.field->mul(master.a[full], epow[j1]));
        }
        s.b[rest] = acc;
    }
    return s;
}

namespace {

elt eval_tensor(const FieldPtr& f, const std::vector<elt>& a, unsigned dim,
                unsigned vars, std::span<const elt> ids) {
    // Contract the dense tensor against the power vectors of each ID.
    std::vector<elt> cur = a;
    for (unsigned v = 0; v < vars; ++v) {
        const elt e = ids[v];
        std::vector<elt> epow(dim);
        epow[0] = f->one();
        for (unsigned i = 1; i < dim; ++i) epow[i] = f->mul(epow[i - 1], e);
        const std::size_t rest_n = cur.size() / dim;
        std::vector<elt> next(rest_n, 0);
        for (std::size_t r = 0; r < rest_n; ++r) {
            elt acc = 0;
            for (unsigned j = 0; j < dim; ++j)
                acc = f->add(acc, f->mul(cur[j + r * dim], epow[j]));
            next[r] = acc;
        }
        cur = std::move(next);
    }
    return cur[0];
}

}  // namespace

elt blom_key(const BlomShare& share, std::span<const elt> others) {
    if (others.size() != share.t - 1)
        throw std::invalid_argument("blom_key expects t-1 peer IDs");
    std::vector<elt> all(others.begin(), others.end());
    all.push_back(share.owner);
    check_distinct(all);
    return eval_tensor(share.field, share.b, share.w + 1, share.t - 1, others);
}

elt blom_eval(const BlomMaster& master, std::span<const elt> ids) {
    if (ids.size() != master.t) throw std::invalid_argument("blom_eval expects t IDs");
    return eval_tensor(master.field, master.a, master.w + 1, master.t, ids);
}

double blom_storage_bits(std::uint64_t q, unsigned t, unsigned w) {
    return binom(w + t - 1, t - 1) * std::log2(static_cast<double>(q));
}

}  // namespace kps
