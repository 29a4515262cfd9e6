#include "kps/verifier.hpp"

#include <algorithm>
#include <cmath>

namespace kps {

EvalMatrix eval_matrix(const GkpsDescriptor& d, std::span<const elt> ids) {
    if (ids.empty()) throw std::invalid_argument("empty enrollment");
    EvalMatrix m{d.field, d.w + 1, ids.size(), {}};
    m.a.resize(m.rows * m.cols);
    for (std::size_t j = 0; j < ids.size(); ++j) {
        auto u = gkps_basis_at(d, ids[j]);
        for (std::size_t i = 0; i < m.rows; ++i) m.a[i * m.cols + j] = u[i];
    }
    return m;
}

EvalMatrix eval_matrix(const Curve& curve, unsigned w) {
    auto pts = curve_points(curve);
    pts.pop_back();   // drop the infinity marker
    RRBasis basis = rr_basis(curve.q(), w + static_cast<unsigned>(curve.q()) - 1);
    EvalMatrix m{curve.ext, basis.size(), pts.size(), {}};
    m.a.resize(m.rows * m.cols);
    for (std::size_t j = 0; j < pts.size(); ++j) {
        auto v = rr_basis_at(curve, basis, pts[j]);
        for (std::size_t i = 0; i < m.rows; ++i) m.a[i * m.cols + j] = v[i];
    }
    return m;
}

EvalMatrix eval_matrix_vandermonde(const FieldPtr& f, unsigned w,
                                   std::span<const elt> ids) {
    if (ids.empty()) throw std::invalid_argument("empty enrollment");
    EvalMatrix m{f, w + 1, ids.size(), {}};
    m.a.resize(m.rows * m.cols);
    for (std::size_t j = 0; j < ids.size(); ++j) {
        elt p = f->one();
        for (std::size_t i = 0; i <= w; ++i) {
            m.a[i * m.cols + j] = p;
            p = f->mul(p, ids[j]);
        }
    }
    return m;
}

std::size_t matrix_rank(const FieldPtr& f, std::vector<elt> m,
                        std::size_t rows, std::size_t cols) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot * cols + col] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::size_t c = 0; c < cols; ++c)
                std::swap(m[pivot * cols + c], m[rank * cols + c]);
        const elt inv = f->inv(m[rank * cols + col]);
        for (std::size_t c = col; c < cols; ++c)
            m[rank * cols + c] = f->mul(m[rank * cols + c], inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            const elt factor = m[r * cols + col];
            if (factor == 0) continue;
            for (std::size_t c = col; c < cols; ++c)
                m[r * cols + c] = f->sub(m[r * cols + c], f->mul(factor, m[rank * cols + c]));
        }
        ++rank;
    }
    return rank;
}

namespace {

bool columns_independent(const EvalMatrix& m, const std::vector<std::size_t>& cols) {
    std::vector<elt> sub(m.rows * cols.size());
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            sub[r * cols.size() + c] = m.at(r, cols[c]);
    return matrix_rank(m.field, std::move(sub), m.rows, cols.size()) == cols.size();
}

}  // namespace

MdsResult mds_check(const EvalMatrix& m, unsigned w, bool exhaustive,
                    std::uint64_t samples, std::uint64_t sample_seed) {
    const std::size_t k = w + 1;
    if (k > m.cols) throw std::invalid_argument("w+1 exceeds the column count");
    if (k > m.rows) throw std::invalid_argument("w+1 exceeds the row count");
    MdsResult res;
    res.exhaustive = exhaustive;
    if (exhaustive) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            ++res.subsets_checked;
            if (!columns_independent(m, idx)) return {false, idx, res.subsets_checked, true};
            // next combination
            std::size_t i = k;
            while (i-- > 0) {
                if (idx[i] != m.cols - k + i) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) return res;
            }
        }
    }
    ElementStream rng(m.field, "mds-sample:" + std::to_string(sample_seed), "subsets");
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::vector<std::size_t> idx;
        while (idx.size() < k) {
            std::size_t c = rng.next_below(m.cols);
            if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
        }
        std::sort(idx.begin(), idx.end());
        ++res.subsets_checked;
        if (!columns_independent(m, idx)) return {false, idx, res.subsets_checked, false};
    }
    return res;
}

UniformityVerdict uniformity_oracle(
    const FieldPtr& field, const std::vector<std::vector<elt>>& vectors,
    const std::vector<std::size_t>& coalition,
    const std::vector<std::vector<elt>>& coalition_shares,
    std::size_t target_a, std::size_t target_b, std::uint64_t master_limit) {
    if (vectors.empty()) throw std::invalid_argument("empty enrollment");
    const std::size_t m = vectors.front().size();
    const std::uint64_t q = field->size();
    if (coalition.size() != coalition_shares.size())
        throw std::invalid_argument("coalition view size mismatch");
    if (coalition.size() >= m)
        throw std::invalid_argument("coalition too large for a w-secure instance");
    for (auto t : {target_a, target_b})
        if (std::find(coalition.begin(), coalition.end(), t) != coalition.end())
            throw std::invalid_argument("target pair must be disjoint from the coalition");
    const std::size_t free = m * (m + 1) / 2;
    double total = std::pow(static_cast<double>(q), static_cast<double>(free));
    if (total > static_cast<double>(master_limit))
        throw intractable_error("master enumeration exceeds the tractability gate");

    // Free entries: (i, j) with i <= j, mirrored into the symmetric matrix.
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i <= j; ++i) slots.emplace_back(i, j);

    UniformityVerdict verdict;
    std::vector<elt> odo(free, 0);
    std::vector<elt> A(m * m, 0);
    auto share_of = [&](std::size_t user) {
        std::vector<elt> s(m, 0);
        for (std::size_t j = 0; j < m; ++j) {
            elt acc = 0;
            for (std::size_t i = 0; i < m; ++i)
                acc = field->add(acc, field->mul(A[i * m + j], vectors[user][i]));
            s[j] = acc;
        }
        return s;
    };
    while (true) {
        for (std::size_t s = 0; s < free; ++s) {
            auto [i, j] = slots[s];
            A[i * m + j] = odo[s];
            A[j * m + i] = odo[s];
        }
        bool consistent = true;
        for (std::size_t c = 0; c < coalition.size() && consistent; ++c)
            consistent = share_of(coalition[c]) == coalition_shares[c];
        if (consistent) {
            ++verdict.consistent_masters;
            elt key = 0;
            for (std::size_t i = 0; i < m; ++i) {
                elt row = 0;
                for (std::size_t j = 0; j < m; ++j)
                    row = field->add(row, field->mul(A[i * m + j], vectors[target_b][j]));
                key = field->add(key, field->mul(vectors[target_a][i], row));
            }
            ++verdict.tally[key];
        }
        // odometer
        std::size_t pos = 0;
        while (pos < free && ++odo[pos] == q) odo[pos++] = 0;
        if (pos == free) break;
    }
    if (verdict.consistent_masters == 0)
        throw std::logic_error("coalition view inconsistent with every master");
    verdict.uniform = verdict.tally.size() == q &&
        std::all_of(verdict.tally.begin(), verdict.tally.end(), [&](const auto& kv) {
            return kv.second == verdict.consistent_masters / q;
        }) && verdict.consistent_masters % q == 0;
    return verdict;
}

UniformityVerdict resilience_check(const HierarchyTree& tree,
                                   const std::vector<Path>& compromised,
                                   const Path& target_a, const Path& target_b,
                                   std::uint64_t master_limit) {
    for (const auto& p : compromised)
        if (p == target_a || p == target_b)
            throw std::invalid_argument("target pair must be uncompromised");
    const InstanceTag tag = tree.serving_tag(target_a, target_b);
    const auto& spec = tree.spec();

    // Members of the instance: every same-level node holding a share for it.
    std::vector<Path> members;
    for (const auto& [p, state] : tree.nodes())
        if (state.bundle.count(tag)) members.push_back(p);
    std::vector<std::size_t> coalition;
    std::vector<std::vector<elt>> coalition_shares;
    std::vector<std::vector<elt>> vectors;
    FieldPtr field = spec.key_field();
    std::size_t ta = members.size(), tb = members.size();
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& state = tree.node(members[i]);
        const unsigned slot = tree.slot_in(tag, members[i]);
        const ShareVariant& sv = state.bundle.at(tag);
        if (spec.backend == Backend::gkps) {
            const auto& sh = std::get<GkpsShare>(sv);
            vectors.push_back(gkps_basis_at(sh.d, slot));
        } else {
            const auto& sh = std::get<HkpsShare>(sv);
            vectors.push_back(rr_basis_at(sh.curve, sh.basis,
                                          id_to_point(sh.curve, slot, 0)));
        }
        if (members[i] == target_a) ta = i;
        if (members[i] == target_b) tb = i;
        if (std::find(compromised.begin(), compromised.end(), members[i]) !=
            compromised.end()) {
            coalition.push_back(i);
            if (spec.backend == Backend::gkps)
                coalition_shares.push_back(std::get<GkpsShare>(sv).c);
            else
                coalition_shares.push_back(std::get<HkpsShare>(sv).c);
        }
    }
    if (ta == members.size() || tb == members.size())
        throw std::invalid_argument("target nodes are not members of a common instance");
    if (coalition.size() >= spec.instance_w() + 1)
        throw std::invalid_argument("instance fully exposed by the coalition");
    return uniformity_oracle(field, vectors, coalition, coalition_shares, ta, tb,
                             master_limit);
}

std::size_t numerator_root_count(const GkpsDescriptor& d, std::span<const elt> coeffs) {
    Poly num = Poly::from_coeffs(d.field, std::vector<elt>(coeffs.begin(), coeffs.end()));
    std::size_t roots = 0;
    for (elt e = 0; e < d.field->size(); ++e)
        if (num.eval(e) == 0) ++roots;
    return roots;
}

}  // namespace kps
