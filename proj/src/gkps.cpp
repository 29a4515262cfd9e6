#include "kps/gkps.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "kps/detail/tensor.hpp"

namespace kps {

GkpsDescriptor make_gkps_descriptor(FieldPtr field, unsigned w, Poly pole,
                                    bool allow_trivial_pole) {
    if (!pole.f->same(*field)) throw std::invalid_argument("pole polynomial field mismatch");
    if (pole.is_zero()) throw std::invalid_argument("pole polynomial is zero");
    if (pole.degree() == 0) {
        if (!allow_trivial_pole)
            throw std::invalid_argument("constant pole polynomial only allowed in test mode");
    } else if (static_cast<unsigned>(pole.degree()) < w) {
        throw std::invalid_argument("pole degree H must satisfy H >= w");
    }
    for (elt e = 0; e < field->size(); ++e)
        if (pole.eval(e) == 0)
            throw std::invalid_argument("pole polynomial has a root in GF(q)");
    return GkpsDescriptor{std::move(field), w, std::move(pole)};
}

std::vector<elt> gkps_basis_at(const GkpsDescriptor& d, elt e) {
    const auto& f = d.field;
    const elt pinv = f->inv(d.pole.eval(e));
    std::vector<elt> u(d.w + 1);
    elt epow = f->one();
    for (unsigned i = 0; i <= d.w; ++i) {
        u[i] = f->mul(epow, pinv);
        epow = f->mul(epow, e);
    }
    return u;
}

GkpsMaster gkps_setup(GkpsDescriptor d, ElementStream& rng) {
    if (!rng.field()->same(*d.field)) throw std::invalid_argument("rng field mismatch");
    GkpsMaster m{std::move(d), {}};
    m.a = detail::draw_symmetric_tensor(m.d.w + 1, 2, rng);
    return m;
}

GkpsShare gkps_share(const GkpsMaster& master, elt e) {
    const auto& f = master.d.field;
    if (e >= f->size()) throw std::invalid_argument("ID outside the scheme's field");
    const unsigned dim = master.d.w + 1;
    auto u = gkps_basis_at(master.d, e);
    GkpsShare s{master.d, e, std::vector<elt>(dim, 0)};
    for (unsigned j = 0; j < dim; ++j) {
        elt acc = 0;
        for (unsigned i = 0; i < dim; ++i)
            acc = f->add(acc, f->mul(master.a[i + j * dim], u[i]));
        s.c[j] = acc;
    }
    return s;
}

elt gkps_key(const GkpsShare& share, elt peer) {
    if (peer == share.owner) throw std::invalid_argument("self-pairing has no shared key");
    const auto& f = share.d.field;
    auto u = gkps_basis_at(share.d, peer);
    elt acc = 0;
    for (unsigned j = 0; j <= share.d.w; ++j)
        acc = f->add(acc, f->mul(share.c[j], u[j]));
    return acc;
}

elt gkps_eval(const GkpsMaster& master, elt e1, elt e2) {
    const auto& f = master.d.field;
    const unsigned dim = master.d.w + 1;
    auto u1 = gkps_basis_at(master.d, e1);
    auto u2 = gkps_basis_at(master.d, e2);
    elt acc = 0;
    for (unsigned i = 0; i < dim; ++i)
        for (unsigned j = 0; j < dim; ++j)
            acc = f->add(acc, f->mul(master.a[i + j * dim], f->mul(u1[i], u2[j])));
    return acc;
}

namespace {

std::int64_t checked_pow(std::int64_t b, unsigned e) {
    __int128 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= b;
        if (r > INT64_MAX) throw std::overflow_error("scheme count overflow");
    }
    return static_cast<std::int64_t>(r);
}

}  // namespace

SchemeCount gkps_count(std::uint64_t q, unsigned H) {
    if (H < 1) throw std::invalid_argument("H must be >= 1");
    // Degree-1 irreducibles have roots in GF(q) and cannot appear in a pole
    // polynomial, so the t = 1 term contributes nothing.
    std::int64_t bound = 0;
    for (unsigned t = 2; t <= H; ++t) {
        if (H % t != 0) continue;
        bound += checked_pow(count_irreducibles(q, t).paper_lower_bound, H / t);
    }
    SchemeCount out{bound, std::nullopt};
    if (is_prime(H)) {
        __int128 qh = 1;
        for (unsigned i = 0; i < H; ++i) qh *= q;
        out.prime_form = static_cast<std::int64_t>((qh - q) / H);
    }
    return out;
}

GkpsStorage gkps_storage_bits(std::uint64_t q, unsigned w, unsigned H) {
    const double lg = std::log2(static_cast<double>(q));
    return {(w + 1) * lg, (H + w + 2) * lg};
}

// --- t-variable variant -----------------------------------------------------

namespace {

void check_distinct_with(elt owner, std::span<const elt> others) {
    std::set<elt> seen(others.begin(), others.end());
    seen.insert(owner);
    if (seen.size() != others.size() + 1)
        throw std::invalid_argument("privileged set must have pairwise distinct IDs");
}

elt contract_tensor(const GkpsDescriptor& d, const std::vector<elt>& a,
                    unsigned vars, std::span<const elt> ids) {
    const auto& f = d.field;
    const unsigned dim = d.w + 1;
    std::vector<elt> cur = a;
    for (unsigned v = 0; v < vars; ++v) {
        auto u = gkps_basis_at(d, ids[v]);
        const std::size_t rest_n = cur.size() / dim;
        std::vector<elt> next(rest_n, 0);
        for (std::size_t r = 0; r < rest_n; ++r) {
            elt acc = 0;
            for (unsigned j = 0; j < dim; ++j)
                acc = f->add(acc, f->mul(cur[j + r * dim], u[j]));
            next[r] = acc;
        }
        cur = std::move(next);
    }
    return cur[0];
}

}  // namespace

GkpsTMaster gkps_t_setup(GkpsDescriptor d, unsigned t, ElementStream& rng) {
    if (t < 2) throw std::invalid_argument("t-variable scheme requires t >= 2");
    if (!rng.field()->same(*d.field)) throw std::invalid_argument("rng field mismatch");
    GkpsTMaster m{std::move(d), t, {}};
    m.a = detail::draw_symmetric_tensor(m.d.w + 1, t, rng);
    return m;
}

GkpsTShare gkps_t_share(const GkpsTMaster& master, elt e) {
    const auto& f = master.d.field;
    if (e >= f->size()) throw std::invalid_argument("ID outside the scheme's field");
    const unsigned dim = master.d.w + 1;
    auto u = gkps_basis_at(master.d, e);
    const std::size_t out_n = detail::tensor_size(dim, master.t - 1);
    GkpsTShare s{master.d, master.t, e, std::vector<elt>(out_n, 0)};
    for (std::size_t rest = 0; rest < out_n; ++rest) {
        elt acc = 0;
        for (unsigned i = 0; i < dim; ++i)
            acc = f->add(acc, f->mul(master.a[i + rest * dim], u[i]));
        s.b[rest] = acc;
    }
    return s;
}

elt gkps_t_key(const GkpsTShare& share, std::span<const elt> others) {
    if (others.size() != share.t - 1)
        throw std::invalid_argument("t-variable key expects t-1 peer IDs");
    check_distinct_with(share.owner, others);
    return contract_tensor(share.d, share.b, share.t - 1, others);
}

elt gkps_t_eval(const GkpsTMaster& master, std::span<const elt> ids) {
    if (ids.size() != master.t) throw std::invalid_argument("expected t IDs");
    return contract_tensor(master.d, master.a, master.t, ids);
}

double gkps_t_storage_bits(std::uint64_t q, unsigned t, unsigned w, unsigned H) {
    const double lg = std::log2(static_cast<double>(q));
    double binom = 1;
    for (unsigned i = 1; i <= t - 1; ++i) binom = binom * (t + w - 1 - (t - 1) + i) / i;
    return binom * lg + (H + 1) * lg;
}

}  // namespace kps
