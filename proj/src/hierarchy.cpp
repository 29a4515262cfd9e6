#include "kps/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kps {

std::string path_str(const Path& p) {
    if (p.empty()) return "-";
    std::ostringstream os;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << ".";
        os << p[i];
    }
    return os.str();
}

Path parse_path(const std::string& s) {
    if (s == "-") return {};
    Path p;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t dot = s.find('.', pos);
        std::string tok = s.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (tok.empty()) throw std::invalid_argument("malformed path: " + s);
        p.push_back(static_cast<unsigned>(std::stoul(tok)));
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return p;
}

std::string InstanceTag::str() const {
    if (!cross) return "S:" + path_str(a);
    return "X:" + path_str(a) + "," + path_str(b);
}

InstanceTag parse_tag(const std::string& s) {
    if (s.rfind("S:", 0) == 0) return InstanceTag{false, parse_path(s.substr(2)), {}};
    if (s.rfind("X:", 0) == 0) {
        auto comma = s.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("malformed tag: " + s);
        return InstanceTag{true, parse_path(s.substr(2, comma - 2)),
                           parse_path(s.substr(comma + 1))};
    }
    throw std::invalid_argument("malformed tag: " + s);
}

const FieldPtr& HierarchySpec::index_field() const {
    return backend == Backend::gkps ? field : field->base_field();
}

HierarchySpec make_hierarchy_spec(Backend backend, unsigned U, unsigned levels,
                                  std::uint64_t q, unsigned t, unsigned h) {
    if (U < 1) throw std::invalid_argument("expansion number U must be >= 1");
    if (levels < 2) throw std::invalid_argument("hierarchy needs at least two levels");
    HierarchySpec s;
    s.backend = backend;
    s.U = U;
    s.levels = levels;
    if (backend == Backend::gkps) {
        if (q < 2 * U) throw std::invalid_argument("generalized backend requires q >= 2U");
        s.field = Field::gf(q);
        if (U == 1) {
            // th = 2U-1 = 1 would force a degree-1 pole with a root in GF(q);
            // the degenerate single-child hierarchy uses an irreducible
            // quadratic instead.
            s.t = 2;
            s.h = 1;
        } else {
            if (t == 0 || h == 0 || t * h != 2 * U - 1)
                throw std::invalid_argument("degree split must satisfy t*h = 2U-1");
            if (t < 2) throw std::invalid_argument("pole factors must have degree >= 2");
            s.t = t;
            s.h = h;
        }
        if (count_irreducibles(q, s.t).exact < static_cast<std::int64_t>(q))
            throw std::invalid_argument("too few degree-t irreducibles for the element correspondence");
    } else {
        if (q % 2 == 0 || q < 3)
            throw std::invalid_argument("hyperelliptic backend requires odd q");
        if (q * q < 2 * U)
            throw std::invalid_argument("hyperelliptic backend requires 2U <= q^2 ID slots");
        s.field = Field::quadratic(Field::gf(q));
    }
    return s;
}

Shape full_shape(const HierarchySpec& spec) {
    Shape shape;
    std::vector<Path> frontier{{}};
    for (unsigned level = 1; level < spec.levels; ++level) {
        std::vector<Path> next;
        for (const auto& p : frontier) {
            shape[p] = spec.U;
            for (unsigned j = 0; j < spec.U; ++j) {
                Path c = p;
                c.push_back(j);
                next.push_back(std::move(c));
            }
        }
        frontier = std::move(next);
    }
    return shape;
}

const NodeState& HierarchyTree::node(const Path& p) const {
    auto it = nodes_.find(p);
    if (it == nodes_.end()) throw std::invalid_argument("no such node: " + path_str(p));
    return it->second;
}

std::vector<Path> HierarchyTree::level_paths(unsigned level) const {
    std::vector<Path> out;
    for (const auto& [p, n] : nodes_)
        if (p.size() == level) out.push_back(p);
    return out;
}

unsigned HierarchyTree::children_of(const Path& p) const {
    unsigned count = 0;
    Path child = p;
    child.push_back(0);
    while (true) {
        child.back() = count;
        if (!nodes_.count(child)) break;
        ++count;
    }
    return count;
}

InstanceTag HierarchyTree::serving_tag(const Path& p1, const Path& p2) const {
    if (p1.size() != p2.size())
        throw std::invalid_argument("keys are defined only between same-level nodes");
    if (p1.empty()) throw std::invalid_argument("the root has no peers");
    if (p1 == p2) throw std::invalid_argument("identical paths have no pairwise key");
    Path a(p1.begin(), p1.end() - 1);
    Path b(p2.begin(), p2.end() - 1);
    if (a == b) return InstanceTag{false, a, {}};
    if (b < a) std::swap(a, b);
    return InstanceTag{true, a, b};
}

unsigned HierarchyTree::slot_in(const InstanceTag& tag, const Path& p) const {
    Path parent(p.begin(), p.end() - 1);
    unsigned offset = 0;
    if (tag.cross && parent == tag.b) offset = spec_.U;
    return offset + p.back();
}

namespace {

// Slot -> instance-local ID.  Slots are canonical field-element indices for
// the generalized backend and (x = canonical element, branch 0) points for
// the curve backend.
elt gkps_slot_id(unsigned slot) { return slot; }

std::string seed_material(std::uint64_t seed) { return "tree-seed:" + std::to_string(seed); }

GkpsDescriptor gkps_instance_descriptor(const HierarchySpec& spec, elt index) {
    auto irr = enumerate_irreducibles(spec.field, spec.t, index + 1);
    Poly pole = irr.back().pow(spec.h);
    return make_gkps_descriptor(spec.field, spec.instance_w(), std::move(pole));
}

}  // namespace

ShareVariant HierarchyTree::make_share(const Instance& inst, unsigned slot) const {
    if (spec_.backend == Backend::gkps)
        return gkps_share(std::get<GkpsMaster>(inst.master), gkps_slot_id(slot));
    const auto& m = std::get<HkpsMaster>(inst.master);
    return hkps_share(m, id_to_point(m.curve, slot, 0));
}

MasterVariant HierarchyTree::make_master(elt index, ElementStream coef) const {
    if (spec_.backend == Backend::gkps)
        return gkps_setup(gkps_instance_descriptor(spec_, index), coef);
    return hkps_setup(make_curve(spec_.field, index), spec_.instance_w(), coef);
}

void HierarchyTree::make_level_instances(unsigned level) {
    // Instances serving `level`, owned by the nodes at level-1.  Sibling
    // instances are created for every parent (children may be added later);
    // cross instances for every unordered parent pair.
    auto parents = level_paths(level - 1);
    for (const auto& parent : parents) {
        InstanceTag tag{false, parent, {}};
        if (instances_.count(tag)) continue;
        Instance inst;
        inst.tag = tag;
        inst.level = level;
        // Parent-local random draw of the scheme index, deterministic in the
        // tree seed; coefficients keyed the same way.
        ElementStream idx(spec_.index_field(), seed_material(seed_),
                          "index|" + tag.str());
        inst.index = idx.next();
        inst.master = make_master(
            inst.index,
            ElementStream(spec_.field, seed_material(seed_), "coef|" + tag.str()));
        instances_.emplace(tag, std::move(inst));
    }
    if (level < 2) return;
    for (std::size_t i = 0; i < parents.size(); ++i) {
        for (std::size_t j = i + 1; j < parents.size(); ++j) {
            InstanceTag tag{true, parents[i], parents[j]};
            if (instances_.count(tag)) continue;
            // Both parents derive the identical instance from their shared
            // key alone: the scheme index and the coefficient stream are
            // functions of the key, with no further interaction.
            const elt key = pair_key(parents[i], parents[j]);
            Instance inst;
            inst.tag = tag;
            inst.level = level;
            inst.index = spec_.backend == Backend::gkps ? key : spec_.field->norm(key);
            inst.master = make_master(
                inst.index, ElementStream::from_element(spec_.field, *spec_.key_field(),
                                                        key, "coef|" + tag.str()));
            instances_.emplace(tag, std::move(inst));
        }
    }
}

void HierarchyTree::provision_node(const Path& parent, unsigned child_index) {
    Path p = parent;
    p.push_back(child_index);
    NodeState state;
    state.path = p;
    state.child_index = child_index;
    for (const auto& [tag, inst] : instances_) {
        if (inst.level != p.size()) continue;
        if (tag.a != parent && !(tag.cross && tag.b == parent)) continue;
        state.bundle.emplace(tag, make_share(inst, slot_in(tag, p)));
    }
    nodes_.emplace(p, std::move(state));
}

HierarchyTree HierarchyTree::build(HierarchySpec spec, const Shape& shape,
                                   std::uint64_t seed) {
    HierarchyTree tree;
    tree.spec_ = std::move(spec);
    tree.seed_ = seed;
    tree.nodes_.emplace(Path{}, NodeState{{}, 0, {}});
    for (const auto& [p, count] : shape) {
        if (count > tree.spec_.U)
            throw std::invalid_argument("shape exceeds the expansion number at " + path_str(p));
        if (p.size() + 1 >= tree.spec_.levels && count > 0)
            throw std::invalid_argument("shape exceeds the level count at " + path_str(p));
    }
    for (unsigned level = 1; level < tree.spec_.levels; ++level) {
        tree.make_level_instances(level);
        for (const auto& parent : tree.level_paths(level - 1)) {
            auto it = shape.find(parent);
            const unsigned count = it == shape.end() ? 0 : it->second;
            for (unsigned j = 0; j < count; ++j) tree.provision_node(parent, j);
        }
    }
    return tree;
}

elt pair_key_noninteractive(const HierarchySpec& spec, const NodeState& me,
                            const Path& peer) {
    if (peer.size() != me.path.size())
        throw std::invalid_argument("keys are defined only between same-level nodes");
    if (peer == me.path) throw std::invalid_argument("identical paths have no pairwise key");
    if (me.path.empty()) throw std::invalid_argument("the root has no peers");
    Path a(me.path.begin(), me.path.end() - 1);
    Path b(peer.begin(), peer.end() - 1);
    InstanceTag tag = a == b ? InstanceTag{false, a, {}}
                             : (b < a ? InstanceTag{true, b, a} : InstanceTag{true, a, b});
    auto it = me.bundle.find(tag);
    if (it == me.bundle.end())
        throw std::invalid_argument("no provisioned share for instance " + tag.str());
    Path peer_parent(peer.begin(), peer.end() - 1);
    unsigned slot = peer.back() + ((tag.cross && peer_parent == tag.b) ? spec.U : 0);
    if (spec.backend == Backend::gkps)
        return gkps_key(std::get<GkpsShare>(it->second), gkps_slot_id(slot));
    const auto& share = std::get<HkpsShare>(it->second);
    return hkps_key(share, id_to_point(share.curve, slot, 0));
}

elt HierarchyTree::pair_key(const Path& p1, const Path& p2) const {
    return pair_key_noninteractive(spec_, node(p1), p2);
}

const NodeState& HierarchyTree::add_node(const Path& parent) {
    if (!nodes_.count(parent)) throw std::invalid_argument("no such parent: " + path_str(parent));
    if (parent.size() + 1 >= spec_.levels)
        throw std::invalid_argument("parent is at the leaf level");
    const unsigned count = children_of(parent);
    if (count >= spec_.U) throw std::invalid_argument("parent already has U children");
    provision_node(parent, count);
    Path p = parent;
    p.push_back(count);
    return nodes_.at(p);
}

StorageReport HierarchyTree::storage_bits(const Path& p) const {
    const NodeState& n = node(p);
    StorageReport r;
    r.bundle_instances = n.bundle.size();
    if (p.empty()) return r;
    r.parent_level_nodes = level_paths(static_cast<unsigned>(p.size()) - 1).size();
    const std::uint64_t q = spec_.backend == Backend::gkps
                                ? spec_.field->size()
                                : spec_.field->base_field()->size();
    const double lg = std::log2(static_cast<double>(q));
    if (spec_.backend == Backend::gkps) {
        for (const auto& [tag, share] : n.bundle)
            r.actual_bits += std::get<GkpsShare>(share).c.size() * lg;
        r.paper_bound_bits = 2.0 * r.parent_level_nodes * (2 * spec_.U - 1) * lg;
    } else {
        for (const auto& [tag, share] : n.bundle)
            r.actual_bits += std::get<HkpsShare>(share).c.size() * 2 * lg;
        r.paper_bound_bits =
            2.0 * r.parent_level_nodes * (2 * spec_.U + (q - 3) / 2.0) * (2 * lg);
    }
    return r;
}

LeakageReport HierarchyTree::compromise(const std::vector<Path>& compromised) const {
    LeakageReport report;
    std::set<Path> comp(compromised.begin(), compromised.end());
    for (const auto& p : comp)
        if (!nodes_.count(p)) throw std::invalid_argument("no such node: " + path_str(p));

    std::map<InstanceTag, unsigned> leaked;
    for (const auto& p : comp)
        for (const auto& [tag, share] : nodes_.at(p).bundle) ++leaked[tag];
    const unsigned threshold = spec_.instance_w() + 1;   // 2U-1 shares expose an instance
    std::set<InstanceTag> exposed_set;
    for (const auto& [tag, count] : leaked)
        if (count >= threshold) {
            exposed_set.insert(tag);
            report.exposed.push_back(tag);
        }

    auto compromised_or_descendant = [&](const Path& p) {
        for (std::size_t len = 0; len <= p.size(); ++len)
            if (comp.count(Path(p.begin(), p.begin() + len))) return true;
        return false;
    };

    for (unsigned level = 1; level < spec_.levels; ++level) {
        auto paths = level_paths(level);
        for (std::size_t i = 0; i < paths.size(); ++i) {
            for (std::size_t j = i + 1; j < paths.size(); ++j) {
                const bool endpoint_leaked = comp.count(paths[i]) || comp.count(paths[j]);
                const bool instance_leaked =
                    exposed_set.count(serving_tag(paths[i], paths[j])) != 0;
                if (endpoint_leaked || instance_leaked)
                    report.derivable.emplace_back(paths[i], paths[j]);
            }
        }
    }

    auto pruned = std::make_shared<HierarchyTree>(*this);
    for (auto it = pruned->nodes_.begin(); it != pruned->nodes_.end();) {
        if (compromised_or_descendant(it->first)) it = pruned->nodes_.erase(it);
        else ++it;
    }
    for (const auto& tag : exposed_set) pruned->instances_.erase(tag);
    report.pruned = std::move(pruned);
    return report;
}

}  // namespace kps
