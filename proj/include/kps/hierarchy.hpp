#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "kps/gkps.hpp"
#include "kps/hkps.hpp"

namespace kps {

enum class Backend { gkps, hkps };

using Path = std::vector<unsigned>;   // child indices from the root; empty = root
std::string path_str(const Path& p);  // "-" for root, else "0.1.2"
Path parse_path(const std::string& s);

/// Parameters of an (L+1)-level hierarchy.  Every per-level KPS instance is
/// (2, 2U-2)-secure; the generalized backend uses pole polynomials P^h with
/// P irreducible of degree t, the hyperelliptic backend uses curves X_a.
struct HierarchySpec {
    Backend backend = Backend::gkps;
    unsigned U = 1;          // expansion number: max children per node
    unsigned levels = 2;     // total level count L+1, root included
    FieldPtr field;          // GF(q) for gkps; tower GF(q^2) for hkps
    unsigned t = 0;          // gkps degree split: t*h = H
    unsigned h = 0;

    unsigned instance_w() const { return 2 * U - 2; }
    unsigned pole_degree() const { return t * h; }
    // Field the pairwise keys live in: GF(q) for gkps, GF(q^2) for hkps.
    const FieldPtr& key_field() const { return field; }
    const FieldPtr& index_field() const;   // GF(q) in both backends
};

// Validates field-size and degree-split constraints; throws on violation.
HierarchySpec make_hierarchy_spec(Backend backend, unsigned U, unsigned levels,
                                  std::uint64_t q, unsigned t = 0, unsigned h = 0);

/// Per-node child counts.  Missing paths mean zero children.
using Shape = std::map<Path, unsigned>;
Shape full_shape(const HierarchySpec& spec);

struct InstanceTag {
    bool cross = false;
    Path a;                  // parent (sibling) or lexicographically smaller parent
    Path b;                  // other parent for cross instances; empty otherwise

    auto operator<=>(const InstanceTag&) const = default;
    std::string str() const;
};
InstanceTag parse_tag(const std::string& s);

using ShareVariant = std::variant<GkpsShare, HkpsShare>;
using MasterVariant = std::variant<GkpsMaster, HkpsMaster>;

struct NodeState {
    Path path;
    unsigned child_index = 0;    // local ID slot within the parent
    std::map<InstanceTag, ShareVariant> bundle;
};

struct Instance {
    InstanceTag tag;
    unsigned level = 0;          // level of the nodes it serves
    elt index = 0;               // descriptor index s in GF(q)
    MasterVariant master;        // TA-side only, never serialized
};

struct StorageReport {
    double actual_bits = 0;
    double paper_bound_bits = 0;
    std::size_t bundle_instances = 0;
    std::size_t parent_level_nodes = 0;  // the A_K of the paper's bound
};

class HierarchyTree;

struct LeakageReport {
    std::vector<InstanceTag> exposed;                 // >= 2U-1 leaked shares
    std::vector<std::pair<Path, Path>> derivable;     // same-level pairs with leaked keys
    std::shared_ptr<HierarchyTree> pruned;
};

class HierarchyTree {
public:
    static HierarchyTree build(HierarchySpec spec, const Shape& shape,
                               std::uint64_t seed);

    const HierarchySpec& spec() const { return spec_; }
    std::uint64_t seed() const { return seed_; }
    const std::map<Path, NodeState>& nodes() const { return nodes_; }
    const std::map<InstanceTag, Instance>& instances() const { return instances_; }
    const NodeState& node(const Path& p) const;
    bool has_node(const Path& p) const { return nodes_.count(p) != 0; }
    std::vector<Path> level_paths(unsigned level) const;
    unsigned children_of(const Path& p) const;

    // Shared key of two distinct same-level nodes (level >= 1), computed from
    // the first node's bundle only.
    elt pair_key(const Path& p1, const Path& p2) const;

    // Provisions one new child under `parent`; no existing NodeState changes.
    const NodeState& add_node(const Path& parent);

    StorageReport storage_bits(const Path& p) const;
    LeakageReport compromise(const std::vector<Path>& compromised) const;

    // The instance that serves keys between two same-level nodes.
    InstanceTag serving_tag(const Path& p1, const Path& p2) const;
    // Effective ID slot of a node inside one of its instances.
    unsigned slot_in(const InstanceTag& tag, const Path& p) const;

private:
    void make_level_instances(unsigned level);
    void provision_node(const Path& parent, unsigned child_index);
    ShareVariant make_share(const Instance& inst, unsigned slot) const;
    MasterVariant make_master(elt index, ElementStream coef) const;

    HierarchySpec spec_;
    std::uint64_t seed_ = 0;
    std::map<Path, NodeState> nodes_;
    std::map<InstanceTag, Instance> instances_;
};

/// Non-interactive key derivation: only one node's state plus the peer's
/// public identity (path) and the hierarchy parameters.
elt pair_key_noninteractive(const HierarchySpec& spec, const NodeState& me,
                            const Path& peer);

}  // namespace kps
