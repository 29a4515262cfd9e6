// kpstool: command-line front-end for the key-predistribution toolkit.
//
// Every generating command takes an explicit --seed and is a pure function of
// its arguments: re-running it produces byte-identical files.  --entropy os
// substitutes a system-random seed (the chosen value is printed so the run
// can still be reproduced).
//
// Exit codes: 0 success/certified, 1 refuted/violation, 2 intractable or
// unsupported, 64 usage error.

#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kps/blom.hpp"
#include "kps/gkps.hpp"
#include "kps/hierarchy.hpp"
#include "kps/hkps.hpp"
#include "kps/serial.hpp"
#include "kps/verifier.hpp"

namespace {

using namespace kps;

// Element arguments use the canonical fixed-width base-p encoding; a plain
// decimal index is accepted when the token width differs.
elt parse_elt_arg(const Field& f, const std::string& s) {
    if (s.size() == f.degree()) {
        try {
            return parse_element(f, s);
        } catch (const std::exception&) {
        }
    }
    elt v = std::stoull(s);
    if (v >= f.size()) throw std::invalid_argument("element index out of range: " + s);
    return v;
}

std::vector<elt> parse_csv_elts(const Field& f, const std::string& s) {
    std::vector<elt> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(parse_elt_arg(f, tok));
    return out;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(tok);
    return out;
}

std::uint64_t effective_seed(std::uint64_t seed, const std::string& entropy) {
    if (entropy.empty()) return seed;
    if (entropy != "os") throw std::invalid_argument("--entropy accepts only 'os'");
    std::random_device rd;
    std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cout << "entropy seed " << s << "\n";
    return s;
}

std::string seed_material(std::uint64_t seed) { return "cli-seed:" + std::to_string(seed); }

int cmd_field_info(std::uint64_t p, unsigned k) {
    FieldPtr f = Field::extension(p, k);
    std::cout << "field " << qspec_str(*f) << "\n";
    std::cout << "size " << f->size() << "\n";
    std::cout << "spec " << f->spec() << "\n";
    std::cout << "header " << field_header(*f) << "\n";
    return 0;
}

int cmd_irr_count(std::uint64_t q, unsigned t) {
    auto c = count_irreducibles(q, t);
    std::cout << "exact " << c.exact << "\n";
    std::cout << "lower-bound " << c.paper_lower_bound << "\n";
    return 0;
}

int cmd_irr_list(std::uint64_t q, unsigned t, std::uint64_t count) {
    FieldPtr f = Field::gf(q);
    auto total = count_irreducibles(q, t).exact;
    if (count == 0 || count > static_cast<std::uint64_t>(total))
        count = static_cast<std::uint64_t>(total);
    for (const auto& poly : enumerate_irreducibles(f, t, count)) {
        for (std::size_t i = 0; i < poly.c.size(); ++i)
            std::cout << (i ? " " : "") << element_str(*f, poly.c[i]);
        std::cout << "\n";
    }
    return 0;
}

struct GenArgs {
    std::string backend;
    std::uint64_t q = 0;
    unsigned w = 0;
    unsigned t = 2;
    std::string pole;      // gkps: comma-separated coefficients, lowest first
    std::string a = "0";   // hkps curve parameter
    std::uint64_t seed = 0;
    std::string entropy;
    std::string out;
};

int cmd_kps_gen(const GenArgs& g) {
    const std::uint64_t seed = effective_seed(g.seed, g.entropy);
    std::string text;
    if (g.backend == "blom") {
        FieldPtr f = Field::gf(g.q);
        ElementStream rng(f, seed_material(seed), "blom");
        text = write_blom_master(blom_setup(f, g.t, g.w, rng));
    } else if (g.backend == "gkps") {
        FieldPtr f = Field::gf(g.q);
        if (g.pole.empty()) throw std::invalid_argument("--P is required for the gkps backend");
        Poly pole = Poly::from_coeffs(f, parse_csv_elts(*f, g.pole));
        auto d = make_gkps_descriptor(f, g.w, std::move(pole));
        ElementStream rng(f, seed_material(seed), "gkps");
        text = write_gkps_master(gkps_setup(std::move(d), rng));
    } else if (g.backend == "hkps") {
        FieldPtr base = Field::gf(g.q);
        FieldPtr tower = Field::quadratic(base);
        Curve curve = make_curve(tower, parse_elt_arg(*base, g.a));
        ElementStream rng(tower, seed_material(seed), "hkps");
        text = write_hkps_master(hkps_setup(std::move(curve), g.w, rng));
    } else {
        throw std::invalid_argument("unknown backend: " + g.backend);
    }
    write_text_file(g.out, text);
    return 0;
}

int cmd_kps_share(const std::string& master_path, const std::string& id,
                  unsigned branch, const std::string& out) {
    std::istringstream in(read_text_file(master_path));
    MasterFile m = read_master_file(in);
    std::string text;
    if (auto* b = std::get_if<BlomMaster>(&m))
        text = write_blom_share(blom_share(*b, parse_elt_arg(*b->field, id)));
    else if (auto* gk = std::get_if<GkpsMaster>(&m))
        text = write_gkps_share(gkps_share(*gk, parse_elt_arg(*gk->d.field, id)));
    else {
        auto& hk = std::get<HkpsMaster>(m);
        CurvePoint W = id_to_point(hk.curve, parse_elt_arg(*hk.curve.ext, id), branch);
        text = write_hkps_share(hkps_share(hk, W));
    }
    write_text_file(out, text);
    return 0;
}

int cmd_kps_key(const std::string& share_path, const std::vector<std::string>& peers,
                unsigned branch) {
    std::istringstream in(read_text_file(share_path));
    ShareFile s = read_share_file(in);
    if (auto* b = std::get_if<BlomShare>(&s)) {
        std::vector<elt> others;
        for (const auto& p : peers) others.push_back(parse_elt_arg(*b->field, p));
        std::cout << element_str(*b->field, blom_key(*b, others)) << "\n";
    } else if (auto* gk = std::get_if<GkpsShare>(&s)) {
        if (peers.size() != 1) throw std::invalid_argument("gkps keys take exactly one --peer");
        std::cout << element_str(*gk->d.field,
                                 gkps_key(*gk, parse_elt_arg(*gk->d.field, peers[0])))
                  << "\n";
    } else {
        auto& hk = std::get<HkpsShare>(s);
        if (peers.size() != 1) throw std::invalid_argument("hkps keys take exactly one --peer");
        CurvePoint peer =
            id_to_point(hk.curve, parse_elt_arg(*hk.curve.ext, peers[0]), branch);
        std::cout << element_str(*hk.curve.ext, hkps_key(hk, peer)) << "\n";
    }
    return 0;
}

struct HierBuildArgs {
    std::string backend = "gkps";
    unsigned U = 1;
    unsigned levels = 2;
    std::uint64_t q = 0;
    unsigned t = 0;
    unsigned h = 0;
    std::string shape;     // "path:count;path:count", default full
    std::uint64_t seed = 0;
    std::string entropy;
    std::string out;
};

int cmd_hier_build(const HierBuildArgs& a) {
    const std::uint64_t seed = effective_seed(a.seed, a.entropy);
    Backend backend = a.backend == "hkps" ? Backend::hkps : Backend::gkps;
    if (a.backend != "gkps" && a.backend != "hkps")
        throw std::invalid_argument("unknown backend: " + a.backend);
    HierarchySpec spec = make_hierarchy_spec(backend, a.U, a.levels, a.q, a.t, a.h);
    Shape shape;
    if (a.shape.empty()) {
        shape = full_shape(spec);
    } else {
        std::istringstream is(a.shape);
        std::string entry;
        while (std::getline(is, entry, ';')) {
            auto colon = entry.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("shape entries look like 'path:count'");
            shape[parse_path(entry.substr(0, colon))] =
                static_cast<unsigned>(std::stoul(entry.substr(colon + 1)));
        }
    }
    HierarchyTree tree = HierarchyTree::build(std::move(spec), shape, seed);
    write_text_file(a.out, write_tree(tree));
    return 0;
}

HierarchyTree load_tree(const std::string& path) {
    std::istringstream in(read_text_file(path));
    return read_tree(in);
}

int cmd_hier_key(const std::string& tree_path, const std::string& a, const std::string& b) {
    HierarchyTree tree = load_tree(tree_path);
    elt key = tree.pair_key(parse_path(a), parse_path(b));
    std::cout << element_str(*tree.spec().key_field(), key) << "\n";
    return 0;
}

int cmd_hier_add(const std::string& tree_path, const std::string& parent) {
    HierarchyTree tree = load_tree(tree_path);
    const NodeState& node = tree.add_node(parse_path(parent));
    write_text_file(tree_path, write_tree(tree));
    std::cout << "added " << path_str(node.path) << "\n";
    return 0;
}

int cmd_hier_storage(const std::string& tree_path, const std::string& node) {
    HierarchyTree tree = load_tree(tree_path);
    StorageReport r = tree.storage_bits(parse_path(node));
    std::cout << "actual-bits " << r.actual_bits << "\n";
    std::cout << "bound-bits " << r.paper_bound_bits << "\n";
    std::cout << "instances " << r.bundle_instances << "\n";
    return 0;
}

int cmd_hier_compromise(const std::string& tree_path, const std::string& nodes) {
    HierarchyTree tree = load_tree(tree_path);
    std::vector<Path> comp;
    for (const auto& s : split_csv(nodes)) comp.push_back(parse_path(s));
    LeakageReport r = tree.compromise(comp);
    for (const auto& tag : r.exposed) std::cout << "exposed " << tag.str() << "\n";
    for (const auto& [p1, p2] : r.derivable)
        std::cout << "derivable " << path_str(p1) << " " << path_str(p2) << "\n";
    std::cout << "surviving-nodes " << r.pruned->nodes().size() << "\n";
    return 0;
}

int cmd_verify_mds(const std::string& scheme_path, const std::string& mode,
                   std::uint64_t samples, std::uint64_t sample_seed) {
    std::istringstream in(read_text_file(scheme_path));
    MasterFile m = read_master_file(in);
    EvalMatrix em{nullptr, 0, 0, {}};
    unsigned w = 0;
    if (auto* b = std::get_if<BlomMaster>(&m)) {
        std::vector<elt> ids(b->field->size());
        for (elt e = 0; e < b->field->size(); ++e) ids[e] = e;
        em = eval_matrix_vandermonde(b->field, b->w, ids);
        w = b->w;
    } else if (auto* gk = std::get_if<GkpsMaster>(&m)) {
        std::vector<elt> ids(gk->d.field->size());
        for (elt e = 0; e < gk->d.field->size(); ++e) ids[e] = e;
        em = eval_matrix(gk->d, ids);
        w = gk->d.w;
    } else {
        auto& hk = std::get<HkpsMaster>(m);
        em = eval_matrix(hk.curve, hk.w);
        w = hk.w;
    }
    MdsResult res = mds_check(em, w, mode == "exhaustive", samples, sample_seed);
    std::cout << (res.ok ? "certified" : "refuted") << " subsets "
              << res.subsets_checked << (res.exhaustive ? " exhaustive" : " sampled")
              << "\n";
    if (!res.ok) {
        std::cout << "witness";
        for (auto c : res.witness) std::cout << " " << c;
        std::cout << "\n";
    }
    return res.ok ? 0 : 1;
}

int cmd_verify_uniform(const std::string& scheme_path, const std::string& coalition_csv,
                       const std::string& a, const std::string& b,
                       std::uint64_t master_limit) {
    std::istringstream in(read_text_file(scheme_path));
    MasterFile m = read_master_file(in);
    auto* gk = std::get_if<GkpsMaster>(&m);
    if (!gk) {
        std::cout << "unsupported: the uniformity oracle covers gkps masters\n";
        return 2;
    }
    const FieldPtr& f = gk->d.field;
    std::vector<std::vector<elt>> vectors;
    for (elt e = 0; e < f->size(); ++e) vectors.push_back(gkps_basis_at(gk->d, e));
    std::vector<std::size_t> coalition;
    std::vector<std::vector<elt>> shares;
    for (elt e : parse_csv_elts(*f, coalition_csv)) {
        coalition.push_back(e);
        shares.push_back(gkps_share(*gk, e).c);
    }
    UniformityVerdict v =
        uniformity_oracle(f, vectors, coalition, shares, parse_elt_arg(*f, a),
                          parse_elt_arg(*f, b), master_limit);
    std::cout << (v.uniform ? "uniform" : "non-uniform") << " masters "
              << v.consistent_masters << "\n";
    return v.uniform ? 0 : 1;
}

int cmd_verify_resilience(const std::string& tree_path, const std::string& nodes,
                          const std::string& a, const std::string& b,
                          std::uint64_t master_limit) {
    HierarchyTree tree = load_tree(tree_path);
    std::vector<Path> comp;
    for (const auto& s : split_csv(nodes)) comp.push_back(parse_path(s));
    UniformityVerdict v =
        resilience_check(tree, comp, parse_path(a), parse_path(b), master_limit);
    std::cout << (v.uniform ? "uniform" : "non-uniform") << " masters "
              << v.consistent_masters << "\n";
    return v.uniform ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"key predistribution toolkit"};
    app.require_subcommand(1);

    // field info
    auto* field = app.add_subcommand("field", "finite field inspection");
    field->require_subcommand(1);
    auto* finfo = field->add_subcommand("info", "print descriptor and canonical modulus");
    std::uint64_t fi_p = 0;
    unsigned fi_k = 1;
    finfo->add_option("p", fi_p, "characteristic")->required();
    finfo->add_option("k", fi_k, "extension degree")->required();

    // irr
    auto* irr = app.add_subcommand("irr", "irreducible polynomials");
    irr->require_subcommand(1);
    std::uint64_t ir_q = 0, ir_n = 0;
    unsigned ir_t = 0;
    auto* icount = irr->add_subcommand("count", "count monic irreducibles of degree t");
    icount->add_option("--q", ir_q, "field size")->required();
    icount->add_option("--t", ir_t, "degree")->required();
    auto* ilist = irr->add_subcommand("list", "list monic irreducibles in canonical order");
    ilist->add_option("--q", ir_q, "field size")->required();
    ilist->add_option("--t", ir_t, "degree")->required();
    ilist->add_option("--count", ir_n, "how many (default: all)");

    // kps
    auto* kps_cmd = app.add_subcommand("kps", "single-instance scheme lifecycle");
    kps_cmd->require_subcommand(1);
    GenArgs gen;
    auto* kgen = kps_cmd->add_subcommand("gen", "draw a master secret");
    kgen->add_option("--backend", gen.backend, "blom | gkps | hkps")->required();
    kgen->add_option("--q", gen.q, "field size")->required();
    kgen->add_option("--w", gen.w, "security parameter")->required();
    kgen->add_option("--t", gen.t, "variable count (blom)");
    kgen->add_option("--P", gen.pole, "pole coefficients, lowest first (gkps)");
    kgen->add_option("--a", gen.a, "curve parameter (hkps)");
    kgen->add_option("--seed", gen.seed, "deterministic seed")->required();
    kgen->add_option("--entropy", gen.entropy, "'os' for system randomness");
    kgen->add_option("--out", gen.out, "output file")->required();

    std::string ks_master, ks_id, ks_out, kk_share;
    unsigned ks_branch = 0, kk_branch = 0;
    std::vector<std::string> kk_peers;
    auto* kshare = kps_cmd->add_subcommand("share", "derive a user share");
    kshare->add_option("--master", ks_master)->required();
    kshare->add_option("--id", ks_id, "owner element")->required();
    kshare->add_option("--branch", ks_branch, "point branch (hkps)");
    kshare->add_option("--out", ks_out)->required();
    auto* kkey = kps_cmd->add_subcommand("key", "compute a shared key");
    kkey->add_option("--share", kk_share)->required();
    kkey->add_option("--peer", kk_peers, "peer element (repeat for t > 2)")->required();
    kkey->add_option("--branch", kk_branch, "peer branch (hkps)");

    // hier
    auto* hier = app.add_subcommand("hier", "hierarchical provisioning");
    hier->require_subcommand(1);
    HierBuildArgs hb;
    auto* hbuild = hier->add_subcommand("build", "build a tree deterministically");
    hbuild->set_help_flag("--help", "print help");
    hbuild->add_option("--backend", hb.backend, "gkps | hkps");
    hbuild->add_option("--U", hb.U, "expansion number")->required();
    hbuild->add_option("--levels", hb.levels, "total level count")->required();
    hbuild->add_option("--q", hb.q, "field size")->required();
    hbuild->add_option("--t", hb.t, "pole factor degree (gkps)");
    hbuild->add_option("--h", hb.h, "pole factor power (gkps)");
    hbuild->add_option("--shape", hb.shape, "'path:count;...' (default: full)");
    hbuild->add_option("--seed", hb.seed, "deterministic seed")->required();
    hbuild->add_option("--entropy", hb.entropy, "'os' for system randomness");
    hbuild->add_option("--out", hb.out)->required();

    std::string ht_tree, ht_a, ht_b, ht_parent, ht_node, ht_nodes;
    auto* hkey = hier->add_subcommand("key", "pairwise key of two same-level nodes");
    hkey->add_option("--tree", ht_tree)->required();
    hkey->add_option("--a", ht_a, "first path")->required();
    hkey->add_option("--b", ht_b, "second path")->required();
    auto* hadd = hier->add_subcommand("add", "provision one new child");
    hadd->add_option("--tree", ht_tree)->required();
    hadd->add_option("--parent", ht_parent)->required();
    auto* hstorage = hier->add_subcommand("storage", "per-node storage report");
    hstorage->add_option("--tree", ht_tree)->required();
    hstorage->add_option("--node", ht_node)->required();
    auto* hcomp = hier->add_subcommand("compromise", "leakage analysis");
    hcomp->add_option("--tree", ht_tree)->required();
    hcomp->add_option("--nodes", ht_nodes, "comma-separated paths")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "security verification");
    verify->require_subcommand(1);
    std::string v_scheme, v_mode = "exhaustive", v_coal, v_a, v_b, v_tree, v_nodes;
    std::uint64_t v_samples = 100000, v_sample_seed = 0, v_limit = 1000000;
    auto* vmds = verify->add_subcommand("mds", "column-independence of the evaluation matrix");
    vmds->add_option("--scheme", v_scheme, "master file")->required();
    vmds->add_option("--mode", v_mode, "exhaustive | sample");
    vmds->add_option("--samples", v_samples);
    vmds->add_option("--sample-seed", v_sample_seed);
    auto* vuni = verify->add_subcommand("uniform", "exact conditional-uniformity check");
    vuni->add_option("--scheme", v_scheme, "master file")->required();
    vuni->add_option("--coalition", v_coal, "comma-separated IDs")->required();
    vuni->add_option("--a", v_a, "first target")->required();
    vuni->add_option("--b", v_b, "second target")->required();
    vuni->add_option("--master-limit", v_limit);
    auto* vres = verify->add_subcommand("resilience", "surviving-pair uniformity after leakage");
    vres->add_option("--tree", v_tree)->required();
    vres->add_option("--nodes", v_nodes, "compromised paths, comma-separated")->required();
    vres->add_option("--a", v_a, "first target path")->required();
    vres->add_option("--b", v_b, "second target path")->required();
    vres->add_option("--master-limit", v_limit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (*finfo) return cmd_field_info(fi_p, fi_k);
        if (*icount) return cmd_irr_count(ir_q, ir_t);
        if (*ilist) return cmd_irr_list(ir_q, ir_t, ir_n);
        if (*kgen) return cmd_kps_gen(gen);
        if (*kshare) return cmd_kps_share(ks_master, ks_id, ks_branch, ks_out);
        if (*kkey) return cmd_kps_key(kk_share, kk_peers, kk_branch);
        if (*hbuild) return cmd_hier_build(hb);
        if (*hkey) return cmd_hier_key(ht_tree, ht_a, ht_b);
        if (*hadd) return cmd_hier_add(ht_tree, ht_parent);
        if (*hstorage) return cmd_hier_storage(ht_tree, ht_node);
        if (*hcomp) return cmd_hier_compromise(ht_tree, ht_nodes);
        if (*vmds) return cmd_verify_mds(v_scheme, v_mode, v_samples, v_sample_seed);
        if (*vuni) return cmd_verify_uniform(v_scheme, v_coal, v_a, v_b, v_limit);
        if (*vres) return cmd_verify_resilience(v_tree, v_nodes, v_a, v_b, v_limit);
    } catch (const kps::intractable_error& e) {
        std::cerr << "intractable: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 64;
}
