#include "kps/serial.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kps {

namespace {

char digit_char(elt d) {
    return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + (d - 10));
}

elt digit_value(char c) {
    if (c >= '0' && c <= '9') return static_cast<elt>(c - '0');
    if (c >= 'a' && c <= 'z') return static_cast<elt>(c - 'a' + 10);
    throw std::invalid_argument(std::string("bad element digit: ") + c);
}

std::string next_line(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("unexpected end of file");
    return line;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

void expect(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error("malformed file: " + what);
}

}  // namespace

std::string element_str(const Field& f, elt a) {
    const std::uint64_t p = f.characteristic();
    if (p > 36) throw std::invalid_argument("element serialization supports p <= 36");
    std::string s(f.degree(), '0');
    for (std::size_t i = 0; i < f.degree(); ++i) {
        s[f.degree() - 1 - i] = digit_char(a % p);
        a /= p;
    }
    if (a != 0) throw std::out_of_range("element index out of range");
    return s;
}

elt parse_element(const Field& f, const std::string& s) {
    const std::uint64_t p = f.characteristic();
    expect(s.size() == f.degree(), "element width for " + f.spec());
    elt a = 0;
    for (char c : s) {
        elt d = digit_value(c);
        expect(d < p, "element digit range");
        a = a * p + d;
    }
    return a;
}

std::string field_header(const Field& f) {
    if (f.has_base() && f.base_field()->has_base())
        throw std::invalid_argument("F header covers prime and prime-extension fields only");
    std::ostringstream os;
    os << "F " << f.characteristic() << " " << f.degree();
    if (f.has_base())
        for (elt c : f.modulus()) os << " " << std::hex << c << std::dec;
    return os.str();
}

FieldPtr parse_field_header(const std::string& line) {
    auto toks = split_ws(line);
    expect(toks.size() >= 3 && toks[0] == "F", "field header");
    std::uint64_t p = std::stoull(toks[1]);
    unsigned k = static_cast<unsigned>(std::stoul(toks[2]));
    if (k == 1) return Field::prime(p);
    expect(toks.size() == 3 + k + 1, "modulus length");
    std::vector<elt> mod;
    for (std::size_t i = 3; i < toks.size(); ++i)
        mod.push_back(std::stoull(toks[i], nullptr, 16));
    return Field::extension(p, k, mod);
}

std::string qspec_str(const Field& f) {
    if (f.has_base() && f.base_field()->has_base())
        throw std::invalid_argument("q-spec covers prime and prime-extension fields only");
    if (f.degree() == 1) return std::to_string(f.characteristic());
    return std::to_string(f.characteristic()) + "^" + std::to_string(f.degree());
}

FieldPtr parse_qspec(const std::string& s) {
    auto caret = s.find('^');
    if (caret == std::string::npos) return Field::gf(std::stoull(s));
    std::uint64_t p = std::stoull(s.substr(0, caret));
    unsigned k = static_cast<unsigned>(std::stoul(s.substr(caret + 1)));
    return Field::extension(p, k);
}

// --- Blom -------------------------------------------------------------------

std::string write_blom_master(const BlomMaster& m) {
    std::ostringstream os;
    os << "BLOM " << m.t << " " << m.w << "\n" << field_header(*m.field) << "\n";
    for (elt v : m.a) os << element_str(*m.field, v) << "\n";
    return os.str();
}

BlomMaster read_blom_master(std::istream& in) {
    auto toks = split_ws(next_line(in));
    expect(toks.size() == 3 && toks[0] == "BLOM", "BLOM header");
    BlomMaster m;
    m.t = static_cast<unsigned>(std::stoul(toks[1]));
    m.w = static_cast<unsigned>(std::stoul(toks[2]));
    m.field = parse_field_header(next_line(in));
    std::size_t n = 1;
    for (unsigned i = 0; i < m.t; ++i) n *= m.w + 1;
    for (std::size_t i = 0; i < n; ++i)
        m.a.push_back(parse_element(*m.field, next_line(in)));
    return m;
}

std::string write_blom_share(const BlomShare& s) {
    std::ostringstream os;
    os << "BLOM-SHARE " << s.t << " " << s.w << "\n" << field_header(*s.field) << "\n";
    os << "E " << element_str(*s.field, s.owner) << "\n";
    for (elt v : s.b) os << element_str(*s.field, v) << "\n";
    return os.str();
}

BlomShare read_blom_share(std::istream& in) {
    auto toks = split_ws(next_line(in));
    expect(toks.size() == 3 && toks[0] == "BLOM-SHARE", "BLOM-SHARE header");
    BlomShare s;
    s.t = static_cast<unsigned>(std::stoul(toks[1]));
    s.w = static_cast<unsigned>(std::stoul(toks[2]));
    s.field = parse_field_header(next_line(in));
    auto etoks = split_ws(next_line(in));
    expect(etoks.size() == 2 && etoks[0] == "E", "owner line");
    s.owner = parse_element(*s.field, etoks[1]);
    std::size_t n = 1;
    for (unsigned i = 0; i + 1 < s.t; ++i) n *= s.w + 1;
    for (std::size_t i = 0; i < n; ++i)
        s.b.push_back(parse_element(*s.field, next_line(in)));
    return s;
}

// --- Generalized ------------------------------------------------------------

namespace {

std::string gkps_header(const char* kind, const GkpsDescriptor& d) {
    std::ostringstream os;
    os << kind << " " << qspec_str(*d.field) << " " << d.w << " " << d.H();
    for (elt c : d.pole.c) os << " " << element_str(*d.field, c);
    return os.str();
}

GkpsDescriptor parse_gkps_header(const std::string& line, const char* kind) {
    auto toks = split_ws(line);
    expect(toks.size() >= 4 && toks[0] == kind, std::string(kind) + " header");
    FieldPtr f = parse_qspec(toks[1]);
    unsigned w = static_cast<unsigned>(std::stoul(toks[2]));
    unsigned H = static_cast<unsigned>(std::stoul(toks[3]));
    expect(toks.size() == 4 + H + 1, "pole coefficient count");
    std::vector<elt> coeffs;
    for (std::size_t i = 4; i < toks.size(); ++i)
        coeffs.push_back(parse_element(*f, toks[i]));
    Poly pole = Poly::from_coeffs(f, std::move(coeffs));
    return make_gkps_descriptor(f, w, std::move(pole), /*allow_trivial_pole=*/H == 0);
}

}  // namespace

std::string write_gkps_master(const GkpsMaster& m) {
    std::ostringstream os;
    os << gkps_header("GKPS", m.d) << "\n";
    const unsigned dim = m.d.w + 1;
    for (unsigned i = 0; i < dim; ++i)
        for (unsigned j = i; j < dim; ++j)
            os << element_str(*m.d.field, m.a[i * dim + j]) << "\n";
    return os.str();
}

GkpsMaster read_gkps_master(std::istream& in) {
    GkpsMaster m{parse_gkps_header(next_line(in), "GKPS"), {}};
    const unsigned dim = m.d.w + 1;
    m.a.assign(dim * dim, 0);
    for (unsigned i = 0; i < dim; ++i)
        for (unsigned j = i; j < dim; ++j) {
            elt v = parse_element(*m.d.field, next_line(in));
            m.a[i * dim + j] = v;
            m.a[j * dim + i] = v;
        }
    return m;
}

std::string write_gkps_share(const GkpsShare& s) {
    std::ostringstream os;
    os << gkps_header("GKPS-SHARE", s.d) << "\n";
    os << "E " << element_str(*s.d.field, s.owner) << "\n";
    for (elt v : s.c) os << element_str(*s.d.field, v) << "\n";
    return os.str();
}

GkpsShare read_gkps_share(std::istream& in) {
    GkpsShare s{parse_gkps_header(next_line(in), "GKPS-SHARE"), 0, {}};
    auto etoks = split_ws(next_line(in));
    expect(etoks.size() == 2 && etoks[0] == "E", "owner line");
    s.owner = parse_element(*s.d.field, etoks[1]);
    for (unsigned j = 0; j <= s.d.w; ++j)
        s.c.push_back(parse_element(*s.d.field, next_line(in)));
    return s;
}

// --- Hyperelliptic ----------------------------------------------------------

namespace {

std::string hkps_header(const char* kind, const Curve& curve, unsigned w) {
    const auto& base = curve.ext->base_field();
    std::ostringstream os;
    os << kind << " " << base->characteristic() << " " << base->degree() << " "
       << element_str(*base, curve.a) << " " << w;
    return os.str();
}

std::pair<Curve, unsigned> parse_hkps_header(const std::string& line, const char* kind) {
    auto toks = split_ws(line);
    expect(toks.size() == 5 && toks[0] == kind, std::string(kind) + " header");
    std::uint64_t p = std::stoull(toks[1]);
    unsigned k = static_cast<unsigned>(std::stoul(toks[2]));
    FieldPtr base = Field::extension(p, k);
    FieldPtr tower = Field::quadratic(base);
    elt a = parse_element(*base, toks[3]);
    unsigned w = static_cast<unsigned>(std::stoul(toks[4]));
    return {make_curve(tower, a), w};
}

unsigned branch_of(const Curve& c, const CurvePoint& p) {
    return id_to_point(c, p.x, 0).y == p.y ? 0 : 1;
}

}  // namespace

std::string write_hkps_master(const HkpsMaster& m) {
    std::ostringstream os;
    os << hkps_header("HKPS", m.curve, m.w) << "\n";
    const std::size_t dim = m.basis.size();
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j)
            os << element_str(*m.curve.ext, m.a[i * dim + j]) << "\n";
    return os.str();
}

HkpsMaster read_hkps_master(std::istream& in) {
    auto [curve, w] = parse_hkps_header(next_line(in), "HKPS");
    HkpsMaster m{curve, w, rr_basis(curve.q(), w + static_cast<unsigned>(curve.q()) - 1), {}};
    const std::size_t dim = m.basis.size();
    m.a.assign(dim * dim, 0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
            elt v = parse_element(*m.curve.ext, next_line(in));
            m.a[i * dim + j] = v;
            m.a[j * dim + i] = v;
        }
    return m;
}

std::string write_hkps_share(const HkpsShare& s) {
    std::ostringstream os;
    os << hkps_header("HKPS-SHARE", s.curve, s.w) << "\n";
    os << "ID " << element_str(*s.curve.ext, s.owner.x) << " "
       << branch_of(s.curve, s.owner) << "\n";
    for (elt v : s.c) os << element_str(*s.curve.ext, v) << "\n";
    return os.str();
}

HkpsShare read_hkps_share(std::istream& in) {
    auto [curve, w] = parse_hkps_header(next_line(in), "HKPS-SHARE");
    HkpsShare s{curve, w, rr_basis(curve.q(), w + static_cast<unsigned>(curve.q()) - 1), {}, {}};
    auto idtoks = split_ws(next_line(in));
    expect(idtoks.size() == 3 && idtoks[0] == "ID", "ID line");
    s.owner = id_to_point(curve, parse_element(*curve.ext, idtoks[1]),
                          static_cast<unsigned>(std::stoul(idtoks[2])));
    for (std::size_t j = 0; j < s.basis.size(); ++j)
        s.c.push_back(parse_element(*s.curve.ext, next_line(in)));
    return s;
}

// --- Hierarchy --------------------------------------------------------------

std::string write_tree(const HierarchyTree& t) {
    const auto& spec = t.spec();
    std::ostringstream os;
    os << "HIER " << (spec.backend == Backend::gkps ? "gkps" : "hkps") << " "
       << spec.U << " " << spec.levels << " ";
    if (spec.backend == Backend::gkps)
        os << qspec_str(*spec.field) << " " << t.seed() << " " << spec.t << " " << spec.h;
    else
        os << qspec_str(*spec.field->base_field()) << " " << t.seed();
    os << "\n";
    for (const auto& [path, node] : t.nodes()) {
        os << "NODE " << path_str(path) << " " << node.child_index << "\n";
        for (const auto& [tag, share] : node.bundle) {
            os << "SHARE " << tag.str();
            if (spec.backend == Backend::gkps) {
                const auto& sh = std::get<GkpsShare>(share);
                os << " " << element_str(*spec.field, sh.owner);
                for (elt v : sh.c) os << " " << element_str(*spec.field, v);
            } else {
                const auto& sh = std::get<HkpsShare>(share);
                os << " " << element_str(*spec.field, sh.owner.x) << ":"
                   << branch_of(sh.curve, sh.owner);
                for (elt v : sh.c) os << " " << element_str(*spec.field, v);
            }
            os << "\n";
        }
    }
    return os.str();
}

HierarchyTree read_tree(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    std::istringstream is(text);
    auto toks = split_ws(next_line(is));
    expect(toks.size() >= 6 && toks[0] == "HIER", "HIER header");
    Backend backend = toks[1] == "gkps" ? Backend::gkps : Backend::hkps;
    unsigned U = static_cast<unsigned>(std::stoul(toks[2]));
    unsigned levels = static_cast<unsigned>(std::stoul(toks[3]));
    FieldPtr qf = parse_qspec(toks[4]);
    std::uint64_t seed = std::stoull(toks[5]);
    unsigned t = 0, h = 0;
    if (backend == Backend::gkps) {
        expect(toks.size() == 8, "HIER gkps header");
        t = static_cast<unsigned>(std::stoul(toks[6]));
        h = static_cast<unsigned>(std::stoul(toks[7]));
    } else {
        expect(toks.size() == 6, "HIER hkps header");
    }
    HierarchySpec spec = make_hierarchy_spec(backend, U, levels, qf->size(), t, h);
    Shape shape;
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("NODE ", 0) != 0) continue;
        auto ntoks = split_ws(line);
        expect(ntoks.size() == 3, "NODE record");
        Path p = parse_path(ntoks[1]);
        if (p.empty()) continue;
        Path parent(p.begin(), p.end() - 1);
        shape[parent] = std::max(shape[parent], p.back() + 1);
    }
    HierarchyTree tree = HierarchyTree::build(std::move(spec), shape, seed);
    if (write_tree(tree) != text)
        throw std::runtime_error("tree file does not match its deterministic rebuild");
    return tree;
}

// --- Dispatch ---------------------------------------------------------------

MasterFile read_master_file(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    std::istringstream is(buf.str());
    std::string head;
    is >> head;
    std::istringstream again(buf.str());
    if (head == "BLOM") return read_blom_master(again);
    if (head == "GKPS") return read_gkps_master(again);
    if (head == "HKPS") return read_hkps_master(again);
    throw std::runtime_error("unrecognized master file header: " + head);
}

ShareFile read_share_file(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    std::istringstream is(buf.str());
    std::string head;
    is >> head;
    std::istringstream again(buf.str());
    if (head == "BLOM-SHARE") return read_blom_share(again);
    if (head == "GKPS-SHARE") return read_gkps_share(again);
    if (head == "HKPS-SHARE") return read_hkps_share(again);
    throw std::runtime_error("unrecognized share file header: " + head);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace kps
