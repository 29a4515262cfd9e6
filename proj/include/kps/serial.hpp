#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "kps/blom.hpp"
#include "kps/gkps.hpp"
#include "kps/hierarchy.hpp"
#include "kps/hkps.hpp"

namespace kps {

// Canonical text forms.  Fields: header line `F p k <hex modulus coeffs>`.
// Elements: fixed-width base-p coefficient strings, most significant digit
// first (digits 0-9a-z; serialization requires p <= 36).  All writers are
// deterministic; every format round-trips bit-exactly.

std::string field_header(const Field& f);
FieldPtr parse_field_header(const std::string& line);

std::string element_str(const Field& f, elt a);
elt parse_element(const Field& f, const std::string& s);

// q-spec: "p" or "p^k" naming GF(q) with the canonical modulus.
std::string qspec_str(const Field& f);
FieldPtr parse_qspec(const std::string& s);

std::string write_blom_master(const BlomMaster& m);
BlomMaster read_blom_master(std::istream& in);
std::string write_blom_share(const BlomShare& s);
BlomShare read_blom_share(std::istream& in);

std::string write_gkps_master(const GkpsMaster& m);
GkpsMaster read_gkps_master(std::istream& in);
std::string write_gkps_share(const GkpsShare& s);
GkpsShare read_gkps_share(std::istream& in);

std::string write_hkps_master(const HkpsMaster& m);
HkpsMaster read_hkps_master(std::istream& in);
std::string write_hkps_share(const HkpsShare& s);
HkpsShare read_hkps_share(std::istream& in);

std::string write_tree(const HierarchyTree& t);
// Rebuilds from header + shape and verifies the records match byte-exactly.
HierarchyTree read_tree(std::istream& in);

using MasterFile = std::variant<BlomMaster, GkpsMaster, HkpsMaster>;
using ShareFile = std::variant<BlomShare, GkpsShare, HkpsShare>;
MasterFile read_master_file(std::istream& in);
ShareFile read_share_file(std::istream& in);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace kps
