#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "hitchin/cover.hpp"
#include "hitchin/picard.hpp"
#include "hitchin/strata.hpp"

namespace hitchin::io {

using nlohmann::json;

/// Malformed user input: bad JSON, wrong schema, unparsable polynomials.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Family files: {"n": 2, "coeffs": ["0", "-z^2"], "g": 2}; g is optional.
inline SpectralFamily family_from_json(const json& j) {
  if (!j.is_object()) throw InputError("family must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw InputError("family needs an integer field 'n'");
  if (!j.contains("coeffs") || !j["coeffs"].is_array()) throw InputError("family needs an array field 'coeffs'");
  const auto n = j["n"].get<long long>();
  if (n < 1) throw InputError("'n' must be at least 1");
  if (static_cast<long long>(j["coeffs"].size()) != n) throw InputError("'coeffs' must hold exactly n polynomials");
  std::vector<std::string> coeffs;
  for (const auto& c : j["coeffs"]) {
    if (!c.is_string()) throw InputError("each coefficient must be a polynomial string in z");
    coeffs.push_back(c.get<std::string>());
  }
  std::optional<Integer> g;
  if (j.contains("g")) {
    if (!j["g"].is_number_integer() || j["g"].get<long long>() < 0) throw InputError("'g' must be a non-negative integer");
    g = Integer(j["g"].get<long>());
  }
  try {
    return parse_family(coeffs, g);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

inline json family_to_json(const SpectralFamily& fam) {
  json j;
  j["n"] = fam.n;
  json cs = json::array();
  for (const auto& q : fam.coeffs) cs.push_back(to_string(q, "z"));
  j["coeffs"] = cs;
  if (fam.base_genus) j["g"] = fam.base_genus->get_si();
  return j;
}

inline SpectralFamily read_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open family file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("invalid JSON in '" + path + "': " + e.what());
  }
  return family_from_json(j);
}

// ---------------------------------------------------------------------------
// Branch point records.

inline json to_json(const BranchPointRecord& r) {
  json j;
  j["locus"] = to_string(primitive_normalize(r.locus), "z");
  if (r.point) j["point"] = to_string(*r.point);
  j["w_multiplicity"] = r.local.w_multiplicity;
  j["tag"] = to_string(r.local.tag);
  j["profile"] = r.local.profile;
  j["predicates"] = {{"triple_root", r.local.triple_root},
                     {"two_double_roots", r.local.two_double_roots},
                     {"singular", r.local.singular},
                     {"non_nodal", r.local.non_nodal}};
  return j;
}

inline BranchTag tag_from_string(const std::string& s) {
  for (auto t : {BranchTag::Simple, BranchTag::Boundary, BranchTag::Maxwell, BranchTag::Caustic, BranchTag::Degenerate})
    if (s == to_string(t)) return t;
  throw InputError("unknown tag '" + s + "'");
}

inline BranchPointRecord record_from_json(const json& j) {
  const RingPtr zring = make_ring({"z"});
  BranchPointRecord r;
  r.locus = monic(to_qpoly(parse_poly(j.at("locus").get<std::string>(), zring), "z"));
  if (j.contains("point")) r.point = parse_rational(j["point"].get<std::string>());
  r.local.w_multiplicity = j.at("w_multiplicity").get<int>();
  r.local.tag = tag_from_string(j.at("tag").get<std::string>());
  r.local.profile = j.at("profile").get<std::vector<int>>();
  const auto& p = j.at("predicates");
  r.local.triple_root = p.at("triple_root").get<bool>();
  r.local.two_double_roots = p.at("two_double_roots").get<bool>();
  r.local.singular = p.at("singular").get<bool>();
  r.local.non_nodal = p.at("non_nodal").get<bool>();
  return r;
}

inline json to_json(const std::vector<BranchPointRecord>& records) {
  json a = json::array();
  for (const auto& r : records) a.push_back(to_json(r));
  return a;
}

// ---------------------------------------------------------------------------
// Decomposition records.

inline json to_json(const StrataDecomposition& d) {
  json j;
  j["n"] = d.n;
  j["R0"] = to_string(d.R0);
  j["R1"] = to_string(d.R1);
  j["S"] = to_string(d.S);
  j["lower_discriminant"] = to_string(d.lower_discriminant);
  j["leading_factor"] = to_string(d.leading_factor);
  j["verified"] = d.verified;
  j["unit_leading_holds"] = d.unit_leading_holds;
  return j;
}

// ---------------------------------------------------------------------------
// Base classes.

inline json to_json(const picard::BaseClass& x) {
  json j;
  for (auto k : picard::kBasis)
    if (k != picard::Basis::lambda_hat || !x[k].is_zero()) j[picard::basis_name(k)] = to_string(x[k]);
  return j;
}

inline picard::BaseClass base_class_from_json(const json& j) {
  picard::BaseClass x;
  for (auto k : picard::kBasis)
    if (j.contains(picard::basis_name(k))) x[k] = picard::parse_coeff(j[picard::basis_name(k)].get<std::string>());
  return x;
}

}  // namespace hitchin::io
