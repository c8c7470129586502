#include "caplat/problem_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "caplat/error.hpp"

namespace caplat {

using nlohmann::json;

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 15];
  return out;
}

namespace {

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

std::map<std::string, Rational> value_map(const json& obj,
                                          const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  std::map<std::string, Rational> out;
  for (const auto& [key, v] : obj.items()) {
    const std::string text = as_string(v, where + "." + key);
    try {
      out[key] = parse_rational(text);
    } catch (const std::invalid_argument&) {
      throw ParseError(where + "." + key + ": bad rational '" + text + "'");
    }
  }
  return out;
}

Lattice parse_lattice(const json& doc, std::size_t cap) {
  if (doc.contains("boolean")) {
    const json& n = doc["boolean"];
    if (!n.is_number_integer()) throw ParseError("boolean: expected an integer");
    const int rank = n.get<int>();
    if (rank < 0 || rank > 9 || (std::size_t{1} << rank) > cap) {
      throw Error(Errc::CapExceeded, "boolean lattice of rank " +
                                         std::to_string(rank) + " exceeds " +
                                         std::to_string(cap) + " elements");
    }
    return boolean_lattice(rank, 9);
  }
  const json& elements = field(doc, "elements");
  if (!elements.is_array()) throw ParseError("elements: expected an array");
  std::vector<std::string> names;
  for (const auto& e : elements) names.push_back(as_string(e, "elements"));
  std::vector<std::pair<std::string, std::string>> relation;
  const json& rel = field(doc, "relation");
  if (!rel.is_array()) throw ParseError("relation: expected an array");
  for (const auto& pair : rel) {
    if (!pair.is_array() || pair.size() != 2) {
      throw ParseError("relation: expected [lower, upper] pairs");
    }
    relation.emplace_back(as_string(pair[0], "relation"),
                          as_string(pair[1], "relation"));
  }
  return Lattice::build(names, relation, cap);
}

}  // namespace

Problem parse_problem(const std::string& text, std::size_t cap) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("problem must be a JSON object");

  Problem p;
  p.digest = fnv1a_hex(text);
  p.lattice = share(parse_lattice(doc, cap));
  if (doc.contains("capacities")) {
    const json& caps = doc["capacities"];
    if (!caps.is_object()) throw ParseError("capacities: expected an object");
    for (const auto& [name, values] : caps.items()) {
      p.capacities.emplace(
          name, LatticeFn::from_map(p.lattice,
                                    value_map(values, "capacities." + name)));
    }
  }
  if (doc.contains("psi")) {
    const json& psi = doc["psi"];
    if (psi.contains("cdf")) {
      p.psi = LatticeFn::from_map(p.lattice, value_map(psi["cdf"], "psi.cdf"));
    } else if (psi.contains("masses")) {
      p.psi = cdf_from_mass(
          LatticeFn::from_map(p.lattice, value_map(psi["masses"], "psi.masses")));
    } else {
      throw ParseError("psi: expected 'cdf' or 'masses'");
    }
  }
  return p;
}

Problem load_problem(const std::string& path, std::size_t cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str(), cap);
}

}  // namespace caplat
