#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "caplat/capacity.hpp"
#include "caplat/lattice.hpp"

namespace caplat {

// Malformed problem text (bad JSON, wrong field types, bad rational
// strings). Lattice and capacity validation errors stay caplat::Error.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Problem {
  LatticePtr lattice;
  std::map<std::string, LatticeFn> capacities;
  // cdf of Y; the file may give it as a cdf or as masses.
  std::optional<LatticeFn> psi;
  std::string digest;
};

// Fields: "elements" and "relation" (or "boolean": n), "capacities":
// {name: {element: "p/q"}}, optional "psi": {"cdf" | "masses": {...}}.
// Elements left out of a map are zero.
Problem parse_problem(const std::string& text,
                      std::size_t cap = kDefaultLatticeCap);
Problem load_problem(const std::string& path,
                     std::size_t cap = kDefaultLatticeCap);

// 64-bit FNV-1a, 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace caplat
