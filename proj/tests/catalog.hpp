#pragma once

// Small groups used across the suites, as generator lists in 1-based cycles.

#include <string>
#include <vector>

#include "spreadkit/group.hpp"

namespace catalog {

struct Entry {
  std::string name;
  std::size_t degree;
  std::vector<std::string> gens;
};

inline const std::vector<Entry>& groups() {
  static const std::vector<Entry> all{
      {"S3", 3, {"(1,2)", "(1,2,3)"}},
      {"S4", 4, {"(1,2)", "(1,2,3,4)"}},
      {"A4", 4, {"(1,2,3)", "(2,3,4)"}},
      {"D10", 5, {"(1,2,3,4,5)", "(2,5)(3,4)"}},
      {"A5", 5, {"(1,2,3,4,5)", "(1,2,3)"}},
      {"C6", 6, {"(1,2,3,4,5,6)"}},
      {"C7", 7, {"(1,2,3,4,5,6,7)"}},
      {"C2xC2", 4, {"(1,2)", "(3,4)"}},
      {"C2xC2xC2", 6, {"(1,2)", "(3,4)", "(5,6)"}},
  };
  return all;
}

inline const Entry& get(const std::string& name) {
  for (const auto& e : groups())
    if (e.name == name) return e;
  throw std::runtime_error("unknown catalog group " + name);
}

inline std::vector<spreadkit::Permutation> perms(const Entry& e) {
  std::vector<spreadkit::Permutation> out;
  for (const auto& g : e.gens) out.push_back(spreadkit::parse_cycles(g, e.degree));
  return out;
}

inline spreadkit::GroupHandle handle(const Entry& e) {
  const auto p = perms(e);
  return spreadkit::GroupHandle(spreadkit::GeneratorSet(e.degree, p));
}

inline spreadkit::GroupHandle handle(const std::string& name) { return handle(get(name)); }

}  // namespace catalog
