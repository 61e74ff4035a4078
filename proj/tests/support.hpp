#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "omlkit/greechie.hpp"
#include "omlkit/interchange.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/vectors.hpp"

namespace testing {

inline std::string corpus_path(const std::string& name) { return std::string(OMLKIT_CORPUS_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string corpus(const std::string& name) { return read_file(corpus_path(name)); }

inline omlkit::LatticePtr load_lattice(const std::string& name) {
  const std::string text = corpus(name);
  if (name.size() > 3 && name.substr(name.size() - 3) == ".gd")
    return omlkit::paste(omlkit::parse_greechie(text));
  return omlkit::make_lattice(omlkit::parse_interchange(text));
}

inline omlkit::LatticePtr lattice_from_diagram(const std::string& text) {
  return omlkit::paste(omlkit::parse_greechie(text));
}

struct NamedLattice {
  std::string name;
  omlkit::LatticePtr L;
};

/// Every valid lattice in the corpus plus the constructed ones.
inline std::vector<NamedLattice> corpus_lattices() {
  std::vector<NamedLattice> out;
  for (const char* f : {"boolean2.gd", "boolean3.gd", "boolean4.gd", "mo2.gd", "mo3.gd", "mo4.gd", "two_blocks.gd",
                        "chain3.gd", "pentagon.gd", "mo2.oml"})
    out.push_back({f, load_lattice(f)});
  out.push_back({"2", omlkit::two_element_lattice()});
  auto b2 = omlkit::boolean_algebra(2);
  auto mo2 = omlkit::mo_lattice(2);
  out.push_back({"2^2 x MO2", omlkit::product(*b2, *mo2)});
  out.push_back({"MO2^2", omlkit::power(*mo2, 2)});
  return out;
}

inline std::vector<NamedLattice> corpus_lattices_up_to(std::size_t n) {
  std::vector<NamedLattice> out;
  for (auto& c : corpus_lattices())
    if (c.L->size() <= n) out.push_back(c);
  return out;
}

}  // namespace testing
