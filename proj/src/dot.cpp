#include "omlkit/dot.hpp"

#include <array>
#include <sstream>

namespace omlkit {

namespace {

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

void write_blocks(std::ostringstream& os, const std::vector<std::string>& names,
                  const std::vector<std::vector<std::size_t>>& blocks) {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& block = blocks[b];
    os << "  ";
    for (std::size_t i = 0; i < block.size(); ++i) os << (i ? " -- " : "") << quote(names[block[i]]);
    os << " [color=" << quote(kPalette[b % kPalette.size()]) << ", penwidth=2, label="
       << quote("B" + std::to_string(b)) << "];\n";
  }
}

}  // namespace

std::string export_dot(const GreechieDiagram& d) {
  std::ostringstream os;
  os << "graph greechie {\n";
  os << "  node [shape=circle];\n";
  for (const auto& atom : d.atoms) os << "  " << quote(atom) << ";\n";
  write_blocks(os, d.atoms, d.blocks);
  os << "}\n";
  return os.str();
}

std::string export_dot(const ContextHypergraph& g) {
  std::ostringstream os;
  os << "graph contexts {\n";
  os << "  node [shape=circle];\n";
  for (std::size_t v = 0; v < g.names.size(); ++v) {
    os << "  " << quote(g.names[v]);
    if (v < g.vectors.size()) os << " [xlabel=" << quote(g.vectors[v].to_string()) << "]";
    os << ";\n";
  }
  write_blocks(os, g.names, g.contexts);
  os << "}\n";
  return os.str();
}

}  // namespace omlkit
