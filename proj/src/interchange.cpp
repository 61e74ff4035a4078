#include "omlkit/interchange.hpp"

#include <map>
#include <optional>
#include <sstream>

#include "text_util.hpp"

namespace omlkit {

OmlCandidate parse_interchange(std::string_view text) {
  OmlCandidate c;
  std::map<std::string, Element, std::less<>> index;
  std::vector<std::pair<Element, Element>> edges;
  std::vector<std::vector<bool>> matrix;
  std::vector<std::optional<Element>> neg;
  bool header = false;
  bool in_matrix = false;
  bool have_matrix = false;

  auto lookup = [&](const detail::Token& tok, std::size_t line) -> Element {
    auto it = index.find(tok.text);
    if (it == index.end())
      throw detail::parse_error(line, tok.column, "unknown element '" + tok.text + "'");
    return it->second;
  };

  auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    auto toks = detail::tokenize(lines[ln]);
    if (toks.empty()) continue;
    const std::size_t line = ln + 1;
    const std::string& kw = toks[0].text;
    if (!header) {
      if (kw != "format" || toks.size() != 3 || toks[1].text != "oml-lattice")
        throw detail::parse_error(line, toks[0].column, "expected 'format oml-lattice 1'");
      if (toks[2].text != "1")
        throw detail::parse_error(line, toks[2].column, "unsupported version " + toks[2].text);
      header = true;
      continue;
    }
    if (in_matrix) {
      if (toks[0].text == "0" || toks[0].text == "1") {
        if (toks.size() != c.names.size())
          throw detail::parse_error(line, toks[0].column, "order row has wrong length");
        std::vector<bool> row;
        for (const auto& t : toks) {
          if (t.text != "0" && t.text != "1")
            throw detail::parse_error(line, t.column, "order entries must be 0 or 1");
          row.push_back(t.text == "1");
        }
        matrix.push_back(std::move(row));
        if (matrix.size() == c.names.size()) in_matrix = false;
        continue;
      }
      throw detail::parse_error(line, toks[0].column, "order matrix has too few rows");
    }
    if (kw == "elements") {
      if (!edges.empty() || have_matrix)
        throw detail::parse_error(line, toks[0].column, "elements must precede order data");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (index.count(toks[i].text))
          throw detail::parse_error(line, toks[i].column, "duplicate element '" + toks[i].text + "'");
        index.emplace(toks[i].text, static_cast<Element>(c.names.size()));
        c.names.push_back(toks[i].text);
      }
      neg.resize(c.names.size());
    } else if (kw == "cover") {
      if (toks.size() != 3) throw detail::parse_error(line, toks[0].column, "cover takes two elements");
      if (have_matrix) throw detail::parse_error(line, toks[0].column, "cover mixed with order matrix");
      edges.emplace_back(lookup(toks[1], line), lookup(toks[2], line));
    } else if (kw == "order") {
      if (toks.size() != 1 || have_matrix || !edges.empty())
        throw detail::parse_error(line, toks[0].column, "misplaced order block");
      if (c.names.empty()) throw detail::parse_error(line, toks[0].column, "order before elements");
      in_matrix = true;
      have_matrix = true;
    } else if (kw == "neg") {
      if (toks.size() != 3) throw detail::parse_error(line, toks[0].column, "neg takes two elements");
      Element a = lookup(toks[1], line), b = lookup(toks[2], line);
      if (neg[a]) throw detail::parse_error(line, toks[1].column, "complement of '" + toks[1].text + "' given twice");
      neg[a] = b;
    } else {
      throw detail::parse_error(line, toks[0].column, "unknown directive '" + kw + "'");
    }
  }
  if (!header) throw detail::parse_error(1, 1, "empty lattice file");
  if (in_matrix) throw detail::parse_error(lines.size(), 1, "order matrix has too few rows");
  if (c.names.empty()) throw detail::parse_error(lines.size(), 1, "no elements");

  const std::size_t n = c.names.size();
  c.neg.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (!neg[a]) throw detail::parse_error(lines.size(), 1, "no complement for '" + c.names[a] + "'");
    c.neg[a] = *neg[a];
  }
  if (have_matrix) {
    c.leq = std::move(matrix);
  } else {
    // reflexive-transitive closure of the cover edges
    std::vector<boost::dynamic_bitset<>> up(n, boost::dynamic_bitset<>(n));
    for (std::size_t a = 0; a < n; ++a) up[a].set(a);
    for (auto [a, b] : edges) up[a].set(b);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a)
        if (up[a][k]) up[a] |= up[k];
    c.leq.assign(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) c.leq[a][b] = up[a][b];
  }
  return c;
}

std::string write_interchange(const FiniteOML& L) {
  std::ostringstream os;
  os << "format oml-lattice 1\n";
  os << "elements";
  for (const auto& name : L.names()) os << ' ' << name;
  os << '\n';
  for (auto [a, b] : L.covers()) os << "cover " << L.name(a) << ' ' << L.name(b) << '\n';
  for (Element a = 0; a < L.size(); ++a) os << "neg " << L.name(a) << ' ' << L.name(L.neg(a)) << '\n';
  return os.str();
}

}  // namespace omlkit
