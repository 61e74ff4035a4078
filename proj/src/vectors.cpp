#include "omlkit/vectors.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "text_util.hpp"

namespace omlkit {

RationalVector RationalVector::canonical(const std::vector<mpq_class>& coords) {
  mpz_class lcm = 1;
  for (const auto& q : coords) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> ints;
  ints.reserve(coords.size());
  mpz_class content = 0;
  for (const auto& q : coords) {
    mpz_class v = q.get_num() * (lcm / q.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    ints.push_back(std::move(v));
  }
  if (content == 0) throw Error(Errc::ZeroVector, "zero vector has no ray");
  auto lead = std::find_if(ints.begin(), ints.end(), [](const mpz_class& v) { return v != 0; });
  if (*lead < 0) content = -content;
  for (auto& v : ints) v /= content;
  RationalVector out;
  out.coords_ = std::move(ints);
  return out;
}

std::string RationalVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? "," : "") + coords_[i].get_str();
  return s + ")";
}

mpz_class dot(const RationalVector& a, const RationalVector& b) {
  mpz_class acc = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += a.coords()[i] * b.coords()[i];
  return acc;
}

namespace {

// Bron–Kerbosch with pivoting; collects every maximal clique.
void maximal_cliques(const std::vector<std::vector<bool>>& adj, std::vector<std::size_t> r,
                     std::vector<std::size_t> p, std::vector<std::size_t> x,
                     std::vector<std::vector<std::size_t>>& out) {
  if (p.empty() && x.empty()) {
    std::sort(r.begin(), r.end());
    out.push_back(std::move(r));
    return;
  }
  std::size_t pivot = p.empty() ? x.front() : p.front();
  std::size_t best = 0;
  for (const auto* set : {&p, &x})
    for (std::size_t u : *set) {
      std::size_t cnt = 0;
      for (std::size_t v : p) cnt += adj[u][v];
      if (cnt > best) best = cnt, pivot = u;
    }
  std::vector<std::size_t> candidates;
  for (std::size_t v : p)
    if (!adj[pivot][v]) candidates.push_back(v);
  for (std::size_t v : candidates) {
    std::vector<std::size_t> np, nx;
    for (std::size_t u : p)
      if (adj[v][u]) np.push_back(u);
    for (std::size_t u : x)
      if (adj[v][u]) nx.push_back(u);
    auto nr = r;
    nr.push_back(v);
    maximal_cliques(adj, std::move(nr), std::move(np), std::move(nx), out);
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

mpq_class parse_rational(const detail::Token& tok, std::size_t line) {
  static const std::regex pattern(R"([+-]?[0-9]+(/[0-9]+)?)");
  if (!std::regex_match(tok.text, pattern))
    throw detail::parse_error(line, tok.column, "not a rational: '" + tok.text + "'");
  std::string text = tok.text;
  if (text.front() == '+') text.erase(0, 1);
  auto slash = text.find('/');
  if (slash != std::string::npos && mpz_class(text.substr(slash + 1), 10) == 0)
    throw detail::parse_error(line, tok.column, "zero denominator");
  mpq_class q(text, 10);
  q.canonicalize();
  return q;
}

}  // namespace

ContextHypergraph parse_vectors(std::string_view text, std::optional<std::size_t> expected_dim) {
  ContextHypergraph g;
  bool header = false;
  auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    auto toks = detail::tokenize(lines[ln]);
    if (toks.empty()) continue;
    const std::size_t line = ln + 1;
    if (!header) {
      if (toks.size() != 1 || toks[0].text.rfind("dim=", 0) != 0)
        throw detail::parse_error(line, toks[0].column, "expected header 'dim=N'");
      const std::string digits = toks[0].text.substr(4);
      if (digits.empty() || digits.size() > 6 ||
          !std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw detail::parse_error(line, toks[0].column, "bad dimension '" + digits + "'");
      g.dim = std::stoul(digits);
      if (g.dim == 0) throw detail::parse_error(line, toks[0].column, "dimension must be positive");
      if (expected_dim && *expected_dim != g.dim)
        throw Error(Errc::DimensionMismatch, "header says dim=" + std::to_string(g.dim) +
                                                 ", expected " + std::to_string(*expected_dim));
      if (g.dim <= 2)
        g.warnings.push_back("dimension " + std::to_string(g.dim) +
                             " <= 2: no Kochen-Specker obstruction is possible");
      header = true;
      continue;
    }
    if (toks.size() != g.dim)
      throw Error(Errc::DimensionMismatch, "line " + std::to_string(line) + ": " +
                                               std::to_string(toks.size()) + " coordinates, expected " +
                                               std::to_string(g.dim),
                  {line});
    std::vector<mpq_class> coords;
    for (const auto& tok : toks) coords.push_back(parse_rational(tok, line));
    RationalVector v = [&] {
      try {
        return RationalVector::canonical(coords);
      } catch (const Error&) {
        throw Error(Errc::ZeroVector, "line " + std::to_string(line) + ": zero vector", {line});
      }
    }();
    if (std::find(g.vectors.begin(), g.vectors.end(), v) == g.vectors.end()) {
      g.names.push_back("v" + std::to_string(g.vectors.size() + 1));
      g.vectors.push_back(std::move(v));
    }
  }
  if (!header) throw detail::parse_error(1, 1, "empty vector file");
  if (g.vectors.empty()) throw detail::parse_error(lines.size(), 1, "no vectors");

  const std::size_t n = g.vectors.size();
  g.orthogonal.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      g.orthogonal[i][j] = g.orthogonal[j][i] = dot(g.vectors[i], g.vectors[j]) == 0;

  std::vector<std::vector<std::size_t>> cliques;
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  maximal_cliques(g.orthogonal, {}, all, {}, cliques);
  for (auto& q : cliques) {
    if (q.size() == g.dim)
      g.contexts.push_back(std::move(q));
    else
      ++g.submaximal_cliques;
  }
  std::sort(g.contexts.begin(), g.contexts.end());
  return g;
}

ContextHypergraph hypergraph_from_diagram(const GreechieDiagram& d) {
  ContextHypergraph g;
  g.names = d.atoms;
  const std::size_t n = d.atoms.size();
  g.orthogonal.assign(n, std::vector<bool>(n, false));
  for (const auto& block : d.blocks) {
    auto ctx = block;
    std::sort(ctx.begin(), ctx.end());
    for (std::size_t a : ctx)
      for (std::size_t b : ctx)
        if (a != b) g.orthogonal[a][b] = true;
    g.dim = std::max(g.dim, ctx.size());
    g.contexts.push_back(std::move(ctx));
  }
  std::sort(g.contexts.begin(), g.contexts.end());
  return g;
}

}  // namespace omlkit
