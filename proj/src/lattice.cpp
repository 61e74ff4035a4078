#include "omlkit/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace omlkit {

namespace {

std::string describe(const OmlCandidate& c, std::initializer_list<Element> elems) {
  std::ostringstream os;
  bool first = true;
  for (Element e : elems) {
    if (!first) os << ", ";
    first = false;
    if (e < c.names.size())
      os << c.names[e];
    else
      os << '#' << e;
  }
  return os.str();
}

Violation violation(Errc code, std::string law, std::vector<Element> witness, std::string msg) {
  return Violation{code, std::move(law), std::move(witness), std::move(msg)};
}

// Validated tables built alongside the checks; discarded on failure.
struct Tables {
  std::size_t n = 0;
  std::vector<boost::dynamic_bitset<>> down;
  std::vector<boost::dynamic_bitset<>> up;
  std::vector<std::size_t> down_count;
  std::vector<std::size_t> up_count;
  std::vector<std::uint16_t> meet;
  std::vector<std::uint16_t> join;
  Element zero = 0;
  Element one = 0;
};

std::optional<Violation> check_all(const OmlCandidate& c, const Limits& limits, Tables& t) {
  const std::size_t n = c.leq.size();
  if (n == 0) return violation(Errc::NotALattice, "bounded lattice", {}, "no elements");
  if (c.names.size() != n || c.neg.size() != n)
    return violation(Errc::NotALattice, "shape", {}, "names, order and complement sizes differ");
  for (std::size_t a = 0; a < n; ++a)
    if (c.leq[a].size() != n)
      return violation(Errc::NotALattice, "shape", {static_cast<Element>(a)},
                       "order matrix is not square");
  const std::size_t cap = std::min(limits.element_cap, Limits::kHardElementCap);
  if (n > cap)
    return violation(Errc::SizeCap, "size cap", {},
                     std::to_string(n) + " elements exceeds cap " + std::to_string(cap));

  t.n = n;
  t.down.assign(n, boost::dynamic_bitset<>(n));
  t.up.assign(n, boost::dynamic_bitset<>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (c.leq[a][b]) {
        t.up[a].set(b);
        t.down[b].set(a);
      }

  for (std::size_t a = 0; a < n; ++a)
    if (!c.leq[a][a])
      return violation(Errc::NotALattice, "reflexivity", {Element(a)},
                       "not reflexive at " + describe(c, {Element(a)}));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (c.leq[a][b] && c.leq[b][a])
        return violation(Errc::NotALattice, "antisymmetry", {Element(a), Element(b)},
                         "antisymmetry fails for " + describe(c, {Element(a), Element(b)}));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!c.leq[a][b]) continue;
      // every c above b must be above a
      boost::dynamic_bitset<> missing = t.up[b] - t.up[a];
      std::size_t x = missing.find_first();
      if (x != boost::dynamic_bitset<>::npos)
        return violation(Errc::NotALattice, "transitivity", {Element(a), Element(b), Element(x)},
                         "transitivity fails for " +
                             describe(c, {Element(a), Element(b), Element(x)}));
    }

  if (n == 1)
    return violation(Errc::Degenerate, "nondegenerate", {0}, "one-element lattice has 0 = 1");

  t.down_count.resize(n);
  t.up_count.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    t.down_count[a] = t.down[a].count();
    t.up_count[a] = t.up[a].count();
  }
  auto bottom = std::find(t.up_count.begin(), t.up_count.end(), n);
  if (bottom == t.up_count.end())
    return violation(Errc::NotALattice, "bounded lattice", {}, "no least element");
  auto top = std::find(t.down_count.begin(), t.down_count.end(), n);
  if (top == t.down_count.end())
    return violation(Errc::NotALattice, "bounded lattice", {}, "no greatest element");
  t.zero = static_cast<Element>(bottom - t.up_count.begin());
  t.one = static_cast<Element>(top - t.down_count.begin());

  // The meet of a, b is the common lower bound whose own down-set is the
  // whole set of common lower bounds.
  t.meet.assign(n * n, 0);
  t.join.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      boost::dynamic_bitset<> lower = t.down[a] & t.down[b];
      const std::size_t lc = lower.count();
      std::optional<std::size_t> m;
      for (std::size_t x = lower.find_first(); x != lower.npos; x = lower.find_next(x))
        if (t.down_count[x] == lc) {
          m = x;
          break;
        }
      if (!m)
        return violation(Errc::NotALattice, "meet", {Element(a), Element(b)},
                         "no meet for " + describe(c, {Element(a), Element(b)}));
      boost::dynamic_bitset<> upper = t.up[a] & t.up[b];
      const std::size_t uc = upper.count();
      std::optional<std::size_t> j;
      for (std::size_t x = upper.find_first(); x != upper.npos; x = upper.find_next(x))
        if (t.up_count[x] == uc) {
          j = x;
          break;
        }
      if (!j)
        return violation(Errc::NotALattice, "join", {Element(a), Element(b)},
                         "no join for " + describe(c, {Element(a), Element(b)}));
      t.meet[a * n + b] = t.meet[b * n + a] = static_cast<std::uint16_t>(*m);
      t.join[a * n + b] = t.join[b * n + a] = static_cast<std::uint16_t>(*j);
    }

  const auto& neg = c.neg;
  for (std::size_t a = 0; a < n; ++a)
    if (neg[a] >= n)
      return violation(Errc::NotOrtho, "complement range", {Element(a)},
                       "complement of " + describe(c, {Element(a)}) + " out of range");
  for (std::size_t a = 0; a < n; ++a)
    if (neg[neg[a]] != a)
      return violation(Errc::NotOrtho, "involution", {Element(a)},
                       "complement is not an involution at " + describe(c, {Element(a)}));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (c.leq[a][b] && !c.leq[neg[b]][neg[a]])
        return violation(Errc::NotOrtho, "order reversal", {Element(a), Element(b)},
                         "complement does not reverse order for " +
                             describe(c, {Element(a), Element(b)}));
  for (std::size_t a = 0; a < n; ++a) {
    if (t.meet[a * n + neg[a]] != t.zero)
      return violation(Errc::NotOrtho, "a meet not-a = 0", {Element(a)},
                       "a ∧ ¬a ≠ 0 for a = " + describe(c, {Element(a)}));
    if (t.join[a * n + neg[a]] != t.one)
      return violation(Errc::NotOrtho, "a join not-a = 1", {Element(a)},
                       "a ∨ ¬a ≠ 1 for a = " + describe(c, {Element(a)}));
  }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!c.leq[a][b]) continue;
      const std::size_t inner = t.meet[b * n + neg[a]];
      if (t.join[a * n + inner] != b)
        return violation(Errc::NotOrthomodular, "orthomodular law", {Element(a), Element(b)},
                         "b ≠ a ∨ (b ∧ ¬a) for a, b = " + describe(c, {Element(a), Element(b)}));
    }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> find_violation(const OmlCandidate& candidate, const Limits& limits) {
  Tables t;
  return check_all(candidate, limits, t);
}

FiniteOML verify_oml(const OmlCandidate& candidate, const Limits& limits) {
  Tables t;
  if (auto v = check_all(candidate, limits, t)) {
    std::vector<std::size_t> witness(v->witness.begin(), v->witness.end());
    throw Error(v->code, v->law + ": " + v->message, std::move(witness));
  }
  FiniteOML L;
  L.n_ = t.n;
  L.zero_ = t.zero;
  L.one_ = t.one;
  L.names_ = candidate.names;
  L.leq_.assign(t.n * t.n, 0);
  for (std::size_t a = 0; a < t.n; ++a)
    for (std::size_t b = 0; b < t.n; ++b) L.leq_[a * t.n + b] = candidate.leq[a][b] ? 1 : 0;
  L.meet_ = std::move(t.meet);
  L.join_ = std::move(t.join);
  L.neg_ = candidate.neg;
  L.down_ = std::move(t.down);
  return L;
}

LatticePtr make_lattice(const OmlCandidate& candidate, const Limits& limits) {
  return std::make_shared<const FiniteOML>(verify_oml(candidate, limits));
}

std::optional<Element> FiniteOML::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Element>(i);
  return std::nullopt;
}

std::vector<Element> FiniteOML::atoms() const {
  std::vector<Element> out;
  for (Element a = 0; a < n_; ++a)
    if (a != zero_ && down_[a].count() == 2) out.push_back(a);
  return out;
}

std::vector<std::pair<Element, Element>> FiniteOML::covers() const {
  std::vector<std::pair<Element, Element>> out;
  for (Element a = 0; a < n_; ++a)
    for (Element b = 0; b < n_; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool cover = true;
      for (Element x = 0; x < n_ && cover; ++x)
        if (x != a && x != b && leq(a, x) && leq(x, b)) cover = false;
      if (cover) out.emplace_back(a, b);
    }
  return out;
}

bool commutes(const FiniteOML& L, Element a, Element b) {
  return a == L.join(L.meet(a, b), L.meet(a, L.neg(b)));
}

bool holds_d(const FiniteOML& L, Element a, Element b, Element c) {
  return L.meet(L.join(a, b), c) == L.join(L.meet(a, c), L.meet(b, c));
}

bool holds_dstar(const FiniteOML& L, Element a, Element b, Element c) {
  return L.join(L.meet(a, b), c) == L.meet(L.join(a, c), L.join(b, c));
}

TripleReport triple_check(const FiniteOML& L, Element a, Element b, Element c) {
  TripleReport r{a, b, c, holds_d(L, a, b, c), holds_dstar(L, a, b, c), true};
  const Element perms[6][3] = {{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}};
  for (const auto& p : perms)
    if (!holds_d(L, p[0], p[1], p[2]) || !holds_dstar(L, p[0], p[1], p[2])) {
      r.holds_t = false;
      break;
    }
  return r;
}

std::vector<Element> center(const FiniteOML& L) {
  const auto n = static_cast<Element>(L.size());
  std::vector<Element> out;
  for (Element z = 0; z < n; ++z) {
    bool ok = true;
    for (Element a = 0; a < n && ok; ++a) ok = commutes(L, z, a);
    for (Element a = 0; a < n && ok; ++a)
      for (Element b = a; b < n && ok; ++b) ok = triple_check(L, a, b, z).holds_t;
    if (ok) out.push_back(z);
  }
  return out;
}

OmlCandidate to_candidate(const FiniteOML& L) {
  OmlCandidate c;
  const std::size_t n = L.size();
  c.names = L.names();
  c.leq.assign(n, std::vector<bool>(n, false));
  c.neg.resize(n);
  for (Element a = 0; a < n; ++a) {
    c.neg[a] = L.neg(a);
    for (Element b = 0; b < n; ++b) c.leq[a][b] = L.leq(a, b);
  }
  return c;
}

LatticePtr product(const FiniteOML& L1, const FiniteOML& L2, const Limits& limits) {
  const std::size_t n1 = L1.size(), n2 = L2.size();
  if (n1 < 2 || n2 < 2) throw Error(Errc::Degenerate, "product factor has 0 = 1");
  const std::size_t n = n1 * n2;
  if (n > std::min(limits.element_cap, Limits::kHardElementCap))
    throw Error(Errc::SizeCap, "product has " + std::to_string(n) + " elements");
  OmlCandidate c;
  c.names.reserve(n);
  c.leq.assign(n, std::vector<bool>(n, false));
  c.neg.resize(n);
  for (Element x = 0; x < n1; ++x)
    for (Element y = 0; y < n2; ++y) {
      const std::size_t i = x * n2 + y;
      c.names.push_back("(" + L1.name(x) + "," + L2.name(y) + ")");
      c.neg[i] = static_cast<Element>(L1.neg(x) * n2 + L2.neg(y));
      for (Element u = 0; u < n1; ++u) {
        if (!L1.leq(x, u)) continue;
        for (Element v = 0; v < n2; ++v)
          if (L2.leq(y, v)) c.leq[i][u * n2 + v] = true;
      }
    }
  return make_lattice(c, limits);
}

LatticePtr power(const FiniteOML& L, std::size_t k, const Limits& limits) {
  if (k == 0) throw Error(Errc::Degenerate, "zeroth power is the one-element lattice");
  const std::size_t m = L.size();
  std::size_t n = 1;
  const std::size_t cap = std::min(limits.element_cap, Limits::kHardElementCap);
  for (std::size_t i = 0; i < k; ++i) {
    n *= m;
    if (n > cap) throw Error(Errc::SizeCap, "power exceeds element cap " + std::to_string(cap));
  }
  // mixed radix, first coordinate most significant
  auto digits = [&](std::size_t idx) {
    std::vector<Element> d(k);
    for (std::size_t i = k; i-- > 0;) {
      d[i] = static_cast<Element>(idx % m);
      idx /= m;
    }
    return d;
  };
  auto compose = [&](const std::vector<Element>& d) {
    std::size_t idx = 0;
    for (Element x : d) idx = idx * m + x;
    return static_cast<Element>(idx);
  };
  OmlCandidate c;
  c.names.resize(n);
  c.leq.assign(n, std::vector<bool>(n, false));
  c.neg.resize(n);
  std::vector<std::vector<Element>> coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = digits(i);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = coords[i];
    std::string name = k == 1 ? "" : "(";
    std::vector<Element> nd(k);
    for (std::size_t j = 0; j < k; ++j) {
      if (j) name += ",";
      name += L.name(d[j]);
      nd[j] = L.neg(d[j]);
    }
    if (k != 1) name += ")";
    c.names[i] = std::move(name);
    c.neg[i] = compose(nd);
    for (std::size_t t = 0; t < n; ++t) {
      bool below = true;
      for (std::size_t j = 0; j < k && below; ++j) below = L.leq(d[j], coords[t][j]);
      c.leq[i][t] = below;
    }
  }
  return make_lattice(c, limits);
}

LatticePtr two_element_lattice() {
  OmlCandidate c;
  c.names = {"0", "1"};
  c.leq = {{true, true}, {false, true}};
  c.neg = {1, 0};
  return make_lattice(c);
}

}  // namespace omlkit
