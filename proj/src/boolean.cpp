#include "omlkit/boolean.hpp"

#include <algorithm>
#include <set>

namespace omlkit {

BooleanSubalgebra BooleanSubalgebra::from_carrier(LatticePtr host, std::vector<Element> carrier) {
  const FiniteOML& L = *host;
  std::sort(carrier.begin(), carrier.end());
  carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
  auto has = [&](Element e) { return std::binary_search(carrier.begin(), carrier.end(), e); };
  for (Element e : carrier)
    if (e >= L.size()) throw Error(Errc::NotBoolean, "carrier element out of range", {e});
  if (!has(L.zero()) || !has(L.one()))
    throw Error(Errc::NotBoolean, "carrier must contain 0 and 1");
  for (Element a : carrier) {
    if (!has(L.neg(a))) throw Error(Errc::NotBoolean, "not closed under ¬ at " + L.name(a), {a});
    for (Element b : carrier) {
      if (!has(L.meet(a, b)) || !has(L.join(a, b)))
        throw Error(Errc::NotBoolean, "not closed under ∧/∨ at " + L.name(a) + ", " + L.name(b), {a, b});
      if (!commutes(L, a, b))
        throw Error(Errc::NotBoolean, L.name(a) + " and " + L.name(b) + " do not commute", {a, b});
    }
  }
  BooleanSubalgebra B;
  for (Element x : carrier) {
    if (x == L.zero()) continue;
    bool minimal = true;
    for (Element y : carrier)
      if (y != L.zero() && y != x && L.leq(y, x)) {
        minimal = false;
        break;
      }
    if (minimal) B.atoms_.push_back(x);
  }
  if (B.atoms_.size() >= 64 || (std::size_t{1} << B.atoms_.size()) != carrier.size())
    throw Error(Errc::NotBoolean, "carrier size is not 2^(number of atoms)");
  B.host_ = std::move(host);
  B.carrier_ = std::move(carrier);
  return B;
}

bool BooleanSubalgebra::contains(Element e) const {
  return std::binary_search(carrier_.begin(), carrier_.end(), e);
}

bool BooleanSubalgebra::contains_all(std::span<const Element> elems) const {
  return std::all_of(elems.begin(), elems.end(), [&](Element e) { return contains(e); });
}

std::string BooleanSubalgebra::label() const {
  std::string s = "<";
  for (std::size_t i = 0; i < atoms_.size(); ++i) s += (i ? "," : "") + host_->name(atoms_[i]);
  return s + ">";
}

Filter::Filter(BooleanSubalgebra host, std::vector<Element> members)
    : host_(std::move(host)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Filter::contains(Element e) const {
  return std::binary_search(members_.begin(), members_.end(), e);
}

Element Filter::generator() const {
  const FiniteOML& L = host_.host();
  Element g = L.one();
  for (Element m : members_) g = L.meet(g, m);
  return g;
}

TwoValuedHom::TwoValuedHom(BooleanSubalgebra domain, std::size_t atom_index)
    : domain_(std::move(domain)), atom_index_(atom_index) {
  if (atom_index_ >= domain_.atoms().size())
    throw Error(Errc::NotBoolean, "hom atom index out of range", {atom_index});
}

bool TwoValuedHom::value(Element x) const { return domain_.host().leq(atom(), x); }

Filter TwoValuedHom::ultrafilter() const {
  std::vector<Element> members;
  for (Element x : domain_.carrier())
    if (value(x)) members.push_back(x);
  return Filter(domain_, std::move(members));
}

std::vector<std::pair<Element, bool>> TwoValuedHom::assignment() const {
  std::vector<std::pair<Element, bool>> out;
  for (Element x : domain_.carrier()) out.emplace_back(x, value(x));
  return out;
}

bool is_homomorphism(const BooleanSubalgebra& B, const std::vector<bool>& values) {
  const FiniteOML& L = B.host();
  const auto& c = B.carrier();
  if (values.size() != c.size()) return false;
  auto val = [&](Element e) {
    return values[static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), e) - c.begin())];
  };
  if (val(L.zero()) || !val(L.one())) return false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (val(L.neg(c[i])) == values[i]) return false;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (val(L.meet(c[i], c[j])) != (values[i] && values[j])) return false;
      if (val(L.join(c[i], c[j])) != (values[i] || values[j])) return false;
    }
  }
  return true;
}

namespace {

using Bits = boost::dynamic_bitset<>;

void bron_kerbosch(const std::vector<Bits>& adj, std::vector<Element>& r, Bits p, Bits x,
                   std::vector<std::vector<Element>>& out) {
  if (p.none() && x.none()) {
    out.push_back(r);
    return;
  }
  Bits px = p | x;
  std::size_t pivot = px.find_first();
  std::size_t best = 0;
  for (std::size_t u = px.find_first(); u != px.npos; u = px.find_next(u)) {
    std::size_t cnt = (p & adj[u]).count();
    if (cnt > best || u == px.find_first()) best = cnt, pivot = u;
  }
  Bits candidates = p - adj[pivot];
  for (std::size_t v = candidates.find_first(); v != candidates.npos; v = candidates.find_next(v)) {
    r.push_back(static_cast<Element>(v));
    bron_kerbosch(adj, r, p & adj[v], x & adj[v], out);
    r.pop_back();
    p.reset(v);
    x.set(v);
  }
}

bool by_size_then_carrier(const BooleanSubalgebra& a, const BooleanSubalgebra& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.carrier() < b.carrier();
}

// Calls `visit` with each set partition of {0..k-1} as a restricted growth
// string.
template <typename Visit>
void for_each_partition(std::size_t k, Visit&& visit) {
  std::vector<std::size_t> rgs(k, 0), maxes(k, 0);
  if (k == 0) {
    visit(rgs, 0);
    return;
  }
  while (true) {
    std::size_t parts = 1;
    for (std::size_t i = 0; i < k; ++i) parts = std::max(parts, rgs[i] + 1);
    if (!visit(rgs, parts)) return;
    // next restricted growth string
    std::size_t i = k - 1;
    while (i > 0 && rgs[i] == maxes[i] + 1) --i;
    if (i == 0) return;
    ++rgs[i];
    for (std::size_t j = i + 1; j < k; ++j) {
      rgs[j] = 0;
      maxes[j] = std::max(maxes[j - 1], rgs[j - 1]);
    }
    if (i + 1 < k) maxes[i + 1] = std::max(maxes[i], rgs[i]);
  }
}

}  // namespace

std::vector<BooleanSubalgebra> enumerate_blocks(const LatticePtr& L) {
  const std::size_t n = L->size();
  std::vector<Bits> adj(n, Bits(n));
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (a != b && commutes(*L, a, b)) adj[a].set(b);
  std::vector<std::vector<Element>> cliques;
  std::vector<Element> r;
  Bits all(n);
  all.set();
  bron_kerbosch(adj, r, all, Bits(n), cliques);
  std::vector<BooleanSubalgebra> blocks;
  for (auto& q : cliques) blocks.push_back(BooleanSubalgebra::from_carrier(L, std::move(q)));
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.carrier() < b.carrier(); });
  return blocks;
}

std::vector<BooleanSubalgebra> subalgebras_of(const BooleanSubalgebra& B, std::size_t cap) {
  const FiniteOML& L = B.host();
  const auto& atoms = B.atoms();
  const std::size_t k = atoms.size();
  std::vector<BooleanSubalgebra> out;
  for_each_partition(k, [&](const std::vector<std::size_t>& rgs, std::size_t parts) {
    if (out.size() >= cap)
      throw Error(Errc::CapExceeded,
                  "more than " + std::to_string(cap) + " subalgebras (reached " +
                      std::to_string(out.size() + 1) + ")",
                  {out.size() + 1});
    std::vector<Element> part_atoms(parts, L.zero());
    for (std::size_t i = 0; i < k; ++i) part_atoms[rgs[i]] = L.join(part_atoms[rgs[i]], atoms[i]);
    std::vector<Element> carrier;
    carrier.reserve(std::size_t{1} << parts);
    for (std::size_t mask = 0; mask < (std::size_t{1} << parts); ++mask) {
      Element e = L.zero();
      for (std::size_t p = 0; p < parts; ++p)
        if (mask >> p & 1) e = L.join(e, part_atoms[p]);
      carrier.push_back(e);
    }
    out.push_back(BooleanSubalgebra::from_carrier(B.host_ptr(), std::move(carrier)));
    return true;
  });
  std::sort(out.begin(), out.end(), by_size_then_carrier);
  return out;
}

std::vector<BooleanSubalgebra> enumerate_subalgebras(const LatticePtr& L, std::size_t cap) {
  std::set<std::vector<Element>> seen;
  std::vector<BooleanSubalgebra> out;
  for (const auto& block : enumerate_blocks(L)) {
    std::vector<BooleanSubalgebra> subs;
    try {
      subs = subalgebras_of(block, cap);
    } catch (const Error& e) {
      if (e.code() == Errc::CapExceeded)
        throw Error(Errc::CapExceeded, "more than " + std::to_string(cap) + " Boolean subalgebras",
                    {cap + 1});
      throw;
    }
    for (auto& s : subs)
      if (seen.insert(s.carrier()).second) {
        out.push_back(std::move(s));
        if (out.size() > cap)
          throw Error(Errc::CapExceeded,
                      "more than " + std::to_string(cap) + " Boolean subalgebras (reached " +
                          std::to_string(out.size()) + ")",
                      {out.size()});
      }
  }
  std::sort(out.begin(), out.end(), by_size_then_carrier);
  return out;
}

std::vector<TwoValuedHom> homs_to_2(const BooleanSubalgebra& B) {
  std::vector<TwoValuedHom> out;
  for (std::size_t i = 0; i < B.atoms().size(); ++i) out.emplace_back(B, i);
  return out;
}

Filter filter_generate(const BooleanSubalgebra& host, std::span<const Element> X) {
  const FiniteOML& L = host.host();
  Element g = L.one();
  for (Element x : X) {
    if (!host.contains(x))
      throw Error(Errc::NotInCarrier, L.name(x) + " is not in the filter's host", {x});
    g = L.meet(g, x);
  }
  std::vector<Element> members;
  for (Element y : host.carrier())
    if (L.leq(g, y)) members.push_back(y);
  return Filter(host, std::move(members));
}

MaximalFilter extend_to_maximal(const Filter& F) {
  if (!F.proper()) throw Error(Errc::ImproperInput, "cannot extend an improper filter");
  const BooleanSubalgebra& host = F.host();
  const FiniteOML& L = host.host();
  // In a finite Boolean host every filter is principal; track its generator.
  Element g = F.generator();
  for (Element x : host.carrier()) {
    if (L.leq(g, x) || L.leq(g, L.neg(x))) continue;
    const Element with_x = L.meet(g, x);
    g = with_x != L.zero() ? with_x : L.meet(g, L.neg(x));
  }
  const auto& atoms = host.atoms();
  auto it = std::find(atoms.begin(), atoms.end(), g);
  if (it == atoms.end())
    throw Error(Errc::ImproperInput, "maximal extension did not reach an atom of the host");
  std::vector<Element> members;
  for (Element y : host.carrier())
    if (L.leq(g, y)) members.push_back(y);
  return MaximalFilter{Filter(host, std::move(members)),
                       TwoValuedHom(host, static_cast<std::size_t>(it - atoms.begin()))};
}

TwoValuedHom extend_hom(const TwoValuedHom& f, const BooleanSubalgebra& target) {
  if (f.domain().host_ptr() != target.host_ptr() || !target.contains_all(f.domain().carrier()))
    throw Error(Errc::NotInCarrier, "hom domain is not contained in the target subalgebra");
  const Filter uf = f.ultrafilter();
  const Filter generated = filter_generate(target, uf.members());
  return extend_to_maximal(generated).quotient;
}

BooleanSubalgebra generated_subalgebra(const LatticePtr& host, std::span<const Element> S) {
  const FiniteOML& L = *host;
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j)
      if (!commutes(L, S[i], S[j]))
        throw Error(Errc::NonCommutingGenerators,
                    L.name(S[i]) + " and " + L.name(S[j]) + " do not commute", {S[i], S[j]});
  std::vector<bool> in(L.size(), false);
  std::vector<Element> items;
  auto add = [&](Element e) {
    if (!in[e]) {
      in[e] = true;
      items.push_back(e);
    }
  };
  add(L.zero());
  add(L.one());
  for (Element s : S) add(s);
  for (std::size_t done = 0; done < items.size();) {
    const std::size_t end = items.size();
    for (std::size_t i = done; i < end; ++i) {
      add(L.neg(items[i]));
      for (std::size_t j = 0; j <= i; ++j) {
        add(L.meet(items[i], items[j]));
        add(L.join(items[i], items[j]));
      }
    }
    done = end;
  }
  return BooleanSubalgebra::from_carrier(host, std::move(items));
}

}  // namespace omlkit
