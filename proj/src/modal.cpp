#include "omlkit/modal.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace omlkit {

// ---------------------------------------------------------------------------
// □ and ◇

ModalStructure ModalStructure::saturate(LatticePtr L) {
  const FiniteOML& lat = *L;
  std::vector<Element> box(lat.size(), lat.zero());
  const auto Z = omlkit::center(lat);
  for (Element a = 0; a < lat.size(); ++a)
    for (Element z : Z)
      if (lat.leq(z, a)) box[a] = lat.join(box[a], z);
  return with_box(std::move(L), std::move(box));
}

ModalStructure ModalStructure::with_box(LatticePtr L, std::vector<Element> box) {
  if (box.size() != L->size())
    throw std::invalid_argument("box table has " + std::to_string(box.size()) + " entries for " +
                                std::to_string(L->size()) + " elements");
  ModalStructure M;
  M.center_ = omlkit::center(*L);
  M.diamond_.resize(box.size());
  for (Element a = 0; a < L->size(); ++a) M.diamond_[a] = L->neg(box.at(L->neg(a)));
  M.box_ = std::move(box);
  M.lattice_ = std::move(L);
  return M;
}

bool ModalStructure::is_central(Element a) const {
  return std::binary_search(center_.begin(), center_.end(), a);
}

bool AxiomReport::all_hold() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& r) { return r.holds; });
}

AxiomReport check_modal_axioms(const ModalStructure& M) {
  const FiniteOML& L = M.lattice();
  const Element n = static_cast<Element>(L.size());
  auto box = [&](Element x) { return M.box(x); };
  auto unary = [&](std::string name, std::string law, auto&& holds) {
    AxiomResult r{std::move(name), std::move(law), true, {}};
    for (Element x = 0; x < n && r.holds; ++x)
      if (!holds(x)) r.holds = false, r.witness = {x};
    return r;
  };
  auto binary = [&](std::string name, std::string law, auto&& holds) {
    AxiomResult r{std::move(name), std::move(law), true, {}};
    for (Element x = 0; x < n && r.holds; ++x)
      for (Element y = 0; y < n && r.holds; ++y)
        if (!holds(x, y)) r.holds = false, r.witness = {x, y};
    return r;
  };

  AxiomReport report;
  AxiomResult s1{"S1", "orthomodular lattice", true, {}};
  if (auto v = find_violation(to_candidate(L), Limits{Limits::kHardElementCap})) {
    s1.holds = false;
    s1.witness.assign(v->witness.begin(), v->witness.end());
  }
  report.axioms.push_back(std::move(s1));
  report.axioms.push_back(unary("S2", "□x ≤ x", [&](Element x) { return L.leq(box(x), x); }));
  AxiomResult s3{"S3", "□1 = 1", box(L.one()) == L.one(), {}};
  if (!s3.holds) s3.witness = {L.one()};
  report.axioms.push_back(std::move(s3));
  report.axioms.push_back(unary("S4", "□□x = □x", [&](Element x) { return box(box(x)) == box(x); }));
  report.axioms.push_back(binary("S5", "□(x ∧ y) = □x ∧ □y", [&](Element x, Element y) {
    return box(L.meet(x, y)) == L.meet(box(x), box(y));
  }));
  report.axioms.push_back(binary("S6", "y = (y ∧ □x) ∨ (y ∧ ¬□x)", [&](Element x, Element y) {
    return y == L.join(L.meet(y, box(x)), L.meet(y, L.neg(box(x))));
  }));
  report.axioms.push_back(binary("S7", "□(x ∨ □y) = □x ∨ □y", [&](Element x, Element y) {
    return box(L.join(x, box(y))) == L.join(box(x), box(y));
  }));
  report.axioms.push_back(binary("S8", "□(¬x ∨ (y ∧ x)) ≤ ¬□x ∨ □y", [&](Element x, Element y) {
    return L.leq(box(L.join(L.neg(x), L.meet(y, x))), L.join(L.neg(box(x)), box(y)));
  }));
  return report;
}

// ---------------------------------------------------------------------------
// Extensions

ExtensionSpec ExtensionSpec::parse(const std::string& text) {
  ExtensionSpec spec;
  if (text == "identity") return spec;
  const std::string prefix = "diagonal:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    if (!digits.empty() && digits.size() <= 3 &&
        std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      spec.kind = Kind::diagonal;
      spec.k = static_cast<unsigned>(std::stoul(digits));
      if (spec.k >= 1) return spec;
    }
  }
  if (text.rfind("product-with", 0) == 0)
    throw Error(Errc::Usage, "product-with needs an explicit embedding and is library-only");
  throw Error(Errc::Usage, "unknown extension '" + text + "' (expected identity or diagonal:k)");
}

std::string ExtensionSpec::to_string() const {
  switch (kind) {
    case Kind::identity:
      return "identity";
    case Kind::diagonal:
      return "diagonal:" + std::to_string(k);
    case Kind::product_with:
      return "product-with";
  }
  return {};
}

void check_embedding(const FiniteOML& base, const FiniteOML& target, const std::vector<Element>& embed) {
  auto fail = [](const std::string& what, std::vector<std::size_t> witness) {
    throw Error(Errc::EmbeddingInvalid, what + " not preserved", std::move(witness));
  };
  if (embed.size() != base.size())
    throw Error(Errc::EmbeddingInvalid, "embedding has " + std::to_string(embed.size()) + " images for " +
                                            std::to_string(base.size()) + " elements");
  for (Element a = 0; a < base.size(); ++a)
    if (embed[a] >= target.size()) fail("range", {a});
  for (Element a = 0; a < base.size(); ++a)
    if (embed[base.neg(a)] != target.neg(embed[a]))
      fail("complement (" + base.name(a) + ")", {a});
  if (embed[base.zero()] != target.zero()) fail("0", {base.zero()});
  if (embed[base.one()] != target.one()) fail("1", {base.one()});
  for (Element a = 0; a < base.size(); ++a)
    for (Element b = 0; b < base.size(); ++b) {
      if (embed[base.meet(a, b)] != target.meet(embed[a], embed[b]))
        fail("meet (" + base.name(a) + ", " + base.name(b) + ")", {a, b});
      if (embed[base.join(a, b)] != target.join(embed[a], embed[b]))
        fail("join (" + base.name(a) + ", " + base.name(b) + ")", {a, b});
    }
  std::vector<Element> seen(embed);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    for (Element a = 0; a < base.size(); ++a)
      for (Element b = a + 1; b < base.size(); ++b)
        if (embed[a] == embed[b]) fail("injectivity", {a, b});
  }
}

ModalExtension::ModalExtension(LatticePtr base, ModalStructure extension, std::vector<Element> embed)
    : base_(std::move(base)), ext_(std::move(extension)), embed_(std::move(embed)) {
  check_embedding(*base_, ext_.lattice(), embed_);
}

BooleanSubalgebra ModalExtension::embed(const BooleanSubalgebra& W) const {
  std::vector<Element> image;
  for (Element e : W.carrier()) image.push_back(embed_[e]);
  std::sort(image.begin(), image.end());
  return BooleanSubalgebra::from_carrier(target_ptr(), std::move(image));
}

ExtensionPtr modal_extend(const LatticePtr& L, const ExtensionSpec& spec, const Limits& limits) {
  switch (spec.kind) {
    case ExtensionSpec::Kind::identity: {
      std::vector<Element> id(L->size());
      for (Element a = 0; a < L->size(); ++a) id[a] = a;
      return std::make_shared<ModalExtension>(L, ModalStructure::saturate(L), std::move(id));
    }
    case ExtensionSpec::Kind::diagonal: {
      if (spec.k == 0) throw Error(Errc::Usage, "diagonal needs k >= 1");
      LatticePtr target = power(*L, spec.k, limits);
      // (a, ..., a) in mixed radix is a * (n^(k-1) + ... + n + 1)
      std::size_t stride = 0;
      for (unsigned i = 0; i < spec.k; ++i) stride = stride * L->size() + 1;
      std::vector<Element> embed(L->size());
      for (Element a = 0; a < L->size(); ++a) embed[a] = static_cast<Element>(a * stride);
      return std::make_shared<ModalExtension>(L, ModalStructure::saturate(target), std::move(embed));
    }
    case ExtensionSpec::Kind::product_with: {
      if (!spec.factor) throw Error(Errc::Usage, "product-with needs a factor");
      if (center(*spec.factor).size() != spec.factor->size())
        throw Error(Errc::NotBoolean, "product-with factor is not Boolean");
      if (spec.embed.empty()) throw Error(Errc::EmbeddingInvalid, "product-with needs an explicit embedding");
      LatticePtr target = product(*L, *spec.factor, limits);
      return std::make_shared<ModalExtension>(L, ModalStructure::saturate(target), spec.embed);
    }
  }
  throw std::logic_error("unhandled extension kind");
}

// ---------------------------------------------------------------------------
// ◇L and Sec(◇L)

PossibilitySpace possibility_space(const ExtensionPtr& E) {
  const ModalStructure& M = E->extension();
  std::vector<Element> gens;
  for (Element p = 0; p < E->base().size(); ++p) gens.push_back(M.diamond(E->embed(p)));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  BooleanSubalgebra carrier = generated_subalgebra(E->target_ptr(), gens);
  for (Element e : carrier.carrier())
    if (!M.is_central(e)) throw std::logic_error("possibility space left the center");
  PosetPtr poset = SubalgebraPoset::below(carrier);
  return PossibilitySpace{E, std::move(carrier), std::move(poset)};
}

PossibilitySection make_possibility_section(const PossibilitySpace& P, TwoValuedHom hom) {
  Section s = principal_section(P.poset, hom);
  return PossibilitySection{std::move(hom), std::move(s)};
}

std::vector<PossibilitySection> sec_diamond(const PossibilitySpace& P) {
  std::vector<PossibilitySection> out;
  for (auto& f : homs_to_2(P.carrier)) out.push_back(make_possibility_section(P, std::move(f)));
  if (out.empty()) throw std::logic_error("Sec(◇L) is empty");
  return out;
}

// ---------------------------------------------------------------------------
// Actualization

namespace {

BooleanSubalgebra context_of(const PossibilitySpace& P, const BooleanSubalgebra& embedded_W) {
  std::vector<Element> gens = embedded_W.carrier();
  gens.insert(gens.end(), P.carrier.carrier().begin(), P.carrier.carrier().end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return generated_subalgebra(P.host->target_ptr(), gens);
}

}  // namespace

Actualization actualize(const PossibilitySpace& P, const BooleanSubalgebra& W, Element q,
                        const PossibilitySection& nu) {
  const ModalExtension& E = *P.host;
  if (W.host_ptr() != E.base_ptr()) throw Error(Errc::NotInW, "context is not a subalgebra of the base");
  if (!W.contains(q))
    throw Error(Errc::NotInW, "'" + (q < E.base().size() ? E.base().name(q) : std::to_string(q)) +
                                  "' is not in " + W.label(),
                {q});
  const Element eq = E.embed(q);
  const Element dq = E.extension().diamond(eq);
  if (!nu.hom.domain().contains(dq) || !nu.hom.value(dq))
    throw Error(Errc::PreconditionPossibility, "ν(◇" + E.base().name(q) + ") = 0", {q});

  BooleanSubalgebra T = context_of(P, E.embed(W));
  std::vector<Element> X = nu.hom.ultrafilter().members();
  X.push_back(eq);
  Filter Fq = filter_generate(T, X);
  if (!Fq.proper()) throw std::logic_error("F_q is improper");
  MaximalFilter FM = extend_to_maximal(Fq);
  Section s = principal_section(SubalgebraPoset::below(T), FM.quotient);
  if (!FM.quotient.value(eq)) throw std::logic_error("actualized hom does not make q true");
  if (!restriction_matches(s, nu.section)) throw std::logic_error("actualized section disagrees with ν");
  return Actualization{std::move(T), std::move(Fq), FM.filter, FM.quotient, std::move(s)};
}

Actualization born_extend(const PossibilitySpace& P, const Section& s) {
  const ModalExtension& E = *P.host;
  if (!s.poset || s.poset->lattice() != E.base_ptr())
    throw Error(Errc::NotPrincipal, "section does not live over the base lattice");
  if (!check_section(s).ok()) throw Error(Errc::NotPrincipal, "not a valid section");
  const auto cover = base_cover(*s.poset, s.domain);
  if (cover.size() != 1 || s.poset->down(cover[0]) != s.domain)
    throw Error(Errc::NotPrincipal, "section domain is not a principal down-set",
                std::vector<std::size_t>(cover.begin(), cover.end()));
  const std::size_t w = cover[0];
  const BooleanSubalgebra& W = *s.poset->node(w).algebra;
  const Element atom = W.atoms()[*s.choice_at(w)];

  BooleanSubalgebra eW = E.embed(W);
  const auto& eatoms = eW.atoms();
  const auto idx = static_cast<std::size_t>(std::find(eatoms.begin(), eatoms.end(), E.embed(atom)) - eatoms.begin());
  TwoValuedHom f(eW, idx);
  BooleanSubalgebra T = context_of(P, eW);
  TwoValuedHom g = extend_hom(f, T);
  Section out = principal_section(SubalgebraPoset::below(T), g);
  if (!restriction_matches(out, s, &E.embedding())) throw std::logic_error("extension does not restrict to s");
  return Actualization{std::move(T), std::nullopt, std::nullopt, std::move(g), std::move(out)};
}

PossibilitySection global_actualization_check(const PossibilitySpace& P, const Section& tau) {
  const ModalExtension& E = *P.host;
  if (!tau.poset || tau.poset->lattice() != E.base_ptr())
    throw Error(Errc::IncompatibleGlobalSection, "section does not live over the base lattice");
  const SubalgebraPoset& W = *tau.poset;
  if (tau.domain.size() != W.size() || !check_section(tau).ok())
    throw Error(Errc::IncompatibleGlobalSection, "not a global section");

  // f0 on the union of embed(W) ∩ ◇L
  std::map<Element, bool> f0;
  for (std::size_t i = 0; i < tau.domain.size(); ++i) {
    const std::size_t w = tau.domain[i];
    for (Element p : W.node(w).algebra->carrier()) {
      const Element e = E.embed(p);
      if (!P.carrier.contains(e)) continue;
      const bool v = W.value(w, tau.choice[i], p);
      auto [it, fresh] = f0.emplace(e, v);
      if (!fresh && it->second != v)
        throw Error(Errc::IncompatibleGlobalSection, "τ disagrees with itself at " + E.base().name(p), {w, p});
    }
  }
  std::vector<Element> X;
  for (const auto& [e, v] : f0)
    if (v) X.push_back(e);
  Filter F = filter_generate(P.carrier, X);
  if (!F.proper()) throw Error(Errc::IncompatibleGlobalSection, "τ's true set on ◇L has empty meet");
  MaximalFilter FM = extend_to_maximal(F);
  for (const auto& [e, v] : f0)
    if (FM.quotient.value(e) != v)
      throw Error(Errc::IncompatibleGlobalSection, "τ is not a hom on ◇L", {e});
  return make_possibility_section(P, FM.quotient);
}

}  // namespace omlkit
