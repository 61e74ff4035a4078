#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "omlkit/greechie.hpp"
#include "omlkit/modal.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace omlkit;

namespace {

// Tree-shaped pastings: each new block meets at most one earlier block, in one
// atom that no other block shares yet. Such diagrams have no loops at all.
// Two-atom blocks stay disjoint from the rest.
GreechieDiagram random_diagram(std::mt19937& rng) {
  GreechieDiagram d;
  std::vector<int> degree;
  const int blocks = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int b = 0; b < blocks; ++b) {
    const int size = std::uniform_int_distribution<int>(2, b == 0 ? 4 : 3)(rng);
    const bool attach = size > 2 && std::uniform_int_distribution<int>(0, 4)(rng) != 0;
    std::vector<std::size_t> block;
    std::vector<std::size_t> free;
    for (std::size_t a = 0; a < degree.size(); ++a)
      if (degree[a] == 1) free.push_back(a);
    if (attach && !free.empty()) {
      const std::size_t a = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
      block.push_back(a);
      ++degree[a];
    }
    while (block.size() < static_cast<std::size_t>(size)) {
      block.push_back(d.atoms.size());
      d.atoms.push_back("x" + std::to_string(d.atoms.size()));
      degree.push_back(size > 2 ? 1 : 2);
    }
    d.blocks.push_back(block);
  }
  return d;
}

// Element count by identifying subsets across blocks with union-find.
std::size_t union_find_size(const GreechieDiagram& d) {
  std::vector<std::size_t> offset{0};
  for (const auto& b : d.blocks) offset.push_back(offset.back() + (std::size_t{1} << b.size()));
  std::vector<std::size_t> parent(offset.back());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto as_set = [&](std::size_t b, std::size_t mask) {
    std::set<std::size_t> s;
    for (std::size_t i = 0; i < d.blocks[b].size(); ++i)
      if (mask >> i & 1) s.insert(d.blocks[b][i]);
    return s;
  };
  auto mask_of = [&](std::size_t b, const std::set<std::size_t>& s) -> std::optional<std::size_t> {
    std::size_t m = 0;
    for (std::size_t i = 0; i < d.blocks[b].size(); ++i)
      if (s.count(d.blocks[b][i])) m |= std::size_t{1} << i;
    if (static_cast<std::size_t>(__builtin_popcountll(m)) != s.size()) return std::nullopt;
    return m;
  };
  for (std::size_t b = 0; b < d.blocks.size(); ++b)
    for (std::size_t c = 0; c < d.blocks.size(); ++c) {
      if (b == c) continue;
      const std::size_t full_b = (std::size_t{1} << d.blocks[b].size()) - 1;
      const std::size_t full_c = (std::size_t{1} << d.blocks[c].size()) - 1;
      for (std::size_t m = 0; m <= full_b; ++m) {
        if (auto mc = mask_of(c, as_set(b, m))) parent[find(offset[b] + m)] = find(offset[c] + *mc);
        if (auto mc = mask_of(c, as_set(b, full_b ^ m))) parent[find(offset[b] + m)] = find(offset[c] + (full_c ^ *mc));
      }
    }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < parent.size(); ++i) roots.insert(find(i));
  return roots.size();
}

std::set<std::set<std::string>> block_names(const GreechieDiagram& d) {
  std::set<std::set<std::string>> out;
  for (const auto& b : d.blocks) {
    std::set<std::string> s;
    for (std::size_t a : b) s.insert(d.atoms[a]);
    out.insert(s);
  }
  return out;
}

constexpr int kSamples = 80;

}  // namespace

TEST_CASE("random pastings are orthomodular with the diagram's blocks") {
  std::mt19937 rng(20261014);
  for (int i = 0; i < kSamples; ++i) {
    const auto d = random_diagram(rng);
    CAPTURE(render_greechie(d));
    REQUIRE_FALSE(find_short_loop(d).has_value());
    auto L = paste(d);
    CHECK(L->size() == pasted_size(d));
    CHECK(L->size() == union_find_size(d));
    CHECK_NOTHROW(verify_oml(to_candidate(*L)));
    CHECK(parse_greechie(render_greechie(d)) == d);

    std::set<std::set<std::string>> got;
    for (const auto& B : enumerate_blocks(L)) {
      std::set<std::string> s;
      for (Element a : B.atoms()) s.insert(L->name(a));
      got.insert(s);
    }
    CHECK(got == block_names(d));

    const auto o = oracle::ops(*L);
    for (Element a = 0; a < L->size(); ++a)
      for (Element b = 0; b < L->size(); ++b) {
        CHECK(commutes(*L, a, b) == commutes(*L, b, a));
        CHECK(commutes(*L, a, b) == oracle::commutes(o, a, b));
        CHECK(L->neg(L->join(a, b)) == L->meet(L->neg(a), L->neg(b)));
      }
    if (L->size() <= 40) CHECK(center(*L) == oracle::center(o));
    if (L->size() <= 16) {
      std::vector<std::vector<Element>> subs;
      for (const auto& s : enumerate_subalgebras(L, 100000)) subs.push_back(s.carrier());
      CHECK(subs == oracle::subalgebras(o));
    }
  }
}

TEST_CASE("random pastings: solver counts match both brute forces") {
  std::mt19937 rng(7);
  for (int i = 0; i < kSamples; ++i) {
    const auto d = random_diagram(rng);
    CAPTURE(render_greechie(d));
    auto L = paste(d);
    const auto o = oracle::ops(*L);
    std::vector<std::vector<Element>> blocks;
    for (const auto& B : enumerate_blocks(L)) blocks.push_back(B.carrier());
    const std::size_t want = oracle::count_global_valuations(o, blocks);
    if (d.atoms.size() <= 20) CHECK(want == oracle::count_vertex_assignments(d.atoms.size(), d.blocks));

    auto P = SubalgebraPoset::from_lattice(L, PosetMode::blocks);
    auto r = solve_global(P, {100000, 1});
    CHECK(r.sections.size() == want);
    for (const auto& s : r.sections) CHECK(check_section(s).ok());
    auto H = SubalgebraPoset::from_hypergraph(hypergraph_from_diagram(d));
    CHECK(solve_global(H, {100000, 2}).sections.size() == want);
    // a tree pasting always admits a valuation
    CHECK(r.sat);
  }
}

TEST_CASE("random pastings: modal laws and actualization") {
  std::mt19937 rng(99);
  for (int i = 0; i < kSamples; ++i) {
    const auto d = random_diagram(rng);
    CAPTURE(render_greechie(d));
    auto L = paste(d);
    if (L->size() > 36) continue;
    auto M = ModalStructure::saturate(L);
    CHECK(check_modal_axioms(M).all_hold());
    for (Element a = 0; a < L->size(); ++a) {
      CHECK(L->leq(a, M.diamond(a)));
      CHECK(M.diamond(a) == L->neg(M.box(L->neg(a))));
    }

    auto P = possibility_space(modal_extend(L, {}));
    const auto nus = sec_diamond(P);
    const auto ext = P.host;
    for (const auto& W : enumerate_blocks(L))
      for (Element q : W.carrier()) {
        if (q == L->zero()) continue;
        for (const auto& nu : nus) {
          if (!nu.hom.value(ext->extension().diamond(ext->embed(q)))) continue;
          auto A = actualize(P, W, q, nu);
          CHECK(A.hom.value(ext->embed(q)));
          CHECK(restriction_matches(A.section, nu.section));
        }
      }

    auto base = SubalgebraPoset::from_lattice(L, PosetMode::blocks);
    for (std::size_t n = 0; n < base->size(); ++n)
      for (std::size_t a = 0; a < base->node(n).atoms.size(); ++a) {
        auto s = principal_section(base, n, a);
        auto B = born_extend(P, s);
        CHECK(restriction_matches(B.section, s, &ext->embedding()));
      }

    auto all = SubalgebraPoset::from_lattice(L, PosetMode::all, 100000);
    for (const auto& tau : solve_global(all, {20, 1}).sections) {
      auto nu = global_actualization_check(P, tau);
      CHECK(check_section(nu.section).ok());
    }
  }
}
