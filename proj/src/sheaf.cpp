#include "omlkit/sheaf.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>

namespace omlkit {

// ---------------------------------------------------------------------------
// SubalgebraPoset

PosetPtr SubalgebraPoset::from_lattice(const LatticePtr& L, PosetMode mode, std::size_t cap) {
  auto P = std::make_shared<SubalgebraPoset>();
  P->lattice_ = L;
  std::vector<BooleanSubalgebra> algebras;
  if (mode == PosetMode::all) {
    algebras = enumerate_subalgebras(L, cap);
  } else {
    algebras = enumerate_blocks(L);
    std::set<std::vector<Element>> seen;
    std::vector<BooleanSubalgebra> meets;
    for (std::size_t i = 0; i < algebras.size(); ++i)
      for (std::size_t j = i + 1; j < algebras.size(); ++j) {
        std::vector<Element> common;
        const auto& a = algebras[i].carrier();
        const auto& b = algebras[j].carrier();
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (common.size() <= 2 || !seen.insert(common).second) continue;
        meets.push_back(BooleanSubalgebra::from_carrier(L, std::move(common)));
      }
    std::sort(meets.begin(), meets.end(), [](const auto& x, const auto& y) {
      return x.size() != y.size() ? x.size() < y.size() : x.carrier() < y.carrier();
    });
    for (auto& m : meets) algebras.push_back(std::move(m));
  }
  for (auto& B : algebras) {
    Node node;
    node.label = B.label();
    node.atoms.assign(B.atoms().begin(), B.atoms().end());
    node.algebra = std::move(B);
    P->nodes_.push_back(std::move(node));
  }
  P->finish();
  return P;
}

PosetPtr SubalgebraPoset::from_hypergraph(const ContextHypergraph& g) {
  auto P = std::make_shared<SubalgebraPoset>();
  P->vertex_names_ = g.names;
  auto label = [&](const std::vector<std::uint32_t>& vs, bool rest) {
    std::string s = "<";
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + g.names[vs[i]];
    if (rest) s += ",rest";
    return s + ">";
  };
  for (const auto& ctx : g.contexts) {
    Node node;
    node.vertices.assign(ctx.begin(), ctx.end());
    node.atoms = node.vertices;
    node.label = label(node.vertices, false);
    P->nodes_.push_back(std::move(node));
  }
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<Node> meets;
  for (std::size_t i = 0; i < g.contexts.size(); ++i)
    for (std::size_t j = i + 1; j < g.contexts.size(); ++j) {
      std::vector<std::uint32_t> common;
      std::set_intersection(g.contexts[i].begin(), g.contexts[i].end(), g.contexts[j].begin(),
                            g.contexts[j].end(), std::back_inserter(common));
      if (common.empty() || !seen.insert(common).second) continue;
      Node node;
      node.vertices = common;
      node.atoms = common;
      node.atoms.push_back(kRest);
      node.label = label(common, true);
      meets.push_back(std::move(node));
    }
  std::sort(meets.begin(), meets.end(), [](const Node& a, const Node& b) {
    return a.vertices.size() != b.vertices.size() ? a.vertices.size() < b.vertices.size()
                                                  : a.vertices < b.vertices;
  });
  for (auto& m : meets) P->nodes_.push_back(std::move(m));
  P->finish();
  return P;
}

PosetPtr SubalgebraPoset::below(const BooleanSubalgebra& T, std::size_t cap) {
  auto P = std::make_shared<SubalgebraPoset>();
  P->lattice_ = T.host_ptr();
  for (auto& B : subalgebras_of(T, cap)) {
    Node node;
    node.label = B.label();
    node.atoms.assign(B.atoms().begin(), B.atoms().end());
    node.algebra = std::move(B);
    P->nodes_.push_back(std::move(node));
  }
  P->finish();
  return P;
}

void SubalgebraPoset::finish() {
  const std::size_t n = nodes_.size();
  leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        leq_[i][j] = true;
      } else if (lattice_) {
        const auto& a = nodes_[i].algebra->carrier();
        const auto& b = nodes_[j].algebra->carrier();
        leq_[i][j] = a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
      } else {
        // contexts are never below one another
        const bool i_is_context = std::find(nodes_[i].atoms.begin(), nodes_[i].atoms.end(), kRest) ==
                                  nodes_[i].atoms.end();
        const auto& a = nodes_[i].vertices;
        const auto& b = nodes_[j].vertices;
        leq_[i][j] = !i_is_context && a.size() < b.size() &&
                     std::includes(b.begin(), b.end(), a.begin(), a.end());
      }
    }
  down_.assign(n, {});
  maximal_.clear();
  for (std::size_t j = 0; j < n; ++j) {
    bool is_max = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (leq_[i][j]) down_[j].push_back(i);
      if (i != j && leq_[j][i]) is_max = false;
    }
    if (is_max) maximal_.push_back(j);
  }
  restriction_.clear();
  for (std::size_t hi = 0; hi < n; ++hi)
    for (std::size_t lo : down_[hi]) {
      if (lo == hi) continue;
      std::vector<std::uint32_t> map;
      const auto& lo_atoms = nodes_[lo].atoms;
      for (std::uint32_t x : nodes_[hi].atoms) {
        std::size_t found = lo_atoms.size();
        for (std::size_t k = 0; k < lo_atoms.size(); ++k) {
          const std::uint32_t y = lo_atoms[k];
          const bool above = lattice_ ? lattice_->leq(x, y) : (y == x || (y == kRest && !std::binary_search(nodes_[lo].vertices.begin(), nodes_[lo].vertices.end(), x)));
          if (above) {
            found = k;
            break;
          }
        }
        if (found == lo_atoms.size())
          throw Error(Errc::NotBoolean, "atom of " + nodes_[hi].label + " has no image in " + nodes_[lo].label);
        map.push_back(static_cast<std::uint32_t>(found));
      }
      restriction_.emplace(std::make_pair(hi, lo), std::move(map));
    }
}

std::size_t SubalgebraPoset::restrict_atom(std::size_t hi, std::size_t lo, std::size_t atom_index) const {
  if (hi == lo) return atom_index;
  return restriction_.at({hi, lo}).at(atom_index);
}

std::optional<std::size_t> SubalgebraPoset::find_node(const std::vector<Element>& carrier) const {
  if (!lattice_) return std::nullopt;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].algebra->carrier() == carrier) return i;
  return std::nullopt;
}

bool SubalgebraPoset::contains(std::size_t i, Element element) const {
  if (lattice_) return nodes_[i].algebra->contains(element);
  const auto& vs = nodes_[i].vertices;
  return std::binary_search(vs.begin(), vs.end(), element);
}

bool SubalgebraPoset::value(std::size_t i, std::size_t atom_index, Element element) const {
  const std::uint32_t atom = nodes_[i].atoms.at(atom_index);
  if (lattice_) return lattice_->leq(atom, element);
  return atom == element;
}

std::string SubalgebraPoset::atom_label(std::size_t i, std::size_t atom_index) const {
  const std::uint32_t atom = nodes_[i].atoms.at(atom_index);
  if (lattice_) return lattice_->name(atom);
  return atom == kRest ? "rest" : vertex_names_.at(atom);
}

std::string SubalgebraPoset::element_name(Element element) const {
  return lattice_ ? lattice_->name(element) : vertex_names_.at(element);
}

std::size_t SubalgebraPoset::element_count() const {
  return lattice_ ? lattice_->size() : vertex_names_.size();
}

// ---------------------------------------------------------------------------
// E_L and the topology

bool point_leq(const SubalgebraPoset& P, const SheafPoint& lo, const SheafPoint& hi) {
  return P.leq(lo.node, hi.node) && P.restrict_atom(hi.node, lo.node, hi.atom) == lo.atom;
}

std::vector<SheafPoint> sheaf_points(const SubalgebraPoset& P) {
  std::vector<SheafPoint> out;
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t a = 0; a < P.node(i).atoms.size(); ++a) out.push_back({i, a});
  return out;
}

std::vector<SheafPoint> point_down_set(const SubalgebraPoset& P, const SheafPoint& p) {
  std::vector<SheafPoint> out;
  for (std::size_t g : P.down(p.node)) out.push_back({g, P.restrict_atom(p.node, g, p.atom)});
  return out;
}

bool is_decreasing(const SubalgebraPoset& P, const std::vector<std::size_t>& nodes) {
  std::vector<bool> in(P.size(), false);
  for (std::size_t w : nodes) in.at(w) = true;
  for (std::size_t w : nodes)
    for (std::size_t g : P.down(w))
      if (!in[g]) return false;
  return true;
}

std::vector<std::size_t> base_cover(const SubalgebraPoset& P, const std::vector<std::size_t>& nodes) {
  std::vector<std::size_t> out;
  for (std::size_t w : nodes) {
    bool is_max = true;
    for (std::size_t v : nodes)
      if (v != w && P.leq(w, v)) is_max = false;
    if (is_max) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Sections

std::optional<std::size_t> Section::choice_at(std::size_t node) const {
  auto it = std::lower_bound(domain.begin(), domain.end(), node);
  if (it == domain.end() || *it != node) return std::nullopt;
  return choice[static_cast<std::size_t>(it - domain.begin())];
}

Section principal_section(const PosetPtr& P, std::size_t node, std::size_t atom) {
  Section s;
  s.poset = P;
  for (std::size_t g : P->down(node)) {
    s.domain.push_back(g);
    s.choice.push_back(P->restrict_atom(node, g, atom));
  }
  return s;
}

Section principal_section(const PosetPtr& P, const TwoValuedHom& f) {
  if (P->lattice() != f.domain().host_ptr())
    throw Error(Errc::NotInCarrier, "hom lives in a different lattice than the poset");
  auto node = P->find_node(f.domain().carrier());
  if (!node) throw Error(Errc::NotInCarrier, "hom domain " + f.domain().label() + " is not a poset node");
  return principal_section(P, *node, f.atom_index());
}

SectionCheck check_section(const Section& s) {
  const SubalgebraPoset& P = *s.poset;
  if (s.domain.size() != s.choice.size()) return {SectionFault::BadNode, 0, 0};
  for (std::size_t i = 0; i < s.domain.size(); ++i) {
    if (s.domain[i] >= P.size() || (i && s.domain[i] <= s.domain[i - 1]))
      return {SectionFault::BadNode, s.domain[i], s.domain[i]};
  }
  for (std::size_t i = 0; i < s.domain.size(); ++i)
    if (s.choice[i] >= P.node(s.domain[i]).atoms.size())
      return {SectionFault::NotAHomomorphism, s.domain[i], s.domain[i]};
  for (std::size_t w : s.domain)
    for (std::size_t g : P.down(w))
      if (!s.choice_at(g)) return {SectionFault::DomainNotDecreasing, g, w};
  for (std::size_t i = 0; i < s.domain.size(); ++i) {
    const std::size_t w = s.domain[i];
    for (std::size_t g : P.down(w)) {
      if (g == w) continue;
      if (*s.choice_at(g) != P.restrict_atom(w, g, s.choice[i]))
        return {SectionFault::RestrictionMismatch, g, w};
    }
  }
  return {};
}

std::optional<bool> section_eval(const Section& s, Element element) {
  const SubalgebraPoset& P = *s.poset;
  if (element >= P.element_count()) return std::nullopt;
  for (std::size_t i = 0; i < s.domain.size(); ++i) {
    const std::size_t w = s.domain[i];
    if (s.choice[i] < P.node(w).atoms.size() && P.contains(w, element))
      return P.value(w, s.choice[i], element);
  }
  return std::nullopt;
}

bool restriction_matches(const Section& big, const Section& small, const std::vector<Element>* map) {
  const SubalgebraPoset& B = *big.poset;
  const SubalgebraPoset& S = *small.poset;
  if (!B.lattice_backed() || !S.lattice_backed()) return false;
  auto image = [&](Element e) { return map ? map->at(e) : e; };
  for (std::size_t i = 0; i < small.domain.size(); ++i) {
    const std::size_t w0 = small.domain[i];
    std::vector<Element> carrier;
    for (Element e : S.node(w0).algebra->carrier()) carrier.push_back(image(e));
    std::sort(carrier.begin(), carrier.end());
    auto w = B.find_node(carrier);
    if (!w) return false;
    auto c = big.choice_at(*w);
    if (!c || *c >= B.node(*w).atoms.size() || small.choice[i] >= S.node(w0).atoms.size()) return false;
    for (Element e : S.node(w0).algebra->carrier())
      if (S.value(w0, small.choice[i], e) != B.value(*w, *c, image(e))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Global-section search

namespace {

struct Constraint {
  std::size_t other;               // position in the block list
  std::vector<std::uint32_t> mine;  // my atom -> shared-node atom
  std::vector<std::uint32_t> theirs;
};

class GlobalSearch {
 public:
  GlobalSearch(const SubalgebraPoset& P, std::vector<std::size_t> blocks) : P_(P), blocks_(std::move(blocks)) {
    const std::size_t m = blocks_.size();
    links_.assign(m, {});
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        for (std::size_t w : shared_nodes(blocks_[i], blocks_[j])) {
          Constraint c{j, {}, {}};
          for (std::size_t a = 0; a < P_.node(blocks_[i]).atoms.size(); ++a)
            c.mine.push_back(static_cast<std::uint32_t>(P_.restrict_atom(blocks_[i], w, a)));
          for (std::size_t a = 0; a < P_.node(blocks_[j]).atoms.size(); ++a)
            c.theirs.push_back(static_cast<std::uint32_t>(P_.restrict_atom(blocks_[j], w, a)));
          links_[i].push_back(std::move(c));
        }
      }
    order_.resize(m);
    for (std::size_t i = 0; i < m; ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return links_[a].size() > links_[b].size(); });
  }

  using Assignment = std::vector<std::size_t>;  // atom per block position

  /// Solutions in depth-first order, at most `limit`.
  std::vector<Assignment> run(std::size_t limit, unsigned workers) const {
    if (blocks_.empty()) return {Assignment{}};
    Domains root = initial();
    const std::size_t first = order_[0];
    std::vector<std::size_t> values;
    for (std::size_t a = 0; a < root[first].size(); ++a)
      if (root[first][a]) values.push_back(a);

    auto branch = [&](std::size_t value) {
      std::vector<Assignment> found;
      Domains d = root;
      if (assign(d, first, value)) dfs(d, 1, limit, found);
      return found;
    };
    std::vector<std::vector<Assignment>> per_branch(values.size());
    if (workers <= 1 || values.size() <= 1) {
      std::size_t total = 0;
      for (std::size_t v = 0; v < values.size() && total < limit; ++v) {
        per_branch[v] = branch(values[v]);
        total += per_branch[v].size();
      }
    } else {
      // branches are handed out round-robin; results merge in branch order
      std::vector<std::future<void>> jobs;
      for (unsigned w = 0; w < workers; ++w)
        jobs.push_back(std::async(std::launch::async, [&, w] {
          for (std::size_t v = w; v < values.size(); v += workers) per_branch[v] = branch(values[v]);
        }));
      for (auto& j : jobs) j.get();
    }
    std::vector<Assignment> out;
    for (auto& found : per_branch)
      for (auto& a : found) {
        if (out.size() == limit) return out;
        out.push_back(std::move(a));
      }
    return out;
  }

  const std::vector<std::size_t>& blocks() const { return blocks_; }

 private:
  using Domains = std::vector<std::vector<std::uint8_t>>;

  std::vector<std::size_t> shared_nodes(std::size_t a, std::size_t b) const {
    // maximal common lower nodes with more than one atom
    std::vector<std::size_t> common;
    for (std::size_t w : P_.down(a))
      if (w != a && P_.leq(w, b) && P_.node(w).atoms.size() > 1) common.push_back(w);
    std::vector<std::size_t> out;
    for (std::size_t w : common) {
      bool is_max = true;
      for (std::size_t v : common)
        if (v != w && P_.leq(w, v)) is_max = false;
      if (is_max) out.push_back(w);
    }
    return out;
  }

  Domains initial() const {
    Domains d(blocks_.size());
    for (std::size_t i = 0; i < blocks_.size(); ++i) d[i].assign(P_.node(blocks_[i]).atoms.size(), 1);
    return d;
  }

  bool assign(Domains& d, std::size_t var, std::size_t value) const {
    std::fill(d[var].begin(), d[var].end(), 0);
    d[var][value] = 1;
    for (const Constraint& c : links_[var]) {
      auto& dom = d[c.other];
      bool any = false;
      for (std::size_t y = 0; y < dom.size(); ++y) {
        if (dom[y] && c.theirs[y] != c.mine[value]) dom[y] = 0;
        any = any || dom[y];
      }
      if (!any) return false;
    }
    return true;
  }

  void dfs(const Domains& d, std::size_t level, std::size_t limit, std::vector<Assignment>& found) const {
    if (found.size() >= limit) return;
    if (level == order_.size()) {
      Assignment a(blocks_.size());
      for (std::size_t i = 0; i < blocks_.size(); ++i)
        a[i] = static_cast<std::size_t>(std::find(d[i].begin(), d[i].end(), 1) - d[i].begin());
      found.push_back(std::move(a));
      return;
    }
    const std::size_t var = order_[level];
    for (std::size_t v = 0; v < d[var].size(); ++v) {
      if (!d[var][v]) continue;
      Domains next = d;
      if (assign(next, var, v)) dfs(next, level + 1, limit, found);
      if (found.size() >= limit) return;
    }
  }

  const SubalgebraPoset& P_;
  std::vector<std::size_t> blocks_;
  std::vector<std::vector<Constraint>> links_;
  std::vector<std::size_t> order_;
};

Section to_section(const PosetPtr& P, const std::vector<std::size_t>& blocks,
                   const std::vector<std::size_t>& assignment) {
  Section s;
  s.poset = P;
  for (std::size_t w = 0; w < P->size(); ++w) {
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (P->leq(w, blocks[i])) {
        s.domain.push_back(w);
        s.choice.push_back(P->restrict_atom(blocks[i], w, assignment[i]));
        break;
      }
  }
  return s;
}

}  // namespace

bool blocks_compatible(const SubalgebraPoset& P, const std::vector<std::size_t>& blocks) {
  return !GlobalSearch(P, blocks).run(1, 1).empty();
}

GlobalResult solve_global(const PosetPtr& P, const SolveOptions& options) {
  GlobalResult result;
  const std::size_t limit = std::max<std::size_t>(options.max_solutions, 1);
  GlobalSearch search(*P, P->maximal());
  auto found = search.run(limit + 1, std::max(1u, options.workers));
  result.sat = !found.empty();
  if (found.size() > limit) {
    result.truncated = true;
    found.resize(limit);
  }
  for (const auto& a : found) result.sections.push_back(to_section(P, search.blocks(), a));
  std::sort(result.sections.begin(), result.sections.end(),
            [](const Section& a, const Section& b) { return a.choice < b.choice; });
  if (!result.sat) {
    std::vector<std::size_t> core = P->maximal();
    for (std::size_t i = 0; i < core.size();) {
      std::vector<std::size_t> trial = core;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      if (!blocks_compatible(*P, trial))
        core = std::move(trial);
      else
        ++i;
    }
    result.certificate = std::move(core);
  }
  return result;
}

std::string format_answer(const SubalgebraPoset& P, const GlobalResult& result, bool enumerate) {
  std::ostringstream os;
  if (!result.sat) {
    os << "UNSAT\n";
    os << "certificate: " << result.certificate.size() << " blocks\n";
    for (std::size_t b : result.certificate) os << P.node(b).label << '\n';
    return os.str();
  }
  os << "SAT\n";
  auto write = [&](const Section& s) {
    for (std::size_t i = 0; i < s.domain.size(); ++i)
      os << P.node(s.domain[i]).label << ": " << P.atom_label(s.domain[i], s.choice[i]) << '\n';
  };
  if (!enumerate) {
    write(result.sections.front());
    return os.str();
  }
  os << "sections: " << result.sections.size() << (result.truncated ? " (truncated)" : "") << '\n';
  for (std::size_t k = 0; k < result.sections.size(); ++k) {
    os << "section " << k + 1 << '\n';
    write(result.sections[k]);
  }
  return os.str();
}

}  // namespace omlkit
