#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "omlkit/boolean.hpp"
#include "omlkit/vectors.hpp"

namespace omlkit {

enum class PosetMode { all, blocks };

/// The poset W_L of Boolean subalgebras ordered by inclusion, with its
/// decreasing-set topology given by the principal down-sets (W].
///
/// Lattice-backed posets carry real subalgebras of a host OML. Hypergraph-
/// backed posets treat each context as the free Boolean algebra on its
/// vertices; an intersection node is generated by the shared vertices and
/// gets one extra atom ("rest") for the complement of their join.
///
/// Every node stores its atoms; a two-valued hom on a node is the index of
/// the atom it sends to 1.
class SubalgebraPoset {
 public:
  static constexpr std::uint32_t kRest = UINT32_MAX;

  struct Node {
    std::string label;
    std::optional<BooleanSubalgebra> algebra;  // lattice-backed only
    std::vector<std::uint32_t> atoms;          // elements, or vertex ids / kRest
    std::vector<std::uint32_t> vertices;       // hypergraph-backed only, sorted
  };

  /// `all`: every Boolean subalgebra (subject to `cap`). `blocks`: maximal
  /// blocks plus their distinct nontrivial pairwise intersections.
  static std::shared_ptr<const SubalgebraPoset> from_lattice(const LatticePtr& L, PosetMode mode,
                                                             std::size_t cap = kDefaultCap);
  /// Contexts plus their distinct nonempty pairwise intersections.
  static std::shared_ptr<const SubalgebraPoset> from_hypergraph(const ContextHypergraph& g);
  /// (T] as a poset of its own: every subalgebra of T.
  static std::shared_ptr<const SubalgebraPoset> below(const BooleanSubalgebra& T,
                                                      std::size_t cap = kDefaultCap);

  static constexpr std::size_t kDefaultCap = 10000;

  std::size_t size() const noexcept { return nodes_.size(); }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  bool leq(std::size_t i, std::size_t j) const { return leq_[i][j]; }
  /// (W] as ascending node indices.
  const std::vector<std::size_t>& down(std::size_t i) const { return down_[i]; }
  /// Maximal nodes, ascending.
  const std::vector<std::size_t>& maximal() const noexcept { return maximal_; }

  /// Atom of `lo` above atom `atom_index` of `hi`; requires lo <= hi.
  std::size_t restrict_atom(std::size_t hi, std::size_t lo, std::size_t atom_index) const;

  bool lattice_backed() const noexcept { return lattice_ != nullptr; }
  const LatticePtr& lattice() const noexcept { return lattice_; }
  std::optional<std::size_t> find_node(const std::vector<Element>& carrier) const;

  /// Whether `element` (a lattice element, or a vertex id) belongs to node i.
  bool contains(std::size_t i, Element element) const;
  /// Value at `element` of the hom on node i sending atom `atom_index` to 1.
  bool value(std::size_t i, std::size_t atom_index, Element element) const;
  std::string atom_label(std::size_t i, std::size_t atom_index) const;
  std::string element_name(Element element) const;
  std::size_t element_count() const;

 private:
  void finish();

  std::vector<Node> nodes_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<std::size_t>> down_;
  std::vector<std::size_t> maximal_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> restriction_;
  LatticePtr lattice_;
  std::vector<std::string> vertex_names_;
};

using PosetPtr = std::shared_ptr<const SubalgebraPoset>;

/// A point (W, f) of E_L: node index and the atom index f sends to 1.
struct SheafPoint {
  std::size_t node;
  std::size_t atom;

  auto operator<=>(const SheafPoint&) const = default;
};

/// Order on E_L: (W1, f1) <= (W2, f2) iff W1 ⊆ W2 and f1 = f2|W1.
bool point_leq(const SubalgebraPoset& P, const SheafPoint& lo, const SheafPoint& hi);
std::vector<SheafPoint> sheaf_points(const SubalgebraPoset& P);
/// (W, f] = {(G, f|G) : G ⊆ W}, ordered by node.
std::vector<SheafPoint> point_down_set(const SubalgebraPoset& P, const SheafPoint& p);

bool is_decreasing(const SubalgebraPoset& P, const std::vector<std::size_t>& nodes);
/// Maximal members of a decreasing set; their principal down-sets union to it.
std::vector<std::size_t> base_cover(const SubalgebraPoset& P, const std::vector<std::size_t>& nodes);

/// Map from a decreasing set U to E_L. `choice[i]` is the atom index chosen
/// on node `domain[i]`; an index outside the node's atoms encodes an
/// assignment that is not a Boolean homomorphism.
struct Section {
  PosetPtr poset;
  std::vector<std::size_t> domain;
  std::vector<std::size_t> choice;

  std::optional<std::size_t> choice_at(std::size_t node) const;
};

Section principal_section(const PosetPtr& P, std::size_t node, std::size_t atom);
/// Looks up the node whose carrier equals f's domain.
Section principal_section(const PosetPtr& P, const TwoValuedHom& f);

enum class SectionFault { None, DomainNotDecreasing, NotAHomomorphism, RestrictionMismatch, BadNode };

struct SectionCheck {
  SectionFault fault = SectionFault::None;
  std::size_t lower = 0;  // W0
  std::size_t upper = 0;  // W

  bool ok() const noexcept { return fault == SectionFault::None; }
};

SectionCheck check_section(const Section& s);

/// 1 / 0 from any domain node containing `element`; nullopt if none does.
std::optional<bool> section_eval(const Section& s, Element element);

/// For every node of `small`, the node of `big` with carrier `map(carrier)`
/// is in `big`'s domain and the two homs agree through `map`. Lattice-backed
/// sections only.
bool restriction_matches(const Section& big, const Section& small, const std::vector<Element>* map = nullptr);

struct SolveOptions {
  /// Stop after this many global sections (1 = witness only).
  std::size_t max_solutions = 1;
  /// Split the top of the branch tree across this many threads.
  unsigned workers = 1;
};

struct GlobalResult {
  bool sat = false;
  std::vector<Section> sections;  // sorted by choice vector
  bool truncated = false;         // max_solutions reached
  /// UNSAT only: maximal nodes of a deletion-minimal conflicting family.
  std::vector<std::size_t> certificate;
};

/// Complete search for global sections: block homs agreeing on every common
/// lower node. Blocks are branched in descending-overlap order with forward
/// checking.
GlobalResult solve_global(const PosetPtr& P, const SolveOptions& options = {});

/// Same search restricted to the given maximal nodes and their shared lower
/// nodes; true iff some compatible family exists.
bool blocks_compatible(const SubalgebraPoset& P, const std::vector<std::size_t>& blocks);

/// Stable text answer: `SAT`/`UNSAT`, then `node: atom` lines per section or
/// the certificate block list.
std::string format_answer(const SubalgebraPoset& P, const GlobalResult& result, bool enumerate);

}  // namespace omlkit
