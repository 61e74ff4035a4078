#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "omlkit/boolean.hpp"
#include "omlkit/sheaf.hpp"

namespace omlkit {

/// An OML with □ and ◇ = ¬□¬ tabulated over its elements.
class ModalStructure {
 public:
  /// □a = ⋁{z ∈ Z : z ≤ a}.
  static ModalStructure saturate(LatticePtr L);
  /// Arbitrary □ table, for checking candidate operators.
  static ModalStructure with_box(LatticePtr L, std::vector<Element> box);

  const FiniteOML& lattice() const noexcept { return *lattice_; }
  const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
  Element box(Element a) const { return box_.at(a); }
  Element diamond(Element a) const { return diamond_.at(a); }
  const std::vector<Element>& box_table() const noexcept { return box_; }
  const std::vector<Element>& diamond_table() const noexcept { return diamond_; }
  /// Z(L), ascending.
  const std::vector<Element>& center() const noexcept { return center_; }
  bool is_central(Element a) const;

 private:
  LatticePtr lattice_;
  std::vector<Element> box_;
  std::vector<Element> diamond_;
  std::vector<Element> center_;
};

struct AxiomResult {
  std::string name;  // "S1" .. "S8"
  std::string law;
  bool holds = true;
  /// First failing assignment: {x} or {x, y}.
  std::vector<Element> witness;
};

struct AxiomReport {
  std::vector<AxiomResult> axioms;
  bool all_hold() const;
};

/// S1 through S8, exhaustively; pairs scan x outer, y inner.
AxiomReport check_modal_axioms(const ModalStructure& M);

struct ExtensionSpec {
  enum class Kind { identity, diagonal, product_with };
  Kind kind = Kind::identity;
  unsigned k = 2;     // diagonal
  LatticePtr factor;  // product_with: a Boolean B
  /// product_with: images in L × B (index x * |B| + y), one per base element.
  std::vector<Element> embed;

  /// "identity" or "diagonal:k".
  static ExtensionSpec parse(const std::string& text);
  std::string to_string() const;
};

/// L together with a Boolean-saturated L^□ and a monomorphism L → L^□.
class ModalExtension {
 public:
  ModalExtension(LatticePtr base, ModalStructure extension, std::vector<Element> embed);

  const FiniteOML& base() const noexcept { return *base_; }
  const LatticePtr& base_ptr() const noexcept { return base_; }
  const ModalStructure& extension() const noexcept { return ext_; }
  const LatticePtr& target_ptr() const noexcept { return ext_.lattice_ptr(); }
  Element embed(Element a) const { return embed_.at(a); }
  const std::vector<Element>& embedding() const noexcept { return embed_; }
  /// Image of a base subalgebra.
  BooleanSubalgebra embed(const BooleanSubalgebra& W) const;

 private:
  LatticePtr base_;
  ModalStructure ext_;
  std::vector<Element> embed_;
};

using ExtensionPtr = std::shared_ptr<const ModalExtension>;

/// Throws EmbeddingInvalid naming the first operation not preserved.
void check_embedding(const FiniteOML& base, const FiniteOML& target, const std::vector<Element>& embed);

/// Throws SizeCap, EmbeddingInvalid, or NotBoolean (non-Boolean factor).
ExtensionPtr modal_extend(const LatticePtr& L, const ExtensionSpec& spec, const Limits& limits = {});

/// ◇L: the subalgebra of L^□ generated by every ◇embed(p).
struct PossibilitySpace {
  ExtensionPtr host;
  BooleanSubalgebra carrier;
  /// (◇L] inside L^□.
  PosetPtr poset;
};

PossibilitySpace possibility_space(const ExtensionPtr& E);

/// ν ∈ Sec(◇L): a hom ◇L → 2 and its principal section over (◇L].
struct PossibilitySection {
  TwoValuedHom hom;
  Section section;
};

PossibilitySection make_possibility_section(const PossibilitySpace& P, TwoValuedHom hom);
/// One per atom of ◇L.
std::vector<PossibilitySection> sec_diamond(const PossibilitySpace& P);

struct Actualization {
  BooleanSubalgebra context;  // ⟨embed W ∪ ◇L⟩
  std::optional<Filter> generated;  // F_q (actualize only)
  std::optional<Filter> maximal;    // F_M (actualize only)
  TwoValuedHom hom;
  Section section;  // principal, over (context]
};

/// Hom on ⟨embed W ∪ ◇L⟩ making q true and agreeing with ν on ◇L. Throws
/// NotInW, PreconditionPossibility (ν(◇q) ≠ 1).
Actualization actualize(const PossibilitySpace& P, const BooleanSubalgebra& W, Element q,
                        const PossibilitySection& nu);

/// Extends a principal section over (W] of the base to (⟨embed W ∪ ◇L⟩].
/// Throws NotPrincipal.
Actualization born_extend(const PossibilitySpace& P, const Section& s);

/// ν on ◇L agreeing with τ on embed(W) ∩ ◇L for every node W. Throws
/// IncompatibleGlobalSection when τ is not a consistent global section.
PossibilitySection global_actualization_check(const PossibilitySpace& P, const Section& tau);

}  // namespace omlkit
