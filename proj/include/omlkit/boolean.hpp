#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "omlkit/lattice.hpp"

namespace omlkit {

/// Boolean subalgebra of a finite OML, identified by its sorted carrier.
class BooleanSubalgebra {
 public:
  /// Validates: contains 0 and 1, closed under ∧ ∨ ¬, pairwise commuting and
  /// |carrier| = 2^|atoms|. Throws NotBoolean with a witness otherwise.
  static BooleanSubalgebra from_carrier(LatticePtr host, std::vector<Element> carrier);

  const FiniteOML& host() const noexcept { return *host_; }
  const LatticePtr& host_ptr() const noexcept { return host_; }
  const std::vector<Element>& carrier() const noexcept { return carrier_; }
  /// Minimal nonzero carrier elements, ascending index.
  const std::vector<Element>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return carrier_.size(); }
  bool contains(Element e) const;
  bool contains_all(std::span<const Element> elems) const;

  /// `<a,b,...>` listing the atoms' names.
  std::string label() const;

  bool operator==(const BooleanSubalgebra& other) const {
    return host_ == other.host_ && carrier_ == other.carrier_;
  }

 private:
  LatticePtr host_;
  std::vector<Element> carrier_;
  std::vector<Element> atoms_;
};

/// Filter of a Boolean host: upward closed within the carrier and closed
/// under ∧.
class Filter {
 public:
  Filter(BooleanSubalgebra host, std::vector<Element> members);

  const BooleanSubalgebra& host() const noexcept { return host_; }
  const std::vector<Element>& members() const noexcept { return members_; }
  bool contains(Element e) const;
  bool proper() const { return !contains(host_.host().zero()); }
  /// Meet of all members (the generator of this principal filter).
  Element generator() const;

 private:
  BooleanSubalgebra host_;
  std::vector<Element> members_;
};

/// Homomorphism onto 2, stored as the one atom it sends to 1.
class TwoValuedHom {
 public:
  TwoValuedHom(BooleanSubalgebra domain, std::size_t atom_index);

  const BooleanSubalgebra& domain() const noexcept { return domain_; }
  std::size_t atom_index() const noexcept { return atom_index_; }
  Element atom() const { return domain_.atoms()[atom_index_]; }
  /// f(x) for a carrier element x.
  bool value(Element x) const;
  /// {x : f(x) = 1}
  Filter ultrafilter() const;
  /// (element, value) for every carrier element, ascending index.
  std::vector<std::pair<Element, bool>> assignment() const;

  bool operator==(const TwoValuedHom& other) const {
    return domain_ == other.domain_ && atom_index_ == other.atom_index_;
  }

 private:
  BooleanSubalgebra domain_;
  std::size_t atom_index_;
};

/// True iff the map preserves 0, 1, ∧, ∨, ¬ on the carrier. `values` is
/// indexed parallel to `B.carrier()`.
bool is_homomorphism(const BooleanSubalgebra& B, const std::vector<bool>& values);

/// Maximal Boolean subalgebras (maximal pairwise-commuting sets), sorted by
/// carrier.
std::vector<BooleanSubalgebra> enumerate_blocks(const LatticePtr& L);

/// Every Boolean subalgebra of `L`, sorted by (size, carrier). Throws
/// CapExceeded once more than `cap` distinct subalgebras are found.
std::vector<BooleanSubalgebra> enumerate_subalgebras(const LatticePtr& L, std::size_t cap);

/// Every subalgebra of `B` (one per partition of its atoms), sorted by
/// (size, carrier).
std::vector<BooleanSubalgebra> subalgebras_of(const BooleanSubalgebra& B, std::size_t cap);

/// One hom per atom, in atom order.
std::vector<TwoValuedHom> homs_to_2(const BooleanSubalgebra& B);

/// Least filter of `host` containing X. Improper results are returned, not
/// rejected. Throws NotInCarrier if X leaves the carrier.
Filter filter_generate(const BooleanSubalgebra& host, std::span<const Element> X);

struct MaximalFilter {
  Filter filter;
  TwoValuedHom quotient;  // host -> host / filter ≅ 2
};

/// Scans the carrier in index order, adding x when the generated filter stays
/// proper and ¬x otherwise. Throws ImproperInput for an improper filter.
MaximalFilter extend_to_maximal(const Filter& F);

/// Extension of f to `target ⊇ f.domain()` through its ultrafilter.
TwoValuedHom extend_hom(const TwoValuedHom& f, const BooleanSubalgebra& target);

/// Least subalgebra containing S. Throws NonCommutingGenerators on the first
/// non-commuting pair.
BooleanSubalgebra generated_subalgebra(const LatticePtr& host, std::span<const Element> S);

}  // namespace omlkit
