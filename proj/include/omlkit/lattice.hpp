#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "omlkit/error.hpp"

namespace omlkit {

/// Element-count limits shared by every constructor that can grow a lattice.
struct Limits {
  static constexpr std::size_t kDefaultElementCap = 4096;
  // Tables are stored as 16-bit indices.
  static constexpr std::size_t kHardElementCap = 65535;

  std::size_t element_cap = kDefaultElementCap;
};

/// Unvalidated order + complement data, as read from a file or built by a
/// construction. `leq[a][b]` means a <= b.
struct OmlCandidate {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> leq;
  std::vector<Element> neg;
};

/// First violated law found by `find_violation`.
struct Violation {
  Errc code;
  std::string law;
  std::vector<Element> witness;
  std::string message;
};

/// Explicit finite orthomodular lattice on dense indices 0..n-1.
///
/// Instances only come out of `verify_oml`, so every object satisfies the
/// lattice, orthocomplement and orthomodular laws. Immutable; share through
/// `LatticePtr`.
class FiniteOML {
 public:
  std::size_t size() const noexcept { return n_; }
  Element zero() const noexcept { return zero_; }
  Element one() const noexcept { return one_; }

  bool leq(Element a, Element b) const noexcept { return leq_[index(a, b)] != 0; }
  Element meet(Element a, Element b) const noexcept { return meet_[index(a, b)]; }
  Element join(Element a, Element b) const noexcept { return join_[index(a, b)]; }
  Element neg(Element a) const noexcept { return neg_[a]; }

  const std::string& name(Element a) const { return names_[a]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Element> find(std::string_view name) const;

  /// Minimal nonzero elements, ascending index.
  std::vector<Element> atoms() const;
  /// Hasse edges (a, b) with a covered by b, lexicographic.
  std::vector<std::pair<Element, Element>> covers() const;

  /// Elements below `a` as a bitset over all indices.
  const boost::dynamic_bitset<>& down_set(Element a) const { return down_[a]; }

 private:
  friend FiniteOML verify_oml(const OmlCandidate&, const Limits&);

  std::size_t index(Element a, Element b) const noexcept {
    return static_cast<std::size_t>(a) * n_ + b;
  }

  std::size_t n_ = 0;
  Element zero_ = 0;
  Element one_ = 0;
  std::vector<std::string> names_;
  std::vector<std::uint8_t> leq_;
  std::vector<std::uint16_t> meet_;
  std::vector<std::uint16_t> join_;
  std::vector<Element> neg_;
  std::vector<boost::dynamic_bitset<>> down_;
};

using LatticePtr = std::shared_ptr<const FiniteOML>;

/// Checks every law in a fixed order (size, partial order, bounds, lattice
/// totality, orthocomplement, orthomodularity) and reports the first violation
/// in lexicographic index order within the failing law.
std::optional<Violation> find_violation(const OmlCandidate& candidate, const Limits& limits = {});

/// Validating constructor. Throws `Error` carrying the violation code and
/// witness indices.
FiniteOML verify_oml(const OmlCandidate& candidate, const Limits& limits = {});

LatticePtr make_lattice(const OmlCandidate& candidate, const Limits& limits = {});

/// OML commutation: a = (a ∧ b) ∨ (a ∧ ¬b).
bool commutes(const FiniteOML& L, Element a, Element b);

struct TripleReport {
  Element a;
  Element b;
  Element c;
  bool holds_d;
  bool holds_dstar;
  bool holds_t;
};

/// (a,b,c)D: (a ∨ b) ∧ c = (a ∧ c) ∨ (b ∧ c)
bool holds_d(const FiniteOML& L, Element a, Element b, Element c);
/// (a,b,c)D*: (a ∧ b) ∨ c = (a ∨ c) ∧ (b ∨ c)
bool holds_dstar(const FiniteOML& L, Element a, Element b, Element c);

/// D and D* for the given order, T for all six permutations.
TripleReport triple_check(const FiniteOML& L, Element a, Element b, Element c);

/// Z(L) = {z : (a,b,z)T for all a, b}, ascending index. Candidates are first
/// screened by commutation with every element, then confirmed with the full
/// T relation.
std::vector<Element> center(const FiniteOML& L);

/// Cartesian product with componentwise operations. Element (x, y) lives at
/// index x * |L2| + y.
LatticePtr product(const FiniteOML& L1, const FiniteOML& L2, const Limits& limits = {});

/// k-fold power L^k; element names are tuples.
LatticePtr power(const FiniteOML& L, std::size_t k, const Limits& limits = {});

/// The two-element Boolean algebra {0, 1}.
LatticePtr two_element_lattice();

OmlCandidate to_candidate(const FiniteOML& L);

}  // namespace omlkit
