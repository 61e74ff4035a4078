#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omlkit/lattice.hpp"

namespace omlkit {

/// Atoms and blocks of a Greechie diagram. Atom ids are interned in
/// first-appearance order; each block lists atom ids in file order.
struct GreechieDiagram {
  std::vector<std::string> atoms;
  std::vector<std::vector<std::size_t>> blocks;

  bool operator==(const GreechieDiagram&) const = default;
};

/// Reads the .gd format: one block per nonempty line, whitespace-separated
/// atom names, `#` comments. Rejects empty input, repeated atoms within a
/// line, single-atom blocks and blocks contained in another block.
GreechieDiagram parse_greechie(std::string_view text);

/// Inverse writer for `parse_greechie`.
std::string render_greechie(const GreechieDiagram& d);

/// Blocks forming a loop of order 2, 3 or 4 (two blocks sharing two atoms,
/// or a 3-/4-cycle of blocks with pairwise distinct intersection atoms).
/// The first loop found, smallest order first, lexicographic block indices.
std::optional<std::vector<std::size_t>> find_short_loop(const GreechieDiagram& d);

/// Greechie pasting of the blocks' Boolean algebras along shared atoms.
///
/// Element ordering: 0, then by atom count of the smallest representing
/// subset (atoms first, in first-appearance order), 1 last. Names: atoms keep
/// their names, complements of atoms are `~a`, other joins `a|b|...`.
/// Throws LoopViolation, BlockSubsumed (a two-atom block sharing an atom),
/// SizeCap.
LatticePtr paste(const GreechieDiagram& d, const Limits& limits = {});

/// Number of elements `paste` produces for a legal diagram:
/// Σ 2^k over blocks, minus the shared 0/1 and the shared atom/complement
/// pairs.
std::size_t pasted_size(const GreechieDiagram& d);

/// Boolean algebra 2^n (n >= 1) with atoms a1..an.
LatticePtr boolean_algebra(std::size_t n);
/// MO_n: n pairs of complementary atoms a1/b1, ..., an/bn (n >= 1).
LatticePtr mo_lattice(std::size_t n);

}  // namespace omlkit
