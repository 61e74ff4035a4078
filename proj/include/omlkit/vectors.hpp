#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "omlkit/greechie.hpp"

namespace omlkit {

/// Nonzero rational ray in canonical form: integer coordinates with content
/// 1 and first nonzero coordinate positive. Two inputs are scalar multiples
/// iff their canonical forms are equal.
class RationalVector {
 public:
  /// Throws ZeroVector for the zero vector.
  static RationalVector canonical(const std::vector<mpq_class>& coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  const std::vector<mpz_class>& coords() const noexcept { return coords_; }
  std::string to_string() const;

  bool operator==(const RationalVector& other) const { return coords_ == other.coords_; }

 private:
  std::vector<mpz_class> coords_;
};

mpz_class dot(const RationalVector& a, const RationalVector& b);

/// Atoms plus measurement contexts. Vertex ids are dense and in first-
/// appearance order; each context is sorted ascending, contexts sorted
/// lexicographically.
struct ContextHypergraph {
  std::vector<std::string> names;
  std::vector<RationalVector> vectors;  // empty for diagram-derived hypergraphs
  std::vector<std::vector<std::size_t>> contexts;
  std::vector<std::vector<bool>> orthogonal;
  std::size_t dim = 0;
  std::size_t submaximal_cliques = 0;
  std::vector<std::string> warnings;

  std::size_t vertex_count() const noexcept { return names.size(); }
};

/// Reads the .ksv format (`dim=N` header, one vector of N rationals per
/// line). When `expected_dim` is given it must match the header. Vectors are
/// deduplicated up to scalar multiples; contexts are the orthogonality cliques
/// with exactly `dim` members.
ContextHypergraph parse_vectors(std::string_view text, std::optional<std::size_t> expected_dim = {});

/// Vertices = diagram atoms, contexts = blocks, orthogonality = co-membership.
ContextHypergraph hypergraph_from_diagram(const GreechieDiagram& d);

}  // namespace omlkit
