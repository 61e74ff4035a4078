#pragma once

#include <string>
#include <string_view>

#include "omlkit/lattice.hpp"

namespace omlkit {

/// Lattice interchange format, version 1 (see docs/formats.md).
///
///     format oml-lattice 1
///     elements 0 a a' b b' 1
///     cover 0 a           # a covers 0 (either Hasse edges ...)
///     order               # ... or a full n x n 0/1 matrix block
///     neg a a'            # ¬a = a'  (one line per element)
///
/// Returns the unvalidated candidate; pass it to `verify_oml`.
OmlCandidate parse_interchange(std::string_view text);

/// Writes the Hasse-edge form. `parse_interchange(write_interchange(L))`
/// reproduces the same order and complement.
std::string write_interchange(const FiniteOML& L);

}  // namespace omlkit
