#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace omlkit {

using Element = std::uint32_t;

enum class Errc {
  // input / usage
  ParseError,
  Usage,
  // validation
  NotALattice,
  NotOrtho,
  NotOrthomodular,
  Degenerate,
  BlockSubsumed,
  SingletonBlock,
  LoopViolation,
  ZeroVector,
  DimensionMismatch,
  NotBoolean,
  NotInCarrier,
  NonCommutingGenerators,
  ImproperInput,
  EmbeddingInvalid,
  PreconditionPossibility,
  NotInW,
  NotPrincipal,
  IncompatibleGlobalSection,
  // resource limits
  SizeCap,
  CapExceeded,
};

enum class ErrorCategory { Input, Validation, Limit };

ErrorCategory category(Errc code);
std::string_view errc_name(Errc code);

/// Library-wide exception. `witness` carries the offending indices (elements,
/// blocks or nodes depending on the error) in the order the check found them.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::vector<std::size_t> witness = {});

  Errc code() const noexcept { return code_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  Errc code_;
  std::vector<std::size_t> witness_;
};

}  // namespace omlkit
