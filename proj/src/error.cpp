#include "omlkit/error.hpp"

namespace omlkit {

ErrorCategory category(Errc code) {
  switch (code) {
    case Errc::ParseError:
    case Errc::Usage:
      return ErrorCategory::Input;
    case Errc::SizeCap:
    case Errc::CapExceeded:
      return ErrorCategory::Limit;
    default:
      return ErrorCategory::Validation;
  }
}

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::ParseError: return "ParseError";
    case Errc::Usage: return "Usage";
    case Errc::NotALattice: return "NotALattice";
    case Errc::NotOrtho: return "NotOrtho";
    case Errc::NotOrthomodular: return "NotOrthomodular";
    case Errc::Degenerate: return "Degenerate";
    case Errc::BlockSubsumed: return "BlockSubsumed";
    case Errc::SingletonBlock: return "SingletonBlock";
    case Errc::LoopViolation: return "LoopViolation";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotBoolean: return "NotBoolean";
    case Errc::NotInCarrier: return "NotInCarrier";
    case Errc::NonCommutingGenerators: return "NonCommutingGenerators";
    case Errc::ImproperInput: return "ImproperInput";
    case Errc::EmbeddingInvalid: return "EmbeddingInvalid";
    case Errc::PreconditionPossibility: return "PreconditionPossibility";
    case Errc::NotInW: return "NotInW";
    case Errc::NotPrincipal: return "NotPrincipal";
    case Errc::IncompatibleGlobalSection: return "IncompatibleGlobalSection";
    case Errc::SizeCap: return "SizeCap";
    case Errc::CapExceeded: return "CapExceeded";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message, std::vector<std::size_t> witness)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code),
      witness_(std::move(witness)) {}

}  // namespace omlkit
