#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace jetvar {

enum class Errc {
  JetOrderExceeded,
  EvenDerivation,
  RosterMismatch,
  UnpairedAntifield,
  NotNilpotent,
  NotASymmetry,
  UnknownModel,
  SyntaxError,
  UnknownIdentifier,
  IndexArityMismatch,
  GradingInconsistency,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::JetOrderExceeded: return "JetOrderExceeded";
    case Errc::EvenDerivation: return "EvenDerivation";
    case Errc::RosterMismatch: return "RosterMismatch";
    case Errc::UnpairedAntifield: return "UnpairedAntifield";
    case Errc::NotNilpotent: return "NotNilpotent";
    case Errc::NotASymmetry: return "NotASymmetry";
    case Errc::UnknownModel: return "UnknownModel";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownIdentifier: return "UnknownIdentifier";
    case Errc::IndexArityMismatch: return "IndexArityMismatch";
    case Errc::GradingInconsistency: return "GradingInconsistency";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Error(Errc code, std::string message, std::size_t byte_offset)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code),
        offset_(byte_offset) {}

  Errc code() const { return code_; }
  std::optional<std::size_t> byte_offset() const { return offset_; }

 private:
  Errc code_;
  std::optional<std::size_t> offset_;
};

}  // namespace jetvar
