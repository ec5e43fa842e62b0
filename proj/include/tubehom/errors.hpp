#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tubehom {

enum class ErrorKind {
  InvalidArgument,
  InadmissibleLaw,
  UncoveredRegime,
  MissingQ,
  PoleProximity,
  ResolutionTooCoarse,
  GeometryError,
  ConvergenceFailure,
  InsufficientBase,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Base of every error raised by the library. The kind decides the CLI exit
/// status: numerical failures map to 3, everything else to 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  bool is_numerical() const noexcept {
    return kind_ == ErrorKind::PoleProximity || kind_ == ErrorKind::ConvergenceFailure;
  }

 private:
  ErrorKind kind_;
};

#define TUBEHOM_DEFINE_ERROR(Name)                                                  \
  class Name : public Error {                                                       \
   public:                                                                          \
    explicit Name(const std::string& message) : Error(ErrorKind::Name, message) {} \
  };

TUBEHOM_DEFINE_ERROR(InvalidArgument)
TUBEHOM_DEFINE_ERROR(InadmissibleLaw)
TUBEHOM_DEFINE_ERROR(UncoveredRegime)
TUBEHOM_DEFINE_ERROR(MissingQ)
TUBEHOM_DEFINE_ERROR(PoleProximity)
TUBEHOM_DEFINE_ERROR(ResolutionTooCoarse)
TUBEHOM_DEFINE_ERROR(GeometryError)
TUBEHOM_DEFINE_ERROR(ConvergenceFailure)
TUBEHOM_DEFINE_ERROR(InsufficientBase)
TUBEHOM_DEFINE_ERROR(IoError)

#undef TUBEHOM_DEFINE_ERROR

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InadmissibleLaw: return "InadmissibleLaw";
    case ErrorKind::UncoveredRegime: return "UncoveredRegime";
    case ErrorKind::MissingQ: return "MissingQ";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorKind::GeometryError: return "GeometryError";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::InsufficientBase: return "InsufficientBase";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace tubehom
