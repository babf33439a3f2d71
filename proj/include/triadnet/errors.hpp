#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace triadnet {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "error"; }
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }
  const char* kind() const noexcept override { return "parse"; }

 private:
  std::size_t line_;
};

#define TRIADNET_ERROR_KIND(Name, tag)                              \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(what) {}         \
    const char* kind() const noexcept override { return tag; }      \
  };

TRIADNET_ERROR_KIND(UndefinedInputError, "undefined-input")
TRIADNET_ERROR_KIND(ConvergenceError, "convergence")
TRIADNET_ERROR_KIND(AdmissibilityError, "admissibility")
TRIADNET_ERROR_KIND(ConstructionError, "construction")
TRIADNET_ERROR_KIND(UndefinedProfileError, "undefined-profile")
TRIADNET_ERROR_KIND(UndefinedMeasureError, "undefined-measure")
TRIADNET_ERROR_KIND(InfeasibleTargetError, "infeasible-target")
TRIADNET_ERROR_KIND(InstabilityError, "instability")
TRIADNET_ERROR_KIND(IngestionError, "ingestion")

#undef TRIADNET_ERROR_KIND

// Raised by spectral_gap when some node cannot be normalized.
class NormalizationError : public Error {
 public:
  NormalizationError(const std::string& what, std::vector<std::size_t> nodes)
      : Error(what), nodes_(std::move(nodes)) {}
  const std::vector<std::size_t>& nodes() const noexcept { return nodes_; }
  const char* kind() const noexcept override { return "normalization"; }

 private:
  std::vector<std::size_t> nodes_;
};

}  // namespace triadnet
