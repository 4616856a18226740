#pragma once

/// @file error.hpp
/// @brief Exception hierarchy shared by every module.
///
/// Each error carries the module it originated in and a stable error name.
/// The CLI surfaces both in reports, so names must not change casually.

#include <stdexcept>
#include <string>
#include <utility>

namespace nam {

class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string name, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)), name_(std::move(name)) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::string module_;
  std::string name_;
};

#define NAM_DEFINE_ERROR(Type, Module)                               \
  class Type : public Error {                                        \
   public:                                                           \
    explicit Type(const std::string& what) : Error(Module, #Type, what) {} \
  };

NAM_DEFINE_ERROR(InvalidArgument, "padic_core")
NAM_DEFINE_ERROR(DivisionByZero, "padic_core")
NAM_DEFINE_ERROR(PrimeMismatch, "padic_core")
NAM_DEFINE_ERROR(ParseError, "padic_core")
NAM_DEFINE_ERROR(ResolutionError, "measures")
NAM_DEFINE_ERROR(AdmissibilityError, "measures")
NAM_DEFINE_ERROR(ModeMismatch, "measures")
NAM_DEFINE_ERROR(DuplicateCell, "measures")
NAM_DEFINE_ERROR(EmptyWindow, "measures")
NAM_DEFINE_ERROR(SymmetryRequired, "measures")
NAM_DEFINE_ERROR(InconsistentFamily, "weak_dist")
NAM_DEFINE_ERROR(AbsoluteContinuityViolation, "kakutani")
NAM_DEFINE_ERROR(InvalidProductPair, "kakutani")
NAM_DEFINE_ERROR(SingularMatrix, "linalg")
NAM_DEFINE_ERROR(DimensionMismatch, "linalg")
NAM_DEFINE_ERROR(SchemaError, "cli")
NAM_DEFINE_ERROR(CapExceeded, "cli")

#undef NAM_DEFINE_ERROR

}  // namespace nam
