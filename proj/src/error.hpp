#pragma once

#include <stdexcept>
#include <string>

namespace witt {

enum class Err {
  BadArg,            // malformed input (parse errors, wrong sizes)
  WrongFieldKind,    // operation not defined over this field kind
  NonInvertible,     // division by zero / reduction mod p of a p-divisible denominator
  NotSymmetric,      // Gram matrix violates the (skew-)hermitian convention
  SingularForm,      // degenerate form where a nondegenerate one is required
  NotSplit,          // explicit splitting requested for a division algebra
  NotDivision,       // construction requires a division algebra
  UndecidableOverGlobalSkew, // refused: no complete effective invariant set
  NotInI3,           // Arason invariant requested outside I^3
  NotFound,          // bounded search exhausted its budget (not a nonexistence proof)
  BadConfig,         // invalid audit-suite configuration
  Unsupported,       // honest boundary: not implemented for this input class
  Internal,          // invariant breach inside the library
};

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Err c, const std::string& msg) { throw Error(c, msg); }

inline const char* err_name(Err c) {
  switch (c) {
    case Err::BadArg: return "BadArg";
    case Err::WrongFieldKind: return "WrongFieldKind";
    case Err::NonInvertible: return "NonInvertible";
    case Err::NotSymmetric: return "NotSymmetric";
    case Err::SingularForm: return "SingularForm";
    case Err::NotSplit: return "NotSplit";
    case Err::NotDivision: return "NotDivision";
    case Err::UndecidableOverGlobalSkew: return "UndecidableOverGlobalSkew";
    case Err::NotInI3: return "NotInI3";
    case Err::NotFound: return "NotFound";
    case Err::BadConfig: return "BadConfig";
    case Err::Unsupported: return "Unsupported";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

} // namespace witt
