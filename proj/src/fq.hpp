#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "numbers.hpp"

namespace witt {

// Element of F_{p^e}: coefficient vector of length e, entries in [0,p),
// c[0] + c[1] x + ... modulo the context's irreducible polynomial.
struct FqElem {
  std::vector<Int> c;
  bool operator==(const FqElem&) const = default;
};

// F_q, q = p^e, p an odd prime. The modulus is the lexicographically first
// monic irreducible of degree e over F_p (deterministic across runs).
struct FqCtx {
  Int p;
  int e;
  Int q;                  // p^e
  std::vector<Int> mod;   // monic modulus, length e+1, mod[e] = 1

  static std::shared_ptr<const FqCtx> make(const Int& p, int e);

  FqElem zero() const;
  FqElem one() const;
  FqElem from_int(const Int& n) const;       // image of n in the prime field
  FqElem from_coeffs(std::vector<Int> c) const;

  bool is_zero(const FqElem& a) const;
  FqElem add(const FqElem& a, const FqElem& b) const;
  FqElem sub(const FqElem& a, const FqElem& b) const;
  FqElem neg(const FqElem& a) const;
  FqElem mul(const FqElem& a, const FqElem& b) const;
  FqElem inv(const FqElem& a) const;         // errors NonInvertible on zero
  FqElem pow(const FqElem& a, Int n) const;  // n >= 0, or any n with a != 0

  bool is_square(const FqElem& a) const;     // Euler criterion; true for zero
  std::optional<FqElem> sqrt(const FqElem& a) const; // Tonelli-Shanks

  // Bijection F_q <-> [0, q): n = sum c[i] p^i.
  Int encode(const FqElem& a) const;
  FqElem decode(Int n) const;
  std::string to_string(const FqElem& a) const;

  // Smallest non-square by the encode order (generator of F_q*/F_q*^2).
  FqElem nonsquare() const;
};

using FqPtr = std::shared_ptr<const FqCtx>;

} // namespace witt
