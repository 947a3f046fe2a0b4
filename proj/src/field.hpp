#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "extshape.hpp"
#include "fq.hpp"
#include "numbers.hpp"

namespace witt {

enum class FieldKind { Rationals, Padic, Finite, QuadExt };

struct FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

// Coefficient in a base field: exact rational (Rationals/Padic) or F_q element.
using Scalar = std::variant<Rat, FqElem>;

// Field element. Base fields use `a` only (b holds the zero scalar).
// QuadExt uses a + b*sqrt(d) with a, b scalars of the base field.
struct Elem {
  Scalar a, b;
  bool operator==(const Elem&) const = default;
};

// Immutable field context. Q, Q_p (exact rational representatives, p-adic
// decisions), F_q (odd q), and quadratic extensions of those (depth <= 1).
struct FieldCtx : std::enable_shared_from_this<FieldCtx> {
  FieldKind kind;
  Int p;        // Padic
  FqPtr fq;     // Finite
  FieldPtr base; // QuadExt
  Elem d;       // QuadExt: radicand as a base element

  // QuadExt over Rationals: d = d0 * scale^2 with d0 squarefree.
  Int d0;
  Rat scale;
  // QuadExt over Padic: completion shape (rejects squares at creation).
  ExtPlaceShape shape;

  static FieldPtr rationals();
  static FieldPtr padic(const Int& p);
  static FieldPtr finite(const Int& p, int e);
  static FieldPtr quadext(const FieldPtr& base, const Elem& d);

  bool is_ext() const { return kind == FieldKind::QuadExt; }
  FieldKind base_kind() const { return is_ext() ? base->kind : kind; }
  const FieldCtx& base_ctx() const { return is_ext() ? *base : *this; }

  // Structural identity (same kind and parameters).
  std::string key() const;

  Elem zero() const;
  Elem one() const;
  Elem from_int(const Int& n) const;
  Elem from_rat(const Rat& x) const;           // errors NonInvertible over F_q when p | den
  Elem make(const Scalar& a, const Scalar& b) const;
  // Rationals/Padic: "n/d"; Finite: encoded integer; QuadExt: "x,y" of base parts.
  Elem parse(const std::string& s) const;
  std::string to_string(const Elem& x) const;

  bool is_zero(const Elem& x) const;
  bool eq(const Elem& x, const Elem& y) const;
  Elem add(const Elem& x, const Elem& y) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem neg(const Elem& x) const;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem inv(const Elem& x) const;               // errors NonInvertible
  Elem div(const Elem& x, const Elem& y) const;
  Elem pow(const Elem& x, long n) const;

  // Galois conjugation / norm / trace of a QuadExt (WrongFieldKind otherwise).
  Elem conj(const Elem& x) const;
  Elem norm_to_base(const Elem& x) const;      // base element embedded in this field
  Elem trace_to_base(const Elem& x) const;

  // Exact square decision in this field.
  bool is_square(const Elem& x) const;
  // Exact representable square root. nullopt means "no representative found",
  // which over Padic contexts does not imply nonsquare (use is_square).
  std::optional<Elem> try_sqrt(const Elem& x) const;

  // Scalar accessors (base parts).
  const Rat& rat(const Scalar& s) const;
  const FqElem& fqe(const Scalar& s) const;
};

bool same_field(const FieldCtx& a, const FieldCtx& b);

} // namespace witt
