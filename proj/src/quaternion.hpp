#pragma once

#include <optional>
#include <utility>

#include "quadform.hpp"

namespace witt {

// Quaternion algebra (a, b | K): i^2 = a, j^2 = b, ij = -ji = k.
struct Quat {
  Elem x0, x1, x2, x3;
  bool operator==(const Quat&) const = default;
};

struct QuatAlg {
  FieldPtr K;
  Elem a, b;

  Quat zero() const;
  Quat one() const;
  Quat i() const;
  Quat j() const;
  Quat k() const;
  Quat make(const Elem& e0, const Elem& e1, const Elem& e2, const Elem& e3) const;
  Quat from_elem(const Elem& e) const;

  bool is_zero(const Quat& q) const;
  bool eq(const Quat& q, const Quat& r) const;
  Quat add(const Quat& q, const Quat& r) const;
  Quat sub(const Quat& q, const Quat& r) const;
  Quat neg(const Quat& q) const;
  Quat scal(const Elem& c, const Quat& q) const;
  Quat mul(const Quat& q, const Quat& r) const;
  Quat conj(const Quat& q) const; // canonical (symplectic) involution
  Elem trd(const Quat& q) const;
  Elem nrd(const Quat& q) const;
  Quat inv(const Quat& q) const; // errors NonInvertible when nrd = 0
  Quat pure_part(const Quat& q) const;
  bool is_pure(const Quat& q) const;
  std::string to_string(const Quat& q) const;
};

QuatAlg quat_algebra(const FieldPtr& K, const Elem& a, const Elem& b); // a, b nonzero

QForm norm_form(const QuatAlg& A);      // <1, -a, -b, ab>
QForm pure_norm_form(const QuatAlg& A); // <-a, -b, ab>

// Local invariant (a,b) at a place of a global K / of a local ctx.
int quat_invariant_at(const QuatAlg& A, const Place& v);
int quat_invariant_local(const QuatAlg& A);

bool is_split(const QuatAlg& A);
bool is_division(const QuatAlg& A);

// Is lambda a reduced norm from A*? (lambda != 0; over a field where the norm
// form's isotropy is decidable.)
bool is_reduced_norm(const QuatAlg& A, const Elem& lambda);
// Exact witness over Q: x with nrd(x) = lambda.
std::optional<Quat> reduced_norm_witness(const QuatAlg& A, const Elem& lambda);

// 2x2 matrices over K, used for explicit splittings and Morita transport.
struct Mat2 {
  Elem e[2][2];
};
Mat2 mat2_zero(const FieldCtx& K);
Mat2 mat2_id(const FieldCtx& K);
Mat2 mat2_add(const FieldCtx& K, const Mat2& x, const Mat2& y);
Mat2 mat2_sub(const FieldCtx& K, const Mat2& x, const Mat2& y);
Mat2 mat2_mul(const FieldCtx& K, const Mat2& x, const Mat2& y);
Mat2 mat2_scal(const FieldCtx& K, const Elem& c, const Mat2& x);
Elem mat2_det(const FieldCtx& K, const Mat2& x);
Elem mat2_tr(const FieldCtx& K, const Mat2& x);
Mat2 mat2_inv(const FieldCtx& K, const Mat2& x); // NonInvertible on det 0
Mat2 mat2_transpose(const FieldCtx& K, const Mat2& x);
// adjugate: x * adj(x) = det(x) I; the unique symplectic involution of M_2.
Mat2 mat2_adjugate(const FieldCtx& K, const Mat2& x);
bool mat2_eq(const FieldCtx& K, const Mat2& x, const Mat2& y);

// Verified unital isomorphism A -> M_2(K) for split A, built from a zero
// divisor (a rational conic point over Q, a scan over finite fields).
// nullopt: A is division. Unsupported: split but no exact point machinery
// (p-adic contexts decide splitness by invariants only).
struct SplitRep {
  Mat2 one, i, j, k;
  Mat2 of(const QuatAlg& A, const Quat& q) const;
};
std::optional<SplitRep> split_rep(const QuatAlg& A);
// Same construction from a caller-provided zero divisor (nrd(e) = 0, e != 0),
// for splittings that come from an embedded quadratic subfield.
SplitRep split_rep_from(const QuatAlg& A, const Quat& e);

// Exact coordinates in a K-basis; Internal when the claimed basis is singular.
std::vector<Elem> quat_coords(const QuatAlg& A, const std::array<Quat, 4>& basis, const Quat& x);
std::vector<Elem> mat2_coords(const FieldCtx& K, const std::array<Mat2, 4>& basis, const Mat2& m);

// Classes of products of quaternion symbols in the 2-torsion of the Brauer
// group of a global K, compared through local invariants.
using SymbolList = std::vector<std::pair<Elem, Elem>>;
int brauer_invariant_at(const FieldCtx& K, const SymbolList& s, const Place& v);
std::vector<Place> brauer_ram_places(const FieldCtx& K, const SymbolList& s);
bool brauer_trivial(const FieldCtx& K, const SymbolList& s);
bool brauer_equal(const FieldCtx& K, const SymbolList& s1, const SymbolList& s2);

} // namespace witt
