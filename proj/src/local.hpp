#pragma once

#include <compare>
#include <string>
#include <vector>

#include "field.hpp"

namespace witt {

// A place of Q or of a quadratic extension K = Q(sqrt d). Local contexts
// (Q_p, F_q, and their quadratic extensions) carry their single place
// implicitly and do not use this type.
struct Place {
  bool real = false;
  int real_sign = 0; // QuadExt embeddings: +1 maps sqrt(d0) to the positive root
  Int p = 0;
  enum class Ext { None, Split0, Split1, Inert, Ramified } ext = Ext::None;

  static Place real_place() { return Place{true, 0, 0, Ext::None}; }
  static Place real_embedding(int sign) { return Place{true, sign, 0, Ext::None}; }
  static Place finite(const Int& p, Ext e = Ext::None) { return Place{false, 0, p, e}; }

  std::string str() const;
  friend bool operator==(const Place&, const Place&) = default;
  friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
    if (auto c = (a.real ? 0 : 1) <=> (b.real ? 0 : 1); c != 0) return c;
    if (auto c = b.real_sign <=> a.real_sign; c != 0) return c; // real+ before real-
    if (auto c = cmp(a.p, b.p); c != 0) return c;
    return static_cast<int>(a.ext) <=> static_cast<int>(b.ext);
  }

 private:
  static std::strong_ordering cmp(const Int& x, const Int& y) {
    int c = mpz_cmp(x.get_mpz_t(), y.get_mpz_t());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

// Hilbert symbol (a,b)_p over Q at the prime p (odd: tame formula; p = 2:
// bounded Hensel enumeration mod 32, memoized per square-class pair).
int hilbert_qp(const Int& p, const Rat& a, const Rat& b);

// Places of the global field K (Rationals or QuadExt over Rationals) where
// any invariant built from the given elements can be nontrivial: the real
// embeddings, the places over 2, over primes of the radicand, and over primes
// of coordinate numerators/denominators and element norms. Errors
// WrongFieldKind for local contexts.
std::vector<Place> places_for(const FieldCtx& K, const std::vector<Elem>& elems);

// Sign of a nonzero element under a real place/embedding of the global K.
int real_sign_at(const FieldCtx& K, const Place& v, const Elem& a);

// Is `a` a square in the completion K_v (global K, nonzero a)?
bool is_local_square(const FieldCtx& K, const Place& v, const Elem& a);

// Hilbert symbol of nonzero a, b in the completion K_v (global K).
int hilbert_at(const FieldCtx& K, const Place& v, const Elem& a, const Elem& b);

// Hilbert symbol over a LOCAL context (Padic, Finite, or their QuadExts;
// finite fields give +1 identically).
int hilbert_local(const FieldCtx& K, const Elem& a, const Elem& b);

// Square class representatives of a local context: 4 for p-adic fields with
// odd residue characteristic, 8 for Q_2, 16 for dyadic quadratic extensions,
// 2 for finite fields. First entry is 1; order is deterministic.
std::vector<Elem> square_class_reps(const FieldCtx& K);

// Index of a's class in square_class_reps(K) order (local contexts).
int square_class_index(const FieldCtx& K, const Elem& a);

} // namespace witt
