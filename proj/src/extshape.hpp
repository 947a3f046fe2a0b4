#pragma once

#include <utility>
#include <vector>

#include "numbers.hpp"

namespace witt {

// Shape of the completion of a quadratic extension Q(sqrt(dd)) at p (or of
// Q_p(sqrt(dd)) itself). Non-split completions are presented on an integral
// basis {1, g} of the valuation ring, g^2 = A + B*g, with the exact coordinate
// change sqrt(dd) = r*g + s. Uniformizer pi is stored in g-coordinates.
enum class ExtShape { Split, Inert, Ramified };

struct ExtPlaceShape {
  Int p;
  ExtShape shape = ExtShape::Split;
  int e = 1;                 // ramification index: v_w(p)
  int f = 1;                 // residue degree
  Rat A, B;                  // g^2 = A + B g
  Rat r, s;                  // sqrt(dd) = r g + s
  Rat pix, piy;              // uniformizer in g-basis
  Rat dd;                    // the radicand this shape was built from
};

// Analyzes Q_p(sqrt(dd)). dd nonzero; Split is reported when dd is a square
// in Q_p (callers building field contexts must reject that case themselves).
ExtPlaceShape ext_place_shape(const Int& p, const Rat& dd);

using ExtPair = std::pair<Rat, Rat>; // x + y*g in the shape's basis

ExtPair ext_from_sqrt_basis(const ExtPlaceShape& sh, const Rat& x, const Rat& y);
ExtPair ext_to_sqrt_basis(const ExtPlaceShape& sh, const ExtPair& z);

ExtPair ext_mul(const ExtPlaceShape& sh, const ExtPair& a, const ExtPair& b);
ExtPair ext_inv(const ExtPlaceShape& sh, const ExtPair& a);
Rat ext_norm(const ExtPlaceShape& sh, const ExtPair& a); // N(x+yg) = x^2 + Bxy - Ay^2

// Valuation normalized so v_w(pi) = 1 (so v_w(p) = e). a != 0.
long ext_val(const ExtPlaceShape& sh, const ExtPair& a);
// Exact a / pi^k.
ExtPair ext_div_pi(const ExtPlaceShape& sh, ExtPair a, long k);

// Square test for arbitrary nonzero a (valuation parity + unit test).
bool ext_is_square(const ExtPlaceShape& sh, const ExtPair& a);

// Hilbert symbol (a,b)_w at this completion; a,b nonzero. Odd p: tame formula.
// p = 2: bounded Hensel enumeration in the residue ring O/2^6.
int ext_hilbert(const ExtPlaceShape& sh, const ExtPair& a, const ExtPair& b);

// Representatives of K_w^* / (K_w^*)^2 in g-basis (4 for odd p, 16 for p=2),
// deterministic order, first entry 1.
std::vector<ExtPair> ext_square_class_reps(const ExtPlaceShape& sh);

// Index of a's class in ext_square_class_reps order.
int ext_square_class_index(const ExtPlaceShape& sh, const ExtPair& a);

} // namespace witt
