#pragma once

#include "quaternion.hpp"

namespace witt {

// Involutions:
//   QuatCanonical   gamma on a quaternion D / E (symplectic type)
//   QuatOrthogonal  sigma = Int(u) . gamma for an invertible pure u
//   QuatUnitary     tau = gamma (x) iota on D / L, L = E(sqrt d); tau|L = iota
//   FieldUnitary    iota on L = E(sqrt d) itself
enum class InvKind { QuatCanonical, QuatOrthogonal, QuatUnitary, FieldUnitary };

struct InvolutionCtx {
  InvKind kind;
  std::optional<QuatAlg> D; // quaternion kinds
  Quat u;                   // QuatOrthogonal only
  FieldPtr L;               // unitary kinds: the quadratic extension
  FieldPtr E;               // field where trace forms and discs live

  Quat apply(const Quat& x) const;      // quaternion kinds
  Elem apply_field(const Elem& x) const; // FieldUnitary
  std::string key() const;
};

InvolutionCtx inv_canonical(const QuatAlg& D);
InvolutionCtx inv_orthogonal(const QuatAlg& D, const Quat& u); // u pure, nrd != 0
InvolutionCtx inv_unitary(const QuatAlg& D);   // D over a QuadExt ctx
InvolutionCtx inv_field_unitary(const FieldPtr& L);

// A diagonal eps-hermitian form: h(x, y) = sum_i sigma(x_i) g_i y_i with
// sigma(g_i) = eps g_i. FieldUnitary stores entries in fdiag (as L-elements
// fixed by iota); quaternion kinds use diag.
struct HermForm {
  InvolutionCtx inv;
  int eps = 1;
  std::vector<Quat> diag;
  std::vector<Elem> fdiag;
  size_t rank() const { return inv.kind == InvKind::FieldUnitary ? fdiag.size() : diag.size(); }
};

HermForm herm_make(const InvolutionCtx& inv, int eps, const std::vector<Quat>& diag);
HermForm herm_make_field(const InvolutionCtx& inv, const std::vector<Elem>& diag);

using HGram = std::vector<std::vector<Quat>>;
// Sesquilinear Gauss with an e_i += e_j * c fallback; errors NotSymmetric on a
// convention violation (need G = eps * sigma(G)^T) and SingularForm on rank
// collapse.
HermForm herm_diagonalize(const InvolutionCtx& inv, int eps, const HGram& g);
HermForm herm_diagonalize_field(const InvolutionCtx& inv, const Gram& g);

HermForm herm_neg(const HermForm& h);
HermForm herm_perp(const HermForm& h1, const HermForm& h2);
HermForm herm_scale(const HermForm& h, const Elem& c); // c in E*

// h(v, v) for an explicit coordinate vector (exactness witnesses).
Quat herm_value(const HermForm& h, const std::vector<Quat>& v);
Elem herm_value_field(const HermForm& h, const std::vector<Elem>& v);

// Scaling bridges between involution kinds on the same algebra.
HermForm skew_to_orthogonal(const HermForm& h, const Quat& u); // gamma-skew -> (D,Int(u)gamma,+1)
HermForm orthogonal_to_skew(const HermForm& h);                // inverse of the above
HermForm orthogonal_skew_to_canonical(const HermForm& h);      // (D,sigma,-1) -> (D,gamma,+1)

// General scaling phi_a: h over (A, Int(a^{-1}) sigma, eps) maps to
// (A, sigma, eps*eps') by Gram g -> a g, where sigma(a) = eps' a. The target
// involution must differ from h's by Int(a); round-trip with a^{-1} is the
// identity at Gram level.
HermForm herm_scaling(const HermForm& h, const InvolutionCtx& target, const Quat& a);

// Trace (transfer) forms over E. trace_form polarizes Q(x) = E-part of
// (1/2) Trd h(x,x) over an E-basis; trace_form_closed is the independent
// closed-form route where one exists (canonical +1, field unitary, unitary
// with central entries). The two must agree; tests enforce it.
QForm trace_form(const HermForm& h);
std::optional<QForm> trace_form_closed(const HermForm& h);

// Signed discriminant representative in E*:
//   quaternion kinds: (-1)^{m(m-1)/2} prod Nrd(g_i), m = 2 rank
//   field unitary:    (-1)^{r(r-1)/2} prod g_i
// Read modulo squares (canonical/orthogonal) or modulo N(L*) (unitary kinds).
Elem herm_disc(const HermForm& h);

// Witt-group decisions. Routes: canonical +1 via the trace form (Jacobson);
// canonical skew via Tsukamoto (rank parity, disc) over Padic, via Morita for
// an explicitly split D, refused with UndecidableOverGlobalSkew for a global
// division D; orthogonal via scaling to the canonical side; unitary kinds via
// rank parity + (d, disc) symbols + transfer signature (Landherr).
bool herm_witt_trivial(const HermForm& h);
bool herm_witt_equal(const HermForm& h1, const HermForm& h2);

// Quadratic form over E matching the Witt class under Morita, for an
// explicitly split D: gamma-skew and Int(u)gamma-hermitian inputs. The _with
// variant takes a caller-provided splitting (for instance from a zero divisor
// of an embedded quadratic subfield) instead of calling split_rep.
QForm herm_morita_quadratic(const HermForm& h);
QForm herm_morita_quadratic_with(const HermForm& h, const SplitRep& rep);

// Inverse direction: an even rank quadratic form over K becomes a gamma-skew
// form of half the rank over an explicitly split (A, gamma). Round trips with
// herm_morita_quadratic up to Witt equivalence.
HermForm herm_morita_inverse(const QuatAlg& A, const QForm& q);

// Diagonalization that tolerates a radical over a division algebra: splits off
// invertible pivots and stops once the remaining block vanishes identically,
// returning the nondegenerate part (possibly of rank 0).
HermForm herm_diagonalize_mod_radical(const InvolutionCtx& inv, int eps, const HGram& g);

// Pfaffian norm of a form over (D0, gamma, +1) with central diagonal entries
// <a_1..a_r>: the signed class (-1)^{r(r-1)/2} prod a_i read in E*/Nrd(D0*).
Elem pfaffian_norm(const HermForm& h0);
// Membership of that class in N_{L/E}(L*) Nrd(D0*) for L = E(sqrt d):
// equivalently isotropy of the rank-6 form lambda n_D0 perp -<1,-d> over E.
bool pfaffian_norm_member(const HermForm& h0, const Elem& d);

// e3 route for an even rank (L, iota)-form whose discriminant class is
// trivial: the arason class of its trace form. Vanishes over local bases.
bool rost_e3_route(const HermForm& h);

// Explicit Morita transport of a QuatUnitary form to an (L, iota)-hermitian
// form of rank 2r, given a zero divisor of D (for instance w - sqrt(d) with w
// a pure quaternion of the descended algebra satisfying w^2 = d). Solves the
// Gram C of the involution, normalizes it iota-hermitian, and transports
// <g> to the block C Phi(g); every step is verified.
HermForm unitary_morita_field_form(const HermForm& h, const Quat& zero_divisor);

} // namespace witt
