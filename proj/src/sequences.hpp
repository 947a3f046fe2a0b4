#pragma once

#include "hermitian.hpp"
#include "report.hpp"

namespace witt {

// The key exact sequence attached to a quaternion division algebra D / E
// with an orthogonal involution sigma = Int(u) . gamma:
//
//   W(D, gamma) --pi1--> W(M, iota) --rho~--> W(D, sigma) --pi2~--> W(M)
//
// mu := u is sigma-skew with mu^2 = alpha in E*. m is a sigma-symmetric pure
// element anticommuting with mu; beta := m^2 is a nonsquare in E*, and
// M = E(m) = E(sqrt beta) sits inside D with D = M + mu M. iota is the
// conjugation of M / E, induced on M by Int(mu). lambda := mu^{-1} m is
// sigma-symmetric; rho~ extends x |-> lambda x along M -> D. pi1 and pi2 are
// the M-coordinates of D = M + mu M.
struct KeySeqCtx {
  QuatAlg D;
  InvolutionCtx sigma;  // Int(u) . gamma
  InvolutionCtx tau;    // gamma
  InvolutionCtx iota;   // conjugation of M / E
  FieldPtr M;           // E(sqrt beta)
  Quat mu, m, lambda;
  Elem alpha, beta;
};

// Errors: NotDivision (split D), BadArg (sigma not orthogonal or on another
// algebra), Internal (no exact decomposition datum survives verification).
KeySeqCtx key_make_ctx(const QuatAlg& D, const InvolutionCtx& sigma);

// The inclusion M -> D and the coordinate projections of D = M + mu M.
Quat key_embed(const KeySeqCtx& c, const Elem& x);
std::pair<Elem, Elem> key_project(const KeySeqCtx& c, const Quat& x);

// pi1 of a diagonal form over (D, gamma, +1): entries are central, and
// <g> maps to <g, -g alpha> over (M, iota).
HermForm key_pi1(const KeySeqCtx& c, const HermForm& h);

// rho~ of a diagonal form over (M, iota): <x> maps to <lambda x> over
// (D, sigma, +1). Entries are iota-fixed, hence in E*.
HermForm key_rho_tilde(const KeySeqCtx& c, const HermForm& f);

// The M-valued symmetric bilinear form pi1 . h on the basis {1, mu} of each
// diagonal block, as a 2r x 2r Gram matrix over M, and its diagonalization.
Gram key_pi2_gram(const KeySeqCtx& c, const HermForm& h);
QForm key_pi2_tilde(const KeySeqCtx& c, const HermForm& h);

// The Clifford class of rho~(f) for an even-rank f over (M, iota), as a coset
// of the class of D: the two symbol lists (beta, disc f) and
// (beta, disc f) + (a, b) represent the coset's two members.
std::pair<SymbolList, SymbolList> clifford_of_rho_image(const KeySeqCtx& c, const HermForm& f);

// The exact sequence attached to a quadratic extension L = E(sqrt d) and a
// quaternion division algebra D0 = (a, b | E):
//
//   W(L) --pi1~--> W(D0, gamma, +1) --rho~--> W(D, tau, +1) --p2--> W(D0, gamma, -1)
//
// where D = D0 (x) L and tau = gamma (x) iota. pi1~ is the transfer along the
// E-projection L -> E followed by extension of scalars to D0; rho~ lifts
// central entries along E -> L; p2 extracts the sqrt(d)-coefficient of the
// pure part of each entry.
struct SureshCtx {
  FieldPtr E;
  FieldPtr L;  // E(sqrt d)
  Elem d;
  QuatAlg D0;  // (a, b | E), division
  QuatAlg D;   // (a, b | L)
  InvolutionCtx gamma0;  // canonical involution of D0
  InvolutionCtx tau;     // gamma (x) iota on D
};

// Errors: BadArg (d zero or a square), NotDivision (split D0),
// Unsupported (E already an extension).
SureshCtx suresh_make_ctx(const FieldPtr& E, const Elem& d, const Elem& a, const Elem& b);

// The inclusion E -> L.
Elem suresh_lift(const SureshCtx& c, const Elem& x);

// pi1~ of a diagonal quadratic form over L, via the 2 x 2 transfer Gram
// [[a0, b0 d], [b0 d, a0 d]] per entry a0 + b0 sqrt(d), diagonalized over
// (D0, gamma, +1).
HermForm suresh_pi1_tilde(const SureshCtx& c, const QForm& q);

// Closed form of pi1~ on a single entry x = a0 + b0 sqrt(d):
// <a0, a0 d (a0^2 - b0^2 d)> when a0 != 0, <2 b0 d, -2 b0 d> when a0 = 0.
// Witt equal to the matrix route; the literal entries differ by reduced-norm
// (hence square) factors. Errors BadArg on x = 0.
HermForm suresh_pi1_closed(const SureshCtx& c, const Elem& x);

// rho~ of a diagonal form over (D0, gamma, +1): central entries, lifted along
// E -> L into (D, tau, +1).
HermForm suresh_rho_tilde(const SureshCtx& c, const HermForm& h0);

// p2 of a diagonal form over (D, tau, +1): each entry is e + w sqrt(d) with
// e in E and w a pure quaternion of D0; the w's form a diagonal skew form
// over (D0, gamma, -1), reduced modulo its radical.
HermForm suresh_p2(const SureshCtx& c, const HermForm& h);

// Values of rho~(h0) on pure vectors w sqrt(d): the quadratic form
// (+) alpha_s d <a, b, -ab> over E of rank 3r. Its isotropy witnesses that
// rho~(h0) has rank growth at most r/3 worth of kernel directions; over a
// p-adic base it is isotropic as soon as r >= 2.
QForm suresh_pure_value_form(const SureshCtx& c, const HermForm& h0);

// Randomized exactness audits. Composite junctions are checked by exact
// per-block isotropic witnesses plus a Witt-triviality route in the target;
// kernel junctions enumerate diagonal forms over square-class representatives
// and test membership in the enumerated image, which is decidable over local
// bases only.
struct SeqAuditParams {
  long samples = 100;
  uint64_t seed = 0;
  int max_rank = 2;
  // -1: kernel junctions run exactly when the base is local (auto).
  //  0: composite junctions only.
  //  1: kernel junctions required; errors Unsupported over a global base.
  int kernel = -1;
};

// Junctions: "rho.pi1", "pi2.rho", "ker-rho-in-im-pi1", "ker-pi2-in-im-rho".
// u_coords gives the pure coordinates of u (empty means u = i).
AuditReport key_exactness_audit(const FieldPtr& E, const Elem& a, const Elem& b,
                                const std::vector<Elem>& u_coords, const SeqAuditParams& p);

// Junctions: "rho.pi1", "p2.rho", "ker-rho-pfaffian", "ker-p2-in-im-rho".
// The middle kernel junction checks the pfaffian-norm certificate on forms
// whose rho~-image is Witt trivial. Over a local base with d a square the
// audit reports the split-etale branch: both unitary Witt groups vanish and
// there is nothing to check.
AuditReport suresh_exactness_audit(const FieldPtr& E, const Elem& d, const Elem& a,
                                   const Elem& b, const SeqAuditParams& p);

// Dispatcher used by the CLI: which is "key" or "suresh". d is ignored for
// the key sequence (its extension M is derived from the involution datum).
AuditReport exactness_audit(const std::string& which, const FieldPtr& base, const Elem& d,
                            const Elem& a, const Elem& b, const SeqAuditParams& p);

}  // namespace witt
