#pragma once

#include <optional>
#include <vector>

#include "local.hpp"

namespace witt {

// Nondegenerate quadratic form in diagonal shape over K (char 0 or odd q).
// Entries are nonzero; rank 0 is the empty form.
struct QForm {
  FieldPtr K;
  std::vector<Elem> diag;
  size_t rank() const { return diag.size(); }
};

using Gram = std::vector<std::vector<Elem>>;

QForm make_form(const FieldPtr& K, std::vector<Elem> diag); // BadArg on zero entry
// Symmetric Gauss congruence. Errors NotSymmetric / SingularForm.
QForm diagonalize(const FieldPtr& K, const Gram& gram);

QForm direct_sum(const QForm& a, const QForm& b);
QForm scale_form(const QForm& q, const Elem& a); // a != 0
QForm neg_form(const QForm& q);
QForm tensor_form(const QForm& a, const QForm& b);
QForm hyperbolic_form(const FieldPtr& K, int planes);
// n-fold Pfister form <<a1,...,an>> = tensor of <1,-ai>.
QForm pfister_form(const FieldPtr& K, const std::vector<Elem>& as);
QForm subform(const QForm& q, const std::vector<size_t>& idx);

Elem form_eval(const QForm& q, const std::vector<Elem>& v);
Elem form_bilinear(const QForm& q, const std::vector<Elem>& v, const std::vector<Elem>& w);

Elem det_form(const QForm& q);
Elem disc_form(const QForm& q); // (-1)^{r(r-1)/2} det

// Hasse invariant prod_{i<j} (d_i, d_j) at a place of a global K / of a local ctx.
int hasse_at(const QForm& q, const Place& v);
int hasse_local(const QForm& q);
// Signature at a real place (global K with real embeddings).
int signature_at(const QForm& q, const Place& v);

bool is_isotropic_at(const QForm& q, const Place& v); // global K, completion at v
bool is_isotropic_local(const QForm& q);              // local ctx
bool is_isotropic(const QForm& q);                    // any ctx; global via local-global
bool represents(const QForm& q, const Elem& lambda);  // lambda != 0

bool is_witt_trivial(const QForm& q); // hyperbolic
bool witt_equal(const QForm& a, const QForm& b);
bool isometric(const QForm& a, const QForm& b);

// Clifford-algebra invariant of a form with even rank and trivial
// discriminant: hasse * (-1,-1)^{k(k-1)/2}, rank = 2k. BadArg otherwise.
int clifford_e2_at(const QForm& q, const Place& v);
int clifford_e2_local(const QForm& q);

// Membership in the n-th power of the fundamental ideal, n <= 4.
bool in_In(const QForm& q, int n);
// For forms in I^3 over a global K: is the degree-3 invariant nonzero
// (equivalently, some real signature is 8 mod 16)? Errors NotInI3.
bool arason_e3_nontrivial(const QForm& q);

// Exact isotropic vector over Q: nullopt mean anisotropic; NotFound means the
// (rank >= 4) search budget ran out, never a wrong answer. Rank <= 3 searches
// are complete. Local and extension contexts are Unsupported.
std::optional<std::vector<Elem>> isotropic_vector(const QForm& q);
// Exact v with q(v) = lambda over Q (nullopt: not represented).
std::optional<std::vector<Elem>> represent_witness(const QForm& q, const Elem& lambda);

struct WittDecomp {
  QForm kernel; // anisotropic
  int index = 0;
};
// Local ctxs: kernel by invariant-matched enumeration over square classes.
// Q: explicit hyperbolic-plane splitting via isotropic vectors.
WittDecomp witt_decompose(const QForm& q);

} // namespace witt
