#include "hermitian.hpp"

#include <sstream>

#include "error.hpp"

namespace witt {

namespace {

// Coordinate moves between a QuadExt and its base field.
Elem lift_to_ext(const FieldPtr& L, const Elem& e) { return L->make(e.a, L->zero().a); }

Elem ext_to_base(const FieldPtr& L, const Elem& x) {
  if (!(x.b == L->zero().a)) fail(Err::Internal, "element has a nonzero sqrt part");
  const FieldPtr& E = L->base;
  return E->make(x.a, E->zero().b);
}

Elem half(const FieldCtx& K, const Elem& x) { return K.div(x, K.from_int(2)); }

Elem omega(const FieldPtr& L) { return L->make(L->zero().a, L->one().a); }

bool eps_symmetric(const InvolutionCtx& inv, int eps, const Quat& g) {
  const QuatAlg& A = *inv.D;
  Quat s = inv.apply(g);
  return A.eq(eps == 1 ? s : A.neg(s), g);
}

void check_eps(int eps) {
  if (eps != 1 && eps != -1) fail(Err::BadArg, "eps must be +1 or -1");
}

void check_compatible(const HermForm& a, const HermForm& b) {
  if (a.inv.key() != b.inv.key() || a.eps != b.eps)
    fail(Err::BadArg, "forms live over different involutions");
}

} // namespace

Quat InvolutionCtx::apply(const Quat& x) const {
  switch (kind) {
    case InvKind::QuatCanonical:
      return D->conj(x);
    case InvKind::QuatOrthogonal:
      return D->mul(D->mul(u, D->conj(x)), D->inv(u));
    case InvKind::QuatUnitary: {
      const FieldPtr& Lf = D->K;
      return Quat{Lf->conj(x.x0), Lf->neg(Lf->conj(x.x1)), Lf->neg(Lf->conj(x.x2)),
                  Lf->neg(Lf->conj(x.x3))};
    }
    case InvKind::FieldUnitary:
      break;
  }
  fail(Err::BadArg, "field involution applied to a quaternion");
}

Elem InvolutionCtx::apply_field(const Elem& x) const {
  if (kind != InvKind::FieldUnitary)
    fail(Err::BadArg, "quaternion involution applied to a field element");
  return L->conj(x);
}

std::string InvolutionCtx::key() const {
  std::ostringstream os;
  os << static_cast<int>(kind);
  if (D) {
    os << "|" << D->K->key() << "|" << D->K->to_string(D->a) << "|" << D->K->to_string(D->b);
  }
  if (kind == InvKind::QuatOrthogonal) os << "|" << D->to_string(u);
  if (L) os << "|" << L->key();
  return os.str();
}

InvolutionCtx inv_canonical(const QuatAlg& D) {
  InvolutionCtx c;
  c.kind = InvKind::QuatCanonical;
  c.D = D;
  c.E = D.K;
  return c;
}

InvolutionCtx inv_orthogonal(const QuatAlg& D, const Quat& u) {
  if (!D.is_pure(u) || D.K->is_zero(D.nrd(u)))
    fail(Err::BadArg, "twist must be an invertible pure quaternion");
  InvolutionCtx c;
  c.kind = InvKind::QuatOrthogonal;
  c.D = D;
  c.u = u;
  c.E = D.K;
  return c;
}

InvolutionCtx inv_unitary(const QuatAlg& D) {
  const FieldPtr& Lf = D.K;
  if (Lf->kind != FieldKind::QuadExt)
    fail(Err::WrongFieldKind, "unitary involutions need a quadratic extension");
  if (!(D.a.b == Lf->zero().a) || !(D.b.b == Lf->zero().a))
    fail(Err::BadArg, "algebra parameters must come from the fixed field");
  InvolutionCtx c;
  c.kind = InvKind::QuatUnitary;
  c.D = D;
  c.L = Lf;
  c.E = Lf->base;
  return c;
}

InvolutionCtx inv_field_unitary(const FieldPtr& L) {
  if (L->kind != FieldKind::QuadExt)
    fail(Err::WrongFieldKind, "unitary involutions need a quadratic extension");
  InvolutionCtx c;
  c.kind = InvKind::FieldUnitary;
  c.L = L;
  c.E = L->base;
  return c;
}

HermForm herm_make(const InvolutionCtx& inv, int eps, const std::vector<Quat>& diag) {
  check_eps(eps);
  if (inv.kind == InvKind::FieldUnitary) fail(Err::BadArg, "use herm_make_field");
  if ((inv.kind == InvKind::QuatUnitary) && eps != 1)
    fail(Err::BadArg, "unitary forms are stored with eps = +1");
  const QuatAlg& A = *inv.D;
  for (const Quat& g : diag) {
    if (A.K->is_zero(A.nrd(g))) fail(Err::BadArg, "diagonal entries must be invertible");
    if (!eps_symmetric(inv, eps, g)) fail(Err::NotSymmetric, "entry is not eps-symmetric");
  }
  HermForm h;
  h.inv = inv;
  h.eps = eps;
  h.diag = diag;
  return h;
}

HermForm herm_make_field(const InvolutionCtx& inv, const std::vector<Elem>& diag) {
  if (inv.kind != InvKind::FieldUnitary) fail(Err::BadArg, "use herm_make");
  const FieldPtr& L = inv.L;
  for (const Elem& g : diag) {
    if (L->is_zero(g)) fail(Err::BadArg, "diagonal entries must be invertible");
    if (!L->eq(L->conj(g), g)) fail(Err::NotSymmetric, "entry is not iota-fixed");
  }
  HermForm h;
  h.inv = inv;
  h.eps = 1;
  h.fdiag = diag;
  return h;
}

static HermForm herm_diagonalize_impl(const InvolutionCtx& inv, int eps, const HGram& g,
                                       bool mod_radical) {
  check_eps(eps);
  if (inv.kind == InvKind::FieldUnitary) fail(Err::BadArg, "use herm_diagonalize_field");
  const QuatAlg& A = *inv.D;
  const FieldCtx& K = *A.K;
  size_t n = g.size();
  for (const auto& row : g)
    if (row.size() != n) fail(Err::BadArg, "gram matrix must be square");
  for (size_t s = 0; s < n; ++s)
    for (size_t t = 0; t < n; ++t) {
      Quat want = inv.apply(g[s][t]);
      if (eps == -1) want = A.neg(want);
      if (!A.eq(g[t][s], want)) fail(Err::NotSymmetric, "gram violates G = eps sigma(G)^T");
    }

  // Multipliers tried when no diagonal entry is invertible: e_s += e_t * c.
  std::vector<Quat> cands = {A.one(),
                             A.i(),
                             A.j(),
                             A.k(),
                             A.add(A.one(), A.i()),
                             A.add(A.one(), A.j()),
                             A.add(A.one(), A.k()),
                             A.add(A.i(), A.j()),
                             A.add(A.i(), A.k()),
                             A.add(A.j(), A.k())};
  if (inv.kind == InvKind::QuatUnitary) {
    Elem om = omega(A.K);
    for (int t = 0; t < 4; ++t) cands.push_back(A.scal(om, cands[t]));
  }

  HGram G = g;
  std::vector<Quat> out;
  for (size_t kk = 0; kk < n; ++kk) {
    size_t piv = n;
    for (size_t t = kk; t < n && piv == n; ++t)
      if (!K.is_zero(A.nrd(G[t][t]))) piv = t;
    if (piv == n) {
      for (size_t s = kk; s < n && piv == n; ++s)
        for (size_t t = kk; t < n && piv == n; ++t) {
          if (s == t) continue;
          for (const Quat& c : cands) {
            Quat sc = inv.apply(c);
            Quat delta = A.add(A.mul(sc, G[t][s]), A.mul(G[s][t], c));
            delta = A.add(delta, A.mul(A.mul(sc, G[t][t]), c));
            if (K.is_zero(A.nrd(A.add(G[s][s], delta)))) continue;
            for (size_t q = kk; q < n; ++q) G[s][q] = A.add(G[s][q], A.mul(sc, G[t][q]));
            for (size_t q = kk; q < n; ++q) G[q][s] = A.add(G[q][s], A.mul(G[q][t], c));
            piv = s;
            break;
          }
        }
    }
    if (piv == n) {
      bool allzero = true;
      for (size_t s = kk; s < n && allzero; ++s)
        for (size_t t = kk; t < n && allzero; ++t)
          if (!A.is_zero(G[s][t])) allzero = false;
      if (allzero && mod_radical) break;
      if (allzero) fail(Err::SingularForm, "gram matrix is degenerate");
      fail(Err::Internal, "no invertible pivot found");
    }
    if (piv != kk) {
      std::swap(G[piv], G[kk]);
      for (size_t q = 0; q < n; ++q) std::swap(G[q][piv], G[q][kk]);
    }
    Quat v = G[kk][kk];
    out.push_back(v);
    Quat vinv = A.inv(v);
    for (size_t s = kk + 1; s < n; ++s)
      for (size_t t = kk + 1; t < n; ++t)
        G[s][t] = A.sub(G[s][t], A.mul(A.mul(G[s][kk], vinv), G[kk][t]));
    for (size_t s = kk + 1; s < n; ++s) {
      G[s][kk] = A.zero();
      G[kk][s] = A.zero();
    }
  }
  return herm_make(inv, eps, out);
}

HermForm herm_diagonalize(const InvolutionCtx& inv, int eps, const HGram& g) {
  return herm_diagonalize_impl(inv, eps, g, false);
}

HermForm herm_diagonalize_mod_radical(const InvolutionCtx& inv, int eps, const HGram& g) {
  if (is_split(*inv.D))
    fail(Err::NotDivision, "radical splitting needs a division algebra");
  return herm_diagonalize_impl(inv, eps, g, true);
}

HermForm herm_diagonalize_field(const InvolutionCtx& inv, const Gram& g) {
  if (inv.kind != InvKind::FieldUnitary) fail(Err::BadArg, "use herm_diagonalize");
  const FieldPtr& L = inv.L;
  size_t n = g.size();
  for (const auto& row : g)
    if (row.size() != n) fail(Err::BadArg, "gram matrix must be square");
  for (size_t s = 0; s < n; ++s)
    for (size_t t = 0; t < n; ++t)
      if (!L->eq(g[t][s], L->conj(g[s][t])))
        fail(Err::NotSymmetric, "gram violates G = iota(G)^T");

  std::vector<Elem> cands = {L->one(), omega(L)};
  Gram G = g;
  std::vector<Elem> out;
  for (size_t kk = 0; kk < n; ++kk) {
    size_t piv = n;
    for (size_t t = kk; t < n && piv == n; ++t)
      if (!L->is_zero(G[t][t])) piv = t;
    if (piv == n) {
      for (size_t s = kk; s < n && piv == n; ++s)
        for (size_t t = kk; t < n && piv == n; ++t) {
          if (s == t) continue;
          for (const Elem& c : cands) {
            Elem sc = L->conj(c);
            Elem delta = L->add(L->mul(sc, G[t][s]), L->mul(G[s][t], c));
            delta = L->add(delta, L->mul(L->mul(sc, G[t][t]), c));
            if (L->is_zero(L->add(G[s][s], delta))) continue;
            for (size_t q = kk; q < n; ++q) G[s][q] = L->add(G[s][q], L->mul(sc, G[t][q]));
            for (size_t q = kk; q < n; ++q) G[q][s] = L->add(G[q][s], L->mul(G[q][t], c));
            piv = s;
            break;
          }
        }
    }
    if (piv == n) {
      bool allzero = true;
      for (size_t s = kk; s < n && allzero; ++s)
        for (size_t t = kk; t < n && allzero; ++t)
          if (!L->is_zero(G[s][t])) allzero = false;
      if (allzero) fail(Err::SingularForm, "gram matrix is degenerate");
      fail(Err::Internal, "no invertible pivot found");
    }
    if (piv != kk) {
      std::swap(G[piv], G[kk]);
      for (size_t q = 0; q < n; ++q) std::swap(G[q][piv], G[q][kk]);
    }
    Elem v = G[kk][kk];
    out.push_back(v);
    for (size_t s = kk + 1; s < n; ++s)
      for (size_t t = kk + 1; t < n; ++t)
        G[s][t] = L->sub(G[s][t], L->div(L->mul(G[s][kk], G[kk][t]), v));
    for (size_t s = kk + 1; s < n; ++s) {
      G[s][kk] = L->zero();
      G[kk][s] = L->zero();
    }
  }
  return herm_make_field(inv, out);
}

HermForm herm_neg(const HermForm& h) {
  HermForm r = h;
  if (h.inv.kind == InvKind::FieldUnitary) {
    for (Elem& g : r.fdiag) g = h.inv.L->neg(g);
  } else {
    for (Quat& g : r.diag) g = h.inv.D->neg(g);
  }
  return r;
}

HermForm herm_perp(const HermForm& h1, const HermForm& h2) {
  check_compatible(h1, h2);
  HermForm r = h1;
  r.diag.insert(r.diag.end(), h2.diag.begin(), h2.diag.end());
  r.fdiag.insert(r.fdiag.end(), h2.fdiag.begin(), h2.fdiag.end());
  return r;
}

HermForm herm_scale(const HermForm& h, const Elem& c) {
  const FieldPtr& E = h.inv.E;
  if (E->is_zero(c)) fail(Err::BadArg, "scale by zero");
  HermForm r = h;
  if (h.inv.kind == InvKind::FieldUnitary) {
    Elem cl = lift_to_ext(h.inv.L, c);
    for (Elem& g : r.fdiag) g = h.inv.L->mul(cl, g);
  } else if (h.inv.kind == InvKind::QuatUnitary) {
    Elem cl = lift_to_ext(h.inv.L, c);
    for (Quat& g : r.diag) g = h.inv.D->scal(cl, g);
  } else {
    for (Quat& g : r.diag) g = h.inv.D->scal(c, g);
  }
  return r;
}

Quat herm_value(const HermForm& h, const std::vector<Quat>& v) {
  if (h.inv.kind == InvKind::FieldUnitary) fail(Err::BadArg, "use herm_value_field");
  if (v.size() != h.diag.size()) fail(Err::BadArg, "vector length mismatch");
  const QuatAlg& A = *h.inv.D;
  Quat acc = A.zero();
  for (size_t s = 0; s < v.size(); ++s)
    acc = A.add(acc, A.mul(A.mul(h.inv.apply(v[s]), h.diag[s]), v[s]));
  return acc;
}

Elem herm_value_field(const HermForm& h, const std::vector<Elem>& v) {
  if (h.inv.kind != InvKind::FieldUnitary) fail(Err::BadArg, "use herm_value");
  if (v.size() != h.fdiag.size()) fail(Err::BadArg, "vector length mismatch");
  const FieldPtr& L = h.inv.L;
  Elem acc = L->zero();
  for (size_t s = 0; s < v.size(); ++s)
    acc = L->add(acc, L->mul(L->mul(L->conj(v[s]), h.fdiag[s]), v[s]));
  return acc;
}

HermForm skew_to_orthogonal(const HermForm& h, const Quat& u) {
  if (h.inv.kind != InvKind::QuatCanonical || h.eps != -1)
    fail(Err::BadArg, "expected a skew form over the canonical involution");
  const QuatAlg& A = *h.inv.D;
  InvolutionCtx o = inv_orthogonal(A, u);
  std::vector<Quat> diag;
  for (const Quat& g : h.diag) diag.push_back(A.mul(u, g));
  return herm_make(o, 1, diag);
}

HermForm orthogonal_to_skew(const HermForm& h) {
  if (h.inv.kind != InvKind::QuatOrthogonal || h.eps != 1)
    fail(Err::BadArg, "expected a hermitian form over a twisted involution");
  const QuatAlg& A = *h.inv.D;
  Quat ui = A.inv(h.inv.u);
  std::vector<Quat> diag;
  for (const Quat& g : h.diag) diag.push_back(A.mul(ui, g));
  return herm_make(inv_canonical(A), -1, diag);
}

HermForm orthogonal_skew_to_canonical(const HermForm& h) {
  if (h.inv.kind != InvKind::QuatOrthogonal || h.eps != -1)
    fail(Err::BadArg, "expected a skew form over a twisted involution");
  const QuatAlg& A = *h.inv.D;
  Quat ui = A.inv(h.inv.u);
  std::vector<Quat> diag;
  for (const Quat& g : h.diag) diag.push_back(A.mul(ui, g));
  return herm_make(inv_canonical(A), 1, diag);
}

QForm trace_form(const HermForm& h) {
  if (h.eps != 1) fail(Err::BadArg, "trace forms are attached to eps = +1");
  const FieldPtr& E = h.inv.E;
  if (h.inv.kind == InvKind::FieldUnitary) {
    const FieldPtr& L = h.inv.L;
    std::vector<Elem> basis = {L->one(), omega(L)};
    size_t r = h.fdiag.size();
    Gram gm(2 * r, std::vector<Elem>(2 * r, E->zero()));
    for (size_t s = 0; s < r; ++s)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int c2 = 0; c2 < 2; ++c2) {
          Elem z1 = L->mul(L->mul(L->conj(basis[c1]), h.fdiag[s]), basis[c2]);
          Elem z2 = L->mul(L->mul(L->conj(basis[c2]), h.fdiag[s]), basis[c1]);
          gm[2 * s + c1][2 * s + c2] = ext_to_base(L, half(*L, L->add(z1, z2)));
        }
    return diagonalize(E, gm);
  }
  const QuatAlg& A = *h.inv.D;
  std::vector<Quat> basis = {A.one(), A.i(), A.j(), A.k()};
  bool unitary = h.inv.kind == InvKind::QuatUnitary;
  if (unitary) {
    Elem om = omega(A.K);
    for (int t = 0; t < 4; ++t) basis.push_back(A.scal(om, basis[t]));
  }
  size_t m = basis.size(), r = h.diag.size();
  Gram gm(m * r, std::vector<Elem>(m * r, E->zero()));
  for (size_t s = 0; s < r; ++s)
    for (size_t c1 = 0; c1 < m; ++c1)
      for (size_t c2 = 0; c2 < m; ++c2) {
        Quat z1 = A.mul(A.mul(h.inv.apply(basis[c1]), h.diag[s]), basis[c2]);
        Quat z2 = A.mul(A.mul(h.inv.apply(basis[c2]), h.diag[s]), basis[c1]);
        Elem t = half(*A.K, A.K->add(z1.x0, z2.x0));
        gm[m * s + c1][m * s + c2] = unitary ? ext_to_base(A.K, t) : t;
      }
  return diagonalize(E, gm);
}

std::optional<QForm> trace_form_closed(const HermForm& h) {
  if (h.eps != 1) fail(Err::BadArg, "trace forms are attached to eps = +1");
  const FieldPtr& E = h.inv.E;
  switch (h.inv.kind) {
    case InvKind::FieldUnitary: {
      const FieldPtr& L = h.inv.L;
      std::vector<Elem> lams;
      for (const Elem& g : h.fdiag) lams.push_back(ext_to_base(L, g));
      QForm ext = make_form(E, {E->one(), E->neg(L->d)});
      return tensor_form(make_form(E, lams), ext);
    }
    case InvKind::QuatCanonical: {
      std::vector<Elem> lams;
      for (const Quat& g : h.diag) lams.push_back(g.x0);
      return tensor_form(make_form(E, lams), norm_form(*h.inv.D));
    }
    case InvKind::QuatUnitary: {
      const QuatAlg& A = *h.inv.D;
      const FieldPtr& L = h.inv.L;
      std::vector<Elem> lams;
      for (const Quat& g : h.diag) {
        if (!A.is_zero(A.pure_part(g))) return std::nullopt;
        if (!(g.x0.b == L->zero().a)) return std::nullopt;
        lams.push_back(ext_to_base(L, g.x0));
      }
      Elem a = ext_to_base(L, A.a), b = ext_to_base(L, A.b);
      QForm n0 = make_form(E, {E->one(), E->neg(a), E->neg(b), E->mul(a, b)});
      QForm ext = make_form(E, {E->one(), E->neg(L->d)});
      return tensor_form(make_form(E, lams), tensor_form(n0, ext));
    }
    case InvKind::QuatOrthogonal:
      return std::nullopt;
  }
  return std::nullopt;
}

Elem herm_disc(const HermForm& h) {
  const FieldPtr& E = h.inv.E;
  Elem prod = E->one();
  size_t r = h.rank();
  if (h.inv.kind == InvKind::FieldUnitary) {
    for (const Elem& g : h.fdiag) prod = E->mul(prod, ext_to_base(h.inv.L, g));
    if ((r * (r - 1) / 2) % 2) prod = E->neg(prod);
    return prod;
  }
  const QuatAlg& A = *h.inv.D;
  for (const Quat& g : h.diag) {
    Elem n = A.nrd(g);
    prod = E->mul(prod, h.inv.kind == InvKind::QuatUnitary ? ext_to_base(h.inv.L, n) : n);
  }
  // m = 2r entries of the underlying E-structure: (-1)^{m(m-1)/2} = (-1)^r
  if (r % 2) prod = E->neg(prod);
  return prod;
}

namespace {

// Product of reduced norms of the entries, the unitary-kind discriminant
// representative (unsigned; hyperbolic forms land in N(L*) for every rank).
Elem unitary_norm_disc(const HermForm& h) {
  const FieldPtr& E = h.inv.E;
  const QuatAlg& A = *h.inv.D;
  Elem prod = E->one();
  for (const Quat& g : h.diag) prod = E->mul(prod, ext_to_base(h.inv.L, A.nrd(g)));
  return prod;
}

bool skew_canonical_trivial(const HermForm& h) {
  const QuatAlg& A = *h.inv.D;
  FieldKind bk = A.K->base_kind();
  if (is_split(A)) {
    if (bk == FieldKind::Padic)
      fail(Err::Unsupported, "split p-adic algebras have no exact splitting to transport along");
    return is_witt_trivial(herm_morita_quadratic(h));
  }
  if (bk == FieldKind::Padic) {
    // Complete pair over a local field: rank parity and signed discriminant.
    if (h.rank() % 2) return false;
    return A.K->is_square(herm_disc(h));
  }
  fail(Err::UndecidableOverGlobalSkew,
       "skew forms over a global division algebra have no effective criterion");
}

bool unitary_trivial(const HermForm& h) {
  const QuatAlg& A = *h.inv.D;
  const FieldPtr& E = h.inv.E;
  Elem d = h.inv.L->d;
  Elem nd = unitary_norm_disc(h);
  // Morita over a splitting of D lands in rank 2r over (L, iota) with
  // discriminant e^r nd, where e in E*/N(L*) is the class with (d, e) = (a, b):
  // the descent datum of the fixed E-algebra twists det of the transport
  // matrix by e. Odd D-rank therefore flips the symbol target exactly at the
  // places where (a, b) ramifies over E.
  Elem a0 = ext_to_base(h.inv.L, A.a);
  Elem b0 = ext_to_base(h.inv.L, A.b);
  bool odd = h.rank() % 2 != 0;
  switch (E->kind) {
    case FieldKind::Finite:
      // D is split and norms of L/E are surjective: W(D, tau) = 0.
      return true;
    case FieldKind::Padic:
      return hilbert_local(*E, d, nd) == (odd ? hilbert_local(*E, a0, b0) : 1);
    case FieldKind::Rationals: {
      if (is_division(A) && odd) return false;
      for (const Place& v : places_for(*E, {d, nd, a0, b0}))
        if (hilbert_at(*E, v, d, nd) != (odd ? hilbert_at(*E, v, a0, b0) : 1)) return false;
      return signature_at(trace_form(h), Place::real_place()) == 0;
    }
    default:
      fail(Err::WrongFieldKind, "unitary decisions need Q, Q_p, or F_q as the fixed field");
  }
}

bool field_unitary_trivial(const HermForm& h) {
  const FieldPtr& E = h.inv.E;
  if (h.rank() % 2) return false;
  if (h.rank() == 0) return true;
  Elem d = h.inv.L->d;
  Elem disc = herm_disc(h);
  switch (E->kind) {
    case FieldKind::Finite:
      return true; // norms of L/E are surjective
    case FieldKind::Padic:
      return hilbert_local(*E, d, disc) == 1;
    case FieldKind::Rationals: {
      for (const Place& v : places_for(*E, {d, disc}))
        if (hilbert_at(*E, v, d, disc) != 1) return false;
      return signature_at(trace_form(h), Place::real_place()) == 0;
    }
    default:
      fail(Err::WrongFieldKind, "unitary decisions need Q, Q_p, or F_q as the fixed field");
  }
}

} // namespace

bool herm_witt_trivial(const HermForm& h) {
  if (h.rank() == 0) return true;
  switch (h.inv.kind) {
    case InvKind::QuatCanonical:
      if (h.eps == 1) return is_witt_trivial(trace_form(h));
      return skew_canonical_trivial(h);
    case InvKind::QuatOrthogonal:
      if (h.eps == 1) return skew_canonical_trivial(orthogonal_to_skew(h));
      return is_witt_trivial(trace_form(orthogonal_skew_to_canonical(h)));
    case InvKind::QuatUnitary:
      return unitary_trivial(h);
    case InvKind::FieldUnitary:
      return field_unitary_trivial(h);
  }
  fail(Err::Internal, "unreachable");
}

bool herm_witt_equal(const HermForm& h1, const HermForm& h2) {
  check_compatible(h1, h2);
  return herm_witt_trivial(herm_perp(h1, herm_neg(h2)));
}

QForm herm_morita_quadratic(const HermForm& h) {
  const QuatAlg& A = *h.inv.D;
  auto rep = split_rep(A);
  if (!rep) fail(Err::BadArg, "algebra is division; nothing to transport along");
  return herm_morita_quadratic_with(h, *rep);
}

QForm herm_morita_quadratic_with(const HermForm& h, const SplitRep& rep) {
  bool skew_can = h.inv.kind == InvKind::QuatCanonical && h.eps == -1;
  bool herm_orth = h.inv.kind == InvKind::QuatOrthogonal && h.eps == 1;
  if (!skew_can && !herm_orth)
    fail(Err::BadArg, "Morita transport to a quadratic form needs a skew canonical or hermitian twisted form");
  const QuatAlg& A = *h.inv.D;
  const FieldPtr& K = A.K;

  Mat2 J;
  J.e[0][0] = K->zero();
  J.e[0][1] = K->one();
  J.e[1][0] = K->neg(K->one());
  J.e[1][1] = K->zero();
  Mat2 B = skew_can ? J : mat2_mul(*K, J, mat2_inv(*K, rep.of(A, h.inv.u)));

  size_t r = h.diag.size();
  Gram gm(2 * r, std::vector<Elem>(2 * r, K->zero()));
  for (size_t s = 0; s < r; ++s) {
    Mat2 blk = mat2_mul(*K, B, rep.of(A, h.diag[s]));
    for (int c1 = 0; c1 < 2; ++c1)
      for (int c2 = 0; c2 < 2; ++c2) gm[2 * s + c1][2 * s + c2] = blk.e[c1][c2];
  }
  for (size_t s = 0; s < 2 * r; ++s)
    for (size_t t = 0; t < s; ++t)
      if (!K->eq(gm[s][t], gm[t][s])) fail(Err::Internal, "Morita image is not symmetric");
  return diagonalize(K, gm);
}

HermForm unitary_morita_field_form(const HermForm& h, const Quat& zero_divisor) {
  if (h.inv.kind != InvKind::QuatUnitary)
    fail(Err::BadArg, "expected a unitary quaternion form");
  const QuatAlg& A = *h.inv.D;
  const FieldPtr& L = h.inv.L;
  SplitRep rep = split_rep_from(A, zero_divisor);

  auto phi = [&](const Quat& q) { return rep.of(A, q); };
  // Solve Phi(tau(q)) * C-relation: iota(Phi(q))^T C = C Phi(tau(q)) for the
  // four basis quaternions; C is unique up to an L-scalar.
  auto iota_t = [&](const Mat2& mm) {
    Mat2 r2;
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) r2.e[s][t] = L->conj(mm.e[t][s]);
    return r2;
  };
  std::vector<std::array<Elem, 4>> rows; // unknowns (c00, c01, c10, c11)
  std::array<Quat, 4> qs = {A.one(), A.i(), A.j(), A.k()};
  for (const Quat& q : qs) {
    Mat2 P = iota_t(phi(q));
    Mat2 T = phi(h.inv.apply(q));
    // (P C - C T)_{st} = 0, linear in the entries of C
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) {
        std::array<Elem, 4> row = {L->zero(), L->zero(), L->zero(), L->zero()};
        for (int w = 0; w < 2; ++w) {
          row[2 * w + t] = L->add(row[2 * w + t], P.e[s][w]);
          row[2 * s + w] = L->sub(row[2 * s + w], T.e[w][t]);
        }
        rows.push_back(row);
      }
  }
  // Nullspace by Gaussian elimination over L.
  size_t nr = rows.size();
  std::array<int, 4> pivot_of = {-1, -1, -1, -1};
  size_t rk = 0;
  for (size_t col = 0; col < 4 && rk < nr; ++col) {
    size_t sel = nr;
    for (size_t s = rk; s < nr && sel == nr; ++s)
      if (!L->is_zero(rows[s][col])) sel = s;
    if (sel == nr) continue;
    std::swap(rows[rk], rows[sel]);
    Elem pv = rows[rk][col];
    for (int t = 0; t < 4; ++t) rows[rk][t] = L->div(rows[rk][t], pv);
    for (size_t s = 0; s < nr; ++s) {
      if (s == rk || L->is_zero(rows[s][col])) continue;
      Elem c = rows[s][col];
      for (int t = 0; t < 4; ++t) rows[s][t] = L->sub(rows[s][t], L->mul(c, rows[rk][t]));
    }
    pivot_of[col] = static_cast<int>(rk);
    ++rk;
  }
  if (rk != 3) fail(Err::Internal, "involution gram solution space is not one-dimensional");
  int freecol = -1;
  for (int col = 0; col < 4; ++col)
    if (pivot_of[col] < 0) freecol = col;
  std::array<Elem, 4> cv = {L->zero(), L->zero(), L->zero(), L->zero()};
  cv[freecol] = L->one();
  for (int col = 0; col < 4; ++col)
    if (pivot_of[col] >= 0) cv[col] = L->neg(rows[pivot_of[col]][freecol]);
  Mat2 C;
  C.e[0][0] = cv[0];
  C.e[0][1] = cv[1];
  C.e[1][0] = cv[2];
  C.e[1][1] = cv[3];

  // Normalize C to be iota-hermitian: iota(C)^T = lambda C with N(lambda) = 1;
  // replace C by (1 + lambda) C, or by omega (1 - lambda) C when lambda = -1.
  Mat2 R = iota_t(C);
  Elem lam = L->zero();
  for (int s = 0; s < 2 && L->is_zero(lam); ++s)
    for (int t = 0; t < 2 && L->is_zero(lam); ++t)
      if (!L->is_zero(C.e[s][t])) lam = L->div(R.e[s][t], C.e[s][t]);
  Elem c = L->add(L->one(), lam);
  if (L->is_zero(c)) c = L->mul(omega(L), L->sub(L->one(), lam));
  C = mat2_scal(*L, c, C);
  if (!mat2_eq(*L, iota_t(C), C)) fail(Err::Internal, "involution gram failed normalization");
  for (const Quat& q : qs) {
    Mat2 lhs = mat2_mul(*L, iota_t(phi(q)), C);
    Mat2 rhs = mat2_mul(*L, C, phi(h.inv.apply(q)));
    if (!mat2_eq(*L, lhs, rhs)) fail(Err::Internal, "involution gram failed verification");
  }

  size_t r = h.diag.size();
  Gram gm(2 * r, std::vector<Elem>(2 * r, L->zero()));
  for (size_t s = 0; s < r; ++s) {
    Mat2 blk = mat2_mul(*L, C, phi(h.diag[s]));
    for (int c1 = 0; c1 < 2; ++c1)
      for (int c2 = 0; c2 < 2; ++c2) gm[2 * s + c1][2 * s + c2] = blk.e[c1][c2];
  }
  InvolutionCtx fu = inv_field_unitary(L);
  return herm_diagonalize_field(fu, gm);
}

HermForm herm_scaling(const HermForm& h, const InvolutionCtx& target, const Quat& a) {
  if (h.inv.kind == InvKind::FieldUnitary || target.kind == InvKind::FieldUnitary)
    fail(Err::BadArg, "scaling acts on quaternion involutions; use herm_scale over (L, iota)");
  const QuatAlg& A = *h.inv.D;
  const QuatAlg& B = *target.D;
  const FieldCtx& K = *A.K;
  if (A.K->key() != B.K->key() || !K.eq(A.a, B.a) || !K.eq(A.b, B.b))
    fail(Err::BadArg, "source and target involutions live on different algebras");
  if ((h.inv.kind == InvKind::QuatUnitary) != (target.kind == InvKind::QuatUnitary))
    fail(Err::BadArg, "scaling cannot change the behavior on the center");
  if (K.is_zero(A.nrd(a))) fail(Err::BadArg, "scaling element must be invertible");
  Quat ainv = A.inv(a);
  for (const Quat& x : {A.i(), A.j(), A.k()})
    if (!A.eq(h.inv.apply(x), A.mul(A.mul(ainv, target.apply(x)), a)))
      fail(Err::BadArg, "involutions do not differ by Int(a)");
  Quat ta = target.apply(a);
  int epsp;
  if (A.eq(ta, a))
    epsp = 1;
  else if (A.eq(ta, A.neg(a)))
    epsp = -1;
  else
    fail(Err::NotSymmetric, "a is neither symmetric nor skew under the target involution");
  std::vector<Quat> scaled;
  for (const Quat& g : h.diag) scaled.push_back(A.mul(a, g));
  return herm_make(target, h.eps * epsp, scaled);
}

HermForm herm_morita_inverse(const QuatAlg& A, const QForm& q) {
  const FieldCtx& K = *A.K;
  if (q.K->key() != A.K->key()) fail(Err::BadArg, "form and algebra live over different fields");
  if (q.rank() % 2 != 0) fail(Err::BadArg, "inverse transfer needs even rank");
  auto rep = split_rep(A);
  if (!rep) fail(Err::NotSplit, "no explicit splitting available");
  std::array<Mat2, 4> basis = {rep->one, rep->i, rep->j, rep->k};
  std::vector<Quat> diag;
  for (size_t s = 0; 2 * s < q.rank(); ++s) {
    // J^{-1} diag(d1, d2) is trace zero, so its preimage is gamma-skew.
    Mat2 X;
    X.e[0][0] = K.zero();
    X.e[0][1] = K.neg(q.diag[2 * s + 1]);
    X.e[1][0] = q.diag[2 * s];
    X.e[1][1] = K.zero();
    std::vector<Elem> co = mat2_coords(K, basis, X);
    diag.push_back(A.make(co[0], co[1], co[2], co[3]));
  }
  return herm_make(inv_canonical(A), -1, diag);
}

Elem pfaffian_norm(const HermForm& h0) {
  if (h0.inv.kind != InvKind::QuatCanonical || h0.eps != 1)
    fail(Err::BadArg, "pfaffian norms live over (D, gamma, +1)");
  const QuatAlg& A = *h0.inv.D;
  const FieldCtx& E = *A.K;
  Elem acc = E.one();
  for (const Quat& g : h0.diag) {
    if (!A.is_zero(A.pure_part(g))) fail(Err::BadArg, "diagonal entries must be central");
    acc = E.mul(acc, g.x0);
  }
  size_t r = h0.rank();
  if ((r * (r - 1) / 2) % 2 != 0) acc = E.neg(acc);
  return acc;
}

bool pfaffian_norm_member(const HermForm& h0, const Elem& d) {
  const QuatAlg& A = *h0.inv.D;
  const FieldPtr& E = A.K;
  if (E->is_zero(d)) fail(Err::BadArg, "extension parameter must be nonzero");
  Elem lambda = pfaffian_norm(h0);
  QForm phi = direct_sum(scale_form(norm_form(A), lambda),
                         make_form(E, {E->neg(E->one()), d}));
  return is_isotropic(phi);
}

bool rost_e3_route(const HermForm& h) {
  if (h.inv.kind != InvKind::FieldUnitary)
    fail(Err::BadArg, "the e3 route takes forms over (L, iota)");
  const FieldPtr& E = h.inv.E;
  if (E->kind != FieldKind::Rationals && E->kind != FieldKind::Padic)
    fail(Err::WrongFieldKind, "the e3 route needs Q or Q_p as the fixed field");
  if (h.rank() % 2 != 0) fail(Err::BadArg, "the e3 route needs even rank");
  Elem d = h.inv.L->d;
  Elem dd = herm_disc(h);
  if (!represents(make_form(E, {E->one(), E->neg(d)}), dd))
    fail(Err::NotInI3, "discriminant class is not trivial");
  return arason_e3_nontrivial(trace_form(h));
}

} // namespace witt
