#include "sequences.hpp"

#include <chrono>

#include "rng.hpp"

namespace witt {

namespace {

// E-elem -> L-elem along the inclusion of the base of a quadratic extension.
Elem lift_up(const FieldPtr& L, const Elem& x) { return L->make(x.a, L->base->zero().a); }

// L-elem -> its two E-coordinates along x = e + f sqrt(d).
std::pair<Elem, Elem> coords_down(const FieldPtr& L, const Elem& x) {
  const FieldPtr& E = L->base;
  Scalar z = E->zero().a;
  return {E->make(x.a, z), E->make(x.b, z)};
}

std::string render_elems(const FieldPtr& K, const std::vector<Elem>& xs) {
  std::string s = "<";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += "; ";
    s += K->to_string(xs[i]);
  }
  return s + ">";
}

std::string render_quats(const QuatAlg& A, const std::vector<Quat>& gs) {
  std::string s = "<";
  for (size_t i = 0; i < gs.size(); ++i) {
    if (i) s += "; ";
    s += A.to_string(gs[i]);
  }
  return s + ">";
}

}  // namespace

KeySeqCtx key_make_ctx(const QuatAlg& D, const InvolutionCtx& sigma) {
  if (!is_division(D)) fail(Err::NotDivision, "the key sequence needs a division algebra");
  if (sigma.kind != InvKind::QuatOrthogonal)
    fail(Err::BadArg, "the key sequence needs an orthogonal involution");
  if (!sigma.D || sigma.D->K->key() != D.K->key() || !D.K->eq(sigma.D->a, D.a) ||
      !D.K->eq(sigma.D->b, D.b))
    fail(Err::BadArg, "the involution lives on a different algebra");
  const FieldPtr& E = D.K;
  KeySeqCtx c;
  c.D = D;
  c.sigma = sigma;
  c.tau = inv_canonical(D);
  c.mu = sigma.u;
  // mu = u is automatically sigma-skew: sigma(u) = u gamma(u) u^{-1} = -u.
  if (!D.eq(sigma.apply(c.mu), D.neg(c.mu))) fail(Err::Internal, "u is not sigma-skew");
  c.alpha = E->neg(D.nrd(c.mu));  // mu^2 for pure mu
  Elem two_alpha = E->mul(E->from_int(2), c.alpha);
  // A sigma-symmetric pure complement of mu: project candidates w along
  // w |-> w - (Trd(w mu) / (2 alpha)) mu and keep the first nonzero one.
  const Quat cands[7] = {D.i(),
                         D.j(),
                         D.k(),
                         D.add(D.i(), D.j()),
                         D.add(D.i(), D.k()),
                         D.add(D.j(), D.k()),
                         D.add(D.i(), D.add(D.j(), D.k()))};
  bool found = false;
  for (const Quat& w : cands) {
    Elem t = E->div(D.trd(D.mul(w, c.mu)), two_alpha);
    Quat m = D.sub(w, D.scal(t, c.mu));
    if (D.is_zero(m)) continue;
    c.m = m;
    found = true;
    break;
  }
  if (!found) fail(Err::Internal, "no complement of mu survives projection");
  if (!D.is_pure(c.m) || !D.eq(sigma.apply(c.m), c.m))
    fail(Err::Internal, "complement is not sigma-symmetric pure");
  if (!D.eq(D.mul(c.m, c.mu), D.neg(D.mul(c.mu, c.m))))
    fail(Err::Internal, "complement does not anticommute with mu");
  c.beta = E->neg(D.nrd(c.m));  // m^2
  if (E->is_square(c.beta))
    fail(Err::Internal, "m^2 is a square inside a division algebra");
  c.M = FieldCtx::quadext(E, c.beta);
  c.iota = inv_field_unitary(c.M);
  c.lambda = D.mul(D.inv(c.mu), c.m);
  if (!D.eq(sigma.apply(c.lambda), c.lambda)) fail(Err::Internal, "lambda is not sigma-symmetric");
  return c;
}

Quat key_embed(const KeySeqCtx& c, const Elem& x) {
  auto [e, f] = coords_down(c.M, x);
  return c.D.add(c.D.from_elem(e), c.D.scal(f, c.m));
}

std::pair<Elem, Elem> key_project(const KeySeqCtx& c, const Quat& x) {
  std::vector<Elem> co =
      quat_coords(c.D, {c.D.one(), c.m, c.mu, c.D.mul(c.mu, c.m)}, x);
  return {c.M->make(co[0].a, co[1].a), c.M->make(co[2].a, co[3].a)};
}

HermForm key_pi1(const KeySeqCtx& c, const HermForm& h) {
  if (h.inv.key() != c.tau.key() || h.eps != 1)
    fail(Err::BadArg, "pi1 takes hermitian forms over (D, gamma, +1)");
  const FieldPtr& E = c.D.K;
  std::vector<Elem> out;
  out.reserve(2 * h.diag.size());
  for (const Quat& g : h.diag) {
    if (!c.D.is_zero(c.D.pure_part(g)))
      fail(Err::Internal, "gamma-symmetric entry must be central");
    out.push_back(lift_up(c.M, g.x0));
    out.push_back(lift_up(c.M, E->neg(E->mul(g.x0, c.alpha))));
  }
  return herm_make_field(c.iota, out);
}

HermForm key_rho_tilde(const KeySeqCtx& c, const HermForm& f) {
  if (f.inv.kind != InvKind::FieldUnitary || f.inv.L->key() != c.M->key())
    fail(Err::BadArg, "rho~ takes forms over (M, iota)");
  const FieldPtr& E = c.D.K;
  std::vector<Quat> out;
  out.reserve(f.fdiag.size());
  for (const Elem& x : f.fdiag) {
    auto [e, f2] = coords_down(c.M, x);
    if (!E->is_zero(f2)) fail(Err::Internal, "iota-fixed entry must lie in E");
    out.push_back(c.D.scal(e, c.lambda));
  }
  return herm_make(c.sigma, 1, out);
}

Gram key_pi2_gram(const KeySeqCtx& c, const HermForm& h) {
  if (h.inv.key() != c.sigma.key() || h.eps != 1)
    fail(Err::BadArg, "pi2~ takes hermitian forms over (D, sigma, +1)");
  size_t r = h.rank();
  Gram g(2 * r, std::vector<Elem>(2 * r, c.M->zero()));
  const Quat bas[2] = {c.D.one(), c.mu};
  for (size_t i = 0; i < r; ++i)
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) {
        Quat w = c.D.mul(c.sigma.apply(bas[s]), c.D.mul(h.diag[i], bas[t]));
        g[2 * i + s][2 * i + t] = key_project(c, w).first;
      }
  return g;
}

QForm key_pi2_tilde(const KeySeqCtx& c, const HermForm& h) {
  Gram g = key_pi2_gram(c, h);
  if (h.rank() == 0) return make_form(c.M, {});
  return diagonalize(c.M, g);
}

std::pair<SymbolList, SymbolList> clifford_of_rho_image(const KeySeqCtx& c, const HermForm& f) {
  if (f.inv.kind != InvKind::FieldUnitary || f.inv.L->key() != c.M->key())
    fail(Err::BadArg, "the clifford class takes forms over (M, iota)");
  if (f.rank() % 2 != 0) fail(Err::BadArg, "the clifford class needs even rank");
  Elem delta = herm_disc(f);
  SymbolList one = {{c.beta, delta}};
  SymbolList two = {{c.beta, delta}, {c.D.a, c.D.b}};
  return {one, two};
}

SureshCtx suresh_make_ctx(const FieldPtr& E, const Elem& d, const Elem& a, const Elem& b) {
  if (!E || E->is_ext()) fail(Err::Unsupported, "the base of the tower must not be an extension");
  if (E->is_zero(d)) fail(Err::BadArg, "d must be nonzero");
  if (E->is_square(d)) fail(Err::BadArg, "d must be a nonsquare: the etale case splits");
  SureshCtx c;
  c.E = E;
  c.d = d;
  c.L = FieldCtx::quadext(E, d);
  c.D0 = quat_algebra(E, a, b);
  if (!is_division(c.D0)) fail(Err::NotDivision, "the sequence needs a division algebra over E");
  c.D = quat_algebra(c.L, lift_up(c.L, a), lift_up(c.L, b));
  c.gamma0 = inv_canonical(c.D0);
  c.tau = inv_unitary(c.D);
  return c;
}

Elem suresh_lift(const SureshCtx& c, const Elem& x) { return lift_up(c.L, x); }

HermForm suresh_pi1_tilde(const SureshCtx& c, const QForm& q) {
  if (q.K->key() != c.L->key()) fail(Err::BadArg, "pi1~ takes quadratic forms over L");
  size_t r = q.diag.size();
  if (r == 0) return herm_make(c.gamma0, 1, {});
  const FieldPtr& E = c.E;
  HGram g(2 * r, std::vector<Quat>(2 * r, c.D0.zero()));
  for (size_t i = 0; i < r; ++i) {
    auto [a0, b0] = coords_down(c.L, q.diag[i]);
    Elem bd = E->mul(b0, c.d);
    g[2 * i][2 * i] = c.D0.from_elem(a0);
    g[2 * i][2 * i + 1] = c.D0.from_elem(bd);
    g[2 * i + 1][2 * i] = c.D0.from_elem(bd);
    g[2 * i + 1][2 * i + 1] = c.D0.from_elem(E->mul(a0, c.d));
  }
  return herm_diagonalize(c.gamma0, 1, g);
}

HermForm suresh_pi1_closed(const SureshCtx& c, const Elem& x) {
  if (c.L->is_zero(x)) fail(Err::BadArg, "pi1~ needs a nonzero entry");
  const FieldPtr& E = c.E;
  auto [a0, b0] = coords_down(c.L, x);
  std::vector<Quat> out;
  if (!E->is_zero(a0)) {
    Elem n = E->sub(E->mul(a0, a0), E->mul(E->mul(b0, b0), c.d));
    out = {c.D0.from_elem(a0), c.D0.from_elem(E->mul(E->mul(a0, c.d), n))};
  } else {
    Elem t = E->mul(E->from_int(2), E->mul(b0, c.d));
    out = {c.D0.from_elem(t), c.D0.from_elem(E->neg(t))};
  }
  return herm_make(c.gamma0, 1, out);
}

HermForm suresh_rho_tilde(const SureshCtx& c, const HermForm& h0) {
  if (h0.inv.key() != c.gamma0.key() || h0.eps != 1)
    fail(Err::BadArg, "rho~ takes hermitian forms over (D0, gamma, +1)");
  std::vector<Quat> out;
  out.reserve(h0.diag.size());
  for (const Quat& g : h0.diag) {
    if (!c.D0.is_zero(c.D0.pure_part(g)))
      fail(Err::Internal, "gamma-symmetric entry must be central");
    out.push_back(c.D.from_elem(lift_up(c.L, g.x0)));
  }
  return herm_make(c.tau, 1, out);
}

HermForm suresh_p2(const SureshCtx& c, const HermForm& h) {
  if (h.inv.key() != c.tau.key() || h.eps != 1)
    fail(Err::BadArg, "p2 takes hermitian forms over (D, tau, +1)");
  size_t r = h.rank();
  if (r == 0) return herm_make(c.gamma0, -1, {});
  const FieldPtr& E = c.E;
  HGram g(r, std::vector<Quat>(r, c.D0.zero()));
  for (size_t i = 0; i < r; ++i) {
    const Quat& q = h.diag[i];
    auto [e0, f0] = coords_down(c.L, q.x0);
    if (!E->is_zero(f0)) fail(Err::Internal, "tau-symmetric entry has a skew scalar part");
    const Elem cs[3] = {q.x1, q.x2, q.x3};
    Elem w[3];
    for (int t = 0; t < 3; ++t) {
      auto [e, f] = coords_down(c.L, cs[t]);
      if (!E->is_zero(e)) fail(Err::Internal, "tau-symmetric entry has an iota-fixed pure part");
      w[t] = f;
    }
    g[i][i] = c.D0.make(E->zero(), w[0], w[1], w[2]);
  }
  return herm_diagonalize_mod_radical(c.gamma0, -1, g);
}

QForm suresh_pure_value_form(const SureshCtx& c, const HermForm& h0) {
  if (h0.inv.key() != c.gamma0.key() || h0.eps != 1)
    fail(Err::BadArg, "the pure-value form takes forms over (D0, gamma, +1)");
  const FieldPtr& E = c.E;
  std::vector<Elem> out;
  out.reserve(3 * h0.diag.size());
  for (const Quat& g : h0.diag) {
    Elem ad = E->mul(g.x0, c.d);
    out.push_back(E->mul(ad, c.D0.a));
    out.push_back(E->mul(ad, c.D0.b));
    out.push_back(E->neg(E->mul(ad, E->mul(c.D0.a, c.D0.b))));
  }
  return make_form(E, out);
}

namespace {

struct SampleOut {
  long checks = 0;
  std::vector<Violation> bad;
};

void merge_slots(AuditReport& r, std::vector<SampleOut>& slots) {
  for (auto& s : slots) {
    r.checks += s.checks;
    for (auto& v : s.bad) r.violations.push_back(std::move(v));
  }
}

void validate_params(const SeqAuditParams& p) {
  if (p.samples < 1) fail(Err::BadConfig, "samples must be positive");
  if (p.max_rank < 1 || p.max_rank > 4) fail(Err::BadConfig, "max_rank must be in [1, 4]");
  if (p.kernel < -1 || p.kernel > 1) fail(Err::BadConfig, "kernel must be -1 (auto), 0, or 1");
}

// Audits run where both random generation and the Witt decisions are exact.
void validate_base(const FieldPtr& E) {
  if (!E || (E->kind != FieldKind::Rationals && E->kind != FieldKind::Padic))
    fail(Err::WrongFieldKind, "exactness audits run over Q or Q_p");
}

bool kernel_enabled(const SeqAuditParams& p, bool local) {
  if (p.kernel == 1 && !local)
    fail(Err::Unsupported, "kernel-direction audits need a local base");
  return p.kernel == 1 || (p.kernel == -1 && local);
}

Elem rand_scalar(const FieldPtr& E, Rng& rng) {
  long n = rng.int_in(-9, 9);
  if (n == 0) n = 7;
  Elem x = E->from_int(Int(n));
  if (E->kind == FieldKind::Padic && rng.below(3) == 0) x = E->mul(x, E->from_int(E->p));
  if (E->kind == FieldKind::Rationals && rng.below(4) == 0)
    x = E->div(x, E->from_int(Int(rng.int_in(2, 7))));
  return x;
}

// Value of an explicit Gram-matrix hermitian form at a vector.
Quat hgram_value(const QuatAlg& A, const InvolutionCtx& inv, const HGram& g,
                 const std::vector<Quat>& v) {
  Quat acc = A.zero();
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j)
      acc = A.add(acc, A.mul(inv.apply(v[i]), A.mul(g[i][j], v[j])));
  return acc;
}

// Nondecreasing index tuples of sizes 1..max_rank over a pool of size n,
// in depth-first lexicographic order.
std::vector<std::vector<int>> pool_tuples(int n, int max_rank) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int start, int left) {
    if (left == 0) return;
    for (int k = start; k < n; ++k) {
      cur.push_back(k);
      out.push_back(cur);
      rec(k, left - 1);
      cur.pop_back();
    }
  };
  rec(0, max_rank);
  return out;
}

// Deterministic stride subsample: keeps at most cap tuples, evenly spaced.
std::vector<std::vector<int>> stride_sample(std::vector<std::vector<int>> all, long cap) {
  if (cap <= 0 || static_cast<long>(all.size()) <= cap) return all;
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<size_t>(cap));
  long n = static_cast<long>(all.size());
  for (long j = 0; j < cap; ++j) out.push_back(all[static_cast<size_t>(j * n / cap)]);
  return out;
}

void fill_common_params(AuditReport& rep, const FieldPtr& E, const SeqAuditParams& p) {
  rep.samples = p.samples;
  rep.analog_disclaimer = E->kind == FieldKind::Rationals;
  rep.params["base"] = E->key();
  rep.params["samples"] = std::to_string(p.samples);
  rep.params["seed"] = std::to_string(p.seed);
  rep.params["max_rank"] = std::to_string(p.max_rank);
}

void finish_report(AuditReport& rep, std::chrono::steady_clock::time_point t0) {
  sort_violations(rep);
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
}

}  // namespace

AuditReport key_exactness_audit(const FieldPtr& E, const Elem& a, const Elem& b,
                                const std::vector<Elem>& u_coords, const SeqAuditParams& p) {
  auto t0 = std::chrono::steady_clock::now();
  validate_params(p);
  validate_base(E);
  bool local = E->kind == FieldKind::Padic;
  bool kernel = kernel_enabled(p, local);

  QuatAlg D = quat_algebra(E, a, b);
  Quat u = D.i();
  if (!u_coords.empty()) {
    if (u_coords.size() != 3) fail(Err::BadArg, "u needs exactly three pure coordinates");
    u = D.make(E->zero(), u_coords[0], u_coords[1], u_coords[2]);
  }
  InvolutionCtx sigma = inv_orthogonal(D, u);
  KeySeqCtx c = key_make_ctx(D, sigma);

  AuditReport rep;
  rep.suite = "key-exactness";
  fill_common_params(rep, E, p);
  rep.params["a"] = E->to_string(a);
  rep.params["b"] = E->to_string(b);
  rep.params["u"] = D.to_string(u);
  rep.params["kernel"] = kernel ? "on" : "composite-only";

  // rho~ . pi1: each block of the composite has the exact isotropic vector
  // (mu, 1); the whole image is also decided in the target Witt group.
  {
    std::vector<SampleOut> slots(static_cast<size_t>(p.samples));
    shard_indices(p.samples, [&](long idx) {
      Rng rng(p.seed, static_cast<uint64_t>(idx));
      long r = rng.int_in(1, p.max_rank);
      std::vector<Quat> gs;
      std::vector<Elem> raw;
      for (long t = 0; t < r; ++t) {
        Elem g = rand_scalar(E, rng);
        raw.push_back(g);
        gs.push_back(D.from_elem(g));
      }
      HermForm hs = key_rho_tilde(c, key_pi1(c, herm_make(c.tau, 1, gs)));
      SampleOut& out = slots[static_cast<size_t>(idx)];
      const std::vector<Quat> v = {c.mu, D.one()};
      for (long t = 0; t < r; ++t) {
        HermForm block =
            herm_make(c.sigma, 1, {hs.diag[2 * static_cast<size_t>(t)],
                                   hs.diag[2 * static_cast<size_t>(t) + 1]});
        out.checks++;
        if (!D.is_zero(herm_value(block, v)))
          out.bad.push_back({"rho.pi1", render_elems(E, raw)});
      }
      out.checks++;
      if (!is_witt_trivial(trace_form(hs)))
        out.bad.push_back({"rho.pi1", render_elems(E, raw)});
      if (local) {
        out.checks++;
        if (!herm_witt_trivial(hs)) out.bad.push_back({"rho.pi1", render_elems(E, raw)});
      }
    });
    merge_slots(rep, slots);
  }

  // pi2~ . rho~: the Gram of the composite is zero on the diagonal blockwise,
  // and its diagonalization is Witt trivial over M.
  {
    std::vector<SampleOut> slots(static_cast<size_t>(p.samples));
    shard_indices(p.samples, [&](long idx) {
      Rng rng(p.seed, 1000000 + static_cast<uint64_t>(idx));
      long r = rng.int_in(1, p.max_rank);
      std::vector<Elem> xs;
      std::vector<Elem> raw;
      for (long t = 0; t < r; ++t) {
        Elem x = rand_scalar(E, rng);
        raw.push_back(x);
        xs.push_back(lift_up(c.M, x));
      }
      HermForm hs = key_rho_tilde(c, herm_make_field(c.iota, xs));
      Gram g = key_pi2_gram(c, hs);
      SampleOut& out = slots[static_cast<size_t>(idx)];
      for (size_t t = 0; t < g.size(); ++t) {
        out.checks++;
        if (!c.M->is_zero(g[t][t])) out.bad.push_back({"pi2.rho", render_elems(E, raw)});
      }
      out.checks++;
      if (!is_witt_trivial(key_pi2_tilde(c, hs)))
        out.bad.push_back({"pi2.rho", render_elems(E, raw)});
    });
    merge_slots(rep, slots);
  }

  if (kernel) {
    std::vector<Elem> reps = square_class_reps(*E);
    auto img_tuples = pool_tuples(static_cast<int>(reps.size()), p.max_rank);

    // Kernel of rho~ inside the image of pi1, over (M, iota).
    {
      std::vector<HermForm> pi1_images;
      pi1_images.reserve(img_tuples.size());
      for (const auto& tu : img_tuples) {
        std::vector<Quat> gs;
        for (int k : tu) gs.push_back(D.from_elem(reps[static_cast<size_t>(k)]));
        pi1_images.push_back(key_pi1(c, herm_make(c.tau, 1, gs)));
      }
      auto tuples = stride_sample(img_tuples, p.samples);
      std::vector<SampleOut> slots(tuples.size());
      shard_indices(static_cast<long>(tuples.size()), [&](long idx) {
        std::vector<Elem> raw;
        std::vector<Elem> xs;
        for (int k : tuples[static_cast<size_t>(idx)]) {
          raw.push_back(reps[static_cast<size_t>(k)]);
          xs.push_back(lift_up(c.M, reps[static_cast<size_t>(k)]));
        }
        HermForm f = herm_make_field(c.iota, xs);
        if (!herm_witt_trivial(key_rho_tilde(c, f))) return;
        SampleOut& out = slots[static_cast<size_t>(idx)];
        out.checks++;
        bool found = herm_witt_trivial(f);
        for (size_t k = 0; !found && k < pi1_images.size(); ++k)
          found = herm_witt_equal(f, pi1_images[k]);
        if (!found) out.bad.push_back({"ker-rho-in-im-pi1", render_elems(E, raw)});
      });
      merge_slots(rep, slots);
    }

    // Kernel of pi2~ inside the image of rho~, over (D, sigma, +1). The
    // sigma-symmetric pool spans 1, m, mu m with small coefficients.
    {
      std::vector<HermForm> rho_images;
      rho_images.reserve(img_tuples.size());
      for (const auto& tu : img_tuples) {
        std::vector<Elem> xs;
        for (int k : tu) xs.push_back(lift_up(c.M, reps[static_cast<size_t>(k)]));
        rho_images.push_back(key_rho_tilde(c, herm_make_field(c.iota, xs)));
      }
      std::vector<Quat> pool;
      const Elem coeffs[4] = {E->zero(), E->one(), E->neg(E->one()),
                              local ? E->from_int(E->p) : E->from_int(2)};
      Quat mm = D.mul(c.mu, c.m);
      for (const Elem& e : coeffs)
        for (const Elem& f : coeffs)
          for (const Elem& g : coeffs) {
            Quat q = D.add(D.from_elem(e), D.add(D.scal(f, c.m), D.scal(g, mm)));
            if (D.is_zero(q)) continue;
            pool.push_back(q);
          }
      auto tuples = stride_sample(pool_tuples(static_cast<int>(pool.size()), p.max_rank),
                                  p.samples);
      std::vector<SampleOut> slots(tuples.size());
      shard_indices(static_cast<long>(tuples.size()), [&](long idx) {
        std::vector<Quat> gs;
        for (int k : tuples[static_cast<size_t>(idx)]) gs.push_back(pool[static_cast<size_t>(k)]);
        HermForm h = herm_make(c.sigma, 1, gs);
        if (!is_witt_trivial(key_pi2_tilde(c, h))) return;
        SampleOut& out = slots[static_cast<size_t>(idx)];
        out.checks++;
        bool found = herm_witt_trivial(h);
        for (size_t k = 0; !found && k < rho_images.size(); ++k)
          found = herm_witt_equal(h, rho_images[k]);
        if (!found) out.bad.push_back({"ker-pi2-in-im-rho", render_quats(D, gs)});
      });
      merge_slots(rep, slots);
    }
  }

  finish_report(rep, t0);
  return rep;
}

AuditReport suresh_exactness_audit(const FieldPtr& E, const Elem& d, const Elem& a,
                                   const Elem& b, const SeqAuditParams& p) {
  auto t0 = std::chrono::steady_clock::now();
  validate_params(p);
  validate_base(E);
  bool local = E->kind == FieldKind::Padic;
  bool kernel = kernel_enabled(p, local);

  AuditReport rep;
  rep.suite = "suresh-exactness";
  fill_common_params(rep, E, p);
  rep.params["d"] = E->to_string(d);
  rep.params["a"] = E->to_string(a);
  rep.params["b"] = E->to_string(b);

  if (local && !E->is_zero(d) && E->is_square(d)) {
    // L = E x E is etale, both unitary Witt groups vanish, and every junction
    // is exact for size reasons. Record the branch and return.
    rep.params["branch"] = "split-etale";
    rep.params["kernel"] = "n/a";
    rep.checks = 1;
    finish_report(rep, t0);
    return rep;
  }
  SureshCtx c = suresh_make_ctx(E, d, a, b);
  rep.params["kernel"] = kernel ? "on" : "composite-only";

  const Elem sqd = c.L->make(E->zero().a, E->one().a);

  // rho~ . pi1~: each lifted transfer block is killed by (sqrt d, 1), and the
  // whole composite is decided in W(D, tau) and through its trace form.
  {
    std::vector<SampleOut> slots(static_cast<size_t>(p.samples));
    shard_indices(p.samples, [&](long idx) {
      Rng rng(p.seed, static_cast<uint64_t>(idx));
      long r = rng.int_in(1, p.max_rank);
      std::vector<Elem> xs;
      for (long t = 0; t < r; ++t) {
        long a0 = rng.int_in(-9, 9);
        long b0 = rng.int_in(-9, 9);
        if (a0 == 0 && b0 == 0) a0 = 1;
        xs.push_back(c.L->make(E->from_int(Int(a0)).a, E->from_int(Int(b0)).a));
      }
      QForm q = make_form(c.L, xs);
      SampleOut& out = slots[static_cast<size_t>(idx)];
      const std::vector<Quat> v = {c.D.from_elem(sqd), c.D.one()};
      for (long t = 0; t < r; ++t) {
        auto [a0, b0] = coords_down(c.L, xs[static_cast<size_t>(t)]);
        Elem bd = E->mul(b0, c.d);
        HGram g2(2, std::vector<Quat>(2, c.D.zero()));
        g2[0][0] = c.D.from_elem(lift_up(c.L, a0));
        g2[0][1] = c.D.from_elem(lift_up(c.L, bd));
        g2[1][0] = c.D.from_elem(lift_up(c.L, bd));
        g2[1][1] = c.D.from_elem(lift_up(c.L, E->mul(a0, c.d)));
        out.checks++;
        if (!c.D.is_zero(hgram_value(c.D, c.tau, g2, v)))
          out.bad.push_back({"rho.pi1", render_elems(c.L, xs)});
      }
      HermForm hd = suresh_rho_tilde(c, suresh_pi1_tilde(c, q));
      out.checks++;
      if (!herm_witt_trivial(hd)) out.bad.push_back({"rho.pi1", render_elems(c.L, xs)});
      out.checks++;
      if (!is_witt_trivial(trace_form(hd)))
        out.bad.push_back({"rho.pi1", render_elems(c.L, xs)});
    });
    merge_slots(rep, slots);
  }

  // p2 . rho~: the sqrt(d)-coefficients of central lifts vanish identically,
  // so the reduced skew form is empty.
  {
    std::vector<SampleOut> slots(static_cast<size_t>(p.samples));
    shard_indices(p.samples, [&](long idx) {
      Rng rng(p.seed, 1000000 + static_cast<uint64_t>(idx));
      long r = rng.int_in(1, p.max_rank);
      std::vector<Quat> gs;
      std::vector<Elem> raw;
      for (long t = 0; t < r; ++t) {
        Elem g = rand_scalar(E, rng);
        raw.push_back(g);
        gs.push_back(c.D0.from_elem(g));
      }
      HermForm h0 = herm_make(c.gamma0, 1, gs);
      SampleOut& out = slots[static_cast<size_t>(idx)];
      out.checks++;
      if (suresh_p2(c, suresh_rho_tilde(c, h0)).rank() != 0)
        out.bad.push_back({"p2.rho", render_elems(E, raw)});
    });
    merge_slots(rep, slots);
  }

  if (kernel) {
    std::vector<Elem> reps = square_class_reps(*E);
    auto img_tuples = pool_tuples(static_cast<int>(reps.size()), p.max_rank);

    // Kernel of rho~: forms with Witt-trivial image must satisfy the
    // pfaffian-norm certificate.
    {
      auto tuples = stride_sample(img_tuples, p.samples);
      std::vector<SampleOut> slots(tuples.size());
      shard_indices(static_cast<long>(tuples.size()), [&](long idx) {
        std::vector<Quat> gs;
        std::vector<Elem> raw;
        for (int k : tuples[static_cast<size_t>(idx)]) {
          raw.push_back(reps[static_cast<size_t>(k)]);
          gs.push_back(c.D0.from_elem(reps[static_cast<size_t>(k)]));
        }
        HermForm h0 = herm_make(c.gamma0, 1, gs);
        if (!herm_witt_trivial(suresh_rho_tilde(c, h0))) return;
        SampleOut& out = slots[static_cast<size_t>(idx)];
        out.checks++;
        if (!pfaffian_norm_member(h0, c.d))
          out.bad.push_back({"ker-rho-pfaffian", render_elems(E, raw)});
      });
      merge_slots(rep, slots);
    }

    // Kernel of p2 inside the image of rho~, over (D, tau, +1). Pool entries
    // e + w sqrt(d) with small e and pure w are tau-symmetric.
    {
      std::vector<HermForm> rho_images;
      rho_images.reserve(img_tuples.size());
      for (const auto& tu : img_tuples) {
        std::vector<Quat> gs;
        for (int k : tu) gs.push_back(c.D0.from_elem(reps[static_cast<size_t>(k)]));
        rho_images.push_back(suresh_rho_tilde(c, herm_make(c.gamma0, 1, gs)));
      }
      std::vector<Quat> pool;
      const long evals[3] = {0, 1, -1};
      const Quat wvals[5] = {c.D0.zero(), c.D0.i(), c.D0.j(), c.D0.k(),
                             c.D0.add(c.D0.i(), c.D0.j())};
      for (long e : evals)
        for (const Quat& w : wvals) {
          Quat q = c.D.make(lift_up(c.L, E->from_int(Int(e))),
                            c.L->make(E->zero().a, w.x1.a),
                            c.L->make(E->zero().a, w.x2.a),
                            c.L->make(E->zero().a, w.x3.a));
          if (c.D.is_zero(q) || c.L->is_zero(c.D.nrd(q))) continue;
          pool.push_back(q);
        }
      auto tuples = stride_sample(pool_tuples(static_cast<int>(pool.size()), p.max_rank),
                                  p.samples);
      std::vector<SampleOut> slots(tuples.size());
      shard_indices(static_cast<long>(tuples.size()), [&](long idx) {
        std::vector<Quat> gs;
        for (int k : tuples[static_cast<size_t>(idx)]) gs.push_back(pool[static_cast<size_t>(k)]);
        HermForm h = herm_make(c.tau, 1, gs);
        if (!herm_witt_trivial(suresh_p2(c, h))) return;
        SampleOut& out = slots[static_cast<size_t>(idx)];
        out.checks++;
        bool found = herm_witt_trivial(h);
        for (size_t k = 0; !found && k < rho_images.size(); ++k)
          found = herm_witt_equal(h, rho_images[k]);
        if (!found) out.bad.push_back({"ker-p2-in-im-rho", render_quats(c.D, gs)});
      });
      merge_slots(rep, slots);
    }
  }

  finish_report(rep, t0);
  return rep;
}

AuditReport exactness_audit(const std::string& which, const FieldPtr& base, const Elem& d,
                            const Elem& a, const Elem& b, const SeqAuditParams& p) {
  if (which == "suresh") return suresh_exactness_audit(base, d, a, b, p);
  if (which == "key") return key_exactness_audit(base, a, b, {}, p);
  fail(Err::BadConfig, "which must be key or suresh");
}

}  // namespace witt
