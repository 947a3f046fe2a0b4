#include "numbers.hpp"

#include <algorithm>
#include <map>

namespace witt {

long val_p(const Int& n, const Int& p) {
  if (n == 0) fail(Err::BadArg, "valuation of zero");
  Int m = n;
  long v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

long val_p(const Rat& x, const Int& p) {
  if (x == 0) fail(Err::BadArg, "valuation of zero");
  return val_p(Int(x.get_num()), p) - val_p(Int(x.get_den()), p);
}

std::pair<long, Rat> split_p(const Rat& x, const Int& p) {
  long v = val_p(x, p);
  Rat pw;
  Int pv;
  mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v >= 0 ? v : -v));
  Rat u = v >= 0 ? Rat(x / Rat(pv)) : Rat(x * Rat(pv));
  return {v, u};
}

bool is_perfect_square(const Int& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::optional<Int> sqrt_exact(const Int& n) {
  if (!is_perfect_square(n)) return std::nullopt;
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool rat_is_square(const Rat& x) {
  if (x < 0) return false;
  return is_perfect_square(Int(x.get_num())) && is_perfect_square(Int(x.get_den()));
}

std::optional<Rat> rat_sqrt(const Rat& x) {
  if (x < 0) return std::nullopt;
  auto n = sqrt_exact(Int(x.get_num()));
  auto d = sqrt_exact(Int(x.get_den()));
  if (!n || !d) return std::nullopt;
  return Rat(*n) / Rat(*d);
}

int legendre(const Int& a, const Int& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

bool is_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Int next_prime_after(const Int& n) {
  Int r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

namespace {

Int pollard_rho(const Int& n) {
  // n odd composite, not a prime power of a small prime.
  for (unsigned long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      Int diff = x > y ? Int(x - y) : Int(y - x);
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(const Int& n, std::map<Int, int>& acc) {
  if (n == 1) return;
  if (is_prime(n)) {
    acc[n] += 1;
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, acc);
  factor_into(Int(n / d), acc);
}

} // namespace

std::vector<std::pair<Int, int>> factor(const Int& n) {
  if (n == 0) fail(Err::BadArg, "factor of zero");
  Int m = abs(n);
  std::map<Int, int> acc;
  for (Int q = 2; q * q <= m && q < 10000; q = next_prime_after(q)) {
    while (mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) {
      m /= q;
      acc[q] += 1;
    }
  }
  if (m > 1) factor_into(m, acc);
  return {acc.begin(), acc.end()};
}

Int squarefree_part(const Int& n) {
  if (n == 0) fail(Err::BadArg, "squarefree part of zero");
  Int s = n < 0 ? Int(-1) : Int(1);
  for (const auto& [q, e] : factor(n))
    if (e % 2) s *= q;
  return s;
}

std::vector<Int> odd_prime_support(const Rat& x) {
  if (x == 0) fail(Err::BadArg, "support of zero");
  std::vector<Int> out;
  Int m = Int(x.get_num()) * Int(x.get_den());
  for (const auto& [q, e] : factor(m)) {
    (void)e;
    if (q != 2) out.push_back(q);
  }
  return out;
}

Int mod_pow(Int base, Int exp, const Int& mod) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

Int inv_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(Err::NonInvertible, "no inverse mod m");
  return r;
}

Int rat_mod(const Rat& x, const Int& m) {
  Rat xc = x;
  xc.canonicalize();
  Int num = Int(xc.get_num() % m);
  if (num < 0) num += m;
  Int den = Int(xc.get_den() % m);
  Int r = (num * inv_mod(den, m)) % m;
  if (r < 0) r += m;
  return r;
}

} // namespace witt
