#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"

namespace witt {

using Int = mpz_class;
using Rat = mpq_class;

// p-adic valuation of a nonzero integer. Errors on zero.
long val_p(const Int& n, const Int& p);
// p-adic valuation of a nonzero rational.
long val_p(const Rat& x, const Int& p);

// x = p^v * u with u a p-unit; returns (v, u).
std::pair<long, Rat> split_p(const Rat& x, const Int& p);

bool is_perfect_square(const Int& n);
// Exact integer square root if n is a perfect square.
std::optional<Int> sqrt_exact(const Int& n);

bool rat_is_square(const Rat& x);
std::optional<Rat> rat_sqrt(const Rat& x);

// Legendre symbol (a|p) for odd prime p: +1, -1, or 0 when p | a.
int legendre(const Int& a, const Int& p);

bool is_prime(const Int& n);
Int next_prime_after(const Int& n);

// Prime factorization n = prod q_i^e_i, n != 0; sign dropped.
// Trial division below 10^4 then Pollard rho; desk-scale inputs only.
std::vector<std::pair<Int, int>> factor(const Int& n);

// Largest squarefree s with n = s * t^2 (sign preserved, n != 0).
Int squarefree_part(const Int& n);

// Odd primes dividing numerator or denominator.
std::vector<Int> odd_prime_support(const Rat& x);

Int mod_pow(Int base, Int exp, const Int& mod);
// Inverse of a mod m; errors NonInvertible when gcd(a,m) != 1.
Int inv_mod(const Int& a, const Int& m);

// Representative of x in [0, m) for a p-unit rational x (denominator coprime to m).
Int rat_mod(const Rat& x, const Int& m);

} // namespace witt
