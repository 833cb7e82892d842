#include "cdalg/modular.hpp"

#include <gmp.h>

namespace cdalg::modular {

std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = mul(result, base, p);
    base = mul(base, base, p);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) { return pow(a, p - 2, p); }

std::uint64_t reduce(std::int64_t v, std::uint64_t p) {
  const auto sp = static_cast<int128>(p);
  int128 r = static_cast<int128>(v) % sp;
  if (r < 0) r += sp;
  return static_cast<std::uint64_t>(r);
}

int legendre(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  return pow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::optional<std::uint64_t> sqrt(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (legendre(a, p) != 1) return std::nullopt;

  std::uint64_t r = 0;
  if (p % 4 == 3) {
    r = pow(a, (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while ((q & 1U) == 0) {
      q >>= 1U;
      ++s;
    }
    std::uint64_t z = 2;
    while (legendre(z, p) != -1) ++z;
    unsigned m = s;
    std::uint64_t c = pow(z, q, p);
    std::uint64_t t = pow(a, q, p);
    r = pow(a, (q + 1) / 2, p);
    while (t != 1) {
      unsigned i = 0;
      std::uint64_t tt = t;
      while (tt != 1) {
        tt = mul(tt, tt, p);
        ++i;
      }
      std::uint64_t b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = mul(b, b, p);
      m = i;
      c = mul(b, b, p);
      t = mul(t, c, p);
      r = mul(r, b, p);
    }
  }
  const std::uint64_t other = neg(r, p);
  return other < r ? other : r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  mpz_t z;
  mpz_init_set_ui(z, 0);
  mpz_import(z, 1, 1, sizeof(n), 0, 0, &n);
  const int verdict = mpz_probab_prime_p(z, 30);
  mpz_clear(z);
  return verdict != 0;
}

}  // namespace cdalg::modular
