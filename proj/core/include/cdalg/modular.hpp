#pragma once

#include <cstdint>
#include <optional>

namespace cdalg::modular {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  const std::uint64_t s = a + b;
  return (s >= p || s < a) ? s - p : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

inline std::uint64_t neg(std::uint64_t a, std::uint64_t p) { return a == 0 ? 0 : p - a; }

__extension__ using uint128 = unsigned __int128;
__extension__ using int128 = __int128;

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % p);
}

std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p);

/// Inverse of a nonzero residue (p prime).
std::uint64_t inv(std::uint64_t a, std::uint64_t p);

/// Reduces a signed integer into [0, p).
std::uint64_t reduce(std::int64_t v, std::uint64_t p);

/// Legendre symbol (a/p) for odd prime p: 0, 1 or -1.
int legendre(std::uint64_t a, std::uint64_t p);

/// Smallest r in [0, p) with r^2 = a, if a is a square mod p.
std::optional<std::uint64_t> sqrt(std::uint64_t a, std::uint64_t p);

bool is_prime(std::uint64_t n);

}  // namespace cdalg::modular
