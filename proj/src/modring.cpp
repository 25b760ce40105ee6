// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgp/modring.hpp"

#include <algorithm>
#include <limits>

namespace lgp {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr std::size_t kMaxRootCount = std::size_t{1} << 24;
constexpr std::uint64_t kExhaustiveLimit = std::uint64_t{1} << 16;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_signed(i128 x, std::uint64_t m) {
  i128 r = x % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

// Balanced representative in (-m/2, m/2].
std::int64_t balanced(std::uint64_t v, std::uint64_t m) {
  if (v > m / 2) return -static_cast<std::int64_t>(m - v);
  return static_cast<std::int64_t>(v);
}

// Square root of a quadratic residue modulo an odd prime (Tonelli-Shanks).
std::uint64_t tonelli_shanks(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t c = powmod(z, q, p);
  std::uint64_t r = powmod(a, (q + 1) / 2, p);
  std::uint64_t t = powmod(a, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    std::uint64_t tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    r = mulmod(r, b, p);
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    m = i;
  }
  return r;
}

// All square roots of a unit u modulo p^e (e >= 1). Empty if u is a nonresidue.
std::vector<std::uint64_t> unit_square_roots(std::uint64_t u, std::uint64_t p, unsigned e) {
  std::uint64_t m = 1;
  for (unsigned i = 0; i < e; ++i) m *= p;
  u %= m;
  std::vector<std::uint64_t> roots;
  if (p == 2) {
    if (e == 1) {
      roots = {1};
    } else if (e == 2) {
      if (u % 4 == 1) roots = {1, 3};
    } else {
      if (u % 8 != 1) return {};
      std::uint64_t z = 1;
      // z is a root mod 2^k; adjust the (k-1)th bit to reach 2^(k+1).
      for (unsigned k = 3; k < e; ++k) {
        std::uint64_t mk1 = std::uint64_t{1} << (k + 1);
        if ((mulmod(z, z, mk1) + mk1 - u % mk1) % mk1 != 0) z += std::uint64_t{1} << (k - 1);
      }
      std::uint64_t half = m / 2;
      roots = {z % m, (m - z) % m, (z + half) % m, (m - z + half) % m};
    }
  } else {
    if (powmod(u % p, (p - 1) / 2, p) != 1) return {};
    std::uint64_t z = tonelli_shanks(u % p, p);
    std::uint64_t mk = p;
    // Newton: z <- z - (z^2 - u) / (2z), doubling precision each step.
    while (mk < m) {
      mk = (mk > m / mk) ? m : mk * mk;
      std::uint64_t f = (mulmod(z, z, mk) + mk - u % mk) % mk;
      std::uint64_t inv = 0;
      {
        // inverse of 2z mod mk
        i128 a = static_cast<i128>(2 * static_cast<u128>(z) % mk), b = mk, x0 = 1, x1 = 0;
        while (b != 0) {
          i128 q = a / b;
          i128 t = a - q * b;
          a = b;
          b = t;
          t = x0 - q * x1;
          x0 = x1;
          x1 = t;
        }
        inv = reduce_signed(x0, mk);
      }
      z = (z + mk - mulmod(f, inv, mk)) % mk;
    }
    z %= m;
    roots = {z, (m - z) % m};
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

struct SquareDecomposition {
  bool zero = false;
  unsigned v = 0;
  std::uint64_t unit = 0;  // x / p^v, a unit modulo p^(n-v)
};

SquareDecomposition decompose(std::uint64_t x, const PrimePowerModulus& mod) {
  SquareDecomposition d;
  x = mod.reduce_u(x);
  if (x == 0) {
    d.zero = true;
    return d;
  }
  while (x % mod.prime() == 0) {
    x /= mod.prime();
    ++d.v;
  }
  d.unit = x;
  return d;
}

// All y in [0, m) with y^2 = x (mod p^n), p odd or 2.
std::vector<std::uint64_t> all_square_roots(std::uint64_t x, const PrimePowerModulus& mod) {
  const std::uint64_t p = mod.prime();
  const unsigned n = mod.exponent();
  const std::uint64_t m = mod.modulus();
  auto d = decompose(x, mod);
  std::vector<std::uint64_t> out;
  if (d.zero) {
    std::uint64_t step = mod.power((n + 1) / 2);
    std::uint64_t count = m / step;
    if (count > kMaxRootCount) fail(ErrorCode::kCapacity, "square root set too large");
    for (std::uint64_t y = 0; y < m; y += step) out.push_back(y);
    return out;
  }
  if (d.v % 2 != 0) return out;
  unsigned half = d.v / 2;
  auto zs = unit_square_roots(d.unit, p, n - d.v);
  std::uint64_t scale = mod.power(half);
  std::uint64_t period = mod.power(n - half);
  std::uint64_t copies = mod.power(half);
  if (zs.size() * copies > kMaxRootCount) fail(ErrorCode::kCapacity, "square root set too large");
  for (auto z : zs) {
    std::uint64_t base = mulmod(scale, z, m) % period;
    for (std::uint64_t t = 0; t < copies; ++t) out.push_back(base + t * period);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimePowerModulus::PrimePowerModulus(std::uint64_t prime, unsigned exponent)
    : prime_(prime), exponent_(exponent), modulus_(1) {
  if (!is_prime(prime)) fail(ErrorCode::kInvalidArgument, "modulus base " + std::to_string(prime) + " is not prime");
  if (exponent == 0) fail(ErrorCode::kInvalidArgument, "modulus exponent must be at least 1");
  for (unsigned i = 0; i < exponent; ++i) {
    if (modulus_ > kMaxModulus / prime) {
      fail(ErrorCode::kCapacity, "modulus " + std::to_string(prime) + "^" + std::to_string(exponent) + " exceeds 2^62");
    }
    modulus_ *= prime;
  }
}

PrimePowerModulus PrimePowerModulus::reduced(unsigned k) const {
  if (k == 0 || k > exponent_) {
    fail(ErrorCode::kReduction, "cannot reduce " + to_string() + " to exponent " + std::to_string(k));
  }
  return PrimePowerModulus(prime_, k);
}

std::uint64_t PrimePowerModulus::power(unsigned k) const {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= prime_;
  return r;
}

std::uint64_t PrimePowerModulus::reduce(std::int64_t x) const noexcept {
  return reduce_signed(x, modulus_);
}

std::uint64_t PrimePowerModulus::add(std::uint64_t x, std::uint64_t y) const noexcept {
  return static_cast<std::uint64_t>((static_cast<u128>(x) + y) % modulus_);
}

std::uint64_t PrimePowerModulus::sub(std::uint64_t x, std::uint64_t y) const noexcept {
  return x >= y ? x - y : modulus_ - (y - x);
}

std::uint64_t PrimePowerModulus::neg(std::uint64_t x) const noexcept { return x == 0 ? 0 : modulus_ - x; }

std::uint64_t PrimePowerModulus::mul(std::uint64_t x, std::uint64_t y) const noexcept {
  return mulmod(x, y, modulus_);
}

std::uint64_t PrimePowerModulus::pow(std::uint64_t x, std::uint64_t e) const noexcept {
  return powmod(x, e, modulus_);
}

std::uint64_t PrimePowerModulus::inverse(std::uint64_t x) const {
  x %= modulus_;
  if (!is_unit(x)) fail(ErrorCode::kInvalidArgument, std::to_string(x) + " is not a unit mod " + to_string());
  // Euler: x^(phi(m) - 1).
  return powmod(x, unit_count() - 1, modulus_);
}

std::string PrimePowerModulus::to_string() const {
  return std::to_string(prime_) + "^" + std::to_string(exponent_);
}

Residue Residue::operator+(const Residue& o) const {
  if (!(mod_ == o.mod_)) fail(ErrorCode::kInvalidArgument, "residue modulus mismatch");
  return from_unsigned(mod_.add(value_, o.value_), mod_);
}

Residue Residue::operator-(const Residue& o) const {
  if (!(mod_ == o.mod_)) fail(ErrorCode::kInvalidArgument, "residue modulus mismatch");
  return from_unsigned(mod_.sub(value_, o.value_), mod_);
}

Residue Residue::operator*(const Residue& o) const {
  if (!(mod_ == o.mod_)) fail(ErrorCode::kInvalidArgument, "residue modulus mismatch");
  return from_unsigned(mod_.mul(value_, o.value_), mod_);
}

Residue Residue::operator-() const { return from_unsigned(mod_.neg(value_), mod_); }

std::optional<unsigned> valuation(std::uint64_t x, const PrimePowerModulus& mod) {
  x = mod.reduce_u(x);
  if (x == 0) return std::nullopt;
  unsigned v = 0;
  while (x % mod.prime() == 0) {
    x /= mod.prime();
    ++v;
  }
  return v;
}

std::optional<unsigned> valuation(const Residue& x) { return valuation(x.value(), x.modulus()); }

bool is_square(std::uint64_t x, const PrimePowerModulus& mod) {
  auto d = decompose(x, mod);
  if (d.zero) return true;
  if (d.v % 2 != 0) return false;
  const unsigned rest = mod.exponent() - d.v;
  if (mod.prime() == 2) {
    std::uint64_t g = rest >= 3 ? 8 : (std::uint64_t{1} << rest);
    return d.unit % g == 1 % g;
  }
  const std::uint64_t p = mod.prime();
  return powmod(d.unit % p, (p - 1) / 2, p) == 1;
}

bool is_square(const Residue& x) { return is_square(x.value(), x.modulus()); }

std::optional<Residue> sqrt_mod(const Residue& x) {
  const auto& mod = x.modulus();
  auto d = decompose(x.value(), mod);
  if (d.zero) return Residue(0, mod);
  if (!is_square(x)) return std::nullopt;
  auto zs = unit_square_roots(d.unit, mod.prime(), mod.exponent() - d.v);
  if (zs.empty()) fail(ErrorCode::kInternal, "square test and root extraction disagree");
  std::uint64_t scale = mod.power(d.v / 2);
  return Residue::from_unsigned(scale * zs.front(), mod);
}

std::vector<std::uint64_t> quad_roots_raw(std::uint64_t b, std::uint64_t c, const PrimePowerModulus& mod) {
  const std::uint64_t m = mod.modulus();
  b = mod.reduce_u(b);
  c = mod.reduce_u(c);
  std::vector<std::uint64_t> roots;
  if (m <= kExhaustiveLimit) {
    for (std::uint64_t x = 0; x < m; ++x) {
      if ((x * x + b * x + c) % m == 0) roots.push_back(x);
    }
    return roots;
  }
  if (mod.prime() != 2) {
    // (2x + b)^2 = b^2 - 4c.
    std::uint64_t disc = mod.sub(mod.mul(b, b), mod.mul(4 % m, c));
    std::uint64_t inv2 = mod.inverse(2);
    for (auto y : all_square_roots(disc, mod)) roots.push_back(mod.mul(mod.sub(y, b), inv2));
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  // Branch-and-lift one bit at a time.
  std::vector<std::uint64_t> level;
  for (std::uint64_t x = 0; x < 2; ++x) {
    if ((x * x + b * x + c) % 2 == 0) level.push_back(x);
  }
  for (unsigned k = 1; k < mod.exponent(); ++k) {
    std::uint64_t mk1 = std::uint64_t{1} << (k + 1);
    std::uint64_t bit = std::uint64_t{1} << k;
    std::vector<std::uint64_t> next;
    for (auto r : level) {
      for (std::uint64_t cand : {r, r + bit}) {
        std::uint64_t f = (mulmod(cand, cand, mk1) + mulmod(b % mk1, cand, mk1) + c % mk1) % mk1;
        if (f == 0) next.push_back(cand);
      }
    }
    if (next.size() > kMaxRootCount) fail(ErrorCode::kCapacity, "quadratic root set too large");
    level.swap(next);
  }
  std::sort(level.begin(), level.end());
  return level;
}

std::vector<Residue> quad_roots(const Residue& b, const Residue& c, const PrimePowerModulus& mod) {
  std::vector<Residue> out;
  for (auto r : quad_roots_raw(mod.reduce_u(b.value()), mod.reduce_u(c.value()), mod)) {
    out.push_back(Residue::from_unsigned(r, mod));
  }
  return out;
}

bool quad_has_root(std::uint64_t b, std::uint64_t c, const PrimePowerModulus& mod) {
  b = mod.reduce_u(b);
  c = mod.reduce_u(c);
  if (mod.prime() != 2) {
    return is_square(mod.sub(mod.mul(b, b), mod.mul(4 % mod.modulus(), c)), mod);
  }
  if (b % 2 == 1) return c % 2 == 0;
  // (x + b/2)^2 = (b/2)^2 - c.
  std::uint64_t h = b / 2;
  return is_square(mod.sub(mod.mul(h, h), c), mod);
}

Residue hensel_lift_root(const Residue& b, const Residue& c, const Residue& approx_root,
                         const PrimePowerModulus& target) {
  const std::uint64_t p = target.prime();
  if (b.modulus().prime() != p || c.modulus().prime() != p || approx_root.modulus().prime() != p) {
    fail(ErrorCode::kInvalidArgument, "hensel lift needs coefficients and root over the target prime");
  }
  const i128 bi = balanced(b.value(), b.modulus().modulus());
  const i128 ci = balanced(c.value(), c.modulus().modulus());
  i128 alpha = approx_root.value();
  const i128 deriv = 2 * alpha + bi;
  if (deriv == 0) fail(ErrorCode::kLiftFailure, "derivative vanishes at the approximate root");
  unsigned k = 0;
  for (i128 t = deriv < 0 ? -deriv : deriv; t % p == 0; t /= p) ++k;
  if (2 * k + 1 > target.exponent()) {
    fail(ErrorCode::kLiftFailure, "derivative valuation too large for the target precision");
  }
  const PrimePowerModulus work(p, target.exponent() + k);
  const std::uint64_t wm = work.modulus();
  auto f_at = [&](std::uint64_t x) {
    std::uint64_t bx = work.mul(reduce_signed(bi, wm), x);
    return work.add(work.add(work.mul(x, x), bx), reduce_signed(ci, wm));
  };
  std::uint64_t x = reduce_signed(alpha, wm);
  std::uint64_t fx = f_at(x);
  auto vf = valuation(fx, work);
  if (vf && *vf < 2 * k + 1) fail(ErrorCode::kLiftFailure, "approximate root is not close enough to a root");
  const std::uint64_t pk = target.power(k);
  while (fx != 0) {
    std::uint64_t dx = work.add(work.mul(2, x), reduce_signed(bi, wm));
    std::uint64_t unit = (dx / pk) % wm;
    // f(x) / p^k is exact; the quotient only matters modulo p^n.
    std::uint64_t quotient = fx / pk;
    std::uint64_t step = target.mul(target.reduce_u(quotient), target.inverse(target.reduce_u(unit)));
    x = work.sub(x, step % wm);
    std::uint64_t next = f_at(x);
    auto vn = valuation(next, work);
    if (vn && vf && *vn <= *vf) fail(ErrorCode::kInternal, "newton iteration failed to converge");
    fx = next;
    vf = vn;
  }
  return Residue::from_unsigned(x, target);
}

}  // namespace lgp
