// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lgp/error.hpp"

namespace lgp {

// The ring Z/p^n Z. Moduli are capped at 2^62 so that every product of two
// reduced residues fits in an unsigned 128-bit intermediate.
class PrimePowerModulus {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

  // Validates primality of `prime`, `exponent >= 1` and the modulus cap.
  PrimePowerModulus(std::uint64_t prime, unsigned exponent);

  std::uint64_t prime() const noexcept { return prime_; }
  unsigned exponent() const noexcept { return exponent_; }
  std::uint64_t modulus() const noexcept { return modulus_; }

  // Z/p^k for 1 <= k <= n.
  PrimePowerModulus reduced(unsigned k) const;
  // p^k as an integer, for 0 <= k <= n.
  std::uint64_t power(unsigned k) const;

  std::uint64_t reduce(std::int64_t x) const noexcept;
  std::uint64_t reduce_u(std::uint64_t x) const noexcept { return x % modulus_; }
  std::uint64_t add(std::uint64_t x, std::uint64_t y) const noexcept;
  std::uint64_t sub(std::uint64_t x, std::uint64_t y) const noexcept;
  std::uint64_t neg(std::uint64_t x) const noexcept;
  std::uint64_t mul(std::uint64_t x, std::uint64_t y) const noexcept;
  std::uint64_t pow(std::uint64_t x, std::uint64_t e) const noexcept;
  bool is_unit(std::uint64_t x) const noexcept { return x % prime_ != 0; }
  // Inverse of a unit; throws kInvalidArgument on a non-unit.
  std::uint64_t inverse(std::uint64_t x) const;
  // Number of units, p^(n-1)(p-1).
  std::uint64_t unit_count() const noexcept { return modulus_ / prime_ * (prime_ - 1); }

  std::string to_string() const;

  friend bool operator==(const PrimePowerModulus&, const PrimePowerModulus&) = default;

 private:
  std::uint64_t prime_;
  unsigned exponent_;
  std::uint64_t modulus_;
};

bool is_prime(std::uint64_t n) noexcept;

class Residue {
 public:
  Residue(std::int64_t value, const PrimePowerModulus& mod)
      : value_(mod.reduce(value)), mod_(mod) {}
  static Residue from_unsigned(std::uint64_t value, const PrimePowerModulus& mod) {
    Residue r(0, mod);
    r.value_ = mod.reduce_u(value);
    return r;
  }

  std::uint64_t value() const noexcept { return value_; }
  const PrimePowerModulus& modulus() const noexcept { return mod_; }

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.value_ == b.value_ && a.mod_ == b.mod_;
  }

 private:
  std::uint64_t value_;
  PrimePowerModulus mod_;
};

// Largest k <= n with p^k | x; nullopt stands for infinity (x == 0).
std::optional<unsigned> valuation(const Residue& x);
std::optional<unsigned> valuation(std::uint64_t x, const PrimePowerModulus& mod);

bool is_square(const Residue& x);
bool is_square(std::uint64_t x, const PrimePowerModulus& mod);

// Smallest nonnegative s with s^2 = x, or nullopt if x is not a square.
std::optional<Residue> sqrt_mod(const Residue& x);

// Every x in [0, m) with x^2 + b x + c = 0 (mod m), sorted ascending.
// Throws kCapacity when the root set would exceed 2^24 entries.
std::vector<Residue> quad_roots(const Residue& b, const Residue& c, const PrimePowerModulus& mod);
std::vector<std::uint64_t> quad_roots_raw(std::uint64_t b, std::uint64_t c,
                                          const PrimePowerModulus& mod);
// True iff x^2 + b x + c has a root mod m, without materialising the root set.
bool quad_has_root(std::uint64_t b, std::uint64_t c, const PrimePowerModulus& mod);

// Newton lift of a root of x^2 + b x + c from `approx_root` to the p-adic
// root it approximates, reduced modulo `target`. Requires some k with
// v(f(approx)) >= 2k+1 and v(f'(approx)) <= k; throws kLiftFailure otherwise.
Residue hensel_lift_root(const Residue& b, const Residue& c, const Residue& approx_root,
                         const PrimePowerModulus& target);

}  // namespace lgp
