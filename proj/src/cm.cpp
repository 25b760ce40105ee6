// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgp/cm.hpp"

#include <cmath>
#include <sstream>

#include "lgp/error.hpp"
#include "lgp/genus.hpp"

namespace lgp {

namespace {

bool squarefree(std::int64_t n) {
  for (auto [p, e] : factor_integer(static_cast<std::uint64_t>(n < 0 ? -n : n))) {
    (void)p;
    if (e > 1) return false;
  }
  return true;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  fail(ErrorCode::kParse, "not a boolean: " + v);
}

}  // namespace

bool is_fundamental_discriminant(std::int64_t d) noexcept {
  if (d >= 0) return false;
  const std::int64_t r = ((d % 16) + 16) % 16;
  if (r % 4 == 1) return squarefree(d);
  if (r == 8 || r == 12) return squarefree(d / 4);
  return false;
}

ImagQuadDisc::ImagQuadDisc(std::int64_t d) : d_(d) {
  if (!is_fundamental_discriminant(d)) {
    fail(ErrorCode::kInvalidArgument, "not a negative fundamental discriminant: " + std::to_string(d));
  }
}

unsigned ImagQuadDisc::unit_count() const noexcept { return d_ == -3 ? 6 : d_ == -4 ? 4 : 2; }

int kronecker_symbol(std::int64_t d, std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::kInvalidArgument, "kronecker symbol needs a prime");
  const std::int64_t ip = static_cast<std::int64_t>(p);
  const std::int64_t r = ((d % ip) + ip) % ip;
  if (p == 2) {
    if (r == 0) return 0;
    const std::int64_t r8 = ((d % 8) + 8) % 8;
    return (r8 == 1 || r8 == 7) ? 1 : -1;
  }
  if (r == 0) return 0;
  PrimePowerModulus fp(p, 1);
  return fp.pow(static_cast<std::uint64_t>(r), (p - 1) / 2) == 1 ? 1 : -1;
}

FieldFlags parse_field_flags(const std::string& text) {
  FieldFlags f;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorCode::kParse, "flag without value: " + item);
    std::string k = item.substr(0, eq), v = item.substr(eq + 1);
    if (k == "f_in_k") f.f_in_k = parse_bool(v);
    else if (k == "sqrt_ell_in_k") f.sqrt_ell_in_k = parse_bool(v);
    else if (k == "kf_eq_sqrt_neg_ell") f.kf_eq_sqrt_neg_ell = parse_bool(v);
    else if (k == "sqrt2_in_k") f.sqrt2_in_k = parse_bool(v);
    else if (k == "kf_eq_sqrt_neg2") f.kf_eq_sqrt_neg2 = parse_bool(v);
    else if (k == "deg_k" || k == "index_d") {
      std::uint64_t x = 0;
      try {
        x = std::stoull(v);
      } catch (const std::exception&) {
        fail(ErrorCode::kParse, "bad integer for " + k);
      }
      if (x == 0) fail(ErrorCode::kInvalidArgument, k + " must be positive");
      (k == "deg_k" ? f.deg_k : f.index_d) = x;
    } else {
      fail(ErrorCode::kParse, "unknown flag: " + k);
    }
  }
  return f;
}

std::uint64_t cartan_order(std::uint64_t ell, unsigned n, const ImagQuadDisc& d) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "exponent must be positive");
  const std::uint64_t q = ipow(ell, n - 1);
  const std::int64_t chi = kronecker_symbol(d.value(), ell);
  return q * q * (ell - 1) * static_cast<std::uint64_t>(static_cast<std::int64_t>(ell) - chi);
}

Mat2 cartan_element(const ImagQuadDisc& d, std::uint64_t a, std::uint64_t b, const PrimePowerModulus& mod) {
  const std::int64_t dv = d.value();
  const std::int64_t top = dv * (1 - dv) / 4;
  const std::uint64_t bb = mod.reduce_u(b), aa = mod.reduce_u(a);
  return Mat2::from_unsigned(aa, mod.mul(bb, mod.reduce(top)), bb, mod.add(aa, mod.mul(bb, mod.reduce(dv))), mod);
}

MatGroup build_cartan(const ImagQuadDisc& d, const PrimePowerModulus& mod) {
  if (mod.modulus() > KeyArith::kMaxModulus) fail(ErrorCode::kCapacity, "modulus above 2^16");
  KeyArith ar(mod);
  std::vector<std::uint64_t> keys;
  for (std::uint64_t a = 0; a < mod.modulus(); ++a) {
    for (std::uint64_t b = 0; b < mod.modulus(); ++b) {
      Mat2 g = cartan_element(d, a, b, mod);
      if (g.is_invertible()) keys.push_back(ar.key(g));
    }
  }
  return group_from_keys(mod, std::move(keys));
}

Mat2 conjugation_element(const ImagQuadDisc& d, const PrimePowerModulus& mod) {
  return Mat2(1, d.value(), 0, -1, mod);
}

const char* splitting_name(Splitting s) noexcept {
  switch (s) {
    case Splitting::kSplit: return "split";
    case Splitting::kInert: return "inert";
    case Splitting::kRamified: return "ramified";
  }
  return "?";
}

Splitting splitting_of(std::uint64_t ell, const ImagQuadDisc& d) {
  const int k = kronecker_symbol(d.value(), ell);
  return k == 0 ? Splitting::kRamified : k == 1 ? Splitting::kSplit : Splitting::kInert;
}

const char* bullet_name(SplitBullet b) noexcept {
  switch (b) {
    case SplitBullet::kNone: return "none";
    case SplitBullet::kCmFieldInK: return "cm-field-in-k";
    case SplitBullet::kOneModFour: return "one-mod-four";
    case SplitBullet::kThreeModFour: return "three-mod-four";
    case SplitBullet::kSmallTwoPower: return "small-two-power";
    case SplitBullet::kTwoWithSqrt2: return "two-with-sqrt2";
  }
  return "?";
}

CmCaseReport classify_prime_power_cm(std::uint64_t ell, unsigned n, const ImagQuadDisc& d, const FieldFlags& flags) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "exponent must be positive");
  CmCaseReport r;
  r.ell = ell;
  r.n = n;
  r.disc = d.value();
  r.splitting = splitting_of(ell, d);
  r.universal_bound = std::pow(static_cast<double>(ell), n / 4.0);

  // Piecewise index bound; the rows never overlap when read literally.
  std::uint64_t bound = 0;
  if ((n >= 4 && n % 2 == 0) || (ell % 2 == 1 && n == 2)) bound = std::max(bound, ipow(ell, n / 2 - 1) * (ell - 1));
  if (n >= 3 && n % 2 == 1) bound = std::max(bound, ipow(ell, (n - 1) / 2));
  if (n == 1 || (ell == 2 && n == 2)) bound = std::max(bound, ell);
  r.index_bound = bound;

  if (r.splitting == Splitting::kRamified && n == 1) {
    r.which = CmCase::kRamifiedGlobal;
    r.locally_everywhere = r.global_isogeny = true;
    return r;
  }
  if (r.splitting == Splitting::kSplit) {
    const std::uint64_t q = ipow(ell, n);
    SplitBullet b = SplitBullet::kNone;
    if (flags.f_in_k) b = SplitBullet::kCmFieldInK;
    else if (q == 2 || q == 4) b = SplitBullet::kSmallTwoPower;
    else if (ell % 4 == 1 && flags.sqrt_ell_in_k) b = SplitBullet::kOneModFour;
    else if (ell % 4 == 3 && flags.kf_eq_sqrt_neg_ell) b = SplitBullet::kThreeModFour;
    else if (ell == 2 && n >= 3 && flags.sqrt2_in_k && flags.kf_eq_sqrt_neg2) b = SplitBullet::kTwoWithSqrt2;
    if (b != SplitBullet::kNone) {
      r.which = CmCase::kSplit;
      r.bullet = b;
      r.locally_everywhere = true;
      r.global_isogeny = b == SplitBullet::kCmFieldInK || b == SplitBullet::kSmallTwoPower;
      r.exceptional = !r.global_isogeny;
      return r;
    }
  }
  // Everything else needs a small image: an index at least the bound.
  r.which = CmCase::kIndexBound;
  return r;
}

std::uint64_t exhaustive_root_index(std::uint64_t ell, unsigned n, const ImagQuadDisc& d) {
  PrimePowerModulus mod(ell, n);
  if (mod.modulus() > KeyArith::kMaxModulus) fail(ErrorCode::kCapacity, "modulus above 2^16");
  KeyArith ar(mod);
  std::vector<std::uint64_t> good;
  std::uint64_t total = 0;
  for (std::uint64_t a = 0; a < mod.modulus(); ++a) {
    for (std::uint64_t b = 0; b < mod.modulus(); ++b) {
      Mat2 g = cartan_element(d, a, b, mod);
      if (!g.is_invertible()) continue;
      ++total;
      if (char_poly_has_root(g)) good.push_back(ar.key(g));
    }
  }
  try {
    auto sub = group_from_keys(mod, std::move(good));
    return total / sub.order();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kStructure) throw;
    return 0;
  }
}

ABCFactorization abc_factorization(std::uint64_t N, const ImagQuadDisc& d, const FieldFlags& flags) {
  if (N == 0) fail(ErrorCode::kInvalidArgument, "N must be positive");
  ABCFactorization out;
  for (auto [p, e] : factor_integer(N)) {
    auto rep = classify_prime_power_cm(p, e, d, flags);
    const std::uint64_t q = ipow(p, e);
    if (rep.global_isogeny) out.B *= q;
    else if (rep.exceptional) out.C *= q;
    else out.A *= q;
  }
  const std::uint64_t w = d.unit_count() * flags.index_d;
  out.A_bound = w * w * w * w;
  out.a_within_bound = out.A <= out.A_bound;
  return out;
}

}  // namespace lgp
