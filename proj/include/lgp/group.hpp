// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lgp/mat2.hpp"

namespace lgp {

// Matrices packed 16 bits per entry: a | b << 16 | c << 32 | d << 48.
// Needs modulus <= 2^16, which covers every group this library materialises.
class KeyArith {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 16;

  explicit KeyArith(const PrimePowerModulus& mod);

  const PrimePowerModulus& modulus() const noexcept { return mod_; }

  static std::uint64_t pack(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) noexcept {
    return a | (b << 16) | (c << 32) | (d << 48);
  }
  static std::uint64_t entry(std::uint64_t k, int i) noexcept { return (k >> (16 * i)) & 0xffff; }

  std::uint64_t key(const Mat2& m) const;
  Mat2 mat(std::uint64_t k) const;
  std::uint64_t identity() const noexcept { return pack(1, 0, 0, 1); }

  std::uint64_t red(std::uint64_t x) const noexcept { return pow2_ ? (x & mask_) : x % m_; }
  std::uint64_t mul(std::uint64_t x, std::uint64_t y) const noexcept {
    std::uint64_t a = entry(x, 0), b = entry(x, 1), c = entry(x, 2), d = entry(x, 3);
    std::uint64_t e = entry(y, 0), f = entry(y, 1), g = entry(y, 2), h = entry(y, 3);
    return pack(red(a * e + b * g), red(a * f + b * h), red(c * e + d * g), red(c * f + d * h));
  }
  std::uint64_t det(std::uint64_t x) const noexcept {
    return red(entry(x, 0) * entry(x, 3) + m_ * m_ - entry(x, 1) * entry(x, 2));
  }
  std::uint64_t trace(std::uint64_t x) const noexcept { return red(entry(x, 0) + entry(x, 3)); }
  std::uint64_t inv(std::uint64_t x) const;
  // Entrywise reduction to a smaller modulus p^k.
  std::uint64_t reduce_to(std::uint64_t x, std::uint64_t small_modulus) const noexcept {
    return pack(entry(x, 0) % small_modulus, entry(x, 1) % small_modulus, entry(x, 2) % small_modulus,
                entry(x, 3) % small_modulus);
  }
  std::uint64_t order_of(std::uint64_t x) const;

 private:
  PrimePowerModulus mod_;
  std::uint64_t m_;
  bool pow2_;
  std::uint64_t mask_;
};

class MatGroup {
 public:
  static constexpr std::size_t kDefaultCap = std::size_t{1} << 24;

  // Assumes `sorted_elements` is a sorted subgroup generated by `generators`.
  MatGroup(const PrimePowerModulus& mod, std::vector<Mat2> generators, std::vector<std::uint64_t> sorted_elements);

  const PrimePowerModulus& modulus() const noexcept { return mod_; }
  const std::vector<Mat2>& generators() const noexcept { return gens_; }
  const std::vector<std::uint64_t>& keys() const noexcept { return elems_; }
  std::size_t order() const noexcept { return elems_.size(); }
  bool contains(const Mat2& m) const;
  bool contains_key(std::uint64_t k) const;
  Mat2 element(std::size_t i) const;
  std::vector<Mat2> elements() const;
  KeyArith arith() const { return KeyArith(mod_); }

 private:
  PrimePowerModulus mod_;
  std::vector<Mat2> gens_;
  std::vector<std::uint64_t> elems_;
};

MatGroup closure(const std::vector<Mat2>& generators, std::size_t cap = MatGroup::kDefaultCap);
// Closure with an explicit modulus, so an empty generator list gives the trivial group.
MatGroup closure(const PrimePowerModulus& mod, const std::vector<Mat2>& generators,
                 std::size_t cap = MatGroup::kDefaultCap);
// Builds a group from a complete, closed element list and picks a small
// generating set. Throws kStructure if the keys are not closed.
MatGroup group_from_keys(const PrimePowerModulus& mod, std::vector<std::uint64_t> keys);

MatGroup reduce_group(const MatGroup& g, unsigned k);
MatGroup full_gl2(const PrimePowerModulus& mod);
std::uint64_t gl2_order(const PrimePowerModulus& mod);

struct RadicalWitness {
  LineClass line;
  std::vector<int> generator_signs;  // +1 or -1 per generator
};

struct StructureReport {
  std::optional<LineClass> borel;
  std::optional<std::pair<LineClass, LineClass>> split_cartan;
  std::optional<RadicalWitness> radical;
  bool scalar = false;
  bool nonsplit_cartan = false;
  bool det_surjective = false;
  unsigned gl2_level_exponent = 0;
};

std::vector<LineClass> common_fixed_lines(const MatGroup& g);
StructureReport classify(const MatGroup& g);
bool is_borel_contained(const MatGroup& g);
bool is_split_cartan_contained(const MatGroup& g);
bool is_commutative(const MatGroup& g);
bool det_surjective(const MatGroup& g);
std::size_t det_image_order(const MatGroup& g);
// Smallest k with G the full preimage of its image mod p^k.
unsigned gl2_level_exponent(const MatGroup& g);

std::optional<std::pair<unsigned, unsigned>> cartan_borel_factorization(const MatGroup& g);

bool all_square_disc(const MatGroup& g);
bool all_charpoly_root(const MatGroup& g);

// phi(g) = lambda^2 / det on the fixed line, indexed like g.keys().
std::vector<std::uint64_t> ratio_character(const MatGroup& g, const LineClass& line);
MatGroup kernel_K(const MatGroup& g, const LineClass& line_mod_prev);

// P with P G P^-1 = H.
std::optional<Mat2> conjugacy_equivalent(const MatGroup& g, const MatGroup& h);
// P with P G P^-1 contained in H.
std::optional<Mat2> conjugate_into(const MatGroup& g, const MatGroup& h);
MatGroup conjugate_group(const MatGroup& g, const Mat2& p);

struct Fingerprint {
  std::size_t order = 0;
  unsigned level_exponent = 0;
  std::size_t det_image = 0;
  std::vector<std::tuple<std::uint64_t, std::uint64_t, std::size_t>> trace_det;
  std::vector<std::pair<std::uint64_t, std::size_t>> element_orders;

  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const MatGroup& g);

}  // namespace lgp
