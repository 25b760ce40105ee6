// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lgp/modring.hpp"

namespace lgp {

// Row-major [[a,b],[c,d]] with entries reduced into [0, m).
class Mat2 {
 public:
  Mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, const PrimePowerModulus& mod);
  static Mat2 from_unsigned(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d,
                            const PrimePowerModulus& mod);
  static Mat2 identity(const PrimePowerModulus& mod) { return from_unsigned(1, 0, 0, 1, mod); }
  static Mat2 scalar(std::uint64_t s, const PrimePowerModulus& mod) { return from_unsigned(s, 0, 0, s, mod); }

  std::uint64_t a() const noexcept { return e_[0]; }
  std::uint64_t b() const noexcept { return e_[1]; }
  std::uint64_t c() const noexcept { return e_[2]; }
  std::uint64_t d() const noexcept { return e_[3]; }
  const std::array<std::uint64_t, 4>& entries() const noexcept { return e_; }
  const PrimePowerModulus& modulus() const noexcept { return mod_; }

  std::uint64_t trace() const noexcept;
  std::uint64_t det() const noexcept;
  std::uint64_t disc() const noexcept;
  bool is_invertible() const noexcept { return mod_.is_unit(det()); }
  bool is_scalar() const noexcept { return e_[1] == 0 && e_[2] == 0 && e_[0] == e_[3]; }

  Mat2 operator*(const Mat2& o) const;
  // Throws kSingularConjugator when det is not a unit.
  Mat2 inverse() const;
  Mat2 pow(std::uint64_t e) const;

  std::string to_string() const;

  friend bool operator==(const Mat2& x, const Mat2& y) { return x.e_ == y.e_ && x.mod_ == y.mod_; }

 private:
  Mat2(const std::array<std::uint64_t, 4>& e, const PrimePowerModulus& mod) : e_(e), mod_(mod) {}
  std::array<std::uint64_t, 4> e_;
  PrimePowerModulus mod_;
};

struct MatInvariants {
  Residue trace;
  Residue det;
  Residue disc;
};

MatInvariants invariants_of(const Mat2& m);
bool char_poly_has_root(const Mat2& m);

// Cyclic direct summand of (Z/p^n)^2, stored canonically as (1, y) or (x, 1) with p | x.
class LineClass {
 public:
  // Canonicalises a primitive vector; throws kInvalidArgument if (x, y) = (0, 0) mod p.
  LineClass(std::int64_t x, std::int64_t y, const PrimePowerModulus& mod);
  static LineClass from_unsigned(std::uint64_t x, std::uint64_t y, const PrimePowerModulus& mod);

  std::uint64_t x() const noexcept { return x_; }
  std::uint64_t y() const noexcept { return y_; }
  const PrimePowerModulus& modulus() const noexcept { return mod_; }
  LineClass reduce(unsigned k) const;
  // Dense index in [0, p^(n-1)(p+1)).
  std::uint64_t index() const noexcept;
  std::string to_string() const;

  friend bool operator==(const LineClass& u, const LineClass& v) {
    return u.x_ == v.x_ && u.y_ == v.y_ && u.mod_ == v.mod_;
  }
  friend bool operator<(const LineClass& u, const LineClass& v) { return u.index() < v.index(); }

 private:
  LineClass(std::uint64_t x, std::uint64_t y, const PrimePowerModulus& mod, bool) : x_(x), y_(y), mod_(mod) {}
  std::uint64_t x_;
  std::uint64_t y_;
  PrimePowerModulus mod_;
};

std::vector<LineClass> all_lines(const PrimePowerModulus& mod);
bool fixes_line(const Mat2& m, const LineClass& line);
// Eigenvalue of m on a line it fixes.
std::uint64_t eigenvalue_on(const Mat2& m, const LineClass& line);
std::vector<LineClass> fixed_lines(const Mat2& m);
// True when u and v span the whole module, i.e. are independent mod p.
bool independent_mod_p(const LineClass& u, const LineClass& v);

LineClass lift_eigenline(const Mat2& m, const LineClass& known_line_mod_ell);

// P * M * P^-1.
Mat2 conjugate(const Mat2& m, const Mat2& p);
Mat2 reduce(const Mat2& m, unsigned k);

// "[[a,b],[c,d]]"; negative entries allowed. Throws kParse.
Mat2 parse_mat2(const std::string& text, const PrimePowerModulus& mod);

}  // namespace lgp
