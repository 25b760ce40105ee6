// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgp/mat2.hpp"

#include <json.hpp>

#include "lgp/error.hpp"

namespace lgp {

Mat2::Mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, const PrimePowerModulus& mod)
    : e_{mod.reduce(a), mod.reduce(b), mod.reduce(c), mod.reduce(d)}, mod_(mod) {}

Mat2 Mat2::from_unsigned(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d,
                         const PrimePowerModulus& mod) {
  return Mat2({mod.reduce_u(a), mod.reduce_u(b), mod.reduce_u(c), mod.reduce_u(d)}, mod);
}

std::uint64_t Mat2::trace() const noexcept { return mod_.add(e_[0], e_[3]); }

std::uint64_t Mat2::det() const noexcept { return mod_.sub(mod_.mul(e_[0], e_[3]), mod_.mul(e_[1], e_[2])); }

std::uint64_t Mat2::disc() const noexcept {
  std::uint64_t t = trace();
  return mod_.sub(mod_.mul(t, t), mod_.mul(mod_.reduce_u(4), det()));
}

Mat2 Mat2::operator*(const Mat2& o) const {
  if (!(mod_ == o.mod_)) fail(ErrorCode::kInvalidArgument, "matrix modulus mismatch");
  const auto& m = mod_;
  return Mat2({m.add(m.mul(e_[0], o.e_[0]), m.mul(e_[1], o.e_[2])),
               m.add(m.mul(e_[0], o.e_[1]), m.mul(e_[1], o.e_[3])),
               m.add(m.mul(e_[2], o.e_[0]), m.mul(e_[3], o.e_[2])),
               m.add(m.mul(e_[2], o.e_[1]), m.mul(e_[3], o.e_[3]))},
              m);
}

Mat2 Mat2::inverse() const {
  std::uint64_t dt = det();
  if (!mod_.is_unit(dt)) fail(ErrorCode::kSingularConjugator, "matrix " + to_string() + " is not invertible");
  std::uint64_t inv = mod_.inverse(dt);
  return Mat2({mod_.mul(e_[3], inv), mod_.mul(mod_.neg(e_[1]), inv), mod_.mul(mod_.neg(e_[2]), inv),
               mod_.mul(e_[0], inv)},
              mod_);
}

Mat2 Mat2::pow(std::uint64_t e) const {
  Mat2 r = identity(mod_);
  Mat2 base = *this;
  while (e != 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

std::string Mat2::to_string() const {
  return "[[" + std::to_string(e_[0]) + "," + std::to_string(e_[1]) + "],[" + std::to_string(e_[2]) + "," +
         std::to_string(e_[3]) + "]]";
}

MatInvariants invariants_of(const Mat2& m) {
  const auto& mod = m.modulus();
  return {Residue::from_unsigned(m.trace(), mod), Residue::from_unsigned(m.det(), mod),
          Residue::from_unsigned(m.disc(), mod)};
}

bool char_poly_has_root(const Mat2& m) {
  const auto& mod = m.modulus();
  return quad_has_root(mod.neg(m.trace()), m.det(), mod);
}

LineClass::LineClass(std::int64_t x, std::int64_t y, const PrimePowerModulus& mod)
    : LineClass(from_unsigned(mod.reduce(x), mod.reduce(y), mod)) {}

LineClass LineClass::from_unsigned(std::uint64_t x, std::uint64_t y, const PrimePowerModulus& mod) {
  x = mod.reduce_u(x);
  y = mod.reduce_u(y);
  if (mod.is_unit(x)) return LineClass(1, mod.mul(y, mod.inverse(x)), mod, true);
  if (mod.is_unit(y)) return LineClass(mod.mul(x, mod.inverse(y)), 1, mod, true);
  fail(ErrorCode::kInvalidArgument, "vector (" + std::to_string(x) + "," + std::to_string(y) + ") is not primitive");
}

LineClass LineClass::reduce(unsigned k) const {
  auto small = mod_.reduced(k);
  return from_unsigned(x_, y_, small);
}

std::uint64_t LineClass::index() const noexcept {
  if (x_ == 1) return y_;
  return mod_.modulus() + x_ / mod_.prime();
}

std::string LineClass::to_string() const { return "(" + std::to_string(x_) + "," + std::to_string(y_) + ")"; }

std::vector<LineClass> all_lines(const PrimePowerModulus& mod) {
  std::vector<LineClass> out;
  const std::uint64_t m = mod.modulus();
  out.reserve(m + m / mod.prime());
  for (std::uint64_t y = 0; y < m; ++y) out.push_back(LineClass::from_unsigned(1, y, mod));
  for (std::uint64_t x = 0; x < m; x += mod.prime()) out.push_back(LineClass::from_unsigned(x, 1, mod));
  return out;
}

bool fixes_line(const Mat2& m, const LineClass& line) {
  const auto& mod = m.modulus();
  const std::uint64_t x = line.x(), y = line.y();
  if (x == 1) {
    // M(1,y) = (a + b y, c + d y) must equal (a + b y)(1, y).
    std::uint64_t lam = mod.add(m.a(), mod.mul(m.b(), y));
    return mod.add(m.c(), mod.mul(m.d(), y)) == mod.mul(lam, y);
  }
  // M(x,1) = (a x + b, c x + d) must equal (c x + d)(x, 1).
  std::uint64_t lam = mod.add(mod.mul(m.c(), x), m.d());
  return mod.add(mod.mul(m.a(), x), m.b()) == mod.mul(lam, x);
}

std::uint64_t eigenvalue_on(const Mat2& m, const LineClass& line) {
  const auto& mod = m.modulus();
  if (mod.is_unit(line.x())) return mod.add(m.a(), mod.mul(m.b(), line.y()));
  return mod.add(mod.mul(m.c(), line.x()), m.d());
}

std::vector<LineClass> fixed_lines(const Mat2& m) {
  std::vector<LineClass> out;
  for (const auto& line : all_lines(m.modulus())) {
    if (fixes_line(m, line)) out.push_back(line);
  }
  return out;
}

bool independent_mod_p(const LineClass& u, const LineClass& v) {
  const auto& mod = u.modulus();
  std::uint64_t det = mod.sub(mod.mul(u.x(), v.y()), mod.mul(u.y(), v.x()));
  return mod.is_unit(det);
}

LineClass lift_eigenline(const Mat2& m, const LineClass& known) {
  const auto& mod = m.modulus();
  const std::uint64_t p = mod.prime();
  if (!(known.modulus() == PrimePowerModulus(p, 1))) {
    fail(ErrorCode::kInvalidArgument, "known line must be given modulo the prime");
  }
  const Mat2 low = reduce(m, 1);
  auto low_roots = quad_roots_raw(low.modulus().neg(low.trace()), low.det(), low.modulus());
  if (low_roots.size() != 2) fail(ErrorCode::kNonSeparable, "matrix has no two distinct eigenvalues mod p");
  if (!fixes_line(low, known)) fail(ErrorCode::kNonSeparable, "line is not an eigenline mod p");

  // Work in whichever affine chart contains the known line; lift the chart
  // coordinate one p-adic digit at a time. Separability makes each digit unique.
  const bool first_chart = known.x() == 1;
  std::uint64_t coord = first_chart ? known.y() : known.x();
  std::uint64_t step = p;
  for (unsigned k = 2; k <= mod.exponent(); ++k) {
    auto level = mod.reduced(k);
    Mat2 mk = reduce(m, k);
    std::uint64_t found = 0;
    int count = 0;
    for (std::uint64_t t = 0; t < p; ++t) {
      std::uint64_t cand = coord + t * step;
      LineClass line = first_chart ? LineClass::from_unsigned(1, cand, level) : LineClass::from_unsigned(cand, 1, level);
      if (fixes_line(mk, line)) {
        found = cand;
        ++count;
      }
    }
    if (count != 1) fail(ErrorCode::kNonSeparable, "eigenline does not lift uniquely");
    coord = found;
    step *= p;
  }
  return first_chart ? LineClass::from_unsigned(1, coord, mod) : LineClass::from_unsigned(coord, 1, mod);
}

Mat2 conjugate(const Mat2& m, const Mat2& p) { return p * m * p.inverse(); }

Mat2 reduce(const Mat2& m, unsigned k) {
  auto small = m.modulus().reduced(k);
  return Mat2::from_unsigned(m.a(), m.b(), m.c(), m.d(), small);
}

Mat2 parse_mat2(const std::string& text, const PrimePowerModulus& mod) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    fail(ErrorCode::kParse, "malformed matrix literal: " + text);
  }
  auto bad = [&] { fail(ErrorCode::kParse, "matrix literal must look like [[a,b],[c,d]]: " + text); };
  if (!j.is_array() || j.size() != 2) bad();
  std::int64_t v[4];
  for (int r = 0; r < 2; ++r) {
    if (!j[r].is_array() || j[r].size() != 2) bad();
    for (int c = 0; c < 2; ++c) {
      if (!j[r][c].is_number_integer()) bad();
      v[2 * r + c] = j[r][c].get<std::int64_t>();
    }
  }
  return Mat2(v[0], v[1], v[2], v[3], mod);
}

}  // namespace lgp
