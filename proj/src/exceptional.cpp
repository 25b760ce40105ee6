// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgp/exceptional.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "lgp/error.hpp"
#include "lgp/genus.hpp"
#include "lgp/subspace.hpp"

namespace lgp {

namespace {

PrimePowerModulus k_modulus(std::uint64_t ell, unsigned m) {
  if (ell == 2 || !is_prime(ell)) fail(ErrorCode::kInvalidArgument, "need an odd prime");
  if (m == 0) fail(ErrorCode::kInvalidArgument, "m must be positive");
  PrimePowerModulus mod(ell, 2 * m + 1);
  if (mod.modulus() > KeyArith::kMaxModulus) fail(ErrorCode::kCapacity, "modulus above 2^16");
  return mod;
}

std::uint64_t smallest_generator(std::uint64_t p) {
  for (std::uint64_t g = 2; g < p; ++g) {
    std::uint64_t x = 1;
    std::uint64_t ord = 0;
    do {
      x = x * g % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1) return g;
  }
  return 1;  // p = 2
}

std::optional<Mat2> first_nonsquare_disc(const MatGroup& g) {
  KeyArith ar(g.modulus());
  for (auto k : g.keys()) {
    Mat2 x = ar.mat(k);
    if (!is_square(x.disc(), g.modulus())) return x;
  }
  return std::nullopt;
}

XKClassification classify_closed(const MatGroup& g) {
  XKClassification out;
  out.group_order = g.order();
  auto lines = common_fixed_lines(g);
  if (!lines.empty()) {
    out.verdict = XKVerdict::kBorelContained;
    out.fixed_line = lines.front();
    return out;
  }
  if (auto bad = first_nonsquare_disc(g)) {
    out.verdict = XKVerdict::kDiscViolation;
    out.bad_element = *bad;
    return out;
  }
  out.verdict = XKVerdict::kLiftExceptional;
  return out;
}

MatGroup close_with(const Mat2& x, const MatGroup& k_group) {
  std::vector<Mat2> gens = k_group.generators();
  gens.push_back(x);
  return closure(k_group.modulus(), gens);
}

// M^-1 G M for M = [[1, mu], [0, 1]], with mu chosen to make the
// lower-left coefficient opposite to the upper-right one mod p.
Normalization normalize_group(const Mat2& x, const MatGroup& g, const MatGroup& r_group, std::uint64_t ell,
                              unsigned m) {
  const auto& mod = g.modulus();
  const std::uint64_t a = x.a() % ell, b = x.b() % ell;
  const std::uint64_t z = x.c() / mod.power(2 * m) % ell;
  PrimePowerModulus fp(ell, 1);
  const std::uint64_t mu = fp.mul(fp.neg(fp.add(z, b)), fp.inverse(fp.mul(2, a)));
  Mat2 conj = Mat2::from_unsigned(1, mu, 0, 1, mod);
  MatGroup image = conjugate_group(g, conj.inverse());
  for (auto k : image.keys()) {
    if (!r_group.contains_key(k)) fail(ErrorCode::kInternal, "normalised group leaves R");
  }
  return Normalization{mu, conj, image};
}

}  // namespace

const char* verdict_name(XKVerdict v) noexcept {
  switch (v) {
    case XKVerdict::kBorelContained: return "borel-contained";
    case XKVerdict::kLiftExceptional: return "lift-exceptional";
    case XKVerdict::kDiscViolation: return "disc-violation";
  }
  return "?";
}

MatGroup build_K_group(std::uint64_t ell, unsigned m) {
  auto mod = k_modulus(ell, m);
  const std::uint64_t q = mod.modulus(), top = mod.power(2 * m);
  KeyArith ar(mod);
  std::vector<std::uint64_t> keys;
  for (std::uint64_t r = 1; r < q; ++r) {
    if (!mod.is_unit(r)) continue;
    for (std::uint64_t t = r % top; t < q; t += top) {
      for (std::uint64_t s = 0; s < q; ++s) keys.push_back(KeyArith::pack(r, s, top * s % q, t));
    }
  }
  return group_from_keys(mod, std::move(keys));
}

MatGroup build_R_group(std::uint64_t ell, unsigned m) {
  auto mod = k_modulus(ell, m);
  const std::uint64_t q = mod.modulus(), top = mod.power(2 * m), step = mod.power(m + 1);
  std::vector<std::uint64_t> keys;
  for (std::uint64_t r = 1; r < q; ++r) {
    if (!mod.is_unit(r)) continue;
    for (std::uint64_t t = r % step; t < q; t += step) {
      for (std::uint64_t s = 0; s < q; ++s) {
        const std::uint64_t c = top * s % q;
        keys.push_back(KeyArith::pack(r, s, c, t));
        keys.push_back(KeyArith::pack(r, s, (q - c) % q, (q - t) % q));
      }
    }
  }
  return group_from_keys(mod, std::move(keys));
}

std::vector<LineClass> simultaneous_eigenlines_K(std::uint64_t ell, unsigned m) {
  return common_fixed_lines(build_K_group(ell, m));
}

void check_potentially_exceptional(const Mat2& x, std::uint64_t ell, unsigned m) {
  auto mod = k_modulus(ell, m);
  if (!(x.modulus() == mod)) fail(ErrorCode::kInvalidArgument, "matrix must live mod p^(2m+1)");
  if (!x.is_invertible()) fail(ErrorCode::kNotPotentiallyExceptional, "matrix is not invertible");
  if (x.c() % mod.power(2 * m) != 0) {
    fail(ErrorCode::kNotPotentiallyExceptional, "not upper triangular mod p^(2m)");
  }
  // <X, K> mod p is generated by X, the unipotent T and scalars.
  auto fp = mod.reduced(1);
  std::vector<Mat2> gens{reduce(x, 1), Mat2::from_unsigned(1, 1, 0, 1, fp)};
  const std::uint64_t g = smallest_generator(ell);
  gens.push_back(Mat2::scalar(g, fp));
  auto rep = classify(closure(fp, gens));
  if (!rep.radical) fail(ErrorCode::kNotPotentiallyExceptional, "not radical mod p");
  if (rep.split_cartan || rep.nonsplit_cartan) fail(ErrorCode::kNotPotentiallyExceptional, "Cartan mod p");
}

XKClassification classify_XK(const Mat2& x, const MatGroup& k_group) {
  return classify_closed(close_with(x, k_group));
}

XKClassification classify_XK(const Mat2& x, std::uint64_t ell, unsigned m) {
  check_potentially_exceptional(x, ell, m);
  return classify_XK(x, build_K_group(ell, m));
}

bool diagonals_opposite(const Mat2& x, std::uint64_t ell, unsigned m) {
  const std::uint64_t q = x.modulus().power(m + 1);
  (void)ell;
  return (x.a() + x.d()) % q == 0;
}

Normalization normalize_to_R(const Mat2& x, std::uint64_t ell, unsigned m) {
  check_potentially_exceptional(x, ell, m);
  MatGroup g = close_with(x, build_K_group(ell, m));
  auto verdict = classify_closed(g);
  if (verdict.verdict != XKVerdict::kLiftExceptional) {
    fail(ErrorCode::kContract, std::string("expected lift-exceptional, got ") + verdict_name(verdict.verdict));
  }
  return normalize_group(x, g, build_R_group(ell, m), ell, m);
}

MatGroup build_H_exc(std::uint64_t ell, unsigned n) {
  if (ell != 5 && ell != 7) fail(ErrorCode::kInvalidArgument, "exceptional H is defined for 5 and 7");
  if (n == 0) fail(ErrorCode::kInvalidArgument, "exponent must be positive");
  PrimePowerModulus mod(ell, n);
  if (mod.modulus() > KeyArith::kMaxModulus) fail(ErrorCode::kCapacity, "modulus above 2^16");
  const std::uint64_t alpha = smallest_generator(ell);
  const std::uint64_t a2 = alpha * alpha % ell;
  std::vector<Mat2> gens{Mat2::scalar(alpha, mod), Mat2::from_unsigned(a2, 0, 0, 1, mod),
                         Mat2::from_unsigned(0, 1, 1, 0, mod)};
  const std::uint64_t h_order = (ell - 1) * (ell - 1);  // both shapes, half the exponent pairs each
  std::uint64_t kernel = 1;
  for (unsigned i = 1; i < n; ++i) kernel *= ell * ell * ell * ell;
  if (h_order * kernel > MatGroup::kDefaultCap) fail(ErrorCode::kCapacity, "preimage exceeds the element cap");
  if (n > 1) {
    const std::uint64_t p = ell;
    gens.push_back(Mat2::from_unsigned(1 + p, 0, 0, 1, mod));
    gens.push_back(Mat2::from_unsigned(1, p, 0, 1, mod));
    gens.push_back(Mat2::from_unsigned(1, 0, p, 1, mod));
    gens.push_back(Mat2::from_unsigned(1, 0, 0, 1 + p, mod));
  }
  MatGroup h = closure(mod, gens);
  if (h.order() != h_order * kernel) fail(ErrorCode::kInternal, "exceptional H has the wrong order");
  return h;
}

MatGroup build_H_exc_teichmuller(unsigned n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "exponent must be positive");
  PrimePowerModulus mod(5, n);
  if (mod.modulus() > KeyArith::kMaxModulus) fail(ErrorCode::kCapacity, "modulus above 2^16");
  const std::uint64_t alpha = mod.pow(2, mod.power(n - 1));
  const std::uint64_t a2 = mod.mul(alpha, alpha);
  MatGroup h = closure(mod, {Mat2::scalar(alpha, mod), Mat2::from_unsigned(a2, 0, 0, 1, mod),
                             Mat2::from_unsigned(0, 1, 1, 0, mod)});
  if (h.order() != 16) fail(ErrorCode::kInternal, "Teichmuller lift has the wrong order");
  return h;
}

SubrepReport verify_D4_subrep_claim() {
  constexpr std::uint32_t p = 5;
  SubrepReport rep;
  const auto& subs = all_subspaces(p);
  rep.subspaces_total = subs.size();

  PrimePowerModulus f5(5, 1);
  MatGroup h = build_H_exc(5, 1);
  auto conj_code = [&](std::uint32_t code, const Mat2& g) {
    auto e = decode_code(code, p);
    Mat2 v = Mat2::from_unsigned(e[0], e[1], e[2], e[3], f5);
    Mat2 w = conjugate(v, g);
    return encode_code(w.entries(), p);
  };
  auto stable = [&](const Subspace& s) {
    for (const auto& g : h.generators()) {
      for (auto b : s.basis) {
        if (!std::binary_search(s.codes.begin(), s.codes.end(), conj_code(b, g))) return false;
      }
    }
    return true;
  };
  std::set<std::vector<std::uint32_t>> brute;
  for (const auto& s : subs) {
    if (stable(s)) brute.insert(s.codes);
  }
  rep.stable_brute_force = brute.size();

  // Isotypic lines: scalars, diag(b,-b), antidiag(c,c), [[0,d],[-d,0]].
  const std::array<std::uint32_t, 4> lines{encode_code({1, 0, 0, 1}, p), encode_code({1, 0, 0, 4}, p),
                                           encode_code({0, 1, 1, 0}, p), encode_code({0, 1, 4, 0}, p)};
  const char* names = "ABCD";
  std::map<std::vector<std::uint32_t>, unsigned> isotypic;  // codes -> subset mask
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<std::uint32_t> basis;
    for (unsigned i = 0; i < 4; ++i)
      if (mask >> i & 1) basis.push_back(lines[i]);
    auto codes = span_of(basis, p);
    std::sort(codes.begin(), codes.end());
    isotypic.emplace(codes, mask);
  }
  rep.stable_isotypic = isotypic.size();
  rep.lattices_agree = brute.size() == isotypic.size() &&
                       std::all_of(brute.begin(), brute.end(), [&](const auto& c) { return isotypic.count(c) > 0; });

  auto admissible = [&](const std::vector<std::uint32_t>& codes) {
    for (auto c : codes) {
      auto e = decode_code(c, p);
      Mat2 v = Mat2::from_unsigned(e[0], e[1], e[2], e[3], f5);
      if (!is_square(v.disc(), f5)) return false;
    }
    return true;
  };
  std::vector<unsigned> ok_masks;
  for (const auto& [codes, mask] : isotypic) {
    if (admissible(codes)) ok_masks.push_back(mask);
    if (mask == 0b0111) rep.abc_is_inadmissible = !admissible(codes);
  }
  std::vector<unsigned> maximal;
  for (auto a : ok_masks) {
    bool top = std::none_of(ok_masks.begin(), ok_masks.end(), [&](unsigned b) { return b != a && (a & b) == a; });
    if (top) maximal.push_back(a);
  }
  std::sort(maximal.begin(), maximal.end());
  auto name_of = [&](unsigned mask) {
    std::string s;
    for (unsigned i = 0; i < 4; ++i) {
      if (!(mask >> i & 1)) continue;
      if (!s.empty()) s += '+';
      s += names[i];
    }
    return s.empty() ? std::string("0") : s;
  };
  std::vector<std::string> expected{"A+B", "A+C", "A+D"};
  for (auto mask : maximal) rep.maximal_admissible.push_back(name_of(mask));
  std::sort(rep.maximal_admissible.begin(), rep.maximal_admissible.end());

  // Genus of the level-25 group H~ (1 + 5J) for each maximal J.
  MatGroup ht = build_H_exc_teichmuller(2);
  const auto& mod25 = ht.modulus();
  bool all_big = true;
  for (auto mask : maximal) {
    std::vector<Mat2> gens = ht.generators();
    for (unsigned i = 0; i < 4; ++i) {
      if (!(mask >> i & 1)) continue;
      auto e = decode_code(lines[i], p);
      gens.push_back(Mat2::from_unsigned(1 + 5 * e[0], 5 * e[1], 5 * e[2], 1 + 5 * e[3], mod25));
    }
    auto g = closure(mod25, gens);
    auto gd = genus_of(g);
    rep.genera.push_back(static_cast<unsigned>(gd.genus));
    all_big = all_big && gd.genus >= 2;
  }
  rep.claim_holds = rep.lattices_agree && rep.maximal_admissible == expected && rep.abc_is_inadmissible && all_big;
  return rep;
}

UpthmSweep sweep_upthm(std::uint64_t ell, unsigned m) {
  auto mod = k_modulus(ell, m);
  const std::uint64_t q = mod.modulus(), low = mod.power(2 * m);
  MatGroup k_group = build_K_group(ell, m);
  MatGroup r_group = build_R_group(ell, m);
  KeyArith ar(mod);

  struct CosetResult {
    XKClassification cls;
    std::uint64_t group_hash = 0;
  };
  std::unordered_map<std::uint64_t, CosetResult> cache;
  std::set<std::uint64_t> group_hashes;
  UpthmSweep out;
  for (std::uint64_t c = 0; c < q; c += low) {
    for (std::uint64_t a = 1; a < q; ++a) {
      if (!mod.is_unit(a)) continue;
      for (std::uint64_t d = 1; d < q; ++d) {
        if (!mod.is_unit(d)) continue;
        const std::uint64_t ratio = d * mod.reduced(1).inverse(a % ell) % ell;
        if (ratio != 1 && ratio != ell - 1) continue;
        for (std::uint64_t b = 0; b < q; ++b) {
          Mat2 x = Mat2::from_unsigned(a, b, c, d, mod);
          ++out.candidates;
          const std::uint64_t xk = ar.key(x);
          std::uint64_t coset = ~std::uint64_t{0};
          for (auto k : k_group.keys()) coset = std::min(coset, ar.mul(xk, k));
          auto it = cache.find(coset);
          if (it == cache.end()) {
            MatGroup g = close_with(x, k_group);
            CosetResult res{classify_closed(g), 0};
            std::uint64_t h = 1469598103934665603ull;
            for (auto key : g.keys()) h = (h ^ key) * 1099511628211ull;
            res.group_hash = h;
            group_hashes.insert(h);
            if (res.cls.verdict == XKVerdict::kLiftExceptional) {
              bool into = true;
              try {
                normalize_group(x, g, r_group, ell, m);
              } catch (const Error& e) {
                if (e.code() != ErrorCode::kInternal) throw;
                into = conjugate_into(g, r_group).has_value();
              }
              if (!into) ++out.not_conjugate_into_R;
            }
            it = cache.emplace(coset, res).first;
          }
          const auto v = it->second.cls.verdict;
          if (v == XKVerdict::kLiftExceptional) ++out.lift_exceptional;
          if (v == XKVerdict::kBorelContained) ++out.borel;
          if (v == XKVerdict::kDiscViolation) ++out.disc_violation;
          if ((v == XKVerdict::kLiftExceptional) != diagonals_opposite(x, ell, m)) ++out.mismatches;
        }
      }
    }
  }
  out.distinct_groups = group_hashes.size();
  return out;
}

}  // namespace lgp
