// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgp/genus.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "lgp/error.hpp"

namespace lgp {

namespace {

std::uint64_t minus_identity(const KeyArith& ar) {
  const std::uint64_t m = ar.modulus().modulus();
  return KeyArith::pack(m - 1, 0, 0, m - 1);
}

// Generators of (Z/p^n)^x: a primitive root for odd p, {-1, 5} for p = 2.
std::vector<std::uint64_t> unit_generators(const PrimePowerModulus& mod) {
  const std::uint64_t p = mod.prime(), m = mod.modulus();
  if (m == 2) return {};
  if (p == 2) {
    if (m == 4) return {3};
    return {m - 1, 5};
  }
  const std::uint64_t phi = mod.unit_count();
  auto factors = factor_integer(phi);
  for (std::uint64_t g = 2; g < m; ++g) {
    if (!mod.is_unit(g)) continue;
    bool ok = true;
    for (auto [q, e] : factors) {
      (void)e;
      if (mod.pow(g, phi / q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return {g};
  }
  fail(ErrorCode::kInternal, "no primitive root found");
}

std::uint64_t fixed_count(const std::vector<std::uint32_t>& perm) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) n += perm[i] == i;
  return n;
}

std::map<std::uint64_t, std::uint64_t> cycle_type(const std::vector<std::uint32_t>& perm) {
  std::map<std::uint64_t, std::uint64_t> out;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = 1;
      ++len;
    }
    ++out[len];
  }
  return out;
}

FactorData from_action(const CosetAction& act, std::uint64_t level, bool adjoined) {
  FactorData f;
  f.level = level;
  f.degree = act.degree;
  f.fixed_S = fixed_count(act.perm_S);
  f.fixed_R = fixed_count(act.perm_R);
  f.t_cycles = cycle_type(act.perm_T);
  f.adjoined = adjoined;
  return f;
}

}  // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factor_integer(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e) out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

MatGroup sl2_part(const MatGroup& g, bool* adjoined) {
  KeyArith ar(g.modulus());
  std::vector<std::uint64_t> keys;
  for (auto k : g.keys()) {
    if (ar.det(k) == 1 % g.modulus().modulus()) keys.push_back(k);
  }
  const std::uint64_t minus = minus_identity(ar);
  const bool missing = !std::binary_search(keys.begin(), keys.end(), minus);
  if (adjoined) *adjoined = missing;
  if (missing) {
    const std::size_t n = keys.size();
    for (std::size_t i = 0; i < n; ++i) keys.push_back(ar.mul(minus, keys[i]));
  }
  return group_from_keys(g.modulus(), std::move(keys));
}

CosetAction coset_action(const MatGroup& h) {
  KeyArith ar(h.modulus());
  const std::uint64_t m = h.modulus().modulus();
  const auto& hk = h.keys();
  if (!std::binary_search(hk.begin(), hk.end(), minus_identity(ar))) {
    fail(ErrorCode::kInvalidArgument, "coset action needs -I in the group");
  }
  // Canonical representative of the right coset H x: smallest key of h x.
  auto canon = [&](std::uint64_t x) {
    std::uint64_t best = ~std::uint64_t{0};
    for (auto k : hk) best = std::min(best, ar.mul(k, x));
    return best;
  };
  const std::uint64_t t = KeyArith::pack(1 % m, 1 % m, 0, 1 % m);
  const std::uint64_t s = KeyArith::pack(0, (m - 1) % m, 1 % m, 0);
  const std::uint64_t r = KeyArith::pack(0, (m - 1) % m, 1 % m, (m - 1) % m);

  std::vector<std::uint64_t> reps{ar.identity()};
  std::unordered_map<std::uint64_t, std::uint32_t> index{{canon(ar.identity()), 0}};
  CosetAction act;
  auto locate = [&](std::uint64_t y) -> std::uint32_t {
    auto c = canon(y);
    auto [it, fresh] = index.emplace(c, static_cast<std::uint32_t>(reps.size()));
    if (fresh) reps.push_back(y);
    return it->second;
  };
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const std::uint64_t x = reps[i];
    act.perm_T.push_back(locate(ar.mul(x, t)));
    act.perm_S.push_back(locate(ar.mul(x, s)));
  }
  // T and S generate, so every coset is reached; R = S T^-1 up to sign.
  for (std::size_t i = 0; i < reps.size(); ++i) act.perm_R.push_back(locate(ar.mul(reps[i], r)));
  act.degree = reps.size();
  std::uint64_t sl2 = h.modulus().power(h.modulus().exponent() - 1);
  const std::uint64_t p = h.modulus().prime();
  sl2 = sl2 * sl2 * sl2 * p * (p * p - 1);
  if (act.degree * hk.size() != sl2) fail(ErrorCode::kInternal, "coset count does not match the index");
  return act;
}

FactorData factor_data(const MatGroup& g) {
  bool adjoined = false;
  MatGroup h = sl2_part(g, &adjoined);
  return from_action(coset_action(h), g.modulus().modulus(), adjoined);
}

FactorData borel_factor(std::uint64_t prime, unsigned exponent) {
  PrimePowerModulus mod(prime, exponent);
  const std::uint64_t m = mod.modulus();
  std::vector<Mat2> gens{Mat2::from_unsigned(1 % m, 1 % m, 0, 1 % m, mod), Mat2::scalar(m - 1, mod)};
  for (auto u : unit_generators(mod)) gens.push_back(Mat2::from_unsigned(u, 0, 0, mod.inverse(u), mod));
  MatGroup h = closure(mod, gens);
  return from_action(coset_action(h), m, false);
}

GenusData combine_factors(const std::vector<FactorData>& factors) {
  FactorData acc;
  for (const auto& f : factors) {
    if (std::gcd(acc.level, f.level) != 1) fail(ErrorCode::kLevel, "fiber product levels are not coprime");
    std::map<std::uint64_t, std::uint64_t> cyc;
    for (auto [a, ca] : acc.t_cycles) {
      for (auto [b, cb] : f.t_cycles) cyc[std::lcm(a, b)] += ca * cb * std::gcd(a, b);
    }
    acc.level *= f.level;
    acc.degree *= f.degree;
    acc.fixed_S *= f.fixed_S;
    acc.fixed_R *= f.fixed_R;
    acc.t_cycles = std::move(cyc);
    acc.adjoined = acc.adjoined || f.adjoined;
  }
  GenusData out;
  out.level = acc.level;
  out.index_mu = acc.degree;
  out.e2 = acc.fixed_S;
  out.e3 = acc.fixed_R;
  for (auto [len, count] : acc.t_cycles) {
    (void)len;
    out.cusps += count;
  }
  out.minus_identity_adjoined = acc.adjoined;
  // 12 (g - 1) = mu - 3 e2 - 4 e3 - 6 c
  const std::int64_t twelve = static_cast<std::int64_t>(out.index_mu) - 3 * static_cast<std::int64_t>(out.e2) -
                              4 * static_cast<std::int64_t>(out.e3) - 6 * static_cast<std::int64_t>(out.cusps);
  if (twelve % 12 != 0 || twelve / 12 + 1 < 0) {
    fail(ErrorCode::kInternal, "genus formula is not integral: mu=" + std::to_string(out.index_mu));
  }
  out.genus = static_cast<std::uint64_t>(twelve / 12 + 1);
  return out;
}

GenusData genus_of(const MatGroup& g) { return combine_factors({factor_data(g)}); }

GenusData genus_of_product(const std::vector<MatGroup>& groups) {
  std::vector<FactorData> fs;
  for (const auto& g : groups) fs.push_back(factor_data(g));
  return combine_factors(fs);
}

GenusData genus_data_X0(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "level must be positive");
  std::vector<FactorData> fs;
  for (auto [p, e] : factor_integer(n)) {
    if (PrimePowerModulus(p, e).modulus() > KeyArith::kMaxModulus) fail(ErrorCode::kCapacity, "level too large");
    fs.push_back(borel_factor(p, e));
  }
  return combine_factors(fs);
}

std::uint64_t genus_X0(std::uint64_t n) { return genus_data_X0(n).genus; }

QListReport assemble_Q_exception_list(const std::vector<NamedGroup>& table_groups,
                                      const std::vector<NamedGroup>& h_groups) {
  QListReport rep;
  // Every N with genus(X0(N)) <= 1 is below 50; scan a safe margin past it.
  constexpr std::uint64_t kScan = 100;
  std::map<std::uint64_t, FactorData> borel_cache;
  auto x0_factors = [&](std::uint64_t n) {
    std::vector<FactorData> fs;
    for (auto [p, e] : factor_integer(n)) {
      std::uint64_t q = PrimePowerModulus(p, e).modulus();
      auto it = borel_cache.find(q);
      if (it == borel_cache.end()) it = borel_cache.emplace(q, borel_factor(p, e)).first;
      fs.push_back(it->second);
    }
    return fs;
  };
  for (std::uint64_t n = 2; n <= kScan; ++n) {
    if (combine_factors(x0_factors(n)).genus <= 1) rep.x0_small_genus.push_back(n);
  }

  std::vector<FactorData> gd, hd;
  for (const auto& g : table_groups) gd.push_back(factor_data(g.group));
  for (const auto& h : h_groups) hd.push_back(factor_data(h.group));

  std::set<std::uint64_t> list, singles;
  for (std::size_t i = 0; i < table_groups.size(); ++i) {
    if (combine_factors({gd[i]}).genus <= 1) singles.insert(gd[i].level);
  }
  // Exceptional images at 5 and 7 occur at level p or p^2, with the same curve.
  for (std::size_t j = 0; j < h_groups.size(); ++j) {
    const std::uint64_t p = h_groups[j].group.modulus().prime();
    singles.insert(p);
    singles.insert(p * p);
  }

  rep.all_g_times_h_above_one = true;
  for (std::size_t i = 0; i < table_groups.size(); ++i) {
    for (std::size_t j = 0; j < h_groups.size(); ++j) {
      SweepRow row{table_groups[i].name, h_groups[j].name, 0, 0, combine_factors({gd[i], hd[j]})};
      row.level = row.data.level;
      if (row.data.genus <= 1) rep.all_g_times_h_above_one = false;
      rep.g_times_h.push_back(row);
    }
  }
  for (std::uint64_t n : rep.x0_small_genus) {
    auto xf = x0_factors(n);
    for (std::size_t i = 0; i < table_groups.size(); ++i) {
      if (std::gcd(n, gd[i].level) != 1) continue;
      auto fs = xf;
      fs.insert(fs.begin(), gd[i]);
      SweepRow row{table_groups[i].name, "X0(" + std::to_string(n) + ")", n, 0, combine_factors(fs)};
      row.level = row.data.level;
      if (row.data.genus <= 1) {
        rep.g_times_x0_survivors.push_back(row);
        list.insert(gd[i].level * n);
      }
    }
    for (std::size_t j = 0; j < h_groups.size(); ++j) {
      if (std::gcd(n, hd[j].level) != 1) continue;
      auto fs = xf;
      fs.insert(fs.begin(), hd[j]);
      SweepRow row{h_groups[j].name, "X0(" + std::to_string(n) + ")", n, 0, combine_factors(fs)};
      row.level = row.data.level;
      if (row.data.genus <= 1) {
        rep.h_times_x0_survivors.push_back(row);
        const std::uint64_t p = h_groups[j].group.modulus().prime();
        list.insert(p * n);
        list.insert(p * p * n);
      }
    }
  }
  list.insert(singles.begin(), singles.end());
  rep.singles.assign(singles.begin(), singles.end());
  rep.list.assign(list.begin(), list.end());
  return rep;
}

}  // namespace lgp
