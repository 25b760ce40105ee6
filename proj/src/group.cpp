// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgp/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "lgp/keyset.hpp"

namespace lgp {

KeyArith::KeyArith(const PrimePowerModulus& mod)
    : mod_(mod), m_(mod.modulus()), pow2_(mod.prime() == 2), mask_(mod.modulus() - 1) {
  if (m_ > kMaxModulus) {
    fail(ErrorCode::kCapacity, "explicit groups need modulus <= 65536, got " + mod.to_string());
  }
}

std::uint64_t KeyArith::key(const Mat2& m) const {
  if (!(m.modulus() == mod_)) fail(ErrorCode::kInvalidArgument, "matrix modulus mismatch");
  return pack(m.a(), m.b(), m.c(), m.d());
}

Mat2 KeyArith::mat(std::uint64_t k) const {
  return Mat2::from_unsigned(entry(k, 0), entry(k, 1), entry(k, 2), entry(k, 3), mod_);
}

std::uint64_t KeyArith::inv(std::uint64_t x) const {
  std::uint64_t dinv = mod_.inverse(det(x));
  return pack(red(entry(x, 3) * dinv), red((m_ - entry(x, 1)) % m_ * dinv), red((m_ - entry(x, 2)) % m_ * dinv),
              red(entry(x, 0) * dinv));
}

std::uint64_t KeyArith::order_of(std::uint64_t x) const {
  std::uint64_t y = x;
  std::uint64_t n = 1;
  while (y != identity()) {
    y = mul(y, x);
    ++n;
  }
  return n;
}

MatGroup::MatGroup(const PrimePowerModulus& mod, std::vector<Mat2> generators,
                   std::vector<std::uint64_t> sorted_elements)
    : mod_(mod), gens_(std::move(generators)), elems_(std::move(sorted_elements)) {}

bool MatGroup::contains_key(std::uint64_t k) const { return std::binary_search(elems_.begin(), elems_.end(), k); }

bool MatGroup::contains(const Mat2& m) const {
  if (!(m.modulus() == mod_)) return false;
  return contains_key(KeyArith::pack(m.a(), m.b(), m.c(), m.d()));
}

Mat2 MatGroup::element(std::size_t i) const { return KeyArith(mod_).mat(elems_.at(i)); }

std::vector<Mat2> MatGroup::elements() const {
  KeyArith ar(mod_);
  std::vector<Mat2> out;
  out.reserve(elems_.size());
  for (auto k : elems_) out.push_back(ar.mat(k));
  return out;
}

namespace {

// BFS closure starting from an already closed set `seen`/`order` under
// `old_gens`, after appending new generators.
void extend_closure(const KeyArith& ar, KeySet& seen, std::vector<std::uint64_t>& order,
                    const std::vector<std::uint64_t>& gens, std::size_t first_new_gen, std::size_t cap) {
  const std::size_t old_size = order.size();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::uint64_t x = order[i];
    const std::size_t g0 = i < old_size ? first_new_gen : 0;
    for (std::size_t g = g0; g < gens.size(); ++g) {
      std::uint64_t y = ar.mul(x, gens[g]);
      if (seen.insert(y)) {
        order.push_back(y);
        if (order.size() > cap) {
          fail(ErrorCode::kCapacity, "group closure exceeds " + std::to_string(cap) + " elements");
        }
      }
    }
  }
}

}  // namespace

MatGroup closure(const PrimePowerModulus& mod, const std::vector<Mat2>& generators, std::size_t cap) {
  KeyArith ar(mod);
  std::vector<std::uint64_t> gkeys;
  for (const auto& g : generators) {
    if (!(g.modulus() == mod)) fail(ErrorCode::kInvalidArgument, "generators must share one modulus");
    if (!g.is_invertible()) fail(ErrorCode::kInvalidArgument, "generator " + g.to_string() + " is not invertible");
    gkeys.push_back(ar.key(g));
  }
  KeySet seen(64);
  std::vector<std::uint64_t> order{ar.identity()};
  seen.insert(ar.identity());
  extend_closure(ar, seen, order, gkeys, 0, cap);
  std::sort(order.begin(), order.end());
  return MatGroup(mod, generators, std::move(order));
}

MatGroup closure(const std::vector<Mat2>& generators, std::size_t cap) {
  if (generators.empty()) fail(ErrorCode::kInvalidArgument, "closure of an empty list needs an explicit modulus");
  return closure(generators.front().modulus(), generators, cap);
}

MatGroup group_from_keys(const PrimePowerModulus& mod, std::vector<std::uint64_t> keys) {
  KeyArith ar(mod);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  if (!std::binary_search(keys.begin(), keys.end(), ar.identity())) {
    fail(ErrorCode::kStructure, "element set lacks the identity");
  }
  KeySet seen(keys.size());
  std::vector<std::uint64_t> order{ar.identity()};
  seen.insert(ar.identity());
  std::vector<std::uint64_t> gens;
  for (auto k : keys) {
    if (seen.contains(k)) continue;
    gens.push_back(k);
    extend_closure(ar, seen, order, gens, gens.size() - 1, keys.size());
  }
  if (order.size() != keys.size()) fail(ErrorCode::kStructure, "element set is not closed under multiplication");
  std::vector<Mat2> gm;
  for (auto g : gens) gm.push_back(ar.mat(g));
  return MatGroup(mod, std::move(gm), std::move(keys));
}

MatGroup reduce_group(const MatGroup& g, unsigned k) {
  auto small = g.modulus().reduced(k);
  const std::uint64_t sm = small.modulus();
  KeyArith ar(g.modulus());
  std::vector<std::uint64_t> keys;
  keys.reserve(g.order());
  for (auto x : g.keys()) keys.push_back(ar.reduce_to(x, sm));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<Mat2> gens;
  for (const auto& m : g.generators()) gens.push_back(reduce(m, k));
  return MatGroup(small, std::move(gens), std::move(keys));
}

std::uint64_t gl2_order(const PrimePowerModulus& mod) {
  const std::uint64_t p = mod.prime();
  std::uint64_t q = mod.power(mod.exponent() - 1);
  return q * q * q * q * (p * p - 1) * (p * p - p);
}

MatGroup full_gl2(const PrimePowerModulus& mod) {
  const std::uint64_t m = mod.modulus();
  if (gl2_order(mod) > MatGroup::kDefaultCap) fail(ErrorCode::kCapacity, "GL2 over " + mod.to_string() + " is too large");
  KeyArith ar(mod);
  std::vector<std::uint64_t> keys;
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < m; ++b)
      for (std::uint64_t c = 0; c < m; ++c)
        for (std::uint64_t d = 0; d < m; ++d) {
          std::uint64_t k = KeyArith::pack(a, b, c, d);
          if (mod.is_unit(ar.det(k))) keys.push_back(k);
        }
  std::sort(keys.begin(), keys.end());
  std::vector<Mat2> gens{Mat2(1, 1, 0, 1, mod), Mat2(0, -1, 1, 0, mod)};
  // Units: add diag(u, 1) for a generator set of the unit group.
  for (std::uint64_t u = 2; u < m; ++u) {
    if (mod.is_unit(u)) gens.push_back(Mat2::from_unsigned(u, 0, 0, 1, mod));
    if (gens.size() >= 4) break;
  }
  return MatGroup(mod, std::move(gens), std::move(keys));
}

std::vector<LineClass> common_fixed_lines(const MatGroup& g) {
  std::vector<LineClass> lines = all_lines(g.modulus());
  for (const auto& m : g.generators()) {
    std::vector<LineClass> keep;
    for (const auto& l : lines) {
      if (fixes_line(m, l)) keep.push_back(l);
    }
    lines.swap(keep);
    if (lines.empty()) break;
  }
  return lines;
}

namespace {

std::optional<std::pair<LineClass, LineClass>> split_pair(const std::vector<LineClass>& lines) {
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (independent_mod_p(lines[i], lines[j])) return std::make_pair(lines[i], lines[j]);
  return std::nullopt;
}

std::vector<std::uint64_t> unit_subgroup(const PrimePowerModulus& mod, const std::vector<std::uint64_t>& gens) {
  KeySet seen(64);
  std::vector<std::uint64_t> order{1 % mod.modulus()};
  seen.insert(order[0] + 1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (auto g : gens) {
      std::uint64_t y = mod.mul(order[i], g);
      if (seen.insert(y + 1)) order.push_back(y);
    }
  }
  return order;
}

}  // namespace

bool is_borel_contained(const MatGroup& g) { return !common_fixed_lines(g).empty(); }

bool is_split_cartan_contained(const MatGroup& g) { return split_pair(common_fixed_lines(g)).has_value(); }

bool is_commutative(const MatGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!(gens[i] * gens[j] == gens[j] * gens[i])) return false;
  return true;
}

std::size_t det_image_order(const MatGroup& g) {
  std::vector<std::uint64_t> dets;
  for (const auto& m : g.generators()) dets.push_back(m.det());
  return unit_subgroup(g.modulus(), dets).size();
}

bool det_surjective(const MatGroup& g) { return det_image_order(g) == g.modulus().unit_count(); }

unsigned gl2_level_exponent(const MatGroup& g) {
  const auto& mod = g.modulus();
  const unsigned n = mod.exponent();
  if (g.order() == gl2_order(mod)) return 0;
  for (unsigned k = 1; k < n; ++k) {
    std::uint64_t kernel = mod.power(n - k);
    kernel = kernel * kernel * kernel * kernel;
    if (reduce_group(g, k).order() * kernel == g.order()) return k;
  }
  return n;
}

StructureReport classify(const MatGroup& g) {
  StructureReport r;
  const auto& mod = g.modulus();
  auto lines = common_fixed_lines(g);
  if (!lines.empty()) r.borel = lines.front();
  r.split_cartan = split_pair(lines);
  for (const auto& l : lines) {
    std::vector<int> signs;
    bool ok = true;
    for (const auto& m : g.generators()) {
      std::uint64_t lam = eigenvalue_on(m, l);
      // quotient / line = det / lambda^2
      std::uint64_t ratio = mod.mul(m.det(), mod.inverse(mod.mul(lam, lam)));
      if (ratio == 1 % mod.modulus()) {
        signs.push_back(1);
      } else if (ratio == mod.modulus() - 1) {
        signs.push_back(-1);
      } else {
        ok = false;
        break;
      }
    }
    if (ok) {
      r.radical = RadicalWitness{l, signs};
      break;
    }
  }
  r.scalar = std::all_of(g.generators().begin(), g.generators().end(), [](const Mat2& m) { return m.is_scalar(); });
  if (mod.exponent() == 1 && lines.empty() && is_commutative(g)) {
    for (const auto& m : g.generators()) {
      if (!m.is_scalar() && !char_poly_has_root(m)) r.nonsplit_cartan = true;
    }
  }
  r.det_surjective = det_surjective(g);
  r.gl2_level_exponent = gl2_level_exponent(g);
  return r;
}

std::optional<std::pair<unsigned, unsigned>> cartan_borel_factorization(const MatGroup& g) {
  const unsigned n = g.modulus().exponent();
  auto cartan_at = [&](unsigned j) { return j == 0 || is_split_cartan_contained(j == n ? g : reduce_group(g, j)); };
  auto borel_at = [&](unsigned k) { return k == 0 || is_borel_contained(k == n ? g : reduce_group(g, k)); };
  if (cartan_at(n)) return std::make_pair(n, 0u);
  if (borel_at(n)) return std::make_pair(0u, n);
  for (unsigned j = n - 1; j >= 1; --j) {
    if (cartan_at(j) && borel_at(n - j)) return std::make_pair(j, n - j);
  }
  return std::nullopt;
}

namespace {

template <typename Pred>
bool all_by_trace_det(const MatGroup& g, Pred pred) {
  KeyArith ar(g.modulus());
  std::unordered_map<std::uint64_t, bool> cache;
  for (auto k : g.keys()) {
    std::uint64_t t = ar.trace(k), d = ar.det(k);
    std::uint64_t idx = (t << 20) | d;
    auto it = cache.find(idx);
    bool ok;
    if (it == cache.end()) {
      ok = pred(t, d);
      cache.emplace(idx, ok);
    } else {
      ok = it->second;
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool all_square_disc(const MatGroup& g) {
  const auto& mod = g.modulus();
  return all_by_trace_det(g, [&](std::uint64_t t, std::uint64_t d) {
    return is_square(mod.sub(mod.mul(t, t), mod.mul(4 % mod.modulus(), d)), mod);
  });
}

bool all_charpoly_root(const MatGroup& g) {
  const auto& mod = g.modulus();
  return all_by_trace_det(g, [&](std::uint64_t t, std::uint64_t d) { return quad_has_root(mod.neg(t), d, mod); });
}

std::vector<std::uint64_t> ratio_character(const MatGroup& g, const LineClass& line) {
  const auto& mod = g.modulus();
  if (!(line.modulus() == mod)) fail(ErrorCode::kInvalidArgument, "line modulus mismatch");
  for (const auto& m : g.generators()) {
    if (!fixes_line(m, line)) fail(ErrorCode::kStructure, "group is not Borel on line " + line.to_string());
  }
  KeyArith ar(mod);
  std::vector<std::uint64_t> out;
  out.reserve(g.order());
  for (auto k : g.keys()) {
    Mat2 m = ar.mat(k);
    std::uint64_t lam = eigenvalue_on(m, line);
    out.push_back(mod.mul(mod.mul(lam, lam), mod.inverse(m.det())));
  }
  return out;
}

MatGroup kernel_K(const MatGroup& g, const LineClass& line_prev) {
  const auto& mod = g.modulus();
  const unsigned n = mod.exponent();
  if (n < 2) fail(ErrorCode::kInvalidArgument, "kernel needs exponent at least 2");
  auto prev_mod = mod.reduced(n - 1);
  if (!(line_prev.modulus() == prev_mod)) fail(ErrorCode::kInvalidArgument, "line must live one level down");
  KeyArith ar(mod);
  std::vector<std::uint64_t> keep;
  for (auto k : g.keys()) {
    Mat2 m = reduce(ar.mat(k), n - 1);
    if (!fixes_line(m, line_prev)) fail(ErrorCode::kStructure, "reduction is not Borel on " + line_prev.to_string());
    std::uint64_t lam = eigenvalue_on(m, line_prev);
    if (prev_mod.mul(lam, lam) == m.det()) keep.push_back(k);
  }
  return group_from_keys(mod, std::move(keep));
}

MatGroup conjugate_group(const MatGroup& g, const Mat2& p) {
  KeyArith ar(g.modulus());
  std::uint64_t pk = ar.key(p);
  std::uint64_t pinv = ar.inv(pk);
  std::vector<std::uint64_t> keys;
  keys.reserve(g.order());
  for (auto k : g.keys()) keys.push_back(ar.mul(ar.mul(pk, k), pinv));
  std::sort(keys.begin(), keys.end());
  std::vector<Mat2> gens;
  for (const auto& m : g.generators()) gens.push_back(conjugate(m, p));
  return MatGroup(g.modulus(), std::move(gens), std::move(keys));
}

namespace {

// Level-by-level search for P with P g P^-1 in H for every generator g of G.
std::optional<Mat2> search_conjugator(const MatGroup& g, const MatGroup& h) {
  const auto& mod = g.modulus();
  if (!(h.modulus() == mod)) fail(ErrorCode::kInvalidArgument, "groups live over different moduli");
  const unsigned n = mod.exponent();
  const std::uint64_t p = mod.prime();

  std::vector<PrimePowerModulus> mods;
  std::vector<KeySet> targets;
  std::vector<std::vector<std::uint64_t>> gens;  // generators of G reduced per level, as keys
  for (unsigned k = 1; k <= n; ++k) {
    auto mk = mod.reduced(k);
    mods.push_back(mk);
    MatGroup hk = k == n ? h : reduce_group(h, k);
    KeySet s(hk.order());
    for (auto x : hk.keys()) s.insert(x);
    targets.push_back(std::move(s));
    KeyArith ar(mk);
    std::vector<std::uint64_t> gk;
    for (const auto& m : g.generators()) gk.push_back(ar.key(reduce(m, k)));
    std::sort(gk.begin(), gk.end());
    gk.erase(std::unique(gk.begin(), gk.end()), gk.end());
    gens.push_back(std::move(gk));
  }

  auto ok_at = [&](unsigned k, std::uint64_t pk) {
    KeyArith ar(mods[k - 1]);
    std::uint64_t pinv = ar.inv(pk);
    for (auto x : gens[k - 1]) {
      if (!targets[k - 1].contains(ar.mul(ar.mul(pk, x), pinv))) return false;
    }
    return true;
  };

  std::optional<std::uint64_t> found;
  std::function<bool(unsigned, std::uint64_t)> dfs = [&](unsigned k, std::uint64_t pk) -> bool {
    if (!ok_at(k, pk)) return false;
    if (k == n) {
      found = pk;
      return true;
    }
    const std::uint64_t step = mods[k - 1].modulus();
    const std::uint64_t big = mods[k].modulus();
    // Scaling P by 1 + p^k t gives the same conjugation, so pin the delta at
    // the first unit position of P to zero.
    int pinned = 0;
    while (KeyArith::entry(pk, pinned) % p == 0) ++pinned;
    std::uint64_t total = p * p * p * p;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      std::uint64_t e[4];
      bool skip = false;
      for (int i = 0; i < 4; ++i) {
        std::uint64_t dlt = c % p;
        c /= p;
        if (i == pinned && dlt != 0) skip = true;
        e[i] = (KeyArith::entry(pk, i) + dlt * step) % big;
      }
      if (skip) continue;
      if (dfs(k + 1, KeyArith::pack(e[0], e[1], e[2], e[3]))) return true;
    }
    return false;
  };

  // Level one: invertible P up to scalars (first nonzero entry is 1).
  const auto& m1 = mods[0];
  KeyArith a1(m1);
  for (std::uint64_t a = 0; a < p && !found; ++a)
    for (std::uint64_t b = 0; b < p && !found; ++b)
      for (std::uint64_t c = 0; c < p && !found; ++c)
        for (std::uint64_t d = 0; d < p && !found; ++d) {
          std::uint64_t first = a != 0 ? a : (b != 0 ? b : (c != 0 ? c : d));
          if (first != 1) continue;
          std::uint64_t pk = KeyArith::pack(a, b, c, d);
          if (!m1.is_unit(a1.det(pk))) continue;
          dfs(1, pk);
        }
  if (!found) return std::nullopt;
  return KeyArith(mod).mat(*found);
}

}  // namespace

std::optional<Mat2> conjugate_into(const MatGroup& g, const MatGroup& h) {
  if (h.order() % g.order() != 0) return std::nullopt;
  return search_conjugator(g, h);
}

std::optional<Mat2> conjugacy_equivalent(const MatGroup& g, const MatGroup& h) {
  if (g.order() != h.order()) return std::nullopt;
  if (g.keys() == h.keys()) return Mat2::identity(g.modulus());
  return search_conjugator(g, h);
}

Fingerprint fingerprint(const MatGroup& g) {
  Fingerprint f;
  f.order = g.order();
  f.level_exponent = gl2_level_exponent(g);
  f.det_image = det_image_order(g);
  KeyArith ar(g.modulus());
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> td;
  std::map<std::uint64_t, std::size_t> orders;
  for (auto k : g.keys()) {
    ++td[{ar.trace(k), ar.det(k)}];
    ++orders[ar.order_of(k)];
  }
  for (const auto& [key, count] : td) f.trace_det.emplace_back(key.first, key.second, count);
  for (const auto& [o, count] : orders) f.element_orders.emplace_back(o, count);
  return f;
}

}  // namespace lgp
