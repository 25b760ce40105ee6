// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgp/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "lgp/keyset.hpp"
#include "lgp/subspace.hpp"

namespace lgp {

namespace {

using Keys = std::vector<std::uint64_t>;

class PredTable {
 public:
  PredTable(const PrimePowerModulus& mod, ElementPredicate pred) : m_(mod.modulus()) {
    if (m_ > 4096) fail(ErrorCode::kCapacity, "predicate table too large for " + mod.to_string());
    ok_.assign(m_ * m_, 0);
    for (std::uint64_t t = 0; t < m_; ++t)
      for (std::uint64_t d = 0; d < m_; ++d) {
        if (!mod.is_unit(d)) continue;
        bool v = pred == ElementPredicate::kCharRoot
                     ? quad_has_root(mod.neg(t), d, mod)
                     : is_square(mod.sub(mod.mul(t, t), mod.mul(4 % m_, d)), mod);
        ok_[t * m_ + d] = v ? 1 : 0;
      }
  }
  bool ok(const KeyArith& ar, std::uint64_t k) const { return ok_[ar.trace(k) * m_ + ar.det(k)] != 0; }

 private:
  std::uint64_t m_;
  std::vector<std::uint8_t> ok_;
};

// Closed set under construction: elements in BFS order plus a hash set.
struct Closed {
  KeySet seen{64};
  Keys elems;
  Keys gens;
};

// Adds x as a generator. Fails when an element breaks the predicate or the
// group would grow past `limit`.
bool extend(const KeyArith& ar, const PredTable* pt, Closed& s, std::uint64_t x, std::size_t limit) {
  if (s.seen.contains(x)) return true;
  s.gens.push_back(x);
  const std::size_t old_size = s.elems.size();
  const std::size_t new_gen = s.gens.size() - 1;
  for (std::size_t i = 0; i < s.elems.size(); ++i) {
    const std::uint64_t e = s.elems[i];
    for (std::size_t g = i < old_size ? new_gen : 0; g < s.gens.size(); ++g) {
      std::uint64_t y = ar.mul(e, s.gens[g]);
      if (s.seen.insert(y)) {
        if (pt && !pt->ok(ar, y)) return false;
        s.elems.push_back(y);
        if (s.elems.size() > limit) return false;
      }
    }
  }
  return true;
}

Closed trivial_closed(const KeyArith& ar) {
  Closed c;
  c.seen.insert(ar.identity());
  c.elems.push_back(ar.identity());
  return c;
}

// Generators of the scalar subgroup mod p^k, as matrix keys.
Keys scalar_generators(const PrimePowerModulus& mod) {
  Keys out;
  std::vector<std::uint64_t> group{1 % mod.modulus()};
  KeySet seen(64);
  seen.insert(2);  // offset by one so zero never collides with the empty marker
  for (std::uint64_t u = 2; u < mod.modulus(); ++u) {
    if (!mod.is_unit(u) || seen.contains(u + 1)) continue;
    out.push_back(KeyArith::pack(u, 0, 0, u));
    std::vector<std::uint64_t> fresh = group;
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      std::uint64_t y = mod.mul(fresh[i], u);
      if (seen.insert(y + 1)) fresh.push_back(y);
    }
    group.swap(fresh);
  }
  return out;
}

Closed scalar_closed(const KeyArith& ar, bool with_scalars) {
  Closed c = trivial_closed(ar);
  if (with_scalars) {
    for (auto s : scalar_generators(ar.modulus())) extend(ar, nullptr, c, s, SIZE_MAX);
  }
  return c;
}

// Greedy generators of `keys` modulo the scalar subgroup (or modulo nothing).
Keys minimal_generators(const KeyArith& ar, const Keys& preferred, const Keys& all_keys, bool with_scalars) {
  Closed c = scalar_closed(ar, with_scalars);
  Keys out;
  auto consider = [&](std::uint64_t x) {
    if (c.seen.contains(x)) return;
    out.push_back(x);
    extend(ar, nullptr, c, x, SIZE_MAX);
  };
  for (auto x : preferred) consider(x);
  for (auto x : all_keys) {
    if (c.elems.size() == all_keys.size()) break;
    consider(x);
  }
  if (c.elems.size() != all_keys.size()) fail(ErrorCode::kInternal, "generator selection did not reach the group");
  return out;
}

// g w g^-1 over F_p, with w given as a code.
std::uint32_t conj_code(std::uint64_t g_key, std::uint32_t w, std::uint32_t p) {
  PrimePowerModulus fp(p, 1);
  KeyArith ar(fp);
  std::uint64_t g = ar.reduce_to(g_key, p);
  auto e = decode_code(w, p);
  // Additive conjugation works on any matrix, invertible or not.
  std::uint64_t wk = KeyArith::pack(e[0], e[1], e[2], e[3]);
  std::uint64_t r = ar.mul(ar.mul(g, wk), ar.inv(g));
  return encode_code({KeyArith::entry(r, 0), KeyArith::entry(r, 1), KeyArith::entry(r, 2), KeyArith::entry(r, 3)}, p);
}

struct ClassRecord {
  Keys keys;  // sorted, at the current level
  Keys gens;  // generators modulo scalars
};

struct LevelContext {
  PrimePowerModulus mod;  // current level p^k
  KeyArith ar;
  bool with_scalars;
};

std::vector<KeySet> reductions(const Keys& keys, const PrimePowerModulus& mod) {
  KeyArith ar(mod);
  std::vector<KeySet> out;
  for (unsigned j = 1; j <= mod.exponent(); ++j) {
    const std::uint64_t mj = mod.power(j);
    KeySet s(keys.size());
    for (auto k : keys) s.insert(ar.reduce_to(k, mj));
    out.push_back(std::move(s));
  }
  return out;
}

// Generators of the normaliser of a group at level p^k, modulo scalars.
Keys normalizer_generators(const ClassRecord& g, const PrimePowerModulus& mod) {
  const unsigned n = mod.exponent();
  const std::uint64_t p = mod.prime();
  auto targets = reductions(g.keys, mod);
  std::vector<PrimePowerModulus> mods;
  std::vector<Keys> gens;
  for (unsigned j = 1; j <= n; ++j) {
    mods.push_back(mod.reduced(j));
    Keys gj;
    for (auto x : g.gens) gj.push_back(KeyArith(mod).reduce_to(x, mod.power(j)));
    gens.push_back(std::move(gj));
  }
  KeyArith top(mod);
  Closed found = scalar_closed(top, true);
  Keys out;

  auto ok_at = [&](unsigned j, std::uint64_t pk) {
    KeyArith ar(mods[j - 1]);
    std::uint64_t pinv = ar.inv(pk);
    for (auto x : gens[j - 1]) {
      if (!targets[j - 1].contains(ar.mul(ar.mul(pk, x), pinv))) return false;
    }
    return true;
  };
  std::function<void(unsigned, std::uint64_t)> dfs = [&](unsigned j, std::uint64_t pk) {
    if (!ok_at(j, pk)) return;
    if (j == n) {
      if (!found.seen.contains(pk)) {
        out.push_back(pk);
        extend(top, nullptr, found, pk, SIZE_MAX);
      }
      return;
    }
    const std::uint64_t step = mods[j - 1].modulus();
    int pinned = 0;
    while (KeyArith::entry(pk, pinned) % p == 0) ++pinned;
    const std::uint64_t total = p * p * p * p;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code, e[4];
      bool skip = false;
      for (int i = 0; i < 4; ++i) {
        std::uint64_t dlt = c % p;
        c /= p;
        if (i == pinned && dlt != 0) skip = true;
        e[i] = KeyArith::entry(pk, i) + dlt * step;
      }
      if (!skip) dfs(j + 1, KeyArith::pack(e[0], e[1], e[2], e[3]));
    }
  };
  KeyArith a1(mods[0]);
  for (std::uint64_t code = 0; code < p * p * p * p; ++code) {
    std::uint64_t c = code, e[4];
    for (int i = 0; i < 4; ++i) {
      e[i] = c % p;
      c /= p;
    }
    std::uint64_t first = e[0] != 0 ? e[0] : (e[1] != 0 ? e[1] : (e[2] != 0 ? e[2] : e[3]));
    if (first != 1) continue;
    std::uint64_t pk = KeyArith::pack(e[0], e[1], e[2], e[3]);
    if (!mods[0].is_unit(a1.det(pk))) continue;
    dfs(1, pk);
  }
  return out;
}

struct FiberOutput {
  std::vector<ClassRecord> classes;
};

std::uint64_t hash_keys(const Keys& k) {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto x : k) {
    h ^= x;
    h *= 1099511628211ULL;
    h ^= h >> 31;
  }
  return h;
}

// All lifts of `parent` (level p^k) to p^(k+1), up to conjugacy by the
// preimage of its normaliser. On the last level only fiber-maximal lifts.
FiberOutput lift_fiber(const ClassRecord& parent, const PrimePowerModulus& mod_k, const PredTable& pt,
                       bool with_scalars, bool maximal_only, std::size_t cap) {
  const std::uint64_t p = mod_k.prime();
  const PrimePowerModulus mod_up(p, mod_k.exponent() + 1);
  const KeyArith ar_k(mod_k), ar(mod_up);
  const std::uint64_t step = mod_k.modulus();

  // Orders of the partial groups mod p^k.
  std::vector<std::size_t> target{};
  {
    Closed c = scalar_closed(ar_k, with_scalars);
    target.push_back(c.elems.size());
    for (auto g : parent.gens) {
      extend(ar_k, nullptr, c, g, SIZE_MAX);
      target.push_back(c.elems.size());
    }
    if (c.elems.size() != parent.keys.size()) fail(ErrorCode::kInternal, "class generators do not generate the class");
  }

  const auto& spaces = all_subspaces(static_cast<std::uint32_t>(p));
  const std::uint32_t identity_code = 1 + static_cast<std::uint32_t>(p * p * p);
  std::vector<Keys> lifts;
  std::vector<Keys> lift_gens;

  for (const auto& w : spaces) {
    if (with_scalars && !std::binary_search(w.codes.begin(), w.codes.end(), identity_code)) continue;
    bool stable = true;
    for (auto g : parent.gens) {
      for (auto b : w.basis) {
        if (!std::binary_search(w.codes.begin(), w.codes.end(), conj_code(g, b, static_cast<std::uint32_t>(p)))) {
          stable = false;
          break;
        }
      }
      if (!stable) break;
    }
    if (!stable) continue;
    const std::size_t wsize = w.codes.size();

    Closed seed = trivial_closed(ar);
    bool ok = true;
    std::size_t limit0 = target[0] * wsize;
    if (with_scalars) {
      for (auto s : scalar_generators(mod_up)) ok = ok && extend(ar, &pt, seed, s, limit0);
    }
    Keys kernel_gens;
    for (auto b : w.basis) {
      auto e = decode_code(b, static_cast<std::uint32_t>(p));
      std::uint64_t k = KeyArith::pack((1 + e[0] * step) % ar.modulus().modulus(), e[1] * step, e[2] * step,
                                       (1 + e[3] * step) % ar.modulus().modulus());
      kernel_gens.push_back(k);
      ok = ok && extend(ar, &pt, seed, k, limit0);
    }
    if (!ok || seed.elems.size() != limit0) continue;

    auto reps = coset_reps(w, static_cast<std::uint32_t>(p));
    std::vector<std::uint64_t> chosen;
    std::function<void(std::size_t, const Closed&)> dfs = [&](std::size_t i, const Closed& cur) {
      if (i == parent.gens.size()) {
        Keys keys = cur.elems;
        std::sort(keys.begin(), keys.end());
        lifts.push_back(std::move(keys));
        Keys gens = chosen;
        gens.insert(gens.end(), kernel_gens.begin(), kernel_gens.end());
        lift_gens.push_back(std::move(gens));
        return;
      }
      const std::uint64_t g = parent.gens[i];
      const std::size_t limit = target[i + 1] * wsize;
      if (limit > cap) fail(ErrorCode::kCapacity, "lift exceeds the element cap");
      for (auto r : reps) {
        // Fibre over g is g * (I + p^k W), so step through g * (I + p^k r).
        auto e = decode_code(r, static_cast<std::uint32_t>(p));
        const std::uint64_t mu = mod_up.modulus();
        std::uint64_t x = ar.mul(g, KeyArith::pack((1 + e[0] * step) % mu, e[1] * step, e[2] * step,
                                                   (1 + e[3] * step) % mu));
        Closed next = cur;
        if (!extend(ar, &pt, next, x, limit) || next.elems.size() != limit) continue;
        chosen.push_back(x);
        dfs(i + 1, next);
        chosen.pop_back();
      }
    };
    dfs(0, seed);
  }

  // Different coset choices can land on the same group.
  {
    std::vector<std::size_t> idx(lifts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return lifts[a] < lifts[b]; });
    std::vector<Keys> l2, g2;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i > 0 && lifts[idx[i]] == lifts[idx[i - 1]]) continue;
      l2.push_back(std::move(lifts[idx[i]]));
      g2.push_back(std::move(lift_gens[idx[i]]));
    }
    lifts.swap(l2);
    lift_gens.swap(g2);
  }

  if (maximal_only) {
    std::vector<Keys> l2, g2;
    for (std::size_t i = 0; i < lifts.size(); ++i) {
      bool contained = false;
      for (std::size_t j = 0; j < lifts.size() && !contained; ++j) {
        if (j == i || lifts[j].size() <= lifts[i].size()) continue;
        contained = std::includes(lifts[j].begin(), lifts[j].end(), lifts[i].begin(), lifts[i].end());
      }
      if (!contained) {
        l2.push_back(std::move(lifts[i]));
        g2.push_back(std::move(lift_gens[i]));
      }
    }
    lifts.swap(l2);
    lift_gens.swap(g2);
  }

  FiberOutput out;
  if (lifts.empty()) return out;

  // Orbits under conjugation by the preimage of the parent's normaliser.
  Keys conj;
  for (auto nk : normalizer_generators(parent, mod_k)) conj.push_back(nk);
  for (int pos = 0; pos < 4; ++pos) {
    std::uint64_t e[4] = {1, 0, 0, 1};
    e[pos] = (e[pos] + step) % mod_up.modulus();
    conj.push_back(KeyArith::pack(e[0], e[1], e[2], e[3]));
  }
  std::unordered_multimap<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < lifts.size(); ++i) index.emplace(hash_keys(lifts[i]), i);
  auto find = [&](const Keys& k) -> std::size_t {
    auto range = index.equal_range(hash_keys(k));
    for (auto it = range.first; it != range.second; ++it) {
      if (lifts[it->second] == k) return it->second;
    }
    std::string msg = "conjugate of a lift is missing from its fiber (" + std::to_string(lifts.size()) + " lifts):";
    for (auto x : k) msg += " " + ar.mat(x).to_string();
    fail(ErrorCode::kInternal, msg);
  };
  std::vector<char> visited(lifts.size(), 0);
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    if (visited[i]) continue;
    std::vector<std::size_t> orbit{i};
    visited[i] = 1;
    for (std::size_t q = 0; q < orbit.size(); ++q) {
      const Keys& h = lifts[orbit[q]];
      for (auto c : conj) {
        std::uint64_t cinv = ar.inv(c);
        Keys img;
        img.reserve(h.size());
        for (auto x : h) img.push_back(ar.mul(ar.mul(c, x), cinv));
        std::sort(img.begin(), img.end());
        std::size_t j = find(img);
        if (!visited[j]) {
          visited[j] = 1;
          orbit.push_back(j);
        }
      }
    }
    // Lifts are sorted, so the smallest index is the lexicographic minimum.
    std::size_t rep = *std::min_element(orbit.begin(), orbit.end());
    ClassRecord rec;
    rec.keys = lifts[rep];
    rec.gens = minimal_generators(ar, lift_gens[rep], rec.keys, with_scalars);
    out.classes.push_back(std::move(rec));
  }
  return out;
}

std::vector<ClassRecord> base_classes(const PrimePowerModulus& mod1, const PredTable& pt, bool with_scalars) {
  KeyArith ar(mod1);
  MatGroup gl = full_gl2(mod1);
  Keys good;
  for (auto k : gl.keys()) {
    if (pt.ok(ar, k)) good.push_back(k);
  }
  Closed start = scalar_closed(ar, with_scalars);
  for (auto x : start.elems) {
    if (!pt.ok(ar, x)) return {};
  }
  auto canonical = [&](const Keys& keys) {
    Keys best;
    for (auto pk : gl.keys()) {
      std::uint64_t pinv = ar.inv(pk);
      Keys img;
      for (auto x : keys) img.push_back(ar.mul(ar.mul(pk, x), pinv));
      std::sort(img.begin(), img.end());
      if (best.empty() || img < best) best = std::move(img);
    }
    return best;
  };
  std::map<Keys, Keys> seen;  // canonical keys -> generators
  std::vector<std::pair<Closed, Keys>> frontier;
  Keys k0 = start.elems;
  std::sort(k0.begin(), k0.end());
  seen.emplace(canonical(k0), Keys{});
  frontier.push_back({start, {}});
  while (!frontier.empty()) {
    std::vector<std::pair<Closed, Keys>> next;
    for (auto& [grp, gens] : frontier) {
      for (auto x : good) {
        if (grp.seen.contains(x)) continue;
        Closed c = grp;
        if (!extend(ar, &pt, c, x, SIZE_MAX)) continue;
        Keys keys = c.elems;
        std::sort(keys.begin(), keys.end());
        Keys can = canonical(keys);
        if (seen.count(can)) continue;
        Keys g2 = gens;
        g2.push_back(x);
        seen.emplace(can, g2);
        next.push_back({std::move(c), std::move(g2)});
      }
    }
    frontier.swap(next);
  }
  std::vector<ClassRecord> out;
  for (const auto& [can, gens] : seen) {
    ClassRecord rec;
    rec.keys = can;
    rec.gens = minimal_generators(ar, {}, rec.keys, with_scalars);
    out.push_back(std::move(rec));
  }
  return out;
}

MatGroup to_group(const ClassRecord& rec, const PrimePowerModulus& mod, bool with_scalars) {
  KeyArith ar(mod);
  std::vector<Mat2> gens;
  if (with_scalars) {
    for (auto s : scalar_generators(mod)) gens.push_back(ar.mat(s));
  }
  for (auto g : rec.gens) gens.push_back(ar.mat(g));
  return MatGroup(mod, std::move(gens), rec.keys);
}

void write_checkpoint(const std::string& path, const PrimePowerModulus& target, unsigned done,
                      const std::vector<ClassRecord>& classes) {
  if (path.empty()) return;
  KeyArith ar(target.reduced(done));
  nlohmann::json j;
  j["prime"] = target.prime();
  j["target_exponent"] = target.exponent();
  j["completed_exponent"] = done;
  j["classes"] = nlohmann::json::array();
  for (const auto& c : classes) {
    nlohmann::json gens = nlohmann::json::array();
    for (auto g : c.gens) gens.push_back(ar.mat(g).to_string());
    j["classes"].push_back({{"order", c.keys.size()}, {"generators", gens}});
  }
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

// Runs `work(i)` for i in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn work) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          work(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct LevelRun {
  std::vector<ClassRecord> classes;  // at the final exponent
  std::vector<LevelSummary> levels;
};

LevelRun run_levels(const PrimePowerModulus& mod, ElementPredicate pred, const SearchOptions& opt,
                    bool maximal_last) {
  const unsigned n = mod.exponent();
  const std::uint64_t p = mod.prime();
  LevelRun run;
  auto t0 = std::chrono::steady_clock::now();
  auto mod1 = mod.reduced(1);
  std::vector<ClassRecord> classes = base_classes(mod1, PredTable(mod1, pred), opt.require_scalars);
  if (maximal_last && n == 1) {
    std::vector<ClassRecord> keep;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      bool contained = false;
      for (std::size_t j = 0; j < classes.size(); ++j) {
        if (classes[j].keys.size() > classes[i].keys.size() &&
            conjugate_into(to_group(classes[i], mod1, opt.require_scalars),
                           to_group(classes[j], mod1, opt.require_scalars))) {
          contained = true;
        }
      }
      if (!contained) keep.push_back(classes[i]);
    }
    classes.swap(keep);
  }
  auto secs = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  run.levels.push_back({1, classes.size(), secs()});
  write_checkpoint(opt.checkpoint_path, mod, 1, classes);
  if (opt.progress) opt.progress("level 1: " + std::to_string(classes.size()) + " classes");

  for (unsigned k = 1; k < n; ++k) {
    auto mod_k = mod.reduced(k);
    PredTable pt(PrimePowerModulus(p, k + 1), pred);
    const bool last = (k + 1 == n) && maximal_last;
    std::vector<FiberOutput> outs(classes.size());
    parallel_for(classes.size(), opt.threads, [&](std::size_t i) {
      outs[i] = lift_fiber(classes[i], mod_k, pt, opt.require_scalars, last, opt.cap);
    });
    std::vector<ClassRecord> next;
    for (auto& o : outs) {
      for (auto& c : o.classes) next.push_back(std::move(c));
    }
    classes.swap(next);
    run.levels.push_back({k + 1, classes.size(), secs()});
    write_checkpoint(opt.checkpoint_path, mod, k + 1, classes);
    if (opt.progress) {
      opt.progress("level " + std::to_string(k + 1) + ": " + std::to_string(classes.size()) + " classes");
    }
  }
  run.classes = std::move(classes);
  return run;
}

std::vector<MatGroup> sorted_groups(std::vector<MatGroup> groups) {
  std::vector<std::pair<Fingerprint, std::size_t>> order;
  for (std::size_t i = 0; i < groups.size(); ++i) order.emplace_back(fingerprint(groups[i]), i);
  std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return groups[a.second].keys() < groups[b.second].keys();
  });
  std::vector<MatGroup> out;
  for (const auto& [f, i] : order) out.push_back(std::move(groups[i]));
  return out;
}

// Drops groups conjugate into a strictly larger member of the list.
// Only candidates flagged in `test` are examined; the rest still act as containers.
std::vector<MatGroup> globally_maximal(const std::vector<MatGroup>& cands, const std::vector<char>& test,
                                       unsigned threads) {
  std::vector<std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t>> td(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    KeyArith ar(cands[i].modulus());
    for (auto k : cands[i].keys()) ++td[i][{ar.trace(k), ar.det(k)}];
  }
  auto dominated = [&](std::size_t i, std::size_t j) {
    for (const auto& [key, count] : td[i]) {
      auto it = td[j].find(key);
      if (it == td[j].end() || it->second < count) return false;
    }
    return true;
  };
  std::vector<char> keep(test);
  parallel_for(cands.size(), threads, [&](std::size_t i) {
    if (!test[i]) return;
    for (std::size_t j = 0; j < cands.size(); ++j) {
      if (cands[j].order() <= cands[i].order() || cands[j].order() % cands[i].order() != 0) continue;
      if (!dominated(i, j)) continue;
      if (conjugate_into(cands[i], cands[j])) {
        keep[i] = 0;
        return;
      }
    }
  });
  std::vector<MatGroup> out;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (keep[i]) out.push_back(cands[i]);
  }
  return out;
}

}  // namespace

SubgroupEnumeration enumerate_subgroups(const PrimePowerModulus& mod, ElementPredicate pred,
                                        const SearchOptions& options) {
  auto run = run_levels(mod, pred, options, false);
  SubgroupEnumeration out;
  std::vector<MatGroup> groups;
  for (const auto& c : run.classes) groups.push_back(to_group(c, mod, options.require_scalars));
  out.groups = sorted_groups(std::move(groups));
  out.levels = std::move(run.levels);
  return out;
}

MaximalSearchResult search_maximal(const PrimePowerModulus& mod, ElementPredicate pred, const SearchOptions& options) {
  auto run = run_levels(mod, pred, options, true);
  std::vector<MatGroup> cands;
  for (const auto& c : run.classes) cands.push_back(to_group(c, mod, options.require_scalars));
  std::vector<char> exceptional(cands.size(), 0);
  parallel_for(cands.size(), options.threads,
               [&](std::size_t i) { exceptional[i] = !cartan_borel_factorization(cands[i]); });
  MaximalSearchResult out;
  out.levels = std::move(run.levels);
  if (options.exceptional_only) {
    out.maximal = sorted_groups(globally_maximal(cands, exceptional, options.threads));
    out.maximal_exceptional = out.maximal;
    return out;
  }
  out.maximal = sorted_groups(globally_maximal(cands, std::vector<char>(cands.size(), 1), options.threads));
  for (const auto& g : out.maximal) {
    if (!cartan_borel_factorization(g)) out.maximal_exceptional.push_back(g);
  }
  return out;
}

bool is_exceptional_2adic(const MatGroup& g) {
  if (g.modulus().prime() != 2) fail(ErrorCode::kInvalidArgument, "exceptional test is for powers of 2");
  return all_charpoly_root(g) && !cartan_borel_factorization(g);
}

MaximalSearchResult search_maximal_exceptional_2adic(unsigned n, const SearchOptions& options) {
  if (n == 0 || n > 6) fail(ErrorCode::kInvalidArgument, "2-adic search supports 1 <= n <= 6");
  SearchOptions opt = options;
  opt.exceptional_only = true;
  return search_maximal(PrimePowerModulus(2, n), ElementPredicate::kCharRoot, opt);
}

}  // namespace lgp
