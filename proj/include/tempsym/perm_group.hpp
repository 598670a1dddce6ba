#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tempsym/errors.hpp"
#include "tempsym/permutation.hpp"

namespace tempsym {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;
// Upper bound on stored image entries (order * n) during enumeration.
inline constexpr std::uint64_t kEnumerationMemoryCap = std::uint64_t{1} << 26;

class StabilizerChain;

// Generated permutation group with a known order.
struct PermGroup {
  int n = 0;
  std::vector<Permutation> generators;
  std::optional<std::uint64_t> order;  // exact when it fits
  std::optional<std::vector<Permutation>> elements;
  double log10_order = 0.0;
  // base[i] is fixed by every generator with gen_level >= i
  std::vector<Vertex> base;
  std::vector<int> gen_level;
  std::shared_ptr<const StabilizerChain> chain;

  bool trivial() const { return generators.empty(); }

  bool enumerable(std::size_t cap = kDefaultEnumerationCap) const {
    if (!order) return false;
    return *order <= cap && *order * static_cast<std::uint64_t>(std::max(n, 1)) <= kEnumerationMemoryCap;
  }

  // Orbit id per vertex (the orbit minimum).
  std::vector<Vertex> orbit_roots() const {
    DisjointSets ds(n);
    for (const auto& g : generators) ds.unite_generator(g);
    std::vector<Vertex> out(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) out[v] = ds.find(v);
    return out;
  }
};

// All group elements by breadth-first closure; identity first.
inline std::vector<Permutation> enumerate_group(const PermGroup& group,
                                                std::size_t cap = kDefaultEnumerationCap) {
  if (group.order && !group.enumerable(cap)) throw BudgetExceeded("group exceeds the enumeration cap");
  std::vector<Permutation> out{Permutation::identity(group.n)};
  std::unordered_set<Permutation, PermutationHash> seen{out.front()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : group.generators) {
      Permutation next = g * out[i];
      if (seen.insert(next).second) {
        if (out.size() >= cap) throw BudgetExceeded("group exceeds the enumeration cap");
        out.push_back(std::move(next));
      }
    }
  }
  return out;
}

// Group element as a product; letters are applied left to right.
using PermWord = std::vector<const Permutation*>;

inline Vertex apply_word(const PermWord& w, Vertex y) {
  for (const Permutation* p : w) y = (*p)(y);
  return y;
}

// Images of all of `pts` at once, one letter at a time.
inline void apply_word_to(const PermWord& w, std::vector<Vertex>& pts) {
  for (const Permutation* p : w) {
    const Vertex* img = p->image().data();
    for (Vertex& y : pts) y = img[y];
  }
}

inline Permutation materialize(const PermWord& w, int n) {
  std::vector<Vertex> image(static_cast<std::size_t>(n));
  for (Vertex y = 0; y < n; ++y) image[y] = y;
  apply_word_to(w, image);
  return Permutation(std::move(image));
}

// Orbit of `root` with short coset words. Cube elements g_1..g_k are added
// until every orbit point is c^-1 c'(root) for cube products c, c'; words then
// have at most 2k letters. Candidates (ideally random group elements fixing
// the same points as `gens`) are tried first, tree representatives after.
class ShallowTransversal {
 public:
  ShallowTransversal(const std::vector<const Permutation*>& gens, int n, Vertex root,
                     const std::vector<Permutation>& candidates = {})
      : root_(root), index_(static_cast<std::size_t>(n), -1) {
    std::vector<int> via(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    index_[root] = 0;
    members_.push_back(root);
    for (std::size_t i = 0; i < members_.size(); ++i) {
      const Vertex v = members_[i];
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const Vertex w = (*gens[gi])(v);
        if (index_[w] < 0) {
          index_[w] = static_cast<int>(members_.size());
          via[w] = static_cast<int>(gi);
          parent[w] = v;
          members_.push_back(w);
        }
      }
    }
    if (members_.size() == 1) {
      offset_.assign(2, 0);
      return;
    }

    const auto un = static_cast<std::size_t>(n);
    std::vector<Vertex> fwd_prev(un), back_prev(un), src(un);
    std::vector<int> fwd_gen(un), back_gen(un);
    std::vector<char> in_p(un), in_q(un);
    std::size_t covered = 0;
    auto recompute = [&] {
      std::fill(in_p.begin(), in_p.end(), 0);
      std::fill(in_q.begin(), in_q.end(), 0);
      const int k = static_cast<int>(cube_.size());
      std::vector<Vertex> pts{root};
      in_p[root] = 1;
      fwd_prev[root] = -1;
      for (int j = k - 1; j >= 0; --j) {
        const std::size_t m = pts.size();
        for (std::size_t i = 0; i < m; ++i) {
          const Vertex q = cube_[j](pts[i]);
          if (!in_p[q]) {
            in_p[q] = 1;
            fwd_prev[q] = pts[i];
            fwd_gen[q] = j;
            pts.push_back(q);
          }
        }
      }
      for (Vertex v : pts) {
        in_q[v] = 1;
        back_prev[v] = -1;
        src[v] = v;
      }
      for (int j = 0; j < k; ++j) {
        const std::size_t m = pts.size();
        for (std::size_t i = 0; i < m; ++i) {
          const Vertex q = cube_inv_[j](pts[i]);
          if (!in_q[q]) {
            in_q[q] = 1;
            back_prev[q] = pts[i];
            back_gen[q] = j;
            src[q] = src[pts[i]];
            pts.push_back(q);
          }
        }
      }
      covered = pts.size();
    };
    auto add = [&](Permutation g) {
      cube_inv_.push_back(g.inverse());
      cube_.push_back(std::move(g));
      recompute();
    };
    recompute();
    for (const auto& g : candidates) {
      if (covered == members_.size()) break;
      if (!in_q[g(root)]) add(g);
    }
    while (covered < members_.size()) {
      Vertex d = root;
      for (Vertex v : members_) {
        if (!in_q[v]) {
          d = v;
          break;
        }
      }
      PermWord path;
      for (Vertex v = d; v != root; v = parent[v]) path.push_back(gens[via[v]]);
      std::reverse(path.begin(), path.end());
      add(materialize(path, n));
    }

    offset_.push_back(0);
    std::vector<int> part;
    for (Vertex v : members_) {
      part.clear();
      for (Vertex x = src[v]; fwd_prev[x] >= 0; x = fwd_prev[x]) part.push_back(fwd_gen[x]);
      letters_.insert(letters_.end(), part.rbegin(), part.rend());
      part.clear();
      for (Vertex x = v; back_prev[x] >= 0; x = back_prev[x]) part.push_back(~back_gen[x]);
      letters_.insert(letters_.end(), part.rbegin(), part.rend());
      offset_.push_back(static_cast<int>(letters_.size()));
    }
  }

  ShallowTransversal(const ShallowTransversal&) = delete;
  ShallowTransversal& operator=(const ShallowTransversal&) = delete;
  ShallowTransversal(ShallowTransversal&&) = default;

  Vertex root() const { return root_; }
  const std::vector<Vertex>& members() const { return members_; }
  bool contains(Vertex v) const { return index_[v] >= 0; }
  std::size_t cube_size() const { return cube_.size(); }

  // Word mapping root to v.
  void append_word(Vertex v, PermWord& out) const {
    const auto i = static_cast<std::size_t>(index_[v]);
    for (int j = offset_[i]; j < offset_[i + 1]; ++j) out.push_back(letter(letters_[j]));
  }

  // Word mapping v to root.
  void append_inverse_word(Vertex v, PermWord& out) const {
    const auto i = static_cast<std::size_t>(index_[v]);
    for (int j = offset_[i + 1] - 1; j >= offset_[i]; --j) out.push_back(letter(~letters_[j]));
  }

 private:
  const Permutation* letter(int l) const { return l >= 0 ? &cube_[l] : &cube_inv_[~l]; }

  Vertex root_;
  std::vector<Vertex> members_;
  std::vector<int> index_;
  std::vector<Permutation> cube_, cube_inv_;
  std::vector<int> letters_;
  std::vector<int> offset_;
};

// Base and strong generators from the symmetry search: level i holds the
// orbit of base[i] under the generators that fix base[0..i-1]. A pool of
// random elements is pulled down the chain level by level to seed the cubes.
class StabilizerChain {
 public:
  explicit StabilizerChain(const PermGroup& group, std::uint64_t seed = 1) : n_(group.n), gens_(group.generators) {
    if (!gens_.empty() && group.gen_level.size() != gens_.size()) {
      throw DomainError("group has no base for sampling");
    }
    for (const auto& g : gens_) all_.push_back(&g);
    if (gens_.empty()) return;
    pool_ = random_pool(seed);
    std::vector<Permutation> pool = pool_;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t level = 0; level < group.base.size(); ++level) {
      std::vector<const Permutation*> use;
      for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (group.gen_level[i] >= static_cast<int>(level)) use.push_back(&gens_[i]);
      }
      if (use.empty()) break;
      // pulled cube members come back as the identity; stir the pool
      std::uniform_int_distribution<std::size_t> pick_gen(0, use.size() - 1), pick_pool(0, pool.size() - 1);
      for (int round = 0; round < 2; ++round) {
        for (auto& g : pool) g = g * *use[pick_gen(rng)] * pool[pick_pool(rng)];
      }
      ShallowTransversal tr(use, n_, group.base[level], pool);
      if (tr.members().size() == 1) continue;
      PermWord w;
      for (auto& g : pool) {
        w.clear();
        tr.append_inverse_word(g(tr.root()), w);
        std::vector<Vertex> image(static_cast<std::size_t>(n_));
        for (Vertex y = 0; y < n_; ++y) image[y] = apply_word(w, g(y));
        g = Permutation(std::move(image));
      }
      levels_.push_back(std::move(tr));
    }
  }

  StabilizerChain(const StabilizerChain&) = delete;
  StabilizerChain& operator=(const StabilizerChain&) = delete;

  int n() const { return n_; }

  ShallowTransversal orbit(Vertex root) const { return ShallowTransversal(all_, n_, root, pool_); }

  // Uniform over the group: one random coset word per level.
  void random_element(std::mt19937_64& rng, PermWord& out) const {
    out.clear();
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
      std::uniform_int_distribution<std::size_t> pick(0, it->members().size() - 1);
      it->append_word(it->members()[pick(rng)], out);
    }
  }

 private:
  // Product replacement over the generators; only the cube sizes depend on
  // how well these mix.
  std::vector<Permutation> random_pool(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::vector<Permutation> slots = gens_;
    const std::size_t k = gens_.size();
    while (slots.size() < 10) slots.push_back(slots[slots.size() % k]);
    std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
    std::bernoulli_distribution coin(0.5);
    Permutation acc = Permutation::identity(n_);
    auto step = [&] {
      const std::size_t i = pick(rng);
      std::size_t j = pick(rng);
      while (j == i) j = pick(rng);
      const Permutation other = coin(rng) ? slots[j].inverse() : slots[j];
      slots[i] = coin(rng) ? other * slots[i] : slots[i] * other;
      acc = acc * slots[i];
    };
    for (std::size_t i = 0; i < 64 * slots.size() + 50; ++i) step();
    int bits = 1;
    while ((1 << bits) < n_) ++bits;
    std::vector<Permutation> out;
    for (int i = 0; i < 2 * bits + 8; ++i) {
      for (int r = 0; r < 16; ++r) step();
      out.push_back(acc);
    }
    return out;
  }

  int n_;
  std::vector<Permutation> gens_;
  std::vector<const Permutation*> all_;
  std::vector<Permutation> pool_;
  std::vector<ShallowTransversal> levels_;
};

inline void prepare_sampling(PermGroup& group) {
  if (!group.chain) group.chain = std::make_shared<const StabilizerChain>(group);
}

}  // namespace tempsym
