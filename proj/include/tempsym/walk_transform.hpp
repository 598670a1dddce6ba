#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "tempsym/errors.hpp"
#include "tempsym/perm_group.hpp"
#include "tempsym/permutation.hpp"
#include "tempsym/vertex_set.hpp"
#include "tempsym/walk.hpp"

namespace tempsym {

struct TransformRequest {
  TemporalWalk walk;
  VertexSet orbit;    // S
  VertexSet visited;  // T, a subset of S
  VertexSet starts;   // X, a subset of S
};

struct TransformResult {
  Permutation sigma;
  int new_count = 0;  // |sigma(Y) ∩ (S \ T)|
  int k = 0;          // |Y|
  bool sampled = false;
  std::size_t candidates = 0;
};

struct TransformOptions {
  std::size_t cap = kDefaultEnumerationCap;
  std::uint64_t seed = 1;
};

struct AutMaps {
  std::vector<Permutation> maps;
  bool sampled = false;
};

// Uniform draws from Aut[u, X]: a uniform group element g is pulled back into
// the stabilizer of u and pushed to a uniformly chosen x in X, i.e.
// rep(x) rep(g(u))^-1 g. Draws stay as op lists until materialized.
class AutSampler {
 public:
  AutSampler(const PermGroup& group, Vertex u, std::uint64_t seed)
      : own_(group.chain ? nullptr : std::make_shared<const StabilizerChain>(group)),
        chain_(group.chain ? group.chain.get() : own_.get()),
        orbit_(chain_->orbit(u)),
        rng_(seed) {}

  bool contains(Vertex x) const { return orbit_.contains(x); }
  int n() const { return chain_->n(); }

  void draw_word(const std::vector<Vertex>& starts, PermWord& w) {
    chain_->random_element(rng_, w);
    orbit_.append_inverse_word(apply_word(w, orbit_.root()), w);
    std::uniform_int_distribution<std::size_t> pick(0, starts.size() - 1);
    orbit_.append_word(starts[pick(rng_)], w);
  }

  Permutation draw(const std::vector<Vertex>& starts) {
    PermWord w;
    draw_word(starts, w);
    return materialize(w, n());
  }

 private:
  std::shared_ptr<const StabilizerChain> own_;
  const StabilizerChain* chain_;
  ShallowTransversal orbit_;
  std::mt19937_64 rng_;
};

inline const std::vector<Permutation>* group_elements(const PermGroup& group, std::vector<Permutation>& scratch,
                                                      std::size_t cap) {
  if (group.elements) return &*group.elements;
  if (!group.enumerable(cap)) return nullptr;
  scratch = enumerate_group(group, cap);
  return &scratch;
}

// Fills group.elements when the group is small enough, else the sampling chain.
inline void cache_elements(PermGroup& group, std::size_t cap = kDefaultEnumerationCap) {
  if (!group.elements && group.enumerable(cap)) group.elements = enumerate_group(group, cap);
  if (!group.elements) prepare_sampling(group);
}

inline AutMaps aut_maps_into(const PermGroup& group, Vertex u, const VertexSet& starts,
                             const TransformOptions& opt = {}) {
  if (starts.none()) throw DomainError("empty start set");
  AutMaps out;
  std::vector<Permutation> scratch;
  if (const auto* elems = group_elements(group, scratch, opt.cap)) {
    for (const auto& s : *elems) {
      if (starts.test(s(u))) out.maps.push_back(s);
    }
    return out;
  }
  AutSampler sampler(group, u, opt.seed);
  std::vector<Vertex> xs;
  for (Vertex x : members_of(starts)) {
    if (sampler.contains(x)) xs.push_back(x);
  }
  if (xs.empty()) return out;
  out.sampled = true;
  for (int i = 0; i < 64; ++i) out.maps.push_back(sampler.draw(xs));
  return out;
}

namespace detail {

inline bool meets_transform_bound(std::size_t s, std::size_t t, std::size_t x,
                                  int k, int new_count) {
  const auto kk = static_cast<std::uint64_t>(k), nc = static_cast<std::uint64_t>(new_count);
  if (x == s && nc * s < (s - t) * kk) return false;
  if (x > t && nc * x < (x - t) * kk) return false;
  return true;
}

}  // namespace detail

// Picks sigma with sigma(u) in X maximizing the number of walk vertices of S
// that land outside T. Ties go to the lexicographically smallest image; sampled
// searches stop at the first draw that lands all k vertices outside T.
inline TransformResult best_transform(const TransformRequest& req, const PermGroup& group,
                                      const TransformOptions& opt = {}) {
  if (req.walk.empty()) throw DomainError("empty walk");
  const Vertex u = req.walk.front();
  if (!req.orbit.test(u)) throw DomainError("walk does not start in the orbit");
  if (!req.visited.is_subset_of(req.orbit) || !req.starts.is_subset_of(req.orbit)) {
    throw DomainError("visited and start sets must lie in the orbit");
  }
  if (req.starts.none()) throw DomainError("empty start set");
  std::vector<Vertex> ys;
  {
    VertexSet seen(req.orbit.size());
    for (Vertex v : req.walk.positions) {
      if (req.orbit.test(v) && !seen.test(v)) {
        seen.set(v);
        ys.push_back(v);
      }
    }
  }
  const int k = static_cast<int>(ys.size());
  const std::size_t s = req.orbit.count(), t = req.visited.count(), x = req.starts.count();
  auto score = [&](const Permutation& sigma) {
    int c = 0;
    for (Vertex y : ys) {
      Vertex img = sigma(y);
      c += req.orbit.test(img) && !req.visited.test(img);
    }
    return c;
  };

  TransformResult best;
  best.k = k;
  bool have = false;
  auto consider = [&](const Permutation& sigma) {
    ++best.candidates;
    int c = score(sigma);
    if (!have || c > best.new_count || (c == best.new_count && sigma < best.sigma)) {
      best.sigma = sigma;
      best.new_count = c;
      have = true;
    }
  };

  std::vector<Permutation> scratch;
  if (const auto* elems = group_elements(group, scratch, opt.cap)) {
    for (const auto& sigma : *elems) {
      if (req.starts.test(sigma(u))) consider(sigma);
    }
    if (!have) throw DomainError("no automorphism maps the walk start into the start set");
    if (!detail::meets_transform_bound(s, t, x, k, best.new_count)) {
      throw std::logic_error("transform bound unmet on a fully enumerated group");
    }
    return best;
  }

  best.sampled = true;
  AutSampler sampler(group, u, opt.seed);
  std::vector<Vertex> xs;
  for (Vertex v : members_of(req.starts)) {
    if (sampler.contains(v)) xs.push_back(v);
  }
  if (xs.empty()) throw DomainError("no automorphism maps the walk start into the start set");
  PermWord word;
  std::vector<Vertex> imgs;
  auto consider_word = [&]() {
    ++best.candidates;
    imgs = ys;
    apply_word_to(word, imgs);
    int c = 0;
    for (Vertex img : imgs) c += req.orbit.test(img) && !req.visited.test(img);
    if (have && c < best.new_count) return;
    Permutation sigma = materialize(word, sampler.n());
    if (have && c == best.new_count && !(sigma < best.sigma)) return;
    best.sigma = std::move(sigma);
    best.new_count = c;
    have = true;
  };
  std::size_t n_draw = 64 * std::max<std::size_t>(1, t == 0 ? 1 : (x + t - 1) / t);
  for (int round = 0; round < 3; ++round) {
    for (std::size_t i = 0; i < n_draw && best.new_count < k; ++i) {
      sampler.draw_word(xs, word);
      consider_word();
    }
    if (best.new_count == k || detail::meets_transform_bound(s, t, x, k, best.new_count)) return best;
    n_draw *= 4;
  }
  throw GuaranteeUnmet("sampled transforms did not reach the guaranteed count");
}

}  // namespace tempsym
