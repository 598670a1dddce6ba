#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tempsym/errors.hpp"
#include "tempsym/vertex_set.hpp"

namespace tempsym {

// A bijection on 0..n-1 stored as its image vector: image()[i] == sigma(i).
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Vertex> image) : image_(std::move(image)) {
    std::vector<char> seen(image_.size(), 0);
    for (Vertex v : image_) {
      if (v < 0 || static_cast<std::size_t>(v) >= image_.size() || seen[v]) {
        throw DomainError("permutation image is not a bijection");
      }
      seen[v] = 1;
    }
  }

  static Permutation identity(int n) {
    Permutation p;
    p.image_.resize(static_cast<std::size_t>(n));
    std::iota(p.image_.begin(), p.image_.end(), 0);
    return p;
  }

  // Swaps a and b, fixes everything else.
  static Permutation transposition(int n, Vertex a, Vertex b) {
    Permutation p = identity(n);
    std::swap(p.image_[a], p.image_[b]);
    return p;
  }

  int size() const { return static_cast<int>(image_.size()); }
  Vertex operator()(Vertex v) const { return image_[static_cast<std::size_t>(v)]; }
  const std::vector<Vertex>& image() const { return image_; }

  // (this * other)(x) == this(other(x)).
  Permutation operator*(const Permutation& other) const {
    Permutation out;
    out.image_.resize(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) out.image_[i] = image_[other.image_[i]];
    return out;
  }

  Permutation inverse() const {
    Permutation out;
    out.image_.resize(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) out.image_[image_[i]] = static_cast<Vertex>(i);
    return out;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (image_[i] != static_cast<Vertex>(i)) return false;
    }
    return true;
  }

  VertexSet apply(const VertexSet& s) const {
    VertexSet out(s.size());
    for_each_member(s, [&](Vertex v) { out.set(image_[v]); });
    return out;
  }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

  // One-line image form: "2 1 0".
  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (i) os << ' ';
      os << image_[i];
    }
    return os.str();
  }

  static Permutation parse(const std::string& line) {
    std::istringstream is(line);
    std::vector<Vertex> image;
    Vertex v;
    while (is >> v) image.push_back(v);
    return Permutation(std::move(image));
  }

 private:
  std::vector<Vertex> image_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Vertex v : p.image()) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Plain union-find over 0..n-1 with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  Vertex find(Vertex v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  // Keeps the smaller id as the root so roots are orbit minima.
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  void unite_generator(const Permutation& g) {
    for (Vertex v = 0; v < g.size(); ++v) unite(v, g(v));
  }

 private:
  std::vector<Vertex> parent_;
};

}  // namespace tempsym
