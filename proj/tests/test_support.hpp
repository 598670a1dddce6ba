#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "tempsym/permutation.hpp"
#include "tempsym/temporal_graph.hpp"

namespace testing_support {

using namespace tempsym;

inline TemporalGraph load_sample(const std::string& name) {
  std::ifstream in(std::string(TEMPSYM_SAMPLES) + "/" + name);
  return parse_temporal_graph(in);
}

// Random spanning tree plus a few extra edges.
inline EdgeList random_connected_snapshot(std::mt19937_64& rng, int n, double extra) {
  EdgeList edges;
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    edges.push_back(normalized(order[i], order[pick(rng)]));
  }
  std::bernoulli_distribution coin(extra);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (coin(rng)) edges.push_back({a, b});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// n in 1..max_n, lifetime in 1..max_lifetime; steps sometimes repeat so that
// symmetric instances show up regularly.
inline TemporalGraph random_connected(std::mt19937_64& rng, int max_n, int max_lifetime) {
  std::uniform_int_distribution<int> pn(1, max_n), pl(1, max_lifetime);
  std::uniform_real_distribution<double> pe(0.0, 0.5);
  const int n = pn(rng), lifetime = pl(rng);
  TemporalGraph::Builder b(n);
  std::vector<EdgeList> seen;
  std::bernoulli_distribution repeat(0.3);
  for (int t = 0; t < lifetime; ++t) {
    if (!seen.empty() && repeat(rng)) {
      std::uniform_int_distribution<std::size_t> pick(0, seen.size() - 1);
      b.append_edges(seen[pick(rng)]);
      continue;
    }
    seen.push_back(random_connected_snapshot(rng, n, pe(rng)));
    b.append_edges(seen.back());
  }
  return std::move(b).build();
}

// Z_m acting on k layers of m vertices, vertex (i, a) = a*m + i. Each step is a
// union of shifted matchings between layers; a stride-1 cycle on layer 0 and a
// shift-0 tree over the layers keep every step connected.
inline TemporalGraph random_layered(std::mt19937_64& rng, int m, int k, int lifetime) {
  TemporalGraph::Builder b(m * k);
  std::bernoulli_distribution coin(0.25);
  std::uniform_int_distribution<int> shift(0, m - 1);
  for (int t = 0; t < lifetime; ++t) {
    EdgeList edges;
    auto add_shifted = [&](int a, int c, int s) {
      for (int i = 0; i < m; ++i) {
        Vertex x = a * m + i, y = c * m + (i + s) % m;
        if (x != y) edges.push_back(normalized(x, y));
      }
    };
    add_shifted(0, 0, 1);
    for (int a = 1; a < k; ++a) {
      std::uniform_int_distribution<int> parent(0, a - 1);
      add_shifted(parent(rng), a, 0);
    }
    for (int a = 0; a < k; ++a) {
      for (int c = a; c < k; ++c) {
        if (coin(rng)) add_shifted(a, c, shift(rng));
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    b.append_edges(edges);
  }
  return std::move(b).build();
}

// The step schedule of g repeated until it reaches `lifetime` steps.
inline TemporalGraph repeat_schedule(const TemporalGraph& g, Time lifetime) {
  TemporalGraph::Builder b(g.n());
  for (Time t = 0; t < lifetime; ++t) b.append_edges(g.at(t % g.lifetime() + 1).edges());
  return std::move(b).build();
}

inline Permutation random_permutation(std::mt19937_64& rng, int n) {
  std::vector<Vertex> image(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) image[i] = i;
  std::shuffle(image.begin(), image.end(), rng);
  return Permutation(std::move(image));
}

// Connected instances with lifetime n^2 and orbit numbers from 1 to n.
inline TemporalGraph random_rendezvous_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  switch (kind(rng)) {
    case 0: {
      std::uniform_int_distribution<int> pm(2, 6), pk(1, 4);
      const int m = pm(rng), k = pk(rng);
      return random_layered(rng, m, k, m * m * k * k);
    }
    case 1: {
      TemporalGraph g = random_connected(rng, 8, 4);
      return repeat_schedule(g, std::max<Time>(1, static_cast<Time>(g.n()) * g.n()));
    }
    default: {
      std::uniform_int_distribution<int> half(2, 7);
      const int n = 2 * half(rng);
      std::uniform_int_distribution<int> pr(2, n / 2);
      const int r = pr(rng);
      // star family with a random step appended at the front to vary orbit sizes
      TemporalGraph::Builder b(n);
      b.append_edges(random_connected_snapshot(rng, n, 0.1));
      for (Vertex c = 0; b.lifetime() < static_cast<Time>(n) * n; c = (c + 1) % (r - 1)) {
        EdgeList star;
        for (Vertex v = 0; v < n; ++v) {
          if (v != c) star.push_back(normalized(c, v));
        }
        std::sort(star.begin(), star.end());
        b.append_edges(star);
      }
      return std::move(b).build();
    }
  }
}

}  // namespace testing_support
