#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace tempsym {

using Vertex = std::int32_t;
using Time = std::int64_t;

using VertexSet = boost::dynamic_bitset<std::uint64_t>;

inline VertexSet make_set(int n, std::initializer_list<Vertex> members = {}) {
  VertexSet s(static_cast<std::size_t>(n));
  for (Vertex v : members) s.set(static_cast<std::size_t>(v));
  return s;
}

inline VertexSet make_set(int n, const std::vector<Vertex>& members) {
  VertexSet s(static_cast<std::size_t>(n));
  for (Vertex v : members) s.set(static_cast<std::size_t>(v));
  return s;
}

inline std::vector<Vertex> members_of(const VertexSet& s) {
  std::vector<Vertex> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != VertexSet::npos; i = s.find_next(i)) {
    out.push_back(static_cast<Vertex>(i));
  }
  return out;
}

template <typename Fn>
void for_each_member(const VertexSet& s, Fn&& fn) {
  for (auto i = s.find_first(); i != VertexSet::npos; i = s.find_next(i)) {
    fn(static_cast<Vertex>(i));
  }
}

}  // namespace tempsym
