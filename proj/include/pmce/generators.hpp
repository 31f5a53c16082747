#pragma once

// Seed-deterministic synthetic graphs.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "pmce/errors.hpp"
#include "pmce/graph.hpp"

namespace pmce::gen {

namespace detail {
// mt19937_64 output is fixed by the standard; the double conversion is done
// by hand so results do not depend on the library's distributions.
inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  // Lemire-style rejection to avoid modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}
}  // namespace detail

/// Erdos-Renyi G(n, p): each of the n(n-1)/2 pairs independently.
inline Graph gnp(std::size_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw ContractViolation("gnp: p must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (vertex_t u = 0; u < n; ++u)
    for (vertex_t v = u + 1; v < n; ++v)
      if (detail::unit(rng) < p) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

/// Complete multipartite graph with `parts` parts of three vertices each.
/// It has 3^parts maximal cliques.
inline Graph moon_moser(std::size_t parts) {
  const std::size_t n = 3 * parts;
  std::vector<Edge> edges;
  for (vertex_t u = 0; u < n; ++u)
    for (vertex_t v = u + 1; v < n; ++v)
      if (u / 3 != v / 3) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

enum class CommunityKind {
  Random,        // G(k, community_p)
  CocktailParty  // K_k minus a random perfect matching: 2^(k/2) maximal cliques
};

struct SkewParams {
  std::size_t background_vertices = 10'000;
  double background_avg_degree = 4.0;
  std::size_t community_size = 40;
  CommunityKind community = CommunityKind::CocktailParty;
  double community_p = 0.9;  // Random only
  std::uint64_t seed = 1;
};

/// Sparse random background with one planted dense community. Almost all
/// enumeration work sits in the few roots that touch the community.
inline Graph skew(const SkewParams& sp) {
  const std::size_t n = sp.background_vertices;
  if (sp.community_size > n) throw ContractViolation("skew: community larger than graph");
  if (sp.community_p < 0.0 || sp.community_p > 1.0 || sp.background_avg_degree < 0.0)
    throw ContractViolation("skew: invalid density");
  std::mt19937_64 rng(sp.seed);
  std::vector<Edge> edges;
  if (n >= 2) {
    const auto m = static_cast<std::size_t>(sp.background_avg_degree * static_cast<double>(n) / 2.0);
    for (std::size_t k = 0; k < m; ++k) {
      const auto u = static_cast<vertex_t>(detail::below(rng, n));
      const auto v = static_cast<vertex_t>(detail::below(rng, n));
      edges.emplace_back(u, v);
    }
  }
  // Partial Fisher-Yates for the community members.
  std::vector<vertex_t> ids(n);
  std::iota(ids.begin(), ids.end(), vertex_t{0});
  for (std::size_t i = 0; i < sp.community_size; ++i)
    std::swap(ids[i], ids[i + detail::below(rng, n - i)]);
  // ids[2i] and ids[2i+1] are matching partners, already in random order.
  for (std::size_t a = 0; a < sp.community_size; ++a)
    for (std::size_t b = a + 1; b < sp.community_size; ++b) {
      const bool keep = sp.community == CommunityKind::Random ? detail::unit(rng) < sp.community_p
                                                              : !(a % 2 == 0 && b == a + 1);
      if (keep) edges.emplace_back(ids[a], ids[b]);
    }
  return Graph::from_edges(n, edges);
}

}  // namespace pmce::gen
