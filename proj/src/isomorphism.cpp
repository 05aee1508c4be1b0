#include <algorithm>
#include <map>
#include <numeric>

#include "walkspec/error.hpp"
#include "walkspec/graph.hpp"

namespace walkspec {

namespace {

// Joint colour refinement on the disjoint union of g and h so that colour ids
// are comparable across the two graphs. Vertex v of h has index n + v.
std::vector<std::size_t> refine(const Graph& g, const Graph& h) {
  const std::size_t n = g.order();
  auto adjacent = [&](std::size_t a, std::size_t b) {
    if (a < n && b < n) return g.adjacent(a, b);
    if (a >= n && b >= n) return h.adjacent(a - n, b - n);
    return false;
  };
  std::vector<std::size_t> colour(2 * n);
  for (std::size_t v = 0; v < n; ++v) {
    colour[v] = g.degree(v);
    colour[n + v] = h.degree(v);
  }
  std::size_t classes = 0;
  while (true) {
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ids;
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> sigs(2 * n);
    for (std::size_t v = 0; v < 2 * n; ++v) {
      std::vector<std::size_t> around;
      for (std::size_t w = 0; w < 2 * n; ++w)
        if (adjacent(v, w)) around.push_back(colour[w]);
      std::sort(around.begin(), around.end());
      sigs[v] = {colour[v], std::move(around)};
      ids.emplace(sigs[v], 0);
    }
    std::size_t next = 0;
    for (auto& [sig, id] : ids) id = next++;
    for (std::size_t v = 0; v < 2 * n; ++v) colour[v] = ids[sigs[v]];
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return colour;
}

struct Matcher {
  const Graph& g;
  const Graph& h;
  const std::vector<std::size_t>& colour;
  std::vector<std::size_t> order;    // g-vertices in matching order
  std::vector<std::size_t> image;    // g-vertex -> h-vertex
  std::vector<bool> used;

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    const std::size_t n = g.order();
    const std::size_t u = order[depth];
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || colour[n + w] != colour[u]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const std::size_t x = order[d];
        ok = g.adjacent(u, x) == h.adjacent(w, image[x]);
      }
      if (!ok) continue;
      image[u] = w;
      used[w] = true;
      if (extend(depth + 1)) return true;
      used[w] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<std::size_t>> find_isomorphism(const Graph& g, const Graph& h,
                                                         const IsomorphismOptions& options) {
  if (g.order() != h.order()) throw DomainError("isomorphic: graphs have different orders");
  const std::size_t n = g.order();
  if (n > options.max_order) {
    throw ResourceCapError("isomorphic: order " + std::to_string(n) + " exceeds configured limit " +
                           std::to_string(options.max_order));
  }
  if (g.edge_count() != h.edge_count()) return std::nullopt;

  const std::vector<std::size_t> colour = refine(g, h);
  std::map<std::size_t, std::ptrdiff_t> balance;
  for (std::size_t v = 0; v < n; ++v) {
    ++balance[colour[v]];
    --balance[colour[n + v]];
  }
  for (const auto& [c, b] : balance)
    if (b != 0) return std::nullopt;

  std::map<std::size_t, std::size_t> class_size;
  for (std::size_t v = 0; v < n; ++v) ++class_size[colour[v]];
  Matcher m{g, h, colour, {}, std::vector<std::size_t>(n), std::vector<bool>(n, false)};
  m.order.resize(n);
  std::iota(m.order.begin(), m.order.end(), std::size_t{0});
  std::stable_sort(m.order.begin(), m.order.end(), [&](std::size_t a, std::size_t b) {
    return class_size[colour[a]] < class_size[colour[b]];
  });
  if (!m.extend(0)) return std::nullopt;
  // image maps g -> h; report it as h-vertex for each g-vertex.
  return m.image;
}

bool isomorphic(const Graph& g, const Graph& h, const IsomorphismOptions& options) {
  return find_isomorphism(g, h, options).has_value();
}

}  // namespace walkspec
