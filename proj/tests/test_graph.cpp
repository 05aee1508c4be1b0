#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "walkspec/error.hpp"
#include "walkspec/graph.hpp"
#include "walkspec/matrix_io.hpp"

using namespace walkspec;

namespace {

Graph path(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.set_edge(i, i + 1);
  return g;
}

Graph cycle(std::size_t n) {
  Graph g = path(n);
  g.set_edge(n - 1, 0);
  return g;
}

Graph complete(std::size_t n) { return Graph(n).complement(); }

Graph star(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 1; i < n; ++i) g.set_edge(0, i);
  return g;
}

Graph petersen() {
  Graph g(10);
  for (std::size_t i = 0; i < 5; ++i) {
    g.set_edge(i, (i + 1) % 5);
    g.set_edge(i, i + 5);
    g.set_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("graph construction") {
  Graph g(4);
  g.set_edge(0, 1);
  g.set_edge(2, 1);
  CHECK(g.adjacent(1, 2));
  CHECK(g.degree(1) == 2);
  CHECK(g.edge_count() == 2);
  g.set_edge(0, 1, false);
  CHECK(g.edge_count() == 1);
  CHECK_THROWS_AS(g.set_edge(0, 0), DomainError);
  CHECK_THROWS_AS(g.set_edge(0, 9), DomainError);
  CHECK(Graph::from_edges(3, {{0, 1}, {1, 2}}) == path(3));
  CHECK(Graph::from_adjacency(path(5).adjacency()) == path(5));
  CHECK(complete(4).edge_count() == 6);
  CHECK(cycle(5).complement().edge_count() == 5);
}

TEST_CASE("adjacency validation") {
  CHECK_THROWS_AS(Graph::from_adjacency(IntMatrix::from_rows({{0, 1}, {0, 0}})), DomainError);
  CHECK_THROWS_AS(Graph::from_adjacency(IntMatrix::from_rows({{1, 0}, {0, 0}})), DomainError);
  CHECK_THROWS_AS(Graph::from_adjacency(IntMatrix::from_rows({{0, 2}, {2, 0}})), DomainError);
  CHECK_THROWS_AS(Graph::from_adjacency(IntMatrix(2, 3)), DomainError);
}

TEST_CASE("relabeling") {
  const Graph g = path(3);  // 0-1-2
  const Graph h = g.relabeled({1, 0, 2});
  CHECK(h.adjacent(0, 1));
  CHECK(h.adjacent(0, 2));
  CHECK_FALSE(h.adjacent(1, 2));
}

TEST_CASE("graph6 reference strings") {
  // produced by networkx.to_graph6_bytes
  const std::vector<std::pair<Graph, std::string>> cases{
      {Graph(0), "?"},
      {Graph(1), "@"},
      {complete(2), "A_"},
      {path(5), "DhC"},
      {cycle(6), "EhEG"},
      {complete(7), "F~~~w"},
      {petersen(), "IheA@GUAo"},
  };
  for (const auto& [g, s] : cases) {
    CHECK(emit_graph6(g) == s);
    CHECK(parse_graph6(s) == g);
  }
}

TEST_CASE("graph6 long form") {
  const std::string p63 =
      "~??~hCGGC@?G?_@?@??_?G?@??C??G??G??C??@???G???_??@???@????_???G???@????C????G????G????C????@?????G?????_????@????"
      "?@??????_?????G?????@??????C??????G??????G??????C??????@???????G???????_??????@???????@????????_???????G???????@"
      "????????C????????G????????G????????C????????@?????????G?????????_????????@?????????@??????????_?????????G";
  CHECK(emit_graph6(path(63)) == p63);
  CHECK(parse_graph6(p63) == path(63));
  const Graph s70 = star(70);
  CHECK(parse_graph6(emit_graph6(s70)) == s70);
  CHECK(emit_graph6(s70).substr(0, 4) == "~?@E");
  CHECK(parse_graph6(">>graph6<<DhC") == path(5));
}

TEST_CASE("graph6 round trip on random graphs") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = oracle::random_graph(rng, trial % 70);
    CHECK(parse_graph6(emit_graph6(g)) == g);
  }
}

TEST_CASE("graph6 errors") {
  CHECK_THROWS_AS(parse_graph6(""), InputError);
  CHECK_THROWS_AS(parse_graph6("D hC"), InputError);
  CHECK_THROWS_AS(parse_graph6("Dh"), InputError);
  CHECK_THROWS_AS(parse_graph6("DhCC"), InputError);
  CHECK_THROWS_AS(parse_graph6("A`"), InputError);  // padding bit set
  CHECK_THROWS_AS(parse_graph6("~?"), InputError);
}

TEST_CASE("walk matrix") {
  const IntMatrix w = walk_matrix(path(3));
  CHECK(w == IntMatrix::from_rows({{1, 1, 2}, {1, 2, 2}, {1, 1, 2}}));
  const Graph g = support::example1_graph();
  const IntMatrix wg = walk_matrix(g);
  const IntMatrix a = g.adjacency();
  IntVector col(10, Integer(1));
  for (std::size_t j = 0; j < 10; ++j) {
    CHECK(wg.column(j) == col);
    col = mat_vec(a, col);
  }
}

TEST_CASE("profile of the fixture") {
  const WalkProfile p = walk_profile(support::example1_graph());
  CHECK(p.controllable);
  CHECK(abs(p.det) == 49248);
  CHECK(abs(p.normalized_det) == 1539);
  CHECK(p.two_adic_valuation == 5);
  REQUIRE(p.primes.size() == 2);
  CHECK(p.primes.at(3).valuation == 4);
  CHECK(p.primes.at(3).rank == 9);
  CHECK(p.primes.at(19).valuation == 1);
  CHECK(p.primes.at(19).rank == 9);
  CHECK(p.last_factor() == 3078);
  CHECK(p.factorization_complete);
}

TEST_CASE("profile invariants on random graphs") {
  std::mt19937_64 rng(61);
  int controllable = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + trial % 11;
    const Graph g = oracle::random_graph(rng, n);
    const WalkProfile p = walk_profile(g);
    CHECK(p.det == oracle::det_rational(p.walk));
    if (!p.controllable) continue;
    ++controllable;
    // 2^{floor(n/2)} | det W
    CHECK(p.two_adic_valuation >= n / 2);
    Integer product = 1;
    for (const auto& d : p.invariant_factors) product *= d;
    CHECK(product == abs(p.det));
    for (const auto& [q, data] : p.primes) {
      CHECK(data.valuation == valuation(p.det, q));
      CHECK(data.rank == oracle::rank_mod_p(p.walk, q.get_si()));
    }
  }
  CHECK(controllable > 20);
}

TEST_CASE("explicit primes") {
  ProfileOptions options;
  options.primes = {5, 7};
  const WalkProfile p = walk_profile(support::example1_graph(), options);
  CHECK(p.primes.count(3) == 1);
  CHECK(p.primes.at(5).valuation == 0);
  CHECK(p.primes.at(5).rank == 10);
  options.primes = {9};
  CHECK_THROWS_AS(walk_profile(support::example1_graph(), options), DomainError);
  options.primes = {2};
  CHECK_THROWS_AS(walk_profile(support::example1_graph(), options), DomainError);
}

TEST_CASE("non-controllable graph") {
  const WalkProfile p = walk_profile(cycle(6));
  CHECK_FALSE(p.controllable);
  CHECK(p.det == 0);
}

TEST_CASE("generalized cospectrality") {
  const Graph g = support::example1_graph();
  std::mt19937_64 rng(67);
  CHECK(generalized_cospectral(g, g.relabeled(random_permutation(rng, 10))));
  // the star K_{1,4} and C_4 plus an isolated vertex are cospectral but not generalized cospectral
  Graph c4(5);
  for (std::size_t i = 0; i < 4; ++i) c4.set_edge(i, (i + 1) % 4);
  CHECK(char_poly(star(5).adjacency()) == char_poly(c4.adjacency()));
  CHECK_FALSE(generalized_cospectral(star(5), c4));
  CHECK_THROWS_AS(generalized_cospectral(path(3), path(4)), DomainError);
}

TEST_CASE("isomorphism on relabeled random graphs") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 14;
    const Graph g = oracle::random_graph(rng, n);
    const Graph h = g.relabeled(random_permutation(rng, n));
    const auto map = find_isomorphism(g, h);
    REQUIRE(map.has_value());
    // g has edge {i, j} iff h has edge {map[i], map[j]}
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(g.adjacent(i, j) == h.adjacent((*map)[i], (*map)[j]));
  }
}

TEST_CASE("non-isomorphic pairs") {
  CHECK_FALSE(isomorphic(path(4), star(4)));
  CHECK_FALSE(isomorphic(cycle(6), Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}})));
  CHECK(isomorphic(petersen(), petersen().relabeled({9, 8, 7, 6, 5, 4, 3, 2, 1, 0})));
  IsomorphismOptions small;
  small.max_order = 5;
  CHECK_THROWS_AS(isomorphic(path(6), path(6), small), ResourceCapError);
  CHECK_THROWS_AS(isomorphic(path(3), path(4)), DomainError);
}

TEST_CASE("matrix file parsing") {
  const auto ms = parse_matrices("# comment\n2 3\n1 2 3\n4 5 6\n\n2 / 3\n3 0\n0 3\n");
  REQUIRE(ms.size() == 2);
  CHECK(ms[0].matrix == IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}}));
  CHECK(ms[0].scale == 1);
  CHECK(ms[1].matrix == IntMatrix::from_rows({{3, 0}, {0, 3}}));
  CHECK(ms[1].scale == 3);
  CHECK(parse_matrices(format_matrix(ms[1].matrix, 3)).at(0).matrix == ms[1].matrix);
  CHECK(parse_matrices("").empty());
}

TEST_CASE("matrix file errors carry line numbers") {
  auto message = [](const std::string& text) {
    try {
      parse_matrices(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("2\n1 2\n1 x\n").rfind("line 3", 0) == 0);
  CHECK(message("2\n1 2\n").find("line") == 0);
  CHECK(message("2\n1 2 3\n4 5\n").rfind("line 2", 0) == 0);
  CHECK(message("2 / 0\n1 0\n0 1\n").rfind("line 1", 0) == 0);
}

TEST_CASE("graph input detection") {
  const auto g6 = parse_graphs("# two graphs\nDhC\n\nIheA@GUAo\n");
  REQUIRE(g6.size() == 2);
  CHECK(g6[0].graph == path(5));
  CHECK(g6[0].line == 2);
  CHECK(g6[1].line == 4);
  const auto adj = parse_graphs(read_text_file(support::fixture("example1/A.txt")));
  REQUIRE(adj.size() == 1);
  CHECK(adj[0].graph == support::example1_graph());
  CHECK(parse_graphs("").empty());
  CHECK_THROWS_AS(parse_graphs("DhC\nD!C\n"), InputError);
  CHECK_THROWS_AS(parse_graphs("2\n0 1\n1 1\n"), InputError);
  CHECK_THROWS_AS(read_text_file("/nonexistent/file"), InputError);
}
