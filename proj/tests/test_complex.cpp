#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plchain/chains.hpp"
#include "plchain/complex.hpp"

using namespace plchain;

TEST_CASE("build_complex: face closure of a triangle") {
  auto k = Complex::build({{0, 1, 2}});
  CHECK(k->total_size() == 7);  // 3 + 3 + 1
  CHECK(k->dim() == 2);
}

TEST_CASE("build_complex: boundary of the 3-simplex") {
  auto k = Complex::build({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  CHECK(k->size(0) == 4);
  CHECK(k->size(1) == 6);
  CHECK(k->size(2) == 4);
}

TEST_CASE("build_complex: duplicate vertex rejected") {
  CHECK_THROWS_AS(Complex::build({{0, 0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Complex::build({}), std::invalid_argument);
}

TEST_CASE("barycentric subdivision counts") {
  auto edge = Complex::build({{0, 1}});
  auto e1 = barycentric_subdivision(edge);
  CHECK(e1->size(0) == 3);
  CHECK(e1->size(1) == 2);

  auto tri = Complex::build({{0, 1, 2}});
  auto t1 = barycentric_subdivision(tri);
  CHECK(t1->size(2) == 6);

  auto sphere = Complex::build({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  auto s1 = barycentric_subdivision(sphere);
  CHECK(s1->size(2) == 24);
  // (n+1)! growth again
  auto s2 = barycentric_subdivision(s1);
  CHECK(s2->size(2) == 144);
}

TEST_CASE("subdivision chain map commutes with boundary") {
  auto tri = Complex::build({{0, 1, 2}});
  auto t1 = barycentric_subdivision(tri);
  Chain c(tri, 2);
  c.coeffs[0] = 3;
  auto sd = subdivide_chain_once(t1, c);
  CHECK((int)sd.coeffs.size() == 6);
  CHECK(boundary(sd) == subdivide_chain_once(t1, boundary(c)));
}

TEST_CASE("make_full") {
  // Z = two endpoints of an edge is not full
  auto edge = Complex::build({{0, 1}});
  Subcomplex z = Subcomplex::empty(edge);
  z.insert_closed(edge->require({0}));
  z.insert_closed(edge->require({1}));
  CHECK(!is_full(z));
  auto [k1, z1] = make_full(edge, z);
  CHECK(k1 != edge);
  CHECK(is_full(z1));
  CHECK(z1.count() == 2);

  // already-full subcomplex unchanged
  Subcomplex w = Subcomplex::empty(edge);
  w.insert_closed(edge->require({0}));
  auto [k2, w2] = make_full(edge, w);
  CHECK(k2 == edge);
}

TEST_CASE("complement and neighborhood complexes") {
  auto s = Complex::build({{0, 1}, {1, 2}, {0, 2}});  // circle
  Subcomplex z = Subcomplex::empty(s);
  z.insert_closed(s->require({0}));
  auto c = complement_complex(z);
  CHECK(c.contains(s->require({1, 2})));
  CHECK(c.count() == 3);  // edge {1,2} and its vertices
  auto n = neighborhood_complex(z);
  CHECK(n.contains(s->require({0, 1})));
  CHECK(n.contains(s->require({0, 2})));
  CHECK(!n.contains(s->require({1, 2})));
}

TEST_CASE("staircase products") {
  auto edge = Complex::build({{0, 1}});
  auto sq = product_triangulation(edge, edge);
  CHECK(sq.total->size(2) == 2);
  // diagonal of the square is an edge of the staircase
  REQUIRE(!sq.diagonal.empty_set());
  CHECK(sq.diagonal.dim() == 1);
  CHECK(sq.diagonal.count() == 3);

  auto tri = Complex::build({{0, 1, 2}});
  auto prism = product_triangulation(tri, edge);
  CHECK(prism.total->size(3) == 3);
}

TEST_CASE("orientability") {
  auto sphere = Complex::build({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  auto o = orient(sphere, 2);
  CHECK(o.orientable);
  // coherent: boundary of the signed top chain vanishes
  Chain top(sphere, 2);
  for (int i = 0; i < sphere->size(2); ++i) top.coeffs[i] = o.sign[i];
  CHECK(boundary(top).zero());

  // minimal projective plane (RP^2 on 6 vertices) is not orientable
  auto rp2 = Complex::build({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5}, {1, 2, 4},
                             {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
  auto orp = orient(rp2, 2);
  CHECK(false == orp.orientable);
  CHECK(!orp.witness.empty());

  // a single triangle is trivially coherent
  auto tri = Complex::build({{0, 1, 2}});
  CHECK(orient(tri, 2).orientable);
}
