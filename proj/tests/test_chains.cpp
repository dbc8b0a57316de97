#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "plchain/homology.hpp"

using namespace plchain;

namespace {

ComplexPtr torus7() {
  std::vector<VertexList> f;
  for (int i = 0; i < 7; ++i) {
    f.push_back({i, (i + 1) % 7, (i + 3) % 7});
    f.push_back({(i + 1) % 7, (i + 3) % 7, (i + 4) % 7});
  }
  return Complex::build(f);
}

Chain fundamental(const ComplexPtr& k, int n) {
  auto o = orient(k, n);
  REQUIRE(o.orientable);
  Chain g(k, n);
  for (int i = 0; i < k->size(n); ++i) g.coeffs[i] = o.sign[i];
  return g;
}

Chain random_chain(const ComplexPtr& k, int deg, std::mt19937& rng) {
  std::uniform_int_distribution<int> val(-2, 2);
  Chain c(k, deg);
  for (int i = 0; i < k->size(deg); ++i) {
    int v = val(rng);
    if (v) c.coeffs[i] = v;
  }
  return c;
}

}  // namespace

TEST_CASE("unit cocycle is a cup and cap unit") {
  auto t = torus7();
  Cochain one(t, 0);
  for (int i = 0; i < t->size(0); ++i) one.coeffs[i] = 1;
  std::mt19937 rng(7);
  for (int deg = 0; deg <= 2; ++deg) {
    Cochain a = random_chain(t, deg, rng);
    CHECK(cup(one, a) == a);
    Chain x = random_chain(t, deg, rng);
    CHECK(cap(one, x) == x);
  }
}

TEST_CASE("cup/cap adjunction <a.b, x> = <a, b cap x>") {
  auto t = torus7();
  std::mt19937 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    int p = trial % 3, q = (trial / 3) % 3;
    if (p + q > 2) continue;
    Cochain a = random_chain(t, p, rng);
    Cochain b = random_chain(t, q, rng);
    Chain x = random_chain(t, p + q, rng);
    CHECK(evaluate(cup(a, b), x) == evaluate(a, cap(b, x)));
  }
}

TEST_CASE("cap Leibniz rule d(a cap x) = a cap dx + (-1)^{n-p} (da) cap x") {
  auto t = torus7();
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    int p = trial % 2 ? 0 : 1;
    int n = 2;
    Cochain a = random_chain(t, p, rng);
    Chain x = random_chain(t, n, rng);
    Chain lhs = boundary(cap(a, x));
    Chain rhs = cap(a, boundary(x));
    Chain da_x = cap(coboundary(a), x);
    if ((n - p) % 2) da_x *= Int(-1);
    rhs += da_x;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("coboundary matrix is the boundary transpose") {
  auto t = torus7();
  std::mt19937 rng(3);
  Cochain a = random_chain(t, 1, rng);
  Chain x = random_chain(t, 2, rng);
  CHECK(evaluate(coboundary(a), x) == evaluate(a, boundary(x)));
}

TEST_CASE("torus cup pairing is unimodular and antisymmetric") {
  auto t = torus7();
  auto h1 = PairGroup::cohomology(t, Subcomplex::full(t), Subcomplex::empty(t), 1);
  REQUIRE(h1->free_rank() == 2);
  Chain gamma = fundamental(t, 2);
  Cochain a = h1->basis_chain(0), b = h1->basis_chain(1);
  Int ab = evaluate(cup(a, b), gamma);
  Int ba = evaluate(cup(b, a), gamma);
  Int aa = evaluate(cup(a, a), gamma);
  Int bb = evaluate(cup(b, b), gamma);
  CHECK(ab == -ba);
  CHECK(aa == 0);
  CHECK(bb == 0);
  CHECK(abs(ab) == 1);
}

TEST_CASE("sphere: cup of 1-cocycles is cohomologous to zero") {
  auto s = Complex::build({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  auto h2 = PairGroup::cohomology(s, Subcomplex::full(s), Subcomplex::empty(s), 2);
  std::mt19937 rng(11);
  // cocycles: coboundaries of random 0-cochains plus nothing else (H^1 = 0)
  Cochain u = coboundary(random_chain(s, 0, rng));
  Cochain v = coboundary(random_chain(s, 0, rng));
  auto cls = h2->express(cup(u, v));
  for (auto& c : cls) CHECK(c == 0);
}

TEST_CASE("cross product: edge x edge and Leibniz") {
  auto edge = Complex::build({{0, 1}});
  auto sq = product_triangulation(edge, edge);
  Chain e(edge, 1);
  e.coeffs[0] = 1;
  Chain x = cross_chain(sq, e, e);
  CHECK((int)x.coeffs.size() == 2);
  Int s0 = x.coeffs.begin()->second, s1 = std::next(x.coeffs.begin())->second;
  CHECK(s0 * s1 == -1);  // the two staircase triangles enter with opposite signs

  // Leibniz on random chains of a product of small complexes
  auto tri = Complex::build({{0, 1, 2}});
  auto pr = product_triangulation(tri, edge);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    int dz = trial % 3, dw = trial % 2;
    Chain z = random_chain(tri, dz, rng);
    Chain w = random_chain(edge, dw, rng);
    Chain lhs = boundary(cross_chain(pr, z, w));
    Chain rhs = cross_chain(pr, boundary(z), w);
    Chain zdw = cross_chain(pr, z, boundary(w));
    if (dz % 2) zdw *= Int(-1);
    rhs += zdw;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("support of cross product is the product of supports") {
  auto tri = Complex::build({{0, 1, 2}});
  auto edge = Complex::build({{0, 1}});
  auto pr = product_triangulation(tri, edge);
  Chain z(tri, 1);
  z.coeffs[tri->require({0, 1}).idx] = 1;
  Chain w(edge, 1);
  w.coeffs[0] = 2;
  Chain x = cross_chain(pr, z, w);
  Subcomplex sx = support(x);
  Subcomplex za = Subcomplex::empty(tri);
  za.insert_closed(tri->require({0, 1}));
  Subcomplex wa = Subcomplex::full(edge);
  Subcomplex expect = product_subcomplex(pr, za, wa);
  CHECK(sx == expect);
}

TEST_CASE("cochain cross restricted to the diagonal is the cup product") {
  auto tri = Complex::build({{0, 1, 2}});
  auto pr = product_triangulation(tri, tri);
  std::mt19937 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    Cochain a = random_chain(tri, 1, rng);
    Cochain b = random_chain(tri, 1, rng);
    Cochain axb = cross_cochain(pr, a, b);
    // evaluate on diagonal images of 2-simplices
    for (int i = 0; i < tri->size(2); ++i) {
      auto d = pr.diagonal_image({2, i});
      Chain ds(pr.total, 2);
      ds.coeffs[d.idx] = 1;
      Chain xs(tri, 2);
      xs.coeffs[i] = 1;
      CHECK(evaluate(axb, ds) == evaluate(cup(a, b), xs));
    }
  }
}

TEST_CASE("cochain cross pairs with chain cross without sign") {
  auto tri = Complex::build({{0, 1, 2}});
  auto edge = Complex::build({{0, 1}});
  auto pr = product_triangulation(tri, edge);
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    int dz = trial % 3, dw = trial % 2;
    Chain z = random_chain(tri, dz, rng);
    Chain w = random_chain(edge, dw, rng);
    Cochain a = random_chain(tri, dz, rng);
    Cochain b = random_chain(edge, dw, rng);
    CHECK(evaluate(cross_cochain(pr, a, b), cross_chain(pr, z, w)) ==
          evaluate(a, z) * evaluate(b, w));
  }
}
