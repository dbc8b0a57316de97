#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "plchain/spacefile.hpp"

using namespace plchain;

namespace {

bool spaces_equal(const Space& a, const Space& b) {
  const auto& ka = a.x->complex();
  const auto& kb = b.x->complex();
  if (ka->dim() != kb->dim() || ka->num_vertices() != kb->num_vertices()) return false;
  for (int d = 0; d <= ka->dim(); ++d) {
    if (ka->size(d) != kb->size(d)) return false;
    for (int i = 0; i < ka->size(d); ++i) {
      VertexList la, lb;
      for (Vertex v : ka->simplices(d)[i]) la.push_back(v);
      for (Vertex v : kb->simplices(d)[i]) lb.push_back(v);
      if (la != lb) return false;
      if (ka->label(la[0]) != kb->label(lb[0])) return false;
    }
  }
  for (int i = 0; i < a.x->n(); ++i) {
    auto ma = a.x->skeleton(i), mb = b.x->skeleton(i);
    for (int d = 0; d <= ka->dim(); ++d)
      if (ma.members(d).size() != mb.members(d).size()) return false;
  }
  if (a.x->oriented() != b.x->oriented()) return false;
  if (a.chains.size() != b.chains.size()) return false;
  for (const auto& [name, c] : a.chains) {
    auto it = b.chains.find(name);
    if (it == b.chains.end()) return false;
    if (!(c.degree == it->second.degree && c.coeffs == it->second.coeffs)) return false;
  }
  if (a.perversities.size() != b.perversities.size()) return false;
  for (const auto& [name, p] : a.perversities) {
    auto it = b.perversities.find(name);
    if (it == b.perversities.end() || p.values != it->second.values) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("round trip: parse(print(space)) = space on the corpus") {
  for (const char* name :
       {"simplex 2", "sphere 2", "torus2", "projplane", "pinched-torus", "suspension(torus2)",
        "cone(sphere 1)", "product(sphere 1,sphere 1)"}) {
    auto sp = corpus_generate(name);
    std::string text = print_space(sp);
    std::istringstream in(text);
    auto sp2 = parse_space(in);
    CHECK_MESSAGE(spaces_equal(sp, sp2), name);
    // a second round trip is literally identical text
    sp2.name = sp.name;
    CHECK(print_space(sp2) == text);
  }
}

TEST_CASE("corpus names and counts") {
  auto t = corpus_generate("torus2");
  CHECK(t.x->complex()->size(0) == 7);
  CHECK(t.x->complex()->size(2) == 14);
  CHECK(t.x->complex()->size(1) - t.x->complex()->size(0) - t.x->complex()->size(2) == 0);  // chi = 0
  auto s = corpus_generate("sphere 2");
  CHECK(s.x->complex()->size(2) == 4);
  auto su = corpus_generate("suspension(torus2)");
  CHECK(su.x->n() == 3);
  CHECK(su.x->singular_strata().size() == 2);
  CHECK_THROWS_AS(corpus_generate("klein-bottle"), std::invalid_argument);
  CHECK_THROWS_AS(corpus_generate("product(torus2)"), std::invalid_argument);
}

TEST_CASE("parse errors carry locations") {
  std::istringstream bad1("facets\n0 1 2\nskeleton\n");
  CHECK_THROWS_AS(parse_space(bad1), ParseError);
  std::istringstream bad2("0 1 2\n");
  CHECK_THROWS_AS(parse_space(bad2), ParseError);
  std::istringstream bad3("facets\n0 1 2\nchain a 1\nx 0 1\n");
  CHECK_THROWS_AS(parse_space(bad3), ParseError);
  try {
    std::istringstream bad4("facets\n0 1 2\n\norientation\nbad 0 1 2\n");
    parse_space(bad4);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 5);
  }
}

TEST_CASE("orientation and chains survive explicit files") {
  std::string text =
      "vertices a b c d\n"
      "facets\n"
      "a b c\na b d\na c d\nb c d\n"
      "orientation\n"
      "+ a b c\n- a b d\n+ a c d\n- b c d\n"
      "chain loop 1\n"
      "1 a b\n1 b c\n-1 a c\n";
  std::istringstream in(text);
  auto sp = parse_space(in);
  CHECK(sp.x->oriented());
  CHECK(boundary(sp.chain("loop")).zero());
  CHECK(boundary(sp.x->fundamental_chain()).zero());
}
