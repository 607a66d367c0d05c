#include <random>

#include "doctest.h"
#include "qkt/mpoly.hpp"

using namespace qkt;

namespace {

MPoly var(int i, long e = 1) {
  Mono m(i + 1, 0);
  m[i] = e;
  return MPoly::monomial(m);
}

MPoly randomMPoly(std::mt19937_64& rng, int nv) {
  std::uniform_int_distribution<int> terms(1, 4), expd(-3, 3), coefd(-5, 5);
  MPoly p;
  int t = terms(rng);
  for (int s = 0; s < t; ++s) {
    Mono m(nv, 0);
    for (int i = 0; i < nv; ++i) m[i] = expd(rng);
    int c = coefd(rng);
    p += MPoly::monomial(m, c == 0 ? 1 : c);
  }
  return p;
}

}  // namespace

TEST_CASE("monomial bookkeeping") {
  Mono a{1, -2}, b{0, 2, 3};
  CHECK(monoMul(a, b) == Mono{1, 0, 3});
  CHECK(monoNeg(a) == Mono{-1, 2});
  CHECK(monoMul(a, monoNeg(a)).empty());  // trimmed to the unit
  CHECK(monoDivides(Mono{1, 1}, Mono{2, 1}));
  CHECK(!monoDivides(Mono{1, 1}, Mono{0, 5}));
}

TEST_CASE("polynomial arithmetic and exact division") {
  MPoly x = var(0), y = var(1);
  MPoly p = (x + y) * (x - y);
  CHECK(p == x * x - y * y);
  auto q = p.divideExact(x + y);
  REQUIRE(q.has_value());
  CHECK(*q == x - y);
  CHECK(!p.divideExact(x + MPoly(1)).has_value());

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    MPoly a = randomMPoly(rng, 3), b = randomMPoly(rng, 3);
    if (b.isZero()) continue;
    auto r = (a * b).divideExact(b);
    REQUIRE(r.has_value());
    CHECK(*r == a);
  }
}

TEST_CASE("evaluation and duality") {
  MPoly x = var(0), t = var(1);
  MPoly p = x * x + t.scaled(3);
  std::vector<mpq_class> pt{mpq_class(2), mpq_class(1, 3)};
  CHECK(p.evalAt(pt) == mpq_class(5));
  // dual inverts every exponent
  CHECK(p.dualed() == var(0, -2) + var(1, -1).scaled(3));
  std::vector<std::string> names{"x", "t"};
  CHECK(p.str(names) == "x^2 + 3 t");
}

TEST_CASE("factored rational functions form a field") {
  MPoly x = var(0), y = var(1);
  FactoredRat a(x + y);
  a.divByPoly(x - y);              // (x+y)/(x-y)
  FactoredRat b(x);
  b.divByPoly(x + y);              // x/(x+y)
  FactoredRat prod = a * b;        // x/(x-y)
  FactoredRat expect(x);
  expect.divByPoly(x - y);
  CHECK(prod == expect);

  // sums over a common factored denominator
  FactoredRat s = a + b;
  FactoredRat viaDef(
      (x + y) * (x + y) + x * (x - y));
  viaDef.divByPoly(x - y);
  viaDef.divByPoly(x + y);
  CHECK(s == viaDef);

  // field laws
  CHECK((a / a) == FactoredRat(1));
  CHECK(a * a.inverse() == FactoredRat(1));
  CHECK(a - a == FactoredRat(0));
  CHECK_THROWS_AS(FactoredRat(1) / FactoredRat(0), InternalError);

  // cancellation back to a polynomial
  FactoredRat c(x * x - y * y);
  c.divByPoly(x + y);
  CHECK(c == FactoredRat(x - y));
  CHECK(c.denFactors().empty());

  // duality distributes
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    MPoly n1 = randomMPoly(rng, 3), d1 = randomMPoly(rng, 3);
    if (d1.isZero()) continue;
    FactoredRat f(n1);
    f.divByPoly(d1);
    CHECK(f.dualed().dualed() == f);
    MPoly n2 = randomMPoly(rng, 3);
    FactoredRat g(n2);
    CHECK((f * g).dualed() == f.dualed() * g.dualed());
  }
}

TEST_CASE("evaluation scalars broadcast constants") {
  EvalScalar five(5);
  EvalScalar vec(std::vector<mpq_class>{1, 2, 3, 4});
  EvalScalar sum = five + vec;
  CHECK(sum.at(0) == 6);
  CHECK(sum.at(3) == 9);
  CHECK((vec * EvalScalar(0)).isZero());
  CHECK(vec - vec == EvalScalar(0));
  EvalScalar q = vec / vec;
  CHECK(q == EvalScalar(1));
  CHECK_THROWS_AS(vec / EvalScalar(0), InternalError);

  // the half swap is the point-inversion involution
  EvalScalar swapped = vec.halfSwapped();
  CHECK(swapped.at(0) == 3);
  CHECK(swapped.at(2) == 1);
  CHECK(swapped.halfSwapped() == vec);
}
