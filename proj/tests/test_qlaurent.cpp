#include <random>

#include "doctest.h"
#include "qkt/qlaurent.hpp"

using namespace qkt;

TEST_CASE("quantum integers") {
  CHECK(qint(0).isZero());
  CHECK(qint(1) == QLaurent(1));
  // [2] = q + q^-1
  QLaurent two = QLaurent::q(1) + QLaurent::q(-1);
  CHECK(qint(2) == two);
  // [-3] = -(q^2 + 1 + q^-2), forced by antisymmetry of the defining fraction
  QLaurent three = QLaurent::q(2) + QLaurent(1) + QLaurent::q(-2);
  CHECK(qint(-3) == -three);
  // defining fraction: [n] (q - q^-1) = q^n - q^-n
  for (long n = -8; n <= 8; ++n) {
    QLaurent lhs = qint(n) * (QLaurent::q(1) - QLaurent::q(-1));
    CHECK(lhs == QLaurent::q(n) - QLaurent::q(-n));
  }
}

TEST_CASE("quantum integers specialize to integers at q=1") {
  for (long n = 0; n <= 12; ++n) {
    CHECK(qint(n).eval(1) == n);
    CHECK(qint(-n).eval(1) == -n);
  }
}

TEST_CASE("palindromicity of [n] and binomials") {
  for (long n = 0; n <= 10; ++n) CHECK(qint(n).bar() == qint(n));
  for (long n = 0; n <= 9; ++n)
    for (long k = 0; k <= n; ++k) CHECK(qbinom(n, k).bar() == qbinom(n, k));
}

TEST_CASE("quantum binomials") {
  for (long n = 0; n <= 8; ++n) {
    CHECK(qbinom(n, 0) == QLaurent(1));
    CHECK(qbinom(n, n) == QLaurent(1));
  }
  CHECK(qbinom(2, 1) == qint(2));
  // (4,2): expand [4]!/([2]![2]!) = [3][4]/[2] by hand and freeze
  QLaurent expect = QLaurent::q(4) + QLaurent::q(2) + QLaurent(2) +
                    QLaurent::q(-2) + QLaurent::q(-4);
  CHECK(qbinom(4, 2) == expect);
  // independent numeric route: binom * [k]! * [n-k]! = [n]! at sample points
  for (mpq_class x : {mpq_class(2), mpq_class(3, 2), mpq_class(-5, 7)}) {
    mpq_class lhs =
        qbinom(6, 2).eval(x) * qfactorial(2).eval(x) * qfactorial(4).eval(x);
    CHECK(lhs == qfactorial(6).eval(x));
  }
  CHECK_THROWS_AS(qbinom(2, 3), ValidationError);
  CHECK_THROWS_AS(qbinom(2, -1), ValidationError);
}

TEST_CASE("binomials at q=1 are ordinary, exhaustively to n=12") {
  for (long n = 0; n <= 12; ++n) {
    mpq_class ordinary = 1;
    for (long k = 0; k <= n; ++k) {
      CHECK(qbinom(n, k).eval(1) == ordinary);
      ordinary = ordinary * (n - k) / (k + 1);
    }
  }
}

TEST_CASE("q-Pascal identity up to n=12") {
  for (long n = 1; n <= 12; ++n)
    for (long k = 0; k <= n; ++k) {
      QLaurent rhs;
      if (k <= n - 1) rhs += qbinom(n - 1, k).shifted(k);
      if (k >= 1) rhs += qbinom(n - 1, k - 1).shifted(k - n);
      CHECK(qbinom(n, k) == rhs);
    }
}

TEST_CASE("projective space classes") {
  CHECK(cohomologyClass(-1).isZero());
  CHECK(cohomologyClass(0) == QLaurent(1));
  CHECK(cohomologyClass(1) == qint(2));
  for (long n = -1; n <= 10; ++n) CHECK(cohomologyClass(n) == qint(n + 1));
  CHECK_THROWS_AS(cohomologyClass(-2), ValidationError);
}

namespace {

QLaurent randomPoly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 5), expd(-6, 6), coefd(-9, 9);
  QLaurent p;
  int terms = nterms(rng);
  for (int t = 0; t < terms; ++t) {
    int c = coefd(rng);
    if (c == 0) c = 1;
    p += QLaurent::term(c, expd(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("exact division of random products") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    QLaurent a = randomPoly(rng), b = randomPoly(rng);
    if (b.isZero()) continue;
    auto q = (a * b).divideExact(b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
  }
  // non-divisible pair
  CHECK(!(QLaurent::q(1) + QLaurent(1))
             .divideExact(QLaurent::q(1) - QLaurent(1))
             .has_value());
}

TEST_CASE("canonical text round trip") {
  CHECK(qbinom(4, 2).str() == "q^4 + q^2 + 2 + q^-2 + q^-4");
  CHECK(QLaurent().str() == "0");
  CHECK(QLaurent::parse("q^2 + 2 + q^-2") == qint(3) + QLaurent(1));
  CHECK(QLaurent::parse("-q + 1/2") ==
        QLaurent::term(-1, 1) + QLaurent(mpq_class(1, 2)));
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    QLaurent p = randomPoly(rng);
    CHECK(QLaurent::parse(p.str()) == p);
  }
}

TEST_CASE("fraction arithmetic and canonical form") {
  // (q^2 - 1)/(q - 1) reduces to a Laurent polynomial
  QFraction f(QLaurent::q(2) - QLaurent(1), QLaurent::q(1) - QLaurent(1));
  CHECK(f.isLaurent());
  CHECK(f.num() == QLaurent::q(1) + QLaurent(1));

  QFraction a(QLaurent(1), qint(2));
  QFraction b(qint(3), qint(2));
  CHECK(a + b == QFraction(QLaurent(1) + qint(3), qint(2)));
  CHECK(a * b * a.inverse() == b * QFraction(1));
  CHECK(a - a == QFraction(0));
  CHECK((a / b) * b == a);
  CHECK_THROWS_AS(a / QFraction(0), InternalError);

  // equality is componentwise on canonical forms
  QFraction c(qint(2) * qint(3), qint(3));
  CHECK(c == QFraction(qint(2)));

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    QLaurent n1 = randomPoly(rng), d1 = randomPoly(rng);
    if (d1.isZero()) continue;
    QFraction x(n1, d1);
    CHECK(QFraction::parse(x.str()) == x);
  }
}
