#include <random>

#include "doctest.h"
#include "mgg/boolmat.hpp"
#include "mgg/errors.hpp"

using namespace mgg;

namespace {

BoolMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::bernoulli_distribution coin(0.4);
  BoolMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, coin(rng));
  return m;
}

// per-entry definition of the product
BoolMatrix naive_product(const BoolMatrix& a, const BoolMatrix& b) {
  BoolMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      bool v = false;
      for (std::size_t k = 0; k < a.cols(); ++k) v = v || (a.get(i, k) && b.get(k, j));
      r.set(i, j, v);
    }
  return r;
}

}  // namespace

TEST_CASE("elementwise not, or, and") {
  BoolMatrix x{{0, 1}, {1, 0}};
  CHECK(elementwise(LogicOp::Not, x) == BoolMatrix{{1, 0}, {0, 1}});
  CHECK(elementwise(LogicOp::Not, elementwise(LogicOp::Not, x)) == x);

  std::mt19937 rng(7);
  for (int t = 0; t < 50; ++t) {
    auto m = random_matrix(rng, 1 + t % 9, 1 + t % 9);
    CHECK((m | BoolMatrix(m.rows(), m.cols())) == m);
    CHECK(~~m == m);
  }
  CHECK(~BoolVector{1, 0, 1} == BoolVector{0, 1, 0});
}

TEST_CASE("shape mismatch is a dimension error") {
  BoolMatrix a(2, 2), b(3, 3);
  CHECK_THROWS_AS(a & b, DimensionError);
  CHECK_THROWS_AS(BoolVector(2) | BoolVector(3), DimensionError);
  CHECK_THROWS_AS(bool_product(BoolMatrix(2, 3), BoolMatrix(2, 3)), DimensionError);
}

TEST_CASE("boolean product") {
  std::mt19937 rng(11);
  auto x = random_matrix(rng, 5, 5);
  CHECK(bool_product(BoolMatrix::identity(5), x) == x);

  BoolMatrix m{{0, 1}, {0, 0}};
  CHECK(bool_product(m, BoolVector{0, 1}) == BoolVector{1, 0});

  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + t % 8;
    auto a = random_matrix(rng, n, n), b = random_matrix(rng, n, n), c = random_matrix(rng, n, n);
    CHECK(bool_product(a, b) == naive_product(a, b));
    CHECK(bool_product(bool_product(a, b), c) == bool_product(a, bool_product(b, c)));
    CHECK(bool_product(a, b | c) == (bool_product(a, b) | bool_product(a, c)));
  }
}

TEST_CASE("wide matrices cross word boundaries") {
  std::mt19937 rng(3);
  auto a = random_matrix(rng, 70, 130), b = random_matrix(rng, 130, 65);
  CHECK(bool_product(a, b) == naive_product(a, b));
  CHECK(a.transpose().transpose() == a);
  CHECK((~a).count() == 70 * 130 - a.count());
}

TEST_CASE("norm1") {
  CHECK_FALSE(norm1(BoolVector{0, 0, 0}));
  CHECK(norm1(BoolVector{0, 1, 0}));
  CHECK_FALSE(norm1(BoolVector{}));
}

TEST_CASE("tensor product") {
  BoolVector not_ev{1, 1, 1, 0};
  BoolMatrix dbar{{0, 0, 0, 1}, {0, 0, 0, 1}, {0, 0, 0, 1}, {1, 1, 1, 1}};
  CHECK(~tensor(not_ev, not_ev) == dbar);
  CHECK(tensor(BoolVector(3), BoolVector{1, 1}) == BoolMatrix(3, 2));
  CHECK(tensor(BoolVector{1, 0}, BoolVector{0, 1}) == BoolMatrix{{0, 1}, {0, 0}});

  // exhaustive up to length 8 on one side
  for (unsigned bits = 0; bits < 256; ++bits) {
    BoolVector u(8), v{1, 0, 1};
    for (int i = 0; i < 8; ++i) u.set(i, (bits >> i) & 1u);
    auto t = tensor(u, v);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 3; ++j) CHECK(t.get(i, j) == (u.get(i) && v.get(j)));
  }
}

TEST_CASE("string forms") {
  CHECK(BoolVector{1, 0}.str() == "(1,0)");
  CHECK(BoolMatrix{{0, 1}, {1, 0}}.str() == "[[0,1],[1,0]]");
}
