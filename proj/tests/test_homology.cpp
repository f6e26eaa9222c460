#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hcx/homology.hpp"
#include "support.hpp"

using namespace hcx;

namespace {

using Dense = std::vector<std::vector<std::int64_t>>;

std::vector<BigInt> snf(const Dense& d) { return smith_normal_form(SparseIntMatrix::from_dense(d)).invariants; }

std::vector<oracle::cpp_int> oracle_snf(const Dense& d) {
  std::vector<std::vector<oracle::cpp_int>> m;
  for (const auto& row : d) m.emplace_back(row.begin(), row.end());
  return oracle::invariant_factors(m);
}

std::size_t oracle_rank(const Dense& d) {
  std::vector<std::vector<oracle::cpp_rational>> m;
  for (const auto& row : d) m.emplace_back(row.begin(), row.end());
  return oracle::rational_rank(m);
}

Dense random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi, double density) {
  std::uniform_int_distribution<int> value(lo, hi);
  std::bernoulli_distribution present(density);
  Dense d(rows, std::vector<std::int64_t>(cols, 0));
  for (auto& row : d)
    for (auto& x : row)
      if (present(rng)) x = value(rng);
  return d;
}

// Dense product of two sparse matrices, as (row, col) -> value.
std::map<std::pair<std::size_t, std::size_t>, std::int64_t> product(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> out;
  for (std::size_t j = 0; j < b.cols; ++j) {
    for (const auto& [k, bv] : b.columns[j]) {
      for (const auto& [i, av] : a.columns[k]) out[{i, j}] += av * bv;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::vector<std::uint64_t> betti(int n, Coefficients c = Coefficients::integers()) {
  return betti_table(FaceTable::enumerate(n), c).betti.values();
}

}  // namespace

TEST_CASE("Smith normal form examples") {
  CHECK(snf({{2, 4}, {0, 6}}) == std::vector<BigInt>{2, 6});
  CHECK(snf({{1, 0}, {0, 1}}) == std::vector<BigInt>{1, 1});
  CHECK(snf({{0, 0}, {0, 0}}).empty());
  CHECK(snf({{2, 0}, {0, 3}}) == std::vector<BigInt>{1, 6});
  CHECK(snf({}).empty());
  const auto r = smith_normal_form(SparseIntMatrix::from_dense({{2, 4}, {0, 6}}));
  CHECK(r.rank() == 2);
  CHECK(r.torsion() == std::vector<BigInt>{2, 6});
}

TEST_CASE("Smith normal form agrees with determinantal divisors on random matrices") {
  std::mt19937 rng(20261015);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    const Dense d = random_matrix(rng, rows, cols, -6, 6, 0.6);
    const auto expected = oracle_snf(d);
    const auto got = snf(d);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(got[i] == expected[i]);
    REQUIRE(rank_rational(SparseIntMatrix::from_dense(d)) == oracle_rank(d));
  }
}

TEST_CASE("overflow escalates to big integers") {
  const std::int64_t big = std::int64_t{1} << 40;
  const Dense d{{1, big, 3}, {big, 1, 5}, {11, 13, big - 3}};
  const auto r = smith_normal_form(SparseIntMatrix::from_dense(d));
  CHECK(r.escalated);
  const auto expected = oracle_snf(d);
  REQUIRE(r.invariants.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(r.invariants[i] == expected[i]);
  CHECK(rank_rational(SparseIntMatrix::from_dense(d)) == 3);
}

TEST_CASE("rank modulo primes") {
  const Dense d{{2, 4}, {0, 6}};
  const auto m = SparseIntMatrix::from_dense(d);
  CHECK(rank_mod_p(m, 2) == 0);
  CHECK(rank_mod_p(m, 3) == 1);
  CHECK(rank_mod_p(m, 5) == 2);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Dense r = random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5, -9, 9, 0.7);
    const auto inv = oracle_snf(r);
    for (std::uint32_t p : {2U, 3U, 5U, 7U}) {
      std::size_t expected = 0;
      for (const auto& x : inv)
        if (x % p != 0) ++expected;
      REQUIRE(rank_mod_p(SparseIntMatrix::from_dense(r), p) == expected);
    }
  }
}

TEST_CASE("deadline aborts a reduction") {
  Deadline past{std::chrono::steady_clock::now() - std::chrono::seconds(1)};
  std::mt19937 rng(3);
  const auto m = SparseIntMatrix::from_dense(random_matrix(rng, 300, 300, -3, 3, 0.05));
  CHECK_THROWS_AS(smith_normal_form(m, past), BudgetExceeded);
}

TEST_CASE("coefficient tags") {
  CHECK(Coefficients::parse("Z") == Coefficients::integers());
  CHECK(Coefficients::parse("Q") == Coefficients::rationals());
  CHECK(Coefficients::parse("F5") == Coefficients::mod(5));
  CHECK(Coefficients::mod(3).tag() == "F3");
  CHECK_THROWS_AS(Coefficients::parse("F4"), ValidationError);
  CHECK_THROWS_AS(Coefficients::parse("R"), ValidationError);
}

TEST_CASE("boundary matrices") {
  const auto t3 = FaceTable::enumerate(3);
  const auto d0 = boundary_matrix(t3, 0);
  CHECK(d0.matrix.rows == 1);
  CHECK(d0.matrix.cols == 4);
  for (const auto& col : d0.matrix.columns) {
    REQUIRE(col.size() == 1);
    CHECK(col[0].second == 1);
  }
  const auto d1 = boundary_matrix(t3, 1);
  REQUIRE(d1.matrix.cols == 1);
  const auto& col = d1.matrix.columns[0];
  REQUIRE(col.size() == 2);
  const auto vertices = t3.faces_of_dimension(0);
  for (const auto& [row, value] : col) {
    const auto chain = t3.face(vertices[row]).chain();
    // {3} subset {2,3}: dropping {3} leaves {2,3} with sign +, dropping {2,3} leaves {3} with sign -.
    if (chain == std::vector<std::uint64_t>{0b1100}) CHECK(value == 1);
    if (chain == std::vector<std::uint64_t>{0b1000}) CHECK(value == -1);
  }

  for (int n = 1; n <= 7; ++n) {
    const auto t = FaceTable::enumerate(n);
    for (int d = -1; d <= n - 2; ++d) {
      const auto b = boundary_matrix(t, d);
      for (const auto& c : b.matrix.columns) REQUIRE(c.size() == static_cast<std::size_t>(d + 1));
      if (d >= 0) REQUIRE(product(boundary_matrix(t, d - 1).matrix, b.matrix).empty());
    }
  }
}

TEST_CASE("Betti numbers of small complexes") {
  CHECK(betti(1) == std::vector<std::uint64_t>{1});
  CHECK(betti(2) == std::vector<std::uint64_t>{0, 0});
  CHECK(betti(3) == std::vector<std::uint64_t>{0, 2, 0});
  CHECK(betti(4) == std::vector<std::uint64_t>{0, 2, 2, 0});
  const auto t5 = betti_table(FaceTable::enumerate(5), Coefficients::integers());
  CHECK(t5.nonzero_dims() == std::vector<int>{1});
  CHECK(t5.torsion.empty());
  CHECK(t5.all_complete());
}

TEST_CASE("coefficient systems agree in free rank, n <= 7") {
  for (int n = 1; n <= 7; ++n) {
    const auto t = FaceTable::enumerate(n);
    const auto z = betti_table(t, Coefficients::integers());
    CHECK(z.torsion.empty());
    CHECK(z.euler_characteristic() == alternating_eulerian(n));
    for (auto c : {Coefficients::rationals(), Coefficients::mod(2), Coefficients::mod(3)}) {
      CHECK(betti_table(t, c).betti == z.betti);
    }
  }
}

TEST_CASE("expected dimensions") {
  CHECK(expected_nonzero_dims(1) == std::vector<int>{-1});
  CHECK(expected_nonzero_dims(2).empty());
  CHECK(expected_nonzero_dims(3) == std::vector<int>{0});
  CHECK(expected_nonzero_dims(4) == std::vector<int>{0, 1});
  CHECK(expected_nonzero_dims(5) == std::vector<int>{1});
  CHECK(expected_nonzero_dims(7) == std::vector<int>{1, 2, 3});
  for (int n = 2; n <= 20; ++n) {
    const auto e = expected_nonzero_dims(n);
    for (int i : e) {
      CHECK(std::find(e.begin(), e.end(), n - 3 - i) != e.end());
    }
  }
  CHECK(coefficient_plan(7) == std::vector<Coefficients>{Coefficients::integers()});
  CHECK(coefficient_plan(8).size() == 4);
}

TEST_CASE("conjecture and symmetry, n <= 7") {
  for (int n = 1; n <= 7; ++n) {
    const auto check = check_conjecture(n);
    CHECK_MESSAGE(check.ok, "n=", n);
    CHECK(check.complete);
    CHECK(check.method == "Z");
    CHECK(check_symmetry(check.tables.at(0)).ok);
  }
  BettiTable lopsided;
  lopsided.n = 4;
  lopsided.betti = GradedVector<std::uint64_t>(2);
  lopsided.betti[0] = 1;
  CHECK_FALSE(check_symmetry(lopsided).ok);
}

TEST_CASE("boundary of chains") {
  SignedChain edge;
  edge.n = 3;
  edge.dim = 1;
  edge.add(Permutation::parse("321").lex_rank(), 1);
  const auto b = boundary_of_chain(edge);
  CHECK(b.dim == 0);
  CHECK(b.size() == 2);
  CHECK(b.coefficients.at(Permutation::parse("231").lex_rank()) == 1);
  CHECK(b.coefficients.at(Permutation::parse("312").lex_rank()) == -1);

  SignedChain z;
  z.n = 7;
  z.dim = 1;
  z.add(perm_from_face(parse_face(7, "13|246|57")).lex_rank(), 1);
  z.add(perm_from_face(parse_face(7, "13|26|457")).lex_rank(), -1);
  z.add(perm_from_face(parse_face(7, "3|126|457")).lex_rank(), 1);
  z.add(perm_from_face(parse_face(7, "3|1246|57")).lex_rank(), -1);
  CHECK(boundary_of_chain(z).empty());

  SignedChain empty;
  empty.n = 4;
  empty.dim = 0;
  CHECK(boundary_of_chain(empty).empty());

  SignedChain mixed;
  mixed.n = 3;
  mixed.dim = 1;
  mixed.add(Permutation::identity(3).lex_rank(), 1);
  CHECK_THROWS_AS(boundary_of_chain(mixed), ValidationError);
}
