#pragma once

// Exact reduced homology of Delta_n: boundary matrices, sparse Smith normal
// form over the integers, ranks over Q and F_p, and the checks built on the
// resulting Betti tables.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hcx/complex.hpp"
#include "hcx/graded.hpp"

namespace hcx {

using BigInt = boost::multiprecision::cpp_int;

// Column-major sparse integer matrix; each column sorted by row.
struct SparseIntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> columns;

  static SparseIntMatrix from_dense(const std::vector<std::vector<std::int64_t>>& dense);
  std::size_t nonzeros() const;
};

// Raised when a reduction runs past its deadline.
class BudgetExceeded : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

struct Deadline {
  std::optional<std::chrono::steady_clock::time_point> at;

  static Deadline after(std::chrono::milliseconds budget) { return {std::chrono::steady_clock::now() + budget}; }
  bool expired() const { return at && std::chrono::steady_clock::now() > *at; }
};

struct SmithResult {
  // Non-zero diagonal entries d_1 | d_2 | ..., all positive.
  std::vector<BigInt> invariants;
  // True when the int64 pass overflowed and the reduction was redone with
  // arbitrary-precision integers.
  bool escalated = false;

  std::size_t rank() const { return invariants.size(); }
  // Invariant factors greater than one.
  std::vector<BigInt> torsion() const;
};

SmithResult smith_normal_form(const SparseIntMatrix& m, const Deadline& deadline = {});
std::size_t rank_rational(const SparseIntMatrix& m, const Deadline& deadline = {});
std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p, const Deadline& deadline = {});

// d-th boundary of the augmented chain complex: rows are (d-1)-faces,
// columns d-faces, both in FaceTable::faces_of_dimension order. Vertices of
// a face are ordered by chain inclusion; deleting the i-th (0-based) carries
// sign (-1)^i, and every vertex maps to +1 times the empty face.
struct BoundaryMatrix {
  int n = 0;
  int dim = 0;
  SparseIntMatrix matrix;
};

BoundaryMatrix boundary_matrix(const FaceTable& table, int d);

struct Coefficients {
  enum class Kind { Integers, Rationals, Prime };
  Kind kind = Kind::Integers;
  std::uint32_t prime = 0;

  static Coefficients integers() { return {Kind::Integers, 0}; }
  static Coefficients rationals() { return {Kind::Rationals, 0}; }
  static Coefficients mod(std::uint32_t p);
  // "Z", "Q", "F2", "F3", ...
  static Coefficients parse(const std::string& tag);
  std::string tag() const;

  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

struct BettiTable {
  int n = 0;
  Coefficients coefficients;
  GradedVector<std::uint64_t> betti;
  // Integer case only: (dimension, invariant factors > 1).
  std::vector<std::pair<int, std::vector<BigInt>>> torsion;
  // False where a boundary rank ran out of budget; that entry is a bound,
  // not a value.
  GradedVector<bool> complete;
  // Dimensions whose rank computation was escalated to big integers.
  std::vector<int> escalated;

  bool all_complete() const;
  bool has_torsion(int d) const;
  // Dimensions with non-zero homology: free part or torsion.
  std::vector<int> nonzero_dims() const;
  std::int64_t euler_characteristic() const;
};

struct HomologyOptions {
  std::optional<std::chrono::milliseconds> timeBudget;
};

BettiTable betti_table(const FaceTable& table, Coefficients coefficients, const HomologyOptions& options = {});

// {i : (3i+5)/2 <= n <= 3i+4}, within -1..n-2.
std::vector<int> expected_nonzero_dims(int n);

struct ConjectureCheck {
  int n = 0;
  std::vector<int> expected;
  std::vector<int> observed;
  bool ok = false;
  bool complete = true;
  // "Z" for a full integer computation, "Q+F2+F3+F5" for the mixed plan.
  std::string method;
  std::vector<BettiTable> tables;
};

// Which coefficient plan a given n gets: full integer SNF up to n = 7,
// rationals plus F_2, F_3, F_5 above.
std::vector<Coefficients> coefficient_plan(int n);

// Reads the observed set off precomputed tables. The first table decides
// the free part; with a rational first table the remaining prime tables
// detect torsion.
ConjectureCheck assess_conjecture(int n, std::vector<BettiTable> tables);
ConjectureCheck check_conjecture(const FaceTable& table, const HomologyOptions& options = {});
ConjectureCheck check_conjecture(int n, const Budget& budget = {}, const HomologyOptions& options = {});

// beta_i = beta_{(n-3)-i} for every i.
CheckReport check_symmetry(const BettiTable& betti);

// Integer formal sum of faces of one dimension, keyed by face id (the
// lexicographic rank of the face's permutation).
struct SignedChain {
  int n = 0;
  int dim = 0;
  std::map<FaceId, std::int64_t> coefficients;

  void add(FaceId id, std::int64_t c);
  std::size_t size() const { return coefficients.size(); }
  bool empty() const { return coefficients.empty(); }
};

SignedChain boundary_of_chain(const SignedChain& z);

}  // namespace hcx
