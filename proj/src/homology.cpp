#include "hcx/homology.hpp"

#include <algorithm>

#include "elimination.hpp"

namespace hcx {

using boost::multiprecision::abs;

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& dense) {
  SparseIntMatrix m;
  m.rows = dense.size();
  m.cols = dense.empty() ? 0 : dense[0].size();
  m.columns.resize(m.cols);
  for (std::size_t r = 0; r < m.rows; ++r) {
    if (dense[r].size() != m.cols) throw ValidationError("ragged dense matrix");
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (dense[r][c] != 0) m.columns[c].emplace_back(static_cast<std::uint32_t>(r), dense[r][c]);
    }
  }
  return m;
}

std::size_t SparseIntMatrix::nonzeros() const {
  std::size_t count = 0;
  for (const auto& col : columns) count += col.size();
  return count;
}

std::vector<BigInt> SmithResult::torsion() const {
  std::vector<BigInt> out;
  for (const auto& d : invariants) {
    if (d > 1) out.push_back(d);
  }
  return out;
}

namespace {

using Dense = std::vector<std::vector<BigInt>>;

template <typename V>
Dense to_big(const std::vector<std::vector<V>>& m) {
  Dense out(m.size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    out[r].reserve(m[r].size());
    for (const auto& v : m[r]) out[r].emplace_back(v);
  }
  return out;
}

// Dense Smith normal form on whatever the sparse phase left behind.
std::vector<BigInt> dense_smith(Dense a, const Deadline& deadline) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    if (deadline.expired()) throw BudgetExceeded("homology time budget exceeded");
    // Smallest non-zero entry of the trailing block to the corner.
    auto move_min = [&](bool rowAndColOnly) {
      std::size_t br = rows, bc = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (rowAndColOnly && i != t && j != t) continue;
          if (a[i][j].is_zero()) continue;
          if (br == rows || abs(a[i][j]) < abs(a[br][bc])) {
            br = i;
            bc = j;
          }
        }
      }
      if (br == rows) return false;
      std::swap(a[t], a[br]);
      for (auto& row : a) std::swap(row[t], row[bc]);
      return true;
    };
    if (!move_min(false)) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t].is_zero()) continue;
        BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (!a[i][t].is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j].is_zero()) continue;
        BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (!a[t][j].is_zero()) clean = false;
      }
      if (!clean) {
        move_min(true);
        continue;
      }
      // Enforce divisibility of the trailing block by the corner.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

// Fraction-free (Bareiss) row echelon form; returns the rank.
std::size_t dense_rank_rational(Dense a, const Deadline& deadline) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t k = 0; k < cols && rank < rows; ++k) {
    if (deadline.expired()) throw BudgetExceeded("homology time budget exceeded");
    std::size_t p = rank;
    while (p < rows && a[p][k].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        a[i][j] = (a[i][j] * a[rank][k] - a[i][k] * a[rank][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[rank][k];
    ++rank;
  }
  return rank;
}

template <typename Ring>
SmithResult smith_with(const SparseIntMatrix& m, Ring ring, const Deadline& deadline) {
  detail::SparseEliminator<Ring> elim(m, ring, deadline);
  const std::size_t units = elim.run();
  SmithResult result;
  result.invariants.assign(units, BigInt(1));
  for (auto& d : dense_smith(to_big(elim.remainder()), deadline)) result.invariants.push_back(std::move(d));
  std::stable_sort(result.invariants.begin(), result.invariants.end());
  return result;
}

}  // namespace

SmithResult smith_normal_form(const SparseIntMatrix& m, const Deadline& deadline) {
  try {
    return smith_with(m, detail::CheckedIntRing{}, deadline);
  } catch (const detail::Overflow&) {
    SmithResult result = smith_with(m, detail::BigIntRing{}, deadline);
    result.escalated = true;
    return result;
  }
}

std::size_t rank_rational(const SparseIntMatrix& m, const Deadline& deadline) {
  auto run = [&](auto ring) {
    detail::SparseEliminator<decltype(ring)> elim(m, ring, deadline);
    const std::size_t units = elim.run();
    return units + dense_rank_rational(to_big(elim.remainder()), deadline);
  };
  try {
    return run(detail::CheckedIntRing{});
  } catch (const detail::Overflow&) {
    return run(detail::BigIntRing{});
  }
}

std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p, const Deadline& deadline) {
  if (p < 2) throw ValidationError("modulus must be a prime >= 2");
  detail::SparseEliminator<detail::PrimeField> elim(m, detail::PrimeField(p), deadline);
  return elim.run();
}

// ---------------------------------------------------------------------------

BoundaryMatrix boundary_matrix(const FaceTable& table, int d) {
  if (d < -1 || d > table.max_dimension()) throw ValidationError("boundary dimension out of range");
  BoundaryMatrix b;
  b.n = table.n();
  b.dim = d;
  const auto cols = table.faces_of_dimension(d);
  b.matrix.rows = d >= 0 ? table.faces_of_dimension(d - 1).size() : 0;
  b.matrix.cols = cols.size();
  b.matrix.columns.resize(cols.size());
  if (d < 0) return b;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const BarredFace& f = table.face(cols[c]);
    auto& column = b.matrix.columns[c];
    for (std::size_t bar = 0; bar < f.bar_count(); ++bar) {
      const FaceId lower = table.id_of(merge_blocks(f, bar));
      column.emplace_back(static_cast<std::uint32_t>(table.local_index(lower)), bar % 2 == 0 ? 1 : -1);
    }
    std::sort(column.begin(), column.end());
  }
  return b;
}

Coefficients Coefficients::mod(std::uint32_t p) {
  if (p < 2) throw ValidationError("modulus must be a prime >= 2");
  for (std::uint32_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) throw ValidationError(std::to_string(p) + " is not prime");
  }
  return {Kind::Prime, p};
}

Coefficients Coefficients::parse(const std::string& tag) {
  if (tag == "Z" || tag == "z" || tag == "integers") return integers();
  if (tag == "Q" || tag == "q" || tag == "rationals") return rationals();
  std::string digits = tag;
  if (!digits.empty() && (digits[0] == 'F' || digits[0] == 'f' || digits[0] == 'p')) digits = digits.substr(1);
  try {
    std::size_t used = 0;
    unsigned long p = std::stoul(digits, &used);
    if (used == digits.size()) return mod(static_cast<std::uint32_t>(p));
  } catch (const std::logic_error&) {
  }
  throw ValidationError("unknown coefficients '" + tag + "' (use Z, Q or F<p>)");
}

std::string Coefficients::tag() const {
  switch (kind) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::Prime: return "F" + std::to_string(prime);
  }
  return "?";
}

bool BettiTable::all_complete() const {
  return std::all_of(complete.values().begin(), complete.values().end(), [](bool b) { return b; });
}

bool BettiTable::has_torsion(int d) const {
  return std::any_of(torsion.begin(), torsion.end(), [d](const auto& t) { return t.first == d && !t.second.empty(); });
}

std::vector<int> BettiTable::nonzero_dims() const {
  std::vector<int> out;
  for (int d = -1; d <= betti.max_dim(); ++d) {
    if (betti[d] > 0 || has_torsion(d)) out.push_back(d);
  }
  return out;
}

std::int64_t BettiTable::euler_characteristic() const {
  std::int64_t chi = 0;
  for (int d = -1; d <= betti.max_dim(); ++d) {
    const auto b = static_cast<std::int64_t>(betti[d]);
    chi += (d % 2 == 0) ? b : -b;
  }
  return chi;
}

BettiTable betti_table(const FaceTable& table, Coefficients coefficients, const HomologyOptions& options) {
  const int top = table.max_dimension() < -1 ? -1 : table.max_dimension();
  const Deadline deadline = options.timeBudget ? Deadline::after(*options.timeBudget) : Deadline{};

  BettiTable out;
  out.n = table.n();
  out.coefficients = coefficients;
  out.betti = GradedVector<std::uint64_t>(top);
  out.complete = GradedVector<bool>(top, true);

  // rank[d] = rank of the boundary from dimension d; d = top + 1 is zero.
  std::vector<std::size_t> rank(static_cast<std::size_t>(top + 3), 0);
  std::vector<bool> known(static_cast<std::size_t>(top + 3), true);
  std::vector<std::vector<BigInt>> invariants(static_cast<std::size_t>(top + 3));
  for (int d = 0; d <= top; ++d) {
    const auto idx = static_cast<std::size_t>(d + 1);
    const BoundaryMatrix b = boundary_matrix(table, d);
    try {
      switch (coefficients.kind) {
        case Coefficients::Kind::Integers: {
          SmithResult snf = smith_normal_form(b.matrix, deadline);
          rank[idx] = snf.rank();
          invariants[idx] = snf.torsion();
          if (snf.escalated) out.escalated.push_back(d);
          break;
        }
        case Coefficients::Kind::Rationals:
          rank[idx] = rank_rational(b.matrix, deadline);
          break;
        case Coefficients::Kind::Prime:
          rank[idx] = rank_mod_p(b.matrix, coefficients.prime, deadline);
          break;
      }
    } catch (const BudgetExceeded&) {
      known[idx] = false;
    }
  }

  for (int d = -1; d <= top; ++d) {
    const auto here = static_cast<std::size_t>(d + 1), above = here + 1;
    const std::size_t chains = table.faces_of_dimension(d).size();
    const std::size_t used = (known[here] ? rank[here] : 0) + (known[above] ? rank[above] : 0);
    out.betti[d] = chains - std::min(chains, used);
    out.complete[d] = known[here] && known[above];
    if (coefficients.kind == Coefficients::Kind::Integers && known[above] && !invariants[above].empty()) {
      out.torsion.emplace_back(d, invariants[above]);
    }
  }
  return out;
}

std::vector<int> expected_nonzero_dims(int n) {
  std::vector<int> out;
  for (int i = -1; i <= n - 2; ++i) {
    if (3 * i + 5 <= 2 * n && n <= 3 * i + 4) out.push_back(i);
  }
  return out;
}

std::vector<Coefficients> coefficient_plan(int n) {
  if (n <= 7) return {Coefficients::integers()};
  return {Coefficients::rationals(), Coefficients::mod(2), Coefficients::mod(3), Coefficients::mod(5)};
}

ConjectureCheck assess_conjecture(int n, std::vector<BettiTable> tables) {
  if (tables.empty()) throw ValidationError("no Betti tables to assess");
  ConjectureCheck check;
  check.n = n;
  check.expected = expected_nonzero_dims(n);
  check.tables = std::move(tables);
  for (const auto& t : check.tables) {
    if (t.n != n) throw ValidationError("Betti table for n = " + std::to_string(t.n) + " in check for n = " + std::to_string(n));
    if (!check.method.empty()) check.method += "+";
    check.method += t.coefficients.tag();
    check.complete = check.complete && t.all_complete();
  }
  const BettiTable& base = check.tables.front();
  if (base.coefficients.kind == Coefficients::Kind::Integers) {
    check.observed = base.nonzero_dims();
  } else {
    // Over Q plus primes: non-zero over Z iff free rank, or some prime sees
    // extra classes (torsion divisible by that prime).
    for (int d = -1; d <= base.betti.max_dim(); ++d) {
      bool nonzero = base.betti[d] > 0;
      for (std::size_t t = 1; t < check.tables.size(); ++t) nonzero = nonzero || check.tables[t].betti[d] != base.betti[d];
      if (nonzero) check.observed.push_back(d);
    }
  }
  check.ok = check.complete && check.observed == check.expected;
  return check;
}

ConjectureCheck check_conjecture(const FaceTable& table, const HomologyOptions& options) {
  std::vector<BettiTable> tables;
  for (const auto& coeff : coefficient_plan(table.n())) tables.push_back(betti_table(table, coeff, options));
  return assess_conjecture(table.n(), std::move(tables));
}

ConjectureCheck check_conjecture(int n, const Budget& budget, const HomologyOptions& options) {
  budget.require_homology(n);
  return check_conjecture(FaceTable::enumerate(n, budget), options);
}

CheckReport check_symmetry(const BettiTable& betti) {
  CheckReport report("betti symmetry");
  const int n = betti.n;
  for (int i = -1; i <= betti.betti.max_dim(); ++i) {
    const int j = (n - 3) - i;
    ++report.checked;
    if (betti.betti.get_or(i) != betti.betti.get_or(j)) {
      report.fail("beta_" + std::to_string(i) + " = " + std::to_string(betti.betti.get_or(i)) + " but beta_" +
                  std::to_string(j) + " = " + std::to_string(betti.betti.get_or(j)));
    }
  }
  return report;
}

void SignedChain::add(FaceId id, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = coefficients.emplace(id, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coefficients.erase(it);
  }
}

SignedChain boundary_of_chain(const SignedChain& z) {
  SignedChain out;
  out.n = z.n;
  out.dim = z.dim - 1;
  for (const auto& [id, c] : z.coefficients) {
    const BarredFace f = face_from_perm(Permutation::from_lex_rank(z.n, id));
    if (f.dimension() != z.dim) {
      throw ValidationError("chain mixes dimensions: face " + f.to_core_string() + " has dimension " +
                            std::to_string(f.dimension()) + ", chain has " + std::to_string(z.dim));
    }
    for (std::size_t bar = 0; bar < f.bar_count(); ++bar) {
      const FaceId lower = perm_from_face(merge_blocks(f, bar)).lex_rank();
      out.add(lower, bar % 2 == 0 ? c : -c);
    }
  }
  return out;
}

}  // namespace hcx
