#pragma once

// Exact brute-force values of M, M_0, N, N_0, N_1 and the Sperner shade
// maximum, with witnesses, and the conjectured closed values they are
// compared against.
//
// All searches are single-threaded and deterministic. When several optima
// are found the reported witness is the lexicographically least of them
// (members compared as ascending mask sequences).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "shades/setkit.hpp"

namespace shades {

/// Largest ground set accepted by the exhaustive searches.
inline constexpr int kSearchCap = 12;
inline constexpr int kSpernerCap = 5;

/// Limits and options shared by every search.
struct SearchBudget {
  std::uint64_t max_nodes = 4'000'000'000ULL;
  double max_seconds = 3600.0;
  bool allow_partial = false;
  /// Only explore families containing [k]. Every nonempty family has a
  /// permuted copy containing [k] and all objectives are permutation
  /// invariant, so values are unchanged; witnesses may differ among ties.
  bool symmetry = false;

  void validate() const;
};

enum class Status { Optimal, LowerBound };
std::string to_string(Status s);

/// Thrown when a budget runs out and partial results were not allowed.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExtremalResult {
  Count value;
  SetFamily witness_a;
  std::optional<SetFamily> witness_b;
  Status status = Status::Optimal;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

struct SpernerResult {
  Count value;
  Collection witness;
  std::uint64_t antichains = 0;  // number of antichains of 2^[n] visited
  Status status = Status::Optimal;
  std::uint64_t nodes = 0;
  double seconds = 0.0;

  /// Kostochka's bound 0.724 * 2^n.
  double kostochka_bound(int n) const;
};

/// M(n,k,t): largest t-intersecting family of k-subsets of [n].
ExtremalResult max_t_intersecting(int n, int k, int t, const SearchBudget& budget = {});
/// max over 0 <= i <= (n-t)/2 of |F_i(n,k,t)|.
Count ak_value(int n, int k, int t);

/// M_0(n,m,k,t): largest m-shade of a t-intersecting family of k-subsets.
ExtremalResult max_m_shade(int n, int m, int k, int t, const SearchBudget& budget = {});
Count conjecture_j1_value(int n, int m, int k, int t);

/// N(n,k,l,t): largest |A|*|B| over cross-t-intersecting pairs.
ExtremalResult max_cross_product(int n, int k, int l, int t, const SearchBudget& budget = {});
Count conjecture_j4_value(int n, int k, int l, int t);

/// N_0(n,mk,ml,k,l,t): largest |m_shade(A,mk)| * |m_shade(B,ml)| over
/// cross-t-intersecting pairs of k- and l-subsets.
ExtremalResult max_cross_shade_product(int n, int mk, int ml, int k, int l, int t, const SearchBudget& budget = {});
/// N_1(n,m,k,t) = N_0(n,m,m,k,k,t).
ExtremalResult max_cross_shade_diagonal(int n, int m, int k, int t, const SearchBudget& budget = {});
Count conjecture_j5_value(int n, int mk, int ml, int k, int l, int t);

/// Largest shade of an antichain of 2^[n], by exhaustive enumeration.
SpernerResult sperner_max_shade(int n, const SearchBudget& budget = {});

}  // namespace shades
