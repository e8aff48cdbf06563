#pragma once

// Subsets of [n] as machine words, exact binomials, shade operators and
// two-colour homogeneity.
//
// Element p of [n] is stored in bit p-1. Families are kept in canonical
// form: members sorted by ascending mask value (which is colex order).

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace shades {

using Count = boost::multiprecision::cpp_int;
using Mask = std::uint64_t;

inline constexpr int kMaxGroundSet = 63;

std::string to_string(const Count& c);

inline int popcount(Mask m) { return __builtin_popcountll(m); }

/// Mask with bits 0..n-1 set, i.e. the set [n].
inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// Mask of the initial segment [t] = {1..t}.
inline Mask prefix_mask(int t) { return full_mask(t); }

struct KSubset {
  Mask mask = 0;
  int n = 0;

  KSubset() = default;
  KSubset(Mask mask, int n);

  static KSubset from_elements(std::span<const int> elements, int n);

  int size() const { return popcount(mask); }
  bool contains(int element) const { return (mask >> (element - 1)) & 1u; }
  std::vector<int> elements() const;

  friend bool operator==(const KSubset&, const KSubset&) = default;
};

/// Uniform family: every member has exactly k elements.
class SetFamily {
 public:
  SetFamily() = default;
  /// Sorts and removes duplicates; throws if a member has the wrong size
  /// or elements outside [n].
  SetFamily(int n, int k, std::vector<Mask> members);

  static SetFamily empty(int n, int k) { return SetFamily(n, k, {}); }

  int n() const { return n_; }
  int k() const { return k_; }
  const std::vector<Mask>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Mask m) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<Mask> members_;
};

/// Lexicographic comparison of the canonical member sequences.
bool lex_less(const SetFamily& a, const SetFamily& b);

/// Canonical collection of subsets of [n] of possibly different sizes.
struct Collection {
  int n = 0;
  std::vector<Mask> members;

  Collection() = default;
  Collection(int n, std::vector<Mask> members);

  std::size_t size() const { return members.size(); }
  friend bool operator==(const Collection&, const Collection&) = default;
};

struct Colouring {
  int n = 0;
  Mask zero_set = 0;

  Colouring(int n, Mask zero_set);
  Mask one_set() const { return full_mask(n) & ~zero_set; }
};

// Counting

Count binomial(long long n, long long k);
/// Machine-word binomial; throws std::overflow_error if it does not fit.
std::uint64_t binomial_u64(int n, int k);

// Enumeration and shades

SetFamily enumerate_k_subsets(int n, int k);

/// Next mask with the same popcount (Gosper's hack). Requires x != 0.
inline Mask next_same_popcount(Mask x) {
  const Mask c = x & (~x + 1);
  const Mask r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

SetFamily shade(const KSubset& x);
Collection shade_family(const Collection& family);
SetFamily m_shade(const KSubset& x, int m);
SetFamily m_shade_family(const SetFamily& family, int m);

bool is_homogeneous(const KSubset& x, const Colouring& c);

/// Number of colourings c of [2m] with |c^-1(0)| = m for which some member
/// of the family is homogeneous.
Count covered_colourings_count(const SetFamily& family, int m);

// Serialization: header "n=<n> k=<k>", then one member per line as sorted
// comma-separated elements.

std::string format_subset(Mask mask);
Mask parse_subset(const std::string& line, int n);
void write_family(std::ostream& out, const SetFamily& family);
SetFamily read_family(std::istream& in);
/// Mixed-size collections use the header "n=<n> k=mixed".
void write_collection(std::ostream& out, const Collection& family);

}  // namespace shades
