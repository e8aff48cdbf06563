#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "shades/setkit.hpp"

using namespace shades;

namespace {

Mask set_of(std::initializer_list<int> elements) {
  Mask m = 0;
  for (int e : elements) m |= Mask{1} << (e - 1);
  return m;
}

SetFamily family_of(int n, int k, std::initializer_list<std::initializer_list<int>> members) {
  std::vector<Mask> masks;
  for (const auto& m : members) masks.push_back(set_of(m));
  return SetFamily(n, k, masks);
}

// Oracle: C(n,k) via Pascal's recurrence in unsigned 128-bit arithmetic.
std::vector<std::vector<unsigned __int128>> pascal_rows(int rows) {
  std::vector<std::vector<unsigned __int128>> p(rows + 1);
  for (int n = 0; n <= rows; ++n) {
    p[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k) p[n][k] = p[n - 1][k - 1] + p[n - 1][k];
  }
  return p;
}

Count to_count(unsigned __int128 v) {
  Count c = static_cast<std::uint64_t>(v >> 64);
  c <<= 64;
  c += static_cast<std::uint64_t>(v);
  return c;
}

// Oracle: all m-subsets of [n] that contain x, by scanning every subset.
std::vector<Mask> supersets_by_scan(Mask x, int n, int m) {
  std::vector<Mask> out;
  for (Mask y = 0; y <= full_mask(n); ++y)
    if (popcount(y) == m && (y & x) == x) out.push_back(y);
  return out;
}

}  // namespace

TEST_CASE("binomial examples and edge cases") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(52, 5) == 2598960);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(0, 0) == 1);
  CHECK_THROWS_AS(binomial(-1, 0), std::invalid_argument);
  CHECK(to_string(binomial(100, 50)) == "100891344545564193334812497256");
}

TEST_CASE("binomial agrees with the Pascal recurrence for n <= 64") {
  const auto p = pascal_rows(64);
  for (int n = 0; n <= 64; ++n)
    for (int k = 0; k <= n; ++k) REQUIRE(binomial(n, k) == to_count(p[n][k]));
  for (int n = 0; n <= 62; ++n)
    for (int k = 0; k <= n; ++k) REQUIRE(binomial_u64(n, k) == static_cast<std::uint64_t>(p[n][k]));
  CHECK_THROWS_AS(binomial_u64(200, 100), std::overflow_error);
}

TEST_CASE("SetFamily canonical form") {
  const SetFamily a(4, 2, {set_of({3, 4}), set_of({1, 2}), set_of({1, 3}), set_of({1, 2})});
  CHECK(a.size() == 3);
  CHECK(a.members() == std::vector<Mask>{set_of({1, 2}), set_of({1, 3}), set_of({3, 4})});
  CHECK(a.contains(set_of({1, 3})));
  CHECK_FALSE(a.contains(set_of({2, 3})));

  std::vector<Mask> members = enumerate_k_subsets(6, 3).members();
  std::mt19937_64 rng(7);
  for (int round = 0; round < 20; ++round) {
    std::shuffle(members.begin(), members.end(), rng);
    REQUIRE(SetFamily(6, 3, members) == enumerate_k_subsets(6, 3));
  }

  CHECK_THROWS_AS(SetFamily(4, 2, {set_of({1, 2, 3})}), std::invalid_argument);
  CHECK_THROWS_AS(SetFamily(3, 2, {set_of({1, 4})}), std::invalid_argument);
}

TEST_CASE("enumerate_k_subsets") {
  CHECK(enumerate_k_subsets(3, 2) == family_of(3, 2, {{1, 2}, {1, 3}, {2, 3}}));
  const auto empty_only = enumerate_k_subsets(4, 0);
  CHECK(empty_only.members() == std::vector<Mask>{0});
  CHECK(enumerate_k_subsets(5, 3).size() == 10);
  CHECK_THROWS_AS(enumerate_k_subsets(3, 4), std::invalid_argument);

  for (int n = 0; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) {
      const auto f = enumerate_k_subsets(n, k);
      REQUIRE(Count(f.size()) == binomial(n, k));
      REQUIRE(std::is_sorted(f.begin(), f.end()));
    }
}

TEST_CASE("shade of a single subset") {
  CHECK(shade(KSubset(set_of({1}), 3)) == family_of(3, 2, {{1, 2}, {1, 3}}));
  CHECK(shade(KSubset(0, 2)) == family_of(2, 1, {{1}, {2}}));
  CHECK_THROWS_AS(shade(KSubset(full_mask(3), 3)), std::invalid_argument);
  for (int n = 1; n <= 8; ++n)
    for (Mask x = 0; x < full_mask(n); ++x) REQUIRE(shade(KSubset(x, n)).size() == static_cast<std::size_t>(n - popcount(x)));
}

TEST_CASE("shade of a mixed collection") {
  const Collection x(3, {set_of({1}), set_of({2})});
  CHECK(shade_family(x).members == std::vector<Mask>{set_of({1, 2}), set_of({1, 3}), set_of({2, 3})});
  CHECK(shade_family(Collection(4, {0})).members ==
        std::vector<Mask>{set_of({1}), set_of({2}), set_of({3}), set_of({4})});
  CHECK(shade_family(Collection(4, {})).members.empty());
  CHECK_THROWS_AS(shade_family(Collection(3, {full_mask(3)})), std::invalid_argument);
  const Collection mixed(3, {set_of({1}), set_of({2, 3})});
  CHECK(shade_family(mixed).members == std::vector<Mask>{set_of({1, 2}), set_of({1, 3}), set_of({1, 2, 3})});
}

TEST_CASE("m-shade of a single subset") {
  CHECK(m_shade(KSubset(set_of({1, 2}), 4), 2) == family_of(4, 2, {{1, 2}}));
  CHECK(m_shade(KSubset(set_of({1}), 3), 2) == family_of(3, 2, {{1, 2}, {1, 3}}));
  CHECK_THROWS_AS(m_shade(KSubset(set_of({1, 2}), 4), 1), std::invalid_argument);
  CHECK_THROWS_AS(m_shade(KSubset(set_of({1, 2}), 4), 5), std::invalid_argument);

  for (int n = 0; n <= 12; ++n)
    for (Mask x = 0; x <= full_mask(n); ++x)
      for (int m = popcount(x); m <= n; ++m) {
        const auto s = m_shade(KSubset(x, n), m);
        REQUIRE(Count(s.size()) == binomial(n - popcount(x), m - popcount(x)));
      }
  for (int n = 0; n <= 7; ++n)
    for (Mask x = 0; x <= full_mask(n); ++x)
      for (int m = popcount(x); m <= n; ++m) REQUIRE(m_shade(KSubset(x, n), m).members() == supersets_by_scan(x, n, m));
}

TEST_CASE("m-shade of a family") {
  const auto x = family_of(4, 2, {{1, 2}});
  CHECK(m_shade_family(x, 3) == family_of(4, 3, {{1, 2, 3}, {1, 2, 4}}));
  const auto f = family_of(6, 3, {{1, 2, 3}, {2, 4, 6}, {1, 5, 6}});
  CHECK(m_shade_family(f, 3) == f);
  CHECK_THROWS_AS(m_shade_family(f, 2), std::invalid_argument);

  // Both evaluation strategies agree with a scan of all m-subsets, and the
  // result is monotone under inclusion.
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    const int n = 4 + static_cast<int>(rng() % 7);
    const int k = 1 + static_cast<int>(rng() % (n - 1));
    const int m = k + static_cast<int>(rng() % (n - k + 1));
    const auto all = enumerate_k_subsets(n, k).members();
    std::vector<Mask> small, large;
    for (Mask s : all) {
      const auto r = rng() % 8;
      if (r == 0) small.push_back(s);
      if (r <= 2) large.push_back(s);
    }
    const SetFamily a(n, k, small), b(n, k, large);
    std::vector<Mask> expect;
    for (Mask y : enumerate_k_subsets(n, m))
      if (std::any_of(small.begin(), small.end(), [&](Mask s) { return (y & s) == s; })) expect.push_back(y);
    const auto sa = m_shade_family(a, m), sb = m_shade_family(b, m);
    REQUIRE(sa.members() == expect);
    REQUIRE(std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()));
  }
}

TEST_CASE("homogeneity") {
  const Colouring c(4, set_of({1, 2}));
  CHECK(c.one_set() == set_of({3, 4}));
  CHECK(is_homogeneous(KSubset(set_of({1, 2}), 4), c));
  CHECK(is_homogeneous(KSubset(set_of({3, 4}), 4), c));
  CHECK_FALSE(is_homogeneous(KSubset(set_of({1, 3}), 4), c));
  CHECK_THROWS_AS(is_homogeneous(KSubset(set_of({1}), 5), c), std::invalid_argument);
}

TEST_CASE("homogeneity matches the m-shade characterisation for n <= 10") {
  for (int n = 1; n <= 10; ++n)
    for (int m = 0; m <= n; ++m)
      for (Mask z : enumerate_k_subsets(n, m)) {
        const Colouring c(n, z);
        for (Mask x = 0; x <= full_mask(n); ++x) {
          const KSubset xs(x, n);
          const bool via_shades = (popcount(x) <= m && m_shade(xs, m).contains(z)) ||
                                  (popcount(x) <= n - m && m_shade(xs, n - m).contains(c.one_set()));
          REQUIRE(is_homogeneous(xs, c) == via_shades);
        }
      }
}

TEST_CASE("covered colourings") {
  CHECK(covered_colourings_count(family_of(2, 1, {{1}}), 1) == 2);
  CHECK(covered_colourings_count(family_of(4, 2, {{1, 2}}), 2) == 2);
  CHECK(covered_colourings_count(SetFamily::empty(4, 2), 2) == 0);
  CHECK_THROWS_AS(covered_colourings_count(family_of(5, 2, {{1, 2}}), 2), std::invalid_argument);
  CHECK_THROWS_AS(covered_colourings_count(family_of(4, 3, {{1, 2, 3}}), 2), std::invalid_argument);

  // Every family of 2-subsets of [4] satisfies the factor-two bound.
  const auto pairs = enumerate_k_subsets(4, 2).members();
  for (unsigned pick = 0; pick < (1u << pairs.size()); ++pick) {
    std::vector<Mask> members;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (pick >> i & 1u) members.push_back(pairs[i]);
    const SetFamily x(4, 2, members);
    REQUIRE(covered_colourings_count(x, 2) <= 2 * Count(m_shade_family(x, 2).size()));
  }
}

TEST_CASE("serialization round trip") {
  CHECK(format_subset(set_of({1, 2, 5})) == "1,2,5");
  CHECK(format_subset(0).empty());
  CHECK(parse_subset("1,2,5", 5) == set_of({1, 2, 5}));
  CHECK(parse_subset(" 5, 1 ", 5) == set_of({1, 5}));
  CHECK_THROWS_AS(parse_subset("1,6", 5), std::invalid_argument);
  CHECK_THROWS_AS(parse_subset("1,x", 5), std::invalid_argument);

  const auto f = family_of(5, 3, {{3, 4, 5}, {1, 2, 5}, {1, 2, 3}});
  std::ostringstream out;
  write_family(out, f);
  CHECK(out.str() == "n=5 k=3\n1,2,3\n1,2,5\n3,4,5\n");
  std::istringstream in(out.str());
  CHECK(read_family(in) == f);

  std::istringstream unsorted("n=4 k=2\n3,4\n1,2\n\n1,2\n");
  CHECK(read_family(unsorted) == family_of(4, 2, {{1, 2}, {3, 4}}));
  std::istringstream bad_header("n=4\n1,2\n");
  CHECK_THROWS_AS(read_family(bad_header), std::invalid_argument);
  std::istringstream wrong_size("n=4 k=2\n1,2,3\n");
  CHECK_THROWS_AS(read_family(wrong_size), std::invalid_argument);

  std::ostringstream mixed;
  write_collection(mixed, Collection(3, {set_of({2, 3}), set_of({1})}));
  CHECK(mixed.str() == "n=3 k=mixed\n1\n2,3\n");
}
