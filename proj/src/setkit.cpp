#include "shades/setkit.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace shades {

namespace {

void check_ground_set(int n) {
  if (n < 0 || n > kMaxGroundSet)
    throw std::invalid_argument("ground set size must be in [0, 63], got " + std::to_string(n));
}

void check_within(Mask m, int n) {
  if (m & ~full_mask(n)) throw std::invalid_argument("subset has elements outside [n]");
}

void sort_unique(std::vector<Mask>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Spreads the low bits of `compact` onto the set bits of `positions`.
Mask deposit(Mask compact, Mask positions) {
  Mask out = 0;
  for (Mask bit = 1; positions; bit <<= 1) {
    const Mask low = positions & (~positions + 1);
    if (compact & bit) out |= low;
    positions &= positions - 1;
  }
  return out;
}

// Calls f(mask) for every r-subset of the set bits of `positions`, in
// ascending mask order.
template <class F>
void for_each_subset_of(Mask positions, int r, F&& f) {
  const int c = popcount(positions);
  if (r < 0 || r > c) return;
  if (r == 0) {
    f(Mask{0});
    return;
  }
  const Mask last = full_mask(c) & ~full_mask(c - r);
  for (Mask comb = full_mask(r);; comb = next_same_popcount(comb)) {
    f(deposit(comb, positions));
    if (comb == last) break;
  }
}

}  // namespace

std::string to_string(const Count& c) { return c.str(); }

KSubset::KSubset(Mask mask_, int n_) : mask(mask_), n(n_) {
  check_ground_set(n);
  check_within(mask, n);
}

KSubset KSubset::from_elements(std::span<const int> elements, int n) {
  check_ground_set(n);
  Mask m = 0;
  for (int e : elements) {
    if (e < 1 || e > n) throw std::invalid_argument("element " + std::to_string(e) + " outside [n]");
    m |= Mask{1} << (e - 1);
  }
  return KSubset(m, n);
}

std::vector<int> KSubset::elements() const {
  std::vector<int> out;
  for (Mask m = mask; m; m &= m - 1) out.push_back(__builtin_ctzll(m) + 1);
  return out;
}

SetFamily::SetFamily(int n, int k, std::vector<Mask> members) : n_(n), k_(k), members_(std::move(members)) {
  check_ground_set(n);
  if (k < 0 || k > n) throw std::invalid_argument("member size k must satisfy 0 <= k <= n");
  for (Mask m : members_) {
    check_within(m, n);
    if (popcount(m) != k) throw std::invalid_argument("family member " + format_subset(m) + " does not have size k");
  }
  sort_unique(members_);
}

bool SetFamily::contains(Mask m) const { return std::binary_search(members_.begin(), members_.end(), m); }

bool lex_less(const SetFamily& a, const SetFamily& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Collection::Collection(int n_, std::vector<Mask> members_) : n(n_), members(std::move(members_)) {
  check_ground_set(n);
  for (Mask m : members) check_within(m, n);
  sort_unique(members);
}

Colouring::Colouring(int n_, Mask zero_set_) : n(n_), zero_set(zero_set_) {
  check_ground_set(n);
  check_within(zero_set, n);
}

Count binomial(long long n, long long k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Count r = 1;
  for (long long i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

std::uint64_t binomial_u64(int n, int k) {
  const Count c = binomial(n, k);
  if (c > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial exceeds 64 bits");
  return static_cast<std::uint64_t>(c);
}

SetFamily enumerate_k_subsets(int n, int k) {
  check_ground_set(n);
  if (k < 0 || k > n) throw std::invalid_argument("enumerate_k_subsets: need 0 <= k <= n");
  std::vector<Mask> out;
  out.reserve(binomial_u64(n, k));
  for_each_subset_of(full_mask(n), k, [&](Mask m) { out.push_back(m); });
  return SetFamily(n, k, std::move(out));
}

SetFamily shade(const KSubset& x) {
  if (x.size() >= x.n) throw std::invalid_argument("shade: the full set has no shade");
  return m_shade(x, x.size() + 1);
}

Collection shade_family(const Collection& family) {
  std::vector<Mask> out;
  const Mask full = full_mask(family.n);
  for (Mask x : family.members) {
    if (x == full) throw std::invalid_argument("shade_family: member of full cardinality");
    for (Mask free = full & ~x; free; free &= free - 1) out.push_back(x | (free & (~free + 1)));
  }
  return Collection(family.n, std::move(out));
}

SetFamily m_shade(const KSubset& x, int m) {
  const int k = x.size();
  if (m < k || m > x.n) throw std::invalid_argument("m_shade: need |x| <= m <= n");
  std::vector<Mask> out;
  for_each_subset_of(full_mask(x.n) & ~x.mask, m - k, [&](Mask add) { out.push_back(x.mask | add); });
  return SetFamily(x.n, m, std::move(out));
}

SetFamily m_shade_family(const SetFamily& family, int m) {
  const int n = family.n(), k = family.k();
  if (m < k || m > n) throw std::invalid_argument("m_shade_family: need k <= m <= n");
  if (m == k) return family;

  // Generating supersets costs |A|*C(n-k, m-k); scanning every m-subset
  // costs C(n, m) membership tests. Take whichever is smaller.
  const Count generate = Count(family.size()) * binomial(n - k, m - k);
  const Count scan = binomial(n, m);
  std::vector<Mask> out;
  if (generate <= scan) {
    for (Mask x : family)
      for_each_subset_of(full_mask(n) & ~x, m - k, [&](Mask add) { out.push_back(x | add); });
  } else {
    for_each_subset_of(full_mask(n), m, [&](Mask y) {
      for (Mask x : family)
        if ((x & ~y) == 0) {
          out.push_back(y);
          break;
        }
    });
  }
  return SetFamily(n, m, std::move(out));
}

bool is_homogeneous(const KSubset& x, const Colouring& c) {
  if (x.n != c.n) throw std::invalid_argument("is_homogeneous: ground sets differ");
  return (x.mask & ~c.zero_set) == 0 || (x.mask & c.zero_set) == 0;
}

Count covered_colourings_count(const SetFamily& family, int m) {
  if (family.n() % 2 != 0) throw std::invalid_argument("covered_colourings_count: n must be even");
  if (family.n() != 2 * m) throw std::invalid_argument("covered_colourings_count: n must equal 2m");
  if (family.k() > m) throw std::invalid_argument("covered_colourings_count: need k <= m");
  const Mask full = full_mask(family.n());
  std::uint64_t covered = 0;
  for_each_subset_of(full, m, [&](Mask zero) {
    const Mask one = full & ~zero;
    for (Mask x : family)
      if ((x & ~zero) == 0 || (x & ~one) == 0) {
        ++covered;
        break;
      }
  });
  return covered;
}

std::string format_subset(Mask mask) {
  std::string out;
  for (Mask m = mask; m; m &= m - 1) {
    if (!out.empty()) out += ',';
    out += std::to_string(__builtin_ctzll(m) + 1);
  }
  return out;
}

Mask parse_subset(const std::string& line, int n) {
  Mask m = 0;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto first = tok.find_first_not_of(" \t\r");
    tok = first == std::string::npos ? std::string() : tok.substr(first, tok.find_last_not_of(" \t\r") - first + 1);
    if (tok.empty()) throw std::invalid_argument("empty element in '" + line + "'");
    std::size_t used = 0;
    int e = 0;
    try {
      e = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad element '" + tok + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("bad element '" + tok + "'");
    if (e < 1 || e > n) throw std::invalid_argument("element " + tok + " outside [n]");
    const Mask bit = Mask{1} << (e - 1);
    if (m & bit) throw std::invalid_argument("repeated element " + tok);
    m |= bit;
  }
  return m;
}

void write_family(std::ostream& out, const SetFamily& family) {
  out << "n=" << family.n() << " k=" << family.k() << '\n';
  for (Mask m : family) out << format_subset(m) << '\n';
}

void write_collection(std::ostream& out, const Collection& family) {
  out << "n=" << family.n << " k=mixed\n";
  for (Mask m : family.members) out << format_subset(m) << '\n';
}

SetFamily read_family(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("missing family header");
  int n = -1, k = -1;
  char tail = 0;
  if (std::sscanf(header.c_str(), "n=%d k=%d%c", &n, &k, &tail) != 2)
    throw std::invalid_argument("malformed family header '" + header + "'");
  check_ground_set(n);
  std::vector<Mask> members;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && k > 0) continue;
    members.push_back(parse_subset(line, n));
  }
  return SetFamily(n, k, std::move(members));
}

}  // namespace shades
