#include "shades/families.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace shades {

namespace {

std::string describe(const char* name, std::initializer_list<int> values) {
  std::ostringstream os;
  os << name << '(';
  bool first = true;
  for (int v : values) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  os << ')';
  return os.str();
}

// k-subsets of [n] with |F & [window]| >= threshold.
SetFamily threshold_family(int n, int k, int window, int threshold) {
  const Mask w = prefix_mask(window);
  std::vector<Mask> out;
  for (Mask f : enumerate_k_subsets(n, k))
    if (popcount(f & w) >= threshold) out.push_back(f);
  return SetFamily(n, k, std::move(out));
}

std::string serialize(const SetFamily& f) {
  std::ostringstream os;
  write_family(os, f);
  return os.str();
}

}  // namespace

Count window_count(long long n, long long k, long long window, long long threshold) {
  if (n < 0 || window < 0 || window > n) throw std::invalid_argument("window_count: need 0 <= window <= n");
  Count total = 0;
  for (long long r = std::max(threshold, 0LL); r <= std::min(window, k); ++r)
    total += binomial(window, r) * binomial(n - window, k - r);
  return total;
}

void FranklIndex::validate() const {
  if (!(1 <= t && t <= k && k <= n))
    throw std::invalid_argument("FranklIndex needs 1 <= t <= k <= n");
  if (i < 0 || 2 * i > n - t) throw std::invalid_argument("FranklIndex needs 0 <= i <= (n-t)/2");
}

void GenIndex::validate() const {
  if (!(1 <= t && t <= k && k <= n))
    throw std::invalid_argument("GenIndex needs 1 <= t <= k <= n");
  if (i < 0 || j < 0 || i + j > n - t) throw std::invalid_argument("GenIndex needs i, j >= 0 and i+j <= n-t");
}

SetFamily frankl_family(const FranklIndex& idx) {
  idx.validate();
  return threshold_family(idx.n, idx.k, idx.t + 2 * idx.i, idx.t + idx.i);
}

SetFamily g_family(const GenIndex& idx) {
  idx.validate();
  return threshold_family(idx.n, idx.k, idx.t + idx.i + idx.j, idx.t + idx.i);
}

Count frankl_card(const FranklIndex& idx) {
  idx.validate();
  return window_count(idx.n, idx.k, idx.t + 2 * idx.i, idx.t + idx.i);
}

Count g_card(const GenIndex& idx) {
  idx.validate();
  return window_count(idx.n, idx.k, idx.t + idx.i + idx.j, idx.t + idx.i);
}

Count frankl_card_center(int m, int s, int i) {
  if (s < 1 || i < 0 || s + i > m)
    throw std::invalid_argument("frankl_card_center needs s >= 1, i >= 0 and s+i <= m");
  const int half = s + i;
  Count middle = 0;
  for (int j = -(s - 1); j <= s - 1; ++j) middle += binomial(2 * half, half + j) * binomial(2 * m - 2 * half, m - (half + j));
  const Count twice = binomial(2 * m, m) - middle;
  if (twice % 2 != 0) throw std::logic_error("frankl_card_center: odd numerator");
  return twice / 2;
}

bool is_t_intersecting(const SetFamily& family, int t) { return is_cross_t_intersecting(family, family, t); }

bool is_cross_t_intersecting(const SetFamily& a, const SetFamily& b, int t) {
  if (a.n() != b.n()) throw std::invalid_argument("is_cross_t_intersecting: ground sets differ");
  for (Mask e : a)
    for (Mask f : b)
      if (popcount(e & f) < t) return false;
  return true;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Confirmed: return "CONFIRMED";
    case Verdict::Refuted: return "REFUTED";
    case Verdict::BudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

VerificationReport check_shade_identities(int n, int k, int t, int m) {
  VerificationReport rep;
  rep.claim = "lemma-2.2";
  rep.params = {n, k, t, m};
  if (!(1 <= t && t <= k && k <= m && m <= n)) throw std::invalid_argument("check_shade_identities needs 1 <= t <= k <= m <= n");
  for (int i = 0; 2 * i <= n - t; ++i) {
    const SetFamily fk = frankl_family({n, k, t, i});
    if (i > k - t) {
      if (!fk.empty()) {
        rep.verdict = Verdict::Refuted;
        rep.note = describe("nonempty F", {i, n, k, t});
        rep.witness.push_back(serialize(fk));
        return rep;
      }
      continue;
    }
    const SetFamily lhs = m_shade_family(fk, m);
    const SetFamily rhs = frankl_family({n, m, t, i});
    if (lhs != rhs) {
      rep.verdict = Verdict::Refuted;
      rep.note = describe("shade mismatch at i", {i});
      rep.witness = {serialize(fk), serialize(lhs), serialize(rhs)};
      return rep;
    }
  }
  return rep;
}

VerificationReport check_g_shade_identities(int n, int k, int t, int m) {
  VerificationReport rep;
  rep.claim = "lemma-3.6";
  rep.params = {n, k, t, m};
  if (!(1 <= t && t <= k && k <= m && m <= n)) throw std::invalid_argument("check_g_shade_identities needs 1 <= t <= k <= m <= n");
  for (int i = 0; i <= n - t; ++i) {
    for (int j = 0; i + j <= n - t; ++j) {
      const SetFamily gk = g_family({n, k, t, i, j});
      if (i > k - t) {
        if (!gk.empty()) {
          rep.verdict = Verdict::Refuted;
          rep.note = describe("nonempty G", {i, j});
          rep.witness.push_back(serialize(gk));
          return rep;
        }
        continue;
      }
      const SetFamily lhs = m_shade_family(gk, m);
      const SetFamily rhs = g_family({n, m, t, i, j});
      if (lhs != rhs) {
        rep.verdict = Verdict::Refuted;
        rep.note = describe("shade mismatch at (i,j)", {i, j});
        rep.witness = {serialize(gk), serialize(lhs), serialize(rhs)};
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace shades
