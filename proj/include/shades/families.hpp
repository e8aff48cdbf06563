#pragma once

// The Frankl families F_i(n,k,t), their asymmetric generalization G_ij,
// exact counters, and the intersection predicates they satisfy.

#include <optional>
#include <string>
#include <vector>

#include "shades/setkit.hpp"

namespace shades {

/// F_i(n,k,t): k-subsets of [n] meeting [t+2i] in at least t+i elements.
struct FranklIndex {
  int n = 0, k = 0, t = 0, i = 0;

  /// Throws std::invalid_argument unless 1 <= t <= k <= n and 0 <= 2i <= n-t.
  void validate() const;
};

/// G_ij(n,k,t): k-subsets of [n] meeting [t+i+j] in at least t+i elements.
struct GenIndex {
  int n = 0, k = 0, t = 0, i = 0, j = 0;

  /// Throws std::invalid_argument unless 1 <= t <= k <= n, i, j >= 0 and i+j <= n-t.
  void validate() const;
};

SetFamily frankl_family(const FranklIndex& idx);
SetFamily g_family(const GenIndex& idx);

/// Number of k-subsets of [n] meeting [window] in at least `threshold`
/// elements. Not limited to n <= 63.
Count window_count(long long n, long long k, long long window, long long threshold);

/// |F_i(n,k,t)| = sum over r >= t+i of C(t+2i, r) * C(n-t-2i, k-r).
Count frankl_card(const FranklIndex& idx);
Count g_card(const GenIndex& idx);

/// Closed form for |F_i(2m, m, 2s)| via complementation symmetry.
/// Requires s >= 1, i >= 0 and s+i <= m.
Count frankl_card_center(int m, int s, int i);

bool is_t_intersecting(const SetFamily& family, int t);
bool is_cross_t_intersecting(const SetFamily& a, const SetFamily& b, int t);

enum class Verdict { Confirmed, Refuted, BudgetExceeded };

std::string to_string(Verdict v);

/// Outcome of checking a named claim on one parameter tuple. A refuted
/// report always carries a witness; a confirmed one means only that no
/// counterexample exists in the checked range.
struct VerificationReport {
  std::string claim;
  std::vector<long long> params;
  Verdict verdict = Verdict::Confirmed;
  std::vector<std::string> witness;  // serialized families
  std::string note;
  double elapsed = 0.0;
};

/// Emptiness of F_i for i > k-t, and m_shade(F_i(n,k,t)) = F_i(n,m,t) for
/// 0 <= i <= min(k-t, (n-t)/2).
VerificationReport check_shade_identities(int n, int k, int t, int m);

/// The same two identities for G_ij: G_ij(n,k,t) is empty for i > k-t, and
/// m_shade(G_ij(n,k,t)) = G_ij(n,m,t) for 0 <= i <= k-t, i+j <= n-t.
VerificationReport check_g_shade_identities(int n, int k, int t, int m);

}  // namespace shades
