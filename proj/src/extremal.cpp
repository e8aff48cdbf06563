#include "shades/extremal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "bits.hpp"
#include "shades/families.hpp"

namespace shades {

using detail::Bits;

namespace {

class Meter {
 public:
  explicit Meter(const SearchBudget& budget) : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  /// Counts one search node; false once the budget is spent.
  bool tick() {
    if (exhausted_) return false;
    ++nodes_;
    if (nodes_ > budget_.max_nodes) exhausted_ = true;
    if ((nodes_ & 1023) == 0 && elapsed() > budget_.max_seconds) exhausted_ = true;
    return !exhausted_;
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  template <class R>
  void finish(R& result, const char* what) const {
    result.nodes = nodes_;
    result.seconds = elapsed();
    if (!exhausted_) return;
    if (!budget_.allow_partial) throw BudgetExceeded(std::string(what) + ": search budget exhausted");
    result.status = Status::LowerBound;
  }

 private:
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

void check_cap(int n, const char* what) {
  if (n > kSearchCap)
    throw std::invalid_argument(std::string(what) + ": n exceeds the search cap of " + std::to_string(kSearchCap));
}

// Vertices are the k-subsets of [n] in canonical order.
struct Universe {
  int n = 0, k = 0;
  std::vector<Mask> sets;

  Universe(int n_, int k_) : n(n_), k(k_), sets(enumerate_k_subsets(n_, k_).members()) {}
  std::size_t size() const { return sets.size(); }

  SetFamily family(const Bits& b) const {
    std::vector<Mask> out;
    for (std::size_t v = b.first(); v < b.size(); v = b.next(v + 1)) out.push_back(sets[v]);
    return SetFamily(n, k, std::move(out));
  }
  SetFamily family(const std::vector<int>& vs) const {
    std::vector<Mask> out;
    for (int v : vs) out.push_back(sets[static_cast<std::size_t>(v)]);
    return SetFamily(n, k, std::move(out));
  }
};

// adj[e] = members f of `to` with |e & f| >= t.
std::vector<Bits> cross_adjacency(const Universe& from, const Universe& to, int t, bool irreflexive = false) {
  std::vector<Bits> adj(from.size(), Bits(to.size()));
  for (std::size_t e = 0; e < from.size(); ++e)
    for (std::size_t f = 0; f < to.size(); ++f)
      if (popcount(from.sets[e] & to.sets[f]) >= t && !(irreflexive && e == f)) adj[e].set(f);
  return adj;
}

// For each member of `from`, the set of m-subsets (indexed canonically)
// containing it.
std::vector<Bits> shade_table(const Universe& from, int m) {
  const Universe level(from.n, m);
  std::unordered_map<Mask, std::size_t> index;
  for (std::size_t i = 0; i < level.size(); ++i) index.emplace(level.sets[i], i);
  std::vector<Bits> table(from.size(), Bits(level.size()));
  for (std::size_t v = 0; v < from.size(); ++v)
    for (Mask y : m_shade_family(SetFamily(from.n, from.k, {from.sets[v]}), m)) table[v].set(index.at(y));
  return table;
}

// Lexicographic comparison of the ascending index sequences of two sets;
// indices follow canonical mask order, so this matches lex_less on families.
bool lex_less_bits(const Bits& a, const Bits& b) {
  std::size_t x = a.first(), y = b.first();
  while (x < a.size() && y < b.size()) {
    if (x != y) return x < y;
    x = a.next(x + 1);
    y = b.next(y + 1);
  }
  return x >= a.size() && y < b.size();
}

// Greedy colouring of the candidate set: the number of colour classes
// bounds the clique number of the induced subgraph.
std::size_t colour_bound(const Bits& cand, const std::vector<Bits>& adj) {
  Bits left = cand;
  std::size_t colours = 0;
  while (!left.none()) {
    ++colours;
    Bits avail = left;
    for (std::size_t v = avail.first(); v < avail.size(); v = avail.next(v + 1)) {
      left.reset(v);
      avail.subtract(adj[v]);
    }
  }
  return colours;
}

// Branch and bound for a maximum clique. Branches take candidates in
// ascending order, so leaves are visited in lexicographic order and the
// first clique reaching the final maximum is the lexicographically least.
class MaxClique {
 public:
  MaxClique(const std::vector<Bits>& adj, Meter& meter) : adj_(adj), meter_(meter) {}

  std::vector<int> run(std::size_t vertices, bool symmetry) {
    std::vector<int> r;
    if (symmetry) {
      r.push_back(0);
      expand(r, adj_[0]);
    } else {
      expand(r, Bits(vertices, true));
    }
    return best_;
  }

 private:
  void expand(std::vector<int>& r, Bits cand) {
    if (!meter_.tick()) return;
    if (cand.none()) {
      if (r.size() > best_.size()) best_ = r;
      return;
    }
    for (std::size_t v = cand.first(); v < cand.size(); v = cand.next(v + 1)) {
      if (r.size() + cand.count() <= best_.size()) return;
      if (r.size() + colour_bound(cand, adj_) <= best_.size()) return;
      r.push_back(static_cast<int>(v));
      expand(r, cand & adj_[v]);
      r.pop_back();
      cand.reset(v);
      if (meter_.exhausted()) return;
    }
  }

  const std::vector<Bits>& adj_;
  Meter& meter_;
  std::vector<int> best_;
};

// Bron-Kerbosch with pivoting over maximal cliques, maximizing the size of
// the union of per-vertex shade sets. The objective is monotone, so a
// subtree whose full candidate union cannot beat the incumbent is skipped.
class MaxShadeClique {
 public:
  MaxShadeClique(const std::vector<Bits>& adj, const std::vector<Bits>& shades, std::size_t shade_width, Meter& meter)
      : adj_(adj), shades_(shades), width_(shade_width), meter_(meter) {}

  void run(std::size_t vertices, bool symmetry) {
    std::vector<int> r;
    if (symmetry) {
      r.push_back(0);
      recurse(r, shades_[0], adj_[0], Bits(vertices));
    } else {
      recurse(r, Bits(width_), Bits(vertices, true), Bits(vertices));
    }
  }

  std::size_t best_value = 0;
  std::vector<int> best;
  bool found = false;

 private:
  void recurse(std::vector<int>& r, const Bits& covered, Bits p, Bits x) {
    if (!meter_.tick()) return;
    if (p.none()) {
      if (x.none()) consider(r, covered.count());
      return;
    }
    Bits reach = covered;
    for (std::size_t v = p.first(); v < p.size(); v = p.next(v + 1)) reach |= shades_[v];
    if (found && reach.count() <= best_value) return;

    // Pivot: the vertex of P or X with most neighbours in P.
    std::size_t pivot = p.first();
    std::size_t pivot_deg = p.count_and(adj_[pivot]);
    for (const Bits* s : {&p, &x})
      for (std::size_t u = s->first(); u < s->size(); u = s->next(u + 1))
        if (const std::size_t d = p.count_and(adj_[u]); d > pivot_deg) {
          pivot = u;
          pivot_deg = d;
        }
    Bits branch = p;
    branch.subtract(adj_[pivot]);
    for (std::size_t v = branch.first(); v < branch.size(); v = branch.next(v + 1)) {
      r.push_back(static_cast<int>(v));
      recurse(r, covered | shades_[v], p & adj_[v], x & adj_[v]);
      r.pop_back();
      p.reset(v);
      x.set(v);
      if (meter_.exhausted()) return;
    }
  }

  void consider(const std::vector<int>& r, std::size_t value) {
    std::vector<int> sorted = r;
    std::sort(sorted.begin(), sorted.end());
    if (!found || value > best_value || (value == best_value && sorted < best)) {
      best_value = value;
      best = std::move(sorted);
      found = true;
    }
  }

  const std::vector<Bits>& adj_;
  const std::vector<Bits>& shades_;
  std::size_t width_;
  Meter& meter_;
};

// Close-by-one enumeration of the Galois-closed pairs of the relation
// |E & F| >= t between k-subsets (extents) and l-subsets (intents). Any
// cross-t-intersecting pair is dominated componentwise by a closed pair,
// so a monotone objective attains its maximum on one. The objective is
// score(extent, intent) and must be monotone in both arguments.
template <class Score>
class ClosedPairSearch {
 public:
  ClosedPairSearch(const Universe& ua, const Universe& ub, int t, Score score, Meter& meter)
      : ua_(ua), ub_(ub), adj_a_(cross_adjacency(ua, ub, t)), adj_b_(cross_adjacency(ub, ua, t)),
        score_(std::move(score)), meter_(meter) {}

  // Enumerates every closed pair whose extent contains the closure of the
  // seed extent (all closed pairs when the seed is empty).
  void run(bool symmetry) {
    Bits b = symmetry ? adj_a_[0] : Bits(ub_.size(), true);
    Bits a = close_a(b);
    b = close_b(a);
    recurse(a, b, 0);
  }

  Count best_value = 0;
  Bits best_a, best_b;
  bool found = false;

 private:
  Bits close_b(const Bits& a) const {
    Bits b(ub_.size(), true);
    for (std::size_t e = a.first(); e < a.size(); e = a.next(e + 1)) b &= adj_a_[e];
    return b;
  }
  Bits close_a(const Bits& b) const {
    Bits a(ua_.size(), true);
    for (std::size_t f = b.first(); f < b.size(); f = b.next(f + 1)) a &= adj_b_[f];
    return a;
  }

  void recurse(const Bits& a, const Bits& b, std::size_t from) {
    if (!meter_.tick()) return;
    consider(a, b);

    // Every descendant extent lies inside a plus the live candidates.
    Bits reach = a;
    for (std::size_t e = from; e < ua_.size(); ++e)
      if (!a.test(e) && b.intersects(adj_a_[e])) reach.set(e);
    if (reach == a || score_(reach, b) <= best_value) return;

    for (std::size_t e = reach.next(from); e < reach.size(); e = reach.next(e + 1)) {
      if (a.test(e)) continue;
      Bits b2 = b & adj_a_[e];
      Bits a2 = close_a(b2);
      if (!a2.equal_below(a, e)) continue;
      recurse(a2, b2, e + 1);
      if (meter_.exhausted()) return;
    }
  }

  void consider(const Bits& a, const Bits& b) {
    const Count v = score_(a, b);
    if (found && v < best_value) return;
    if (found && v == best_value) {
      const bool smaller = lex_less_bits(a, best_a) || (a == best_a && lex_less_bits(b, best_b));
      if (!smaller) return;
    }
    best_value = v;
    best_a = a;
    best_b = b;
    found = true;
  }

  const Universe& ua_;
  const Universe& ub_;
  std::vector<Bits> adj_a_, adj_b_;
  Score score_;
  Meter& meter_;
};

void check_tkn(int n, int k, int t, const char* what) {
  if (!(1 <= t && t <= k && k <= n)) throw std::invalid_argument(std::string(what) + ": need 1 <= t <= k <= n");
}

}  // namespace

void SearchBudget::validate() const {
  if (max_nodes == 0 || !(max_seconds > 0.0)) throw std::invalid_argument("search budget caps must be positive");
}

std::string to_string(Status s) { return s == Status::Optimal ? "OPTIMAL" : "LOWER_BOUND"; }

double SpernerResult::kostochka_bound(int n) const { return 0.724 * std::ldexp(1.0, n); }

ExtremalResult max_t_intersecting(int n, int k, int t, const SearchBudget& budget) {
  check_tkn(n, k, t, "max_t_intersecting");
  check_cap(n, "max_t_intersecting");
  budget.validate();
  Meter meter(budget);
  const Universe u(n, k);
  const auto adj = cross_adjacency(u, u, t, /*irreflexive=*/true);
  const std::vector<int> best = MaxClique(adj, meter).run(u.size(), budget.symmetry);
  ExtremalResult res{best.size(), u.family(best), std::nullopt};
  meter.finish(res, "max_t_intersecting");
  return res;
}

Count ak_value(int n, int k, int t) {
  check_tkn(n, k, t, "ak_value");
  Count best = 0;
  for (int i = 0; 2 * i <= n - t; ++i) best = std::max(best, frankl_card({n, k, t, i}));
  return best;
}

ExtremalResult max_m_shade(int n, int m, int k, int t, const SearchBudget& budget) {
  check_tkn(n, k, t, "max_m_shade");
  if (m < k || m > n) throw std::invalid_argument("max_m_shade: need k <= m <= n");
  check_cap(n, "max_m_shade");
  budget.validate();
  if (m == k) return max_t_intersecting(n, k, t, budget);

  Meter meter(budget);
  const Universe u(n, k);
  const auto adj = cross_adjacency(u, u, t, /*irreflexive=*/true);
  const auto shades = shade_table(u, m);
  MaxShadeClique search(adj, shades, static_cast<std::size_t>(binomial_u64(n, m)), meter);
  search.run(u.size(), budget.symmetry);
  ExtremalResult res{search.best_value, u.family(search.best), std::nullopt};
  meter.finish(res, "max_m_shade");
  return res;
}

Count conjecture_j1_value(int n, int m, int k, int t) {
  check_tkn(n, k, t, "conjecture_j1_value");
  if (m < k || m > n) throw std::invalid_argument("conjecture_j1_value: need k <= m <= n");
  Count best = 0;
  for (int i = 0; i <= k - t && 2 * i <= n - t; ++i) best = std::max(best, frankl_card({n, m, t, i}));
  return best;
}

namespace {

void check_cross(int n, int k, int l, int t, const char* what) {
  if (t < 1 || t > std::min(k, l) || k > n || l > n)
    throw std::invalid_argument(std::string(what) + ": need 1 <= t <= min(k,l) and k,l <= n");
}

template <class Score>
ExtremalResult run_closed_pairs(const Universe& ua, const Universe& ub, int t, Score score, const SearchBudget& budget,
                                const char* what) {
  budget.validate();
  Meter meter(budget);
  ClosedPairSearch<Score> search(ua, ub, t, std::move(score), meter);
  search.run(budget.symmetry);
  ExtremalResult res{search.best_value, ua.family(search.best_a), ub.family(search.best_b)};
  meter.finish(res, what);
  return res;
}

}  // namespace

ExtremalResult max_cross_product(int n, int k, int l, int t, const SearchBudget& budget) {
  check_cross(n, k, l, t, "max_cross_product");
  check_cap(n, "max_cross_product");
  const Universe ua(n, k), ub(n, l);
  auto score = [](const Bits& a, const Bits& b) { return Count(a.count()) * b.count(); };
  return run_closed_pairs(ua, ub, t, score, budget, "max_cross_product");
}

Count conjecture_j4_value(int n, int k, int l, int t) {
  check_cross(n, k, l, t, "conjecture_j4_value");
  Count best = 0;
  for (int i = 0; i <= n - t; ++i)
    for (int j = 0; i + j <= n - t; ++j) best = std::max(best, g_card({n, k, t, i, j}) * g_card({n, l, t, j, i}));
  return best;
}

ExtremalResult max_cross_shade_product(int n, int mk, int ml, int k, int l, int t, const SearchBudget& budget) {
  check_cross(n, k, l, t, "max_cross_shade_product");
  if (mk < k || mk > n || ml < l || ml > n)
    throw std::invalid_argument("max_cross_shade_product: need k <= mk <= n and l <= ml <= n");
  check_cap(n, "max_cross_shade_product");
  const Universe ua(n, k), ub(n, l);
  const auto sa = shade_table(ua, mk);
  const auto sb = shade_table(ub, ml);
  const std::size_t wa = binomial_u64(n, mk), wb = binomial_u64(n, ml);
  auto covered = [](const Bits& chosen, const std::vector<Bits>& table, std::size_t width) {
    Bits c(width);
    for (std::size_t v = chosen.first(); v < chosen.size(); v = chosen.next(v + 1)) c |= table[v];
    return c.count();
  };
  auto score = [&](const Bits& a, const Bits& b) { return Count(covered(a, sa, wa)) * covered(b, sb, wb); };
  return run_closed_pairs(ua, ub, t, score, budget, "max_cross_shade_product");
}

ExtremalResult max_cross_shade_diagonal(int n, int m, int k, int t, const SearchBudget& budget) {
  return max_cross_shade_product(n, m, m, k, k, t, budget);
}

Count conjecture_j5_value(int n, int mk, int ml, int k, int l, int t) {
  check_cross(n, k, l, t, "conjecture_j5_value");
  if (mk < k || mk > n || ml < l || ml > n)
    throw std::invalid_argument("conjecture_j5_value: need k <= mk <= n and l <= ml <= n");
  Count best = 0;
  for (int i = 0; i <= k - t; ++i)
    for (int j = 0; j <= l - t && i + j <= n - t; ++j)
      best = std::max(best, g_card({n, mk, t, i, j}) * g_card({n, ml, t, j, i}));
  return best;
}

namespace {

// Antichains of 2^[n] with n <= 5; subsets are indexed by their masks and
// a family of subsets is a bitmap over those indices.
class AntichainSearch {
 public:
  AntichainSearch(int n, Meter& meter) : n_(n), full_(full_mask(n)), meter_(meter) {}

  void run() {
    std::vector<Mask> chosen;
    recurse(chosen, 0, 0);
  }

  std::uint64_t antichains = 0;
  std::size_t best_value = 0;
  std::vector<Mask> best;

 private:
  void recurse(std::vector<Mask>& chosen, Mask next, std::uint64_t shade) {
    if (!meter_.tick()) return;
    ++antichains;
    const auto value = static_cast<std::size_t>(__builtin_popcountll(shade));
    if (value > best_value || (value == best_value && chosen < best)) {
      best_value = value;
      best = chosen;
    }
    for (Mask s = next; s <= full_; ++s) {
      const bool comparable = std::any_of(chosen.begin(), chosen.end(), [&](Mask c) {
        return (c & ~s) == 0 || (s & ~c) == 0;
      });
      if (comparable) continue;
      std::uint64_t extra = 0;
      for (Mask free = full_ & ~s; free; free &= free - 1) extra |= std::uint64_t{1} << (s | (free & (~free + 1)));
      chosen.push_back(s);
      recurse(chosen, s + 1, shade | extra);
      chosen.pop_back();
      if (meter_.exhausted()) return;
    }
  }

  int n_;
  Mask full_;
  Meter& meter_;
};

}  // namespace

SpernerResult sperner_max_shade(int n, const SearchBudget& budget) {
  if (n < 1 || n > kSpernerCap)
    throw std::invalid_argument("sperner_max_shade: n must be in [1, " + std::to_string(kSpernerCap) + "]");
  budget.validate();
  Meter meter(budget);
  AntichainSearch search(n, meter);
  search.run();
  SpernerResult res{search.best_value, Collection(n, search.best), search.antichains};
  meter.finish(res, "sperner_max_shade");
  return res;
}

}  // namespace shades
