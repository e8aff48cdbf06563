#include "shades/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "shades/parallel.hpp"

namespace shades {

namespace {

using Tuple = std::vector<int>;
using Check = std::function<VerificationReport(const Tuple&)>;

std::string serialize(const SetFamily& f) {
  std::ostringstream os;
  write_family(os, f);
  return os.str();
}

std::string serialize(const Collection& c) {
  std::ostringstream os;
  write_collection(os, c);
  return os.str();
}

VerificationReport make_report(const std::string& claim, const Tuple& t) {
  VerificationReport r;
  r.claim = claim;
  r.params.assign(t.begin(), t.end());
  return r;
}

// Compares a brute-force extremal value with a claimed closed value.
void judge(VerificationReport& rep, const ExtremalResult& brute, const Count& claimed) {
  if (brute.status == Status::LowerBound) {
    rep.verdict = Verdict::BudgetExceeded;
    rep.note = "lower_bound=" + to_string(brute.value) + " claimed=" + to_string(claimed);
    return;
  }
  if (brute.value == claimed) {
    rep.note = "value=" + to_string(claimed);
    return;
  }
  rep.verdict = Verdict::Refuted;
  rep.note = "brute_force=" + to_string(brute.value) + " claimed=" + to_string(claimed);
  rep.witness.push_back(serialize(brute.witness_a));
  if (brute.witness_b) rep.witness.push_back(serialize(*brute.witness_b));
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// ---- tuple ranges -------------------------------------------------------

std::vector<Tuple> tkmn_tuples(int n_min, int n_max, int k_max) {
  std::vector<Tuple> out;
  for (int n = std::max(1, n_min); n <= n_max; ++n)
    for (int k = 1; k <= std::min(n, k_max); ++k)
      for (int t = 1; t <= k; ++t)
        for (int m = k; m <= n; ++m) out.push_back({n, k, t, m});
  return out;
}

std::vector<Tuple> cross_tuples(int n_min, int n_max) {
  std::vector<Tuple> out;
  for (int n = std::max(1, n_min); n <= n_max; ++n)
    for (int k = 1; k <= n; ++k)
      for (int l = 1; l <= n; ++l)
        for (int t = 1; t <= std::min(k, l); ++t) out.push_back({n, k, l, t});
  return out;
}

// ---- individual checks --------------------------------------------------

VerificationReport check_homogeneity_equivalence(int n) {
  VerificationReport rep = make_report("eq-49", {n});
  const Mask full = full_mask(n);
  std::vector<SetFamily> levels;
  for (int m = 0; m <= n; ++m) levels.push_back(enumerate_k_subsets(n, m));
  std::uint64_t checked = 0;
  for (Mask x = 0; x <= full; ++x) {
    const KSubset xs(x, n);
    for (int m = 0; m <= n; ++m) {
      const SetFamily zero_side = xs.size() <= m ? m_shade(xs, m) : SetFamily::empty(n, m);
      const SetFamily one_side = xs.size() <= n - m ? m_shade(xs, n - m) : SetFamily::empty(n, n - m);
      for (Mask z : levels[static_cast<std::size_t>(m)]) {
        const Colouring c(n, z);
        const bool lhs = is_homogeneous(xs, c);
        const bool rhs = zero_side.contains(z) || one_side.contains(c.one_set());
        ++checked;
        if (lhs != rhs) {
          rep.verdict = Verdict::Refuted;
          rep.note = "x={" + format_subset(x) + "} zero_set={" + format_subset(z) + "}";
          rep.witness.push_back(serialize(SetFamily(n, xs.size(), {x})));
          return rep;
        }
      }
    }
    if (x == full) break;
  }
  rep.note = "pairs=" + std::to_string(checked);
  return rep;
}

VerificationReport check_lemma12(int m, int samples, std::uint64_t seed) {
  VerificationReport rep = make_report("lemma-1.2", {m});
  const int n = 2 * m;
  std::size_t families = 0;
  auto test = [&](const SetFamily& x) {
    ++families;
    const Count covered = covered_colourings_count(x, m);
    const Count bound = 2 * Count(m_shade_family(x, m).size());
    if (covered > bound) {
      rep.verdict = Verdict::Refuted;
      rep.note = "covered=" + to_string(covered) + " bound=" + to_string(bound);
      rep.witness.push_back(serialize(x));
      return false;
    }
    return true;
  };
  if (m <= 2) {
    for (int k = 1; k <= m; ++k) {
      const auto level = enumerate_k_subsets(n, k).members();
      for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << level.size()); ++pick) {
        std::vector<Mask> members;
        for (std::size_t b = 0; b < level.size(); ++b)
          if ((pick >> b) & 1u) members.push_back(level[b]);
        if (!test(SetFamily(n, k, std::move(members)))) return rep;
      }
    }
    rep.note = "exhaustive families=" + std::to_string(families);
    return rep;
  }
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(m));
  for (int s = 0; s < samples; ++s) {
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(m));
    std::vector<Mask> members;
    std::uint64_t bits = 0;
    int left = 0;
    for (Mask y : enumerate_k_subsets(n, k)) {
      if (left == 0) {
        bits = rng();
        left = 64;
      }
      if (bits & 1u) members.push_back(y);
      bits >>= 1;
      --left;
    }
    if (!test(SetFamily(n, k, std::move(members)))) return rep;
  }
  rep.note = "sampled families=" + std::to_string(families);
  return rep;
}

VerificationReport check_prop_p5(const Tuple& p) {
  const int n = p[0], k = p[1], l = p[2], t = p[3];
  VerificationReport rep = make_report("prop-p5", p);
  for (int i = 0; i <= n - t; ++i)
    for (int j = 0; i + j <= n - t; ++j) {
      const SetFamily a = g_family({n, k, t, i, j});
      const SetFamily b = g_family({n, l, t, j, i});
      if (!is_cross_t_intersecting(a, b, t)) {
        rep.verdict = Verdict::Refuted;
        rep.note = "i=" + std::to_string(i) + " j=" + std::to_string(j);
        rep.witness = {serialize(a), serialize(b)};
        return rep;
      }
    }
  return rep;
}

VerificationReport check_kostochka(int n, const SearchBudget& budget) {
  VerificationReport rep = make_report("kostochka", {n});
  const SpernerResult res = sperner_max_shade(n, budget);
  const double bound = res.kostochka_bound(n);
  const double value = static_cast<double>(res.value);
  rep.note = "max_shade=" + to_string(res.value) + " antichains=" + std::to_string(res.antichains) +
             " ratio_to_2^n=" + fixed(value / std::ldexp(1.0, n), 6);
  if (res.status == Status::LowerBound) {
    rep.verdict = Verdict::BudgetExceeded;
  } else if (value > bound) {
    rep.verdict = Verdict::Refuted;
    rep.witness.push_back(serialize(res.witness));
  }
  return rep;
}

VerificationReport check_j3_onset(const Tuple& p, int limit) {
  const int k = p[0], l = p[1], t = p[2];
  VerificationReport rep = make_report("conj-j3", p);
  int onset = -1;
  for (int n = std::max(k, l); n <= limit; ++n) {
    const Count ekr = binomial(n - t, k - t) * binomial(n - t, l - t);
    if (ekr == conjecture_j4_value(n, k, l, t)) {
      if (onset < 0) onset = n;
    } else {
      onset = -1;
    }
  }
  if (onset < 0) {
    rep.verdict = Verdict::BudgetExceeded;
    rep.note = "no_onset_up_to_n=" + std::to_string(limit);
  } else {
    rep.note = "dominates_from_n=" + std::to_string(onset) + " probed_to_n=" + std::to_string(limit);
  }
  return rep;
}

struct Plan {
  std::vector<Tuple> tuples;
  Check check;
};

Plan plan_for(const std::string& id, const RunConfig& cfg) {
  const auto nmax = [&](int def) { return cfg.n_max.value_or(def); };
  const auto kmax = [&](int def) { return cfg.k_max.value_or(def); };
  const SearchBudget& budget = cfg.budget;
  Plan plan;

  if (id == "lemma-2.2" || id == "lemma-3.6") {
    plan.tuples = tkmn_tuples(cfg.n_min, nmax(10), kmax(4));
    const bool g = id == "lemma-3.6";
    plan.check = [g](const Tuple& p) {
      return g ? check_g_shade_identities(p[0], p[1], p[2], p[3]) : check_shade_identities(p[0], p[1], p[2], p[3]);
    };
  } else if (id == "eq-49") {
    for (int n = std::max(1, cfg.n_min); n <= nmax(10); ++n) plan.tuples.push_back({n});
    plan.check = [](const Tuple& p) { return check_homogeneity_equivalence(p[0]); };
  } else if (id == "lemma-1.2") {
    for (int m = std::max(1, (cfg.n_min + 1) / 2); 2 * m <= nmax(10); ++m)
      if (m >= 2) plan.tuples.push_back({m});
    plan.check = [samples = cfg.samples, seed = cfg.seed](const Tuple& p) { return check_lemma12(p[0], samples, seed); };
  } else if (id == "ekr") {
    for (int n = std::max(2, cfg.n_min); n <= nmax(8); ++n)
      for (int k = 1; 2 * k <= n; ++k) plan.tuples.push_back({n, k});
    plan.check = [budget](const Tuple& p) {
      VerificationReport rep = make_report("ekr", p);
      judge(rep, max_t_intersecting(p[0], p[1], 1, budget), binomial(p[0] - 1, p[1] - 1));
      return rep;
    };
  } else if (id == "ak-eq63") {
    for (int n = std::max(1, cfg.n_min); n <= nmax(8); ++n)
      for (int k = 1; k <= std::min(n, kmax(n)); ++k)
        for (int t = 1; t <= k; ++t) plan.tuples.push_back({n, k, t});
    plan.check = [budget](const Tuple& p) {
      VerificationReport rep = make_report("ak-eq63", p);
      judge(rep, max_t_intersecting(p[0], p[1], p[2], budget), ak_value(p[0], p[1], p[2]));
      return rep;
    };
  } else if (id == "conj-j1") {
    for (const Tuple& q : tkmn_tuples(cfg.n_min, nmax(7), kmax(nmax(7)))) plan.tuples.push_back({q[0], q[3], q[1], q[2]});
    plan.check = [budget](const Tuple& p) {
      VerificationReport rep = make_report("conj-j1", p);
      judge(rep, max_m_shade(p[0], p[1], p[2], p[3], budget), conjecture_j1_value(p[0], p[1], p[2], p[3]));
      return rep;
    };
  } else if (id == "conj-j4") {
    plan.tuples = cross_tuples(cfg.n_min, nmax(6));
    plan.check = [budget](const Tuple& p) {
      VerificationReport rep = make_report("conj-j4", p);
      judge(rep, max_cross_product(p[0], p[1], p[2], p[3], budget), conjecture_j4_value(p[0], p[1], p[2], p[3]));
      return rep;
    };
  } else if (id == "conj-j5") {
    for (const Tuple& q : cross_tuples(cfg.n_min, nmax(5)))
      for (int mk = q[1]; mk <= q[0]; ++mk)
        for (int ml = q[2]; ml <= q[0]; ++ml) plan.tuples.push_back({q[0], mk, ml, q[1], q[2], q[3]});
    plan.check = [budget](const Tuple& p) {
      VerificationReport rep = make_report("conj-j5", p);
      judge(rep, max_cross_shade_product(p[0], p[1], p[2], p[3], p[4], p[5], budget),
            conjecture_j5_value(p[0], p[1], p[2], p[3], p[4], p[5]));
      return rep;
    };
  } else if (id == "prop-p5") {
    plan.tuples = cross_tuples(cfg.n_min, nmax(9));
    plan.check = check_prop_p5;
  } else if (id == "kostochka") {
    for (int n = std::max(1, cfg.n_min); n <= std::min(nmax(kSpernerCap), kSpernerCap); ++n) plan.tuples.push_back({n});
    plan.check = [budget](const Tuple& p) { return check_kostochka(p[0], budget); };
  } else if (id == "mt-theorem") {
    for (int n = std::max(2, cfg.n_min); n <= nmax(6); ++n)
      for (int k = 1; 2 * k <= n; ++k)
        for (int l = 1; 2 * l <= n; ++l) plan.tuples.push_back({n, k, l});
    plan.check = [budget](const Tuple& p) {
      VerificationReport rep = make_report("mt-theorem", p);
      judge(rep, max_cross_product(p[0], p[1], p[2], 1, budget), binomial(p[0] - 1, p[1] - 1) * binomial(p[0] - 1, p[2] - 1));
      return rep;
    };
  } else if (id == "conj-j3") {
    const int km = kmax(4);
    for (int k = 1; k <= km; ++k)
      for (int l = 1; l <= km; ++l)
        for (int t = 1; t <= std::min(k, l); ++t) plan.tuples.push_back({k, l, t});
    plan.check = [limit = nmax(40)](const Tuple& p) { return check_j3_onset(p, limit); };
  } else {
    throw std::invalid_argument("unknown claim '" + id + "'");
  }
  std::sort(plan.tuples.begin(), plan.tuples.end());
  return plan;
}

}  // namespace

const std::vector<ClaimInfo>& known_claims() {
  static const std::vector<ClaimInfo> claims = {
      {"lemma-2.2", {"n", "k", "t", "m"}, "F_i(n,k,t) empty for i > k-t; m-shade of F_i(n,k,t) equals F_i(n,m,t)"},
      {"lemma-3.6", {"n", "k", "t", "m"}, "G_ij(n,k,t) empty for i > k-t; m-shade of G_ij(n,k,t) equals G_ij(n,m,t)"},
      {"eq-49", {"n"}, "homogeneity for a colouring iff a colour class lies in the matching m-shade"},
      {"lemma-1.2", {"m"}, "covered colourings of [2m] <= 2 |m-shade(X)|"},
      {"ekr", {"n", "k"}, "M(n,k,1) = C(n-1,k-1) for 2k <= n"},
      {"ak-eq63", {"n", "k", "t"}, "M(n,k,t) = max_i |F_i(n,k,t)|"},
      {"conj-j1", {"n", "m", "k", "t"}, "M_0(n,m,k,t) = max_{i <= min(k-t,(n-t)/2)} |F_i(n,m,t)|"},
      {"conj-j3", {"k", "l", "t"}, "onset of C(n-t,k-t) C(n-t,l-t) as the largest G_ij product"},
      {"conj-j4", {"n", "k", "l", "t"}, "N(n,k,l,t) = max_{i+j <= n-t} |G_ij(n,k,t)| |G_ji(n,l,t)|"},
      {"conj-j5", {"n", "mk", "ml", "k", "l", "t"}, "N_0 = max over admissible (i,j) of |G_ij(n,mk,t)| |G_ji(n,ml,t)|"},
      {"prop-p5", {"n", "k", "l", "t"}, "(G_ij(n,k,t), G_ji(n,l,t)) is cross-t-intersecting"},
      {"kostochka", {"n"}, "largest shade of an antichain of 2^[n] <= 0.724 2^n"},
      {"mt-theorem", {"n", "k", "l"}, "N(n,k,l,1) = C(n-1,k-1) C(n-1,l-1) for 2k, 2l <= n"},
  };
  return claims;
}

const ClaimInfo& claim_info(const std::string& id) {
  for (const auto& c : known_claims())
    if (c.id == id) return c;
  throw std::invalid_argument("unknown claim '" + id + "'");
}

std::vector<VerificationReport> run_claim(const std::string& id, const RunConfig& config) {
  claim_info(id);
  const Plan plan = plan_for(id, config);
  std::vector<VerificationReport> out(plan.tuples.size());
  parallel_for(out.size(), config.parallelism, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    out[i] = plan.check(plan.tuples[i]);
    out[i].claim = id;
    out[i].elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  return out;
}

VerifySummary summarize(const std::vector<VerificationReport>& reports) {
  VerifySummary s;
  for (const auto& r : reports) {
    switch (r.verdict) {
      case Verdict::Confirmed: ++s.confirmed; break;
      case Verdict::Refuted: ++s.refuted; break;
      case Verdict::BudgetExceeded: ++s.budget_exceeded; break;
    }
  }
  return s;
}

void write_report(std::ostream& out, const VerificationReport& report, const RunConfig& config) {
  const auto& names = claim_info(report.claim).param_names;
  std::string params;
  for (std::size_t i = 0; i < report.params.size(); ++i)
    params += (i ? " " : "") + names.at(i) + "=" + std::to_string(report.params[i]);

  switch (config.format) {
    case OutputFormat::Json: {
      nlohmann::ordered_json j;
      j["claim"] = report.claim;
      nlohmann::ordered_json p = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < report.params.size(); ++i) p[names.at(i)] = report.params[i];
      j["params"] = p;
      j["verdict"] = to_string(report.verdict);
      j["note"] = report.note;
      j["witness"] = report.witness;
      if (config.timings) j["elapsed"] = report.elapsed;
      out << j.dump() << '\n';
      break;
    }
    case OutputFormat::Csv: {
      out << report.claim << ',' << params << ',' << to_string(report.verdict) << ',' << report.note;
      if (config.timings) out << ',' << fixed(report.elapsed, 6);
      out << '\n';
      break;
    }
    case OutputFormat::Text: {
      out << report.claim << ' ' << params << ' ' << to_string(report.verdict);
      if (!report.note.empty()) out << ' ' << report.note;
      if (config.timings) out << " elapsed=" << fixed(report.elapsed, 6);
      out << '\n';
      for (const auto& w : report.witness) {
        std::istringstream lines(w);
        for (std::string line; std::getline(lines, line);) out << "  | " << line << '\n';
      }
      break;
    }
  }
}

void write_summary(std::ostream& out, const VerifySummary& s, const RunConfig& config) {
  const std::size_t total = s.confirmed + s.refuted + s.budget_exceeded;
  if (config.format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["summary"] = {{"reports", total}, {"confirmed", s.confirmed}, {"refuted", s.refuted},
                    {"budget_exceeded", s.budget_exceeded}};
    out << j.dump() << '\n';
    return;
  }
  out << "summary reports=" << total << " confirmed=" << s.confirmed << " refuted=" << s.refuted
      << " budget_exceeded=" << s.budget_exceeded << " (confirmed means no counterexample in the checked range)\n";
}

}  // namespace shades
