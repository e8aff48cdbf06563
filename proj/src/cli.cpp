#include "shades/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "shades/asymptotics.hpp"
#include "shades/extremal.hpp"
#include "shades/families.hpp"
#include "shades/setkit.hpp"
#include "shades/verify.hpp"

namespace shades {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Globals {
  std::optional<std::string> format;
  std::uint64_t max_nodes = SearchBudget{}.max_nodes;
  double max_seconds = SearchBudget{}.max_seconds;
  int parallelism = 1;
  std::uint64_t seed = 1;
  std::string out_file;
  bool symmetry = false;

  SearchBudget budget() const {
    SearchBudget b{max_nodes, max_seconds, true, symmetry};
    b.validate();
    return b;
  }

  OutputFormat output_format(OutputFormat fallback) const {
    if (!format) return fallback;
    if (*format == "json") return OutputFormat::Json;
    if (*format == "csv") return OutputFormat::Csv;
    return OutputFormat::Text;
  }
};

long long parse_integer(const std::string& text, const std::string& what) {
  long long value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw UsageError(what + ": '" + text + "' is not an integer");
  return value;
}

int parse_int(const std::string& text, const std::string& what) {
  const long long v = parse_integer(text, what);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw UsageError(what + ": '" + text + "' is out of range");
  return static_cast<int>(v);
}

// Parses positional parameters named by `names`; the count must match.
std::vector<int> take_params(const std::string& quantity, const std::vector<std::string>& raw,
                             const std::vector<std::string>& names) {
  if (raw.size() != names.size()) {
    std::string usage;
    for (const auto& n : names) usage += " <" + n + ">";
    throw UsageError(quantity + " expects" + usage);
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < raw.size(); ++i) out.push_back(parse_int(raw[i], quantity + " " + names[i]));
  return out;
}

// "default", or comma-separated positive integers (scientific notation such
// as 1e6 allowed when it denotes an integer), strictly increasing.
std::vector<long long> parse_m_list(const std::string& text, const std::vector<long long>& fallback) {
  if (text.empty() || text == "default") return fallback;
  std::vector<long long> out;
  std::stringstream in(text);
  for (std::string token; std::getline(in, token, ',');) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw UsageError("m list: '" + token + "' is not a number");
    }
    if (used != token.size() || !(v >= 1) || v > 9e15 || v != std::floor(v))
      throw UsageError("m list: '" + token + "' is not a positive integer");
    const auto m = static_cast<long long>(v);
    if (!out.empty() && m <= out.back()) throw UsageError("m list must be strictly increasing");
    out.push_back(m);
  }
  if (out.empty()) throw UsageError("m list is empty");
  return out;
}

// floor(x^e), guarded against pow() landing just below an exact integer.
long long floor_power(long long x, double e) {
  return static_cast<long long>(std::floor(std::pow(static_cast<double>(x), e) + 1e-9));
}

std::vector<std::string> family_lines(const SetFamily& f) {
  std::ostringstream s;
  write_family(s, f);
  std::vector<std::string> lines;
  std::istringstream in(s.str());
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> collection_lines(const Collection& c) {
  std::ostringstream s;
  write_collection(s, c);
  std::vector<std::string> lines;
  std::istringstream in(s.str());
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

Json json_number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// ---------------------------------------------------------------- count

int cmd_count(const std::string& quantity, const std::vector<std::string>& raw, std::ostream& out) {
  Count value;
  if (quantity == "frankl") {
    const auto p = take_params(quantity, raw, {"n", "k", "t", "i"});
    value = frankl_card(FranklIndex{p[0], p[1], p[2], p[3]});
  } else if (quantity == "g") {
    const auto p = take_params(quantity, raw, {"n", "k", "t", "i", "j"});
    value = g_card(GenIndex{p[0], p[1], p[2], p[3], p[4]});
  } else if (quantity == "binomial") {
    if (raw.size() != 2) throw UsageError("binomial expects <n> <k>");
    const long long n = parse_integer(raw[0], "binomial n"), k = parse_integer(raw[1], "binomial k");
    if (n < 0) throw UsageError("binomial: need n >= 0");
    value = binomial(n, k);
  } else {
    const auto p = take_params(quantity, raw, {"m", "s", "i"});
    value = frankl_card_center(p[0], p[1], p[2]);
  }
  out << to_string(value) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- family

void emit_family(std::ostream& out, const SetFamily& f, OutputFormat format) {
  if (format == OutputFormat::Json) {
    Json j;
    j["n"] = f.n();
    j["k"] = f.k();
    j["size"] = f.size();
    Json members = Json::array();
    for (Mask m : f) members.push_back(format_subset(m));
    j["members"] = members;
    out << j.dump() << '\n';
  } else {
    write_family(out, f);
  }
}

int cmd_family(const std::string& kind, const std::vector<std::string>& raw, OutputFormat format,
               std::ostream& out) {
  if (kind == "frankl") {
    const auto p = take_params(kind, raw, {"n", "k", "t", "i"});
    emit_family(out, frankl_family(FranklIndex{p[0], p[1], p[2], p[3]}), format);
  } else if (kind == "g") {
    const auto p = take_params(kind, raw, {"n", "k", "t", "i", "j"});
    emit_family(out, g_family(GenIndex{p[0], p[1], p[2], p[3], p[4]}), format);
  } else {
    if (raw.size() != 2) throw UsageError("kshade-of expects <file> <m>");
    const int m = parse_int(raw[1], "kshade-of m");
    SetFamily family;
    if (raw[0] == "-") {
      family = read_family(std::cin);
    } else {
      std::ifstream in(raw[0]);
      if (!in) throw UsageError("cannot open family file '" + raw[0] + "'");
      family = read_family(in);
    }
    emit_family(out, m_shade_family(family, m), format);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- search

struct SearchOutcome {
  std::string quantity;
  std::vector<std::pair<std::string, int>> params;
  Count value;
  Status status = Status::Optimal;
  std::vector<std::pair<std::string, std::vector<std::string>>> witnesses;
  std::vector<std::pair<std::string, Json>> extras;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

SearchOutcome run_search(const std::string& quantity, const std::vector<std::string>& raw, const SearchBudget& budget) {
  static const std::map<std::string, std::vector<std::string>> kNames = {
      {"M", {"n", "k", "t"}},
      {"M0", {"n", "m", "k", "t"}},
      {"N", {"n", "k", "l", "t"}},
      {"N0", {"n", "mk", "ml", "k", "l", "t"}},
      {"N1", {"n", "m", "k", "t"}},
      {"sperner", {"n"}},
  };
  const auto& names = kNames.at(quantity);
  const auto p = take_params(quantity, raw, names);
  SearchOutcome o;
  o.quantity = quantity;
  for (std::size_t i = 0; i < names.size(); ++i) o.params.emplace_back(names[i], p[i]);

  auto absorb = [&](const ExtremalResult& r, bool pair) {
    o.value = r.value;
    o.status = r.status;
    o.nodes = r.nodes;
    o.seconds = r.seconds;
    if (pair) {
      o.witnesses.emplace_back("witness_a", family_lines(r.witness_a));
      o.witnesses.emplace_back("witness_b", r.witness_b ? family_lines(*r.witness_b) : std::vector<std::string>{});
    } else {
      o.witnesses.emplace_back("witness", family_lines(r.witness_a));
    }
  };

  if (quantity == "M") {
    absorb(max_t_intersecting(p[0], p[1], p[2], budget), false);
  } else if (quantity == "M0") {
    absorb(max_m_shade(p[0], p[1], p[2], p[3], budget), false);
  } else if (quantity == "N") {
    absorb(max_cross_product(p[0], p[1], p[2], p[3], budget), true);
  } else if (quantity == "N0") {
    absorb(max_cross_shade_product(p[0], p[1], p[2], p[3], p[4], p[5], budget), true);
  } else if (quantity == "N1") {
    absorb(max_cross_shade_diagonal(p[0], p[1], p[2], p[3], budget), true);
  } else {
    const SpernerResult r = sperner_max_shade(p[0], budget);
    o.value = r.value;
    o.status = r.status;
    o.nodes = r.nodes;
    o.seconds = r.seconds;
    o.witnesses.emplace_back("witness", collection_lines(r.witness));
    const double bound = r.kostochka_bound(p[0]);
    o.extras.emplace_back("antichains", Json(r.antichains));
    o.extras.emplace_back("kostochka_bound", Json(bound));
    o.extras.emplace_back("ratio_to_2n", Json(static_cast<double>(r.value) / std::ldexp(1.0, p[0])));
  }
  return o;
}

void emit_search(std::ostream& out, const SearchOutcome& o, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      Json j;
      j["quantity"] = o.quantity;
      Json params = Json::object();
      for (const auto& [name, v] : o.params) params[name] = v;
      j["params"] = params;
      j["value"] = to_string(o.value);
      j["status"] = to_string(o.status);
      for (const auto& [name, lines] : o.witnesses) j[name] = lines;
      for (const auto& [name, v] : o.extras) j[name] = v;
      j["nodes"] = o.nodes;
      j["seconds"] = o.seconds;
      out << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv: {
      out << "quantity,params,value,status,nodes,seconds\n";
      out << o.quantity << ',';
      for (std::size_t i = 0; i < o.params.size(); ++i)
        out << (i ? " " : "") << o.params[i].first << '=' << o.params[i].second;
      out << ',' << to_string(o.value) << ',' << to_string(o.status) << ',' << o.nodes << ',' << fixed(o.seconds, 6)
          << '\n';
      break;
    }
    case OutputFormat::Text: {
      out << o.quantity << '(';
      for (std::size_t i = 0; i < o.params.size(); ++i) out << (i ? "," : "") << o.params[i].second;
      out << ") = " << to_string(o.value) << ' ' << to_string(o.status) << " nodes=" << o.nodes
          << " seconds=" << fixed(o.seconds, 6) << '\n';
      for (const auto& [name, v] : o.extras) out << name << ' ' << v.dump() << '\n';
      for (const auto& [name, lines] : o.witnesses) {
        out << name << ":\n";
        for (const auto& line : lines) out << "  " << line << '\n';
      }
      break;
    }
  }
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string claim;
  int n_min = 1;
  std::optional<int> n_max;
  std::optional<int> k_max;
  int samples = 1000;
  bool timings = false;
};

int cmd_verify(const VerifyOptions& v, const Globals& g, std::ostream& out) {
  RunConfig config;
  config.n_min = v.n_min;
  config.n_max = v.n_max;
  config.k_max = v.k_max;
  config.samples = v.samples;
  config.budget = g.budget();
  config.format = g.output_format(OutputFormat::Text);
  config.seed = g.seed;
  config.parallelism = g.parallelism;
  config.timings = v.timings;
  if (config.samples < 1) throw UsageError("--samples must be positive");
  if (config.n_min < 1) throw UsageError("--n-min must be positive");

  std::vector<std::string> claims;
  if (v.claim == "all") {
    for (const auto& info : known_claims()) claims.push_back(info.id);
  } else {
    try {
      claims.push_back(claim_info(v.claim).id);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  if (config.format == OutputFormat::Csv) {
    out << "claim,params,verdict,note";
    if (config.timings) out << ",elapsed";
    out << '\n';
  }
  VerifySummary total;
  for (const auto& id : claims) {
    const auto reports = run_claim(id, config);
    for (const auto& r : reports) write_report(out, r, config);
    const auto s = summarize(reports);
    total.confirmed += s.confirmed;
    total.refuted += s.refuted;
    total.budget_exceeded += s.budget_exceeded;
  }
  if (config.format != OutputFormat::Csv) write_summary(out, total, config);
  return total.refuted > 0 ? kExitRefuted : kExitOk;
}

// ---------------------------------------------------------------- asympt

struct AsymptOptions {
  std::string probe;
  std::optional<long long> t, k, i;
  std::optional<double> c, a, b, k_exp, t_exp, t_coef;
  std::string m_list;
  std::optional<std::string> schedule;
  long long crossover = kExactCrossover;
};

struct Table {
  std::vector<RatioPoint> rows;
  Json parameters = Json::object();
  std::string rule;                 // how derived indices are rounded
  std::optional<double> reference;  // limiting value the rows are compared against
};

std::vector<long long> decades(int lo, int hi, bool half_steps) {
  std::vector<long long> out;
  for (int e = 2 * lo; e <= 2 * hi; e += half_steps ? 1 : 2) out.push_back(std::llround(std::pow(10.0, e / 2.0)));
  return out;
}

Schedule build_schedule(const AsymptOptions& o, Json& parameters, std::string& rule) {
  double k_exp = 0.5, t_exp = 0.75;
  std::optional<double> t_coef = o.t_coef;
  std::optional<long long> fixed_t = o.t;
  if (o.schedule) {
    if (*o.schedule == "decay") {
      // defaults already describe this schedule
    } else if (*o.schedule == "fixed-t") {
      if (!fixed_t) fixed_t = 2;
    } else if (*o.schedule == "sqrt") {
      if (!t_coef) t_coef = 2.0;
    } else {
      throw UsageError("unknown schedule '" + *o.schedule + "' (expected decay, fixed-t or sqrt)");
    }
  }
  if (o.k_exp) k_exp = *o.k_exp;
  if (o.t_exp) t_exp = *o.t_exp;
  const int t_sources = (fixed_t ? 1 : 0) + (t_coef ? 1 : 0) + (o.t_exp ? 1 : 0);
  if (t_sources > 1) throw UsageError("give at most one of --t, --t-coef, --t-exp");
  if (o.k && o.k_exp) throw UsageError("give at most one of --k, --k-exp");
  if (!(k_exp > 0 && k_exp <= 1)) throw UsageError("--k-exp must lie in (0, 1]");
  if (!(t_exp > 0 && t_exp <= 1)) throw UsageError("--t-exp must lie in (0, 1]");
  if (t_coef && !(*t_coef > 0)) throw UsageError("--t-coef must be positive");

  Schedule s;
  if (o.k) {
    const long long k = *o.k;
    s.k_of = [k](long long) { return k; };
    parameters["k"] = k;
    rule = "k fixed";
  } else {
    s.k_of = [k_exp](long long m) { return floor_power(m, k_exp); };
    parameters["k_exp"] = k_exp;
    rule = "k = floor(m^k_exp)";
  }
  if (fixed_t) {
    const long long t = *fixed_t;
    s.t_of = [t](long long) { return t; };
    parameters["t"] = t;
    rule += "; t fixed";
  } else if (t_coef) {
    const double c = *t_coef;
    s.t_of = [c, k_of = s.k_of](long long m) {
      return static_cast<long long>(std::floor(c * std::sqrt(static_cast<double>(k_of(m))) + 1e-9));
    };
    parameters["t_coef"] = c;
    rule += "; t = floor(t_coef * sqrt(k))";
  } else {
    s.t_of = [t_exp, k_of = s.k_of](long long m) { return floor_power(k_of(m), t_exp); };
    parameters["t_exp"] = t_exp;
    rule += "; t = floor(k^t_exp)";
  }
  s.name = o.schedule.value_or("custom");
  s.m_values = parse_m_list(o.m_list, decades(3, 7, true));
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return s;
}

Table run_asympt(const AsymptOptions& o, const Globals& g) {
  Table table;
  auto& params = table.parameters;
  const std::string& probe = o.probe;
  auto need_k = [&](long long fallback) {
    const long long k = o.k.value_or(fallback);
    if (k < 1) throw UsageError("--k must be positive");
    params["k"] = k;
    return k;
  };
  auto need_c = [&](double fallback) {
    const double c = o.c.value_or(fallback);
    if (!(c > 0)) throw UsageError("--c must be positive");
    params["c"] = c;
    return c;
  };

  if (probe == "dml" || probe == "lemma3") {
    const double a = o.a.value_or(1.0), b = o.b.value_or(1.0);
    if (!(a >= 0 && b >= 0)) throw UsageError("--a and --b must be non-negative");
    params["a"] = a;
    params["b"] = b;
    table.reference = std_normal_cdf(b) - std_normal_cdf(-a);
    if (probe == "dml") {
      table.rule = "j ranges over [-floor(a sqrt(m/2)), floor(b sqrt(m/2))]";
      for (long long m : parse_m_list(o.m_list, decades(2, 6, false)))
        table.rows.push_back({m, 0, 0, "", dml_partial_sum(m, a, b), Method::LogGamma});
    } else {
      std::optional<long long> k_fixed = o.k;
      if (o.k && o.k_exp) throw UsageError("give at most one of --k, --k-exp");
      if (!o.k && !o.k_exp) k_fixed = 1000;
      if (k_fixed) params["k"] = *k_fixed;
      else params["k_exp"] = *o.k_exp;
      table.rule = "j ranges over [-floor(a sqrt(k/2)), floor(b sqrt(k/2))], clipped to |j| <= min(k, m-k)";
      for (long long m : parse_m_list(o.m_list, decades(4, 6, false))) {
        const long long k = k_fixed ? *k_fixed : floor_power(m, *o.k_exp);
        table.rows.push_back({m, k, 0, "", lemma3_ratio(m, k, a, b), Method::LogGamma});
      }
    }
  } else if (probe == "eq69") {
    const long long t = o.t.value_or(1), i = o.i.value_or(0);
    params["t"] = t;
    params["i"] = i;
    table.reference = std::ldexp(1.0, -static_cast<int>(std::min(t, 1000LL)));
    table.rule = "ratio |F_i(2m,m,t)| / C(2m,m)";
    for (long long m : parse_m_list(o.m_list, decades(1, 4, false))) {
      RatioPoint p = f_shade_ratio(m, t, i, o.crossover);
      p.i_star = std::to_string(i);
      table.rows.push_back(p);
    }
  } else if (probe == "l10") {
    const long long k = need_k(400);
    const double c = need_c(2.0);
    table.reference = 1.0 - std_normal_cdf(c / std::numbers::sqrt2);
    table.rule = "s = max(1, floor(c sqrt(k) / 2)), t = 2s, i = k";
    for (long long m : parse_m_list(o.m_list, {1000000})) {
      RatioPoint p = gaussian_tail_point(m, k, c);
      table.rows.push_back(p);
    }
  } else if (probe == "l12") {
    const long long k = need_k(10000);
    long long t = 0;
    if (o.t) {
      t = *o.t;
      params["t"] = t;
    } else {
      const double e = o.t_exp.value_or(0.75);
      t = floor_power(k, e);
      params["t_exp"] = e;
    }
    table.rule = "t = floor(k^t_exp) unless --t is given; i = k";
    for (long long m : parse_m_list(o.m_list, {100000000})) {
      RatioPoint p = f_shade_ratio(m, t, k, o.crossover);
      p.k = k;
      table.rows.push_back(p);
    }
  } else if (probe == "l9") {
    const long long k = need_k(400);
    const double c = need_c(2.0);
    if (o.t) params["t"] = *o.t;
    table.rule = "t' = ceil(c sqrt(k)), i = max(0, k - t'); the m-shade is F_i(2m,m,t')";
    for (long long m : parse_m_list(o.m_list, decades(4, 6, false))) {
      const auto con = l9_construction(m, k, c, o.t);
      if (con.degenerate) {
        table.rows.push_back({m, k, con.t, "0", NAN, Method::Degenerate});
      } else {
        RatioPoint p = *con.ratio;
        p.k = k;
        p.i_star = std::to_string(con.i);
        table.rows.push_back(p);
      }
    }
  } else {
    const Schedule s = build_schedule(o, params, table.rule);
    table.rows = probe == "j2" ? probe_conjecture_j2(s, g.parallelism, o.crossover)
                               : probe_conjecture_co1(s, g.parallelism, o.crossover);
  }
  params["crossover"] = o.crossover;
  return table;
}

void emit_table(std::ostream& out, const std::string& probe, const Table& table, OutputFormat format) {
  if (format != OutputFormat::Json) {
    write_ratio_csv(out, table.rows);
    return;
  }
  Json j;
  j["probe"] = probe;
  j["parameters"] = table.parameters;
  j["rule"] = table.rule;
  j["reference"] = table.reference ? json_number(*table.reference) : Json(nullptr);
  Json rows = Json::array();
  for (const auto& p : table.rows) {
    Json r;
    r["m"] = p.m;
    r["k"] = p.k ? Json(p.k) : Json(nullptr);
    r["t"] = p.t ? Json(p.t) : Json(nullptr);
    r["i_star"] = p.i_star;
    r["value"] = json_number(p.value);
    r["method"] = to_string(p.method);
    rows.push_back(r);
  }
  j["rows"] = rows;
  j["slope"] = json_number(fit_decay_slope(table.rows));
  out << j.dump(2) << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shades and intersecting families: exact counts, extremal searches, claim checks and asymptotic tables",
               "shades"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--max-nodes", g.max_nodes, "Search node budget");
  app.add_option("--max-seconds", g.max_seconds, "Search time budget in seconds");
  app.add_option("--parallelism", g.parallelism, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_option("--out", g.out_file, "Write results to FILE instead of stdout");
  app.add_flag("--symmetry", g.symmetry, "Searches only explore families containing [k] (values unchanged)");

  std::string quantity;
  std::vector<std::string> raw;

  auto* count = app.add_subcommand("count", "Exact counts: frankl n k t i | g n k t i j | binomial n k | eq68 m s i");
  count->add_option("quantity", quantity)->required()->check(CLI::IsMember({"frankl", "g", "binomial", "eq68"}));
  count->add_option("params", raw, "Integer parameters")->allow_extra_args();

  auto* family = app.add_subcommand("family", "Emit families: frankl n k t i | g n k t i j | kshade-of FILE m");
  family->add_option("kind", quantity)->required()->check(CLI::IsMember({"frankl", "g", "kshade-of"}));
  family->add_option("params", raw, "Parameters")->allow_extra_args();

  auto* search = app.add_subcommand(
      "search", "Exact extremal values: M n k t | M0 n m k t | N n k l t | N0 n mk ml k l t | N1 n m k t | sperner n");
  search->add_option("quantity", quantity)->required()->check(
      CLI::IsMember({"M", "M0", "N", "N0", "N1", "sperner"}));
  search->add_option("params", raw, "Integer parameters")->allow_extra_args();

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Check a named claim (or 'all') over a finite range");
  verify->add_option("claim", vo.claim)->required();
  verify->add_option("--n-min", vo.n_min, "Smallest n (or m) checked");
  verify->add_option("--n-max", vo.n_max, "Largest n (or m) checked");
  verify->add_option("--k-max", vo.k_max, "Largest k checked");
  verify->add_option("--samples", vo.samples, "Random families per m for lemma-1.2");
  verify->add_flag("--timings", vo.timings, "Report elapsed seconds per tuple");

  AsymptOptions ao;
  auto* asympt = app.add_subcommand("asympt", "Ratio tables at large finite parameters (CSV)");
  asympt->add_option("probe", ao.probe)->required()->check(
      CLI::IsMember({"dml", "lemma3", "eq69", "l10", "l12", "l9", "j2", "co1"}));
  asympt->add_option("--t", ao.t, "Fixed t");
  asympt->add_option("--k", ao.k, "Fixed k");
  asympt->add_option("--i", ao.i, "Fixed Frankl index i (eq69)");
  asympt->add_option("--c", ao.c, "Constant c in t ~ c sqrt(k)");
  asympt->add_option("--a", ao.a, "Left window width");
  asympt->add_option("--b", ao.b, "Right window width");
  asympt->add_option("--k-exp", ao.k_exp, "k = floor(m^k_exp)");
  asympt->add_option("--t-exp", ao.t_exp, "t = floor(k^t_exp)");
  asympt->add_option("--t-coef", ao.t_coef, "t = floor(t_coef sqrt(k))");
  asympt->add_option("--m,--m-list", ao.m_list, "Comma-separated m values, or 'default'");
  asympt->add_option("--schedule", ao.schedule, "Built-in schedule: decay, fixed-t or sqrt");
  asympt->add_option("--crossover", ao.crossover, "Largest m evaluated exactly")->check(CLI::NonNegativeNumber);

  for (auto* sub : {count, family, search, verify, asympt}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ofstream file;
  if (!g.out_file.empty()) {
    file.open(g.out_file);
    if (!file) {
      err << "error: cannot open output file '" << g.out_file << "'\n";
      return kExitUsage;
    }
  }
  std::ostream& sink = g.out_file.empty() ? out : file;

  try {
    if (count->parsed()) return cmd_count(quantity, raw, sink);
    if (family->parsed()) return cmd_family(quantity, raw, g.output_format(OutputFormat::Text), sink);
    if (search->parsed()) {
      const auto outcome = run_search(quantity, raw, g.budget());
      emit_search(sink, outcome, g.output_format(OutputFormat::Json));
      return outcome.status == Status::Optimal ? kExitOk : kExitLowerBound;
    }
    if (verify->parsed()) return cmd_verify(vo, g, sink);
    const Table table = run_asympt(ao, g);
    emit_table(sink, ao.probe, table, g.output_format(OutputFormat::Csv));
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace shades
