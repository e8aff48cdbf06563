#include "shades/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "shades/families.hpp"
#include "shades/parallel.hpp"
#include "shades/setkit.hpp"

namespace shades {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

constexpr long double kLn2Pi = 1.837877066409345483560659472811235279722794947275566825634L;

double to_double(const Rational& q) {
  return static_cast<double>(Float50(numerator(q)) / Float50(denominator(q)));
}

double ratio_to_double(const Count& num, const Count& den) { return static_cast<double>(Float50(num) / Float50(den)); }

// lnGamma(x+1) - [(x + 1/2) ln x - x + ln(2 pi)/2], the Stirling remainder.
long double stirling_remainder(long double x) {
  if (x < 16.0L) return std::lgamma(x + 1.0L) - ((x + 0.5L) * std::log(x) - x + 0.5L * kLn2Pi);
  const long double r = 1.0L / x, r2 = r * r;
  // Bernoulli terms B_2j / (2j (2j-1) x^(2j-1)), j = 1..7.
  return r * (1.0L / 12 + r2 * (-1.0L / 360 + r2 * (1.0L / 1260 + r2 * (-1.0L / 1680 +
         r2 * (1.0L / 1188 + r2 * (-691.0L / 360360 + r2 * (1.0L / 156)))))));
}

// ln C(n,k), or -inf outside 0 <= k <= n.
long double log_binomial_or_zero(long long n, long long k) {
  if (k < 0 || k > n) return -INFINITY;
  return log_binomial(n, k);
}

void check_ratio_index(long long m, long long t, long long i) {
  if (!(1 <= t && t <= m)) throw std::invalid_argument("f_shade_ratio: need 1 <= t <= m");
  if (i < 0 || 2 * i > 2 * m - t) throw std::invalid_argument("f_shade_ratio: need 0 <= i <= (2m-t)/2");
}

// C(L, r) C(2m-L, m-r) / C(2m, m) for r in [lo, hi], log-gamma route.
std::vector<long double> window_terms(long long m, long long window, long long lo, long long hi) {
  const long double central = log_binomial(2 * m, m);
  std::vector<long double> out;
  for (long long r = lo; r <= hi; ++r)
    out.push_back(std::exp(log_binomial_or_zero(window, r) + log_binomial_or_zero(2 * m - window, m - r) - central));
  return out;
}

long double window_ratio_log(long long m, long long window, long long threshold) {
  const long long lo = std::max({threshold, window - m, 0LL});
  const long long hi = std::min(window, m);
  long double total = 0.0L;
  for (long double term : window_terms(m, window, lo, hi)) total += term;
  return total;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::ExactRational: return "EXACT_RATIONAL";
    case Method::LogGamma: return "LOG_GAMMA";
    case Method::Degenerate: return "DEGENERATE";
  }
  return "?";
}

void Schedule::validate() const {
  if (!k_of || !t_of) throw std::invalid_argument("schedule '" + name + "' is missing k(m) or t(m)");
  if (m_values.empty()) throw std::invalid_argument("schedule '" + name + "' has no m values");
  for (std::size_t p = 0; p < m_values.size(); ++p) {
    const long long m = m_values[p];
    if (p > 0 && m <= m_values[p - 1]) throw std::invalid_argument("schedule m values must be strictly increasing");
    const long long k = k_of(m), t = t_of(m);
    if (!(1 <= t && t <= k && k <= m))
      throw std::invalid_argument("schedule '" + name + "' violates 1 <= t <= k <= m at m=" + std::to_string(m));
  }
}

double std_normal_cdf(double t) {
  if (std::isnan(t)) throw std::invalid_argument("std_normal_cdf: NaN argument");
  return 0.5 * std::erfc(-t / std::numbers::sqrt2);
}

long double log_binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("log_binomial: need 0 <= k <= n");
  k = std::min(k, n - k);
  if (k == 0) return 0.0L;
  const auto N = static_cast<long double>(n), K = static_cast<long double>(k), R = N - K;
  if (n < 32) return std::lgamma(N + 1) - std::lgamma(K + 1) - std::lgamma(R + 1);
  // n ln n - k ln k - (n-k) ln(n-k), arranged to avoid cancellation.
  const long double entropy = K * std::log(N / K) - R * std::log1p(-K / N);
  return entropy + 0.5L * (std::log(N / (K * R)) - kLn2Pi) + stirling_remainder(N) - stirling_remainder(K) -
         stirling_remainder(R);
}

double dml_ratio(long long n, long long j) {
  if (n < 0 || j < -n || j > n) throw std::invalid_argument("dml_ratio: need |j| <= n");
  return static_cast<double>(std::exp(log_binomial(2 * n, n + j) - static_cast<long double>(n) * std::log(4.0L)));
}

Rational dml_ratio_exact(long long n, long long j) {
  if (n < 0 || j < -n || j > n) throw std::invalid_argument("dml_ratio_exact: need |j| <= n");
  return Rational(binomial(2 * n, n + j), Count(1) << static_cast<unsigned>(2 * n));
}

double dml_gaussian(long long n, long long j) {
  const double x = static_cast<double>(j) / std::sqrt(static_cast<double>(n) / 2.0);
  return std::exp(-x * x / 2.0) / std::sqrt(std::numbers::pi * static_cast<double>(n));
}

double dml_partial_sum(long long n, double a, double b) {
  if (n < 1 || a < 0 || b < 0) throw std::invalid_argument("dml_partial_sum: need n >= 1 and a, b >= 0");
  const double scale = std::sqrt(static_cast<double>(n) / 2.0);
  const long long lo = std::max(-n, -static_cast<long long>(std::floor(a * scale)));
  const long long hi = std::min(n, static_cast<long long>(std::floor(b * scale)));
  const long double ln4n = static_cast<long double>(n) * std::log(4.0L);
  long double total = 0.0L;
  for (long long j = lo; j <= hi; ++j) total += std::exp(log_binomial(2 * n, n + j) - ln4n);
  return static_cast<double>(total);
}

double lemma3_ratio(long long n, long long k, double a, double b) {
  if (!(1 <= k && k <= n)) throw std::invalid_argument("lemma3_ratio: need 1 <= k <= n");
  if (a < 0 || b < 0) throw std::invalid_argument("lemma3_ratio: need a, b >= 0");
  const double scale = std::sqrt(static_cast<double>(k) / 2.0);
  const long long reach = std::min(k, n - k);
  const long long lo = std::max(-reach, -static_cast<long long>(std::floor(a * scale)));
  const long long hi = std::min(reach, static_cast<long long>(std::floor(b * scale)));
  const long double central = log_binomial(2 * n, n);
  long double total = 0.0L;
  for (long long j = lo; j <= hi; ++j)
    total += std::exp(log_binomial(2 * k, k + j) + log_binomial(2 * (n - k), (n - k) - j) - central);
  return static_cast<double>(total);
}

Rational f_shade_ratio_exact(long long m, long long t, long long i) {
  check_ratio_index(m, t, i);
  return Rational(window_count(2 * m, m, t + 2 * i, t + i), binomial(2 * m, m));
}

RatioPoint f_shade_ratio(long long m, long long t, long long i, long long crossover) {
  check_ratio_index(m, t, i);
  RatioPoint p{m, m, t, std::to_string(i)};
  if (m <= crossover) {
    p.value = to_double(f_shade_ratio_exact(m, t, i));
    p.method = Method::ExactRational;
  } else {
    p.value = static_cast<double>(window_ratio_log(m, t + 2 * i, t + i));
    p.method = Method::LogGamma;
  }
  return p;
}

double f_shade_ratio_center(long long m, long long s, long long i, Method method) {
  if (s < 1 || i < 0 || s + i > m) throw std::invalid_argument("f_shade_ratio_center: need s >= 1, i >= 0, s+i <= m");
  if (method == Method::ExactRational) {
    return ratio_to_double(frankl_card_center(static_cast<int>(m), static_cast<int>(s), static_cast<int>(i)),
                           binomial(2 * m, m));
  }
  const long long half = s + i;
  const long double central = log_binomial(2 * m, m);
  long double middle = 0.0L;
  for (long long j = -(s - 1); j <= s - 1; ++j)
    middle += std::exp(log_binomial(2 * half, half + j) + log_binomial(2 * m - 2 * half, m - (half + j)) - central);
  return static_cast<double>(0.5L * (1.0L - middle));
}

ShadeConstruction l9_construction(long long m, long long k, double c, std::optional<long long> schedule_t) {
  if (!(c > 0)) throw std::invalid_argument("l9_construction: need c > 0");
  if (!(1 <= k && k <= m)) throw std::invalid_argument("l9_construction: need 1 <= k <= m");
  const double bound = c * std::sqrt(static_cast<double>(k));
  if (schedule_t && static_cast<double>(*schedule_t) > bound)
    throw std::invalid_argument("l9_construction: schedule t exceeds c sqrt(k)");
  ShadeConstruction out;
  out.m = m;
  out.k = k;
  out.c = c;
  out.t = static_cast<long long>(std::ceil(bound));
  out.i = std::max(0LL, k - out.t);
  out.degenerate = out.i == 0;
  if (!out.degenerate) out.ratio = f_shade_ratio(m, out.t, out.i);
  return out;
}

RatioPoint gaussian_tail_point(long long m, long long k, double c) {
  if (!(c > 0)) throw std::invalid_argument("gaussian_tail_point: need c > 0");
  const long long s = std::max(1LL, static_cast<long long>(std::floor(c * std::sqrt(static_cast<double>(k)) / 2.0)));
  RatioPoint p = f_shade_ratio(m, 2 * s, k);
  p.k = k;
  return p;
}

namespace {

// Suffix sums over r of |{y in ([2m] choose m) : |y & [window]| = r}|,
// indexed from r = t; exact or scaled by 1/C(2m,m) in log-gamma mode.
template <class Value>
std::vector<Value> window_suffix(long long m, long long window, long long t, bool exact);

template <>
std::vector<Count> window_suffix<Count>(long long m, long long window, long long t, bool) {
  const long long hi = std::min(window, m);
  std::vector<Count> out(static_cast<std::size_t>(std::max(0LL, hi - t + 2)), Count(0));
  for (long long r = hi; r >= t; --r)
    out[static_cast<std::size_t>(r - t)] =
        out[static_cast<std::size_t>(r - t + 1)] + binomial(window, r) * binomial(2 * m - window, m - r);
  return out;
}

template <>
std::vector<long double> window_suffix<long double>(long long m, long long window, long long t, bool) {
  const long long hi = std::min(window, m);
  const long long lo = std::max({t, window - m, 0LL});
  std::vector<long double> out(static_cast<std::size_t>(std::max(0LL, hi - t + 2)), 0.0L);
  if (lo <= hi) {
    const auto terms = window_terms(m, window, lo, hi);
    for (long long r = hi; r >= lo; --r)
      out[static_cast<std::size_t>(r - t)] = out[static_cast<std::size_t>(r - t + 1)] + terms[static_cast<std::size_t>(r - lo)];
  }
  for (long long r = lo - 1; r >= t; --r) out[static_cast<std::size_t>(r - t)] = out[static_cast<std::size_t>(r - t + 1)];
  return out;
}

template <class Value>
Value suffix_at(const std::vector<Value>& s, long long t, long long r) {
  const auto idx = static_cast<std::size_t>(r - t);
  return idx < s.size() ? s[idx] : Value(0);
}

template <class Value>
RatioPoint j2_point(long long m, long long k, long long t, Method method) {
  Value best(0);
  long long arg = 0;
  for (long long i = 0; i <= k - t && 2 * i <= 2 * m - t; ++i) {
    const auto suffix = window_suffix<Value>(m, t + 2 * i, t, method == Method::ExactRational);
    const Value v = suffix_at(suffix, t, t + i);
    if (i == 0 || v > best) {
      best = v;
      arg = i;
    }
  }
  RatioPoint p{m, k, t, std::to_string(arg), 0.0, method};
  if constexpr (std::is_same_v<Value, Count>)
    p.value = ratio_to_double(best, binomial(2 * m, m));
  else
    p.value = static_cast<double>(best);
  return p;
}

template <class Value>
RatioPoint co1_point(long long m, long long k, long long t, Method method) {
  Value best(0);
  long long arg_i = 0, arg_j = 0;
  bool first = true;
  const long long span = k - t;
  for (long long window = t; window <= t + 2 * span && window - t <= 2 * m - t; ++window) {
    const auto suffix = window_suffix<Value>(m, window, t, method == Method::ExactRational);
    const long long total = window - t;  // i + j
    for (long long i = std::max(0LL, total - span); i <= std::min(span, total); ++i) {
      const long long j = total - i;
      const Value v = suffix_at(suffix, t, t + i) * suffix_at(suffix, t, t + j);
      if (first || v > best) {
        best = v;
        arg_i = i;
        arg_j = j;
        first = false;
      }
    }
  }
  RatioPoint p{m, k, t, std::to_string(arg_i) + ":" + std::to_string(arg_j), 0.0, method};
  if constexpr (std::is_same_v<Value, Count>) {
    const Float50 central(binomial(2 * m, m));
    p.value = static_cast<double>(boost::multiprecision::sqrt(Float50(best)) / central);
  } else {
    p.value = static_cast<double>(std::sqrt(best));
  }
  return p;
}

template <class Point>
std::vector<RatioPoint> probe(const Schedule& schedule, int parallelism, long long crossover, Point point) {
  schedule.validate();
  std::vector<RatioPoint> out(schedule.m_values.size());
  parallel_for(out.size(), parallelism, [&](std::size_t p) {
    const long long m = schedule.m_values[p];
    out[p] = point(m, schedule.k_of(m), schedule.t_of(m), m <= crossover);
  });
  return out;
}

}  // namespace

std::vector<RatioPoint> probe_conjecture_j2(const Schedule& schedule, int parallelism, long long crossover) {
  return probe(schedule, parallelism, crossover, [](long long m, long long k, long long t, bool exact) {
    return exact ? j2_point<Count>(m, k, t, Method::ExactRational) : j2_point<long double>(m, k, t, Method::LogGamma);
  });
}

std::vector<RatioPoint> probe_conjecture_co1(const Schedule& schedule, int parallelism, long long crossover) {
  return probe(schedule, parallelism, crossover, [](long long m, long long k, long long t, bool exact) {
    return exact ? co1_point<Count>(m, k, t, Method::ExactRational) : co1_point<long double>(m, k, t, Method::LogGamma);
  });
}

double fit_decay_slope(const std::vector<RatioPoint>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& p : points) {
    if (!(p.value > 0)) continue;
    const double x = std::log(static_cast<double>(p.m)), y = std::log(p.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return NAN;
  const double denom = count * sxx - sx * sx;
  if (denom == 0) return NAN;
  return (count * sxy - sx * sy) / denom;
}

void write_ratio_csv(std::ostream& out, const std::vector<RatioPoint>& points) {
  auto num = [](double v) {
    if (std::isnan(v)) return std::string("nan");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return std::string(buf);
  };
  out << "m,k,t,i_star,value,method\n";
  auto opt = [](long long v) { return v == 0 ? std::string() : std::to_string(v); };
  for (const auto& p : points)
    out << p.m << ',' << opt(p.k) << ',' << opt(p.t) << ',' << p.i_star << ',' << num(p.value) << ',' << to_string(p.method) << '\n';
  out << "slope,,,," << num(fit_decay_slope(points)) << ",LOGLOG_FIT\n";
}

}  // namespace shades
