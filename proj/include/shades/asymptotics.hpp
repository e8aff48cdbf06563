#pragma once

// High-precision evaluation of the limit statements at large finite
// parameters: the normal CDF, log-binomials, de Moivre-Laplace ratios and
// the ratio |F_i(2m,m,t)| / C(2m,m) along schedules k(m), t(m).
//
// Quantities with m <= crossover are evaluated from exact integer counts;
// beyond that, every binomial goes through log_binomial.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace shades {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr long long kExactCrossover = 200;

enum class Method { ExactRational, LogGamma, Degenerate };
std::string to_string(Method m);

struct RatioPoint {
  long long m = 0;
  long long k = 0;
  long long t = 0;
  std::string i_star;  // argmax index ("i" or "i:j"), empty when not applicable
  double value = 0.0;
  Method method = Method::LogGamma;
};

struct Schedule {
  std::string name;
  std::function<long long(long long)> k_of;
  std::function<long long(long long)> t_of;
  std::vector<long long> m_values;

  /// Throws unless m_values is strictly increasing and 1 <= t(m) <= k(m) <= m.
  void validate() const;
};

/// Phi(t), the standard normal CDF.
double std_normal_cdf(double t);

/// ln C(n, k), accurate to about 1e-10 absolute for n up to 1e9.
long double log_binomial(long long n, long long k);

/// C(2n, n+j) / 4^n.
double dml_ratio(long long n, long long j);
Rational dml_ratio_exact(long long n, long long j);
/// The Gaussian approximation exp(-(j / sqrt(n/2))^2 / 2) / sqrt(pi n).
double dml_gaussian(long long n, long long j);

/// Sum of C(2n, n+j)/4^n for j from -floor(a sqrt(n/2)) to floor(b sqrt(n/2)).
double dml_partial_sum(long long n, double a, double b);

/// Sum over j in [-floor(a sqrt(k/2)), floor(b sqrt(k/2))] of
/// C(2k, k+j) C(2(n-k), (n-k)-j) / C(2n, n). Tends to Phi(b) - Phi(-a).
double lemma3_ratio(long long n, long long k, double a, double b);

/// |F_i(2m, m, t)| / C(2m, m). Exact below the crossover, log-gamma above.
RatioPoint f_shade_ratio(long long m, long long t, long long i, long long crossover = kExactCrossover);
Rational f_shade_ratio_exact(long long m, long long t, long long i);
/// The same ratio through the complementation identity for t = 2s.
double f_shade_ratio_center(long long m, long long s, long long i, Method method);

/// Index of the Frankl family whose m-shade ratio stays bounded away from
/// zero when t(m) <= c sqrt(k(m)): F_{k''}(2m, k, t') with t' = ceil(c sqrt k)
/// and k'' = max(0, k - t'). Its m-shade is F_{k''}(2m, m, t').
struct ShadeConstruction {
  long long m = 0, k = 0, t = 0, i = 0;
  double c = 0.0;
  bool degenerate = false;  // k'' = 0: no ratio computed
  std::optional<RatioPoint> ratio;
};
ShadeConstruction l9_construction(long long m, long long k, double c, std::optional<long long> schedule_t = std::nullopt);

/// f_shade_ratio at i = k and t = 2 max(1, floor(c sqrt(k) / 2)).
RatioPoint gaussian_tail_point(long long m, long long k, double c);

/// Per m: max over 0 <= i <= k-t of f_shade_ratio(m, t, i).
std::vector<RatioPoint> probe_conjecture_j2(const Schedule& schedule, int parallelism = 1,
                                            long long crossover = kExactCrossover);
/// Per m: max over 0 <= i, j <= k-t of sqrt(|G_ij(2m,m,t)| |G_ji(2m,m,t)|) / C(2m,m).
std::vector<RatioPoint> probe_conjecture_co1(const Schedule& schedule, int parallelism = 1,
                                             long long crossover = kExactCrossover);

/// Least-squares slope of ln(value) against ln(m) over points with value > 0;
/// NaN when fewer than two such points exist.
double fit_decay_slope(const std::vector<RatioPoint>& points);

/// CSV with header "m,k,t,i_star,value,method"; values with 12 significant
/// digits; a final "slope" row carries fit_decay_slope. A k or t of 0 means
/// "not applicable" and prints as an empty field.
void write_ratio_csv(std::ostream& out, const std::vector<RatioPoint>& points);

}  // namespace shades
