#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace kendall {

// Sorted-sample distribution estimate.
class EmpiricalCDF {
 public:
  explicit EmpiricalCDF(std::vector<double> samples);

  // rank(t) / count with rank = number of samples <= t.
  double operator()(double t) const;

  // Order-statistic quantile, q in [0, 1].
  double quantile(double q) const;

  std::size_t count() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

// One-sample Kolmogorov-Smirnov distance sup_t |F_emp(t) - F(t)|, both
// one-sided gaps. cdf_left supplies the left limits of the analytic CDF and
// defaults to cdf itself; passing it makes the statistic exact for laws with
// atoms (where empirical and analytic CDF jump together).
double ks_distance(const EmpiricalCDF& sample, const std::function<double(double)>& cdf,
                   const std::function<double(double)>& cdf_left = nullptr);

double two_sample_ks(const EmpiricalCDF& a, const EmpiricalCDF& b);

// 1% critical values: 1.63 / sqrt(n), resp. 1.63 * sqrt((n+m)/(n m)).
double ks_critical_1pct(std::size_t n);
double two_sample_ks_critical_1pct(std::size_t n, std::size_t m);

// Median of per-block means; robust location estimate for heavy-tailed
// samples whose plain mean converges poorly.
double median_of_means(std::span<const double> values, int n_blocks);

}  // namespace kendall
