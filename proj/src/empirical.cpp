#include "kendall/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kendall {

EmpiricalCDF::EmpiricalCDF(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw std::invalid_argument("empirical CDF needs at least one sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCDF::operator()(double t) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCDF::quantile(double q) const {
  if (!(q >= 0.0) || q > 1.0) throw std::invalid_argument("quantile needs q in [0, 1]");
  const auto n = sorted_.size();
  std::size_t rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  if (rank > 0) --rank;
  return sorted_[std::min(rank, n - 1)];
}

double ks_distance(const EmpiricalCDF& sample, const std::function<double(double)>& cdf,
                   const std::function<double(double)>& cdf_left) {
  const auto& xs = sample.sorted();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    const double fl = cdf_left ? cdf_left(xs[i]) : f;
    // upper gap just at x_i, lower gap just below it; ties are covered
    // because the extreme ranks of a tie block are both visited
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, fl - static_cast<double>(i) / n);
  }
  return d;
}

double two_sample_ks(const EmpiricalCDF& a, const EmpiricalCDF& b) {
  const auto& xa = a.sorted();
  const auto& xb = b.sorted();
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double x = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] <= x) ++i;
    while (j < xb.size() && xb[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

double two_sample_ks_critical_1pct(std::size_t n, std::size_t m) {
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return 1.63 * std::sqrt((dn + dm) / (dn * dm));
}

double median_of_means(std::span<const double> values, int n_blocks) {
  if (values.empty()) throw std::invalid_argument("median_of_means needs samples");
  if (n_blocks < 1) throw std::invalid_argument("median_of_means needs n_blocks >= 1");
  const std::size_t blocks = std::min<std::size_t>(static_cast<std::size_t>(n_blocks),
                                                   values.size());
  std::vector<double> means(blocks, 0.0);
  const std::size_t base = values.size() / blocks;
  const std::size_t extra = values.size() % blocks;
  std::size_t offset = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t len = base + (b < extra ? 1 : 0);
    double sum = 0.0;
    for (std::size_t i = 0; i < len; ++i) sum += values[offset + i];
    means[b] = sum / static_cast<double>(len);
    offset += len;
  }
  const std::size_t mid = blocks / 2;
  std::nth_element(means.begin(), means.begin() + static_cast<std::ptrdiff_t>(mid), means.end());
  if (blocks % 2 == 1) return means[mid];
  const double hi = means[mid];
  const double lo = *std::max_element(means.begin(), means.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

}  // namespace kendall
