#include "radarint/distribution.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "radarint/error.hpp"
#include "radarint/format.hpp"

namespace radarint {

InterfererDistribution::InterfererDistribution() : p_{1.0} {}

InterfererDistribution InterfererDistribution::from_probabilities(std::vector<double> probabilities,
                                                                  double max_equivalent_distance,
                                                                  std::uint64_t sample_count) {
  while (!probabilities.empty() && probabilities.back() == 0.0) probabilities.pop_back();
  if (probabilities.empty()) throw ValidationError("interferer distribution is empty");
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ValidationError("interferer distribution has a negative or non-finite entry");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError("interferer distribution sums to " + format_double(sum) + ", not 1");
  }
  InterfererDistribution d;
  d.p_ = std::move(probabilities);
  d.d_max_ = max_equivalent_distance;
  d.samples_ = sample_count;
  return d;
}

InterfererDistribution InterfererDistribution::from_histogram(std::span<const std::uint64_t> counts,
                                                              double max_equivalent_distance) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw ValidationError("interferer histogram has no observations");
  std::vector<double> p(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    p[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return from_probabilities(std::move(p), max_equivalent_distance, total);
}

double InterfererDistribution::mean() const {
  double m = 0.0;
  for (std::size_t n = 0; n < p_.size(); ++n) m += static_cast<double>(n) * p_[n];
  return m;
}

double InterfererDistribution::tail(std::size_t n) const {
  double t = 0.0;
  for (std::size_t k = n; k < p_.size(); ++k) t += p_[k];
  return t;
}

void write_distribution_csv(std::ostream& out, const InterfererDistribution& dist) {
  out << "n,probability\n";
  for (std::size_t n = 0; n < dist.size(); ++n) {
    out << n << ',' << format_double(dist[n]) << '\n';
  }
}

}  // namespace radarint
