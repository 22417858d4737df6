#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace radarint {

/// Probability mass function of the number of potential interferers a radar
/// sees, {P0, P1, P2, ...}. Entries are non-negative, sum to 1 within 1e-9
/// and carry no trailing zeros.
class InterfererDistribution {
 public:
  /// The empty-road distribution {1}.
  InterfererDistribution();

  /// Throws ValidationError if the vector is not a PMF.
  static InterfererDistribution from_probabilities(std::vector<double> probabilities,
                                                   double max_equivalent_distance = 0.0,
                                                   std::uint64_t sample_count = 0);
  /// Empirical PMF of a histogram (counts[n] = observations of n interferers).
  static InterfererDistribution from_histogram(std::span<const std::uint64_t> counts,
                                               double max_equivalent_distance);

  const std::vector<double>& probabilities() const { return p_; }
  std::size_t size() const { return p_.size(); }
  /// P_n, zero beyond the stored support.
  double operator[](std::size_t n) const { return n < p_.size() ? p_[n] : 0.0; }
  double max_equivalent_distance() const { return d_max_; }
  std::uint64_t sample_count() const { return samples_; }

  double mean() const;
  /// P(N >= n).
  double tail(std::size_t n) const;

 private:
  std::vector<double> p_;
  double d_max_ = 0.0;
  std::uint64_t samples_ = 0;
};

/// `n,probability` with a header row, one record per support point.
void write_distribution_csv(std::ostream& out, const InterfererDistribution& dist);

}  // namespace radarint
