#pragma once

// Exponential inequality behind the Gevrey multilinear estimates: for
// n >= 2 frequencies eta_j, sigma >= 0 and theta in [0, 1],
//
//   e^{sigma sum|eta_j|} - e^{sigma |sum eta_j|}
//       <= sum_k (2 sigma min(|sum_{j!=k} eta_j|, |eta_k|))^theta e^{sigma sum|eta_j|}.

#include <span>
#include <vector>

namespace gnls {

struct FrequencyTuple {
  std::vector<double> etas;
  double sigma = 0.0;
  double theta = 0.0;

  /// Throws std::invalid_argument unless n >= 2, sigma >= 0, theta in [0,1].
  void validate() const;
};

/// Exponents above this value are compared in log space.
inline constexpr double kLogSpaceThreshold = 700.0;

struct Lemma6Evaluation {
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs; infinite or NaN-free but possibly overflowed to +-inf when
  /// sigma * sum|eta| exceeds kLogSpaceThreshold.
  double margin = 0.0;
  /// (rhs - lhs) * e^{-sigma sum|eta|}, always finite.
  double scaled_margin = 0.0;
  /// sigma * sum|eta_j|
  double exponent = 0.0;
  bool log_space = false;
};

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

Lemma6Evaluation lemma6_evaluate(const FrequencyTuple& t);

/// rhs - lhs. Above kLogSpaceThreshold the scaled margin is returned.
double lemma6_margin(const FrequencyTuple& t);

/// Last-index split of the left-hand side used by the induction on n:
///   first  = e^{sigma|eta_n|} [e^{sigma sum_{j<n}|eta_j|} - e^{sigma|sum_{j<n} eta_j|}]
///   second = e^{sigma|eta_n|} e^{sigma|sum_{j<n} eta_j|} - e^{sigma|sum eta_j|}
/// with the bounds each term inherits from the inequality at smaller n.
struct InductionTrace {
  double lhs = 0.0;
  double first = 0.0;
  double second = 0.0;
  double first_bound = 0.0;
  double second_bound = 0.0;

  double identity_error() const;  // |first + second - lhs| / max(1, |lhs|)
  bool first_within_bound(double tol = 1e-12) const;
  bool second_within_bound(double tol = 1e-12) const;
};

/// Requires n >= 3.
InductionTrace lemma6_induction_trace(const FrequencyTuple& t);

}  // namespace gnls
