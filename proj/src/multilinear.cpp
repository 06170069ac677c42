#include "gnls/multilinear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gnls {

void FrequencyTuple::validate() const {
  if (etas.size() < 2) throw std::invalid_argument("FrequencyTuple: need n >= 2 frequencies");
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("FrequencyTuple: sigma must be finite and >= 0");
  if (!(theta >= 0.0 && theta <= 1.0))
    throw std::invalid_argument("FrequencyTuple: theta must lie in [0, 1]");
  for (double e : etas)
    if (!std::isfinite(e)) throw std::invalid_argument("FrequencyTuple: non-finite frequency");
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double c = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      c += (sum - t) + v;
    else
      c += (v - t) + sum;
    sum = t;
  }
  return sum + c;
}

namespace {

double abs_sum(std::span<const double> etas) {
  std::vector<double> a(etas.size());
  std::transform(etas.begin(), etas.end(), a.begin(), [](double e) { return std::abs(e); });
  return compensated_sum(a);
}

double sum_without(std::span<const double> etas, std::size_t skip) {
  std::vector<double> rest;
  rest.reserve(etas.size());
  for (std::size_t j = 0; j < etas.size(); ++j)
    if (j != skip) rest.push_back(etas[j]);
  return compensated_sum(rest);
}

// sum_k (2 sigma min(|sum_{j!=k} eta_j|, |eta_k|))^theta
double min_term_sum(std::span<const double> etas, double sigma, double theta) {
  double total = 0.0;
  for (std::size_t k = 0; k < etas.size(); ++k) {
    const double m = std::min(std::abs(sum_without(etas, k)), std::abs(etas[k]));
    total += std::pow(2.0 * sigma * m, theta);
  }
  return total;
}

}  // namespace

Lemma6Evaluation lemma6_evaluate(const FrequencyTuple& t) {
  t.validate();
  const double a = abs_sum(t.etas);
  const double b = std::abs(compensated_sum(t.etas));
  const double gap = std::max(0.0, a - b);

  Lemma6Evaluation out;
  out.exponent = t.sigma * a;
  const double weight_sum = min_term_sum(t.etas, t.sigma, t.theta);
  // lhs / e^{sigma a} = 1 - e^{-sigma (a - |b|)}
  const double scaled_lhs = -std::expm1(-t.sigma * gap);
  out.scaled_margin = weight_sum - scaled_lhs;
  out.log_space = out.exponent > kLogSpaceThreshold;
  const double scale = std::exp(out.exponent);
  out.lhs = scaled_lhs * scale;
  out.rhs = weight_sum * scale;
  out.margin = out.scaled_margin * scale;
  return out;
}

double lemma6_margin(const FrequencyTuple& t) {
  const auto e = lemma6_evaluate(t);
  return e.log_space ? e.scaled_margin : e.margin;
}

double InductionTrace::identity_error() const {
  return std::abs(first + second - lhs) / std::max(1.0, std::abs(lhs));
}

bool InductionTrace::first_within_bound(double tol) const {
  return first <= first_bound + tol * std::max(1.0, std::abs(first_bound));
}

bool InductionTrace::second_within_bound(double tol) const {
  return second <= second_bound + tol * std::max(1.0, std::abs(second_bound));
}

InductionTrace lemma6_induction_trace(const FrequencyTuple& t) {
  t.validate();
  if (t.etas.size() < 3) throw std::invalid_argument("lemma6_induction_trace requires n >= 3");
  const std::span<const double> all(t.etas);
  const auto head = all.first(all.size() - 1);
  const double last = std::abs(all.back());

  const double a_head = abs_sum(head);
  const double b_head = std::abs(compensated_sum(head));
  const double a_all = abs_sum(all);
  const double b_all = std::abs(compensated_sum(all));
  const double s = t.sigma;

  InductionTrace tr;
  tr.lhs = std::exp(s * a_all) - std::exp(s * b_all);
  tr.first = std::exp(s * last) * (std::exp(s * a_head) - std::exp(s * b_head));
  tr.second = std::exp(s * last) * std::exp(s * b_head) - std::exp(s * b_all);
  tr.first_bound = min_term_sum(head, s, t.theta) * std::exp(s * (a_head + last));
  tr.second_bound = std::pow(2.0 * s * std::min(b_head, last), t.theta) * std::exp(s * a_all);
  return tr;
}

}  // namespace gnls
