#include "walkrank/scores.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace walkrank {
namespace {

double sum_of(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::sum_one: return "sum-one";
    case Normalization::mean_one: return "mean-one";
    case Normalization::max_one: return "max-one";
    case Normalization::raw: return "raw";
  }
  return "raw";
}

Normalization parse_normalization(std::string_view text) {
  if (text == "sum-one") return Normalization::sum_one;
  if (text == "mean-one") return Normalization::mean_one;
  if (text == "max-one") return Normalization::max_one;
  if (text == "raw") return Normalization::raw;
  throw DomainError("unknown normalization '" + std::string(text) + "'");
}

ScoreVector::ScoreVector(std::vector<double> values, Normalization normalization)
    : values_(std::move(values)), normalization_(normalization) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("score vector contains a non-finite entry");
  }
  if (values_.empty() || normalization_ == Normalization::raw) return;

  const double n = static_cast<double>(values_.size());
  double measured = 0.0;
  switch (normalization_) {
    case Normalization::sum_one: measured = sum_of(values_); break;
    case Normalization::mean_one: measured = sum_of(values_) / n; break;
    case Normalization::max_one:
      measured = *std::max_element(values_.begin(), values_.end());
      break;
    case Normalization::raw: break;
  }
  if (std::abs(measured - 1.0) > kNormalizationTolerance) {
    throw DomainError("score vector violates " + std::string(to_string(normalization_)) +
                      " normalization (measured " + std::to_string(measured) + ")");
  }
}

ScoreVector ScoreVector::normalized(std::vector<double> values, Normalization normalization) {
  if (values.empty() || normalization == Normalization::raw) {
    return ScoreVector(std::move(values), normalization);
  }
  const double n = static_cast<double>(values.size());
  double scale = 0.0;
  switch (normalization) {
    case Normalization::sum_one: scale = sum_of(values); break;
    case Normalization::mean_one: scale = sum_of(values) / n; break;
    case Normalization::max_one: scale = *std::max_element(values.begin(), values.end()); break;
    case Normalization::raw: break;
  }
  if (scale == 0.0) {
    const double fill = normalization == Normalization::sum_one ? 1.0 / n : 1.0;
    std::fill(values.begin(), values.end(), fill);
  } else {
    for (double& v : values) v /= scale;
  }
  return ScoreVector(std::move(values), normalization);
}

ScoreVector ScoreVector::renormalized(Normalization normalization) const {
  return normalized(values_, normalization);
}

std::vector<NodeId> ranking(std::span<const double> scores) {
  std::vector<NodeId> order(scores.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return scores[a] > scores[b]; });
  return order;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return total;
}

double max_abs_difference(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace walkrank
