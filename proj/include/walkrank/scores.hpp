#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "walkrank/errors.hpp"

namespace walkrank {

enum class Normalization { sum_one, mean_one, max_one, raw };

std::string_view to_string(Normalization n);
Normalization parse_normalization(std::string_view text);

/// Node-indexed finite scores together with the normalization they satisfy.
///
/// The constructor checks the declared normalization (within 1e-9) and rejects
/// NaN or infinite entries; use `normalized` to rescale arbitrary values.
class ScoreVector {
 public:
  static constexpr double kNormalizationTolerance = 1e-9;

  ScoreVector() = default;
  ScoreVector(std::vector<double> values, Normalization normalization);

  /// Rescales `values` so that `normalization` holds. An all-zero input
  /// becomes the uniform vector, since no scale carries information there.
  static ScoreVector normalized(std::vector<double> values, Normalization normalization);

  ScoreVector renormalized(Normalization normalization) const;

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](NodeId i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  Normalization normalization() const noexcept { return normalization_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

 private:
  std::vector<double> values_;
  Normalization normalization_ = Normalization::raw;
};

/// Node ids ordered by descending score, ties broken by ascending id.
std::vector<NodeId> ranking(std::span<const double> scores);

double l1_distance(std::span<const double> a, std::span<const double> b);
double max_abs_difference(std::span<const double> a, std::span<const double> b);

}  // namespace walkrank
