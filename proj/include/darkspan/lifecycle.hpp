// Copyright 2026 The darkspan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "darkspan/error.hpp"

namespace darkspan::lifecycle {

inline constexpr double kDefaultTau = 1e-6;
inline constexpr int kMonthsPerPeriod = 3;

enum class LifecycleClass { Continuous, Recurring, Episodic };

constexpr std::string_view to_string(LifecycleClass c) noexcept {
  switch (c) {
    case LifecycleClass::Continuous: return "Continuous";
    case LifecycleClass::Recurring: return "Recurring";
    case LifecycleClass::Episodic: return "Episodic";
  }
  return "Recurring";
}

struct EpisodicRule {
  std::size_t max_lifespan = 10;    // exclusive
  std::size_t max_recurrence = 10;  // exclusive
};

struct LifecycleMetrics {
  std::size_t first_active = 0;
  std::size_t last_active = 0;
  std::size_t peak = 0;
  std::size_t lifespan_periods = 0;
  std::size_t lifespan_months = 0;
  std::size_t recurrence = 0;
  double growth_slope = 0.0;
  double decay_slope = 0.0;
  std::size_t peak_to_last_months = 0;
  LifecycleClass cls = LifecycleClass::Recurring;
};

/// Ordinary least-squares slope of values[lo..hi] against the period index.
inline double ls_slope(std::span<const double> values, std::size_t lo, std::size_t hi) {
  if (hi <= lo) return 0.0;
  const double n = static_cast<double>(hi - lo + 1);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    mx += static_cast<double>(i);
    my += values[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    const double dx = static_cast<double>(i) - mx;
    sxy += dx * (values[i] - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

inline LifecycleClass classify(const LifecycleMetrics& m, std::size_t total_periods,
                               const EpisodicRule& rule = {}) {
  if (m.recurrence == total_periods) return LifecycleClass::Continuous;
  if (m.lifespan_periods < rule.max_lifespan && m.recurrence < rule.max_recurrence) {
    return LifecycleClass::Episodic;
  }
  return LifecycleClass::Recurring;
}

/// Metrics for one per-period share series. A period is active when its
/// share is at least `tau`. The class uses the series length as the total
/// period count.
inline LifecycleMetrics lifecycle_metrics(std::span<const double> values, double tau = kDefaultTau,
                                          const EpisodicRule& rule = {}) {
  LifecycleMetrics m;
  bool any = false;
  for (std::size_t p = 0; p < values.size(); ++p) {
    if (values[p] < tau) continue;
    if (!any) m.first_active = p;
    m.last_active = p;
    ++m.recurrence;
    if (!any || values[p] > values[m.peak]) m.peak = p;
    any = true;
  }
  if (!any) throw Error(ErrorCode::NoActivity, "no period reaches the activity threshold");
  m.lifespan_periods = m.last_active - m.first_active + 1;
  m.lifespan_months = kMonthsPerPeriod * m.lifespan_periods;
  m.growth_slope = ls_slope(values, m.first_active, m.peak);
  m.decay_slope = ls_slope(values, m.peak, m.last_active);
  m.peak_to_last_months = kMonthsPerPeriod * (m.last_active - m.peak);
  m.cls = classify(m, values.size(), rule);
  return m;
}

struct CohortSummary {
  std::size_t topics = 0;
  double median_lifespan_periods = 0.0;
  double median_lifespan_months = 0.0;
  double mean_lifespan_periods = 0.0;
  double mean_lifespan_months = 0.0;
  std::size_t disappearing = 0;
  std::optional<double> mean_peak_to_last_months;  // absent when nothing disappears
  double max_growth_slope = 0.0;
  double min_decay_slope = 0.0;
  std::size_t continuous = 0;
  std::size_t recurring = 0;
  std::size_t episodic = 0;
};

/// `final_period` is the last period index of the study window.
inline CohortSummary cohort_summary(std::span<const LifecycleMetrics> all, std::size_t final_period) {
  if (all.empty()) throw Error(ErrorCode::EmptyInput, "no topics");
  CohortSummary s;
  s.topics = all.size();
  std::vector<double> spans;
  double lag = 0.0;
  s.max_growth_slope = all.front().growth_slope;
  s.min_decay_slope = all.front().decay_slope;
  for (const auto& m : all) {
    spans.push_back(static_cast<double>(m.lifespan_periods));
    s.mean_lifespan_periods += static_cast<double>(m.lifespan_periods);
    if (m.last_active < final_period) {
      ++s.disappearing;
      lag += static_cast<double>(m.peak_to_last_months);
    }
    s.max_growth_slope = std::max(s.max_growth_slope, m.growth_slope);
    s.min_decay_slope = std::min(s.min_decay_slope, m.decay_slope);
    switch (m.cls) {
      case LifecycleClass::Continuous: ++s.continuous; break;
      case LifecycleClass::Recurring: ++s.recurring; break;
      case LifecycleClass::Episodic: ++s.episodic; break;
    }
  }
  std::sort(spans.begin(), spans.end());
  const std::size_t n = spans.size();
  s.median_lifespan_periods = n % 2 ? spans[n / 2] : 0.5 * (spans[n / 2 - 1] + spans[n / 2]);
  s.median_lifespan_months = kMonthsPerPeriod * s.median_lifespan_periods;
  s.mean_lifespan_periods /= static_cast<double>(n);
  s.mean_lifespan_months = kMonthsPerPeriod * s.mean_lifespan_periods;
  if (s.disappearing > 0) s.mean_peak_to_last_months = lag / static_cast<double>(s.disappearing);
  return s;
}

}  // namespace darkspan::lifecycle
