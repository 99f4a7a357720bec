#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mataf/density.hpp"
#include "mataf/geometry.hpp"
#include "mataf/tracks.hpp"

namespace mataf {

struct CohortStats {
  std::string cohort;
  std::int64_t n = 0;
  double mu = 0.0;
  double sigma = 0.0;
  /// Speed exceeded by 85% of the samples, i.e. the 15th percentile.
  double p85_exceeded = 0.0;
};

/// Moment fit: sample mean, standard deviation with divisor n-1, and the
/// 15th percentile by linear interpolation between order statistics.
/// Throws TooFewSamples for n < 2.
CohortStats fit_normal(std::span<const double> samples, std::string label = {});

struct FdBin {
  double rho_lo = 0.0;
  double rho_hi = 0.0;
  double mean_rho = 0.0;
  double mean_speed = 0.0;
  std::int64_t n = 0;
  bool sparse = true;
};

struct FundamentalDiagram {
  double bin_width = 0.5;
  std::int64_t min_bin_n = 10;
  std::vector<FdBin> bins;          // contiguous from [0, bin_width)
  std::int64_t dropped = 0;         // samples whose midpoint fell outside the grid
  std::int64_t total_samples = 0;   // sum of bin n + dropped
};

struct TimedDensityField {
  double time_s = 0.0;
  DensityField field;
};

/// Local speed vs local density: every segment-speed sample is paired with
/// the density of the cell containing its midpoint at the nearest field
/// time, then binned by density. Fields must be sorted by time_s.
/// Throws NoOverlap when no sample can be paired.
FundamentalDiagram fundamental_diagram(const TrackSet& tracks,
                                       std::span<const TimedDensityField> fields, double fps,
                                       double bin_width = 0.5, std::int64_t min_bin_n = 10);

struct RefPoint {
  double rho = 0.0;
  double v = 0.0;
};

struct ReferenceDelta {
  double rho = 0.0;
  double v_measured = 0.0;
  double v_ref = 0.0;
  double delta = 0.0;
};

/// Compares non-sparse bins against a reference curve (e.g. a digitized PM
/// diagram) by linear interpolation at the bin's mean density; extrapolation
/// clamps to the end values. Throws EmptyReference.
std::vector<ReferenceDelta> compare_reference(const FundamentalDiagram& fd,
                                              std::span<const RefPoint> ref);

struct RingRange {
  double r_lo = 0.0;
  double r_hi = 0.0;
};

struct EdgeEffectReport {
  RingRange inner;
  RingRange outer;
  double mean_speed_inner = 0.0;
  double mean_speed_outer = 0.0;
  double ratio = 0.0;  // outer/inner when inner > 0, NaN otherwise
  bool edge_effect_present = false;
  std::int64_t n_inner = 0;
  std::int64_t n_outer = 0;
};

/// Mean speed in two wall-distance rings (inner near the wall, outer at the
/// periphery). Rings must be disjoint with the inner ring closer to the
/// wall. Throws EmptyRing when a ring collects no samples.
EdgeEffectReport edge_center_contrast(const TrackSet& tracks, const SiteGeometry& geom, double fps,
                                      RingRange inner, RingRange outer);

/// RMS radial deviation from the moving-average trend of the wall distance,
/// evaluated at keyframes with a full window. `window` must be odd and >= 3.
/// Throws TooFewKeyframes when the track has fewer keyframes than `window`.
double oscillation_metric(const Track& t, const SiteGeometry& geom, int window);

struct TimeBucket {
  double t_mid = 0.0;
  double mean_speed = 0.0;
  std::int64_t n = 0;
};

struct StandstillInterval {
  double t_start = 0.0;
  double t_end = 0.0;
};

struct TimeSeries {
  double bucket = 10.0;
  std::vector<TimeBucket> points;  // contiguous buckets spanning the data
  std::vector<StandstillInterval> standstills;
};

/// Mean speed per time bucket; maximal runs of populated buckets whose mean
/// falls below the threshold become standstill intervals.
TimeSeries mean_speed_timeseries(const TrackSet& tracks, double fps, double bucket = 10.0,
                                 double standstill_threshold = 0.05);

}  // namespace mataf
