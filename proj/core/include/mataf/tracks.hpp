#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mataf/geometry.hpp"

namespace mataf {

enum class Sex { male, female, unspecified };
enum class AgeClass { young, old, unspecified };
enum class Mobility { walking, wheelchair };

struct Cohort {
  Sex sex = Sex::unspecified;
  AgeClass age_class = AgeClass::unspecified;
  Mobility mobility = Mobility::walking;
  int group_size = 1;
  bool operator==(const Cohort&) const = default;
};

/// Canonical label used to group tracks for cohort statistics, e.g. "male",
/// "female_old", "wheelchair". Unspecified fields are omitted; a cohort with
/// nothing specified is labeled "all".
std::string cohort_label(const Cohort& c);

struct Keyframe {
  std::int64_t frame = 0;
  WorldPoint pos;
};

/// One identified pedestrian. Keyframes are sorted by frame with unique,
/// non-negative frame indices and finite positions; loaders establish this
/// and validate_track reports violations on raw data.
struct Track {
  std::string id;
  Cohort cohort;
  std::vector<Keyframe> keyframes;

  std::int64_t first_frame() const { return keyframes.front().frame; }
  std::int64_t last_frame() const { return keyframes.back().frame; }
};

using TrackSet = std::vector<Track>;

/// Piecewise-linear position at a (possibly fractional) frame.
/// Exact at keyframes. Throws OutOfRange outside the keyframe span.
WorldPoint interpolate_position(const Track& t, double frame);

struct SpeedSample {
  double mid_frame = 0.0;
  WorldPoint pos;       // segment midpoint
  double speed = 0.0;   // m/s
};

using SpeedSeries = std::vector<SpeedSample>;

/// Per-segment speeds: distance between consecutive keyframes over elapsed
/// time, attributed to the segment midpoint. Throws TooFewKeyframes.
SpeedSeries segment_speeds(const Track& t, double fps);

struct WalkTime {
  std::string track_id;
  std::string gate_a;
  std::string gate_b;
  double t_p = 0.0;       // seconds
  double distance = 0.0;  // meters
  double speed = 0.0;     // m/s
};

/// Walking time between the first crossings of two gates. Crossing frames
/// are interpolated on the keyframe segment that intersects each gate.
/// Throws GateNotCrossed if a gate is never crossed or crossed in the wrong
/// order, UnknownGate for names missing from the site.
WalkTime walk_time(const Track& t, const SiteGeometry& geom, const std::string& gate_a,
                   const std::string& gate_b, double fps);

/// Sum of consecutive keyframe distances; 0 for a single keyframe.
double path_length(const Track& t);

enum class ViolationKind { nonmonotone_frame, nonfinite_position, speed_exceeded };

const char* violation_name(ViolationKind k);

struct TrackViolation {
  ViolationKind kind;
  std::int64_t frame = 0;
  std::string detail;
};

/// Reports non-monotone frames, non-finite positions and segments faster
/// than max_speed. Violations are data, not errors.
std::vector<TrackViolation> validate_track(const Track& t, double max_speed = 3.0,
                                           double fps = 25.0);

/// Keeps every stride-th keyframe plus the last one. Lossy export used to
/// study interpolation error against dense tracks.
Track downsample_keyframes(const Track& t, std::int64_t stride);

}  // namespace mataf
