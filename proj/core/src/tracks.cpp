#include "mataf/tracks.hpp"

#include <algorithm>
#include <cmath>

namespace mataf {

std::string cohort_label(const Cohort& c) {
  std::string label;
  auto append = [&label](const char* part) {
    if (!label.empty()) label += '_';
    label += part;
  };
  if (c.sex == Sex::male) append("male");
  if (c.sex == Sex::female) append("female");
  if (c.age_class == AgeClass::young) append("young");
  if (c.age_class == AgeClass::old) append("old");
  if (c.mobility == Mobility::wheelchair) append("wheelchair");
  return label.empty() ? "all" : label;
}

WorldPoint interpolate_position(const Track& t, double frame) {
  const auto& keys = t.keyframes;
  if (keys.empty()) throw OutOfRange("track '" + t.id + "' has no keyframes");
  if (frame < static_cast<double>(keys.front().frame) ||
      frame > static_cast<double>(keys.back().frame)) {
    throw OutOfRange("frame outside the keyframe span of track '" + t.id + "'");
  }
  auto it = std::lower_bound(
      keys.begin(), keys.end(), frame,
      [](const Keyframe& k, double f) { return static_cast<double>(k.frame) < f; });
  if (it != keys.end() && static_cast<double>(it->frame) == frame) return it->pos;
  const Keyframe& hi = *it;
  const Keyframe& lo = *(it - 1);
  double a = (frame - static_cast<double>(lo.frame)) /
             static_cast<double>(hi.frame - lo.frame);
  return {lo.pos.x + a * (hi.pos.x - lo.pos.x), lo.pos.y + a * (hi.pos.y - lo.pos.y)};
}

SpeedSeries segment_speeds(const Track& t, double fps) {
  if (!(fps > 0.0)) throw InvalidParameter("fps must be positive");
  if (t.keyframes.size() < 2) {
    throw TooFewKeyframes("track '" + t.id + "' needs at least 2 keyframes for speeds");
  }
  SpeedSeries out;
  out.reserve(t.keyframes.size() - 1);
  for (std::size_t i = 0; i + 1 < t.keyframes.size(); ++i) {
    const Keyframe& a = t.keyframes[i];
    const Keyframe& b = t.keyframes[i + 1];
    double dt = static_cast<double>(b.frame - a.frame) / fps;
    SpeedSample s;
    s.mid_frame = 0.5 * static_cast<double>(a.frame + b.frame);
    s.pos = {0.5 * (a.pos.x + b.pos.x), 0.5 * (a.pos.y + b.pos.y)};
    s.speed = distance(a.pos, b.pos) / dt;
    out.push_back(s);
  }
  return out;
}

namespace {

struct Crossing {
  double frame;
  WorldPoint point;
};

std::optional<Crossing> first_gate_crossing(const Track& t, const Segment& gate) {
  for (std::size_t i = 0; i + 1 < t.keyframes.size(); ++i) {
    const Keyframe& a = t.keyframes[i];
    const Keyframe& b = t.keyframes[i + 1];
    auto hit = segment_intersection(a.pos, b.pos, gate.a, gate.b);
    if (hit) {
      double frame = static_cast<double>(a.frame) +
                     hit->first * static_cast<double>(b.frame - a.frame);
      return Crossing{frame, hit->second};
    }
  }
  return std::nullopt;
}

}  // namespace

WalkTime walk_time(const Track& t, const SiteGeometry& geom, const std::string& gate_a,
                   const std::string& gate_b, double fps) {
  if (!(fps > 0.0)) throw InvalidParameter("fps must be positive");
  const Segment& ga = geom.gate(gate_a);
  const Segment& gb = geom.gate(gate_b);
  auto ca = first_gate_crossing(t, ga);
  auto cb = first_gate_crossing(t, gb);
  if (!ca) throw GateNotCrossed("track '" + t.id + "' never crosses gate '" + gate_a + "'");
  if (!cb) throw GateNotCrossed("track '" + t.id + "' never crosses gate '" + gate_b + "'");
  if (!(cb->frame > ca->frame)) {
    throw GateNotCrossed("track '" + t.id + "' crosses '" + gate_b + "' before '" + gate_a + "'");
  }
  WalkTime wt;
  wt.track_id = t.id;
  wt.gate_a = gate_a;
  wt.gate_b = gate_b;
  wt.t_p = (cb->frame - ca->frame) / fps;
  wt.distance = distance(ca->point, cb->point);
  wt.speed = wt.distance / wt.t_p;
  return wt;
}

double path_length(const Track& t) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < t.keyframes.size(); ++i) {
    total += distance(t.keyframes[i].pos, t.keyframes[i + 1].pos);
  }
  return total;
}

const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::nonmonotone_frame: return "nonmonotone_frame";
    case ViolationKind::nonfinite_position: return "nonfinite_position";
    case ViolationKind::speed_exceeded: return "speed_exceeded";
  }
  return "unknown";
}

std::vector<TrackViolation> validate_track(const Track& t, double max_speed, double fps) {
  std::vector<TrackViolation> out;
  const auto& keys = t.keyframes;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (!std::isfinite(keys[i].pos.x) || !std::isfinite(keys[i].pos.y)) {
      out.push_back({ViolationKind::nonfinite_position, keys[i].frame, "non-finite position"});
    }
    if (i == 0) continue;
    if (keys[i].frame <= keys[i - 1].frame) {
      out.push_back({ViolationKind::nonmonotone_frame, keys[i].frame,
                     "frame does not increase over the previous keyframe"});
      continue;  // speed over this segment is undefined
    }
    if (std::isfinite(keys[i].pos.x) && std::isfinite(keys[i].pos.y) &&
        std::isfinite(keys[i - 1].pos.x) && std::isfinite(keys[i - 1].pos.y)) {
      double dt = static_cast<double>(keys[i].frame - keys[i - 1].frame) / fps;
      double speed = distance(keys[i - 1].pos, keys[i].pos) / dt;
      if (speed > max_speed) {
        out.push_back({ViolationKind::speed_exceeded, keys[i].frame,
                       "segment speed " + std::to_string(speed) + " m/s exceeds limit"});
      }
    }
  }
  return out;
}

Track downsample_keyframes(const Track& t, std::int64_t stride) {
  if (stride < 1) throw InvalidParameter("downsample stride must be >= 1");
  Track out;
  out.id = t.id;
  out.cohort = t.cohort;
  for (std::size_t i = 0; i < t.keyframes.size(); i += static_cast<std::size_t>(stride)) {
    out.keyframes.push_back(t.keyframes[i]);
  }
  if (!t.keyframes.empty() && out.keyframes.back().frame != t.keyframes.back().frame) {
    out.keyframes.push_back(t.keyframes.back());
  }
  return out;
}

}  // namespace mataf
