#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mataf/density.hpp"
#include "mataf/geometry.hpp"
#include "mataf/tracks.hpp"

namespace mataf {

struct CohortSpec {
  std::string label;
  Cohort cohort;
  double fraction = 1.0;
  double mu = 1.37;     // free-speed mean, m/s
  double sigma = 0.0;   // free-speed standard deviation, m/s
};

/// Band of the target wall-distance distribution: `weight` of the agents are
/// placed uniformly (in distance) within [d_lo, d_hi]. A zero-width band is
/// a point mass.
struct RadialBand {
  double d_lo = 0.0;
  double d_hi = 0.0;
  double weight = 1.0;
};

/// Density coupling v = v_free * g(rho) with the linear decline
/// g(rho) = max(0, 1 - rho/rho_max). rho_max <= 0 disables the coupling
/// (g identically 1).
struct SpeedRule {
  double rho_max = 10.0;

  double g(double rho) const {
    if (rho_max <= 0.0) return 1.0;
    double v = 1.0 - rho / rho_max;
    return v > 0.0 ? v : 0.0;
  }
};

struct TimeWindow {
  double t_start = 0.0;
  double t_end = 0.0;
};

/// Seeded circulation scenario: agents rotate counterclockwise about the
/// wall center at fixed radii drawn from the radial preference, with
/// density-coupled tangential speed and optional standstill windows.
struct Scenario {
  std::string name;
  int n_agents = 0;
  double duration_s = 60.0;
  double fps = 25.0;
  std::vector<CohortSpec> cohorts;
  std::vector<RadialBand> radial_preference;
  SpeedRule speed_rule;
  std::vector<TimeWindow> standstills;
  std::uint64_t seed = 0;
  SiteGeometry site;
  double cell_size = 5.0;

  void validate() const;  // throws InvalidScenario
};

struct AgentInfo {
  std::string track_id;
  std::string cohort_label;
  double v_free = 0.0;
};

/// Tracks with a keyframe at every frame, the per-frame count fields used to
/// drive the speed rule, and the drawn per-agent parameters. Recounting the
/// track positions reproduces `fields` exactly.
struct GroundTruth {
  TrackSet tracks;
  std::vector<CountField> fields;  // fields[k].frame == k
  std::vector<AgentInfo> agents;
  GridSpec grid;
};

/// Deterministic: identical scenarios (seed included) produce identical
/// output, independent of scheduling (per-agent pcg32 streams).
GroundTruth generate(const Scenario& s);

/// Named desk-scale scenarios: "free_flow", "prayer", "rush_hour".
/// Throws UnknownPreset.
Scenario preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace mataf
