#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mataf/analytics.hpp"
#include "mataf/density.hpp"
#include "mataf/geometry.hpp"
#include "mataf/synth.hpp"
#include "mataf/tracks.hpp"

namespace mataf::io {

/// Current file-format version written into every JSON artifact. Readers
/// reject files whose major version differs.
inline constexpr const char* kFormatVersion = "1.0";

/// Shortest round-trip decimal form, locale-free ('.' separator).
std::string format_double(double v);

/// Locale-free strtod replacement; throws FormatError on garbage.
double parse_double(const std::string& s);

// --- tracks ----------------------------------------------------------------
// CSV `track_id,frame,x,y,space` with space in {image, world}; an optional
// trailing `tags` column is accepted and ignored. Image-space rows are
// projected at load time through the supplied homography.

void write_tracks_csv(const std::filesystem::path& path, const TrackSet& tracks);
TrackSet read_tracks_csv(const std::filesystem::path& path,
                         const Homography* image_to_world = nullptr);

// --- cohorts ---------------------------------------------------------------
// CSV `track_id,sex,age_class,mobility,group_size`.

void write_cohorts_csv(const std::filesystem::path& path, const TrackSet& tracks);
void apply_cohorts_csv(const std::filesystem::path& path, TrackSet& tracks);

// --- calibration -----------------------------------------------------------

std::vector<PointPair> read_calibration_pairs_json(const std::filesystem::path& path);
void write_homography_json(const std::filesystem::path& path, const Homography& h,
                           double rms_error_m);
Homography read_homography_json(const std::filesystem::path& path);

// --- site ------------------------------------------------------------------

SiteGeometry read_site_json(const std::filesystem::path& path);
void write_site_json(const std::filesystem::path& path, const SiteGeometry& site);

// --- density fields --------------------------------------------------------
// CSV matrix (nrows lines of ncols values, row 0 at the grid origin) plus a
// JSON sidecar carrying the grid spec, time label and numeric time.

void write_density_field(const std::filesystem::path& csv_path,
                         const std::filesystem::path& sidecar_path, const DensityField& field,
                         double time_s, std::int64_t frame);
TimedDensityField read_density_field(const std::filesystem::path& csv_path,
                                     const std::filesystem::path& sidecar_path);

// --- raster ----------------------------------------------------------------
// Plain-text portable pixmap (P3), top raster row = highest y. Unpainted
// cells take the background color.

void write_ppm(const std::filesystem::path& path, const Raster& raster,
               Rgb background = {255, 255, 255});

// --- reports ---------------------------------------------------------------

void write_flow_csv(const std::filesystem::path& path, std::span<const FlowMeasurement> flows);
void write_fd_csv(const std::filesystem::path& path, const FundamentalDiagram& fd);
void write_reference_delta_csv(const std::filesystem::path& path,
                               std::span<const ReferenceDelta> deltas);
std::vector<RefPoint> read_reference_csv(const std::filesystem::path& path);
void write_cohort_stats_csv(const std::filesystem::path& path,
                            std::span<const CohortStats> stats);
void write_radial_profile_csv(const std::filesystem::path& path, const RadialProfile& profile);
void write_timeseries_csv(const std::filesystem::path& path, const TimeSeries& series);
void write_standstills_csv(const std::filesystem::path& path, const TimeSeries& series);
void write_oscillation_csv(const std::filesystem::path& path,
                           std::span<const std::pair<std::string, double>> rms_per_track);
void write_edge_report_json(const std::filesystem::path& path, const EdgeEffectReport& report);

// --- scenario --------------------------------------------------------------

Scenario read_scenario_json(const std::filesystem::path& path);
void write_scenario_json(const std::filesystem::path& path, const Scenario& scenario);

}  // namespace mataf::io
