#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mataf/geometry.hpp"
#include "mataf/tracks.hpp"

namespace mataf {

/// Per-cell head counts for one frame, row-major nrows x ncols. Positions
/// outside the grid go to the separate `outside` tally, so
/// sum(counts) + outside == number of input positions always holds.
struct CountField {
  GridSpec grid;
  std::int64_t frame = 0;
  std::vector<std::int64_t> counts;
  std::int64_t outside = 0;

  std::int64_t at(CellIndex c) const { return counts[grid.flat_index(c)]; }
  std::int64_t total_in_bounds() const;
};

CountField count_frame(const GridSpec& grid, std::span<const WorldPoint> positions,
                       std::int64_t frame = 0);

/// Local density rho(r,t) in persons/m^2, piecewise constant per cell.
struct DensityField {
  GridSpec grid;
  std::string time_label;
  std::vector<double> rho;

  double at(CellIndex c) const { return rho[grid.flat_index(c)]; }
};

/// rho = counts / cell_area.
DensityField density_field(const CountField& c);

/// Cellwise arithmetic mean. Throws GridMismatch / EmptyInput.
DensityField average_density(std::span<const DensityField> fields);

struct RadialRing {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double mean_density = 0.0;  // persons/m^2
  double area = 0.0;          // m^2
  double count = 0.0;         // persons (rho * A summed over member cells)
};

/// Ring statistics of density vs distance from the wall. Cells are assigned
/// by their center's distance; rings tile [0, max center distance].
struct RadialProfile {
  double ring_width = 5.0;
  std::vector<RadialRing> rings;
};

RadialProfile radial_profile(const DensityField& f, const SiteGeometry& geom, double ring_width);

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

struct PaletteStop {
  double min_density = 0.0;  // lowest density painted with this color
  Rgb color;
};

/// Ordered density breakpoints; a cell takes the color of the highest stop
/// with min_density <= rho. Below the first stop the cell stays unpainted.
struct Palette {
  std::vector<PaletteStop> stops;

  static Palette default_palette();
  void validate() const;  // throws BadPalette
};

/// Color index of an unpainted (zero / below-first-stop) cell.
inline constexpr int kUnpainted = -1;

/// Density map: per-cell palette indices, kUnpainted where nothing is drawn.
struct Raster {
  int nrows = 0;
  int ncols = 0;
  std::vector<int> values;  // row-major, palette index or kUnpainted
  Palette palette;
};

Raster render_density_map(const DensityField& f, const Palette& palette);

struct FlowMeasurement {
  std::string line;  // gate name
  double t0 = 0.0;
  double t1 = 0.0;
  std::int64_t crossings = 0;
  double q_line = 0.0;      // persons/second
  double q_specific = 0.0;  // persons/(meter*second)
};

/// Counts interpolated-path crossings of a gate segment in the half-open
/// time window [t0, t1); a track may cross several times. Throws UnknownGate
/// and InvalidParameter.
FlowMeasurement flow_across_line(const TrackSet& tracks, const SiteGeometry& geom,
                                 const std::string& gate, double t0, double t1, double fps);

/// 100 * (1 - sum|est-truth| / max(1, sum truth)), clamped to [0,100].
/// Throws GridMismatch.
double count_accuracy(const CountField& estimated, const CountField& truth);

}  // namespace mataf
