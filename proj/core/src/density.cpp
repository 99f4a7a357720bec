#include "mataf/density.hpp"

#include <algorithm>
#include <cmath>

namespace mataf {

std::int64_t CountField::total_in_bounds() const {
  std::int64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

CountField count_frame(const GridSpec& grid, std::span<const WorldPoint> positions,
                       std::int64_t frame) {
  grid.validate();
  CountField field;
  field.grid = grid;
  field.frame = frame;
  field.counts.assign(static_cast<std::size_t>(grid.cell_count()), 0);
  for (const WorldPoint& p : positions) {
    if (auto cell = cell_of(grid, p)) {
      ++field.counts[static_cast<std::size_t>(grid.flat_index(*cell))];
    } else {
      ++field.outside;
    }
  }
  return field;
}

DensityField density_field(const CountField& c) {
  DensityField f;
  f.grid = c.grid;
  f.rho.resize(c.counts.size());
  const double area = c.grid.cell_area();
  for (std::size_t i = 0; i < c.counts.size(); ++i) {
    f.rho[i] = static_cast<double>(c.counts[i]) / area;
  }
  return f;
}

DensityField average_density(std::span<const DensityField> fields) {
  if (fields.empty()) throw EmptyInput("average_density needs at least one field");
  const GridSpec& grid = fields.front().grid;
  for (const auto& f : fields) {
    if (!(f.grid == grid)) throw GridMismatch("density fields use different grids");
  }
  const std::size_t ncells = fields.front().rho.size();
  // Kahan accumulation keeps the mean independent of how a parallel caller
  // partitioned the fields, as long as the final reduce preserves order.
  std::vector<double> sum(ncells, 0.0), comp(ncells, 0.0);
  for (const auto& f : fields) {
    for (std::size_t i = 0; i < ncells; ++i) {
      double y = f.rho[i] - comp[i];
      double t = sum[i] + y;
      comp[i] = (t - sum[i]) - y;
      sum[i] = t;
    }
  }
  DensityField avg;
  avg.grid = grid;
  avg.time_label = "average";
  avg.rho.resize(ncells);
  for (std::size_t i = 0; i < ncells; ++i) {
    avg.rho[i] = sum[i] / static_cast<double>(fields.size());
  }
  return avg;
}

RadialProfile radial_profile(const DensityField& f, const SiteGeometry& geom, double ring_width) {
  if (!(ring_width > 0.0)) throw InvalidParameter("ring_width must be positive");
  const GridSpec& grid = f.grid;
  double max_dist = 0.0;
  for (int row = 0; row < grid.nrows; ++row) {
    for (int col = 0; col < grid.ncols; ++col) {
      max_dist = std::max(max_dist, distance_to_wall(geom, grid.cell_center({col, row})));
    }
  }
  RadialProfile profile;
  profile.ring_width = ring_width;
  auto nrings = static_cast<std::size_t>(std::floor(max_dist / ring_width)) + 1;
  profile.rings.resize(nrings);
  for (std::size_t i = 0; i < nrings; ++i) {
    profile.rings[i].r_lo = static_cast<double>(i) * ring_width;
    profile.rings[i].r_hi = static_cast<double>(i + 1) * ring_width;
  }
  const double area = grid.cell_area();
  for (int row = 0; row < grid.nrows; ++row) {
    for (int col = 0; col < grid.ncols; ++col) {
      CellIndex c{col, row};
      double d = distance_to_wall(geom, grid.cell_center(c));
      auto ring = static_cast<std::size_t>(d / ring_width);
      if (ring >= nrings) ring = nrings - 1;  // d == max_dist edge
      profile.rings[ring].count += f.at(c) * area;
      profile.rings[ring].area += area;
    }
  }
  for (auto& ring : profile.rings) {
    ring.mean_density = ring.area > 0.0 ? ring.count / ring.area : 0.0;
  }
  return profile;
}

Palette Palette::default_palette() {
  // fig-6 style density index, 1..8 persons/m^2, green through red
  Palette p;
  p.stops = {
      {1.0, {0, 160, 40}},   {2.0, {110, 200, 0}},  {3.0, {200, 220, 0}},
      {4.0, {255, 210, 0}},  {5.0, {255, 160, 0}},  {6.0, {255, 110, 0}},
      {7.0, {255, 50, 0}},   {8.0, {190, 0, 0}},
  };
  return p;
}

void Palette::validate() const {
  if (stops.empty()) throw BadPalette("palette needs at least one stop");
  if (!(stops.front().min_density > 0.0)) {
    throw BadPalette("first palette breakpoint must be above 0 (zero stays unpainted)");
  }
  for (std::size_t i = 1; i < stops.size(); ++i) {
    if (!(stops[i].min_density > stops[i - 1].min_density)) {
      throw BadPalette("palette breakpoints must be strictly increasing");
    }
  }
}

Raster render_density_map(const DensityField& f, const Palette& palette) {
  palette.validate();
  Raster r;
  r.nrows = f.grid.nrows;
  r.ncols = f.grid.ncols;
  r.palette = palette;
  r.values.resize(f.rho.size());
  for (std::size_t i = 0; i < f.rho.size(); ++i) {
    double rho = f.rho[i];
    int idx = kUnpainted;
    for (std::size_t s = 0; s < palette.stops.size(); ++s) {
      if (rho >= palette.stops[s].min_density) idx = static_cast<int>(s);
    }
    r.values[i] = idx;
  }
  return r;
}

FlowMeasurement flow_across_line(const TrackSet& tracks, const SiteGeometry& geom,
                                 const std::string& gate, double t0, double t1, double fps) {
  if (!(fps > 0.0)) throw InvalidParameter("fps must be positive");
  if (!(t1 > t0)) throw InvalidParameter("flow window must satisfy t1 > t0");
  const Segment& line = geom.gate(gate);
  if (!(line.length() > 0.0)) throw InvalidParameter("gate '" + gate + "' has zero length");

  std::int64_t crossings = 0;
  for (const Track& t : tracks) {
    for (std::size_t i = 0; i + 1 < t.keyframes.size(); ++i) {
      const Keyframe& a = t.keyframes[i];
      const Keyframe& b = t.keyframes[i + 1];
      auto hit = segment_intersection(a.pos, b.pos, line.a, line.b);
      if (!hit) continue;
      double frame = static_cast<double>(a.frame) +
                     hit->first * static_cast<double>(b.frame - a.frame);
      double time = frame / fps;
      if (time >= t0 && time < t1) ++crossings;
    }
  }

  FlowMeasurement m;
  m.line = gate;
  m.t0 = t0;
  m.t1 = t1;
  m.crossings = crossings;
  m.q_line = static_cast<double>(crossings) / (t1 - t0);
  m.q_specific = m.q_line / line.length();
  return m;
}

double count_accuracy(const CountField& estimated, const CountField& truth) {
  if (!(estimated.grid == truth.grid)) throw GridMismatch("count fields use different grids");
  std::int64_t abs_err = 0, total = 0;
  for (std::size_t i = 0; i < truth.counts.size(); ++i) {
    abs_err += std::llabs(estimated.counts[i] - truth.counts[i]);
    total += truth.counts[i];
  }
  double pct = 100.0 * (1.0 - static_cast<double>(abs_err) /
                                  static_cast<double>(std::max<std::int64_t>(1, total)));
  return std::clamp(pct, 0.0, 100.0);
}

}  // namespace mataf
