#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mataf/errors.hpp"

namespace mataf {

struct ImagePoint {
  double u = 0.0;
  double v = 0.0;
};

/// Ground-plane coordinates in meters: x east, y north, origin at the
/// south-west corner of the site bounds.
struct WorldPoint {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const WorldPoint&) const = default;
};

inline double distance(WorldPoint a, WorldPoint b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Plane-to-plane projective map, row-major 3x3, defined up to scale.
/// All factory paths normalize so the largest-magnitude coefficient is 1.
struct Homography {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  static Homography identity() { return Homography{}; }

  double determinant() const;

  /// Rescales so the largest-magnitude coefficient equals 1.
  void normalize();

  /// Throws SingularMap if the normalized matrix is not invertible
  /// (|det| <= 1e-12).
  void validate() const;
};

struct PointPair {
  ImagePoint image;
  WorldPoint world;
};

/// Least-squares projective fit from >= 4 correspondences (DLT with
/// Hartley normalization; normal equations for the overdetermined case).
/// Exact for 4 points in general position.
Homography fit_homography(std::span<const PointPair> pairs);

/// RMS distance in meters between mapped image points and their world points.
double rms_reprojection_error(const Homography& h, std::span<const PointPair> pairs);

/// Applies the map; throws PointAtInfinity when the homogeneous scale
/// |w| <= 1e-12 (pixel maps near the horizon).
WorldPoint project_to_plane(const Homography& h, ImagePoint p);

/// Inverse map, normalized. Throws SingularMap.
Homography invert(const Homography& h);

struct CellIndex {
  int col = 0;
  int row = 0;
  bool operator==(const CellIndex&) const = default;
};

/// Regular cell grid over the walking plane. Cells are half-open squares:
/// cell (c,r) covers [origin.x + c*s, origin.x + (c+1)*s) x [.. y ..).
struct GridSpec {
  WorldPoint origin;
  double cell_size = 5.0;
  int ncols = 1;
  int nrows = 1;

  double cell_area() const { return cell_size * cell_size; }
  int cell_count() const { return ncols * nrows; }
  int flat_index(CellIndex c) const { return c.row * ncols + c.col; }
  WorldPoint cell_center(CellIndex c) const {
    return {origin.x + (c.col + 0.5) * cell_size, origin.y + (c.row + 0.5) * cell_size};
  }
  bool operator==(const GridSpec&) const = default;

  void validate() const;
};

/// Half-open cell membership; nullopt means outside the grid.
std::optional<CellIndex> cell_of(const GridSpec& grid, WorldPoint p);

struct Segment {
  WorldPoint a;
  WorldPoint b;
  double length() const { return distance(a, b); }
};

struct Bounds {
  WorldPoint min;
  double width = 105.0;
  double height = 154.0;

  bool contains(WorldPoint p) const {
    return p.x >= min.x && p.x < min.x + width && p.y >= min.y && p.y < min.y + height;
  }
};

/// Site model: the wall idealized as a circle, the rectangular bounds of the
/// walking area, plus named landmarks and gate segments.
struct SiteGeometry {
  WorldPoint wall_center{52.5, 77.0};
  double wall_radius = 10.0;
  Bounds bounds{{0.0, 0.0}, 105.0, 154.0};
  std::map<std::string, WorldPoint> landmarks;
  std::map<std::string, Segment> gates;

  void validate() const;

  /// Grid covering the bounds with the given cell size (last row/column may
  /// overhang the bounds).
  GridSpec make_grid(double cell_size) const;

  const Segment& gate(const std::string& name) const;
};

/// Distance from the wall circle, clamped to 0 inside/on the wall.
double distance_to_wall(const SiteGeometry& geom, WorldPoint p);

/// Intersection of segments [a0,a1] and [b0,b1]. Returns the parameter t
/// along [a0,a1) (half-open at t=1 so chained segments count a shared
/// endpoint once) and the intersection point. Parallel or collinear
/// segments yield nullopt.
std::optional<std::pair<double, WorldPoint>> segment_intersection(WorldPoint a0, WorldPoint a1,
                                                                  WorldPoint b0, WorldPoint b1);

}  // namespace mataf
