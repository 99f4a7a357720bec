#include "mataf/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mataf {

namespace {

constexpr double kSingularTol = 1e-12;

bool finite(ImagePoint p) { return std::isfinite(p.u) && std::isfinite(p.v); }
bool finite(WorldPoint p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// translate to the centroid and scale so the RMS distance is sqrt(2)
struct Normalizer {
  double cx = 0.0, cy = 0.0, s = 1.0;

  static Normalizer fit(const std::vector<std::pair<double, double>>& pts) {
    Normalizer n;
    for (auto& [x, y] : pts) {
      n.cx += x;
      n.cy += y;
    }
    n.cx /= static_cast<double>(pts.size());
    n.cy /= static_cast<double>(pts.size());
    double sum_sq = 0.0;
    for (auto& [x, y] : pts) {
      double dx = x - n.cx, dy = y - n.cy;
      sum_sq += dx * dx + dy * dy;
    }
    double rms = std::sqrt(sum_sq / static_cast<double>(pts.size()));
    if (rms < 1e-12) throw DegenerateConfiguration("all points coincide");
    n.s = std::numbers::sqrt2 / rms;
    return n;
  }

  std::pair<double, double> apply(double x, double y) const {
    return {s * (x - cx), s * (y - cy)};
  }
};

}  // namespace

double Homography::determinant() const {
  const auto& a = m;
  return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
         a[2] * (a[3] * a[7] - a[4] * a[6]);
}

void Homography::normalize() {
  int big = 0;
  for (int i = 1; i < 9; ++i) {
    if (std::fabs(m[i]) > std::fabs(m[big])) big = i;
  }
  double pivot = m[big];
  if (pivot == 0.0) return;  // validate() reports the all-zero map
  for (double& c : m) c /= pivot;
}

void Homography::validate() const {
  double big = 0.0;
  for (double c : m) big = std::max(big, std::fabs(c));
  if (big == 0.0 || !std::isfinite(big)) throw SingularMap("homography has no finite scale");
  if (std::fabs(determinant()) / (big * big * big) <= kSingularTol) {
    throw SingularMap("homography is not invertible");
  }
}

Homography fit_homography(std::span<const PointPair> pairs) {
  const std::size_t n = pairs.size();
  if (n < 4) throw InsufficientPairs("homography fit needs at least 4 correspondences");
  for (const auto& pr : pairs) {
    if (!finite(pr.image) || !finite(pr.world)) {
      throw DegenerateConfiguration("non-finite correspondence");
    }
  }

  std::vector<std::pair<double, double>> img, wld;
  img.reserve(n);
  wld.reserve(n);
  for (const auto& pr : pairs) {
    img.emplace_back(pr.image.u, pr.image.v);
    wld.emplace_back(pr.world.x, pr.world.y);
  }
  Normalizer ti = Normalizer::fit(img);
  Normalizer tw = Normalizer::fit(wld);

  Eigen::MatrixXd a(2 * static_cast<Eigen::Index>(n), 9);
  for (std::size_t i = 0; i < n; ++i) {
    auto [u, v] = ti.apply(img[i].first, img[i].second);
    auto [x, y] = tw.apply(wld[i].first, wld[i].second);
    a.row(2 * static_cast<Eigen::Index>(i)) << u, v, 1, 0, 0, 0, -x * u, -x * v, -x;
    a.row(2 * static_cast<Eigen::Index>(i) + 1) << 0, 0, 0, u, v, 1, -y * u, -y * v, -y;
  }

  // normal equations; the fit is the eigenvector of the smallest eigenvalue
  Eigen::Matrix<double, 9, 9> m = a.transpose() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 9, 9>> eig(m);
  const auto& vals = eig.eigenvalues();  // ascending
  double scale = std::max(vals[8], 1.0);
  if (vals[1] <= 1e-10 * scale) {
    throw DegenerateConfiguration("correspondences are collinear or duplicated");
  }
  Eigen::Matrix<double, 9, 1> h = eig.eigenvectors().col(0);

  // undo the normalizations: H = Tw^-1 * Hn * Ti
  Eigen::Matrix3d hn;
  hn << h[0], h[1], h[2], h[3], h[4], h[5], h[6], h[7], h[8];
  Eigen::Matrix3d t_img, tw_inv;
  t_img << ti.s, 0, -ti.s * ti.cx, 0, ti.s, -ti.s * ti.cy, 0, 0, 1;
  tw_inv << 1.0 / tw.s, 0, tw.cx, 0, 1.0 / tw.s, tw.cy, 0, 0, 1;
  Eigen::Matrix3d full = tw_inv * hn * t_img;

  Homography result;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) result.m[r * 3 + c] = full(r, c);
  result.normalize();
  if (std::fabs(result.determinant()) <= kSingularTol) {
    throw DegenerateConfiguration("correspondences induce a singular map");
  }
  return result;
}

double rms_reprojection_error(const Homography& h, std::span<const PointPair> pairs) {
  if (pairs.empty()) return 0.0;
  double sum_sq = 0.0;
  for (const auto& pr : pairs) {
    WorldPoint w = project_to_plane(h, pr.image);
    double dx = w.x - pr.world.x, dy = w.y - pr.world.y;
    sum_sq += dx * dx + dy * dy;
  }
  return std::sqrt(sum_sq / static_cast<double>(pairs.size()));
}

WorldPoint project_to_plane(const Homography& h, ImagePoint p) {
  const auto& m = h.m;
  double x = m[0] * p.u + m[1] * p.v + m[2];
  double y = m[3] * p.u + m[4] * p.v + m[5];
  double w = m[6] * p.u + m[7] * p.v + m[8];
  if (std::fabs(w) <= kSingularTol) {
    throw PointAtInfinity("pixel maps to infinity (near the horizon line)");
  }
  return {x / w, y / w};
}

Homography invert(const Homography& h) {
  h.validate();
  const auto& a = h.m;
  double det = h.determinant();
  Homography out;
  out.m = {
      a[4] * a[8] - a[5] * a[7], a[2] * a[7] - a[1] * a[8], a[1] * a[5] - a[2] * a[4],
      a[5] * a[6] - a[3] * a[8], a[0] * a[8] - a[2] * a[6], a[2] * a[3] - a[0] * a[5],
      a[3] * a[7] - a[4] * a[6], a[1] * a[6] - a[0] * a[7], a[0] * a[4] - a[1] * a[3],
  };
  for (double& c : out.m) c /= det;
  out.normalize();
  return out;
}

void GridSpec::validate() const {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw InvalidParameter("grid cell_size must be positive");
  }
  if (ncols < 1 || nrows < 1) throw InvalidParameter("grid must have at least one cell");
}

std::optional<CellIndex> cell_of(const GridSpec& grid, WorldPoint p) {
  double fx = std::floor((p.x - grid.origin.x) / grid.cell_size);
  double fy = std::floor((p.y - grid.origin.y) / grid.cell_size);
  if (!std::isfinite(fx) || !std::isfinite(fy)) return std::nullopt;
  if (fx < 0.0 || fy < 0.0 || fx >= grid.ncols || fy >= grid.nrows) return std::nullopt;
  return CellIndex{static_cast<int>(fx), static_cast<int>(fy)};
}

void SiteGeometry::validate() const {
  if (!(wall_radius > 0.0)) throw InvalidParameter("wall_radius must be positive");
  if (!(bounds.width > 0.0) || !(bounds.height > 0.0)) {
    throw InvalidParameter("site bounds must have positive extent");
  }
  if (wall_center.x - wall_radius < bounds.min.x ||
      wall_center.x + wall_radius > bounds.min.x + bounds.width ||
      wall_center.y - wall_radius < bounds.min.y ||
      wall_center.y + wall_radius > bounds.min.y + bounds.height) {
    throw InvalidParameter("wall circle must lie within the site bounds");
  }
  for (const auto& [name, gate] : gates) {
    if (!(gate.length() > 0.0)) throw InvalidParameter("gate '" + name + "' has zero length");
  }
}

GridSpec SiteGeometry::make_grid(double cell_size) const {
  if (!(cell_size > 0.0)) throw InvalidParameter("cell_size must be positive");
  GridSpec g;
  g.origin = bounds.min;
  g.cell_size = cell_size;
  g.ncols = std::max(1, static_cast<int>(std::ceil(bounds.width / cell_size - 1e-9)));
  g.nrows = std::max(1, static_cast<int>(std::ceil(bounds.height / cell_size - 1e-9)));
  return g;
}

const Segment& SiteGeometry::gate(const std::string& name) const {
  auto it = gates.find(name);
  if (it == gates.end()) throw UnknownGate("gate '" + name + "' is not defined in the site");
  return it->second;
}

double distance_to_wall(const SiteGeometry& geom, WorldPoint p) {
  return std::max(0.0, distance(p, geom.wall_center) - geom.wall_radius);
}

std::optional<std::pair<double, WorldPoint>> segment_intersection(WorldPoint a0, WorldPoint a1,
                                                                  WorldPoint b0, WorldPoint b1) {
  double rx = a1.x - a0.x, ry = a1.y - a0.y;
  double sx = b1.x - b0.x, sy = b1.y - b0.y;
  double denom = rx * sy - ry * sx;
  double scale = std::hypot(rx, ry) * std::hypot(sx, sy);
  if (scale == 0.0 || std::fabs(denom) < 1e-12 * scale) return std::nullopt;
  double qx = b0.x - a0.x, qy = b0.y - a0.y;
  double t = (qx * sy - qy * sx) / denom;
  double u = (qx * ry - qy * rx) / denom;
  if (t < 0.0 || t >= 1.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return std::make_pair(t, WorldPoint{a0.x + t * rx, a0.y + t * ry});
}

}  // namespace mataf
