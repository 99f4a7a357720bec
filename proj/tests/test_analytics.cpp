#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "mataf/analytics.hpp"
#include "mataf/rng.hpp"

using namespace mataf;

namespace {

SiteGeometry origin_site() {
  SiteGeometry geom;
  geom.wall_center = {0, 0};
  geom.wall_radius = 10.0;
  geom.bounds = {{-60, -60}, 120, 120};
  return geom;
}

Track two_key_track(std::string id, WorldPoint a, WorldPoint b, std::int64_t frames = 25) {
  Track t;
  t.id = std::move(id);
  t.keyframes = {{0, a}, {frames, b}};
  return t;
}

double speed_rule(double rho) { return 1.37 * std::max(0.0, 1.0 - rho / 10.0); }

}  // namespace

TEST_CASE("fit_normal: degenerate and tiny samples") {
  std::vector<double> same(20, 1.37);
  auto s = fit_normal(same, "male");
  CHECK(s.mu == doctest::Approx(1.37));
  CHECK(s.sigma == 0.0);
  CHECK(s.p85_exceeded == doctest::Approx(1.37));
  CHECK(s.n == 20);
  CHECK(s.cohort == "male");

  std::vector<double> tiny{1.0, 2.0, 3.0};
  auto t = fit_normal(tiny);
  CHECK(t.mu == doctest::Approx(2.0));
  CHECK(t.sigma == doctest::Approx(1.0));
  // 15th percentile by linear interpolation: 0.15 * (3-1) = 0.3 into [1,2]
  CHECK(t.p85_exceeded == doctest::Approx(1.3));

  std::vector<double> one{1.0};
  CHECK_THROWS_AS(fit_normal(one), TooFewSamples);
}

TEST_CASE("fit_normal recovers the female walking-speed parameters from seeded draws") {
  Pcg32 rng(7331, 0);
  std::vector<double> samples;
  samples.reserve(1000);
  for (int i = 0; i < 1000; ++i) samples.push_back(rng.next_normal(1.22, 0.106));
  auto s = fit_normal(samples, "female");
  CHECK(std::fabs(s.mu - 1.22) < 0.02);
  CHECK(std::fabs(s.sigma - 0.106) < 0.01);
}

TEST_CASE("fit_normal: shift and scale equivariance") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.4, 2.2);
  std::vector<double> base;
  for (int i = 0; i < 200; ++i) base.push_back(u(gen));
  auto s0 = fit_normal(base);

  std::vector<double> shifted, scaled;
  const double c = 0.77, k = 3.5;
  for (double x : base) {
    shifted.push_back(x + c);
    scaled.push_back(k * x);
  }
  auto s1 = fit_normal(shifted);
  auto s2 = fit_normal(scaled);
  CHECK(std::fabs(s1.mu - (s0.mu + c)) < 1e-12);
  CHECK(std::fabs(s1.sigma - s0.sigma) < 1e-12);
  CHECK(std::fabs(s2.mu - k * s0.mu) < 1e-12);
  CHECK(std::fabs(s2.sigma - k * s0.sigma) < 1e-12);
}

TEST_CASE("fundamental_diagram: free-flow speeds collapse into the first bin") {
  GridSpec grid{{0, 0}, 5.0, 10, 1};
  DensityField zero;
  zero.grid = grid;
  zero.rho.assign(10, 0.0);
  std::vector<TimedDensityField> fields;
  fields.push_back({0.0, zero});

  TrackSet tracks;
  for (int j = 0; j < 4; ++j) {
    tracks.push_back(two_key_track("f" + std::to_string(j),
                                   {5.0 * j + 1.0, 2.5}, {5.0 * j + 2.38, 2.5}));
  }
  auto fd = fundamental_diagram(tracks, fields, 25.0, 0.5, 1);
  REQUIRE(fd.bins.size() == 1);
  CHECK(fd.bins[0].rho_lo == 0.0);
  CHECK(fd.bins[0].mean_speed == doctest::Approx(1.38));
  CHECK(fd.bins[0].n == 4);
  CHECK(fd.dropped == 0);
}

TEST_CASE("fundamental_diagram reproduces a prescribed speed-density rule") {
  // one cell per density level, one track per cell moving at rule(rho)
  GridSpec grid{{0, 0}, 5.0, 10, 1};
  DensityField f;
  f.grid = grid;
  for (int j = 0; j < 10; ++j) f.rho.push_back(static_cast<double>(j));
  std::vector<TimedDensityField> fields;
  fields.push_back({0.0, f});

  TrackSet tracks;
  for (int j = 0; j < 10; ++j) {
    double v = speed_rule(f.rho[static_cast<std::size_t>(j)]);
    tracks.push_back(
        two_key_track("r" + std::to_string(j), {5.0 * j + 1.0, 2.5}, {5.0 * j + 1.0 + v, 2.5}));
  }
  auto fd = fundamental_diagram(tracks, fields, 25.0, 0.5, 1);

  CHECK(fd.total_samples == 10);
  CHECK(fd.dropped == 0);
  std::int64_t binned = 0;
  for (const auto& bin : fd.bins) binned += bin.n;
  CHECK(binned + fd.dropped == fd.total_samples);

  double last_speed = std::numeric_limits<double>::infinity();
  for (const auto& bin : fd.bins) {
    if (bin.n == 0) continue;
    CHECK(bin.mean_speed == doctest::Approx(speed_rule(bin.mean_rho)).epsilon(1e-9));
    CHECK(bin.mean_speed <= last_speed + 1e-12);
    last_speed = bin.mean_speed;
  }
  // the bin holding rho = 5 sits within 5% of the rule there
  const auto& bin5 = fd.bins[static_cast<std::size_t>(5.0 / 0.5)];
  CHECK(bin5.n == 1);
  CHECK(std::fabs(bin5.mean_speed - 0.685) / 0.685 < 0.05);
}

TEST_CASE("fundamental_diagram: weighted bin mean equals the global included mean") {
  GridSpec grid{{0, 0}, 5.0, 10, 1};
  DensityField f;
  f.grid = grid;
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> rho(0.0, 9.5), sp(0.1, 2.0), off(1.0, 3.5);
  for (int j = 0; j < 10; ++j) f.rho.push_back(rho(gen));
  std::vector<TimedDensityField> fields;
  fields.push_back({0.0, f});

  TrackSet tracks;
  double total_speed = 0.0;
  int n = 0;
  for (int rep = 0; rep < 8; ++rep) {
    for (int j = 0; j < 10; ++j) {
      double v = sp(gen);
      double x0 = 5.0 * j + off(gen) * 0.2;
      tracks.push_back(two_key_track("w" + std::to_string(rep * 10 + j), {x0, 2.5},
                                     {x0 + v, 2.5}));
      total_speed += v;
      ++n;
    }
  }
  auto fd = fundamental_diagram(tracks, fields, 25.0, 0.5, 10);
  double weighted = 0.0;
  std::int64_t wn = 0;
  for (const auto& bin : fd.bins) {
    weighted += bin.mean_speed * static_cast<double>(bin.n);
    wn += bin.n;
  }
  REQUIRE(wn == n);
  CHECK(std::fabs(weighted / static_cast<double>(wn) - total_speed / n) < 1e-9);
}

TEST_CASE("fundamental_diagram: nearest field time wins") {
  GridSpec grid{{0, 0}, 5.0, 1, 1};
  DensityField early, late;
  early.grid = late.grid = grid;
  early.rho = {2.0};
  late.rho = {7.0};
  std::vector<TimedDensityField> fields;
  fields.push_back({0.0, early});
  fields.push_back({10.0, late});

  Track a;  // mid-frame 50 -> t = 2 s -> early field
  a.id = "a";
  a.keyframes = {{25, {1.0, 2.5}}, {75, {2.0, 2.5}}};
  Track b;  // mid-frame 225 -> t = 9 s -> late field
  b.id = "b";
  b.keyframes = {{200, {1.0, 2.5}}, {250, {2.0, 2.5}}};

  auto fd = fundamental_diagram({a, b}, fields, 25.0, 1.0, 1);
  std::vector<double> occupied;
  for (const auto& bin : fd.bins) {
    if (bin.n > 0) occupied.push_back(bin.mean_rho);
  }
  REQUIRE(occupied.size() == 2);
  CHECK(occupied[0] == doctest::Approx(2.0));
  CHECK(occupied[1] == doctest::Approx(7.0));
}

TEST_CASE("fundamental_diagram: samples outside the grid are dropped and counted") {
  GridSpec grid{{0, 0}, 5.0, 1, 1};
  DensityField f;
  f.grid = grid;
  f.rho = {1.0};
  std::vector<TimedDensityField> fields;
  fields.push_back({0.0, f});
  TrackSet tracks{two_key_track("in", {1.0, 2.5}, {2.0, 2.5}),
                  two_key_track("out", {50.0, 50.0}, {51.0, 50.0})};
  auto fd = fundamental_diagram(tracks, fields, 25.0, 0.5, 1);
  CHECK(fd.dropped == 1);
  CHECK(fd.total_samples == 2);
}

TEST_CASE("fundamental_diagram: error cases") {
  GridSpec grid{{0, 0}, 5.0, 1, 1};
  DensityField f;
  f.grid = grid;
  f.rho = {1.0};
  std::vector<TimedDensityField> fields;
  fields.push_back({0.0, f});
  CHECK_THROWS_AS(fundamental_diagram({}, fields, 25.0, 0.5, 10), NoOverlap);
  TrackSet tracks{two_key_track("t", {1.0, 2.5}, {2.0, 2.5})};
  CHECK_THROWS_AS(fundamental_diagram(tracks, {}, 25.0, 0.5, 10), NoOverlap);
  CHECK_THROWS_AS(fundamental_diagram(tracks, fields, 25.0, 0.0, 10), InvalidParameter);
}

TEST_CASE("compare_reference: zero deltas against itself and constant offsets") {
  FundamentalDiagram fd;
  fd.bin_width = 1.0;
  fd.min_bin_n = 1;
  fd.bins = {{0, 1, 0.5, 1.30, 40, false},
             {1, 2, 1.5, 1.05, 40, false},
             {2, 3, 2.5, 0.80, 40, false}};

  std::vector<RefPoint> self{{0.5, 1.30}, {1.5, 1.05}, {2.5, 0.80}};
  for (const auto& d : compare_reference(fd, self)) {
    CHECK(std::fabs(d.delta) < 1e-12);
  }

  std::vector<RefPoint> flat{{0.0, 1.0}, {10.0, 1.0}};
  FundamentalDiagram one;
  one.bins = {{0, 1, 0.5, 1.2, 40, false}};
  auto deltas = compare_reference(one, flat);
  REQUIRE(deltas.size() == 1);
  CHECK(deltas[0].delta == doctest::Approx(0.2));
}

TEST_CASE("compare_reference: interpolation matches the two-point oracle and clamps") {
  std::vector<RefPoint> ref{{0.0, 1.4}, {2.0, 1.0}, {5.0, 0.3}, {8.0, 0.05}};
  auto interp = [&](double rho) {
    if (rho <= ref.front().rho) return ref.front().v;
    if (rho >= ref.back().rho) return ref.back().v;
    for (std::size_t i = 1; i < ref.size(); ++i) {
      if (rho <= ref[i].rho) {
        double a = (rho - ref[i - 1].rho) / (ref[i].rho - ref[i - 1].rho);
        return ref[i - 1].v + a * (ref[i].v - ref[i - 1].v);
      }
    }
    return ref.back().v;
  };

  FundamentalDiagram fd;
  fd.bins = {{0, 1, 1.0, 1.0, 40, false},
             {3, 4, 3.5, 0.6, 40, false},
             {9, 10, 9.0, 0.1, 40, false},   // beyond the last knot: clamped
             {4, 5, 4.5, 0.4, 2, true}};     // sparse: skipped
  auto deltas = compare_reference(fd, ref);
  REQUIRE(deltas.size() == 3);
  CHECK(deltas[0].v_ref == doctest::Approx(interp(1.0)));
  CHECK(deltas[1].v_ref == doctest::Approx(interp(3.5)));
  CHECK(deltas[2].v_ref == doctest::Approx(0.05));
  for (const auto& d : deltas) {
    CHECK(d.delta == doctest::Approx(d.v_measured - d.v_ref));
  }

  CHECK_THROWS_AS(compare_reference(fd, {}), EmptyReference);
  std::vector<RefPoint> bad{{1.0, 1.0}, {1.0, 0.9}};
  CHECK_THROWS_AS(compare_reference(fd, bad), InvalidParameter);
}

TEST_CASE("edge_center_contrast echoes the paper fixture exactly") {
  auto geom = origin_site();
  TrackSet tracks;
  // inner ring samples at wall distance ~2 m, speed exactly 0.3267
  tracks.push_back(two_key_track("i1", {12, 0}, {12, 0.3267}));
  tracks.push_back(two_key_track("i2", {0, 12}, {0.3267, 12}));
  // outer ring samples at wall distance ~35 m, speed exactly 1.0816
  tracks.push_back(two_key_track("o1", {45, 0}, {45, 1.0816}));
  tracks.push_back(two_key_track("o2", {0, 45}, {1.0816, 45}));

  auto report = edge_center_contrast(tracks, geom, 25.0, {0, 10}, {30, 40});
  CHECK(report.mean_speed_inner == 0.3267);
  CHECK(report.mean_speed_outer == 1.0816);
  CHECK(report.ratio == doctest::Approx(3.3107).epsilon(1e-3));
  CHECK(report.edge_effect_present);
  CHECK(report.n_inner == 2);
  CHECK(report.n_outer == 2);
}

TEST_CASE("edge_center_contrast: identical speeds mean no edge effect") {
  auto geom = origin_site();
  TrackSet tracks;
  tracks.push_back(two_key_track("i", {12, 0}, {12, 1.0}));
  tracks.push_back(two_key_track("o", {45, 0}, {45, 1.0}));
  auto report = edge_center_contrast(tracks, geom, 25.0, {0, 10}, {30, 40});
  CHECK(report.ratio == doctest::Approx(1.0));
  CHECK_FALSE(report.edge_effect_present);
}

TEST_CASE("edge_center_contrast: faster ring is invariant under speed scaling") {
  auto geom = origin_site();
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> sp(0.2, 1.8);
  TrackSet tracks;
  for (int i = 0; i < 6; ++i) {
    tracks.push_back(
        two_key_track("i" + std::to_string(i), {12.0 + 0.1 * i, 0}, {12.0 + 0.1 * i, sp(gen)}));
    tracks.push_back(
        two_key_track("o" + std::to_string(i), {45.0 + 0.1 * i, 0}, {45.0 + 0.1 * i, sp(gen)}));
  }
  auto base = edge_center_contrast(tracks, geom, 25.0, {0, 10}, {30, 40});
  TrackSet scaled = tracks;
  for (auto& t : scaled) {
    for (auto& k : t.keyframes) k.pos.y *= 2.7;  // scales every speed by 2.7
  }
  auto big = edge_center_contrast(scaled, geom, 25.0, {0, 10}, {30, 40});
  CHECK((base.mean_speed_outer > base.mean_speed_inner) ==
        (big.mean_speed_outer > big.mean_speed_inner));

  SUBCASE("empty ring throws") {
    CHECK_THROWS_AS(edge_center_contrast(tracks, geom, 25.0, {0, 10}, {48, 49}), EmptyRing);
  }
  SUBCASE("rings must be disjoint, inner first") {
    CHECK_THROWS_AS(edge_center_contrast(tracks, geom, 25.0, {0, 31}, {30, 40}),
                    InvalidParameter);
    CHECK_THROWS_AS(edge_center_contrast(tracks, geom, 25.0, {30, 40}, {0, 10}),
                    InvalidParameter);
  }
}

TEST_CASE("oscillation_metric: perfect circle has zero oscillation") {
  auto geom = origin_site();
  Track t;
  t.id = "circle";
  for (int k = 0; k < 400; ++k) {
    double ang = 2.0 * std::numbers::pi * k / 200.0;
    t.keyframes.push_back({k, {15.0 * std::cos(ang), 15.0 * std::sin(ang)}});
  }
  CHECK(oscillation_metric(t, geom, 9) < 1e-9);
}

TEST_CASE("oscillation_metric: sinusoidal radial wobble recovers amplitude/sqrt(2)") {
  auto geom = origin_site();
  Track t;
  t.id = "wobble";
  const double amp = 0.5, period = 20.0;
  for (int k = 0; k < 2000; ++k) {
    double ang = 2.0 * std::numbers::pi * k / 500.0;
    double r = geom.wall_radius + 10.0 + amp * std::sin(2.0 * std::numbers::pi * k / period);
    t.keyframes.push_back({k, {r * std::cos(ang), r * std::sin(ang)}});
  }
  double rms = oscillation_metric(t, geom, 101);
  const double expect = amp / std::numbers::sqrt2;
  CHECK(std::fabs(rms - expect) / expect < 0.05);
}

TEST_CASE("oscillation_metric: linear radial drift is removed") {
  auto geom = origin_site();
  Track t;
  t.id = "drift";
  for (int k = 0; k < 500; ++k) {
    t.keyframes.push_back({k, {geom.wall_radius + 10.0 + 0.01 * k, 0.0}});
  }
  CHECK(oscillation_metric(t, geom, 21) < 1e-9);
}

TEST_CASE("oscillation_metric: rotation and frame-relabel invariance") {
  auto geom = origin_site();
  Track t;
  t.id = "base";
  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> wob(-0.4, 0.4);
  for (int k = 0; k < 300; ++k) {
    double ang = 2.0 * std::numbers::pi * k / 150.0;
    double r = 18.0 + wob(gen);
    t.keyframes.push_back({k, {r * std::cos(ang), r * std::sin(ang)}});
  }
  double base = oscillation_metric(t, geom, 15);

  const double phi = 1.234;
  Track rot = t;
  for (auto& k : rot.keyframes) {
    double x = k.pos.x * std::cos(phi) - k.pos.y * std::sin(phi);
    double y = k.pos.x * std::sin(phi) + k.pos.y * std::cos(phi);
    k.pos = {x, y};
  }
  CHECK(oscillation_metric(rot, geom, 15) == doctest::Approx(base).epsilon(1e-9));

  Track relabel = t;
  for (auto& k : relabel.keyframes) k.frame = k.frame * 25 + 1000;
  CHECK(oscillation_metric(relabel, geom, 15) == doctest::Approx(base).epsilon(1e-12));

  SUBCASE("window validation") {
    CHECK_THROWS_AS(oscillation_metric(t, geom, 4), InvalidParameter);
    CHECK_THROWS_AS(oscillation_metric(t, geom, 1), InvalidParameter);
    Track tiny;
    tiny.id = "tiny";
    for (int k = 0; k < 5; ++k) tiny.keyframes.push_back({k, {15.0 + k, 0}});
    CHECK_THROWS_AS(oscillation_metric(tiny, geom, 7), TooFewKeyframes);
  }
}

namespace {

// piecewise-constant motion: moving at 1.25 m/s except inside frozen spans
TrackSet stuttering_tracks(const std::vector<std::pair<std::int64_t, std::int64_t>>& frozen,
                           std::int64_t n_frames) {
  TrackSet tracks;
  Track t;
  t.id = "walker";
  double x = 0.0;
  for (std::int64_t f = 0; f <= n_frames; f += 25) {
    t.keyframes.push_back({f, {x, 0.0}});
    bool is_frozen = false;
    for (auto [a, b] : frozen) {
      if (f >= a && f < b) is_frozen = true;
    }
    if (!is_frozen) x += 1.25;  // 1.25 m per 25-frame second
  }
  tracks.push_back(t);
  return tracks;
}

}  // namespace

TEST_CASE("mean_speed_timeseries: a frozen span becomes one standstill") {
  auto tracks = stuttering_tracks({{1000, 2000}}, 3000);
  auto series = mean_speed_timeseries(tracks, 25.0, 10.0, 0.05);
  REQUIRE(series.standstills.size() == 1);
  CHECK(series.standstills[0].t_start == doctest::Approx(40.0));
  CHECK(series.standstills[0].t_end == doctest::Approx(80.0));
  for (const auto& p : series.points) {
    if (p.t_mid > 40.0 && p.t_mid < 80.0) CHECK(p.mean_speed == doctest::Approx(0.0));
    if (p.t_mid < 39.0 || p.t_mid > 81.0) CHECK(p.mean_speed == doctest::Approx(1.25));
  }
}

TEST_CASE("mean_speed_timeseries: constant stream has no standstills") {
  auto tracks = stuttering_tracks({}, 2000);
  auto series = mean_speed_timeseries(tracks, 25.0, 10.0, 0.05);
  CHECK(series.standstills.empty());
  for (const auto& p : series.points) CHECK(p.mean_speed == doctest::Approx(1.25));
}

TEST_CASE("mean_speed_timeseries: two frozen spans stay disjoint") {
  auto tracks = stuttering_tracks({{1000, 2000}, {2500, 3000}}, 3500);
  auto series = mean_speed_timeseries(tracks, 25.0, 10.0, 0.05);
  REQUIRE(series.standstills.size() == 2);
  CHECK(series.standstills[0].t_start == doctest::Approx(40.0));
  CHECK(series.standstills[0].t_end == doctest::Approx(80.0));
  CHECK(series.standstills[1].t_start == doctest::Approx(100.0));
  CHECK(series.standstills[1].t_end == doctest::Approx(120.0));
  CHECK(series.standstills[0].t_end <= series.standstills[1].t_start);
}

TEST_CASE("mean_speed_timeseries: empty input yields an empty series") {
  auto series = mean_speed_timeseries({}, 25.0, 10.0, 0.05);
  CHECK(series.points.empty());
  CHECK(series.standstills.empty());
  CHECK_THROWS_AS(mean_speed_timeseries({}, 25.0, 0.0, 0.05), InvalidParameter);
}
