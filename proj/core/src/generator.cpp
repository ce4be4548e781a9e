#include "darpcf/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace darpcf {

namespace {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

void check(const GeneratorConfig& cfg) {
  if (cfg.pairs_morning.empty() || cfg.pairs_full_day.empty() || cfg.chronic_fraction.empty() ||
      cfg.release_lead_minutes.empty()) {
    throw ConfigError("generator range is empty");
  }
  if (cfg.pairs_morning.lo < 0 || cfg.pairs_full_day.lo < 0) {
    throw ConfigError("pair count must be non-negative");
  }
  auto share = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!share(cfg.chronic_fraction.lo) || !share(cfg.chronic_fraction.hi) ||
      !share(cfg.near_hub_share) || !share(cfg.local_gp_share)) {
    throw ConfigError("shares must lie in [0, 1]");
  }
  if (cfg.hubs < 1 || cfg.gps < 1) throw ConfigError("need at least one hub and one GP");
  if (cfg.speed_kmh <= 0.0 || cfg.region_km <= 0.0) throw ConfigError("speed and region must be positive");
  if (cfg.appointment_step <= 0) throw ConfigError("appointment step must be positive");
}

double round_to_metre(double km) { return std::round(km * 1000.0) / 1000.0; }

Seconds travel_seconds(Point a, Point b, double speed_kmh) {
  const double km = std::hypot(a.x - b.x, a.y - b.y);
  // The tiny offset keeps exact integers from rounding up on noise.
  return static_cast<Seconds>(std::ceil(km / speed_kmh * 3600.0 - 1e-9));
}

}  // namespace

Instance generate_instance(const GeneratorConfig& cfg) {
  check(cfg);
  std::mt19937_64 rng(cfg.seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](double p) { return uniform(0.0, 1.0) < p; };
  std::normal_distribution<double> normal(0.0, 1.0);

  bool afternoon = cfg.layout == SessionLayout::full_day;
  if (cfg.layout == SessionLayout::mixed) afternoon = chance(0.5);
  const auto pairs = afternoon ? cfg.pairs_full_day : cfg.pairs_morning;
  const int n = pick(pairs.lo, pairs.hi);

  Instance inst;
  inst.name = "synthetic-" + std::to_string(cfg.seed);
  inst.service = cfg.service;
  inst.fleet = cfg.fleet;
  inst.fleet.sessions = {cfg.morning};
  if (afternoon) inst.fleet.sessions.push_back(cfg.afternoon);
  inst.fleet.day_start = 0;
  inst.fleet.max_route_duration =
      inst.fleet.sessions.back().latest + cfg.service.gp_stay + cfg.service.max_window + 3600;
  inst.fleet.depot = 0;

  // Hubs spread over the region, roads joining consecutive hubs.
  std::vector<Point> hubs;
  for (int h = 0; h < cfg.hubs; ++h) {
    hubs.push_back({uniform(0.15, 0.85) * cfg.region_km, uniform(0.15, 0.85) * cfg.region_km});
  }
  std::vector<std::pair<Point, Point>> roads;
  for (int h = 0; h + 1 < cfg.hubs; ++h) roads.emplace_back(hubs[h], hubs[h + 1]);
  if (roads.empty()) {
    roads.emplace_back(hubs[0], Point{hubs[0].x + cfg.region_km / 3.0, hubs[0].y});
  }
  auto jitter = [&](Point p, double sd) {
    return Point{round_to_metre(p.x + sd * normal(rng)), round_to_metre(p.y + sd * normal(rng))};
  };

  std::vector<Point> points{jitter(hubs[0], 0.0)};
  std::vector<int> gp_hub;
  for (int g = 0; g < cfg.gps; ++g) {
    gp_hub.push_back(g % cfg.hubs);
    points.push_back(jitter(hubs[static_cast<std::size_t>(g % cfg.hubs)], 0.5));
  }
  auto nearest_hub = [&](Point p) {
    std::size_t best = 0;
    for (std::size_t h = 1; h < hubs.size(); ++h) {
      if (std::hypot(p.x - hubs[h].x, p.y - hubs[h].y) <
          std::hypot(p.x - hubs[best].x, p.y - hubs[best].y)) {
        best = h;
      }
    }
    return static_cast<int>(best);
  };

  // Classes first so the realized chronic share stays inside its range.
  const double f = uniform(cfg.chronic_fraction.lo, cfg.chronic_fraction.hi);
  int chronic = static_cast<int>(std::lround(f * n));
  const int lo = static_cast<int>(std::ceil(cfg.chronic_fraction.lo * n - 1e-9));
  const int hi = static_cast<int>(std::floor(cfg.chronic_fraction.hi * n + 1e-9));
  if (lo <= hi) chronic = std::clamp(chronic, lo, hi);
  std::vector<PatientClass> classes(static_cast<std::size_t>(n), PatientClass::walk_in);
  std::fill_n(classes.begin(), chronic, PatientClass::chronic);
  std::shuffle(classes.begin(), classes.end(), rng);

  struct Draft {
    NodeId home;
    NodeId gp;
    Seconds appointment;
    Seconds release;
  };
  std::vector<Draft> drafts;
  const auto& sessions = inst.fleet.sessions;
  for (int i = 0; i < n; ++i) {
    Point home;
    if (chance(cfg.near_hub_share)) {
      home = jitter(hubs[static_cast<std::size_t>(pick(0, cfg.hubs - 1))], cfg.hub_jitter_km);
    } else {
      const auto& [a, b] = roads[static_cast<std::size_t>(pick(0, static_cast<int>(roads.size()) - 1))];
      const double s = uniform(0.0, 1.0);
      home = jitter({a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)}, cfg.road_jitter_km);
    }
    points.push_back(home);

    int gp = pick(0, cfg.gps - 1);
    if (chance(cfg.local_gp_share)) {
      const int hub = nearest_hub(home);
      std::vector<int> local;
      for (int g = 0; g < cfg.gps; ++g) {
        if (gp_hub[static_cast<std::size_t>(g)] == hub) local.push_back(g);
      }
      if (!local.empty()) gp = local[static_cast<std::size_t>(pick(0, static_cast<int>(local.size()) - 1))];
    }

    const auto& session = sessions[static_cast<std::size_t>(pick(0, static_cast<int>(sessions.size()) - 1))];
    const auto slots = static_cast<int>(session.length() / cfg.appointment_step);
    const Seconds appointment = session.earliest + cfg.appointment_step * pick(0, slots);
    const Seconds lead = 60 * pick(cfg.release_lead_minutes.lo, cfg.release_lead_minutes.hi);
    drafts.push_back({static_cast<NodeId>(cfg.gps + 1 + i), static_cast<NodeId>(gp + 1), appointment,
                      std::max<Seconds>(0, appointment - lead)});
  }

  const auto nodes = points.size();
  inst.travel = TravelMatrix(nodes);
  for (std::size_t a = 0; a < nodes; ++a) {
    inst.locations.push_back({static_cast<NodeId>(a), points[a].x, points[a].y});
    for (std::size_t b = 0; b < nodes; ++b) {
      inst.travel(static_cast<NodeId>(a), static_cast<NodeId>(b)) =
          a == b ? 0 : travel_seconds(points[a], points[b], cfg.speed_kmh);
    }
  }
  for (int i = 0; i < n; ++i) {
    const auto& d = drafts[static_cast<std::size_t>(i)];
    inst.requests.push_back(make_request(i, classes[static_cast<std::size_t>(i)], d.home, d.gp,
                                         d.appointment, d.release, inst.travel, inst.service));
  }
  return inst;
}

}  // namespace darpcf
