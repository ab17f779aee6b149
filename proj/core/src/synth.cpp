#include "scenepilot/synth.hpp"

#include "scenepilot/error.hpp"
#include "scenepilot/grid_io.hpp"
#include "scenepilot/jsonl.hpp"
#include "scenepilot/normalize.hpp"
#include "scenepilot/scorecard.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

// The expected scores written next to the fixture are computed here with
// standalone arithmetic (sorting percentiles, explicit finite differences,
// hand-rolled means) so that the evaluator is checked against an
// independently produced answer, not against itself.

namespace scenepilot {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

// ---- deterministic RNG helpers (no std distributions; their outputs are
// implementation-defined) ----

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double u01() {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * u01(); }
  int uniform_int(int a, int b) {
    return a + static_cast<int>(gen() % static_cast<std::uint64_t>(b - a + 1));
  }
  bool chance(double p) { return u01() < p; }
  // Uniform pick over 0..n-1 excluding `not_this`.
  int other_index(int n, int not_this) {
    const int r = uniform_int(0, n - 2);
    return r >= not_this ? r + 1 : r;
  }
};

// ---- scene slot model ----

const char* const kWeather[] = {"sunny", "rainy",  "cloudy",
                                "overcast", "snowy", "foggy"};
const char* const kTimes[] = {"daytime", "night", "dusk", "dawn"};
const char* const kRoads[] = {"urban", "highway", "rural", "residential",
                              "mountain"};
const char* const kNumberWords[] = {"one", "two",   "three", "four", "five",
                                    "six", "seven", "eight", "nine", "ten"};
const char* const kClasses[] = {"vehicle", "truck", "bicycle", "motorcycle",
                                "pedestrian"};

struct SceneSlots {
  int weather = 0;
  int time = 0;
  int road = 0;
  int lanes = 2;  // 1-based count, index into kNumberWords is lanes-1
  bool intersection = false;
  std::vector<std::string> classes;  // distinct, first-appearance order
};

std::string render_scene(const SceneSlots& s, int risk_score) {
  std::string out;
  out += "The weather is ";
  out += kWeather[s.weather];
  out += ", and it is ";
  out += kTimes[s.time];
  out += ". The road type is ";
  out += kRoads[s.road];
  out += " and the road has ";
  out += kNumberWords[s.lanes - 1];
  out += " lanes. ";
  if (s.intersection) {
    out += "It is an intersection, and the risk level score is ";
  } else {
    out += "The risk level score is ";
  }
  out += std::to_string(risk_score);
  out += ". Key participants include";
  for (std::size_t i = 0; i < s.classes.size(); ++i) {
    if (i == 0) {
      out += " a ";
    } else if (i + 1 == s.classes.size()) {
      out += " and a ";
    } else {
      out += ", a ";
    }
    out += s.classes[i];
  }
  out += ".";
  return out;
}

// Tuple set straight from the slots, bypassing text entirely.
std::set<std::string> slot_tuples(const SceneSlots& s) {
  std::set<std::string> t;
  t.insert("o:weather");
  t.insert("o:time");
  t.insert("o:road");
  for (const std::string& c : s.classes) t.insert("o:" + c);
  t.insert(std::string("a:weather:") + kWeather[s.weather]);
  t.insert(std::string("a:time:") + kTimes[s.time]);
  t.insert(std::string("a:road:") + kRoads[s.road]);
  t.insert(std::string("a:road:") + kNumberWords[s.lanes - 1] + "-lane");
  if (s.intersection) t.insert("a:road:intersection");
  return t;
}

double slot_f1(const SceneSlots& cand, const SceneSlots& ref) {
  const std::set<std::string> tc = slot_tuples(cand);
  const std::set<std::string> tr = slot_tuples(ref);
  std::size_t matched = 0;
  for (const std::string& t : tc) matched += tr.count(t);
  const double p = tc.empty() ? 0.0
                              : static_cast<double>(matched) /
                                    static_cast<double>(tc.size());
  const double r = tr.empty() ? 0.0
                              : static_cast<double>(matched) /
                                    static_cast<double>(tr.size());
  return (p + r > 0.0) ? 2.0 * p * r / (p + r) : 0.0;
}

// ---- standalone numeric helpers ----

double lwrap(double a) {
  const double two_pi = 2.0 * M_PI;
  double t = std::fmod(a, two_pi);
  if (t <= -M_PI) t += two_pi;
  if (t > M_PI) t -= two_pi;
  return t;
}

double lmean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Sort-based percentile, deliberately a different algorithm from the
// library's selection-based one.
double lpercentile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double h = static_cast<double>(v.size() - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0 || lo + 1 >= v.size()) return v[lo];
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

struct LocalKin {
  std::vector<double> speeds, accels, headings;
};

LocalKin lkinematics(const std::vector<Vec3>& pts, double dt) {
  LocalKin k;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec3 d = pts[i + 1] - pts[i];
    k.speeds.push_back(d.norm() / dt);
    k.headings.push_back(std::atan2(d.z(), d.x()));
  }
  for (std::size_t i = 0; i + 1 < k.speeds.size(); ++i) {
    k.accels.push_back((k.speeds[i + 1] - k.speeds[i]) / dt);
  }
  return k;
}

double lnormalize_error(double e, const NormParams& p) {
  if (e < p.x1) return 100.0;
  if (e < p.x2) return 100.0 - 40.0 * (e - p.x1) / (p.x2 - p.x1);
  return 60.0 * std::exp(-p.k * (e - p.x2));
}

RiskClass local_risk_class(int score) {
  if (score <= 2) return RiskClass::low;
  if (score == 3) return RiskClass::medium;
  return RiskClass::high;
}

// ---- trajectory construction ----

std::vector<Vec3> integrate_path(double v0, double accel, double heading0,
                                 double turn_rate, int points, double dt) {
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(points));
  Vec3 p = Vec3::Zero();
  out.push_back(p);
  const int substeps = 10;
  const double h = dt / substeps;
  double t = 0.0;
  for (int k = 1; k < points; ++k) {
    for (int s = 0; s < substeps; ++s) {
      const double tm = t + (s + 0.5) * h;  // midpoint sample
      const double v = v0 + accel * tm;
      const double phi = heading0 + turn_rate * tm;
      p += Vec3(v * std::cos(phi) * h, 0.0, v * std::sin(phi) * h);
    }
    t += dt;
    out.push_back(p);
  }
  return out;
}

MetaAction local_classify(const std::vector<Vec3>& pts, double dt) {
  const LocalKin k = lkinematics(pts, dt);
  const double mean_a = lmean(k.accels);
  const double net = lwrap(k.headings.back() - k.headings.front());
  MetaAction a;
  if (mean_a >= 0.15) {
    a.longitudinal = LongitudinalAction::accelerating;
  } else if (mean_a <= -0.15) {
    a.longitudinal = LongitudinalAction::braking;
  } else {
    a.longitudinal = LongitudinalAction::constant;
  }
  const double thr = 8.0 * M_PI / 180.0;
  if (net >= thr) {
    a.lateral = LateralAction::left_turn;
  } else if (net <= -thr) {
    a.lateral = LateralAction::right_turn;
  } else {
    a.lateral = LateralAction::straight;
  }
  return a;
}

// ---- per-clip generated state ----

struct ClipGen {
  ClipRecord record;
  SceneSlots slots;
};

struct Country {
  const char* code;
  TrafficSide side;
};
const Country kCountries[] = {
    {"DE", TrafficSide::right}, {"FR", TrafficSide::right},
    {"GB", TrafficSide::left},  {"IT", TrafficSide::right},
    {"JP", TrafficSide::left},  {"KR", TrafficSide::right},
    {"US", TrafficSide::right}, {"AU", TrafficSide::left},
    {"IN", TrafficSide::left},  {"TH", TrafficSide::left},
    {"BR", TrafficSide::right}, {"CA", TrafficSide::right},
};

std::string clip_name(int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "synth-%04d", i);
  return buf;
}

ClipGen generate_clip(int index, Rng& rng) {
  ClipGen g;
  ClipRecord& c = g.record;
  c.clip_id = clip_name(index);
  const Country& country =
      kCountries[rng.uniform_int(0, static_cast<int>(std::size(kCountries)) - 1)];
  c.country = country.code;
  c.traffic_side = country.side;
  const double start = 180.0 + 5.0 * index;
  for (std::size_t k = 0; k < kFramesPerClip; ++k) {
    c.timestamps.push_back(start + 0.5 * static_cast<double>(k));
  }
  c.risk_score = rng.uniform_int(1, 5);

  const int participant_count = rng.uniform_int(2, 4);
  for (int i = 0; i < participant_count; ++i) {
    ParticipantGT p;
    p.object_id = "obj-" + std::to_string(i);
    p.cls = kAllParticipantClasses[rng.uniform_int(0, 4)];
    const double x0 = rng.uniform(0.05, 0.70);
    const double y0 = rng.uniform(0.05, 0.70);
    p.bbox = {x0, y0, x0 + rng.uniform(0.05, 0.25), y0 + rng.uniform(0.05, 0.25)};
    p.distance_m = rng.uniform(5.0, 60.0);
    p.azimuth_rad = rng.uniform(-1.2, 1.2);
    c.participants.push_back(p);
  }
  // Keep the first pair clearly separated so pairwise references stay
  // well-conditioned.
  while (true) {
    const ParticipantGT& a = c.participants[0];
    ParticipantGT& b = c.participants[1];
    const double cosd = std::cos(a.azimuth_rad - b.azimuth_rad);
    const double sq = a.distance_m * a.distance_m + b.distance_m * b.distance_m -
                      2.0 * a.distance_m * b.distance_m * cosd;
    if (sq > 0.25) break;
    b.distance_m = rng.uniform(5.0, 60.0);
    b.azimuth_rad = rng.uniform(-1.2, 1.2);
  }

  g.slots.weather = rng.uniform_int(0, 5);
  g.slots.time = rng.uniform_int(0, 3);
  g.slots.road = rng.uniform_int(0, 4);
  g.slots.lanes = rng.uniform_int(2, 6);
  g.slots.intersection = rng.chance(0.5);
  for (const ParticipantGT& p : c.participants) {
    const std::string name = to_string(p.cls);
    if (std::find(g.slots.classes.begin(), g.slots.classes.end(), name) ==
        g.slots.classes.end()) {
      g.slots.classes.push_back(name);
    }
  }
  c.scene_description = render_scene(g.slots, c.risk_score);

  // Future trajectory with a clearly labelled motion profile.
  const int lon = rng.uniform_int(0, 2);
  double accel = 0.0;
  if (lon == 0) {
    accel = rng.uniform(0.4, 1.2);
  } else if (lon == 1) {
    accel = -rng.uniform(0.4, 1.2);
  } else {
    accel = (rng.chance(0.5) ? 1.0 : -1.0) * rng.uniform(0.02, 0.05);
  }
  const int lat = rng.uniform_int(0, 2);
  double net_deg = 0.0;
  if (lat == 0) {
    net_deg = rng.uniform(15.0, 40.0);
  } else if (lat == 1) {
    net_deg = -rng.uniform(15.0, 40.0);
  } else {
    net_deg = (rng.chance(0.5) ? 1.0 : -1.0) * rng.uniform(0.5, 4.0);
  }
  const double v0 = rng.uniform(8.0, 12.0);
  const double heading0 = rng.uniform(-M_PI, M_PI);
  const double turn_rate = net_deg * M_PI / 180.0 / 3.0;
  c.future_trajectory = integrate_path(v0, accel, heading0, turn_rate,
                                       static_cast<int>(kFuturePoints),
                                       kFutureStepSeconds);
  c.meta_action_gt = local_classify(c.future_trajectory, kFutureStepSeconds);

  // Past context: straight constant-speed run ending at the future origin.
  const Vec3 dir(std::cos(heading0), 0.0, std::sin(heading0));
  for (std::size_t k = 0; k < kFramesPerClip; ++k) {
    const double back = 0.5 * static_cast<double>(kFramesPerClip - 1 - k);
    c.ego_trajectory.push_back(-v0 * back * dir);
  }
  return g;
}

// ---- prediction emission ----

PredictionRecord make_pred(const std::string& clip_id, Task task,
                           PredictionValue value) {
  PredictionRecord p;
  p.clip_id = clip_id;
  p.task = task;
  p.value = std::move(value);
  return p;
}

double local_pair_distance(const ParticipantGT& a, const ParticipantGT& b) {
  const double cosd = std::cos(a.azimuth_rad - b.azimuth_rad);
  const double sq = a.distance_m * a.distance_m + b.distance_m * b.distance_m -
                    2.0 * a.distance_m * b.distance_m * cosd;
  return std::sqrt(std::max(0.0, sq));
}

void write_text(const fs::path& path, const std::string& content,
                std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw BenchError(Errc::io_error, "cannot write " + path.string());
  }
  out << content;
  written.push_back(path.string());
}

// ---- geometry fixture ----

struct GeoExpected {
  double scale = 0.0;
  struct Obj {
    double distance_m = 0.0;
    double azimuth_rad = 0.0;
    const char* source = "mask";
  };
  Obj a, b;
  double pair_proximity = 0.0;
};

void write_geometry_fixture(const fs::path& dir,
                            std::vector<std::string>& written) {
  fs::create_directories(dir);
  const std::uint32_t W = 128, H = 64;
  const double fx = 500.0, fy = 500.0, cx = 64.0, cy = 32.0;
  const double cam_height_units = 1.2;  // plane sits 1.2 units below

  DepthGrid depth;
  depth.width = W;
  depth.height = H;
  depth.data.assign(static_cast<std::size_t>(W) * H, 0.0f);
  for (std::uint32_t v = 33; v < H; ++v) {
    const double z = cam_height_units * fy / (static_cast<double>(v) - cy);
    for (std::uint32_t u = 0; u < W; ++u) {
      depth.data[static_cast<std::size_t>(v) * W + u] = static_cast<float>(z);
    }
  }
  // Object A (masked, pedestrian) and object B (bbox fallback, vehicle) in
  // the sky half, so ground sampling never sees them.
  const std::uint32_t au0 = 70, au1 = 90, av0 = 10, av1 = 26;
  const std::uint32_t bu0 = 20, bu1 = 44, bv0 = 6, bv1 = 22;
  for (std::uint32_t v = av0; v < av1; ++v) {
    for (std::uint32_t u = au0; u < au1; ++u) {
      depth.data[static_cast<std::size_t>(v) * W + u] = 8.0f;
    }
  }
  for (std::uint32_t v = bv0; v < bv1; ++v) {
    for (std::uint32_t u = bu0; u < bu1; ++u) {
      depth.data[static_cast<std::size_t>(v) * W + u] = 10.0f;
    }
  }

  MaskGrid mask;
  mask.width = W;
  mask.height = H;
  mask.data.assign(static_cast<std::size_t>(W) * H, 0);
  for (std::uint32_t v = av0; v < av1; ++v) {
    for (std::uint32_t u = au0; u < au1; ++u) {
      mask.data[static_cast<std::size_t>(v) * W + u] = 1;
    }
  }

  Json frames = Json::array();
  std::vector<DetectionRecord> detections;
  for (int k = 0; k < static_cast<int>(kFramesPerClip); ++k) {
    char depth_name[64], mask_name[64];
    std::snprintf(depth_name, sizeof(depth_name), "depth_f%03d.spdm", k);
    std::snprintf(mask_name, sizeof(mask_name), "mask_f%03d_geo-obj-0.spmk",
                  k);
    write_depth_file((dir / depth_name).string(), depth);
    written.push_back((dir / depth_name).string());
    write_mask_file((dir / mask_name).string(), mask);
    written.push_back((dir / mask_name).string());

    Json f;
    f["clip_id"] = "synth-geo-0000";
    f["frame_index"] = k;
    f["intrinsics"] = {{"fx", fx}, {"fy", fy}, {"cx", cx}, {"cy", cy}};
    f["rotation"] = Json::array(
        {Json::array({1, 0, 0}), Json::array({0, 1, 0}), Json::array({0, 0, 1})});
    f["translation"] = Json::array({0.0, 0.0, -0.8 * k});
    f["depth"] = depth_name;
    f["masks"] = Json::object({{"geo-obj-0", mask_name}});
    frames.push_back(f);

    DetectionRecord da;
    da.clip_id = "synth-geo-0000";
    da.frame_index = k;
    da.object_id = "geo-obj-0";
    da.cls = ParticipantClass::pedestrian;
    da.confidence = 0.9;
    da.bbox = {au0 / static_cast<double>(W), av0 / static_cast<double>(H),
               au1 / static_cast<double>(W), av1 / static_cast<double>(H)};
    detections.push_back(da);

    DetectionRecord db = da;
    db.object_id = "geo-obj-1";
    db.cls = ParticipantClass::vehicle;
    db.confidence = 0.8;
    db.bbox = {bu0 / static_cast<double>(W), bv0 / static_cast<double>(H),
               bu1 / static_cast<double>(W), bv1 / static_cast<double>(H)};
    detections.push_back(db);
  }

  std::string frames_text;
  for (const Json& f : frames) frames_text += f.dump() + "\n";
  write_text(dir / "frames.jsonl", frames_text, written);

  std::string det_text;
  for (const DetectionRecord& d : detections) det_text += to_jsonl(d) + "\n";
  write_text(dir / "detections.jsonl", det_text, written);

  // Analytic expectations from the float grid, sort-based percentile.
  GeoExpected exp;
  {
    std::vector<double> heights;
    for (int r = 0; r < 16; ++r) {
      for (int c = 0; c < 32; ++c) {
        const double u = (c + 0.5) * W / 32.0;
        const double v = H / 2.0 + (r + 0.5) * (H / 2.0) / 16.0;
        const double z = depth.at(static_cast<std::uint32_t>(u),
                                  static_cast<std::uint32_t>(v));
        if (z > 0.0) heights.push_back(std::abs(z * (v - cy) / fy));
      }
    }
    exp.scale = 1.5 / lpercentile(heights, 0.5);
  }
  const auto rect_points = [&](std::uint32_t u0, std::uint32_t u1,
                               std::uint32_t v0, std::uint32_t v1) {
    std::vector<Vec3> pts;
    for (std::uint32_t v = v0; v < v1; ++v) {
      for (std::uint32_t u = u0; u < u1; ++u) {
        const double z = depth.at(u, v);
        pts.emplace_back(z * (u - cx) / fx, z * (v - cy) / fy, z);
      }
    }
    return pts;
  };
  const auto measure = [&](const std::vector<Vec3>& pts, GeoExpected::Obj& o) {
    std::vector<double> norms;
    Vec3 centroid = Vec3::Zero();
    for (const Vec3& p : pts) {
      norms.push_back(p.norm());
      centroid += p;
    }
    centroid /= static_cast<double>(pts.size());
    o.distance_m = std::max(0.0, exp.scale * lpercentile(norms, 0.05));
    o.azimuth_rad = std::clamp(std::atan2(centroid.x(), centroid.z()),
                               -M_PI / 2.0, M_PI / 2.0);
  };
  const std::vector<Vec3> pa = rect_points(au0, au1, av0, av1);
  const std::vector<Vec3> pb = rect_points(bu0, bu1, bv0, bv1);
  measure(pa, exp.a);
  exp.a.source = "mask";
  measure(pb, exp.b);
  exp.b.source = "bbox_fallback";
  {
    const auto directed = [](const std::vector<Vec3>& from,
                             const std::vector<Vec3>& to) {
      std::vector<double> nearest;
      for (const Vec3& p : from) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec3& q : to) best = std::min(best, (p - q).norm());
        nearest.push_back(best);
      }
      return lpercentile(nearest, 0.05);
    };
    exp.pair_proximity =
        exp.scale * std::min(directed(pa, pb), directed(pb, pa));
  }

  Json e;
  e["scale"] = exp.scale;
  e["branch"] = "frame_ground";
  e["objects"] = {
      {"geo-obj-0",
       {{"distance_m", exp.a.distance_m},
        {"azimuth_rad", exp.a.azimuth_rad},
        {"source", exp.a.source}}},
      {"geo-obj-1",
       {{"distance_m", exp.b.distance_m},
        {"azimuth_rad", exp.b.azimuth_rad},
        {"source", exp.b.source}}},
  };
  e["pair_proximity_m"] = exp.pair_proximity;
  Json centers = Json::array();
  for (int k = 0; k < static_cast<int>(kFramesPerClip); ++k) {
    centers.push_back(Json::array({0.0, 0.0, 0.8 * k}));
  }
  e["ego_centers"] = centers;
  write_text(dir / "expected.json", e.dump(2) + "\n", written);
}

}  // namespace

SynthResult write_synth_fixture(const std::string& out_dir,
                                const SynthOptions& options) {
  if (options.clip_count < 1 || options.clip_count > 9999) {
    throw BenchError(Errc::config_error,
                     "clip_count must lie in 1..9999");
  }
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  SynthResult result;

  Rng rng_gt(options.seed);
  std::vector<ClipGen> clips;
  clips.reserve(static_cast<std::size_t>(options.clip_count));
  for (int i = 0; i < options.clip_count; ++i) {
    clips.push_back(generate_clip(i, rng_gt));
  }

  std::string gt_text;
  for (const ClipGen& g : clips) gt_text += to_jsonl(g.record) + "\n";
  write_text(dir / "ground_truth.jsonl", gt_text, result.files_written);

  // Perfect predictions: echo the ground truth.
  std::string perfect_text;
  for (const ClipGen& g : clips) {
    const ClipRecord& c = g.record;
    std::vector<PredictionRecord> preds;
    {
      PredictionRecord p = make_pred(c.clip_id, Task::scene_desc,
                                     TextPayload{c.scene_description});
      p.judge_score = 1.0;
      preds.push_back(std::move(p));
    }
    preds.push_back(make_pred(c.clip_id, Task::risk,
                              RiskPayload{local_risk_class(c.risk_score)}));
    for (const ParticipantGT& part : c.participants) {
      PredictionRecord p =
          make_pred(c.clip_id, Task::participant_class, ClassPayload{part.cls});
      p.target_id = part.object_id;
      preds.push_back(std::move(p));
    }
    for (const ParticipantGT& part : c.participants) {
      PredictionRecord pd = make_pred(c.clip_id, Task::ego_distance,
                                      ScalarPayload{part.distance_m});
      pd.target_id = part.object_id;
      preds.push_back(std::move(pd));
      PredictionRecord pa = make_pred(c.clip_id, Task::ego_angle,
                                      ScalarPayload{part.azimuth_rad});
      pa.target_id = part.object_id;
      preds.push_back(std::move(pa));
    }
    {
      const ParticipantGT& a = c.participants[0];
      const ParticipantGT& b = c.participants[1];
      PredictionRecord pd =
          make_pred(c.clip_id, Task::pair_distance,
                    ScalarPayload{local_pair_distance(a, b)});
      pd.pair_ids = {a.object_id, b.object_id};
      preds.push_back(std::move(pd));
      PredictionRecord pa =
          make_pred(c.clip_id, Task::pair_angle,
                    ScalarPayload{lwrap(a.azimuth_rad - b.azimuth_rad)});
      pa.pair_ids = {a.object_id, b.object_id};
      preds.push_back(std::move(pa));
    }
    preds.push_back(make_pred(c.clip_id, Task::meta_action,
                              MetaActionPayload{c.meta_action_gt}));
    preds.push_back(make_pred(c.clip_id, Task::trajectory,
                              TrajectoryPayload{c.future_trajectory}));
    {
      PredictionRecord p = make_pred(
          c.clip_id, Task::free_qa,
          TextPayload{"The ego vehicle follows the planned maneuver."});
      p.judge_score = 1.0;
      preds.push_back(std::move(p));
    }
    for (const PredictionRecord& p : preds) perfect_text += to_jsonl(p) + "\n";
  }
  write_text(dir / "predictions_perfect.jsonl", perfect_text,
             result.files_written);

  // Perturbed predictions plus the expected scorecard, accumulated with the
  // standalone arithmetic above.
  Rng rng(options.seed ^ 0x9e3779b97f4a7c15ull);
  std::string perturbed_text;

  std::vector<double> spice_clip, emrde_clip, emrae_clip, omrde_clip,
      omrae_clip, dcs_clip, mre_clip, are_clip, ade_clip, fde1_clip, fde2_clip,
      fde3_clip;
  int risk_hits = 0, class_hits = 0, class_total = 0;
  double judge_sum = 0.0;
  int judge_n = 0;
  std::size_t ego_samples = 0, pair_samples = 0;

  for (const ClipGen& g : clips) {
    const ClipRecord& c = g.record;
    std::vector<PredictionRecord> preds;

    // Scene description: possibly re-drawn slots.
    SceneSlots cand = g.slots;
    if (rng.chance(0.5)) {
      if (rng.chance(0.5)) cand.weather = rng.other_index(6, cand.weather);
      if (rng.chance(0.5)) cand.time = rng.other_index(4, cand.time);
      if (rng.chance(0.5)) cand.road = rng.other_index(5, cand.road);
      if (rng.chance(0.5)) cand.lanes = 2 + rng.other_index(5, cand.lanes - 2);
      if (rng.chance(0.3)) cand.intersection = !cand.intersection;
    }
    spice_clip.push_back(slot_f1(cand, g.slots));
    {
      PredictionRecord p =
          make_pred(c.clip_id, Task::scene_desc,
                    TextPayload{render_scene(cand, c.risk_score)});
      const double js = rng.uniform(0.3, 0.9);
      p.judge_score = js;
      judge_sum += js;
      ++judge_n;
      preds.push_back(std::move(p));
    }

    // Risk score, sometimes shifted by one.
    int pred_score = c.risk_score;
    if (rng.chance(0.3)) {
      pred_score += rng.chance(0.5) ? 1 : -1;
      pred_score = std::clamp(pred_score, 1, 5);
    }
    const RiskClass pred_risk = local_risk_class(pred_score);
    risk_hits += pred_risk == local_risk_class(c.risk_score);
    preds.push_back(make_pred(c.clip_id, Task::risk, RiskPayload{pred_risk}));

    // Participant classes.
    for (const ParticipantGT& part : c.participants) {
      ParticipantClass pred_cls = part.cls;
      if (rng.chance(0.25)) {
        pred_cls = kAllParticipantClasses[rng.other_index(
            5, static_cast<int>(part.cls))];
      }
      class_hits += pred_cls == part.cls;
      ++class_total;
      PredictionRecord p = make_pred(c.clip_id, Task::participant_class,
                                     ClassPayload{pred_cls});
      p.target_id = part.object_id;
      preds.push_back(std::move(p));
    }

    // Ego-centric scalars with bounded relative/absolute perturbations.
    std::vector<double> dist_errs, ang_errs;
    for (const ParticipantGT& part : c.participants) {
      const double pred_d = part.distance_m * (1.0 + rng.uniform(-0.5, 0.5));
      dist_errs.push_back(std::abs(pred_d - part.distance_m) /
                          part.distance_m);
      PredictionRecord pd =
          make_pred(c.clip_id, Task::ego_distance, ScalarPayload{pred_d});
      pd.target_id = part.object_id;
      preds.push_back(std::move(pd));

      const double pred_a = part.azimuth_rad + rng.uniform(-0.3, 0.3);
      ang_errs.push_back(std::abs(lwrap(pred_a - part.azimuth_rad)) /
                         std::max(std::abs(part.azimuth_rad), 0.01));
      PredictionRecord pa =
          make_pred(c.clip_id, Task::ego_angle, ScalarPayload{pred_a});
      pa.target_id = part.object_id;
      preds.push_back(std::move(pa));
    }
    emrde_clip.push_back(lmean(dist_errs));
    emrae_clip.push_back(lmean(ang_errs));
    ego_samples += dist_errs.size();

    // Pairwise scalars on the first pair.
    {
      const ParticipantGT& a = c.participants[0];
      const ParticipantGT& b = c.participants[1];
      const double gt_d = local_pair_distance(a, b);
      const double gt_a = lwrap(a.azimuth_rad - b.azimuth_rad);
      const double pred_d = gt_d * (1.0 + rng.uniform(-0.5, 0.5));
      const double pred_a = gt_a + rng.uniform(-0.3, 0.3);
      omrde_clip.push_back(std::abs(pred_d - gt_d) / gt_d);
      omrae_clip.push_back(std::abs(lwrap(pred_a - gt_a)) /
                           std::max(std::abs(gt_a), 0.01));
      ++pair_samples;
      PredictionRecord pd =
          make_pred(c.clip_id, Task::pair_distance, ScalarPayload{pred_d});
      pd.pair_ids = {a.object_id, b.object_id};
      preds.push_back(std::move(pd));
      PredictionRecord pa =
          make_pred(c.clip_id, Task::pair_angle, ScalarPayload{pred_a});
      pa.pair_ids = {a.object_id, b.object_id};
      preds.push_back(std::move(pa));
    }

    // Meta-action, sometimes one component flipped.
    MetaAction pred_action = c.meta_action_gt;
    if (rng.chance(0.3)) {
      if (rng.chance(0.5)) {
        pred_action.longitudinal = static_cast<LongitudinalAction>(
            rng.other_index(3, static_cast<int>(pred_action.longitudinal)));
      } else {
        pred_action.lateral = static_cast<LateralAction>(
            rng.other_index(3, static_cast<int>(pred_action.lateral)));
      }
    }
    dcs_clip.push_back(pred_action == c.meta_action_gt ? 1.0 : 0.0);
    preds.push_back(
        make_pred(c.clip_id, Task::meta_action, MetaActionPayload{pred_action}));

    // Trajectory: constant offset plus a linear drift.
    {
      const Vec3 offset(rng.uniform(-1.5, 1.5), 0.0, rng.uniform(-1.5, 1.5));
      const Vec3 drift(rng.uniform(-0.3, 0.3), 0.0, rng.uniform(-0.3, 0.3));
      std::vector<Vec3> pred_pts;
      for (std::size_t k = 0; k < kFuturePoints; ++k) {
        pred_pts.push_back(c.future_trajectory[k] + offset +
                           drift * (kFutureStepSeconds * static_cast<double>(k)));
      }
      std::vector<double> disp;
      for (std::size_t k = 0; k < kFuturePoints; ++k) {
        disp.push_back((pred_pts[k] - c.future_trajectory[k]).norm());
      }
      ade_clip.push_back(lmean(disp));
      fde1_clip.push_back(disp[2]);
      fde2_clip.push_back(disp[4]);
      fde3_clip.push_back(disp[6]);

      const LocalKin kp = lkinematics(pred_pts, kFutureStepSeconds);
      const LocalKin kg = lkinematics(c.future_trajectory, kFutureStepSeconds);
      const double ap = lmean(kp.accels);
      const double ag = lmean(kg.accels);
      mre_clip.push_back(std::abs(ap - ag) / std::abs(ag));
      const double hp = lwrap(kp.headings.back() - kp.headings.front());
      const double hg = lwrap(kg.headings.back() - kg.headings.front());
      are_clip.push_back(std::abs(lwrap(hp - hg)) /
                         std::max(std::abs(hg), 0.01));
      preds.push_back(make_pred(c.clip_id, Task::trajectory,
                                TrajectoryPayload{std::move(pred_pts)}));
    }

    {
      PredictionRecord p = make_pred(
          c.clip_id, Task::free_qa,
          TextPayload{"The ego vehicle follows the planned maneuver."});
      const double js = rng.uniform(0.3, 0.9);
      p.judge_score = js;
      judge_sum += js;
      ++judge_n;
      preds.push_back(std::move(p));
    }

    for (const PredictionRecord& p : preds) perturbed_text += to_jsonl(p) + "\n";
  }
  write_text(dir / "predictions_perturbed.jsonl", perturbed_text,
             result.files_written);

  // Expected scorecard for the perturbed set.
  const std::size_t n_clips = static_cast<std::size_t>(options.clip_count);
  const auto params = default_norm_params();
  struct Row {
    double raw;
    double score;
    std::size_t samples;
  };
  std::map<std::string, Row> rows;
  const auto acc_row = [&](const char* name, double raw, std::size_t samples) {
    rows[name] = {raw, 100.0 * raw, samples};
  };
  const auto err_row = [&](const char* name, MetricId id,
                           const std::vector<double>& per_clip,
                           std::size_t samples) {
    const double raw = lmean(per_clip);
    rows[name] = {raw, lnormalize_error(raw, params.at(id)), samples};
  };
  acc_row("spice", lmean(spice_clip), n_clips);
  acc_row("risk_class_acc",
          static_cast<double>(risk_hits) / static_cast<double>(n_clips),
          n_clips);
  acc_row("class_acc",
          static_cast<double>(class_hits) / static_cast<double>(class_total),
          static_cast<std::size_t>(class_total));
  err_row("emrde", MetricId::emrde, emrde_clip, ego_samples);
  err_row("emrae", MetricId::emrae, emrae_clip, ego_samples);
  err_row("omrde", MetricId::omrde, omrde_clip, pair_samples);
  err_row("omrae", MetricId::omrae, omrae_clip, pair_samples);
  acc_row("dcs_acc", lmean(dcs_clip), n_clips);
  err_row("mre_acc", MetricId::mre_acc, mre_clip, n_clips);
  err_row("are", MetricId::are, are_clip, n_clips);
  err_row("ade", MetricId::ade, ade_clip, n_clips);
  err_row("fde1", MetricId::fde1, fde1_clip, n_clips);
  err_row("fde2", MetricId::fde2, fde2_clip, n_clips);
  err_row("fde3", MetricId::fde3, fde3_clip, n_clips);
  acc_row("gpt_alignment", judge_sum / static_cast<double>(judge_n),
          static_cast<std::size_t>(judge_n));

  const double scene_total =
      0.70 * rows["spice"].score + 0.30 * rows["risk_class_acc"].score;
  const double spatial_total =
      0.20 * rows["class_acc"].score + 0.30 * rows["emrde"].score +
      0.20 * rows["emrae"].score + 0.20 * rows["omrde"].score +
      0.10 * rows["omrae"].score;
  const double motion_total =
      0.20 * rows["dcs_acc"].score + 0.10 * rows["mre_acc"].score +
      0.10 * rows["are"].score + 0.20 * rows["ade"].score +
      0.10 * rows["fde1"].score + 0.10 * rows["fde2"].score +
      0.20 * rows["fde3"].score;
  const double gpt_total = 1.00 * rows["gpt_alignment"].score;
  const double overall = 0.15 * scene_total + 0.35 * spatial_total +
                         0.40 * motion_total + 0.10 * gpt_total;

  Json expected;
  Json metrics = Json::object();
  for (const MetricId id : kAllMetrics) {
    const Row& r = rows.at(to_string(id));
    metrics[to_string(id)] = {
        {"raw", r.raw}, {"score", r.score}, {"samples", r.samples}};
  }
  expected["metrics"] = metrics;
  expected["modules"] = {{"scene_understanding", scene_total},
                         {"spatial_perception", spatial_total},
                         {"motion_planning", motion_total},
                         {"gpt_score", gpt_total}};
  expected["overall"] = overall;
  write_text(dir / "expected_scorecard.json", expected.dump(2) + "\n",
             result.files_written);

  const auto write_config = [&](const char* name, const char* predictions) {
    Json cfg;
    cfg["ground_truth"] = "ground_truth.jsonl";
    cfg["predictions"] = predictions;
    cfg["jobs"] = 1;
    if (options.with_geometry) {
      cfg["geometry"] = {{"frames", "geometry/frames.jsonl"},
                         {"detections", "geometry/detections.jsonl"},
                         {"pairs", true}};
    }
    write_text(dir / name, cfg.dump(2) + "\n", result.files_written);
  };
  write_config("config.json", "predictions_perturbed.jsonl");
  write_config("config_perfect.json", "predictions_perfect.jsonl");

  if (options.with_geometry) {
    write_geometry_fixture(dir / "geometry", result.files_written);
  }
  return result;
}

}  // namespace scenepilot
