// spbench: command-line front end for the ScenePilot-Bench evaluation kit.
//
// Exit codes: 0 success, 2 configuration problems (flags, config files,
// parameter tables), 3 data problems (the first offending record is named).

#include "scenepilot/clip_plan.hpp"
#include "scenepilot/error.hpp"
#include "scenepilot/evaluator.hpp"
#include "scenepilot/grid_io.hpp"
#include "scenepilot/jsonl.hpp"
#include "scenepilot/judge.hpp"
#include "scenepilot/normalize.hpp"
#include "scenepilot/region.hpp"
#include "scenepilot/scorecard.hpp"
#include "scenepilot/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using namespace scenepilot;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw BenchError(Errc::io_error, "cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw BenchError(Errc::io_error, "cannot write " + out_path);
  }
  out << content;
}

// Re-throws parser errors with the file named, keeping code/line/field.
template <typename Fn>
auto with_file(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const BenchError& e) {
    throw BenchError(e.code(), path + ": " + e.what(), e.line(), e.field());
  }
}

std::vector<ClipRecord> load_ground_truth(const std::string& path) {
  return with_file(path, [&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BenchError(Errc::io_error, "cannot open file");
    return parse_ground_truth(in);
  });
}

std::vector<PredictionRecord> load_predictions(const std::string& path) {
  return with_file(path, [&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BenchError(Errc::io_error, "cannot open file");
    return parse_predictions(in);
  });
}

std::vector<DetectionRecord> load_detections(const std::string& path) {
  return with_file(path, [&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BenchError(Errc::io_error, "cannot open file");
    return parse_detections(in);
  });
}

// ---- run configuration -----------------------------------------------------

struct GeometryInputs {
  std::string frames;
  std::string detections;
  bool pairs = false;
};

struct RunConfig {
  std::string config_path;
  std::string ground_truth;
  std::string predictions;
  int jobs = 1;
  EvalConfig eval;
  RegionMap region_map = RegionMap::defaults();
  std::optional<GeometryInputs> geometry;
};

Json parse_json_file(const std::string& path) {
  const std::string text = read_file(path);
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw BenchError(Errc::config_error, path + ": not valid JSON");
  }
  return j;
}

std::string resolve(const fs::path& base, const std::string& rel) {
  const fs::path p(rel);
  return p.is_absolute() ? p.string() : (base / p).string();
}

std::map<MetricId, NormParams> load_norm_params(const std::string& path) {
  const Json j = parse_json_file(path);
  if (!j.is_object()) {
    throw BenchError(Errc::config_error, path + ": expected an object");
  }
  auto params = default_norm_params();
  for (const auto& [name, body] : j.items()) {
    const auto id = metric_from_string(name);
    if (!id || !is_error_metric(*id)) {
      throw BenchError(Errc::config_error,
                       path + ": '" + name + "' is not an error-based metric");
    }
    if (!body.is_object() || !body.contains("x1") || !body.contains("x2") ||
        !body.contains("k")) {
      throw BenchError(Errc::config_error,
                       path + ": '" + name + "' needs x1, x2 and k");
    }
    params[*id] = NormParams{body.at("x1").get<double>(),
                             body.at("x2").get<double>(),
                             body.at("k").get<double>()};
  }
  return params;
}

WeightTable load_weights(const std::string& path) {
  const Json j = parse_json_file(path);
  if (!j.is_object() || !j.contains("modules") || !j.contains("metrics")) {
    throw BenchError(Errc::config_error,
                     path + ": expected {\"modules\": ..., \"metrics\": ...}");
  }
  WeightTable table;
  for (const auto& [name, w] : j.at("modules").items()) {
    bool found = false;
    for (const ModuleId m : kAllModules) {
      if (name == to_string(m)) {
        table.module_weights[m] = w.get<double>();
        found = true;
      }
    }
    if (!found) {
      throw BenchError(Errc::config_error,
                       path + ": unknown module '" + name + "'");
    }
  }
  for (const auto& [name, w] : j.at("metrics").items()) {
    const auto id = metric_from_string(name);
    if (!id) {
      throw BenchError(Errc::config_error,
                       path + ": unknown metric '" + name + "'");
    }
    table.metric_weights[*id] = w.get<double>();
  }
  return table;
}

RegionMap load_region_map(const std::string& path) {
  const Json j = parse_json_file(path);
  if (!j.is_object() || !j.contains("regions") || !j.contains("left_hand")) {
    throw BenchError(
        Errc::config_error,
        path + ": expected {\"regions\": ..., \"left_hand\": [...]}");
  }
  RegionMap map;
  for (const auto& [country, region] : j.at("regions").items()) {
    map.country_region[country] = region.get<std::string>();
  }
  for (const Json& c : j.at("left_hand")) {
    map.left_hand.insert(c.get<std::string>());
  }
  return map;
}

RunConfig load_run_config(const std::string& path) {
  RunConfig rc;
  rc.config_path = path;
  const Json j = parse_json_file(path);
  if (!j.is_object()) {
    throw BenchError(Errc::config_error, path + ": expected an object");
  }
  static const std::set<std::string> known = {
      "ground_truth", "predictions", "lexicon",  "norm_params",
      "weights",      "region_map",  "jobs",     "geometry"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) {
      throw BenchError(Errc::config_error, path + ": unknown key '" + key + "'");
    }
  }
  const fs::path base = fs::path(path).parent_path();
  if (!j.contains("ground_truth") || !j.contains("predictions")) {
    throw BenchError(Errc::config_error,
                     path + ": ground_truth and predictions are required");
  }
  rc.ground_truth = resolve(base, j.at("ground_truth").get<std::string>());
  rc.predictions = resolve(base, j.at("predictions").get<std::string>());
  if (j.contains("jobs")) {
    rc.jobs = j.at("jobs").get<int>();
    if (rc.jobs < 1) {
      throw BenchError(Errc::config_error, path + ": jobs must be >= 1");
    }
  }
  if (j.contains("lexicon")) {
    rc.eval.lexicon =
        Lexicon::load_file(resolve(base, j.at("lexicon").get<std::string>()));
  }
  if (j.contains("norm_params")) {
    rc.eval.norm_params =
        load_norm_params(resolve(base, j.at("norm_params").get<std::string>()));
  }
  if (j.contains("weights")) {
    rc.eval.weights =
        load_weights(resolve(base, j.at("weights").get<std::string>()));
  }
  if (j.contains("region_map")) {
    rc.region_map =
        load_region_map(resolve(base, j.at("region_map").get<std::string>()));
  }
  if (j.contains("geometry")) {
    const Json& g = j.at("geometry");
    if (!g.is_object() || !g.contains("frames") || !g.contains("detections")) {
      throw BenchError(Errc::config_error,
                       path + ": geometry needs frames and detections");
    }
    GeometryInputs geo;
    geo.frames = resolve(base, g.at("frames").get<std::string>());
    geo.detections = resolve(base, g.at("detections").get<std::string>());
    if (g.contains("pairs")) geo.pairs = g.at("pairs").get<bool>();
    rc.geometry = geo;
  }
  return rc;
}

std::vector<CameraFrame> load_frames(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw BenchError(Errc::io_error, "cannot open " + path);
  }
  const fs::path base = fs::path(path).parent_path();
  std::vector<CameraFrame> frames;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw BenchError(Errc::malformed_line, path + ": not a JSON object",
                       lineno);
    }
    try {
      CameraFrame f;
      f.clip_id = j.at("clip_id").get<std::string>();
      f.frame_index = j.at("frame_index").get<int>();
      const Json& k = j.at("intrinsics");
      f.intrinsics.fx = k.at("fx").get<double>();
      f.intrinsics.fy = k.at("fy").get<double>();
      f.intrinsics.cx = k.at("cx").get<double>();
      f.intrinsics.cy = k.at("cy").get<double>();
      const Json& r = j.at("rotation");
      for (int row = 0; row < 3; ++row) {
        for (int col = 0; col < 3; ++col) {
          f.pose.rotation(row, col) = r.at(row).at(col).get<double>();
        }
      }
      const Json& t = j.at("translation");
      for (int row = 0; row < 3; ++row) {
        f.pose.translation(row) = t.at(row).get<double>();
      }
      if (j.contains("depth")) {
        f.depth = read_depth_file(resolve(base, j.at("depth").get<std::string>()));
      }
      if (j.contains("masks")) {
        for (const auto& [object_id, rel] : j.at("masks").items()) {
          f.masks[object_id] =
              read_mask_file(resolve(base, rel.get<std::string>()));
        }
      }
      frames.push_back(std::move(f));
    } catch (const Json::exception& e) {
      throw BenchError(Errc::malformed_line, path + ": " + e.what(), lineno);
    }
  }
  return frames;
}

// ---- subcommands -----------------------------------------------------------

int run_score(const std::string& config_path, int jobs_override,
              const std::string& predictions_override, bool as_json,
              const std::string& out_path) {
  RunConfig rc = load_run_config(config_path);
  if (!predictions_override.empty()) rc.predictions = predictions_override;
  const int jobs = jobs_override > 0 ? jobs_override : rc.jobs;

  const std::vector<ClipRecord> clips = load_ground_truth(rc.ground_truth);
  const std::vector<PredictionRecord> preds = load_predictions(rc.predictions);
  const ScoreCard card = evaluate(clips, preds, rc.eval, jobs);

  const std::string config_digest = digest_hex(fnv1a64(read_file(config_path)));
  const InputDigests inputs = {
      {"ground_truth", digest_hex(fnv1a64(read_file(rc.ground_truth)))},
      {"predictions", digest_hex(fnv1a64(read_file(rc.predictions)))},
  };
  write_output(out_path, as_json
                             ? render_json_report(card, config_digest, inputs)
                             : render_text_report(card, config_digest, inputs));
  return 0;
}

int run_annotate(const std::string& config_path, bool force_pairs,
                 const std::string& out_path) {
  const RunConfig rc = load_run_config(config_path);
  if (!rc.geometry) {
    throw BenchError(Errc::config_error,
                     config_path + ": a geometry section is required");
  }
  const std::vector<CameraFrame> all_frames = load_frames(rc.geometry->frames);
  const std::vector<DetectionRecord> detections = filter_detections(
      load_detections(rc.geometry->detections), ThresholdTable::defaults());
  const bool with_pairs = rc.geometry->pairs || force_pairs;

  // Clips keep their first-appearance order from the frames file.
  std::vector<std::string> clip_order;
  std::map<std::string, std::vector<CameraFrame>> frames_by_clip;
  for (const CameraFrame& f : all_frames) {
    if (!frames_by_clip.count(f.clip_id)) clip_order.push_back(f.clip_id);
    frames_by_clip[f.clip_id].push_back(f);
  }

  std::string out_text;
  std::size_t ok_clips = 0, objects = 0, pairs_n = 0;
  for (const std::string& clip_id : clip_order) {
    std::vector<DetectionRecord> dets;
    for (const DetectionRecord& d : detections) {
      if (d.clip_id.empty() || d.clip_id == clip_id) dets.push_back(d);
    }
    try {
      const AnnotateResult res =
          annotate_frames(frames_by_clip[clip_id], dets, rc.eval.geo, with_pairs);
      for (const std::string& reason : res.skipped) {
        std::cerr << "skip: " << clip_id << ": " << reason << "\n";
      }
      for (const GeoAnnotation& a : res.annotations) {
        Json j;
        j["kind"] = "object";
        j["clip_id"] = a.clip_id;
        j["frame_index"] = a.frame_index;
        j["object_id"] = a.object_id;
        j["class"] = to_string(a.cls);
        j["distance_m"] = a.distance_m;
        j["azimuth_rad"] = a.azimuth_rad;
        j["scale_branch"] = a.scale_branch == ScaleBranch::frame_ground
                                ? "frame_ground"
                                : "object_prior";
        j["source"] = a.source == ForegroundSource::mask ? "mask" : "bbox_fallback";
        out_text += j.dump() + "\n";
      }
      for (const PairProximity& p : res.pairs) {
        Json j;
        j["kind"] = "pair";
        j["clip_id"] = p.clip_id;
        j["frame_index"] = p.frame_index;
        j["object_a"] = p.object_a;
        j["object_b"] = p.object_b;
        j["proximity_m"] = p.proximity_m;
        out_text += j.dump() + "\n";
      }
      objects += res.annotations.size();
      pairs_n += res.pairs.size();
      ++ok_clips;
    } catch (const BenchError& e) {
      std::cerr << "clip " << clip_id << " failed: " << e.what() << "\n";
    }
  }
  if (ok_clips == 0) {
    throw BenchError(Errc::empty_input, "no clip could be annotated");
  }
  write_output(out_path, out_text);
  std::cerr << "annotated " << objects << " objects, " << pairs_n
            << " pairs across " << ok_clips << " clips\n";
  return 0;
}

int run_calibrate(const std::string& metric_name,
                  const std::string& samples_path,
                  const std::string& out_path) {
  const auto id = metric_from_string(metric_name);
  if (!id || !is_error_metric(*id)) {
    throw BenchError(Errc::config_error,
                     "'" + metric_name + "' is not an error-based metric");
  }
  std::ifstream in(samples_path, std::ios::binary);
  if (!in) {
    throw BenchError(Errc::io_error, "cannot open " + samples_path);
  }
  std::vector<double> samples;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(line, &used);
    } catch (const std::exception&) {
      throw BenchError(Errc::malformed_line, samples_path + ": not a number",
                       lineno);
    }
    if (line.find_first_not_of(" \t\r", used) != std::string::npos) {
      throw BenchError(Errc::malformed_line,
                       samples_path + ": trailing characters", lineno);
    }
    samples.push_back(v);
  }
  const auto [x1, x2] = calibrate(samples);
  Json j;
  j["metric"] = metric_name;
  j["x1"] = x1;
  j["x2"] = x2;
  j["k"] = default_norm_params().at(*id).k;
  j["samples"] = samples.size();
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

int run_plan(double duration, double trim, double hz, double clip_len,
             const std::string& out_path) {
  const std::vector<ClipPlan> plans = plan_clips(duration, trim, hz, clip_len);
  Json j;
  j["clip_count"] = plans.size();
  Json arr = Json::array();
  for (const ClipPlan& p : plans) {
    Json e;
    e["clip_index"] = p.clip_index;
    e["key_frame_index"] = p.key_frame_index;
    e["key_frame_timestamp"] = p.key_frame_timestamp();
    e["frame_timestamps"] = p.frame_timestamps;
    arr.push_back(e);
  }
  j["clips"] = arr;
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

std::vector<JudgeRequest> load_judge_requests(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw BenchError(Errc::io_error, "cannot open " + path);
  }
  std::vector<JudgeRequest> requests;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw BenchError(Errc::malformed_line, path + ": not a JSON object",
                       lineno);
    }
    try {
      JudgeRequest req;
      req.clip_id = j.at("clip_id").get<std::string>();
      const std::string task_name = j.at("task").get<std::string>();
      const auto task = task_from_string(task_name);
      if (!task) {
        throw BenchError(Errc::unknown_task,
                         path + ": unknown task '" + task_name + "'", lineno);
      }
      req.task = *task;
      req.question = j.at("question").get<std::string>();
      req.ground_truth = j.at("ground_truth").get<std::string>();
      req.prediction = j.at("prediction").get<std::string>();
      if (j.contains("extras")) {
        const Json& x = j.at("extras");
        req.extras = JudgeExtras{x.at("spice").get<double>(),
                                 x.at("risk_class_acc").get<double>(),
                                 x.at("gt_risk_level").get<int>()};
      }
      req.validate();
      requests.push_back(std::move(req));
    } catch (const Json::exception& e) {
      throw BenchError(Errc::malformed_line, path + ": " + e.what(), lineno);
    } catch (const BenchError& e) {
      throw BenchError(e.code(), path + ": " + e.what(),
                       e.line() ? e.line() : lineno, e.field());
    }
  }
  return requests;
}

int run_judge(const std::string& requests_path, const std::string& endpoint,
              const std::string& endpoint_path, int timeout_s, int retries,
              int jobs, double mock_score, bool has_mock,
              const std::string& out_path) {
  const std::vector<JudgeRequest> requests = load_judge_requests(requests_path);
  std::unique_ptr<JudgeTransport> transport;
  if (!endpoint.empty() && has_mock) {
    throw BenchError(Errc::config_error,
                     "--endpoint and --mock-score are mutually exclusive");
  }
  if (!endpoint.empty()) {
    HttpJudgeConfig cfg;
    cfg.base_url = endpoint;
    cfg.path = endpoint_path;
    cfg.timeout_s = timeout_s;
    transport = std::make_unique<HttpJudgeTransport>(cfg);
  } else if (has_mock) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", mock_score);
    const std::string reply = buf;
    transport = std::make_unique<MockJudgeTransport>(
        [reply](const std::string&) { return reply; });
  } else {
    throw BenchError(Errc::config_error,
                     "pass --endpoint URL or --mock-score X");
  }
  BatchOptions options;
  options.max_retries = retries;
  options.parallelism = jobs;
  const BatchResult result = gpt_score_batch(requests, *transport, options);

  Json j;
  j["mean_score"] = result.mean_score;
  j["module_value"] = 100.0 * result.mean_score;
  j["success_count"] = result.success_count;
  j["failure_count"] = result.failures.size();
  Json scores = Json::array();
  for (const auto& s : result.scores) {
    if (s) {
      scores.push_back(*s);
    } else {
      scores.push_back(nullptr);
    }
  }
  j["scores"] = scores;
  Json failures = Json::array();
  for (const JudgeFailure& f : result.failures) {
    failures.push_back(Json{{"index", f.index},
                            {"clip_id", f.clip_id},
                            {"message", f.message}});
  }
  j["failures"] = failures;
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

int run_report_generalization(const std::string& config_path, int jobs_override,
                              const std::string& out_path) {
  const RunConfig rc = load_run_config(config_path);
  const int jobs = jobs_override > 0 ? jobs_override : rc.jobs;
  const std::vector<ClipRecord> clips = load_ground_truth(rc.ground_truth);
  const std::vector<PredictionRecord> preds = load_predictions(rc.predictions);

  const auto score_subset = [&](const std::vector<ClipRecord>& subset) {
    std::set<std::string> ids;
    for (const ClipRecord& c : subset) ids.insert(c.clip_id);
    std::vector<PredictionRecord> sub;
    for (const PredictionRecord& p : preds) {
      if (ids.count(p.clip_id)) sub.push_back(p);
    }
    return evaluate(subset, sub, rc.eval, jobs);
  };
  const ScoreCard baseline = evaluate(clips, preds, rc.eval, jobs);
  const GeneralizationReport report =
      generalization_report(clips, rc.region_map, baseline, score_subset);
  write_output(out_path, render_generalization_report(report));
  return 0;
}

int run_synth(const std::string& out_dir, std::uint64_t seed, int clip_count,
              bool no_geometry) {
  SynthOptions options;
  options.seed = seed;
  options.clip_count = clip_count;
  options.with_geometry = !no_geometry;
  const SynthResult result = write_synth_fixture(out_dir, options);
  for (const std::string& f : result.files_written) {
    std::cout << f << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ScenePilot-Bench evaluation kit"};
  app.require_subcommand(1);
  int rc = 0;

  // score
  std::string score_config, score_out, score_predictions;
  int score_jobs = 0;
  bool score_json = false;
  std::uint64_t score_seed = 0;
  auto* score = app.add_subcommand("score", "Score predictions against ground truth");
  score->add_option("--config", score_config, "Run configuration JSON")
      ->required();
  score->add_option("--jobs", score_jobs, "Worker threads (overrides config)");
  score->add_option("--seed", score_seed,
                    "Accepted for workflow uniformity; scoring is deterministic");
  score->add_option("--out", score_out, "Report path (default: stdout)");
  score->add_option("--predictions", score_predictions,
                    "Predictions file (overrides config)");
  score->add_flag("--json", score_json, "Emit the JSON report");
  score->callback([&] {
    rc = run_score(score_config, score_jobs, score_predictions, score_json,
                   score_out);
  });

  // annotate-geometry
  std::string ann_config, ann_out;
  bool ann_pairs = false;
  auto* annotate = app.add_subcommand(
      "annotate-geometry", "Recover metric distance/azimuth from depth frames");
  annotate->add_option("--config", ann_config, "Run configuration JSON")
      ->required();
  annotate->add_flag("--pairs", ann_pairs, "Also emit pairwise proximities");
  annotate->add_option("--out", ann_out, "Annotation JSONL path (default: stdout)");
  annotate->callback([&] { rc = run_annotate(ann_config, ann_pairs, ann_out); });

  // calibrate
  std::string cal_metric, cal_samples, cal_out;
  auto* calibrate_cmd = app.add_subcommand(
      "calibrate", "Fit normalization thresholds from baseline errors");
  calibrate_cmd->add_option("--metric", cal_metric, "Error-based metric name")
      ->required();
  calibrate_cmd
      ->add_option("--samples", cal_samples, "Text file, one error per line")
      ->required();
  calibrate_cmd->add_option("--out", cal_out, "Output path (default: stdout)");
  calibrate_cmd->callback(
      [&] { rc = run_calibrate(cal_metric, cal_samples, cal_out); });

  // plan-clips
  double plan_duration = 0.0, plan_trim = 180.0, plan_hz = 2.0, plan_len = 5.0;
  std::string plan_out;
  auto* plan = app.add_subcommand("plan-clips",
                                  "Plan 10-frame clips over a video duration");
  plan->add_option("--duration", plan_duration, "Video duration in seconds")
      ->required();
  plan->add_option("--trim", plan_trim, "Seconds trimmed from each end");
  plan->add_option("--hz", plan_hz, "Sampling rate");
  plan->add_option("--clip-len", plan_len, "Clip length in seconds");
  plan->add_option("--out", plan_out, "Output path (default: stdout)");
  plan->callback([&] {
    rc = run_plan(plan_duration, plan_trim, plan_hz, plan_len, plan_out);
  });

  // judge
  std::string judge_requests, judge_endpoint, judge_out;
  std::string judge_path = "/v1/score";
  int judge_timeout = 30, judge_retries = 2, judge_jobs = 1;
  double judge_mock = 0.0;
  auto* judge = app.add_subcommand(
      "judge", "Score free-form answers through the alignment judge");
  judge->add_option("--requests", judge_requests, "Judge request JSONL")
      ->required();
  judge->add_option("--endpoint", judge_endpoint,
                    "Judge base URL (token read from SPBENCH_JUDGE_TOKEN)");
  judge->add_option("--path", judge_path, "Endpoint path");
  judge->add_option("--timeout", judge_timeout, "Request timeout, seconds");
  judge->add_option("--retries", judge_retries, "Retries per request");
  judge->add_option("--jobs", judge_jobs, "Concurrent requests");
  auto* mock_opt = judge->add_option(
      "--mock-score", judge_mock, "Answer every request with this fixed score");
  judge->add_option("--out", judge_out, "Output path (default: stdout)");
  judge->callback([&] {
    rc = run_judge(judge_requests, judge_endpoint, judge_path, judge_timeout,
                   judge_retries, judge_jobs, judge_mock, mock_opt->count() > 0,
                   judge_out);
  });

  // report-generalization
  std::string gen_config, gen_out;
  int gen_jobs = 0;
  auto* gen = app.add_subcommand(
      "report-generalization",
      "Per-region and per-traffic-side score gaps against the baseline");
  gen->add_option("--config", gen_config, "Run configuration JSON")->required();
  gen->add_option("--jobs", gen_jobs, "Worker threads (overrides config)");
  gen->add_option("--out", gen_out, "Output path (default: stdout)");
  gen->callback(
      [&] { rc = run_report_generalization(gen_config, gen_jobs, gen_out); });

  // synth
  std::string synth_out;
  std::uint64_t synth_seed = 7;
  int synth_clips = 100;
  bool synth_no_geo = false;
  auto* synth = app.add_subcommand(
      "synth", "Write a seeded synthetic fixture with known expected scores");
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--seed", synth_seed, "RNG seed");
  synth->add_option("--clips", synth_clips, "Number of clips");
  synth->add_flag("--no-geometry", synth_no_geo, "Skip the geometry fixture");
  synth->callback(
      [&] { rc = run_synth(synth_out, synth_seed, synth_clips, synth_no_geo); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const BenchError& e) {
    std::cerr << "error: " << errc_name(e.code()) << ": " << e.what();
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    if (!e.field().empty()) std::cerr << " [field " << e.field() << "]";
    std::cerr << "\n";
    return e.code() == Errc::config_error ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return rc;
}
