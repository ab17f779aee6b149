#include "scenepilot/jsonl.hpp"

#include "scenepilot/error.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>
#include <set>
#include <string>

namespace scenepilot {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void malformed(std::size_t line_no, const std::string& why) {
  throw BenchError(Errc::malformed_line,
                   "line " + std::to_string(line_no) + ": " + why, line_no);
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

Json parse_line(const std::string& line, std::size_t line_no) {
  Json j = Json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    malformed(line_no, "not a JSON object");
  }
  return j;
}

Vec3 read_point(const Json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw BenchError(Errc::malformed_line, "point must be a 3-element array");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Json point_json(const Vec3& p) {
  return Json::array({p.x(), p.y(), p.z()});
}

BBox read_bbox(const Json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw BenchError(Errc::malformed_line, "bbox must be a 4-element array");
  }
  return BBox{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
              j[3].get<double>()};
}

Json bbox_json(const BBox& b) {
  return Json::array({b.x_min, b.y_min, b.x_max, b.y_max});
}

template <typename Enum>
Enum read_enum(const Json& j, std::optional<Enum> (*from_string)(const std::string&),
               const char* what) {
  const auto v = from_string(j.get<std::string>());
  if (!v) {
    throw BenchError(Errc::malformed_line, std::string("unknown ") + what +
                                               " '" + j.get<std::string>() + "'");
  }
  return *v;
}

MetaAction read_meta_action(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw BenchError(Errc::malformed_line,
                     "meta_action must be a [longitudinal, lateral] pair");
  }
  MetaAction a;
  a.longitudinal = read_enum(j[0], &longitudinal_from_string, "longitudinal action");
  a.lateral = read_enum(j[1], &lateral_from_string, "lateral action");
  return a;
}

ClipRecord decode_clip(const Json& j) {
  ClipRecord rec;
  rec.clip_id = j.at("clip_id").get<std::string>();
  rec.country = j.at("country").get<std::string>();
  rec.traffic_side = read_enum(j.at("traffic_side"), &traffic_side_from_string,
                               "traffic side");
  rec.timestamps = j.at("timestamps").get<std::vector<double>>();
  rec.scene_description = j.at("scene_description").get<std::string>();
  rec.risk_score = j.at("risk_score").get<int>();
  for (const Json& pj : j.at("participants")) {
    ParticipantGT p;
    p.object_id = pj.at("object_id").get<std::string>();
    p.cls = read_enum(pj.at("class"), &participant_class_from_string, "class");
    p.bbox = read_bbox(pj.at("bbox"));
    p.distance_m = pj.at("distance_m").get<double>();
    p.azimuth_rad = pj.at("azimuth_rad").get<double>();
    rec.participants.push_back(std::move(p));
  }
  for (const Json& pt : j.at("ego_trajectory")) {
    rec.ego_trajectory.push_back(read_point(pt));
  }
  for (const Json& pt : j.at("future_trajectory")) {
    rec.future_trajectory.push_back(read_point(pt));
  }
  rec.meta_action_gt = read_meta_action(j.at("meta_action"));
  return rec;
}

PredictionRecord decode_prediction(const Json& j) {
  PredictionRecord rec;
  rec.clip_id = j.at("clip_id").get<std::string>();
  const std::string task_str = j.at("task").get<std::string>();
  const auto task = task_from_string(task_str);
  if (!task) {
    throw BenchError(Errc::unknown_task, "unknown task '" + task_str + "'");
  }
  rec.task = *task;
  if (j.contains("target_id")) {
    rec.target_id = j.at("target_id").get<std::string>();
  }
  if (j.contains("pair_ids")) {
    const Json& p = j.at("pair_ids");
    if (!p.is_array() || p.size() != 2) {
      throw BenchError(Errc::malformed_line, "pair_ids must name two objects");
    }
    rec.pair_ids = {p[0].get<std::string>(), p[1].get<std::string>()};
  }
  const Json& v = j.at("value");
  const auto expect = [&](bool ok) {
    if (!ok) {
      throw BenchError(Errc::task_payload_mismatch,
                       "payload does not match task '" + task_str + "'");
    }
  };
  switch (rec.task) {
    case Task::scene_desc:
    case Task::free_qa:
      expect(v.is_string());
      rec.value = TextPayload{v.get<std::string>()};
      break;
    case Task::risk: {
      expect(v.is_string());
      const auto risk = risk_class_from_string(v.get<std::string>());
      expect(risk.has_value());
      rec.value = RiskPayload{*risk};
      break;
    }
    case Task::participant_class: {
      expect(v.is_string());
      const auto cls = participant_class_from_string(v.get<std::string>());
      expect(cls.has_value());
      rec.value = ClassPayload{*cls};
      break;
    }
    case Task::ego_distance:
    case Task::ego_angle:
    case Task::pair_distance:
    case Task::pair_angle:
      expect(v.is_number());
      rec.value = ScalarPayload{v.get<double>()};
      break;
    case Task::meta_action:
      rec.value = MetaActionPayload{read_meta_action(v)};
      break;
    case Task::trajectory: {
      expect(v.is_array());
      TrajectoryPayload traj;
      for (const Json& pt : v) traj.points.push_back(read_point(pt));
      if (traj.points.size() != kFuturePoints) {
        throw BenchError(Errc::task_payload_mismatch,
                         "trajectory payload must carry exactly 7 points, got " +
                             std::to_string(traj.points.size()));
      }
      rec.value = std::move(traj);
      break;
    }
  }
  if (j.contains("judge_score")) {
    rec.judge_score = j.at("judge_score").get<double>();
  }
  return rec;
}

DetectionRecord decode_detection(const Json& j) {
  DetectionRecord rec;
  if (j.contains("clip_id")) rec.clip_id = j.at("clip_id").get<std::string>();
  rec.frame_index = j.at("frame_index").get<int>();
  rec.object_id = j.at("object_id").get<std::string>();
  rec.cls = read_enum(j.at("class"), &participant_class_from_string, "class");
  rec.confidence = j.at("confidence").get<double>();
  rec.bbox = read_bbox(j.at("bbox"));
  return rec;
}

// Runs one decoder over a line stream, rethrowing every failure with the
// line number attached.
template <typename Record, typename Decoder>
std::vector<Record> parse_stream(std::istream& in, Decoder decode) {
  std::vector<Record> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    try {
      Json j = parse_line(line, line_no);
      Record rec = decode(j);
      rec.validate();
      out.push_back(std::move(rec));
    } catch (const BenchError& e) {
      if (e.line() != 0) throw;
      throw BenchError(e.code(),
                       "line " + std::to_string(line_no) + ": " + e.what(),
                       line_no, e.field());
    } catch (const Json::exception& e) {
      malformed(line_no, e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<ClipRecord> parse_ground_truth(std::istream& in) {
  auto recs = parse_stream<ClipRecord>(in, &decode_clip);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (!seen.insert(recs[i].clip_id).second) {
      throw BenchError(Errc::duplicate_clip_id,
                       "duplicate clip_id '" + recs[i].clip_id + "'", i + 1);
    }
  }
  return recs;
}

std::vector<PredictionRecord> parse_predictions(std::istream& in) {
  return parse_stream<PredictionRecord>(in, &decode_prediction);
}

std::vector<DetectionRecord> parse_detections(std::istream& in) {
  return parse_stream<DetectionRecord>(in, &decode_detection);
}

std::string to_jsonl(const ClipRecord& rec) {
  Json j;
  j["clip_id"] = rec.clip_id;
  j["country"] = rec.country;
  j["traffic_side"] = to_string(rec.traffic_side);
  j["timestamps"] = rec.timestamps;
  j["scene_description"] = rec.scene_description;
  j["risk_score"] = rec.risk_score;
  Json parts = Json::array();
  for (const ParticipantGT& p : rec.participants) {
    Json pj;
    pj["object_id"] = p.object_id;
    pj["class"] = to_string(p.cls);
    pj["bbox"] = bbox_json(p.bbox);
    pj["distance_m"] = p.distance_m;
    pj["azimuth_rad"] = p.azimuth_rad;
    parts.push_back(std::move(pj));
  }
  j["participants"] = std::move(parts);
  Json ego = Json::array();
  for (const Vec3& p : rec.ego_trajectory) ego.push_back(point_json(p));
  j["ego_trajectory"] = std::move(ego);
  Json fut = Json::array();
  for (const Vec3& p : rec.future_trajectory) fut.push_back(point_json(p));
  j["future_trajectory"] = std::move(fut);
  j["meta_action"] = Json::array({to_string(rec.meta_action_gt.longitudinal),
                                  to_string(rec.meta_action_gt.lateral)});
  return j.dump();
}

std::string to_jsonl(const PredictionRecord& rec) {
  Json j;
  j["clip_id"] = rec.clip_id;
  j["task"] = to_string(rec.task);
  if (rec.target_id) j["target_id"] = *rec.target_id;
  if (rec.pair_ids) {
    j["pair_ids"] = Json::array({rec.pair_ids->first, rec.pair_ids->second});
  }
  std::visit(
      [&](const auto& payload) {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, TextPayload>) {
          j["value"] = payload.text;
        } else if constexpr (std::is_same_v<T, RiskPayload>) {
          j["value"] = to_string(payload.risk);
        } else if constexpr (std::is_same_v<T, ClassPayload>) {
          j["value"] = to_string(payload.cls);
        } else if constexpr (std::is_same_v<T, ScalarPayload>) {
          j["value"] = payload.value;
        } else if constexpr (std::is_same_v<T, MetaActionPayload>) {
          j["value"] = Json::array({to_string(payload.action.longitudinal),
                                    to_string(payload.action.lateral)});
        } else if constexpr (std::is_same_v<T, TrajectoryPayload>) {
          Json pts = Json::array();
          for (const Vec3& p : payload.points) pts.push_back(point_json(p));
          j["value"] = std::move(pts);
        }
      },
      rec.value);
  if (rec.judge_score) j["judge_score"] = *rec.judge_score;
  return j.dump();
}

std::string to_jsonl(const DetectionRecord& rec) {
  Json j;
  if (!rec.clip_id.empty()) j["clip_id"] = rec.clip_id;
  j["frame_index"] = rec.frame_index;
  j["object_id"] = rec.object_id;
  j["class"] = to_string(rec.cls);
  j["confidence"] = rec.confidence;
  j["bbox"] = bbox_json(rec.bbox);
  return j.dump();
}

namespace {
template <typename Record>
void write_all(std::ostream& out, const std::vector<Record>& recs) {
  for (const Record& r : recs) out << to_jsonl(r) << '\n';
}
}  // namespace

void write_ground_truth(std::ostream& out, const std::vector<ClipRecord>& recs) {
  write_all(out, recs);
}
void write_predictions(std::ostream& out, const std::vector<PredictionRecord>& recs) {
  write_all(out, recs);
}
void write_detections(std::ostream& out, const std::vector<DetectionRecord>& recs) {
  write_all(out, recs);
}

}  // namespace scenepilot
