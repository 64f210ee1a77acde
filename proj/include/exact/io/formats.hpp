#pragma once

// File formats:
//   collection  JSON-lines {action_label, program, source_id}
//   buffer      JSON-lines {pos: [69], vel?: [69], extra?: [220], reward}
//   timeline    JSON {dim, horizon, segments: [{t_start, t_end, z}]}
//   bundle      JSON {action_label, programs, cap, selection_meta, provider, horizon}
// Every JSON document written by the CLI also carries the run configuration.

#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "exact/errors.hpp"
#include "exact/eval/assessment.hpp"
#include "exact/model/action_model.hpp"
#include "exact/runtime/compiler.hpp"
#include "exact/runtime/provider.hpp"
#include "exact/syntax/parser.hpp"
#include "exact/syntax/printer.hpp"

namespace exact {

using Json = nlohmann::ordered_json;

struct ProviderConfig {
  std::string kind = "mock";
  std::uint64_t seed = 0;
  std::size_t dim = 32;

  friend bool operator==(const ProviderConfig&, const ProviderConfig&) = default;
};

struct RunConfig {
  Horizon horizon{};
  ProviderConfig provider{};
  SensorSemantics sensor_semantics = SensorSemantics::AsWritten;
  DisjunctionMode disjunction = DisjunctionMode::AsWritten;
  EditCostConfig costs{};
  std::size_t cap = kDefaultCap;

  CompileOptions compile_options() const { return {sensor_semantics, disjunction}; }

  MockProvider make_provider() const {
    if (provider.kind != "mock") throw ConfigError("unsupported provider kind '" + provider.kind + "'");
    return MockProvider(provider.seed, provider.dim);
  }

  void check() const {
    if (horizon.T < 1) throw ConfigError("horizon must be positive");
    if (provider.dim < 1) throw ConfigError("provider dim must be positive");
    if (cap < 1) throw ConfigError("cap must be at least 1");
    costs.check();
  }
};

inline Json to_json(const EditCostConfig& c) {
  return Json{{"w_side", c.w_side},     {"w_joint", c.w_joint},
              {"w_axis", c.w_axis},     {"w_target", c.w_target},
              {"ins_del_sensor", c.ins_del_sensor}, {"ins_del_motion", c.ins_del_motion}};
}

inline Json to_json(const ProviderConfig& p) {
  return Json{{"kind", p.kind}, {"seed", p.seed}, {"dim", p.dim}};
}

inline Json to_json(const RunConfig& rc) {
  return Json{{"horizon", rc.horizon.T},
              {"provider", to_json(rc.provider)},
              {"sensor_semantics", std::string(to_string(rc.sensor_semantics))},
              {"disjunction", std::string(to_string(rc.disjunction))},
              {"costs", to_json(rc.costs)},
              {"cap", rc.cap}};
}

namespace detail {

template <class T>
void read_field(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace detail

inline ProviderConfig provider_from_json(const Json& j) {
  ProviderConfig p;
  detail::read_field(j, "kind", p.kind);
  detail::read_field(j, "seed", p.seed);
  detail::read_field(j, "dim", p.dim);
  return p;
}

/// Missing fields keep their defaults.
inline RunConfig run_config_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("run config must be a JSON object");
  RunConfig rc;
  detail::read_field(j, "horizon", rc.horizon.T);
  if (j.contains("provider")) rc.provider = provider_from_json(j.at("provider"));
  std::string text;
  if (j.contains("sensor_semantics")) {
    detail::read_field(j, "sensor_semantics", text);
    rc.sensor_semantics = semantics_from_string(text);
  }
  if (j.contains("disjunction")) {
    detail::read_field(j, "disjunction", text);
    rc.disjunction = disjunction_from_string(text);
  }
  if (j.contains("costs")) {
    const Json& c = j.at("costs");
    detail::read_field(c, "w_side", rc.costs.w_side);
    detail::read_field(c, "w_joint", rc.costs.w_joint);
    detail::read_field(c, "w_axis", rc.costs.w_axis);
    detail::read_field(c, "w_target", rc.costs.w_target);
    detail::read_field(c, "ins_del_sensor", rc.costs.ins_del_sensor);
    detail::read_field(c, "ins_del_motion", rc.costs.ins_del_motion);
  }
  detail::read_field(j, "cap", rc.cap);
  rc.check();
  return rc;
}

/// AST dump used by `exact parse`.
inline Json to_json(const MotionProgram& p) {
  Json motions = Json::array();
  for (const auto& m : p.motions) {
    Json sensors = Json::array();
    for (const auto& s : m.sensors) {
      sensors.push_back(Json{{"joint", std::string(info(s.channel.joint).name)},
                             {"axis", std::string(1, axis_char(s.channel.axis))},
                             {"channel", s.channel.index()},
                             {"target", s.target.value()}});
    }
    motions.push_back(Json{{"t_start", m.t_start}, {"t_end", m.t_end}, {"sensors", std::move(sensors)}});
  }
  return Json{{"motions", std::move(motions)}};
}

// ---- collections ----------------------------------------------------------

struct CollectionRecord {
  std::string action_label;
  std::string program;
  std::string source_id;
  std::size_t line = 0;
};

namespace detail {

inline Json parse_line(const std::string& text, std::size_t line) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what(), line);
  }
}

inline bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

template <class T>
T required(const Json& j, const char* key, std::size_t line) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'", line);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what(), line);
  }
}

}  // namespace detail

inline std::vector<CollectionRecord> read_collection(std::istream& in) {
  std::vector<CollectionRecord> out;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    if (detail::blank(text)) continue;
    const Json j = detail::parse_line(text, line);
    CollectionRecord r;
    r.action_label = detail::required<std::string>(j, "action_label", line);
    r.program = detail::required<std::string>(j, "program", line);
    r.source_id = j.contains("source_id") ? detail::required<std::string>(j, "source_id", line) : "";
    r.line = line;
    out.push_back(std::move(r));
  }
  return out;
}

inline void write_collection_record(std::ostream& out, const CollectionRecord& r) {
  out << Json{{"action_label", r.action_label}, {"program", r.program}, {"source_id", r.source_id}}.dump()
      << '\n';
}

/// Parses every record's program; syntax errors are reported with the record's line.
inline MotionProgram parse_record(const CollectionRecord& r, Horizon horizon) {
  try {
    return parse(r.program, horizon);
  } catch (const Error& e) {
    throw FormatError(std::string("program: ") + e.what(), r.line);
  }
}

// ---- buffers --------------------------------------------------------------

namespace detail {

inline std::vector<double> numbers(const Json& j, const char* key, std::size_t line) {
  const auto v = required<std::vector<double>>(j, key, line);
  for (double x : v) {
    if (!std::isfinite(x)) throw FormatError(std::string("field '") + key + "' has a non-finite value", line);
  }
  return v;
}

inline ChannelVector channels(const Json& j, const char* key, std::size_t line) {
  const auto v = numbers(j, key, line);
  if (v.size() != kChannelCount) {
    throw FormatError(std::string("field '") + key + "' must have 69 values, got " + std::to_string(v.size()),
                      line);
  }
  ChannelVector out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

}  // namespace detail

inline Buffer read_buffer(std::istream& in) {
  Buffer out;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    if (detail::blank(text)) continue;
    const Json j = detail::parse_line(text, line);
    BufferEntry e;
    e.state.pos = detail::channels(j, "pos", line);
    if (j.contains("vel")) e.state.vel = detail::channels(j, "vel", line);
    if (j.contains("extra")) e.state.extra = detail::numbers(j, "extra", line);
    e.reward = detail::required<double>(j, "reward", line);
    if (!std::isfinite(e.reward)) throw FormatError("reward must be finite", line);
    try {
      e.state.check();
    } catch (const Error& err) {
      throw FormatError(err.what(), line);
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline void write_buffer_entry(std::ostream& out, const BufferEntry& e) {
  Json j{{"pos", e.state.pos}};
  if (e.state.vel) j["vel"] = *e.state.vel;
  if (e.state.extra) j["extra"] = *e.state.extra;
  j["reward"] = e.reward;
  out << j.dump() << '\n';
}

// ---- timelines ------------------------------------------------------------

inline Json to_json(const LatentTimeline& t) {
  Json segments = Json::array();
  for (const auto& s : t.segments()) {
    segments.push_back(Json{{"t_start", s.t_start}, {"t_end", s.t_end}, {"z", s.z}});
  }
  return Json{{"dim", t.dim()}, {"horizon", t.horizon().T}, {"segments", std::move(segments)}};
}

inline LatentTimeline timeline_from_json(const Json& j) {
  const auto dim = detail::required<std::size_t>(j, "dim", 0);
  const auto horizon = Horizon{detail::required<Timestep>(j, "horizon", 0)};
  std::vector<TimelineSegment> segs;
  for (const auto& s : detail::required<Json>(j, "segments", 0)) {
    segs.push_back({detail::required<Timestep>(s, "t_start", 0), detail::required<Timestep>(s, "t_end", 0),
                    detail::required<LatentVector>(s, "z", 0)});
  }
  for (std::size_t i = 1; i < segs.size(); ++i) {
    if (segs[i].t_start <= segs[i - 1].t_end) throw FormatError("timeline segments overlap or are unsorted");
  }
  try {
    return LatentTimeline::resolve(horizon, dim, segs);
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
}

// ---- model bundles --------------------------------------------------------

inline Json to_json(const SelectionMeta& m) {
  return Json{{"candidate_count", m.candidate_count}, {"diversity_score", m.diversity_score}};
}

inline Json bundle_to_json(const ExecutableActionModel& model, const ProviderConfig& provider) {
  Json programs = Json::array();
  for (const auto& p : model.programs) programs.push_back(print(p));
  return Json{{"action_label", model.action_label},
              {"programs", std::move(programs)},
              {"cap", model.cap},
              {"selection_meta", to_json(model.selection_meta)},
              {"provider", to_json(provider)},
              {"horizon", model.horizon.T}};
}

struct Bundle {
  ExecutableActionModel model;
  ProviderConfig provider;
};

inline Bundle bundle_from_json(const Json& j) {
  Bundle b;
  b.model.action_label = detail::required<std::string>(j, "action_label", 0);
  b.model.cap = detail::required<std::size_t>(j, "cap", 0);
  b.model.horizon = Horizon{detail::required<Timestep>(j, "horizon", 0)};
  const Json meta = detail::required<Json>(j, "selection_meta", 0);
  b.model.selection_meta.candidate_count = detail::required<std::size_t>(meta, "candidate_count", 0);
  b.model.selection_meta.diversity_score = detail::required<double>(meta, "diversity_score", 0);
  b.provider = provider_from_json(detail::required<Json>(j, "provider", 0));
  for (const auto& text : detail::required<std::vector<std::string>>(j, "programs", 0)) {
    try {
      b.model.programs.push_back(parse(text, b.model.horizon));
    } catch (const Error& e) {
      throw FormatError(std::string("bundle program: ") + e.what());
    }
  }
  if (b.model.programs.empty()) throw FormatError("bundle has no programs");
  if (b.model.programs.size() > b.model.cap) throw FormatError("bundle holds more programs than its cap");
  return b;
}

// ---- AUROC ----------------------------------------------------------------

inline Json to_json(const AurocMatrix& m, AssessmentMode mode, const EditCostConfig& costs) {
  return Json{{"actions", m.actions},
              {"matrix", m.cells},
              {"mean_auc", m.mean_auc},
              {"mode", std::string(to_string(mode))},
              {"costs", to_json(costs)}};
}

inline void write_csv(std::ostream& out, const AurocMatrix& m) {
  out << "target";
  for (const auto& a : m.actions) out << ',' << a;
  out << '\n';
  for (std::size_t i = 0; i < m.actions.size(); ++i) {
    out << m.actions[i];
    for (double v : m.cells[i]) out << ',' << Json(v).dump();
    out << '\n';
  }
}

}  // namespace exact
