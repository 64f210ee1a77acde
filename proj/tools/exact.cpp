// exact: command-line front end for the ExAct toolchain.
//
// Exit codes: 0 success, 1 domain or format error, 2 I/O error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "exact/exact.hpp"

namespace fs = std::filesystem;

namespace {

using namespace exact;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

Json read_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": invalid JSON: " + e.what());
  }
}

/// Writes to a file when `path` is set, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw IoError("write failed");
  }

 private:
  std::ofstream file_;
};

/// "N" or "LO:HI".
IntRange parse_range(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
      const auto v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
    IntRange r{std::stoll(lo, &used), 0};
    if (used != lo.size()) throw std::invalid_argument(text);
    r.hi = std::stoll(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
    return r;
  } catch (const std::logic_error&) {
    throw ConfigError(std::string("--") + what + " must be N or LO:HI, got '" + text + "'");
  }
}

struct Globals {
  std::string config_path;
  std::optional<Timestep> horizon;
  std::optional<std::uint64_t> provider_seed;
  std::optional<std::size_t> dim;
  std::optional<std::string> semantics;
  std::optional<std::string> disjunction;
  std::optional<std::size_t> cap;

  RunConfig resolve() const {
    RunConfig rc = config_path.empty() ? RunConfig{} : run_config_from_json(read_json_file(config_path));
    if (horizon) rc.horizon = Horizon{*horizon};
    if (provider_seed) rc.provider.seed = *provider_seed;
    if (dim) rc.provider.dim = *dim;
    if (semantics) rc.sensor_semantics = semantics_from_string(*semantics);
    if (disjunction) rc.disjunction = disjunction_from_string(*disjunction);
    if (cap) rc.cap = *cap;
    rc.check();
    return rc;
  }
};

/// A parse error tagged with the file it came from.
class SourceError : public Error {
 public:
  SourceError(const std::string& path, const ParseError& e) : Error(path + ": parse error at " + e.what()) {}
};

ParseResult parse_source(const std::string& path, Horizon horizon) {
  const std::string text = read_file(path);
  try {
    return parse_with_warnings(text, horizon);
  } catch (const ParseError& e) {
    throw SourceError(path, e);
  }
}

MotionProgram parse_file(const std::string& path, Horizon horizon) { return parse_source(path, horizon).program; }

void emit(Output& out, Json j) {
  out.stream() << j.dump(2) << '\n';
  out.finish();
}

Json with_config(Json j, const RunConfig& rc) {
  j["config"] = to_json(rc);
  return j;
}

// ---- commands -------------------------------------------------------------

void cmd_parse(const RunConfig& rc, const std::string& file, Output& out) {
  const ParseResult r = parse_source(file, rc.horizon);
  Json warnings = Json::array();
  for (const auto& w : r.warnings) warnings.push_back(Json{{"motion", w.motion}, {"message", w.message}});
  Json j = to_json(r.program);
  j["canonical"] = print(r.program);
  j["warnings"] = std::move(warnings);
  emit(out, with_config(std::move(j), rc));
}

void cmd_fmt(const RunConfig& rc, const std::string& file, Output& out) {
  out.stream() << print(parse_file(file, rc.horizon)) << '\n';
  out.finish();
}

struct SampleArgs {
  std::size_t n = 1;
  std::uint64_t seed = 0;
  std::string motions = "1:4";
  std::string sensors = "1:3";
  int decimals = 2;
  double gap = 0.25;
  std::string side;
};

void cmd_sample(const RunConfig& rc, const SampleArgs& a, Output& out) {
  SamplerConfig cfg;
  cfg.motions = parse_range(a.motions, "motions");
  cfg.sensors = parse_range(a.sensors, "sensors");
  cfg.horizon = rc.horizon;
  cfg.target_decimals = a.decimals;
  cfg.gap_probability = a.gap;
  if (!a.side.empty()) {
    if (a.side == "left") {
      cfg.channel_pool = channels_on_side(Side::Left);
    } else if (a.side == "right") {
      cfg.channel_pool = channels_on_side(Side::Right);
    } else if (a.side == "center") {
      cfg.channel_pool = channels_on_side(Side::Center);
    } else {
      throw ConfigError("--side must be left, right or center");
    }
  }
  check_config(cfg);
  auto& os = out.stream();
  for (std::size_t i = 0; i < a.n; ++i) {
    cfg.seed = a.seed + i;
    os << Json{{"program", print(sample_program(cfg))}, {"seed", cfg.seed}, {"index", i}}.dump() << '\n';
  }
  out.finish();
}

void cmd_mask(const RunConfig& rc, const std::optional<std::string>& prefix, const std::string& prefix_file,
              const std::string& vocab_file, Output& out) {
  const std::string text = prefix ? *prefix : read_file(prefix_file);
  std::vector<std::string> vocab;
  {
    auto in = open_input(vocab_file);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      vocab.push_back(line);
    }
  }
  const PrefixAutomaton automaton(rc.horizon);
  const auto state = automaton.consume(automaton.start(), text);
  for (bool ok : automaton.allowed_tokens(state, vocab)) out.stream() << (ok ? '1' : '0') << '\n';
  out.finish();
}

void cmd_compile(const RunConfig& rc, const std::string& program_file, const std::string& buffer_file,
                 Output& out) {
  const auto program = parse_file(program_file, rc.horizon);
  auto in = open_input(buffer_file);
  const auto buffer = read_buffer(in);
  const auto provider = rc.make_provider();
  const auto tl = compile_program(program, buffer, provider, rc.horizon, rc.compile_options());
  Json j = to_json(tl);
  j["program"] = print(program);
  j["buffer_size"] = buffer.size();
  emit(out, with_config(std::move(j), rc));
}

std::vector<CollectionRecord> read_collection_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_collection(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

MotionProgram parse_record_in(const std::string& path, const CollectionRecord& r, Horizon horizon) {
  try {
    return parse_record(r, horizon);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void cmd_build(const RunConfig& rc, const std::string& collection, const std::string& label, Output& out) {
  std::vector<MotionProgram> candidates;
  for (const auto& r : read_collection_file(collection)) {
    if (r.action_label == label) candidates.push_back(parse_record_in(collection, r, rc.horizon));
  }
  if (candidates.empty()) throw ConfigError("no records with action_label '" + label + "' in " + collection);
  const auto model = select_model(label, candidates, rc.cap, rc.horizon);
  std::cerr << "selected " << model.programs.size() << " of " << candidates.size() << " programs\n";
  emit(out, with_config(bundle_to_json(model, rc.provider), rc));
}

void cmd_merge(const RunConfig& rc, const std::string& a, const std::string& b, Output& out) {
  const auto merged = merge_sequential(parse_file(a, rc.horizon), parse_file(b, rc.horizon), rc.horizon);
  out.stream() << print(merged) << '\n';
  out.finish();
}

void cmd_score(const RunConfig& rc, const std::string& bundle_file, const std::string& query_file,
               const std::string& mode_name, Output& out) {
  Bundle bundle;
  try {
    bundle = bundle_from_json(read_json_file(bundle_file));
  } catch (const FormatError& e) {
    throw FormatError(bundle_file + ": " + e.what());
  }
  const auto query = parse_file(query_file, bundle.model.horizon);
  const AssessmentModel model{bundle.model.action_label, bundle.model.programs, rc.costs,
                              assessment_mode_from_string(mode_name)};
  Json j{{"action_label", model.target_action},
         {"query", print(query)},
         {"mode", std::string(to_string(model.mode))},
         {"score", score(model, query)}};
  emit(out, with_config(std::move(j), rc));
}

void cmd_auroc(const RunConfig& rc, const std::string& dir, const std::string& mode_name, const std::string& csv,
               Output& out) {
  if (!fs::is_directory(dir)) throw IoError("'" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".jsonl") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, std::vector<MotionProgram>> by_action;
  for (const auto& f : files) {
    for (const auto& r : read_collection_file(f.string())) {
      by_action[r.action_label].push_back(parse_record_in(f.string(), r, rc.horizon));
    }
  }
  const auto mode = assessment_mode_from_string(mode_name);
  std::vector<AssessmentModel> models;
  std::vector<ActionInstances> instances;
  for (auto& [action, programs] : by_action) {
    models.push_back({action, select_diverse(programs, rc.cap), rc.costs, mode});
    instances.push_back({action, std::move(programs)});
  }
  const auto m = auroc_matrix(models, instances);
  if (!csv.empty()) {
    std::ofstream c(csv);
    if (!c) throw IoError("cannot write '" + csv + "'");
    write_csv(c, m);
    if (!c.flush()) throw IoError("write failed for '" + csv + "'");
  }
  emit(out, with_config(to_json(m, mode, rc.costs), rc));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ExAct motion-program toolchain"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  std::string output;
  app.add_option("--config", g.config_path, "JSON run configuration");
  app.add_option("--horizon", g.horizon, "horizon T");
  app.add_option("--provider-seed", g.provider_seed, "mock provider seed");
  app.add_option("--dim", g.dim, "latent dimension");
  app.add_option("--semantics", g.semantics, "sensor semantics: as_written or negated");
  app.add_option("--disjunction", g.disjunction, "as_written or product");
  app.add_option("--cap", g.cap, "maximum programs per model");
  app.add_option("-o,--output", output, "write the result to a file instead of stdout");

  std::string file, file2;
  auto* parse_cmd = app.add_subcommand("parse", "parse a program file and dump its AST");
  parse_cmd->add_option("file", file)->required();
  auto* fmt_cmd = app.add_subcommand("fmt", "print a program file in canonical form");
  fmt_cmd->add_option("file", file)->required();

  SampleArgs sa;
  auto* sample_cmd = app.add_subcommand("sample", "sample random programs as JSON-lines");
  sample_cmd->add_option("--n", sa.n, "number of programs");
  sample_cmd->add_option("--seed", sa.seed, "seed of the first program; line i uses seed + i");
  sample_cmd->add_option("--motions", sa.motions, "motion count, N or LO:HI");
  sample_cmd->add_option("--sensors", sa.sensors, "sensors per motion, N or LO:HI");
  sample_cmd->add_option("--decimals", sa.decimals, "target decimal places (0-4)");
  sample_cmd->add_option("--gap", sa.gap, "probability of a gap before a window");
  sample_cmd->add_option("--side", sa.side, "restrict sensors to left, right or center joints");

  std::optional<std::string> prefix;
  std::string prefix_file, vocab;
  auto* mask_cmd = app.add_subcommand("mask", "token mask for a program prefix");
  auto* prefix_opt = mask_cmd->add_option("--prefix", prefix, "prefix text");
  mask_cmd->add_option("--prefix-file", prefix_file, "file holding the prefix")->excludes(prefix_opt);
  mask_cmd->add_option("--vocab", vocab, "vocabulary file, one token per line")->required();

  auto* compile_cmd = app.add_subcommand("compile", "compile a program against a buffer");
  compile_cmd->add_option("program", file)->required();
  compile_cmd->add_option("buffer", file2)->required();

  std::string label;
  auto* build_cmd = app.add_subcommand("build", "build a model bundle for one action");
  build_cmd->add_option("collection", file)->required();
  build_cmd->add_option("--label", label)->required();

  auto* merge_cmd = app.add_subcommand("merge", "append the second program after the first");
  merge_cmd->add_option("first", file)->required();
  merge_cmd->add_option("second", file2)->required();

  std::string mode = "mean_sigma";
  auto* score_cmd = app.add_subcommand("score", "score a query program against a bundle");
  score_cmd->add_option("bundle", file)->required();
  score_cmd->add_option("query", file2)->required();
  score_cmd->add_option("--mode", mode, "mean_sigma, min_sigma or max_sigma");

  std::string csv;
  auto* auroc_cmd = app.add_subcommand("auroc", "AUROC matrix over a directory of collections");
  auroc_cmd->add_option("dir", file)->required();
  auroc_cmd->add_option("--mode", mode, "mean_sigma, min_sigma or max_sigma");
  auroc_cmd->add_option("--csv", csv, "also write the matrix as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const RunConfig rc = g.resolve();
    if (mask_cmd->parsed() && !prefix && prefix_file.empty()) throw ConfigError("mask needs --prefix or --prefix-file");
    Output out(output);
    if (parse_cmd->parsed()) cmd_parse(rc, file, out);
    if (fmt_cmd->parsed()) cmd_fmt(rc, file, out);
    if (sample_cmd->parsed()) cmd_sample(rc, sa, out);
    if (mask_cmd->parsed()) cmd_mask(rc, prefix, prefix_file, vocab, out);
    if (compile_cmd->parsed()) cmd_compile(rc, file, file2, out);
    if (build_cmd->parsed()) cmd_build(rc, file, label, out);
    if (merge_cmd->parsed()) cmd_merge(rc, file, file2, out);
    if (score_cmd->parsed()) cmd_score(rc, file, file2, mode, out);
    if (auroc_cmd->parsed()) cmd_auroc(rc, file, mode, csv, out);
  } catch (const IoError& e) {
    std::cerr << "exact: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "exact: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "exact: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
