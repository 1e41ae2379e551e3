#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ccsni/core.hpp"
#include "ccsni/json_io.hpp"
#include "ccsni/parser.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ccsni;

namespace {

constexpr const char* kVersion = "1.0.0";

// exit codes: 0 positive verdict, 1 negative verdict, 2 usage/input error,
// 3 resource cap hit
constexpr int kOk = 0, kNegative = 1, kInputError = 2, kResource = 3;

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A FILE.levels.json sidecar declares a non-chain lattice:
// {"elements": [...], "cover": [["a","b"], ...]}.
void apply_sidecar(Program& prog, const std::string& path) {
  fs::path side = fs::path(path);
  side.replace_extension(".levels.json");
  if (!fs::exists(side)) return;
  json j = json::parse(slurp(side.string()));
  std::vector<Level> elems = j.at("elements").get<std::vector<Level>>();
  std::vector<std::pair<Level, Level>> pairs;
  for (const auto& p : j.at("cover"))
    pairs.emplace_back(p.at(0).get<Level>(), p.at(1).get<Level>());
  std::string err;
  auto lat = SecurityLattice::from_order(elems, pairs, &err);
  if (!lat) throw std::runtime_error(side.string() + ": " + err);
  prog.lattice = *lat;
}

Program load(const std::string& path) {
  Program prog = parse(slurp(path), path);
  apply_sidecar(prog, path);
  auto diags = check_wellformed(prog);
  if (!diags.empty()) {
    std::string msg = path + ": ";
    for (const auto& d : diags) msg += d.code + " (" + d.message + "); ";
    throw std::runtime_error(msg);
  }
  return prog;
}

// Semantic security checks are defined over the collapsed two-point lattice.
void require_two_point(const Program& prog) {
  if (!prog.lattice.is_two_point())
    throw std::runtime_error(
        "security checks require the two-point lattice {l, h}");
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json base_report(bool timing, const Timer& t) {
  json j = {{"version", kVersion}};
  if (timing) j["ms"] = t.ms();
  return j;
}

int cmd_parse(const std::string& file, bool timing) {
  Timer t;
  Program prog = load(file);
  json j = base_report(timing, t);
  j["file"] = file;
  j["pretty"] = pretty_print(prog);
  emit(j);
  return kOk;
}

int cmd_lts(const std::string& file, std::size_t max_states,
            const std::string& format, bool timing) {
  Timer t;
  Program prog = load(file);
  Lts lts = build_lts(prog, max_states);
  if (format == "dot") {
    std::cout << to_dot(lts);
  } else {
    json j = base_report(timing, t);
    j["file"] = file;
    j["lts"] = to_json(lts);
    emit(j);
  }
  return kOk;
}

EquivKind parse_kind(const std::string& s) {
  if (s == "weak") return EquivKind::Weak;
  if (s == "uptohigh") return EquivKind::UpToHigh;
  return EquivKind::RefinedUpToHigh;
}

int cmd_bisim(const std::string& kind, const std::string& fp,
              const std::string& fq, std::size_t max_states, bool timing) {
  Timer t;
  Lts p = build_lts(load(fp), max_states);
  Lts q = build_lts(load(fq), max_states);
  Verdict v = check(parse_kind(kind), p, q);
  json j = base_report(timing, t);
  j["kind"] = kind;
  j["verdict"] = to_json(v);
  emit(j);
  return v.equivalent ? kOk : kNegative;
}

int cmd_typecheck(const std::string& system, const std::string& file,
                  bool timing) {
  Timer t;
  Program prog = load(file);
  json j = base_report(timing, t);
  j["file"] = file;
  bool ok;
  if (system == "simple") {
    SimpleOutcome o = infer_simple(prog);
    j["report"] = to_json(o);
    ok = o.typeable;
  } else {
    AsymOutcome o = infer_asym(prog);
    j["report"] = to_json(o);
    ok = o.typeable;
  }
  emit(j);
  return ok ? kOk : kNegative;
}

int cmd_secure(const std::string& property, const std::string& file, int depth,
               int width, const std::string& attacker_file,
               std::size_t max_states, bool timing) {
  Timer t;
  Program prog = load(file);
  require_two_point(prog);
  SecurityVerdict v;
  json j = base_report(timing, t);
  if (property == "pbndc") {
    v = check_pbndc(prog, max_states);
  } else if (property == "wbndc") {
    v = check_wbndc(prog, max_states);
  } else if (!attacker_file.empty()) {
    Program atk = load(attacker_file);
    v = check_bndc_with(prog, atk.main, max_states);
    j["regime"] = "single-attacker";
  } else {
    v = check_bndc(prog, depth, width, max_states);
    j["regime"] = "bounded-refutation";
  }
  j["file"] = file;
  j["verdict"] = to_json(v, property);
  emit(j);
  return v.status == SecStatus::Insecure ? kNegative : kOk;
}

std::string bndc_expect_string(const SecurityVerdict& v) {
  std::string bounds =
      "@" + std::to_string(v.k) + "," + std::to_string(v.w);
  return (v.status == SecStatus::Insecure ? "insecure" : "no-cex") + bounds;
}

int cmd_corpus(const std::string& dir, bool timing) {
  Timer t;
  fs::path manifest = fs::path(dir) / "expectations.json";
  json expectations = json::object();
  if (fs::exists(manifest)) expectations = json::parse(slurp(manifest.string()));

  json entries = json::array();
  bool all_ok = true;
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".ccsni") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());

  for (const auto& file : files) {
    std::string name = fs::path(file).filename().string();
    json entry = {{"file", name}};
    json checks = json::object();
    const json exp = expectations.contains(name) ? expectations[name]
                                                 : json::object();
    Program prog = load(file);
    auto record = [&](const std::string& key, const std::string& got) {
      json c = {{"got", got}};
      if (exp.contains(key)) {
        std::string want = exp[key].is_boolean()
                               ? (exp[key].get<bool>() ? "true" : "false")
                               : exp[key].get<std::string>();
        c["want"] = want;
        c["match"] = (want == got);
        if (want != got) all_ok = false;
      }
      checks[key] = c;
    };
    record("simple", infer_simple(prog).typeable ? "true" : "false");
    record("asym", infer_asym(prog).typeable ? "true" : "false");
    record("pbndc", check_pbndc(prog).status == SecStatus::Secure
                        ? "secure"
                        : "insecure");
    record("wbndc", check_wbndc(prog).status == SecStatus::Secure
                        ? "secure"
                        : "insecure");
    if (exp.contains("bndc")) {
      // expectation format: insecure@k,w | no-cex@k,w
      std::string want = exp["bndc"].get<std::string>();
      int k = 2, w = 2;
      auto at = want.find('@');
      if (at != std::string::npos) {
        auto comma = want.find(',', at);
        k = std::stoi(want.substr(at + 1, comma - at - 1));
        w = std::stoi(want.substr(comma + 1));
      }
      record("bndc", bndc_expect_string(check_bndc(prog, k, w)));
    }
    entry["checks"] = checks;
    entries.push_back(entry);
  }
  json j = base_report(timing, t);
  j["dir"] = dir;
  j["entries"] = entries;
  j["ok"] = all_ok;
  emit(j);
  return all_ok ? kOk : kNegative;
}

// Searches small asym-typeable partners R over the program's channels and
// values; reports every R where main is P-BNDC secure but main | R is not.
int cmd_experiment(const std::string& file, std::size_t max_states,
                   bool timing) {
  Timer t;
  Program prog = load(file);
  require_two_point(prog);

  std::set<ChannelName> chans;
  for (const auto& ch : free_names(prog)) chans.insert(ch);

  std::vector<ProcPtr> layer{Process::nil()};
  std::vector<ProcPtr> contexts;
  for (int d = 0; d < 2; ++d) {
    std::vector<ProcPtr> next;
    for (const auto& cont : layer)
      for (const auto& ch : chans) {
        next.push_back(Process::prefixed(Prefix::input(ch, "z"), cont));
        for (const auto& v : prog.values)
          next.push_back(
              Process::prefixed(Prefix::output(ch, Payload::value(v)), cont));
      }
    contexts.insert(contexts.end(), next.begin(), next.end());
    layer = std::move(next);
  }

  bool base_secure = check_pbndc(prog, max_states).status == SecStatus::Secure;
  json findings = json::array();
  for (const auto& r : contexts) {
    Program typed = prog;
    typed.main = r;
    if (!infer_asym(typed).typeable) continue;
    Program composed = prog;
    composed.main = Process::par(prog.main, r);
    bool secure =
        check_pbndc(composed, max_states).status == SecStatus::Secure;
    if (base_secure && !secure)
      findings.push_back({{"context", pretty_print(r)},
                          {"composed_pbndc", "insecure"}});
  }
  json j = base_report(timing, t);
  j["file"] = file;
  j["base_pbndc"] = base_secure ? "secure" : "insecure";
  j["findings"] = findings;
  emit(j);
  return findings.empty() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Security-annotated value-passing CCS toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  bool no_timing = false;
  std::size_t max_states = kDefaultStateCap;
  app.add_flag("--no-timing", no_timing, "omit timings from reports");
  app.add_option("--max-states", max_states, "state space cap");

  std::string file, file_q, format = "json", kind = "weak", system = "simple";
  std::string property = "pbndc", attacker, experiment_name;
  int depth = 2, width = 2;

  auto* parse_cmd = app.add_subcommand("parse", "parse and pretty-print");
  parse_cmd->add_option("file", file)->required();

  auto* lts_cmd = app.add_subcommand("lts", "build and export the LTS");
  lts_cmd->add_option("file", file)->required();
  lts_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"dot", "json"}));

  auto* bisim_cmd = app.add_subcommand("bisim", "equivalence check");
  bisim_cmd->add_option("--kind", kind)
      ->check(CLI::IsMember({"weak", "uptohigh", "refined"}));
  bisim_cmd->add_option("file_p", file)->required();
  bisim_cmd->add_option("file_q", file_q)->required();

  auto* type_cmd = app.add_subcommand("typecheck", "type inference");
  type_cmd->add_option("--system", system)
      ->check(CLI::IsMember({"simple", "asym"}));
  type_cmd->add_option("file", file)->required();

  auto* secure_cmd = app.add_subcommand("secure", "security property check");
  secure_cmd->add_option("--property", property)
      ->check(CLI::IsMember({"pbndc", "wbndc", "bndc"}));
  secure_cmd->add_option("--depth", depth)->check(CLI::PositiveNumber);
  secure_cmd->add_option("--width", width)->check(CLI::PositiveNumber);
  secure_cmd->add_option("--attacker", attacker);
  secure_cmd->add_option("file", file)->required();

  auto* corpus_cmd = app.add_subcommand("corpus", "golden corpus runner");
  corpus_cmd->add_option("dir", file)->required();
  std::string report_fmt = "json";
  corpus_cmd->add_option("--report", report_fmt)
      ->check(CLI::IsMember({"json"}));

  auto* exp_cmd = app.add_subcommand("experiment", "open-question experiments");
  exp_cmd->add_option("name", experiment_name)
      ->required()
      ->check(CLI::IsMember({"typed-context-closure"}));
  exp_cmd->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  bool timing = !no_timing;
  try {
    if (parse_cmd->parsed()) return cmd_parse(file, timing);
    if (lts_cmd->parsed()) return cmd_lts(file, max_states, format, timing);
    if (bisim_cmd->parsed())
      return cmd_bisim(kind, file, file_q, max_states, timing);
    if (type_cmd->parsed()) return cmd_typecheck(system, file, timing);
    if (secure_cmd->parsed())
      return cmd_secure(property, file, depth, width, attacker, max_states,
                        timing);
    if (corpus_cmd->parsed()) return cmd_corpus(file, timing);
    if (exp_cmd->parsed()) return cmd_experiment(file, max_states, timing);
  } catch (const StateSpaceExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const PairSpaceExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
