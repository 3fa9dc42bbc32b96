#include <CLI/CLI.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oqec/channels.hpp"
#include "oqec/codes.hpp"
#include "oqec/conditions.hpp"
#include "oqec/error.hpp"
#include "oqec/io.hpp"
#include "oqec/recovery.hpp"

namespace {

using oqec::io::json;
namespace fs = std::filesystem;

constexpr int kPass = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct RunConfig {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::size_t trials = 50;
  std::string out;
  bool json = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double default_tolerance() {
  const char* env = std::getenv("OQEC_TOL");
  if (env == nullptr || *env == '\0') return 1e-9;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(env, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(env).size() || !std::isfinite(value) || value <= 0.0) {
    throw UsageError(std::string("OQEC_TOL must be a positive number, got '") + env + "'");
  }
  return value;
}

json envelope(const std::string& command, const RunConfig& cfg) {
  return {{"tool", "oqec"},
          {"version", OQEC_VERSION},
          {"command", command},
          {"tolerance", cfg.tol},
          {"seed", cfg.seed}};
}

void emit(const json& report, const std::string& text, const RunConfig& cfg,
          bool write_out = true) {
  if (cfg.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  if (write_out && !cfg.out.empty()) oqec::io::write_file(cfg.out, report);
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

struct Problem {
  oqec::Decomposition dec;
  oqec::Channel ch;
};

Problem load(const std::string& dec_path, const std::string& ch_path) {
  Problem p{oqec::io::decomposition_from_json(oqec::io::read_file(dec_path)),
            oqec::io::channel_from_json(oqec::io::read_file(ch_path))};
  if (p.ch.dim_in != p.dec.dim_v() || p.ch.dim_out != p.dec.dim_v()) {
    throw oqec::DimensionError("channel is " + std::to_string(p.ch.dim_out) + "x" +
                               std::to_string(p.ch.dim_in) + " but the decomposition has dim_v " +
                               std::to_string(p.dec.dim_v()));
  }
  oqec::require_admissible(p.ch);
  return p;
}

int cmd_check(const std::string& dec_path, const std::string& ch_path,
              const std::string& condition, const RunConfig& cfg) {
  const Problem p = load(dec_path, ch_path);
  std::vector<oqec::ConditionReport> reports;
  if (condition == "b" || condition == "all") {
    reports.push_back(oqec::check_condition_b(p.dec, p.ch, cfg.tol));
  }
  if (condition != "b") {
    const auto ps = oqec::purify(p.dec, p.ch);
    if (condition == "c" || condition == "all") reports.push_back(oqec::check_condition_c(ps, cfg.tol));
    if (condition == "d" || condition == "all") reports.push_back(oqec::check_condition_d(ps, cfg.tol));
  }

  json report = envelope("check", cfg);
  report["conditions"] = json::array();
  std::ostringstream text;
  bool pass = true;
  for (const auto& rep : reports) {
    pass = pass && rep.pass;
    report["conditions"].push_back(oqec::io::to_json(rep, cfg.json));
    text << "condition " << oqec::to_string(rep.condition) << ": "
         << (rep.pass ? "PASS" : "FAIL") << "  residual " << fmt(rep.residual);
    if (const auto* w = std::get_if<oqec::ConditionBWitness>(&rep.witness); w && !rep.pass) {
      text << "  worst pair (" << w->worst_pair.first << ", " << w->worst_pair.second
           << ") residual " << fmt(w->max_pair_residual);
    }
    if (const auto* w = std::get_if<oqec::ConditionDWitness>(&rep.witness)) {
      text << "  S_A " << fmt(w->s_a) << "  S_V " << fmt(w->s_v) << "  S_RBE " << fmt(w->s_rbe);
    }
    for (const auto& note : rep.notes) text << "  [" << note << "]";
    text << "\n";
  }
  const double fid = oqec::entanglement_fidelity(p.dec, p.ch);
  report["entanglement_fidelity"] = fid;
  report["pass"] = pass;
  text << "entanglement fidelity on A " << fmt(fid) << "\n"
       << (pass ? "correctable" : "not correctable") << " (tol " << fmt(cfg.tol) << ")\n";
  emit(report, text.str(), cfg);
  return pass ? kPass : kNegative;
}

int cmd_recover(const std::string& dec_path, const std::string& ch_path,
                const std::string& method_name, const RunConfig& cfg) {
  const Problem p = load(dec_path, ch_path);
  const auto method = method_name == "universal" ? oqec::RecoveryMethod::universal
                                                 : oqec::RecoveryMethod::schmidt;
  json report = envelope("recover", cfg);
  report["method"] = method_name;

  oqec::Recovery rec;
  try {
    rec = oqec::synthesize_recovery(p.dec, p.ch, method, {cfg.tol, {}});
  } catch (const oqec::NotCorrectableError& e) {
    report["pass"] = false;
    report["condition_b_residual"] = e.residual();
    emit(report, "not correctable: condition-b residual " + fmt(e.residual()) + "\n", cfg, false);
    return kNegative;
  }

  const auto ver = oqec::verify_recovery(p.dec, p.ch, rec.channel, cfg.trials, cfg.seed);
  const bool pass = ver.passed(cfg.tol);
  json rec_json = oqec::io::to_json(rec, {{"seed", cfg.seed}, {"version", OQEC_VERSION}});
  report["pass"] = pass;
  report["condition_b_residual"] = rec.condition_b_residual;
  report["num_kraus"] = rec.channel.size();
  report["num_completion"] = rec.num_completion;
  report["verification"] = oqec::io::to_json(ver);
  if (cfg.out.empty()) {
    report["recovery"] = rec_json;
  } else {
    oqec::io::write_file(cfg.out, rec_json);
    report["recovery_file"] = cfg.out;
  }

  std::ostringstream text;
  text << method_name << " recovery: " << rec.channel.size() << " Kraus operators ("
       << rec.num_completion << " completion)\n"
       << "verification over " << ver.trials << " trials: max infidelity "
       << fmt(ver.max_infidelity) << ", B drift " << fmt(ver.b_marginal_drift) << ", leakage "
       << fmt(ver.max_leakage) << "\n";
  if (!cfg.out.empty()) text << "wrote " << cfg.out << "\n";
  text << (pass ? "PASS" : "FAIL") << " (tol " << fmt(cfg.tol) << ")\n";
  emit(report, text.str(), cfg, false);
  return pass ? kPass : kNegative;
}

int cmd_factorize(const std::string& dec_path, const std::string& ch_path, const RunConfig& cfg) {
  const Problem p = load(dec_path, ch_path);
  json report = envelope("factorize", cfg);
  oqec::Factorization f;
  try {
    f = oqec::factorize_product(p.dec, p.ch, {cfg.tol, {}});
  } catch (const oqec::NotCorrectableError& e) {
    report["pass"] = false;
    report["condition_b_residual"] = e.residual();
    emit(report, "not correctable: condition-b residual " + fmt(e.residual()) + "\n", cfg, false);
    return kNegative;
  }
  const bool pass = f.residual <= cfg.tol;
  const json u_json = oqec::io::to_json(oqec::noise::unitary(f.u, {1e-12, 1e-8}));
  const json nb_json = oqec::io::to_json(f.n_b);
  report["pass"] = pass;
  report["residual"] = f.residual;
  std::ostringstream text;
  text << "factorization residual " << fmt(f.residual) << "\n";
  if (cfg.out.empty()) {
    report["u"] = u_json;
    report["n_b"] = nb_json;
  } else {
    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    oqec::io::write_file(dir / "u.json", u_json);
    oqec::io::write_file(dir / "n_b.json", nb_json);
    report["u_file"] = (dir / "u.json").string();
    report["n_b_file"] = (dir / "n_b.json").string();
    text << "wrote " << (dir / "u.json").string() << " and " << (dir / "n_b.json").string()
         << "\n";
  }
  text << (pass ? "PASS" : "FAIL") << " (tol " << fmt(cfg.tol) << ")\n";
  emit(report, text.str(), cfg, false);
  return pass ? kPass : kNegative;
}

int cmd_dpi(const std::string& dec_path, const std::vector<std::string>& chain_paths,
            const RunConfig& cfg) {
  const auto dec = oqec::io::decomposition_from_json(oqec::io::read_file(dec_path));
  std::vector<oqec::Channel> chain;
  for (const auto& path : chain_paths) {
    chain.push_back(oqec::io::channel_from_json(oqec::io::read_file(path)));
  }
  const auto trace = oqec::dpi_trace(dec, chain, cfg.tol);
  json report = envelope("dpi", cfg);
  report["trace"] = oqec::io::to_json(trace);
  report["pass"] = trace.monotone;
  std::ostringstream text;
  text << "coherent information:";
  for (double v : trace.values) text << " " << fmt(v);
  text << "\n"
       << (trace.monotone ? "monotone" : "NOT monotone") << " (max increase "
       << fmt(trace.max_increase) << ", slack " << fmt(cfg.tol) << ")\n";
  emit(report, text.str(), cfg);
  return trace.monotone ? kPass : kNegative;
}

int cmd_codes_list(bool extended, const RunConfig& cfg) {
  json report = envelope("codes", cfg);
  report["codes"] = json::array();
  std::ostringstream text;
  for (const auto& e : oqec::catalog({extended})) {
    report["codes"].push_back({{"name", e.name},
                               {"dim_a", e.dec.dim_a()},
                               {"dim_b", e.dec.dim_b()},
                               {"dim_c", e.dec.dim_c()},
                               {"correctable", e.expected.b},
                               {"note", e.note}});
    text << e.name << "  (" << e.dec.dim_a() << ", " << e.dec.dim_b() << ", " << e.dec.dim_c()
         << ")  " << e.note << "\n";
  }
  emit(report, text.str(), cfg);
  return kPass;
}

int cmd_codes_export(const std::string& name, const std::string& dir, bool extended,
                     const RunConfig& cfg) {
  const auto entry = oqec::find_entry(name, {extended});
  if (!entry) throw UsageError("unknown code '" + name + "' (see 'oqec codes list')");
  fs::create_directories(dir);
  const fs::path dec_path = fs::path(dir) / (name + ".dec.json");
  const fs::path ch_path = fs::path(dir) / (name + ".channel.json");
  oqec::io::write_file(dec_path, oqec::io::to_json(entry->dec));
  oqec::io::write_file(ch_path, oqec::io::to_json(entry->noise));
  json report = envelope("codes", cfg);
  report["name"] = name;
  report["files"] = {dec_path.string(), ch_path.string()};
  emit(report, "wrote " + dec_path.string() + " and " + ch_path.string() + "\n", cfg, false);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator quantum error correction: condition checks, recovery synthesis, "
               "factorization and coherent-information traces.",
               "oqec"};
  app.set_version_flag("--version", OQEC_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  auto* tol_opt = app.add_option("--tol", cfg.tol, "Numerical tolerance (env OQEC_TOL)")
                      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Random seed for verification trials");
  app.add_option("--trials", cfg.trials, "Verification trials")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "Output file (recover, check, dpi) or directory (factorize)");
  app.add_flag("--json", cfg.json, "Print the JSON report instead of text");

  std::string dec_path, ch_path, condition = "all", method = "schmidt";
  std::vector<std::string> chain_paths;

  auto* check = app.add_subcommand("check", "Test correctability conditions");
  check->add_option("decomposition", dec_path)->required();
  check->add_option("channel", ch_path)->required();
  check->add_option("--condition", condition, "b, c, d or all")
      ->check(CLI::IsMember({"b", "c", "d", "all"}));

  auto* recover = app.add_subcommand("recover", "Synthesize and verify a recovery channel");
  recover->add_option("decomposition", dec_path)->required();
  recover->add_option("channel", ch_path)->required();
  recover->add_option("--method", method, "schmidt or universal")
      ->check(CLI::IsMember({"schmidt", "universal"}));

  auto* factorize = app.add_subcommand("factorize", "Write a correctable channel as u o (I (x) n_b)");
  factorize->add_option("decomposition", dec_path)->required();
  factorize->add_option("channel", ch_path)->required();

  auto* dpi = app.add_subcommand("dpi", "Coherent information along a channel chain");
  dpi->add_option("decomposition", dec_path)->required();
  dpi->add_option("channels", chain_paths)->required();

  bool extended = false;
  std::string code_name, export_dir;
  auto* codes = app.add_subcommand("codes", "Built-in code catalog");
  codes->require_subcommand(1);
  codes->add_flag("--extended", extended, "Include the 9-qubit Bacon-Shor code");
  auto* list = codes->add_subcommand("list", "List catalog entries");
  auto* exp = codes->add_subcommand("export", "Write <name>.dec.json and <name>.channel.json");
  exp->add_option("name", code_name)->required();
  exp->add_option("dir", export_dir)->required();
  list->fallthrough();
  exp->fallthrough();
  for (auto* sub : {check, recover, factorize, dpi, codes}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (tol_opt->count() == 0) cfg.tol = default_tolerance();
    if (*check) return cmd_check(dec_path, ch_path, condition, cfg);
    if (*recover) return cmd_recover(dec_path, ch_path, method, cfg);
    if (*factorize) return cmd_factorize(dec_path, ch_path, cfg);
    if (*dpi) return cmd_dpi(dec_path, chain_paths, cfg);
    if (*list) return cmd_codes_list(extended, cfg);
    if (*exp) return cmd_codes_export(code_name, export_dir, extended, cfg);
  } catch (const oqec::NotCorrectableError& e) {
    std::cerr << "oqec: " << e.what() << "\n";
    return kNegative;
  } catch (const oqec::InputError& e) {
    std::cerr << "oqec: input error in '" << e.field() << "': " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "oqec: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
