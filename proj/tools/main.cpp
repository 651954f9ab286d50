#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "stochdyn/errors.hpp"
#include "stochdyn/heights.hpp"
#include "stochdyn/local_heights.hpp"
#include "stochdyn/stability.hpp"
#include "stochdyn/zsigmondy.hpp"

using namespace stochdyn;
using stochdyn::cli::Json;
using stochdyn::cli::SystemConfig;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string point;
  std::string word_list;
  std::uint64_t word_seed = 0;
  double eps = 1e-6;
  std::int64_t samples = 1000;
  std::uint64_t seed = 1;
  double confidence = 0.95;
  double eps_inner = 1e-3;
  int horizon = 12;
  std::uint64_t bit_budget = kDefaultBitBudget;
  std::uint64_t enum_budget = kDefaultEnumBudget;
  int threads = 1;
  bool batch = false;
  bool use_family = false;
};

void add_config_option(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Path to the JSON system config")
      ->required();
}

void add_word_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--word", args.word_list,
                  "Comma-separated map indices, repeated periodically");
  cmd->add_option("--word-seed", args.word_seed,
                  "Draw the word i.i.d. from nu_1 with this seed");
}

WordSpec resolve_word(const CommonArgs& args) {
  if (!args.word_list.empty()) {
    return WordSpec::periodic(stochdyn::cli::parse_word_list(args.word_list));
  }
  return WordSpec::sampled(args.word_seed);
}

Json word_json(const WordSpec& spec) {
  Json out = Json::object();
  if (spec.kind == WordSpec::Kind::Periodic) {
    out["kind"] = "periodic";
    out["pattern"] = spec.pattern;
  } else {
    out["kind"] = "sampled";
    out["seed"] = spec.seed;
  }
  return out;
}

Json estimate_json(double value, double error, const char* tag) {
  Json out = Json::object();
  out["value"] = value;
  out["error"] = error;
  out["tag"] = tag;
  return out;
}

const GeneratingSystem& require_system(const SystemConfig& config) {
  if (!config.system) {
    throw InvalidSystemError("this command needs a 'maps' block in the config");
  }
  return *config.system;
}

const UnicriticalFamily& require_family(const SystemConfig& config) {
  if (!config.family) {
    throw InvalidSystemError("this command needs a 'family' block in the config");
  }
  return *config.family;
}

void emit(const Json& report) { std::cout << report.dump() << "\n"; }

int run_app(int argc, char** argv) {
  CLI::App app{"Certified stochastic canonical heights on P^1 over Q"};
  app.require_subcommand(1);
  CommonArgs args;

  Json report = Json::object();
  std::vector<Json> batch_lines;

  // height
  CLI::App* height_cmd = app.add_subcommand(
      "height", "Canonical height along a word, with a certified radius");
  add_config_option(height_cmd, args);
  add_word_options(height_cmd, args);
  height_cmd->add_option("--point", args.point, "Basepoint a/b")->required();
  height_cmd->add_option("--eps", args.eps, "Tail tolerance");
  height_cmd->add_option("--bit-budget", args.bit_budget, "Orbit bit cap");
  height_cmd->add_flag("--family", args.use_family,
                       "Sample the word from the unicritical family");
  height_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    ProjectivePoint P = stochdyn::cli::parse_point(args.point);
    HeightEstimate est;
    Json word;
    if (args.use_family) {
      est = canonical_height(require_family(config), args.word_seed, P,
                             args.eps, args.bit_budget);
      word["kind"] = "family";
      word["seed"] = args.word_seed;
    } else {
      WordSpec spec = resolve_word(args);
      est = canonical_height(require_system(config), spec, P, args.eps,
                             args.bit_budget);
      word = word_json(spec);
    }
    report["command"] = "height";
    report["point"] = point_to_string(P);
    report["word"] = word;
    report["eps"] = args.eps;
    report["value"] = est.value;
    report["error"] = est.error;
    report["tag"] = "certified";
  });

  // expected-height
  std::string mode = "exact";
  int depth = 8;
  CLI::App* expected_cmd = app.add_subcommand(
      "expected-height", "Expected canonical height (exact truncation or MC)");
  add_config_option(expected_cmd, args);
  expected_cmd->add_option("--point", args.point)->required();
  expected_cmd->add_option("--mode", mode, "exact | mc")
      ->check(CLI::IsMember({"exact", "mc"}));
  expected_cmd->add_option("--depth", depth, "Truncation depth (exact mode)");
  expected_cmd->add_option("--samples", args.samples);
  expected_cmd->add_option("--seed", args.seed);
  expected_cmd->add_option("--eps-inner", args.eps_inner,
                           "Per-path tolerance (mc mode)");
  expected_cmd->add_option("--confidence", args.confidence,
                           "CI confidence level (mc mode)");
  expected_cmd->add_option("--threads", args.threads);
  expected_cmd->add_option("--enum-budget", args.enum_budget);
  expected_cmd->add_option("--bit-budget", args.bit_budget);
  expected_cmd->add_flag("--family", args.use_family,
                         "Use the unicritical family block");
  expected_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    ProjectivePoint P = stochdyn::cli::parse_point(args.point);
    report["command"] = "expected-height";
    report["point"] = point_to_string(P);
    report["mode"] = mode;
    if (mode == "exact") {
      HeightEstimate est = expected_height_exact(require_system(config), P,
                                                 depth, args.enum_budget,
                                                 args.bit_budget);
      report["depth"] = depth;
      report["value"] = est.value;
      report["error"] = est.error;
      report["tag"] = "certified";
    } else {
      McOptions opts;
      opts.samples = args.samples;
      opts.seed = args.seed;
      opts.eps_inner = args.eps_inner;
      opts.delta_conf = 1.0 - args.confidence;
      opts.threads = args.threads;
      opts.bit_budget = args.bit_budget;
      HeightEstimate est = args.use_family
                               ? expected_height_mc(require_family(config), P, opts)
                               : expected_height_mc(require_system(config), P, opts);
      double variance =
          args.use_family
              ? variance_estimate(require_family(config), P, args.samples,
                                  args.seed, args.eps_inner, args.bit_budget)
              : variance_estimate(require_system(config), P, args.samples,
                                  args.seed, args.eps_inner, args.bit_budget);
      report["samples"] = args.samples;
      report["seed"] = args.seed;
      report["confidence"] = args.confidence;
      report["eps_inner"] = args.eps_inner;
      report["value"] = est.value;
      report["error"] = est.error;
      report["tag"] = "statistical";
      report["sample_variance"] = variance;
    }
  });

  // stable-set
  CLI::App* stable_cmd = app.add_subcommand(
      "stable-set", "Decide membership in a finite S-stable set");
  add_config_option(stable_cmd, args);
  stable_cmd->add_option("--point", args.point)->required();
  stable_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    ProjectivePoint P = stochdyn::cli::parse_point(args.point);
    StabilityVerdict verdict = stable_closure(require_system(config), P);
    report["command"] = "stable-set";
    report["point"] = point_to_string(P);
    if (verdict.finite) {
      report["verdict"] = "finite";
      Json set = Json::array();
      for (const ProjectivePoint& Q : verdict.stable_set) {
        set.push_back(point_to_string(Q));
      }
      report["set"] = std::move(set);
    } else {
      report["verdict"] = "positive";
      report["witness"] = point_to_string(verdict.witness);
      report["witness_height"] = verdict.witness_height;
      report["word"] = verdict.witness_word;
    }
  });

  // kernel-probe
  double height_bound = 2.0;
  std::string denominator_bound = "8";
  CLI::App* probe_cmd = app.add_subcommand(
      "kernel-probe", "Search a height box for expected-height-zero points");
  add_config_option(probe_cmd, args);
  probe_cmd->add_option("--height-bound", height_bound);
  probe_cmd->add_option("--denominator-bound", denominator_bound);
  probe_cmd->add_option("--enum-budget", args.enum_budget);
  probe_cmd->add_flag("--batch", args.batch, "One JSON line per kernel point");
  probe_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    auto kernel = kernel_probe(require_system(config), height_bound,
                               Int(denominator_bound), args.enum_budget);
    if (args.batch) {
      for (const ProjectivePoint& Q : kernel) {
        Json line = Json::object();
        line["command"] = "kernel-probe";
        line["point"] = point_to_string(Q);
        line["verdict"] = "finite";
        batch_lines.push_back(std::move(line));
      }
      return;
    }
    report["command"] = "kernel-probe";
    report["height_bound"] = height_bound;
    report["denominator_bound"] = denominator_bound;
    Json points = Json::array();
    for (const ProjectivePoint& Q : kernel) {
      points.push_back(point_to_string(Q));
    }
    report["kernel"] = std::move(points);
  });

  // green
  std::string place_str = "inf";
  std::string x_str = "1", y_str = "1";
  CLI::App* green_cmd = app.add_subcommand(
      "green", "Green function of a lifted word at one place");
  add_config_option(green_cmd, args);
  add_word_options(green_cmd, args);
  green_cmd->add_option("--place", place_str, "'inf' or a prime");
  green_cmd->add_option("--x", x_str)->required();
  green_cmd->add_option("--y", y_str)->required();
  green_cmd->add_option("--eps", args.eps);
  green_cmd->add_option("--bit-budget", args.bit_budget);
  green_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    Place v = stochdyn::cli::parse_place(place_str);
    WordSpec spec = resolve_word(args);
    GreenValue g = green(v, require_system(config), spec, Int(x_str), Int(y_str),
                         args.eps, args.bit_budget);
    report["command"] = "green";
    report["place"] = v.to_string();
    report["x"] = x_str;
    report["y"] = y_str;
    report["word"] = word_json(spec);
    report["value"] = g.value;
    report["error"] = g.error;
    report["tag"] = "certified";
  });

  // local-height
  std::string divisor_str = "1,0";
  CLI::App* local_cmd = app.add_subcommand(
      "local-height", "Local canonical height against a divisor form");
  add_config_option(local_cmd, args);
  add_word_options(local_cmd, args);
  local_cmd->add_option("--place", place_str)->required();
  local_cmd->add_option("--divisor", divisor_str,
                        "Ascending coefficients c_i of x^i y^(e-i)");
  local_cmd->add_option("--point", args.point)->required();
  local_cmd->add_option("--eps", args.eps);
  local_cmd->add_option("--bit-budget", args.bit_budget);
  local_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    Place v = stochdyn::cli::parse_place(place_str);
    DivisorForm E = stochdyn::cli::parse_divisor(divisor_str);
    ProjectivePoint P = stochdyn::cli::parse_point(args.point);
    WordSpec spec = resolve_word(args);
    GreenValue lambda = local_canonical_height(v, require_system(config), spec,
                                               E, P, args.eps, args.bit_budget);
    report["command"] = "local-height";
    report["place"] = v.to_string();
    report["divisor"] = divisor_str;
    report["point"] = point_to_string(P);
    report["word"] = word_json(spec);
    report["value"] = lambda.value;
    report["error"] = lambda.error;
    report["tag"] = "certified";
  });

  // decompose
  CLI::App* decompose_cmd = app.add_subcommand(
      "decompose", "Global height as a certified sum of local heights");
  add_config_option(decompose_cmd, args);
  add_word_options(decompose_cmd, args);
  decompose_cmd->add_option("--divisor", divisor_str);
  decompose_cmd->add_option("--point", args.point)->required();
  decompose_cmd->add_option("--eps", args.eps);
  decompose_cmd->add_option("--bit-budget", args.bit_budget);
  decompose_cmd->add_flag("--batch", args.batch, "One JSON line per place");
  decompose_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    DivisorForm E = stochdyn::cli::parse_divisor(divisor_str);
    ProjectivePoint P = stochdyn::cli::parse_point(args.point);
    WordSpec spec = resolve_word(args);
    Decomposition dec = decompose(require_system(config), spec, E, P, args.eps,
                                  args.bit_budget);
    if (args.batch) {
      for (const auto& [place, value] : dec.contributions) {
        Json line = Json::object();
        line["command"] = "decompose";
        line["place"] = place.to_string();
        line["value"] = value.value;
        line["error"] = value.error;
        line["tag"] = "certified";
        batch_lines.push_back(std::move(line));
      }
      return;
    }
    report["command"] = "decompose";
    report["divisor"] = divisor_str;
    report["point"] = point_to_string(P);
    report["word"] = word_json(spec);
    Json contributions = Json::array();
    for (const auto& [place, value] : dec.contributions) {
      Json entry = Json::object();
      entry["place"] = place.to_string();
      entry["value"] = value.value;
      entry["error"] = value.error;
      contributions.push_back(std::move(entry));
    }
    report["contributions"] = std::move(contributions);
    report["sum"] = estimate_json(dec.sum, dec.sum_error, "certified");
    report["canonical"] =
        estimate_json(dec.canonical.value, dec.canonical.error, "certified");
    report["residual"] = dec.residual;
    report["combined_error"] = dec.combined_error;
  });

  // expected-local
  CLI::App* elocal_cmd = app.add_subcommand(
      "expected-local", "Expected local canonical height at one place");
  add_config_option(elocal_cmd, args);
  elocal_cmd->add_option("--place", place_str)->required();
  elocal_cmd->add_option("--divisor", divisor_str);
  elocal_cmd->add_option("--point", args.point)->required();
  elocal_cmd->add_option("--mode", mode)->check(CLI::IsMember({"exact", "mc"}));
  elocal_cmd->add_option("--depth", depth);
  elocal_cmd->add_option("--samples", args.samples);
  elocal_cmd->add_option("--seed", args.seed);
  elocal_cmd->add_option("--eps-inner", args.eps_inner);
  elocal_cmd->add_option("--confidence", args.confidence);
  elocal_cmd->add_option("--enum-budget", args.enum_budget);
  elocal_cmd->add_option("--bit-budget", args.bit_budget);
  elocal_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    Place v = stochdyn::cli::parse_place(place_str);
    DivisorForm E = stochdyn::cli::parse_divisor(divisor_str);
    ProjectivePoint P = stochdyn::cli::parse_point(args.point);
    report["command"] = "expected-local";
    report["place"] = v.to_string();
    report["divisor"] = divisor_str;
    report["point"] = point_to_string(P);
    report["mode"] = mode;
    if (mode == "exact") {
      GreenValue g = expected_local_height_exact(v, require_system(config), E,
                                                 P, depth, args.enum_budget,
                                                 args.bit_budget);
      report["depth"] = depth;
      report["value"] = g.value;
      report["error"] = g.error;
      report["tag"] = "certified";
    } else {
      McOptions opts;
      opts.samples = args.samples;
      opts.seed = args.seed;
      opts.eps_inner = args.eps_inner;
      opts.delta_conf = 1.0 - args.confidence;
      opts.bit_budget = args.bit_budget;
      GreenValue g = expected_local_height_mc(v, require_system(config), E, P,
                                              opts);
      report["samples"] = args.samples;
      report["seed"] = args.seed;
      report["value"] = g.value;
      report["error"] = g.error;
      report["tag"] = "statistical";
    }
  });

  // dependence-probe
  std::string place2_str = "2";
  CLI::App* dep_cmd = app.add_subcommand(
      "dependence-probe",
      "Sample correlation of local heights at two places over random words");
  add_config_option(dep_cmd, args);
  dep_cmd->add_option("--place1", place_str)->required();
  dep_cmd->add_option("--place2", place2_str)->required();
  dep_cmd->add_option("--divisor", divisor_str);
  dep_cmd->add_option("--point", args.point)->required();
  dep_cmd->add_option("--samples", args.samples);
  dep_cmd->add_option("--seed", args.seed);
  dep_cmd->add_option("--eps-inner", args.eps_inner);
  dep_cmd->add_option("--bit-budget", args.bit_budget);
  dep_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    Place v1 = stochdyn::cli::parse_place(place_str);
    Place v2 = stochdyn::cli::parse_place(place2_str);
    DivisorForm E = stochdyn::cli::parse_divisor(divisor_str);
    ProjectivePoint P = stochdyn::cli::parse_point(args.point);
    DependenceProbe probe = dependence_probe(require_system(config), v1, v2, E,
                                             P, args.samples, args.seed,
                                             args.eps_inner, args.bit_budget);
    report["command"] = "dependence-probe";
    report["place1"] = v1.to_string();
    report["place2"] = v2.to_string();
    report["point"] = point_to_string(P);
    report["samples"] = probe.samples;
    report["seed"] = args.seed;
    if (probe.degenerate) {
      report["result"] = "degenerate";
    } else {
      report["result"] = "correlation";
      report["correlation"] = probe.correlation;
    }
    report["tag"] = "statistical";
  });

  // zsigmondy
  CLI::App* zsig_cmd = app.add_subcommand(
      "zsigmondy", "Zsigmondy set of an orbit up to a horizon");
  add_config_option(zsig_cmd, args);
  add_word_options(zsig_cmd, args);
  zsig_cmd->add_option("--point", args.point)->required();
  zsig_cmd->add_option("--horizon", args.horizon);
  zsig_cmd->add_option("--bit-budget", args.bit_budget);
  zsig_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    const GeneratingSystem& sys = require_system(config);
    ProjectivePoint P = stochdyn::cli::parse_point(args.point);
    WordSpec spec = resolve_word(args);
    Word word = spec.prefix(sys, args.horizon);
    ZsigmondyReport z = zsigmondy_set(sys, word, P, args.horizon,
                                      args.bit_budget);
    report["command"] = "zsigmondy";
    report["point"] = point_to_string(P);
    report["word"] = word_json(spec);
    report["horizon"] = z.horizon;
    report["members"] = z.members;
    Json parts = Json::array();
    for (const Int& r : z.primitive_parts) {
      parts.push_back(r.get_str());
    }
    report["primitive_parts"] = std::move(parts);
  });

  // good-pair
  bool relaxed = false;
  CLI::App* pair_cmd = app.add_subcommand(
      "good-pair", "Horizon-bounded good-pair classification");
  add_config_option(pair_cmd, args);
  add_word_options(pair_cmd, args);
  pair_cmd->add_option("--point", args.point)->required();
  pair_cmd->add_option("--horizon", args.horizon);
  pair_cmd->add_option("--eps", args.eps);
  pair_cmd->add_option("--bit-budget", args.bit_budget);
  pair_cmd->add_flag("--relaxed", relaxed,
                     "Drop the 0/infinity orbit conditions (no claim attached)");
  pair_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    const GeneratingSystem& sys = require_system(config);
    ProjectivePoint P = stochdyn::cli::parse_point(args.point);
    WordSpec spec = resolve_word(args);
    Word word = spec.prefix(sys, args.horizon);
    GoodPairResult result = good_pair_check(
        sys, word, P, args.horizon, args.eps, args.bit_budget,
        relaxed ? GoodPairMode::Relaxed : GoodPairMode::Strict);
    report["command"] = "good-pair";
    report["point"] = point_to_string(P);
    report["word"] = word_json(spec);
    report["horizon"] = args.horizon;
    report["mode"] = relaxed ? "relaxed" : "strict";
    switch (result.status) {
      case GoodPairStatus::Good: report["status"] = "good"; break;
      case GoodPairStatus::Bad: report["status"] = "bad"; break;
      case GoodPairStatus::Inconclusive: report["status"] = "inconclusive"; break;
    }
    report["reason"] = result.reason;
    report["height_lower_bound"] = result.height_lower_bound;
  });

  // primdiv-hypotheses
  CLI::App* hyp_cmd = app.add_subcommand(
      "primdiv-hypotheses",
      "Check the numerator degree/discriminant hypotheses per map");
  add_config_option(hyp_cmd, args);
  hyp_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    const GeneratingSystem& sys = require_system(config);
    auto results = check_primdiv_hypotheses(sys.maps());
    report["command"] = "primdiv-hypotheses";
    Json list = Json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      Json entry = Json::object();
      entry["map"] = i;
      entry["degree_ok"] = results[i].degree_ok;
      entry["disc_ok"] = results[i].disc_ok;
      entry["pass"] = results[i].pass;
      list.push_back(std::move(entry));
    }
    report["results"] = std::move(list);
  });

  // riccati
  int map_index = 0;
  CLI::App* riccati_cmd = app.add_subcommand(
      "riccati", "F_p(t) invariants: delta, Riccati data, condition check");
  add_config_option(riccati_cmd, args);
  CLI::App* delta_cmd = riccati_cmd->add_subcommand("delta", "delta_phi");
  delta_cmd->add_option("--map-index", map_index);
  CLI::App* coeffs_cmd = riccati_cmd->add_subcommand("coeffs", "b, f, c, g");
  coeffs_cmd->add_option("--map-index", map_index);
  CLI::App* check_cmd =
      riccati_cmd->add_subcommand("check", "Pairwise theorem condition");
  riccati_cmd->require_subcommand(1);
  auto fp_map = [&](const SystemConfig& config) -> const FpPolySelfMap& {
    if (!config.fp_maps) {
      throw InvalidSystemError("this command needs an 'fp' block in the config");
    }
    if (map_index < 0 ||
        static_cast<std::size_t>(map_index) >= config.fp_maps->size()) {
      throw InvalidSystemError("map index out of range");
    }
    return (*config.fp_maps)[static_cast<std::size_t>(map_index)];
  };
  delta_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    report["command"] = "riccati";
    report["op"] = "delta";
    report["map"] = map_index;
    report["delta"] = delta(fp_map(config)).to_string();
  });
  coeffs_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    RiccatiCoeffs rc = riccati_coeffs(fp_map(config));
    report["command"] = "riccati";
    report["op"] = "coeffs";
    report["map"] = map_index;
    report["b"] = rc.b.to_string();
    report["f"] = rc.f.to_string();
    report["c"] = rc.c.to_string();
    report["g"] = rc.g.to_string();
  });
  check_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    if (!config.fp_maps) {
      throw InvalidSystemError("this command needs an 'fp' block in the config");
    }
    ConditionReport result = check_riccati_condition(*config.fp_maps);
    report["command"] = "riccati";
    report["op"] = "check";
    report["pass"] = result.pass;
    if (!result.pass) {
      report["failing_pair"] = Json::array({result.failing_i, result.failing_j});
      report["reason"] = result.reason;
    }
  });

  // config-echo
  CLI::App* echo_cmd = app.add_subcommand(
      "config-echo", "Parse and re-serialize the config in canonical form");
  add_config_option(echo_cmd, args);
  echo_cmd->callback([&]() {
    SystemConfig config = stochdyn::cli::load_config(args.config_path);
    report = stochdyn::cli::serialize_config(config);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e); // --help
    }
    Json err = Json::object();
    err["error"] = Json::object();
    err["error"]["type"] = "ArgumentError";
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }

  for (const Json& line : batch_lines) {
    emit(line);
  }
  if (!report.empty()) {
    emit(report);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const Error& e) {
    Json err = Json::object();
    err["error"] = Json::object();
    err["error"]["type"] = e.type();
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return e.kind() == ErrorKind::Budget ? 3 : 2;
  } catch (const std::exception& e) {
    Json err = Json::object();
    err["error"] = Json::object();
    err["error"]["type"] = "InternalError";
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }
}
