// Copyright 2026 The entsrc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "entsrc/bayes.hpp"
#include "entsrc/error.hpp"
#include "entsrc/io.hpp"
#include "entsrc/modelsel.hpp"
#include "entsrc/version.hpp"
#include "json.hpp"

namespace entsrc::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultPriorSeed = 1;

std::string_view format_name(OutputFormat f) { return f == OutputFormat::kCsv ? "csv" : "doc"; }

OutputFormat parse_format(std::string_view s) {
  if (s == "doc") return OutputFormat::kDoc;
  if (s == "csv") return OutputFormat::kCsv;
  throw Error(ErrorCode::kOutOfDomain, "unknown format '" + std::string(s) + "'");
}

// JSON has no infinity; unbounded values are written as null.
json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json state_to_json(const StateSpec& s) {
  return {{"family", s.family}, {"p", s.p},         {"sigma", s.sigma},
          {"k", s.k},           {"index", s.index}, {"weights", s.weights}};
}

StateSpec state_from_json(const json& j) {
  StateSpec s;
  s.family = j.at("family").get<std::string>();
  s.p = j.at("p").get<double>();
  s.sigma = j.at("sigma").get<double>();
  s.k = j.at("k").get<double>();
  s.index = j.at("index").get<int>();
  s.weights = j.at("weights").get<std::array<double, 4>>();
  return s;
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  if (cfg.command == "simulate") {
    j["state"] = state_to_json(cfg.state);
    j["shots"] = cfg.shots;
  }
  j["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
  if (cfg.command != "compare") {
    j["prior"] = {{"model", model_name(cfg.prior.model)},
                  {"grid", {cfg.prior.grid_p, cfg.prior.grid_sigma}},
                  {"samples", cfg.prior.samples}};
    j["bins"] = cfg.bins;
  }
  if (!cfg.record_path.empty()) j["record_path"] = cfg.record_path;
  j["format"] = format_name(cfg.format);
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  cfg.command = j.at("command").get<std::string>();
  if (j.contains("state")) cfg.state = state_from_json(j["state"]);
  if (j.contains("shots")) cfg.shots = j["shots"].get<std::int64_t>();
  if (!j.at("seed").is_null()) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("prior")) {
    const json& p = j["prior"];
    cfg.prior.model = parse_model_name(p.at("model").get<std::string>());
    cfg.prior.grid_p = p.at("grid").at(0).get<int>();
    cfg.prior.grid_sigma = p.at("grid").at(1).get<int>();
    cfg.prior.samples = p.at("samples").get<std::size_t>();
  }
  if (j.contains("bins")) cfg.bins = j["bins"].get<int>();
  cfg.record_path = j.value("record_path", std::string{});
  cfg.format = parse_format(j.at("format").get<std::string>());
  return cfg;
}

json summary_to_json(const EstimateSummary& s) {
  return {{"prob_entangled", s.prob_entangled},
          {"neg_mean", s.neg_mean},
          {"neg_std", s.neg_std},
          {"pur_mean", s.pur_mean},
          {"pur_std", s.pur_std}};
}

json histogram_to_json(const Histogram& h) {
  return {{"bin_edges", h.bin_edges}, {"bin_mass", h.bin_mass}, {"separable_mass", h.separable_mass}};
}

json score_to_json(const ModelScore& s) {
  return {{"model", model_label(s.model)}, {"log_l", s.log_l},         {"k", s.k},
          {"n_m", s.n_m},                  {"omega_aic", s.omega_aic}, {"omega_bic", s.omega_bic}};
}

json comparison_to_json(const ComparisonReport& r) {
  json j;
  j["models"] = {score_to_json(r.full), score_to_json(r.bell_diagonal), score_to_json(r.two_param)};
  j["delta_omega"] = r.delta_omega;
  j["delta_omega_bic"] = r.delta_omega_bic;
  j["delta_omega_bd"] = r.delta_omega_bd;
  j["delta_omega_bd_bic"] = r.delta_omega_bd_bic;
  j["winner_aic"] = model_label(r.winner_aic);
  j["winner_bic"] = model_label(r.winner_bic);
  j["full_log_l_is_entropy_bound"] = true;
  j["bell_diagonal_fit"] = {{"weights", r.bell_diagonal_fit.point.weights},
                            {"closed_form", r.bell_diagonal_fit.closed_form}};
  j["two_param_fit"] = {{"p", r.two_param_fit.p},
                        {"coherence", r.two_param_fit.coherence},
                        {"sigma", finite_or_null(r.two_param_fit.sigma)},
                        {"closed_form", r.two_param_fit.closed_form}};
  return j;
}

std::string comparison_to_csv(const ComparisonReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "model,log_l,k,omega_aic,omega_bic\n";
  for (const ModelScore* s : {&r.full, &r.bell_diagonal, &r.two_param}) {
    out << model_label(s->model) << ',' << s->log_l << ',' << s->k << ',' << s->omega_aic << ',' << s->omega_bic
        << '\n';
  }
  return out.str();
}

json document_header(const RunConfig& cfg, const MeasurementRecord* rec) {
  json doc;
  doc["tool"] = "entsrc";
  doc["version"] = kVersion;
  doc["config"] = config_to_json(cfg);
  if (rec != nullptr) doc["config"]["record"] = json::parse(record_to_json(*rec));
  return doc;
}

std::string finish_document(json doc, std::chrono::steady_clock::time_point start) {
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  doc["duration_s"] = elapsed.count();
  return doc.dump(2) + "\n";
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    write_text_file(cfg.out_path, text);
  }
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfDomain:
    case ErrorCode::kUnknownStateFamily:
    case ErrorCode::kInvalidGridSize:
    case ErrorCode::kInvalidCount:
    case ErrorCode::kIndexOutOfRange:
    case ErrorCode::kInvalidSimplexPoint:
      return kExitUsage;
    default:
      return kExitData;
  }
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument("no separator");
    std::size_t used = 0;
    const int n_p = std::stoi(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument("trailing characters");
    const std::string rest = text.substr(x + 1);
    const int n_s = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing characters");
    return {n_p, n_s};
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidGridSize, "grid must look like NxM, got '" + text + "'");
  }
}

}  // namespace

DensityMatrix build_state(const StateSpec& spec) {
  const std::string& f = spec.family;
  if (f == "two-param" || f == "two_param") return two_param_state({spec.p, spec.sigma});
  if (f == "rho-k" || f == "rho_k") return skewed_bell_state(spec.k);
  if (f == "rho1") return reference_mixture(ReferenceMixture::kAmplitude09);
  if (f == "rho2") return reference_mixture(ReferenceMixture::kAmplitude05);
  if (f == "bell") return bell_state(spec.index);
  if (f == "bell-diag" || f == "bell_diag") return bell_diagonal_state({spec.weights});
  if (f == "mixed") return validate_state(Matrix4::identity() * 0.25);
  throw Error(ErrorCode::kUnknownStateFamily, "unknown state family '" + f + "'");
}

TestSet build_prior(const PriorSpec& spec, std::uint64_t seed) {
  switch (spec.model) {
    case ModelId::kTwoParam: return grid_prior_two_param(spec.grid_p, spec.grid_sigma);
    case ModelId::kBellDiagonal: return simplex_prior_bell_diagonal(spec.samples, seed);
  }
  throw Error(ErrorCode::kUnknownStateFamily, "unknown prior model");
}

MeasurementRecord cmd_simulate(const RunConfig& cfg) {
  if (!cfg.seed) throw Error(ErrorCode::kInvalidCount, "simulate requires --seed");
  const DensityMatrix rho = build_state(cfg.state);
  return simulate_record(rho, cfg.shots, *cfg.seed, cfg.state.family);
}

std::string cmd_characterize(const RunConfig& cfg, const MeasurementRecord& rec) {
  const auto start = std::chrono::steady_clock::now();
  const TestSet ts = build_prior(cfg.prior, cfg.seed.value_or(kDefaultPriorSeed));
  const Posterior post = update_posterior(ts, rec);
  const EstimateSummary summary = summarize(ts, post);
  const Histogram hist = histogram_negativity(ts, post, cfg.bins);
  if (cfg.format == OutputFormat::kCsv) return histogram_to_csv(hist);

  const DensityMatrix mean = mean_state(ts, post);
  json doc = document_header(cfg, &rec);
  doc["prior"] = {{"n_states", ts.size()}, {"prob_entangled", ts.prior_entangled_fraction()}};
  doc["summary"] = summary_to_json(summary);
  doc["histogram"] = histogram_to_json(hist);
  doc["mean_state"] = {{"negativity", negativity(mean)}, {"purity", purity(mean)}};
  if (rec.covers_default_settings()) doc["comparison"] = comparison_to_json(compare(rec));
  return finish_document(std::move(doc), start);
}

std::string cmd_compare(const RunConfig& cfg, const MeasurementRecord& rec) {
  const auto start = std::chrono::steady_clock::now();
  const ComparisonReport report = compare(rec);
  if (cfg.format == OutputFormat::kCsv) return comparison_to_csv(report);
  json doc = document_header(cfg, &rec);
  doc["comparison"] = comparison_to_json(report);
  return finish_document(std::move(doc), start);
}

std::string cmd_prior_hist(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const TestSet ts = build_prior(cfg.prior, cfg.seed.value_or(kDefaultPriorSeed));
  const Histogram hist = histogram_negativity(ts, ts.prior_weights(), cfg.bins);
  if (cfg.format == OutputFormat::kCsv) return histogram_to_csv(hist);
  json doc = document_header(cfg, nullptr);
  doc["prior"] = {{"n_states", ts.size()}};
  doc["summary"] = summary_to_json(summarize(ts, ts.prior_weights()));
  doc["histogram"] = histogram_to_json(hist);
  return finish_document(std::move(doc), start);
}

std::string replay_document(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseFailure, std::string("malformed result document: ") + e.what());
  }
  if (!doc.contains("config")) throw Error(ErrorCode::kParseFailure, "result document has no config echo");
  const json& config = doc["config"];
  const RunConfig cfg = config_from_json(config);
  if (cfg.command == "prior-hist") return cmd_prior_hist(cfg);
  if (!config.contains("record")) throw Error(ErrorCode::kParseFailure, "config echo has no embedded record");
  const MeasurementRecord rec = record_from_json(config["record"].dump());
  if (cfg.command == "characterize") return cmd_characterize(cfg, rec);
  if (cfg.command == "compare") return cmd_compare(cfg, rec);
  throw Error(ErrorCode::kParseFailure, "cannot replay command '" + cfg.command + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"entsrc: characterize two-qubit entanglement sources from correlation data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  RunConfig cfg;
  std::string format = "doc";
  std::string prior = "two-param";
  std::string grid = "600x600";
  std::uint64_t seed = 0;
  std::vector<double> weights;
  std::string replay_path;

  const auto add_prior_options = [&](CLI::App* sub) {
    sub->add_option("--prior", prior, "Prior model: two-param or bell-diag")->capture_default_str();
    sub->add_option("--grid", grid, "Two-parameter grid size NxM")->capture_default_str();
    sub->add_option("--samples", cfg.prior.samples, "Bell-diagonal prior sample count")->capture_default_str();
    sub->add_option("--bins", cfg.bins, "Histogram bins for entangled states");
  };
  const auto add_output_options = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "Output path (default: stdout)");
    sub->add_option("--format", format, "Output format: doc or csv")->capture_default_str();
  };

  CLI::App* sim = app.add_subcommand("simulate", "Simulate a five-setting measurement record");
  sim->add_option("--state", cfg.state.family, "State family: two-param, rho-k, rho1, rho2, bell, bell-diag, mixed")
      ->capture_default_str();
  sim->add_option("--p", cfg.state.p, "Mixing weight p")->capture_default_str();
  sim->add_option("--sigma", cfg.state.sigma, "Phase-noise width sigma (radians)")->capture_default_str();
  sim->add_option("--k", cfg.state.k, "Amplitude k of the rho-k family")->capture_default_str();
  sim->add_option("--index", cfg.state.index, "Bell state index 1..4")->capture_default_str();
  sim->add_option("--weights", weights, "Bell-diagonal weights p1,p2,p3,p4")->delimiter(',')->expected(4);
  sim->add_option("--shots", cfg.shots, "Shots per setting")->capture_default_str();
  CLI::Option* sim_seed = sim->add_option("--seed", seed, "RNG seed")->required();
  sim->add_option("--out", cfg.out_path, "Output path (default: stdout)");

  CLI::App* chr = app.add_subcommand("characterize", "Bayesian posterior summaries for a record");
  chr->add_option("record", cfg.record_path, "Record file")->required();
  CLI::Option* chr_seed = chr->add_option("--seed", seed, "Seed for sampled priors");
  add_prior_options(chr);
  add_output_options(chr);

  CLI::App* cmp = app.add_subcommand("compare", "AIC/BIC comparison of the source models");
  cmp->add_option("record", cfg.record_path, "Record file")->required();
  add_output_options(cmp);

  CLI::App* hist = app.add_subcommand("prior-hist", "Negativity histogram of a prior test set");
  CLI::Option* hist_seed = hist->add_option("--seed", seed, "Seed for sampled priors");
  add_prior_options(hist);
  add_output_options(hist);

  CLI::App* rep = app.add_subcommand("replay", "Re-run the command echoed in a result document");
  rep->add_option("document", replay_path, "Result document")->required();
  rep->add_option("--out", cfg.out_path, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.format = parse_format(format);
    cfg.prior.model = parse_model_name(prior);
    std::tie(cfg.prior.grid_p, cfg.prior.grid_sigma) = parse_grid(grid);
    if (!weights.empty()) std::copy(weights.begin(), weights.end(), cfg.state.weights.begin());

    if (sim->parsed()) {
      cfg.command = "simulate";
      if (sim_seed->count() > 0) cfg.seed = seed;
      const MeasurementRecord rec = cmd_simulate(cfg);
      const std::string text = record_to_json(rec);
      std::ostream& info = cfg.out_path.empty() ? err : out;
      if (!cfg.out_path.empty()) write_text_file(cfg.out_path, text);
      info << "N_m = " << rec.total_shots() << '\n';
      for (const SettingCounts& sc : rec.settings()) {
        info << "  (" << sc.setting.a << "," << sc.setting.b << "): " << sc.counts[0] << ' ' << sc.counts[1] << ' '
             << sc.counts[2] << ' ' << sc.counts[3] << '\n';
      }
      if (cfg.out_path.empty()) out << text;
    } else if (chr->parsed()) {
      cfg.command = "characterize";
      if (cfg.bins <= 0) throw Error(ErrorCode::kInvalidCount, "--bins must be >= 1");
      if (chr_seed->count() > 0) cfg.seed = seed;
      emit(cfg, cmd_characterize(cfg, load_record(cfg.record_path)), out);
    } else if (cmp->parsed()) {
      cfg.command = "compare";
      emit(cfg, cmd_compare(cfg, load_record(cfg.record_path)), out);
    } else if (hist->parsed()) {
      cfg.command = "prior-hist";
      if (hist->get_option("--bins")->count() == 0) cfg.bins = 100;
      if (cfg.bins <= 0) throw Error(ErrorCode::kInvalidCount, "--bins must be >= 1");
      if (hist_seed->count() > 0) cfg.seed = seed;
      emit(cfg, cmd_prior_hist(cfg), out);
    } else if (rep->parsed()) {
      emit(cfg, replay_document(read_text_file(replay_path)), out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace entsrc::cli
