// Command-line front end: single checks, sweeps, exact/MC expectations,
// one-step distributions and sampled trajectories.
//
// Exit codes: 0 all identities hold, 1 some identity failed, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sixv/io.hpp"
#include "sixv/verify.hpp"

namespace {

using namespace sixv;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<Pos> parse_positions(const std::string& text)
{
  std::vector<Pos> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) {
      if (text.find_first_not_of(" \t,") == std::string::npos) continue;
      throw UsageError("empty entry in position list '" + text + "'");
    }
    const auto last = item.find_last_not_of(" \t");
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    try {
      out.push_back(std::stoll(item, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw UsageError("bad position '" + item + "'");
  }
  return out;
}

Json read_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

struct ParamOptions {
  std::string q = "2";
  std::string b2 = "1/4";
  std::string b2_sites_file;
  std::string params_file;

  void attach(CLI::App& cmd)
  {
    cmd.add_option("--q", q, "asymmetry q = b1/b2 as num/den")->capture_default_str();
    cmd.add_option("--b2", b2, "b2 (or the default b2 with --b2-sites) as num/den")
        ->capture_default_str();
    cmd.add_option("--b2-sites", b2_sites_file, "JSON object {\"site\": \"num/den\", ...}");
    cmd.add_option("--params", params_file, "full params JSON file");
  }

  Params build() const
  {
    if (!params_file.empty()) return params_from_json(read_json_file(params_file));
    const Rational qv = parse_rational(q);
    const Rational b2v = parse_rational(b2);
    if (b2_sites_file.empty()) return Params::homogeneous(qv, b2v);
    Json sites = read_json_file(b2_sites_file);
    return params_from_json(Json{{"q", q}, {"b2_sites", sites}, {"b2_default", b2}});
  }
};

unsigned default_jobs()
{
  if (const char* env = std::getenv("SIXV_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

int run_check(const std::string& x_text, const std::string& y_text, const std::string& kind_text,
              unsigned t, bool identities, const ParamOptions& popt)
{
  const LocationConfig x(parse_positions(x_text));
  const ReversedConfig y(parse_positions(y_text));
  if (y.empty()) throw UsageError("--y needs at least one reversed particle");
  const Functional kind = parse_functional(kind_text);
  const Params params = popt.build();

  std::vector<CheckReport> reports{check_duality(x, y, kind, t, params)};
  if (identities && !x.empty()) {
    if (x[0] <= y.positions().back()) {
      for (auto& r : check_lemma_factorization(x, y, params)) reports.push_back(std::move(r));
    }
    CaseCheck cases = check_case_identities(x, y, params);
    for (auto& r : cases.reports) reports.push_back(std::move(r));
    if (!cases.skipped_reason.empty()) std::cerr << "note: " << cases.skipped_reason << '\n';
  }
  write_reports(std::cout, reports);
  for (const auto& r : reports) {
    if (!r.pass()) return kExitFailure;
  }
  return 0;
}

int run_sweep_cmd(const std::string& spec_file, const std::string& out_file,
                  const std::string& mutation, unsigned jobs)
{
  SweepSpec spec = sweep_spec_from_json(read_json_file(spec_file));
  if (!mutation.empty()) spec.mutation = parse_mutation(mutation);
  const SweepResult result = run_sweep(spec, jobs);
  if (!out_file.empty()) {
    std::ofstream out(out_file);
    if (!out) throw UsageError("cannot write '" + out_file + "'");
    write_reports(out, result.reports);
  }
  std::cout << summary_json(result).dump() << '\n';
  if (const auto worst = minimal_counterexample(result.failures())) {
    std::cerr << "minimal counterexample: " << to_json(*worst).dump() << '\n';
    return kExitFailure;
  }
  return 0;
}

int run_expect(const std::string& x_text, const std::string& y_text, const std::string& kind_text,
               unsigned t, const std::string& side, bool mc, std::uint64_t n,
               std::optional<std::uint64_t> seed, unsigned jobs, const ParamOptions& popt)
{
  const LocationConfig x(parse_positions(x_text));
  const ReversedConfig y(parse_positions(y_text));
  if (y.empty()) throw UsageError("--y needs at least one reversed particle");
  const Functional kind = parse_functional(kind_text);
  const Params params = popt.build();
  if (side != "forward" && side != "reversed") throw UsageError("--side must be forward or reversed");
  const bool forward = side == "forward";
  if (mc) {
    if (!seed) throw UsageError("--seed is required for Monte Carlo");
    const Side s = forward ? Side::forward : Side::reversed;
    std::cout << to_json(mc_expectation(s, x, y, kind, t, params, n, *seed, jobs)).dump() << '\n';
    return 0;
  }
  const ExactExpectation e = forward ? exact_expectation_forward(x, y, kind, t, params)
                                     : exact_expectation_reversed(x, y, kind, t, params);
  std::cout << to_json(e).dump() << '\n';
  return 0;
}

int run_step(const std::string& x_text, const std::string& y_text, std::optional<Pos> boundary,
             const ParamOptions& popt)
{
  const Params params = popt.build();
  if (!y_text.empty()) {
    const ReversedConfig y(parse_positions(y_text));
    const Pos L = boundary.value_or(y.empty() ? 0 : y.positions().back());
    std::cout << to_json(reversed_step_distribution(y, params, L)).dump() << '\n';
    return 0;
  }
  const LocationConfig x(parse_positions(x_text));
  const Pos R = boundary.value_or(x.empty() ? 0 : x.positions().back());
  std::cout << to_json(forward_step_distribution(x, params, R)).dump() << '\n';
  return 0;
}

int run_simulate(const std::string& x_text, const std::string& y_text, bool reversed, unsigned t,
                 std::optional<std::uint64_t> seed, std::uint64_t stream, const std::string& format,
                 const ParamOptions& popt)
{
  if (!seed) throw UsageError("--seed is required for simulate");
  if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
  const Params params = popt.build();
  Rng rng(*seed, stream);
  std::vector<std::vector<Pos>> rows;
  if (reversed) {
    std::vector<Pos> state = ReversedConfig(parse_positions(y_text)).positions();
    rows.push_back(state);
    for (unsigned s = 0; s < t; ++s) rows.push_back(state = sample_reversed_step(state, params, rng));
  } else {
    std::vector<Pos> state = LocationConfig(parse_positions(x_text)).positions();
    rows.push_back(state);
    for (unsigned s = 0; s < t; ++s) rows.push_back(state = sample_forward_step(state, params, rng));
  }
  if (format == "json") {
    std::cout << Json{{"direction", reversed ? "reversed" : "forward"},
                      {"seed", *seed},
                      {"stream", stream},
                      {"steps", rows}}
                     .dump()
              << '\n';
    return 0;
  }
  std::cout << "step";
  for (std::size_t i = 0; i < rows.front().size(); ++i) std::cout << ",p" << i + 1;
  std::cout << '\n';
  for (std::size_t s = 0; s < rows.size(); ++s) {
    std::cout << s;
    for (Pos p : rows[s]) std::cout << ',' << p;
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Stochastic six vertex model: exact and Monte Carlo duality checks"};
  app.require_subcommand(1);

  ParamOptions popt;
  std::string x_text;
  std::string y_text;
  std::string kind = "H";
  unsigned t = 1;
  unsigned jobs = default_jobs();
  std::optional<std::uint64_t> seed;

  auto* check = app.add_subcommand("check", "exact duality check for one (x, y)");
  check->add_option("--x", x_text, "forward positions, ascending, comma separated")->required();
  check->add_option("--y", y_text, "reversed positions, descending, comma separated")->required();
  check->add_option("--kind", kind, "functional H, G or D")->capture_default_str();
  check->add_option("--t", t, "number of steps")->capture_default_str();
  bool identities = false;
  check->add_flag("--identities", identities, "also run factorization and case identities");
  popt.attach(*check);

  auto* sweep = app.add_subcommand("sweep", "exhaustive duality sweep from a spec file");
  std::string spec_file;
  std::string out_file;
  std::string mutation;
  sweep->add_option("--spec", spec_file, "sweep spec JSON")->required();
  sweep->add_option("--out", out_file, "write every report as JSONL here");
  sweep->add_option("--jobs", jobs, "worker threads (default $SIXV_JOBS or 1)");
  sweep->add_option("--mutation", mutation, "inject a canned dynamics fault (test hook)");

  auto* expect = app.add_subcommand("expect", "exact or Monte Carlo expectation");
  std::string side = "forward";
  bool mc = false;
  std::uint64_t n_samples = 100000;
  expect->add_option("--x", x_text, "forward positions")->required();
  expect->add_option("--y", y_text, "reversed positions")->required();
  expect->add_option("--kind", kind, "functional H, G or D")->capture_default_str();
  expect->add_option("--t", t, "number of steps")->capture_default_str();
  expect->add_option("--side", side, "forward or reversed")->capture_default_str();
  expect->add_flag("--mc", mc, "Monte Carlo instead of exact");
  expect->add_option("--n-samples", n_samples, "Monte Carlo sample count")->capture_default_str();
  expect->add_option("--seed", seed, "Monte Carlo seed");
  expect->add_option("--jobs", jobs, "worker threads");
  popt.attach(*expect);

  auto* step = app.add_subcommand("step", "one-step lumped distribution as JSON");
  std::optional<Pos> boundary;
  step->add_option("--x", x_text, "forward positions");
  step->add_option("--y", y_text, "reversed positions (selects the reversed process)");
  step->add_option("--boundary", boundary, "lump boundary (R forward, L reversed)");
  popt.attach(*step);

  auto* simulate = app.add_subcommand("simulate", "sample a trajectory");
  bool reversed = false;
  std::string format = "csv";
  std::uint64_t stream = 0;
  simulate->add_option("--x", x_text, "forward positions");
  simulate->add_option("--y", y_text, "reversed positions");
  simulate->add_flag("--reversed", reversed, "simulate the reversed process from --y");
  simulate->add_option("--t", t, "number of steps")->capture_default_str();
  simulate->add_option("--seed", seed, "random seed");
  simulate->add_option("--stream", stream, "stream id within the seed")->capture_default_str();
  simulate->add_option("--format", format, "csv or json")->capture_default_str();
  popt.attach(*simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*check) return run_check(x_text, y_text, kind, t, identities, popt);
    if (*sweep) return run_sweep_cmd(spec_file, out_file, mutation, jobs);
    if (*expect) return run_expect(x_text, y_text, kind, t, side, mc, n_samples, seed, jobs, popt);
    if (*step) return run_step(x_text, y_text, boundary, popt);
    if (*simulate) return run_simulate(x_text, y_text, reversed, t, seed, stream, format, popt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
