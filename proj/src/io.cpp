#include "sixv/io.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sixv {

namespace {

Rational rational_field(const Json& j, const char* key)
{
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (!v.is_string()) {
    throw std::invalid_argument(std::string("field '") + key + "' must be a \"num/den\" string");
  }
  return parse_rational(v.get<std::string>());
}

Pos parse_site(const std::string& key)
{
  std::size_t used = 0;
  Pos site = 0;
  try {
    site = std::stoll(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != key.size()) throw std::invalid_argument("bad site key '" + key + "'");
  return site;
}

}  // namespace

Json to_json(const Params& params)
{
  Json j;
  j["q"] = to_string(params.q());
  if (params.is_homogeneous()) {
    j["b2"] = to_string(params.b2_default());
    return j;
  }
  Json sites = Json::object();
  for (const auto& [x, b2] : params.b2_sites()) sites[std::to_string(x)] = to_string(b2);
  j["b2_sites"] = std::move(sites);
  j["b2_default"] = to_string(params.b2_default());
  return j;
}

Params params_from_json(const Json& j)
{
  if (!j.is_object()) throw std::invalid_argument("params must be a JSON object");
  const Rational q = rational_field(j, "q");
  if (j.contains("b2_sites")) {
    std::map<Pos, Rational> sites;
    for (const auto& [key, value] : j.at("b2_sites").items()) {
      if (!value.is_string()) throw std::invalid_argument("site values must be \"num/den\" strings");
      sites.emplace(parse_site(key), parse_rational(value.get<std::string>()));
    }
    return Params::inhomogeneous(q, sites, rational_field(j, "b2_default"));
  }
  return Params::homogeneous(q, rational_field(j, "b2"));
}

Json to_json(const StepDistribution& dist)
{
  Json arr = Json::array();
  for (const Outcome& o : dist.support) {
    arr.push_back(
        {{"positions", o.state.positions}, {"lumped", o.state.lumped}, {"prob", to_string(o.prob)}});
  }
  return arr;
}

Json to_json(const ExactExpectation& e) { return {{"value", to_string(e.value)}}; }

Json to_json(const McExpectation& e)
{
  return {{"mean", e.mean}, {"stderr", e.std_error}, {"n", e.n}, {"seed", e.seed}};
}

Json to_json(const CheckReport& r)
{
  Json j;
  j["identity"] = r.identity;
  j["case"] = std::string(to_string(r.case_label));
  j["x"] = r.x.positions();
  j["y"] = r.y.positions();
  j["t"] = r.t;
  j["kind"] = r.kind ? Json(std::string(to_string(*r.kind))) : Json(nullptr);
  j["params"] = to_json(r.params);
  j["lhs"] = to_string(r.lhs);
  j["rhs"] = to_string(r.rhs);
  j["verdict"] = r.pass() ? "pass" : "fail";
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

CheckReport check_report_from_json(const Json& j)
{
  CheckReport r;
  r.identity = j.at("identity").get<std::string>();
  r.case_label = parse_case_label(j.at("case").get<std::string>());
  r.x = LocationConfig(j.at("x").get<std::vector<Pos>>());
  r.y = ReversedConfig(j.at("y").get<std::vector<Pos>>());
  r.t = j.at("t").get<unsigned>();
  if (!j.at("kind").is_null()) r.kind = parse_functional(j.at("kind").get<std::string>());
  r.params = params_from_json(j.at("params"));
  r.lhs = rational_field(j, "lhs");
  r.rhs = rational_field(j, "rhs");
  if (j.contains("note")) r.note = j.at("note").get<std::string>();
  const std::string verdict = j.at("verdict").get<std::string>();
  if (verdict != (r.pass() ? "pass" : "fail")) {
    throw std::invalid_argument("report verdict disagrees with lhs/rhs");
  }
  return r;
}

Json summary_json(const SweepResult& result)
{
  return {{"total", result.total},
          {"passed", result.passed},
          {"failed", result.failed},
          {"elapsed_ms", result.elapsed_ms}};
}

std::string_view to_string(Mutation m)
{
  switch (m) {
    case Mutation::none:
      return "none";
    case Mutation::landing_factor_on_push:
      return "landing_factor_on_push";
    case Mutation::push_on_any_move:
      return "push_on_any_move";
    case Mutation::swapped_b1_b2:
      return "swapped_b1_b2";
  }
  return "?";
}

Mutation parse_mutation(std::string_view text)
{
  for (Mutation m : {Mutation::none, Mutation::landing_factor_on_push, Mutation::push_on_any_move,
                     Mutation::swapped_b1_b2}) {
    if (to_string(m) == text) return m;
  }
  throw std::invalid_argument("unknown mutation '" + std::string(text) + "'");
}

Json to_json(const SweepSpec& spec)
{
  Json j;
  j["max_l"] = spec.max_l;
  j["max_k"] = spec.max_k;
  j["window"] = {spec.window.lo, spec.window.hi};
  j["t"] = spec.t_values;
  j["params"] = Json::array();
  for (const Params& p : spec.params) j["params"].push_back(to_json(p));
  j["kinds"] = Json::array();
  for (Functional k : spec.kinds) j["kinds"].push_back(std::string(to_string(k)));
  j["identities"] = spec.identities;
  j["mutation"] = std::string(to_string(spec.mutation));
  return j;
}

SweepSpec sweep_spec_from_json(const Json& j)
{
  if (!j.is_object()) throw std::invalid_argument("sweep spec must be a JSON object");
  SweepSpec spec;
  try {
    spec.max_l = j.at("max_l").get<std::size_t>();
    spec.max_k = j.at("max_k").get<std::size_t>();
    const auto window = j.at("window").get<std::vector<Pos>>();
    if (window.size() != 2) throw std::invalid_argument("window must be [lo, hi]");
    spec.window = Window{window[0], window[1]};
    spec.t_values = j.value("t", std::vector<unsigned>{1});
    spec.params.clear();
    for (const Json& p : j.at("params")) spec.params.push_back(params_from_json(p));
    if (j.contains("kinds")) {
      spec.kinds.clear();
      for (const Json& k : j.at("kinds")) spec.kinds.push_back(parse_functional(k.get<std::string>()));
    }
    spec.identities = j.value("identities", false);
    spec.mutation = parse_mutation(j.value("mutation", std::string("none")));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed sweep spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

void write_reports(std::ostream& out, const std::vector<CheckReport>& reports)
{
  for (const CheckReport& r : reports) out << to_json(r).dump() << '\n';
}

std::vector<CheckReport> read_reports(std::istream& in)
{
  std::vector<CheckReport> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(check_report_from_json(Json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("malformed report line: ") + e.what());
    }
  }
  return out;
}

}  // namespace sixv
