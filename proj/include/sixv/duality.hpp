#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "sixv/dynamics.hpp"
#include "sixv/model.hpp"
#include "sixv/params.hpp"
#include "sixv/rational.hpp"

namespace sixv {

/// H = prod g_{y_i} q^{-N_{y_i}},  G = prod q^{-N_{y_i}},  D = prod (1 - g_{y_i}) q^{-N_{y_i}}.
enum class Functional { H, G, D };

std::string_view to_string(Functional kind);
/// Accepts "H", "G" or "D".
Functional parse_functional(std::string_view text);

/// Exact value of the functional. Every y_i must lie inside g's window;
/// escaped particles sit right of all of them and never count.
Rational eval_functional(Functional kind, const OccupationConfig& g, const ReversedConfig& y,
                         const Rational& q);

/// Same, straight from sorted particle positions.
Rational eval_functional(Functional kind, const std::vector<Pos>& x, const std::vector<Pos>& y,
                         const Rational& q);

struct ExactExpectation {
  Rational value;
  /// Probability mass the engine could not account for. Lumping is exact, so
  /// this is always zero; kept so callers can assert it.
  Rational truncation_bound = 0;
};

struct McExpectation {
  double mean = 0;
  double std_error = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

/// t-step law over lumped states, with identical states merged.
using Law = std::map<LumpedOutcome, Rational>;

Law forward_law(const LocationConfig& x, unsigned t, const Params& params, Pos R);
Law reversed_law(const ReversedConfig& y, unsigned t, const Params& params, Pos L);

/// E over a forward law lumped at some R >= y_1.
Rational expect_over_forward_law(const Law& law, const ReversedConfig& y, Functional kind,
                                 const Rational& q);
/// E over a reversed law lumped at some L <= x_1.
Rational expect_over_reversed_law(const Law& law, const LocationConfig& x, Functional kind,
                                  const Rational& q);

/// E^x[kind(x(t), y)]. Lumps at R = y_1 unless a larger boundary is given.
/// Throws std::invalid_argument for empty y or a boundary below y_1.
ExactExpectation exact_expectation_forward(const LocationConfig& x, const ReversedConfig& y,
                                           Functional kind, unsigned t, const Params& params,
                                           std::optional<Pos> boundary = std::nullopt);

/// E^y[kind(x, y(t))]. Lumps at L = x_1 unless a smaller boundary is given.
ExactExpectation exact_expectation_reversed(const LocationConfig& x, const ReversedConfig& y,
                                            Functional kind, unsigned t, const Params& params,
                                            std::optional<Pos> boundary = std::nullopt);

using OutcomeEvent = std::function<bool(const LumpedOutcome&)>;

/// One-step E^x[kind(x(1), y) 1{event}] with lumping at y_1. The event sees
/// the lumped outcome (resolved positions <= y_1 plus a lumped count).
Rational forward_expectation_if(const LocationConfig& x, const ReversedConfig& y, Functional kind,
                                const Params& params, const OutcomeEvent& event);

/// One-step E^y[kind(x, y(1)) 1{event}] with lumping at x_1.
Rational reversed_expectation_if(const LocationConfig& x, const ReversedConfig& y,
                                 Functional kind, const Params& params, const OutcomeEvent& event);

enum class Side { forward, reversed };

/// Sample mean over n independent t-step trajectories. Trajectory i draws
/// from stream i of `seed`, so the result does not depend on `jobs`.
McExpectation mc_expectation(Side side, const LocationConfig& x, const ReversedConfig& y,
                             Functional kind, unsigned t, const Params& params, std::uint64_t n,
                             std::uint64_t seed, unsigned jobs = 1);

}  // namespace sixv
