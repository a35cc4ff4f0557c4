#include "sixv/duality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "parallel.hpp"

namespace sixv {

namespace {

struct LawSink {
  Law* next;
  std::size_t carried;
};

void add_to_law(void* ctx, const std::vector<Pos>& positions, std::size_t lumped,
                const Rational& prob)
{
  auto* sink = static_cast<LawSink*>(ctx);
  (*sink->next)[LumpedOutcome{positions, lumped + sink->carried}] += prob;
}

// Resolved prefix and lumped tail of an initial configuration.
LumpedOutcome split_forward(const std::vector<Pos>& xs, Pos R)
{
  const auto cut = std::upper_bound(xs.begin(), xs.end(), R);
  return {std::vector<Pos>(xs.begin(), cut), static_cast<std::size_t>(xs.end() - cut)};
}

LumpedOutcome split_reversed(const std::vector<Pos>& ys, Pos L)
{
  const auto cut = std::find_if(ys.begin(), ys.end(), [L](Pos y) { return y < L; });
  return {std::vector<Pos>(ys.begin(), cut), static_cast<std::size_t>(ys.end() - cut)};
}

Pos default_reversed_boundary(const LocationConfig& x, const ReversedConfig& y)
{
  // With no forward particles the functional ignores reversed positions.
  return x.empty() ? y.positions().back() : x[0];
}

// Functional value with exact rationals replaced by doubles.
double eval_approx(Functional kind, const std::vector<Pos>& x, const std::vector<Pos>& y, double q)
{
  std::size_t total = 0;
  for (Pos yi : y) {
    const auto it = std::upper_bound(x.begin(), x.end(), yi);
    const auto n = static_cast<std::size_t>(it - x.begin());
    const bool occupied = n > 0 && *(it - 1) == yi;
    if (kind == Functional::H && !occupied) return 0.0;
    if (kind == Functional::D && occupied) return 0.0;
    total += n;
  }
  return std::pow(q, -static_cast<double>(total));
}

}  // namespace

std::string_view to_string(Functional kind)
{
  switch (kind) {
    case Functional::H:
      return "H";
    case Functional::G:
      return "G";
    case Functional::D:
      return "D";
  }
  return "?";
}

Functional parse_functional(std::string_view text)
{
  if (text == "H") return Functional::H;
  if (text == "G") return Functional::G;
  if (text == "D") return Functional::D;
  throw std::invalid_argument("unknown functional '" + std::string(text) + "' (expected H, G or D)");
}

Rational eval_functional(Functional kind, const std::vector<Pos>& x, const std::vector<Pos>& y,
                         const Rational& q)
{
  // Each factor is an indicator times q^{-N}, so the product is one power.
  std::size_t total = 0;
  for (Pos yi : y) {
    const auto it = std::upper_bound(x.begin(), x.end(), yi);
    const auto n = static_cast<std::size_t>(it - x.begin());
    const bool occupied = n > 0 && *(it - 1) == yi;
    if (kind == Functional::H && !occupied) return 0;
    if (kind == Functional::D && occupied) return 0;
    total += n;
  }
  return pow(Rational(1 / q), total);
}

Rational eval_functional(Functional kind, const OccupationConfig& g, const ReversedConfig& y,
                         const Rational& q)
{
  Rational out = 1;
  const Rational q_inv = 1 / q;
  for (Pos yi : y.positions()) {
    if (!g.window().contains(yi)) {
      throw std::out_of_range("evaluation point " + std::to_string(yi) +
                              " lies outside the occupation window");
    }
    const int occupied = g.at(yi);
    const Rational weight = pow(q_inv, height(g, yi));
    switch (kind) {
      case Functional::H:
        out *= occupied * weight;
        break;
      case Functional::G:
        out *= weight;
        break;
      case Functional::D:
        out *= (1 - occupied) * weight;
        break;
    }
  }
  return out;
}

Law forward_law(const LocationConfig& x, unsigned t, const Params& params, Pos R)
{
  Law current{{split_forward(x.positions(), R), Rational(1)}};
  for (unsigned step = 0; step < t; ++step) {
    Law next;
    for (const auto& [state, prob] : current) {
      LawSink sink{&next, state.lumped};
      forward_step_stream(state.positions, params, R, prob, add_to_law, &sink);
    }
    current = std::move(next);
  }
  return current;
}

Law reversed_law(const ReversedConfig& y, unsigned t, const Params& params, Pos L)
{
  Law current{{split_reversed(y.positions(), L), Rational(1)}};
  for (unsigned step = 0; step < t; ++step) {
    Law next;
    for (const auto& [state, prob] : current) {
      LawSink sink{&next, state.lumped};
      reversed_step_stream(state.positions, params, L, prob, add_to_law, &sink);
    }
    current = std::move(next);
  }
  return current;
}

Rational expect_over_forward_law(const Law& law, const ReversedConfig& y, Functional kind,
                                 const Rational& q)
{
  // Lumped particles sit right of every y_i: no occupation, no height.
  Rational sum = 0;
  for (const auto& [state, prob] : law) {
    sum += prob * eval_functional(kind, state.positions, y.positions(), q);
  }
  return sum;
}

Rational expect_over_reversed_law(const Law& law, const LocationConfig& x, Functional kind,
                                  const Rational& q)
{
  // A lumped reversed particle sits left of every x_i: factor 0 for H, 1 otherwise.
  Rational sum = 0;
  for (const auto& [state, prob] : law) {
    if (kind == Functional::H && state.lumped > 0) continue;
    sum += prob * eval_functional(kind, x.positions(), state.positions, q);
  }
  return sum;
}

ExactExpectation exact_expectation_forward(const LocationConfig& x, const ReversedConfig& y,
                                           Functional kind, unsigned t, const Params& params,
                                           std::optional<Pos> boundary)
{
  if (y.empty()) throw std::invalid_argument("reversed configuration needs at least one particle");
  const Pos R = boundary.value_or(y[0]);
  if (R < y[0]) throw std::invalid_argument("forward lump boundary must not be left of y_1");
  return {expect_over_forward_law(forward_law(x, t, params, R), y, kind, params.q()), 0};
}

ExactExpectation exact_expectation_reversed(const LocationConfig& x, const ReversedConfig& y,
                                            Functional kind, unsigned t, const Params& params,
                                            std::optional<Pos> boundary)
{
  if (y.empty()) throw std::invalid_argument("reversed configuration needs at least one particle");
  if (x.empty() && kind == Functional::H) return {0, 0};
  const Pos L = boundary.value_or(default_reversed_boundary(x, y));
  if (!x.empty() && L > x[0]) {
    throw std::invalid_argument("reversed lump boundary must not be right of x_1");
  }
  return {expect_over_reversed_law(reversed_law(y, t, params, L), x, kind, params.q()), 0};
}

Rational forward_expectation_if(const LocationConfig& x, const ReversedConfig& y, Functional kind,
                                const Params& params, const OutcomeEvent& event)
{
  if (y.empty()) throw std::invalid_argument("reversed configuration needs at least one particle");
  Law law = forward_law(x, 1, params, y[0]);
  std::erase_if(law, [&](const auto& entry) { return !event(entry.first); });
  return expect_over_forward_law(law, y, kind, params.q());
}

Rational reversed_expectation_if(const LocationConfig& x, const ReversedConfig& y,
                                 Functional kind, const Params& params, const OutcomeEvent& event)
{
  if (y.empty()) throw std::invalid_argument("reversed configuration needs at least one particle");
  Law law = reversed_law(y, 1, params, default_reversed_boundary(x, y));
  std::erase_if(law, [&](const auto& entry) { return !event(entry.first); });
  return expect_over_reversed_law(law, x, kind, params.q());
}

McExpectation mc_expectation(Side side, const LocationConfig& x, const ReversedConfig& y,
                             Functional kind, unsigned t, const Params& params, std::uint64_t n,
                             std::uint64_t seed, unsigned jobs)
{
  if (n == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  const double q = params.q().get_d();

  // Welford accumulators per chunk, merged in chunk order below.
  struct Moments {
    double count = 0;
    double mean = 0;
    double m2 = 0;
  };
  std::vector<Moments> partial(chunks);

  detail::parallel_for(chunks, jobs, [&](std::size_t c) {
    Moments m;
    const std::uint64_t end = std::min(n, (c + 1) * kChunk);
    for (std::uint64_t i = c * kChunk; i < end; ++i) {
      Rng rng(seed, i);
      double value = 0;
      if (side == Side::forward) {
        std::vector<Pos> state = x.positions();
        for (unsigned s = 0; s < t; ++s) state = sample_forward_step(state, params, rng);
        value = eval_approx(kind, state, y.positions(), q);
      } else {
        std::vector<Pos> state = y.positions();
        for (unsigned s = 0; s < t; ++s) state = sample_reversed_step(state, params, rng);
        value = eval_approx(kind, x.positions(), state, q);
      }
      m.count += 1;
      const double delta = value - m.mean;
      m.mean += delta / m.count;
      m.m2 += delta * (value - m.mean);
    }
    partial[c] = m;
  });

  Moments total;
  for (const Moments& m : partial) {
    const double count = total.count + m.count;
    const double delta = m.mean - total.mean;
    total.mean += delta * m.count / count;
    total.m2 += m.m2 + delta * delta * total.count * m.count / count;
    total.count = count;
  }
  McExpectation out;
  out.mean = total.mean;
  out.n = n;
  out.seed = seed;
  out.std_error = n > 1 ? std::sqrt(total.m2 / static_cast<double>(n - 1) / static_cast<double>(n))
                        : 0.0;
  return out;
}

}  // namespace sixv
