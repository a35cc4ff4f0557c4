#include "sixv/dynamics.hpp"

#include <limits>
#include <stdexcept>

namespace sixv {

namespace {

constexpr Pos kNoCapRight = std::numeric_limits<Pos>::max();
constexpr Pos kNoCapLeft = std::numeric_limits<Pos>::min();

// Stay and pass-through probabilities as the (possibly mutated) engine sees them.
struct Weights {
  const Params& params;
  bool swapped = params.mutation() == Mutation::swapped_b1_b2;

  const Rational& stay(Pos x) const { return swapped ? params.b2_at(x) : params.b1_at(x); }
  const Rational& pass(Pos z) const { return swapped ? params.b1_at(z) : params.b2_at(z); }
};

struct Walk {
  const std::vector<Pos>& from;
  Weights weights;
  Pos boundary;
  OutcomeSink sink;
  void* ctx;
  std::vector<Pos> prefix;

  bool pushed(std::size_t i) const
  {
    if (i == 0) return false;
    if (weights.params.mutation() == Mutation::push_on_any_move) return prefix.back() != from[i - 1];
    return prefix.back() == from[i];
  }

  Rational saturating_mass(const Rational& mass, bool pushed_here, Pos z) const
  {
    if (pushed_here && weights.params.mutation() == Mutation::landing_factor_on_push) {
      return mass * (1 - weights.pass(z));
    }
    return mass;
  }

  void land(std::size_t i, Pos z, const Rational& prob, bool rightward)
  {
    prefix.push_back(z);
    if (rightward) {
      forward(i + 1, prob);
    } else {
      reversed(i + 1, prob);
    }
    prefix.pop_back();
  }

  void forward(std::size_t i, const Rational& prob)
  {
    const std::size_t n = from.size();
    if (i == n) return sink(ctx, prefix, 0, prob);
    const Pos x = from[i];
    // Right of R: this particle and, since jumps are capped by the next
    // particle's old site, every later one too.
    if (x > boundary) return sink(ctx, prefix, n - i, prob);
    const Pos cap = i + 1 < n ? from[i + 1] : kNoCapRight;
    const bool push = pushed(i);

    if (!push) land(i, x, prob * weights.stay(x), true);
    Rational mass = push ? prob : Rational(prob * (1 - weights.stay(x)));
    for (Pos z = x + 1;; ++z) {
      if (z > boundary) return sink(ctx, prefix, n - i, mass);
      if (z == cap) return land(i, z, saturating_mass(mass, push, z), true);
      land(i, z, mass * (1 - weights.pass(z)), true);
      mass *= weights.pass(z);
    }
  }

  void reversed(std::size_t j, const Rational& prob)
  {
    const std::size_t k = from.size();
    if (j == k) return sink(ctx, prefix, 0, prob);
    const Pos y = from[j];
    if (y < boundary) return sink(ctx, prefix, k - j, prob);
    const Pos cap = j + 1 < k ? from[j + 1] : kNoCapLeft;
    const bool push = pushed(j);

    if (!push) land(j, y, prob * weights.stay(y), false);
    Rational mass = push ? prob : Rational(prob * (1 - weights.stay(y)));
    for (Pos z = y - 1;; --z) {
      if (z < boundary) return sink(ctx, prefix, k - j, mass);
      if (z == cap) return land(j, z, saturating_mass(mass, push, z), false);
      land(j, z, mass * (1 - weights.pass(z)), false);
      mass *= weights.pass(z);
    }
  }
};

void collect(void* ctx, const std::vector<Pos>& positions, std::size_t lumped, const Rational& prob)
{
  static_cast<StepDistribution*>(ctx)->support.push_back(Outcome{{positions, lumped}, prob});
}

}  // namespace

Rational one_particle_kernel(Pos from, Pos to, const Params& params)
{
  if (to < from) return 0;
  if (to == from) return params.b1_at(from);
  Rational p = 1 - params.b1_at(from);
  for (Pos j = from + 1; j < to; ++j) p *= params.b2_at(j);
  return p * (1 - params.b2_at(to));
}

Rational StepDistribution::total() const
{
  Rational sum = 0;
  for (const auto& o : support) sum += o.prob;
  return sum;
}

void forward_step_stream(const std::vector<Pos>& xs, const Params& params, Pos R,
                         const Rational& weight, OutcomeSink sink, void* ctx)
{
  Walk walk{xs, Weights{params}, R, sink, ctx, {}};
  walk.prefix.reserve(xs.size());
  walk.forward(0, weight);
}

void reversed_step_stream(const std::vector<Pos>& ys, const Params& params, Pos L,
                          const Rational& weight, OutcomeSink sink, void* ctx)
{
  Walk walk{ys, Weights{params}, L, sink, ctx, {}};
  walk.prefix.reserve(ys.size());
  walk.reversed(0, weight);
}

StepDistribution forward_step_distribution(const LocationConfig& x, const Params& params, Pos R)
{
  StepDistribution dist{Direction::forward, R, {}};
  forward_step_stream(x.positions(), params, R, Rational(1), collect, &dist);
  return dist;
}

StepDistribution reversed_step_distribution(const ReversedConfig& y, const Params& params, Pos L)
{
  StepDistribution dist{Direction::reversed, L, {}};
  reversed_step_stream(y.positions(), params, L, Rational(1), collect, &dist);
  return dist;
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32U)};
  engine_.seed(seq);
}

std::vector<Pos> sample_forward_step(const std::vector<Pos>& xs, const Params& params, Rng& rng)
{
  std::vector<Pos> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Pos x = xs[i];
    const Pos cap = i + 1 < xs.size() ? xs[i + 1] : kNoCapRight;
    const bool pushed = i > 0 && out.back() == x;
    if (!pushed && rng.uniform() < params.b1_approx(x)) {
      out.push_back(x);
      continue;
    }
    Pos z = x + 1;
    while (z != cap && rng.uniform() < params.b2_approx(z)) ++z;
    out.push_back(z);
  }
  return out;
}

LocationConfig sample_forward_step(const LocationConfig& x, const Params& params, Rng& rng)
{
  return LocationConfig(sample_forward_step(x.positions(), params, rng));
}

std::vector<Pos> sample_reversed_step(const std::vector<Pos>& ys, const Params& params, Rng& rng)
{
  std::vector<Pos> out;
  out.reserve(ys.size());
  for (std::size_t j = 0; j < ys.size(); ++j) {
    const Pos y = ys[j];
    const Pos cap = j + 1 < ys.size() ? ys[j + 1] : kNoCapLeft;
    const bool pushed = j > 0 && out.back() == y;
    if (!pushed && rng.uniform() < params.b1_approx(y)) {
      out.push_back(y);
      continue;
    }
    Pos z = y - 1;
    while (z != cap && rng.uniform() < params.b2_approx(z)) --z;
    out.push_back(z);
  }
  return out;
}

ReversedConfig sample_reversed_step(const ReversedConfig& y, const Params& params, Rng& rng)
{
  return ReversedConfig(sample_reversed_step(y.positions(), params, rng));
}

}  // namespace sixv
