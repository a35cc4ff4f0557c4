#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <vector>

#include "sixv/model.hpp"
#include "sixv/params.hpp"
#include "sixv/rational.hpp"

namespace sixv {

/// Single-particle transition probability p(from, to) of the forward process:
/// b1 for staying, (1-b1) * prod(b2 on passed sites) * (1-b2 at landing) for a
/// jump to the right, 0 for moving left.
Rational one_particle_kernel(Pos from, Pos to, const Params& params);

/// A step outcome with every particle beyond the lump boundary collapsed into
/// a count. Forward: resolved positions are <= R, lumped ones > R.
/// Reversed: resolved positions are >= L (decreasing), lumped ones < L.
struct LumpedOutcome {
  std::vector<Pos> positions;
  std::size_t lumped = 0;

  auto operator<=>(const LumpedOutcome&) const = default;
};

struct Outcome {
  LumpedOutcome state;
  Rational prob;
};

enum class Direction { forward, reversed };

struct StepDistribution {
  Direction direction = Direction::forward;
  Pos boundary = 0;
  std::vector<Outcome> support;

  Rational total() const;
};

/// Exact one-step law of the forward location process, lumped at R.
/// Any R is accepted: particles already right of R are lumped up front.
StepDistribution forward_step_distribution(const LocationConfig& x, const Params& params, Pos R);

/// Exact one-step law of the reversed process, lumped at L. The rightmost
/// particle moves first and jumps left; this is the spatial mirror of the
/// forward rule with every weight read at the site where the vertex sits.
StepDistribution reversed_step_distribution(const ReversedConfig& y, const Params& params, Pos L);

/// Same laws on raw sorted vectors, streamed into `sink(positions, lumped,
/// prob)` with every probability scaled by `weight`. This is what the
/// multi-step engine uses; the public functions above wrap it.
using OutcomeSink = void (*)(void* ctx, const std::vector<Pos>& positions, std::size_t lumped,
                             const Rational& prob);
void forward_step_stream(const std::vector<Pos>& xs, const Params& params, Pos R,
                         const Rational& weight, OutcomeSink sink, void* ctx);
void reversed_step_stream(const std::vector<Pos>& ys, const Params& params, Pos L,
                          const Rational& weight, OutcomeSink sink, void* ctx);

/// Reproducible random stream keyed by (seed, stream id).
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  double uniform() { return unit_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

/// One draw of the forward step, no lumping. Mutations are ignored.
LocationConfig sample_forward_step(const LocationConfig& x, const Params& params, Rng& rng);
std::vector<Pos> sample_forward_step(const std::vector<Pos>& xs, const Params& params, Rng& rng);

ReversedConfig sample_reversed_step(const ReversedConfig& y, const Params& params, Rng& rng);
std::vector<Pos> sample_reversed_step(const std::vector<Pos>& ys, const Params& params, Rng& rng);

}  // namespace sixv
