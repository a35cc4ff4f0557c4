#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sixv/duality.hpp"
#include "sixv/dynamics.hpp"

namespace sixv::oracle {

inline Params default_params() { return Params::from_b1_b2(Rational(1, 2), Rational(1, 4)); }

inline Params inhomogeneous_fixture()
{
  return Params::inhomogeneous(Rational(1, 2),
                               {{0, Rational(1, 2)},
                                {1, Rational(1, 3)},
                                {2, Rational(1, 4)},
                                {3, Rational(1, 2)},
                                {4, Rational(1, 3)},
                                {5, Rational(1, 4)}},
                               Rational(1, 4));
}

inline Law to_law(const StepDistribution& dist)
{
  Law law;
  for (const auto& o : dist.support) law[o.state] += o.prob;
  return law;
}

// Vertex-by-vertex transfer over the sites, carrying the horizontal line.
// Written against the weight table only, independently of the engine's
// particle-by-particle walk.
//   (v,h) = (0,0) -> (0,0) : 1
//   (1,1) -> (1,1)         : 1
//   (1,0) -> (1,0) b1 | (0,1) 1-b1
//   (0,1) -> (0,1) b2 | (1,0) 1-b2
struct TransferState {
  std::vector<Pos> placed;
  int line = 0;
  Rational prob;
};

template <class SiteOrder>
Law transfer_law(const std::vector<Pos>& occupied, const Params& params, const SiteOrder& sites,
                 std::size_t already_lumped)
{
  std::vector<TransferState> states{{{}, 0, Rational(1)}};
  for (Pos s : sites) {
    const bool v = std::find(occupied.begin(), occupied.end(), s) != occupied.end();
    const Rational b1 = params.b1_at(s);
    const Rational b2 = params.b2_at(s);
    std::vector<TransferState> next;
    for (auto& st : states) {
      if (!v && st.line == 0) {
        next.push_back(st);
      } else if (v && st.line == 1) {
        auto n = st;
        n.placed.push_back(s);
        next.push_back(n);
      } else if (v) {
        auto stay = st;
        stay.placed.push_back(s);
        stay.prob *= b1;
        next.push_back(stay);
        auto go = st;
        go.line = 1;
        go.prob *= 1 - b1;
        next.push_back(go);
      } else {
        auto pass = st;
        pass.prob *= b2;
        next.push_back(pass);
        auto land = st;
        land.line = 0;
        land.placed.push_back(s);
        land.prob *= 1 - b2;
        next.push_back(land);
      }
    }
    states = std::move(next);
  }
  Law law;
  for (auto& st : states) {
    if (st.prob == 0) continue;
    law[LumpedOutcome{st.placed, already_lumped + static_cast<std::size_t>(st.line)}] += st.prob;
  }
  return law;
}

inline Law transfer_forward(const std::vector<Pos>& x, const Params& params, Pos R)
{
  std::vector<Pos> sites;
  const Pos lo = x.empty() ? R : std::min(x.front(), R);
  for (Pos s = lo; s <= R; ++s) sites.push_back(s);
  const auto beyond = static_cast<std::size_t>(
      std::count_if(x.begin(), x.end(), [R](Pos p) { return p > R; }));
  return transfer_law(x, params, sites, beyond);
}

inline Law transfer_reversed(const std::vector<Pos>& y, const Params& params, Pos L)
{
  std::vector<Pos> sites;
  const Pos hi = y.empty() ? L : std::max(y.front(), L);
  for (Pos s = hi; s >= L; --s) sites.push_back(s);
  const auto beyond = static_cast<std::size_t>(
      std::count_if(y.begin(), y.end(), [L](Pos p) { return p < L; }));
  return transfer_law(y, params, sites, beyond);
}

inline Law compose(const Law& law, const Params& params, Pos boundary, bool forward)
{
  Law out;
  for (const auto& [state, p] : law) {
    Law step = forward ? transfer_forward(state.positions, params, boundary)
                       : transfer_reversed(state.positions, params, boundary);
    for (const auto& [s, w] : step) {
      out[LumpedOutcome{s.positions, s.lumped + state.lumped}] += p * w;
    }
  }
  return out;
}

// Functional straight from the definition on occupation variables.
inline Rational functional_by_definition(Functional kind, const std::vector<Pos>& x,
                                         const std::vector<Pos>& y, const Rational& q)
{
  const std::set<Pos> occ(x.begin(), x.end());
  Rational out = 1;
  for (Pos yi : y) {
    const int g = occ.count(yi) ? 1 : 0;
    long n = 0;
    for (Pos p : x) n += p <= yi ? 1 : 0;
    Rational factor = 1;
    for (long i = 0; i < n; ++i) factor /= q;
    if (kind == Functional::H) factor *= g;
    if (kind == Functional::D) factor *= 1 - g;
    out *= factor;
  }
  return out;
}

inline std::vector<Pos> random_subset(std::mt19937_64& rng, Pos lo, Pos hi, std::size_t size)
{
  std::vector<Pos> pool;
  for (Pos p = lo; p <= hi; ++p) pool.push_back(p);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

inline std::vector<Pos> descending(std::vector<Pos> v)
{
  std::sort(v.rbegin(), v.rend());
  return v;
}

}  // namespace sixv::oracle
