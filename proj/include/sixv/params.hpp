#pragma once

#include <cstdint>
#include <map>

#include "sixv/rational.hpp"

namespace sixv {

using Pos = std::int64_t;

/// Deliberate faults injected into the exact step engine. Used only to show
/// that the identity checkers can tell a broken implementation apart.
enum class Mutation {
  none,
  landing_factor_on_push,  ///< pushed particle pays (1 - b2) even on a gap-saturating landing
  push_on_any_move,        ///< a particle counts as pushed whenever its left neighbour moved
  swapped_b1_b2,           ///< dynamics read b1 where b2 belongs and vice versa
};

/// Vertex probabilities b1, b2 per site, tied together by q = b1 / b2.
///
/// A homogeneous model is just an empty site map plus defaults, so the same
/// site-indexed code path serves both cases.
class Params {
 public:
  struct Site {
    Rational b1;
    Rational b2;
    double b1_approx = 0;
    double b2_approx = 0;
  };

  static Params homogeneous(const Rational& q, const Rational& b2);
  static Params from_b1_b2(const Rational& b1, const Rational& b2);
  static Params inhomogeneous(const Rational& q, const std::map<Pos, Rational>& b2_sites,
                              const Rational& b2_default);
  /// Rejects any site where b1 != q * b2 for the q implied by the defaults.
  static Params from_site_maps(const std::map<Pos, Rational>& b1_sites,
                               const std::map<Pos, Rational>& b2_sites, const Rational& b1_default,
                               const Rational& b2_default);

  const Rational& q() const { return q_; }
  const Rational& b1_at(Pos x) const { return site(x).b1; }
  const Rational& b2_at(Pos x) const { return site(x).b2; }
  double b1_approx(Pos x) const { return site(x).b1_approx; }
  double b2_approx(Pos x) const { return site(x).b2_approx; }
  const Site& site(Pos x) const
  {
    if (sites_.empty()) return default_;
    const auto it = sites_.find(x);
    return it == sites_.end() ? default_ : it->second;
  }

  bool is_homogeneous() const { return sites_.empty(); }
  const Rational& b2_default() const { return default_.b2; }
  std::map<Pos, Rational> b2_sites() const;

  /// Same model read through x -> -x.
  Params mirrored() const;

  Mutation mutation() const { return mutation_; }
  Params with_mutation(Mutation m) const;

  friend bool operator==(const Params& a, const Params& b);

 private:
  Params() = default;
  static Site make_site(const Rational& q, const Rational& b2);

  Rational q_;
  Site default_;
  std::map<Pos, Site> sites_;
  Mutation mutation_ = Mutation::none;
};

}  // namespace sixv
