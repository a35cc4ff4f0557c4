#include "sixv/params.hpp"

#include <stdexcept>

namespace sixv {

Params::Site Params::make_site(const Rational& q, const Rational& b2)
{
  Site s;
  s.b2 = b2;
  s.b1 = q * b2;
  if (!is_open_unit(s.b2)) throw std::invalid_argument("b2 must lie in (0,1), got " + to_string(b2));
  if (!is_open_unit(s.b1)) {
    throw std::invalid_argument("b1 = q*b2 must lie in (0,1), got " + to_string(s.b1));
  }
  s.b1_approx = s.b1.get_d();
  s.b2_approx = s.b2.get_d();
  return s;
}

Params Params::homogeneous(const Rational& q, const Rational& b2)
{
  return inhomogeneous(q, {}, b2);
}

Params Params::from_b1_b2(const Rational& b1, const Rational& b2)
{
  if (!is_open_unit(b2)) throw std::invalid_argument("b2 must lie in (0,1), got " + to_string(b2));
  return homogeneous(b1 / b2, b2);
}

Params Params::inhomogeneous(const Rational& q, const std::map<Pos, Rational>& b2_sites,
                             const Rational& b2_default)
{
  if (q <= 0) throw std::invalid_argument("q must be positive, got " + to_string(q));
  Params p;
  p.q_ = q;
  p.default_ = make_site(q, b2_default);
  for (const auto& [x, b2] : b2_sites) {
    // Sites equal to the default are dropped so that a constant map stays homogeneous.
    if (b2 != b2_default) p.sites_.emplace(x, make_site(q, b2));
  }
  return p;
}

Params Params::from_site_maps(const std::map<Pos, Rational>& b1_sites,
                              const std::map<Pos, Rational>& b2_sites, const Rational& b1_default,
                              const Rational& b2_default)
{
  if (!is_open_unit(b2_default)) throw std::invalid_argument("default b2 must lie in (0,1)");
  const Rational q = b1_default / b2_default;
  std::map<Pos, Rational> b2_all = b2_sites;
  for (const auto& [x, b1] : b1_sites) {
    if (!b2_all.contains(x)) b2_all.emplace(x, b2_default);
  }
  for (const auto& [x, b2] : b2_all) {
    const auto it = b1_sites.find(x);
    const Rational& b1 = it == b1_sites.end() ? b1_default : it->second;
    if (b1 != q * b2) {
      throw std::invalid_argument("site " + std::to_string(x) + ": b1 = " + to_string(b1) +
                                  " differs from q*b2 = " + to_string(Rational(q * b2)));
    }
  }
  return inhomogeneous(q, b2_all, b2_default);
}

std::map<Pos, Rational> Params::b2_sites() const
{
  std::map<Pos, Rational> out;
  for (const auto& [x, s] : sites_) out.emplace(x, s.b2);
  return out;
}

Params Params::mirrored() const
{
  Params p = *this;
  p.sites_.clear();
  for (const auto& [x, s] : sites_) p.sites_.emplace(-x, s);
  return p;
}

Params Params::with_mutation(Mutation m) const
{
  Params p = *this;
  p.mutation_ = m;
  return p;
}

bool operator==(const Params& a, const Params& b)
{
  if (a.q_ != b.q_ || a.default_.b2 != b.default_.b2 || a.mutation_ != b.mutation_) return false;
  if (a.sites_.size() != b.sites_.size()) return false;
  auto ia = a.sites_.begin();
  for (auto ib = b.sites_.begin(); ib != b.sites_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second.b2 != ib->second.b2) return false;
  }
  return true;
}

}  // namespace sixv
