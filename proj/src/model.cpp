#include "sixv/model.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sixv {

LocationConfig::LocationConfig(std::vector<Pos> positions) : positions_(std::move(positions))
{
  if (std::adjacent_find(positions_.begin(), positions_.end(), std::greater_equal<>()) !=
      positions_.end()) {
    throw std::invalid_argument("location configuration must be strictly increasing");
  }
}

ReversedConfig::ReversedConfig(std::vector<Pos> positions) : positions_(std::move(positions))
{
  if (std::adjacent_find(positions_.begin(), positions_.end(), std::less_equal<>()) !=
      positions_.end()) {
    throw std::invalid_argument("reversed configuration must be strictly decreasing");
  }
}

OccupationConfig::OccupationConfig(Window window, std::vector<std::uint8_t> bits,
                                   std::size_t escaped_right)
    : window_(window), bits_(std::move(bits)), escaped_right_(escaped_right)
{
  if (bits_.size() != window_.width()) {
    throw std::invalid_argument("occupation bits do not match window width");
  }
  if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; })) {
    throw std::invalid_argument("occupation values must be 0 or 1");
  }
}

std::size_t OccupationConfig::particle_count() const
{
  return std::accumulate(bits_.begin(), bits_.end(), std::size_t{0}) + escaped_right_;
}

int OccupationConfig::at(Pos x) const
{
  if (x > window_.hi) {
    throw std::out_of_range("site " + std::to_string(x) + " is right of the occupation window");
  }
  if (x < window_.lo) return 0;
  return bits_[static_cast<std::size_t>(x - window_.lo)];
}

OccupationConfig to_occupation(const LocationConfig& x, Window window)
{
  std::vector<std::uint8_t> bits(window.width(), 0);
  std::size_t escaped = 0;
  for (Pos p : x.positions()) {
    if (p < window.lo) {
      throw std::invalid_argument("particle at " + std::to_string(p) + " is left of the window");
    }
    if (p > window.hi) {
      ++escaped;
    } else {
      bits[static_cast<std::size_t>(p - window.lo)] = 1;
    }
  }
  return OccupationConfig(window, std::move(bits), escaped);
}

LocationConfig to_location(const OccupationConfig& g)
{
  if (g.escaped_right() != 0) {
    throw std::invalid_argument("positions of escaped particles are unknown");
  }
  std::vector<Pos> positions;
  for (std::size_t i = 0; i < g.bits().size(); ++i) {
    if (g.bits()[i]) positions.push_back(g.window().lo + static_cast<Pos>(i));
  }
  return LocationConfig(std::move(positions));
}

std::size_t height(const OccupationConfig& g, Pos x)
{
  const Window& w = g.window();
  if (x > w.hi) {
    throw std::out_of_range("height at " + std::to_string(x) + " is ambiguous right of the window");
  }
  if (x < w.lo) return 0;
  const auto end = g.bits().begin() + (x - w.lo + 1);
  return static_cast<std::size_t>(std::accumulate(g.bits().begin(), end, std::size_t{0}));
}

Rational vertex_weight(VertexType type, const Params& params, Pos site)
{
  switch (type) {
    case VertexType::I:
    case VertexType::II:
      return 1;
    case VertexType::III:
      return params.b2_at(site);
    case VertexType::IV:
      return 1 - params.b2_at(site);
    case VertexType::V:
      return params.b1_at(site);
    case VertexType::VI:
      return 1 - params.b1_at(site);
  }
  throw std::invalid_argument("unknown vertex type");
}

}  // namespace sixv
