#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sixv/params.hpp"
#include "sixv/rational.hpp"

namespace sixv {

/// Finitely many particles at strictly increasing sites (x_1 < ... < x_l).
class LocationConfig {
 public:
  LocationConfig() = default;
  /// Throws std::invalid_argument unless strictly increasing.
  explicit LocationConfig(std::vector<Pos> positions);

  const std::vector<Pos>& positions() const { return positions_; }
  std::size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  Pos operator[](std::size_t i) const { return positions_[i]; }

  auto operator<=>(const LocationConfig&) const = default;

 private:
  std::vector<Pos> positions_;
};

/// Reversed particles at strictly decreasing sites (y_1 > ... > y_k).
/// y_1 is the rightmost particle and updates first.
class ReversedConfig {
 public:
  ReversedConfig() = default;
  /// Throws std::invalid_argument unless strictly decreasing.
  explicit ReversedConfig(std::vector<Pos> positions);

  const std::vector<Pos>& positions() const { return positions_; }
  std::size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  Pos operator[](std::size_t i) const { return positions_[i]; }

  auto operator<=>(const ReversedConfig&) const = default;

 private:
  std::vector<Pos> positions_;
};

struct Window {
  Pos lo = 0;
  Pos hi = -1;

  std::size_t width() const { return hi < lo ? 0 : static_cast<std::size_t>(hi - lo + 1); }
  bool contains(Pos x) const { return lo <= x && x <= hi; }
  auto operator<=>(const Window&) const = default;
};

/// {0,1} occupation on a finite window. Sites left of the window are empty;
/// `escaped_right` counts particles known only to sit somewhere right of it.
class OccupationConfig {
 public:
  OccupationConfig(Window window, std::vector<std::uint8_t> bits, std::size_t escaped_right = 0);

  const Window& window() const { return window_; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::size_t escaped_right() const { return escaped_right_; }
  std::size_t particle_count() const;

  /// Occupation g_x; zero left of the window. Throws for x right of it.
  int at(Pos x) const;

  bool operator==(const OccupationConfig&) const = default;

 private:
  Window window_;
  std::vector<std::uint8_t> bits_;
  std::size_t escaped_right_ = 0;
};

/// Particles right of the window fold into escaped_right; a particle left of
/// it is an error.
OccupationConfig to_occupation(const LocationConfig& x, Window window);

/// Inverse of to_occupation. Throws if any particle escaped the window.
LocationConfig to_location(const OccupationConfig& g);

/// N_x(g): particles at or left of x. Requires x <= window.hi.
std::size_t height(const OccupationConfig& g, Pos x);

enum class VertexType { I, II, III, IV, V, VI };

/// Weights 1, 1, b2, 1-b2, b1, 1-b1 for types I..VI, read at `site`.
Rational vertex_weight(VertexType type, const Params& params, Pos site);

}  // namespace sixv
