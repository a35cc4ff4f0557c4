#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sixv/duality.hpp"
#include "sixv/model.hpp"
#include "sixv/params.hpp"
#include "sixv/rational.hpp"

namespace sixv {

/// Where the leftmost reversed particle y_k sits relative to x.
///   case1:  y_k is not a particle site of x
///   case2a: y_k = x_1
///   case2b: y_k = x_2
///   case2c: y_k = x_j for some j >= 3
/// `none` when either configuration is empty.
enum class CaseLabel { none, case1, case2a, case2b, case2c };

CaseLabel classify_case(const LocationConfig& x, const ReversedConfig& y);
std::string_view to_string(CaseLabel label);
CaseLabel parse_case_label(std::string_view text);

/// One exact identity instance. A check passes iff lhs == rhs as rationals.
struct CheckReport {
  std::string identity;
  LocationConfig x;
  ReversedConfig y;
  Params params = Params::homogeneous(2, Rational(1, 4));
  unsigned t = 1;
  std::optional<Functional> kind;
  Rational lhs;
  Rational rhs;
  CaseLabel case_label = CaseLabel::none;
  /// Free-form detail, e.g. the extra particles of a truncation check.
  std::string note;

  bool pass() const { return lhs == rhs; }
};

/// Forward vs reversed exact t-step expectation of `kind`.
CheckReport check_duality(const LocationConfig& x, const ReversedConfig& y, Functional kind,
                          unsigned t, const Params& params);

/// Adds particles right of y_1 and checks that neither one-step expectation
/// moves. Returns the forward-side and reversed-side reports in that order.
/// Throws std::invalid_argument if an extra particle is not right of y_1.
std::vector<CheckReport> check_truncation_invariance(const LocationConfig& x,
                                                     const ReversedConfig& y,
                                                     const std::vector<Pos>& extra_right,
                                                     Functional kind, const Params& params);

/// Conditioning on the first forward particle staying put:
///   x_1 < y_k:  E^x[H(x(1),y); x_1(1)=x_1] = q^{-k} b1 E^{x'}[H(x'(1),y)]
///   x_1 = y_k:  same with y' = (y_1..y_{k-1}) on the right, plus the
///               reversed counterpart conditioned on y_k(1) = y_k.
/// x' drops x_1. Throws std::invalid_argument when x_1 > y_k or either side is empty.
std::vector<CheckReport> check_lemma_factorization(const LocationConfig& x,
                                                   const ReversedConfig& y, const Params& params);

struct CaseCheck {
  std::vector<CheckReport> reports;
  std::string skipped_reason;
};

/// Every decomposition identity whose geometric hypothesis holds for (x, y),
/// each sub-expectation computed independently by the exact one-step engine.
/// The identities written with constant b1, b2 are skipped for
/// site-dependent parameters.
CaseCheck check_case_identities(const LocationConfig& x, const ReversedConfig& y,
                                const Params& params);

struct SweepSpec {
  std::size_t max_l = 2;
  std::size_t max_k = 2;
  Window window{0, 4};
  std::vector<unsigned> t_values{1};
  std::vector<Params> params;
  std::vector<Functional> kinds{Functional::H, Functional::G, Functional::D};
  /// Also run factorization and case identities (one-step, kind H).
  bool identities = false;
  Mutation mutation = Mutation::none;

  /// Throws std::invalid_argument for an empty or unsatisfiable domain.
  void validate() const;
};

struct SweepResult {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double elapsed_ms = 0;
  /// Every report in canonical order: params, t, l+k, l, x, y, kind; identity
  /// checks follow the duality checks.
  std::vector<CheckReport> reports;

  std::vector<CheckReport> failures() const;
};

/// All x with 0 <= l <= max_l and y with 1 <= k <= max_k inside the window
/// (l + k >= 2). Output order is independent of `jobs`.
SweepResult run_sweep(const SweepSpec& spec, unsigned jobs = 1);

/// Smallest failing instance by (l + k, t, spatial extent, x, y).
std::optional<CheckReport> minimal_counterexample(const std::vector<CheckReport>& failures);

/// Strictly increasing subsets of the window with exactly `size` elements,
/// in lexicographic order.
std::vector<std::vector<Pos>> window_subsets(Window window, std::size_t size);

}  // namespace sixv
