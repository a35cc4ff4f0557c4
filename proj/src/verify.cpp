#include "sixv/verify.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "parallel.hpp"

namespace sixv {

namespace {

using Positions = std::vector<Pos>;

// One-step E^x[H(x(1), y)], with the empty product for y = () equal to 1.
Rational forward_h(const Positions& x, const Positions& y, const Params& params)
{
  if (y.empty()) return 1;
  return exact_expectation_forward(LocationConfig(x), ReversedConfig(y), Functional::H, 1, params)
      .value;
}

Rational reversed_h(const Positions& x, const Positions& y, const Params& params)
{
  if (y.empty()) return 1;
  return exact_expectation_reversed(LocationConfig(x), ReversedConfig(y), Functional::H, 1, params)
      .value;
}

Rational q_inv_pow(const Params& params, std::size_t n) { return pow(Rational(1 / params.q()), n); }

Positions drop_front(const Positions& v, std::size_t n) { return Positions(v.begin() + n, v.end()); }
Positions drop_back(const Positions& v, std::size_t n) { return Positions(v.begin(), v.end() - n); }

CheckReport make_report(std::string identity, const LocationConfig& x, const ReversedConfig& y,
                        const Params& params, unsigned t, std::optional<Functional> kind,
                        Rational lhs, Rational rhs)
{
  CheckReport r;
  r.identity = std::move(identity);
  r.x = x;
  r.y = y;
  r.params = params;
  r.t = t;
  r.kind = kind;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.case_label = classify_case(x, y);
  return r;
}

void append(std::vector<CheckReport>& out, std::vector<CheckReport>&& more)
{
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

}  // namespace

CaseLabel classify_case(const LocationConfig& x, const ReversedConfig& y)
{
  if (x.empty() || y.empty()) return CaseLabel::none;
  const Pos yk = y.positions().back();
  const auto& xs = x.positions();
  const auto it = std::lower_bound(xs.begin(), xs.end(), yk);
  if (it == xs.end() || *it != yk) return CaseLabel::case1;
  switch (it - xs.begin()) {
    case 0:
      return CaseLabel::case2a;
    case 1:
      return CaseLabel::case2b;
    default:
      return CaseLabel::case2c;
  }
}

std::string_view to_string(CaseLabel label)
{
  switch (label) {
    case CaseLabel::none:
      return "none";
    case CaseLabel::case1:
      return "1";
    case CaseLabel::case2a:
      return "2a";
    case CaseLabel::case2b:
      return "2b";
    case CaseLabel::case2c:
      return "2c";
  }
  return "?";
}

CaseLabel parse_case_label(std::string_view text)
{
  for (CaseLabel c : {CaseLabel::none, CaseLabel::case1, CaseLabel::case2a, CaseLabel::case2b,
                      CaseLabel::case2c}) {
    if (to_string(c) == text) return c;
  }
  throw std::invalid_argument("unknown case label '" + std::string(text) + "'");
}

CheckReport check_duality(const LocationConfig& x, const ReversedConfig& y, Functional kind,
                          unsigned t, const Params& params)
{
  return make_report(std::string("duality.") + std::string(to_string(kind)), x, y, params, t, kind,
                     exact_expectation_forward(x, y, kind, t, params).value,
                     exact_expectation_reversed(x, y, kind, t, params).value);
}

std::vector<CheckReport> check_truncation_invariance(const LocationConfig& x,
                                                     const ReversedConfig& y,
                                                     const std::vector<Pos>& extra_right,
                                                     Functional kind, const Params& params)
{
  if (y.empty()) throw std::invalid_argument("reversed configuration needs at least one particle");
  std::set<Pos> merged(x.positions().begin(), x.positions().end());
  std::string note = "extra_right=";
  for (std::size_t i = 0; i < extra_right.size(); ++i) {
    const Pos e = extra_right[i];
    if (e <= y[0]) {
      throw std::invalid_argument("extra particle at " + std::to_string(e) +
                                  " is not right of y_1 = " + std::to_string(y[0]));
    }
    if (!merged.insert(e).second) {
      throw std::invalid_argument("extra particle at " + std::to_string(e) + " is already occupied");
    }
    note += (i ? "," : "") + std::to_string(e);
  }
  const LocationConfig extended(Positions(merged.begin(), merged.end()));

  std::vector<CheckReport> out;
  out.push_back(make_report("truncation.forward", extended, y, params, 1, kind,
                            exact_expectation_forward(extended, y, kind, 1, params).value,
                            exact_expectation_forward(x, y, kind, 1, params).value));
  out.push_back(make_report("truncation.reversed", extended, y, params, 1, kind,
                            exact_expectation_reversed(extended, y, kind, 1, params).value,
                            exact_expectation_reversed(x, y, kind, 1, params).value));
  for (auto& r : out) r.note = note;
  return out;
}

std::vector<CheckReport> check_lemma_factorization(const LocationConfig& x,
                                                   const ReversedConfig& y, const Params& params)
{
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("factorization needs particles on both sides");
  }
  const Positions& xs = x.positions();
  const Positions& ys = y.positions();
  const Pos x1 = xs.front();
  const Pos yk = ys.back();
  if (x1 > yk) throw std::invalid_argument("factorization needs x_1 <= y_k");

  const std::size_t k = ys.size();
  const Rational factor = q_inv_pow(params, k) * params.b1_at(x1);
  const Positions x_rest = drop_front(xs, 1);

  const Rational stay_lhs = forward_expectation_if(x, y, Functional::H, params, [x1](const auto& o) {
    return !o.positions.empty() && o.positions.front() == x1;
  });

  std::vector<CheckReport> out;
  if (x1 < yk) {
    out.push_back(make_report("stay-factorization.forward", x, y, params, 1, Functional::H,
                              stay_lhs, factor * forward_h(x_rest, ys, params)));
    return out;
  }
  const Positions y_rest = drop_back(ys, 1);
  out.push_back(make_report("stay-factorization.forward", x, y, params, 1, Functional::H, stay_lhs,
                            factor * forward_h(x_rest, y_rest, params)));
  const Rational reversed_lhs =
      reversed_expectation_if(x, y, Functional::H, params, [yk, k](const auto& o) {
        return o.lumped == 0 && o.positions.size() == k && o.positions.back() == yk;
      });
  out.push_back(make_report("stay-factorization.reversed", x, y, params, 1, Functional::H,
                            reversed_lhs, factor * reversed_h(x_rest, y_rest, params)));
  return out;
}

CaseCheck check_case_identities(const LocationConfig& x, const ReversedConfig& y,
                                const Params& params)
{
  CaseCheck out;
  if (x.empty() || y.empty()) {
    out.skipped_reason = "case identities need particles on both sides";
    return out;
  }
  const Positions& xs = x.positions();
  const Positions& ys = y.positions();
  const std::size_t k = ys.size();
  const Pos yk = ys.back();
  const CaseLabel label = classify_case(x, y);
  const Rational lhs_fwd = forward_h(xs, ys, params);
  const Rational lhs_rev = reversed_h(xs, ys, params);
  auto add = [&](const char* identity, const Rational& lhs, const Rational& rhs) {
    out.reports.push_back(make_report(identity, x, y, params, 1, Functional::H, lhs, rhs));
  };

  if (label == CaseLabel::case1) {
    // Split at y_k: x' = particles left of y_k with y' = (y_k); x'' = the rest with y''.
    const auto s = static_cast<std::size_t>(
        std::lower_bound(xs.begin(), xs.end(), yk) - xs.begin());
    const Positions x_left(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(s));
    const Positions x_right = drop_front(xs, s);
    const Positions y_last{yk};
    const Positions y_front = drop_back(ys, 1);
    const Rational factor = q_inv_pow(params, s * (k - 1));
    add("split.forward", lhs_fwd,
        factor * forward_h(x_left, y_last, params) * forward_h(x_right, y_front, params));
    add("split.reversed", lhs_rev,
        factor * reversed_h(x_left, y_last, params) * reversed_h(x_right, y_front, params));
  }

  if (label == CaseLabel::case2a) {
    const Positions x_rest = drop_front(xs, 1);
    const Positions y_rest = drop_back(ys, 1);
    const Rational factor = q_inv_pow(params, k) * params.b1_at(xs.front());
    add("first-shared.forward", lhs_fwd, factor * forward_h(x_rest, y_rest, params));
    add("first-shared.reversed", lhs_rev, factor * reversed_h(x_rest, y_rest, params));
  }

  const bool needs_constant = label == CaseLabel::case2b || (xs.size() >= 2 && yk > xs[1]);
  if (needs_constant && !params.is_homogeneous()) {
    out.skipped_reason = "identities with constant b1, b2 skipped for site-dependent parameters";
    return out;
  }
  const Rational& b1 = params.b1_at(xs.front());
  const Rational& b2 = params.b2_at(xs.front());

  if (label == CaseLabel::case2b) {
    const Pos gap = xs[1] - xs[0];
    const Positions x1 = drop_front(xs, 1);
    const Positions x2 = drop_front(xs, 2);
    const Positions y_rest = drop_back(ys, 1);
    const Rational qk = q_inv_pow(params, k);
    const Rational q2k = q_inv_pow(params, 2 * k - 1);
    const Rational mix = b1 * b2 - b1 - b2;
    const Rational gap_weight = pow(b2, static_cast<std::uint64_t>(gap - 1));
    auto combine = [&](const Rational& e1, const Rational& e2, const Rational& e3) {
      return Rational(qk * e1 + gap_weight * (qk * e2 + q2k * mix * e3));
    };
    const Rational l1 = forward_h(x1, ys, params);
    const Rational l3 = forward_h(x2, y_rest, params);
    add("second-shared.forward", lhs_fwd, combine(l1, forward_h(x1, y_rest, params), l3));
    add("second-shared.reversed", lhs_rev,
        combine(reversed_h(x1, ys, params), reversed_h(x1, y_rest, params),
                reversed_h(x2, y_rest, params)));
    add("second-shared.auxiliary", l1, b1 * qk * l3);
  }

  if (xs.size() >= 2 && yk > xs[1]) {
    // Holds whenever y_k is right of x_2, whether or not y_k is occupied.
    const Pos gap = xs[1] - xs[0];
    const Positions x1 = drop_front(xs, 1);
    const Positions x2 = drop_front(xs, 2);
    const Rational qk = q_inv_pow(params, k);
    const Rational qk1 = q_inv_pow(params, k - 1);
    const Rational gap_weight = pow(b2, static_cast<std::uint64_t>(gap));
    auto combine = [&](const Rational& e1, const Rational& e2) {
      return Rational(qk * e1 + qk1 * gap_weight * (e1 - qk * e2));
    };
    add("beyond-second.forward", lhs_fwd,
        combine(forward_h(x1, ys, params), forward_h(x2, ys, params)));
    add("beyond-second.reversed", lhs_rev,
        combine(reversed_h(x1, ys, params), reversed_h(x2, ys, params)));
  }
  return out;
}

void SweepSpec::validate() const
{
  if (max_k < 1) throw std::invalid_argument("sweep needs max_k >= 1");
  if (max_l + max_k < 2) throw std::invalid_argument("sweep needs l + k >= 2 to be reachable");
  if (window.width() == 0) throw std::invalid_argument("sweep window is empty");
  if (params.empty()) throw std::invalid_argument("sweep needs at least one parameter set");
  if (t_values.empty() && !identities) throw std::invalid_argument("sweep needs at least one t");
  if (kinds.empty() && !identities) throw std::invalid_argument("sweep needs at least one functional");
}

std::vector<CheckReport> SweepResult::failures() const
{
  std::vector<CheckReport> out;
  std::copy_if(reports.begin(), reports.end(), std::back_inserter(out),
               [](const CheckReport& r) { return !r.pass(); });
  return out;
}

std::vector<std::vector<Pos>> window_subsets(Window window, std::size_t size)
{
  std::vector<std::vector<Pos>> out;
  if (size > window.width()) return out;
  std::vector<Pos> current;
  auto recurse = [&](auto&& self, Pos from) -> void {
    if (current.size() == size) {
      out.push_back(current);
      return;
    }
    const auto remaining = static_cast<Pos>(size - current.size());
    for (Pos p = from; p + remaining - 1 <= window.hi; ++p) {
      current.push_back(p);
      self(self, p + 1);
      current.pop_back();
    }
  };
  recurse(recurse, window.lo);
  return out;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned jobs)
{
  spec.validate();
  const auto start = std::chrono::steady_clock::now();

  std::vector<std::vector<std::vector<Pos>>> forward_sets(spec.max_l + 1);
  for (std::size_t l = 0; l <= spec.max_l; ++l) forward_sets[l] = window_subsets(spec.window, l);
  std::vector<std::vector<std::vector<Pos>>> reversed_sets(spec.max_k + 1);
  for (std::size_t k = 1; k <= spec.max_k; ++k) {
    reversed_sets[k] = window_subsets(spec.window, k);
    for (auto& v : reversed_sets[k]) std::reverse(v.begin(), v.end());
    std::sort(reversed_sets[k].begin(), reversed_sets[k].end());
  }

  struct Pair {
    const std::vector<Pos>* x;
    const std::vector<Pos>* y;
  };
  std::vector<Pair> pairs;
  for (std::size_t n = 2; n <= spec.max_l + spec.max_k; ++n) {
    for (std::size_t l = 0; l <= std::min(n - 1, spec.max_l); ++l) {
      const std::size_t k = n - l;
      if (k > spec.max_k) continue;
      for (const auto& x : forward_sets[l]) {
        for (const auto& y : reversed_sets[k]) pairs.push_back({&x, &y});
      }
    }
  }

  std::vector<Params> engines;
  for (const Params& p : spec.params) engines.push_back(p.with_mutation(spec.mutation));

  struct Task {
    std::size_t params;
    std::optional<unsigned> t;  // nullopt: identity checks
    Pair pair;
  };
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < engines.size(); ++p) {
    if (!spec.kinds.empty()) {
      for (unsigned t : spec.t_values) {
        for (const Pair& pr : pairs) tasks.push_back({p, t, pr});
      }
    }
  }
  if (spec.identities) {
    for (std::size_t p = 0; p < engines.size(); ++p) {
      for (const Pair& pr : pairs) {
        if (!pr.x->empty()) tasks.push_back({p, std::nullopt, pr});
      }
    }
  }

  std::vector<std::vector<CheckReport>> slots(tasks.size());
  detail::parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const Task& task = tasks[i];
    const Params& params = engines[task.params];
    const LocationConfig x(*task.pair.x);
    const ReversedConfig y(*task.pair.y);
    std::vector<CheckReport>& out = slots[i];
    if (!task.t) {
      if (x[0] <= y.positions().back()) append(out, check_lemma_factorization(x, y, params));
      append(out, check_case_identities(x, y, params).reports);
      return;
    }
    const unsigned t = *task.t;
    const Law fwd = forward_law(x, t, params, y[0]);
    const Pos L = x.empty() ? y.positions().back() : x[0];
    const Law rev = reversed_law(y, t, params, L);
    for (Functional kind : spec.kinds) {
      out.push_back(make_report(std::string("duality.") + std::string(to_string(kind)), x, y,
                                params, t, kind,
                                expect_over_forward_law(fwd, y, kind, params.q()),
                                expect_over_reversed_law(rev, x, kind, params.q())));
    }
  });

  SweepResult result;
  for (auto& slot : slots) append(result.reports, std::move(slot));
  result.total = result.reports.size();
  result.passed = static_cast<std::size_t>(
      std::count_if(result.reports.begin(), result.reports.end(),
                    [](const CheckReport& r) { return r.pass(); }));
  result.failed = result.total - result.passed;
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::optional<CheckReport> minimal_counterexample(const std::vector<CheckReport>& failures)
{
  auto key = [](const CheckReport& r) {
    Pos lo = 0;
    Pos hi = 0;
    bool any = false;
    for (const auto* v : {&r.x.positions(), &r.y.positions()}) {
      for (Pos p : *v) {
        lo = any ? std::min(lo, p) : p;
        hi = any ? std::max(hi, p) : p;
        any = true;
      }
    }
    return std::make_tuple(r.x.size() + r.y.size(), r.t, hi - lo, r.x.positions(),
                           r.y.positions());
  };
  const auto it = std::min_element(failures.begin(), failures.end(),
                                   [&](const auto& a, const auto& b) { return key(a) < key(b); });
  if (it == failures.end()) return std::nullopt;
  return *it;
}

}  // namespace sixv
