#pragma once

// The combined power-type source f(u) = sum a_i |u|^{p_i-1} u - sum b_j |u|^{q_j-1} u
// and its antiderivative F. Construction sorts and validates exponents; the
// split index s0 separates the sinks that act below p_1 from the rest.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "viscowell/common.hpp"
#include "viscowell/kernel.hpp"

namespace viscowell {

struct SourceTerm {
  double coeff;
  double exponent;
};

// q_{s0} < p1 < q_{s0+1}; s0 = 0 when p1 < q1, s0 = s when q_s < p1.
inline int compute_s0(const std::vector<double>& p_sorted, const std::vector<double>& q_sorted) {
  if (p_sorted.empty()) throw ConfigError("source: no positive terms");
  const double p1 = p_sorted.front();
  int s0 = 0;
  for (double q : q_sorted)
    if (q < p1) ++s0;
  return s0;
}

class SourceSpec {
 public:
  SourceSpec(std::vector<SourceTerm> positive, std::vector<SourceTerm> negative)
      : pos_(std::move(positive)), neg_(std::move(negative)) {
    if (pos_.empty())
      throw ConfigError("source: at least one amplifying term is required");
    auto by_exp = [](const SourceTerm& a, const SourceTerm& b) { return a.exponent < b.exponent; };
    std::sort(pos_.begin(), pos_.end(), by_exp);
    std::sort(neg_.begin(), neg_.end(), by_exp);
    for (const auto& t : pos_)
      if (!(t.coeff > 0.0)) throw NonPositiveParameter("source: a_i must be positive");
    for (const auto& t : neg_)
      if (!(t.coeff > 0.0)) throw NonPositiveParameter("source: b_j must be positive");
    if (!(pos_.front().exponent > 1.0))
      throw ConfigError("source: p_1 must exceed 1");
    for (std::size_t i = 1; i < pos_.size(); ++i)
      if (!(pos_[i].exponent > pos_[i - 1].exponent))
        throw ConfigError("source: p_i must be strictly increasing");
    if (!neg_.empty() && !(neg_.front().exponent >= 1.0))
      throw ConfigError("source: q_1 must be at least 1");
    for (std::size_t j = 1; j < neg_.size(); ++j)
      if (!(neg_[j].exponent > neg_[j - 1].exponent))
        throw ConfigError("source: q_j must be strictly increasing");
    for (const auto& a : pos_)
      for (const auto& b : neg_)
        if (a.exponent == b.exponent)
          throw ConfigError("source: p_i == q_j; combine the terms instead");
    std::vector<double> ps, qs;
    for (const auto& t : pos_) ps.push_back(t.exponent);
    for (const auto& t : neg_) qs.push_back(t.exponent);
    s0_ = compute_s0(ps, qs);
  }

  const std::vector<SourceTerm>& positive() const { return pos_; }
  const std::vector<SourceTerm>& negative() const { return neg_; }
  int s0() const { return s0_; }
  int r() const { return static_cast<int>(pos_.size()); }
  int s() const { return static_cast<int>(neg_.size()); }
  double p1() const { return pos_.front().exponent; }
  double pr() const { return pos_.back().exponent; }
  double qs() const { return neg_.empty() ? 0.0 : neg_.back().exponent; }
  double p0() const { return std::max(pr(), qs()); }

  double f(double u) const {
    double acc = 0.0;
    for (const auto& t : pos_) acc += t.coeff * signed_pow(u, t.exponent);
    for (const auto& t : neg_) acc -= t.coeff * signed_pow(u, t.exponent);
    return acc;
  }

  double F(double u) const {
    double acc = 0.0;
    for (const auto& t : pos_) acc += t.coeff / (t.exponent + 1.0) * abs_pow(u, t.exponent + 1.0);
    for (const auto& t : neg_) acc -= t.coeff / (t.exponent + 1.0) * abs_pow(u, t.exponent + 1.0);
    return acc;
  }

  // Sinks truncated to j <= s0 (the ones entering I, J and the Nehari set).
  double f_truncated(double u) const {
    double acc = 0.0;
    for (const auto& t : pos_) acc += t.coeff * signed_pow(u, t.exponent);
    for (int j = 0; j < s0_; ++j) acc -= neg_[j].coeff * signed_pow(u, neg_[j].exponent);
    return acc;
  }

 private:
  std::vector<SourceTerm> pos_;
  std::vector<SourceTerm> neg_;
  int s0_ = 0;
};

struct AssumptionClause {
  std::string name;
  bool passed;
  bool relaxable;  // true for the 3D embedding caps
  std::string detail;
};

struct AssumptionReport {
  std::vector<AssumptionClause> clauses;
  bool all_passed() const {
    for (const auto& c : clauses)
      if (!c.passed) return false;
    return true;
  }
  bool hard_passed() const {
    for (const auto& c : clauses)
      if (!c.passed && !c.relaxable) return false;
    return true;
  }
  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    for (const auto& c : clauses)
      if (!c.passed && c.relaxable) w.push_back(c.name + ": " + c.detail);
    return w;
  }
};

// Checks every clause of the standing assumptions. Strict mode throws on any
// failure; relaxed mode throws only on the non-relaxable ones (m >= 1,
// exponent structure, kernel monotonicity) and downgrades the embedding caps
// to warnings, which is what 1D experiments need.
inline AssumptionReport validate_assumptions(const SourceSpec& src, double m,
                                             const RelaxationKernel& kernel, bool strict) {
  AssumptionReport rep;
  auto add = [&rep](std::string name, bool ok, bool relaxable, std::string detail) {
    rep.clauses.push_back({std::move(name), ok, relaxable, std::move(detail)});
  };

  add("exponent ordering", true, false,
      "1 < p_1 < ... < p_r and 1 <= q_1 < ... < q_s enforced at construction");
  add("m >= 1", m >= 1.0, false, "m = " + std::to_string(m));
  add("p_r <= 5", src.pr() <= 5.0, true, "p_r = " + std::to_string(src.pr()));
  add("q_s <= 5", src.s() == 0 || src.qs() <= 5.0, true,
      src.s() == 0 ? "no sinks" : "q_s = " + std::to_string(src.qs()));
  {
    const double lhs = (m + 1.0) / m * src.p0();
    add("(m+1)/m * p0 < 6", lhs < 6.0, true,
        "(m+1)/m * p0 = " + std::to_string(lhs));
  }
  {
    std::string why;
    const bool ok = kernel.monotone_vanishing(&why);
    add("mu positive, non-increasing, vanishing", ok, false, ok ? "sampled check" : why);
  }
  add("k(0) > 1", kernel.k0() > 1.0, false, "k(0) = " + std::to_string(kernel.k0()));

  if (strict && !rep.all_passed())
    throw AssumptionViolated("assumptions violated in strict mode: " +
                             [&rep] {
                               std::string s;
                               for (const auto& c : rep.clauses)
                                 if (!c.passed) s += c.name + "; ";
                               return s;
                             }());
  if (!strict && !rep.hard_passed())
    throw AssumptionViolated("non-relaxable assumption violated: " +
                             [&rep] {
                               std::string s;
                               for (const auto& c : rep.clauses)
                                 if (!c.passed && !c.relaxable) s += c.name + "; ";
                               return s;
                             }());
  for (const auto& w : rep.warnings()) logf(LogLevel::Warn, "assumption relaxed: %s", w.c_str());
  return rep;
}

}  // namespace viscowell
