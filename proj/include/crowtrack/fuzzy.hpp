#pragma once

#include <array>
#include <cstddef>

namespace crowtrack {

/// Linguistic labels, ordered Very Small < Small < Medium < Large < Very Large.
enum class Label : std::size_t { VS = 0, S = 1, M = 2, L = 3, VL = 4 };

inline constexpr std::size_t kLabels = 5;

using Memberships = std::array<double, kLabels>;

/// Shape parameters of the five membership functions. VS and VL are sigmoids
/// (slope c, centre f); S, M, L are Gaussians (centre d, width f).
struct FuzzyParams {
  double c_vs = 80.0;
  double f_vs = 0.15;
  double d_s = 0.3;
  double f_s = 0.12;
  double d_m = 0.5;
  double f_m = 0.12;
  double d_l = 0.7;
  double f_l = 0.12;
  double c_vl = 80.0;
  double f_vl = 0.85;

  /// Throws ContractViolation if the ordering / positivity constraints fail.
  void validate() const;
};

/// Rule consequents indexed [color label][texture label].
using RuleTable = std::array<std::array<Label, kLabels>, kLabels>;

/// Default rule base. Symmetric and monotone along rows and columns.
const RuleTable& default_rules() noexcept;

/// Membership of x in each label; x must lie in [0, 1].
Memberships membership(double x, const FuzzyParams& params);

/// Centre of gravity of each label's membership function over [0, 1]
/// (trapezoid rule on 2001 points).
std::array<double, kLabels> cog_table(const FuzzyParams& params);

/// Two-input Mamdani-style fuser: min firing strengths over all 25 rules,
/// weighted mean of the consequents' centres of gravity.
class FuzzyEngine {
 public:
  explicit FuzzyEngine(FuzzyParams params = {}, RuleTable rules = default_rules());

  const FuzzyParams& params() const noexcept { return params_; }
  const RuleTable& rules() const noexcept { return rules_; }
  const std::array<double, kLabels>& cog() const noexcept { return cog_; }
  double cog(Label l) const noexcept { return cog_[static_cast<std::size_t>(l)]; }

  /// Fused weight of two likelihoods in [0, 1]; result in [cog(VS), cog(VL)].
  double fuse(double a, double b) const;

  /// Score of a particle's current weight against its previous one.
  double temporal_score(double w_now, double w_prev) const { return fuse(w_now, w_prev); }

 private:
  FuzzyParams params_;
  RuleTable rules_;
  std::array<double, kLabels> cog_{};
};

/// Likelihood discounted by a cue reliability.
double discount(double alpha, double reliability);

}  // namespace crowtrack
