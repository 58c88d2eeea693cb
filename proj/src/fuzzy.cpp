#include "crowtrack/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "crowtrack/errors.hpp"

namespace crowtrack {
namespace {

constexpr int kQuadraturePoints = 2001;

double gaussian(double x, double centre, double width) {
  const double d = x - centre;
  return std::exp(-(d * d) / (width * width));
}

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ContractViolation(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

}  // namespace

void FuzzyParams::validate() const {
  const bool positive = c_vs > 0 && c_vl > 0 && f_s > 0 && f_m > 0 && f_l > 0;
  const bool ordered = 0 < f_vs && f_vs < d_s && d_s < d_m && d_m < d_l && d_l < f_vl && f_vl < 1;
  if (!positive || !ordered) throw ContractViolation("fuzzy membership parameters out of order");
}

const RuleTable& default_rules() noexcept {
  using enum Label;
  static const RuleTable table{{
      {VS, VS, VS, M, L},
      {VS, VS, S, M, L},
      {VS, S, M, M, L},
      {M, M, M, VL, VL},
      {L, L, L, VL, VL},
  }};
  return table;
}

Memberships membership(double x, const FuzzyParams& p) {
  check_unit(x, "membership input");
  return {
      1.0 / (1.0 + std::exp(p.c_vs * (x - p.f_vs))),
      gaussian(x, p.d_s, p.f_s),
      gaussian(x, p.d_m, p.f_m),
      gaussian(x, p.d_l, p.f_l),
      1.0 / (1.0 + std::exp(-p.c_vl * (x - p.f_vl))),
  };
}

std::array<double, kLabels> cog_table(const FuzzyParams& params) {
  std::array<double, kLabels> num{};
  std::array<double, kLabels> den{};
  const double h = 1.0 / (kQuadraturePoints - 1);
  for (int i = 0; i < kQuadraturePoints; ++i) {
    const double x = i * h;
    const double wt = (i == 0 || i == kQuadraturePoints - 1) ? 0.5 : 1.0;
    const Memberships m = membership(x, params);
    for (std::size_t k = 0; k < kLabels; ++k) {
      num[k] += wt * m[k] * x;
      den[k] += wt * m[k];
    }
  }
  std::array<double, kLabels> out{};
  for (std::size_t k = 0; k < kLabels; ++k) out[k] = num[k] / den[k];
  return out;
}

FuzzyEngine::FuzzyEngine(FuzzyParams params, RuleTable rules)
    : params_(params), rules_(rules), cog_(cog_table(params)) {
  params_.validate();
}

double FuzzyEngine::fuse(double a, double b) const {
  const Memberships ma = membership(a, params_);
  const Memberships mb = membership(b, params_);
  double num = 0.0;
  double den = 0.0;
  auto term = [&](std::size_t m, std::size_t n) {
    const double strength = std::min(ma[m], mb[n]);
    return std::pair{strength * cog_[static_cast<std::size_t>(rules_[m][n])], strength};
  };
  // Mirrored rule pairs are summed together first so that swapping the
  // inputs yields bit-identical output on a symmetric rule table.
  for (std::size_t m = 0; m < kLabels; ++m) {
    const auto [dn, dd] = term(m, m);
    num += dn;
    den += dd;
    for (std::size_t n = m + 1; n < kLabels; ++n) {
      const auto [un, ud] = term(m, n);
      const auto [ln, ld] = term(n, m);
      num += un + ln;
      den += ud + ld;
    }
  }
  if (!(den > 0.0)) throw ContractViolation("no fuzzy rule fired");
  return num / den;
}

double discount(double alpha, double reliability) {
  check_unit(alpha, "likelihood");
  check_unit(reliability, "reliability");
  return reliability * alpha;
}

}  // namespace crowtrack
