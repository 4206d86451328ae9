// Copyright 2026 The entsrc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entsrc/modelsel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "entsrc/error.hpp"

namespace entsrc {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kFeasibilitySlack = 1e-12;

double xlogy(double x, double y) {
  if (x == 0.0) return 0.0;
  if (y <= 0.0) return kNegInf;
  return x * std::log(y);
}

bool is_diagonal(Setting s) { return s.a == s.b; }

// Counts of the correlated outcomes (++ or --) and anti-correlated outcomes
// (+- or -+) on one diagonal setting.
struct AxisCounts {
  double same = 0.0;
  double opposite = 0.0;

  double total() const { return same + opposite; }
  // n_same log(s/2) + n_opp log((1-s)/2) with s the predicted P(same).
  double log_l(double s) const { return xlogy(same, 0.5 * s) + xlogy(opposite, 0.5 * (1.0 - s)); }
  // d/ds of the s-dependent part.
  double slope(double s) const {
    double d = 0.0;
    if (same > 0.0) d += same / s;
    if (opposite > 0.0) d -= opposite / (1.0 - s);
    return d;
  }
};

// Sufficient statistics of the Bell-diagonal and two-parameter models: the
// three diagonal settings plus the fixed contribution of every other
// setting, whose predictions are always 1/4.
struct DiagonalStats {
  std::array<AxisCounts, 3> axis;  // XX, YY, ZZ
  double uniform_log_l = 0.0;
};

DiagonalStats diagonal_stats(const FrequencyTable& freq) {
  DiagonalStats st;
  for (int a = 1; a <= 3; ++a) {
    const SettingFrequencies* row = freq.find({a, a});
    if (row == nullptr) {
      throw Error(ErrorCode::kMissingSetting, "correlation data for setting (" + std::to_string(a) + "," +
                                                  std::to_string(a) + ") is missing");
    }
    AxisCounts& c = st.axis[static_cast<std::size_t>(a - 1)];
    c.same = row->shots * (row->f[0] + row->f[3]);
    c.opposite = row->shots * (row->f[1] + row->f[2]);
  }
  for (const SettingFrequencies& row : freq.rows()) {
    if (is_diagonal(row.setting)) continue;
    for (double f : row.f) st.uniform_log_l += xlogy(row.shots * f, 0.25);
  }
  return st;
}

// --- Bell-diagonal model -----------------------------------------------------
//
// With s = (P_XX(same), P_YY(same), P_ZZ(same)) the model is the tetrahedron
// s = (p1+p3, p2+p3, p1+p2), whose vertices are the Bell projectors.

using Corr = std::array<double, 3>;

constexpr std::array<Corr, 4> kBellVertices{{{1.0, 0.0, 1.0}, {0.0, 1.0, 1.0}, {1.0, 1.0, 0.0}, {0.0, 0.0, 0.0}}};

std::array<double, 4> weights_from_corr(const Corr& s) {
  return {0.5 * (s[0] - s[1] + s[2]), 0.5 * (-s[0] + s[1] + s[2]), 0.5 * (s[0] + s[1] - s[2]),
          1.0 - 0.5 * (s[0] + s[1] + s[2])};
}

bool in_tetrahedron(const Corr& s) {
  const auto w = weights_from_corr(s);
  return std::all_of(w.begin(), w.end(), [](double x) { return x >= -kFeasibilitySlack; });
}

double bell_log_l(const DiagonalStats& st, const Corr& s) {
  double ll = st.uniform_log_l;
  for (std::size_t i = 0; i < 3; ++i) ll += st.axis[i].log_l(s[i]);
  return ll;
}

// argmax over s in [0,1] of c.log_l(s) - mu * s.
double tilted_argmax(const AxisCounts& c, double mu) {
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (c.slope(mid) - mu > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Stationary point of the objective on the plane normal . s = offset, found
// by bisection on the Lagrange multiplier (normal . s(lambda) is monotone).
Corr facet_maximizer(const DiagonalStats& st, const Corr& normal, double offset) {
  const auto point_at = [&](double lambda) {
    Corr s{};
    for (std::size_t i = 0; i < 3; ++i) s[i] = tilted_argmax(st.axis[i], lambda * normal[i]);
    return s;
  };
  const auto excess = [&](const Corr& s) { return normal[0] * s[0] + normal[1] * s[1] + normal[2] * s[2] - offset; };
  double lo = -1e15;
  double hi = 1e15;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (excess(point_at(mid)) > 0.0 ? lo : hi) = mid;
  }
  return point_at(0.5 * (lo + hi));
}

Corr edge_maximizer(const DiagonalStats& st, const Corr& from, const Corr& to) {
  Corr dir{};
  for (std::size_t i = 0; i < 3; ++i) dir[i] = to[i] - from[i];
  const auto at = [&](double t) {
    Corr s{};
    for (std::size_t i = 0; i < 3; ++i) s[i] = from[i] + t * dir[i];
    return s;
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const Corr s = at(mid);
    double d = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      if (dir[i] != 0.0) d += dir[i] * st.axis[i].slope(s[i]);
    }
    (d > 0.0 ? lo : hi) = mid;
  }
  return at(0.5 * (lo + hi));
}

Corr constrained_bell_maximizer(const DiagonalStats& st) {
  std::vector<Corr> candidates(kBellVertices.begin(), kBellVertices.end());
  // Facet p_j = 0 written as normal . s = offset.
  const std::array<std::pair<Corr, double>, 4> facets{{{{1.0, -1.0, 1.0}, 0.0},
                                                       {{-1.0, 1.0, 1.0}, 0.0},
                                                       {{1.0, 1.0, -1.0}, 0.0},
                                                       {{1.0, 1.0, 1.0}, 2.0}}};
  for (const auto& [normal, offset] : facets) {
    const Corr s = facet_maximizer(st, normal, offset);
    if (in_tetrahedron(s)) candidates.push_back(s);
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) candidates.push_back(edge_maximizer(st, kBellVertices[i], kBellVertices[j]));
  }
  Corr best = candidates.front();
  double best_ll = bell_log_l(st, best);
  for (const Corr& s : candidates) {
    const double ll = bell_log_l(st, s);
    if (ll > best_ll) {
      best_ll = ll;
      best = s;
    }
  }
  return best;
}

BellDiagonalPoint simplex_point(const Corr& s) {
  auto w = weights_from_corr(s);
  double sum = 0.0;
  for (double& x : w) {
    x = std::max(0.0, x);
    sum += x;
  }
  for (double& x : w) x /= sum;
  return {w};
}

// --- Two-parameter model -----------------------------------------------------
//
// ZZ fixes P(same) = (1+p)/2. XX "same" and YY "opposite" outcomes share the
// per-outcome probability (1+a)/4, a = p c(sigma), the complementary ones
// (1-a)/4. Feasible region: 0 <= a <= p <= 1.

struct TwoParamStats {
  AxisCounts z;
  double plus = 0.0;   // XX same + YY opposite
  double minus = 0.0;  // XX opposite + YY same
  double uniform_log_l = 0.0;
};

double two_param_log_l(const TwoParamStats& st, double p, double a) {
  return st.uniform_log_l + st.z.log_l(0.5 * (1.0 + p)) + xlogy(st.plus, 0.25 * (1.0 + a)) +
         xlogy(st.minus, 0.25 * (1.0 - a));
}

double balance(double plus, double minus) { return (plus - minus) / (plus + minus); }

}  // namespace

std::string_view model_label(Model m) {
  switch (m) {
    case Model::kFull: return "full";
    case Model::kBellDiagonal: return "bell-diag";
    case Model::kTwoParam: return "two-param";
  }
  return "unknown";
}

int parameter_count(Model m) {
  switch (m) {
    case Model::kFull: return kFullModelParams;
    case Model::kBellDiagonal: return kBellDiagonalParams;
    case Model::kTwoParam: return kTwoParamParams;
  }
  return 0;
}

ModelScore score(Model model, double log_l, int k, double n_m) {
  if (!(n_m >= 1.0)) throw Error(ErrorCode::kInvalidCount, "number of data must be >= 1");
  if (k < 0) throw Error(ErrorCode::kInvalidCount, "parameter count must be >= 0");
  return {model, log_l, k, n_m, log_l - k, log_l - k * std::log(n_m) / 2.0};
}

double log_l_full_bound(const FrequencyTable& freq) {
  double ll = 0.0;
  for (const SettingFrequencies& row : freq.rows()) {
    for (double f : row.f) ll += xlogy(row.shots * f, f);
  }
  return ll;
}

std::array<double, 4> bell_diagonal_prediction(const BellDiagonalPoint& pt, Setting s) {
  if (!is_diagonal(s)) return {0.25, 0.25, 0.25, 0.25};
  const auto& w = pt.weights;
  double same = 0.0;
  switch (s.a) {
    case 1: same = w[0] + w[2]; break;
    case 2: same = w[1] + w[2]; break;
    default: same = w[0] + w[1]; break;
  }
  return {0.5 * same, 0.5 * (1.0 - same), 0.5 * (1.0 - same), 0.5 * same};
}

BellDiagonalFit fit_bell_diagonal(const FrequencyTable& freq) {
  const DiagonalStats st = diagonal_stats(freq);
  Corr s{};
  for (std::size_t i = 0; i < 3; ++i) s[i] = st.axis[i].same / st.axis[i].total();
  BellDiagonalFit fit;
  fit.closed_form = in_tetrahedron(s);
  if (!fit.closed_form) s = constrained_bell_maximizer(st);
  fit.point = simplex_point(s);
  fit.log_l = bell_log_l(st, s);
  return fit;
}

double log_l_bell_diagonal(const FrequencyTable& freq) { return fit_bell_diagonal(freq).log_l; }

TwoParamFit fit_two_param(const FrequencyTable& freq) {
  const DiagonalStats diag = diagonal_stats(freq);
  TwoParamStats st;
  st.z = diag.axis[2];
  st.plus = diag.axis[0].same + diag.axis[1].opposite;
  st.minus = diag.axis[0].opposite + diag.axis[1].same;
  st.uniform_log_l = diag.uniform_log_l;

  double p = balance(st.z.same, st.z.opposite);
  double a = balance(st.plus, st.minus);
  TwoParamFit fit;
  fit.closed_form = a >= 0.0 && a <= p;
  if (!fit.closed_form) {
    // Optimum lies on an edge of the triangle 0 <= a <= p <= 1.
    struct Candidate {
      double p, a;
    };
    const double joint = std::clamp(balance(st.z.same + st.plus, st.z.opposite + st.minus), 0.0, 1.0);
    const std::array<Candidate, 3> edges{{{std::clamp(p, 0.0, 1.0), 0.0},  // a = 0
                                          {joint, joint},                   // a = p
                                          {1.0, std::clamp(a, 0.0, 1.0)}}};  // p = 1
    p = edges[0].p;
    a = edges[0].a;
    double best = two_param_log_l(st, p, a);
    for (const Candidate& c : edges) {
      const double ll = two_param_log_l(st, c.p, c.a);
      if (ll > best) {
        best = ll;
        p = c.p;
        a = c.a;
      }
    }
  }
  fit.p = p;
  fit.coherence_product = a;
  fit.coherence = p > 0.0 ? std::clamp(a / p, 0.0, 1.0) : 1.0;
  fit.sigma = sigma_for_coherence(fit.coherence);
  fit.log_l = two_param_log_l(st, p, a);
  return fit;
}

double log_l_two_param(const FrequencyTable& freq) { return fit_two_param(freq).log_l; }

ComparisonReport compare(const FrequencyTable& freq) {
  for (Setting s : kDefaultSettings) {
    if (freq.find(s) == nullptr) {
      throw Error(ErrorCode::kMissingSetting,
                  "setting (" + std::to_string(s.a) + "," + std::to_string(s.b) + ") is missing from the record");
    }
  }
  const double n_m = freq.total_shots();
  ComparisonReport r;
  r.bell_diagonal_fit = fit_bell_diagonal(freq);
  r.two_param_fit = fit_two_param(freq);
  r.full = score(Model::kFull, log_l_full_bound(freq), kFullModelParams, n_m);
  r.bell_diagonal = score(Model::kBellDiagonal, r.bell_diagonal_fit.log_l, kBellDiagonalParams, n_m);
  r.two_param = score(Model::kTwoParam, r.two_param_fit.log_l, kTwoParamParams, n_m);
  r.delta_omega = r.two_param.omega_aic - r.full.omega_aic;
  r.delta_omega_bd = r.bell_diagonal.omega_aic - r.full.omega_aic;
  r.delta_omega_bic = r.two_param.omega_bic - r.full.omega_bic;
  r.delta_omega_bd_bic = r.bell_diagonal.omega_bic - r.full.omega_bic;

  // Ordered by increasing parameter count, so ">" keeps the simpler model on ties.
  const std::array<const ModelScore*, 3> by_size{&r.two_param, &r.bell_diagonal, &r.full};
  const ModelScore* best_aic = by_size[0];
  const ModelScore* best_bic = by_size[0];
  for (const ModelScore* s : by_size) {
    if (s->omega_aic > best_aic->omega_aic) best_aic = s;
    if (s->omega_bic > best_bic->omega_bic) best_bic = s;
  }
  r.winner_aic = best_aic->model;
  r.winner_bic = best_bic->model;
  return r;
}

ComparisonReport compare(const MeasurementRecord& rec) { return compare(frequencies(rec)); }

}  // namespace entsrc
