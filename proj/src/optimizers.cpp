// Copyright 2026 The mmvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mmvqe/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "mmvqe/rng.hpp"

namespace mmvqe {
namespace {

struct BudgetExhausted {};

// Wraps the objective: records every evaluation and tracks the best point.
class Recorder {
 public:
  Recorder(const Objective& f, int cap) : f_(f), cap_(cap) {}

  double operator()(std::span<const double> theta) {
    if (cap_ > 0 && run_.evaluations >= cap_) throw BudgetExhausted{};
    const double v = f_(theta);
    if (!std::isfinite(v)) {
      throw NonFiniteObjective("objective returned a non-finite value at evaluation " +
                               std::to_string(run_.evaluations));
    }
    run_.history.push_back({run_.evaluations, hash_theta(theta), v});
    if (run_.evaluations == 0 || v < run_.best_value) {
      run_.best_value = v;
      run_.best_theta.assign(theta.begin(), theta.end());
    }
    ++run_.evaluations;
    return v;
  }

  OptimizerRun finish(int iterations, std::string reason) {
    run_.iterations = iterations;
    run_.stop_reason = std::move(reason);
    return std::move(run_);
  }

  int evaluations() const { return run_.evaluations; }

 private:
  const Objective& f_;
  int cap_;
  OptimizerRun run_;
};

void require_dimension(const std::vector<double>& theta0) {
  if (theta0.empty()) throw std::invalid_argument("optimizer needs at least one parameter");
}

using Matrix = std::vector<std::vector<double>>;

// Replaces simplex edge `col` with dx and updates the inverse accordingly.
void replace_edge(Matrix& sim, Matrix& simi, std::size_t col,
                  const std::vector<double>& dx) {
  const std::size_t n = dx.size();
  double temp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sim[i][col] = dx[i];
    temp += simi[col][i] * dx[i];
  }
  for (std::size_t i = 0; i < n; ++i) simi[col][i] /= temp;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == col) continue;
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += simi[j][i] * dx[i];
    for (std::size_t i = 0; i < n; ++i) simi[j][i] -= t * simi[col][i];
  }
}

}  // namespace

std::string optimizer_name(OptimizerKind k) {
  switch (k) {
    case OptimizerKind::SPSA: return "spsa";
    case OptimizerKind::COBYLA: return "cobyla";
    case OptimizerKind::NelderMead: return "nelder-mead";
    case OptimizerKind::Adam: return "adam";
  }
  return "?";
}

OptimizerKind parse_optimizer(std::string_view name) {
  for (OptimizerKind k : {OptimizerKind::SPSA, OptimizerKind::COBYLA,
                          OptimizerKind::NelderMead, OptimizerKind::Adam}) {
    if (optimizer_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown optimizer: " + std::string(name));
}

int OptimizerConfig::default_iterations(OptimizerKind k) {
  switch (k) {
    case OptimizerKind::SPSA: return 300;
    case OptimizerKind::COBYLA: return 2000;
    case OptimizerKind::NelderMead: return 2000;
    case OptimizerKind::Adam: return 200;
  }
  return 1;
}

int OptimizerConfig::iterations() const {
  return max_iterations > 0 ? max_iterations : default_iterations(kind);
}

void OptimizerConfig::validate() const {
  if (max_iterations < 0) throw std::invalid_argument("max_iterations must be positive");
  if (!(spsa.c > 0.0) || !(spsa.target_step > 0.0) || spsa.calibration_samples < 1) {
    throw std::invalid_argument("invalid SPSA settings");
  }
  if (!(cobyla.rho_begin > 0.0) || !(cobyla.rho_end > 0.0) ||
      cobyla.rho_end > cobyla.rho_begin) {
    throw std::invalid_argument("COBYLA needs 0 < rho_end <= rho_begin");
  }
  if (!(adam.lr > 0.0) || !(adam.fd_step > 0.0) || adam.beta1 < 0.0 ||
      adam.beta1 >= 1.0 || adam.beta2 < 0.0 || adam.beta2 >= 1.0) {
    throw std::invalid_argument("invalid Adam settings");
  }
}

std::uint64_t hash_theta(std::span<const double> theta) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (double x : theta) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &x, sizeof x);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001B3ULL;
    }
  }
  return h;
}

OptimizerRun spsa_minimize(const Objective& f, std::vector<double> theta,
                           const OptimizerConfig& cfg) {
  cfg.validate();
  require_dimension(theta);
  const SpsaSettings& s = cfg.spsa;
  const std::size_t n = theta.size();
  const int iters = cfg.iterations();
  const double big_a = s.stability_fraction * iters;
  Recorder rec(f, 0);
  SplitMix64 rng(derive_key({cfg.seed, 0x53505341ULL}));

  std::vector<int> delta(n);
  std::vector<double> plus(n), minus(n);
  auto draw = [&] {
    for (auto& d : delta) d = rng.sign();
    if (s.on_perturbation) s.on_perturbation(delta);
  };
  auto probe = [&](double ck) {
    for (std::size_t i = 0; i < n; ++i) {
      plus[i] = theta[i] + ck * delta[i];
      minus[i] = theta[i] - ck * delta[i];
    }
    return rec(plus) - rec(minus);
  };

  double a = 0.0;
  if (s.a) {
    a = *s.a;
  } else {
    double mag = 0.0;
    for (int k = 0; k < s.calibration_samples; ++k) {
      draw();
      mag += std::abs(probe(s.c)) / (2.0 * s.c);
    }
    mag /= s.calibration_samples;
    a = s.target_step * std::pow(big_a + 1.0, s.alpha) / (mag > 0.0 ? mag : 1.0);
  }

  for (int k = 0; k < iters; ++k) {
    const double ak = a / std::pow(k + 1.0 + big_a, s.alpha);
    const double ck = s.c / std::pow(k + 1.0, s.gamma);
    draw();
    const double g = probe(ck) / (2.0 * ck);
    for (std::size_t i = 0; i < n; ++i) theta[i] -= ak * g * delta[i];
  }
  return rec.finish(iters, "iteration budget reached");
}

OptimizerRun cobyla_minimize(const Objective& f, std::vector<double> theta,
                             const OptimizerConfig& cfg) {
  cfg.validate();
  require_dimension(theta);
  constexpr double kAlpha = 0.25, kBeta = 2.1, kGamma = 0.5, kDelta = 1.1;
  const std::size_t n = theta.size();
  const double rho_end = cfg.cobyla.rho_end;
  double rho = cfg.cobyla.rho_begin;
  Recorder rec(f, cfg.iterations());
  int iterations = 0;
  std::string reason = "trust radius reached rho_end";

  // xopt is the best vertex; column j of sim is the offset of vertex j.
  std::vector<double> xopt = theta, x(n), dx(n), g(n), vsig(n), veta(n), sigbar(n);
  std::vector<double> fv(n, 0.0);
  Matrix sim(n, std::vector<double>(n, 0.0)), simi = sim;
  for (std::size_t i = 0; i < n; ++i) {
    sim[i][i] = rho;
    simi[i][i] = 1.0 / rho;
  }

  try {
    double fopt = rec(xopt);
    for (std::size_t j = 0; j < n; ++j) {
      x = xopt;
      x[j] += rho;
      const double fj = rec(x);
      if (fj < fopt) {
        fv[j] = fopt;
        fopt = fj;
        xopt[j] = x[j];
        for (std::size_t k = 0; k <= j; ++k) {
          sim[j][k] = -rho;
          double t = 0.0;
          for (std::size_t i = k; i <= j; ++i) t -= simi[i][k];
          simi[j][k] = t;
        }
      } else {
        fv[j] = fj;
      }
    }

    bool trust_phase = true;  // false right after a failed acceptability test
    for (;;) {
      ++iterations;
      // Move the best vertex into the pole position.
      std::size_t nbest = n;
      double phimin = fopt;
      for (std::size_t j = 0; j < n; ++j) {
        if (fv[j] < phimin) {
          nbest = j;
          phimin = fv[j];
        }
      }
      if (nbest < n) {
        std::swap(fv[nbest], fopt);
        for (std::size_t i = 0; i < n; ++i) {
          const double t = sim[i][nbest];
          sim[i][nbest] = 0.0;
          xopt[i] += t;
          double ta = 0.0;
          for (std::size_t k = 0; k < n; ++k) {
            sim[i][k] -= t;
            ta -= simi[k][i];
          }
          simi[nbest][i] = ta;
        }
      }

      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          double t = i == j ? -1.0 : 0.0;
          for (std::size_t k = 0; k < n; ++k) t += simi[i][k] * sim[k][j];
          err = std::max(err, std::abs(t));
        }
      }
      if (err > 0.1) {
        reason = "rounding errors in the simplex inverse";
        break;
      }

      // Gradient of the linear interpolant.
      for (std::size_t i = 0; i < n; ++i) {
        double t = 0.0;
        for (std::size_t j = 0; j < n; ++j) t += (fv[j] - fopt) * simi[j][i];
        g[i] = t;
      }

      bool acceptable = true;
      const double parsig = kAlpha * rho, pareta = kBeta * rho;
      for (std::size_t j = 0; j < n; ++j) {
        double wsig = 0.0, weta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          wsig += simi[j][i] * simi[j][i];
          weta += sim[i][j] * sim[i][j];
        }
        vsig[j] = 1.0 / std::sqrt(wsig);
        veta[j] = std::sqrt(weta);
        if (vsig[j] < parsig || veta[j] > pareta) acceptable = false;
      }

      if (!trust_phase && !acceptable) {
        // Geometry step: replace the vertex that spoils the simplex.
        std::size_t jdrop = n;
        double t = pareta;
        for (std::size_t j = 0; j < n; ++j) {
          if (veta[j] > t) {
            jdrop = j;
            t = veta[j];
          }
        }
        if (jdrop == n) {
          for (std::size_t j = 0; j < n; ++j) {
            if (vsig[j] < t) {
              jdrop = j;
              t = vsig[j];
            }
          }
        }
        const double scale = kGamma * rho * vsig[jdrop];
        double slope = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          dx[i] = scale * simi[jdrop][i];
          slope -= g[i] * dx[i];
        }
        if (0.0 > slope + slope) {
          for (auto& d : dx) d = -d;
        }
        replace_edge(sim, simi, jdrop, dx);
        for (std::size_t i = 0; i < n; ++i) x[i] = xopt[i] + dx[i];
        fv[jdrop] = rec(x);
        trust_phase = true;
        continue;
      }

      // Trust-region step: steepest descent on the linear model to radius rho.
      trust_phase = true;
      const double gnorm = std::sqrt(std::inner_product(g.begin(), g.end(), g.begin(), 0.0));
      bool reduce = false;
      if (gnorm == 0.0) {
        reduce = true;
      } else {
        for (std::size_t i = 0; i < n; ++i) dx[i] = -rho * g[i] / gnorm;
        double prerem = rho * gnorm;
        for (std::size_t i = 0; i < n; ++i) x[i] = xopt[i] + dx[i];
        const double fnew = rec(x);
        double trured = fopt - fnew;
        if (fnew == fopt) prerem = trured = 0.0;

        double ratio = trured <= 0.0 ? 1.0 : 0.0;
        std::size_t jdrop = n;
        for (std::size_t j = 0; j < n; ++j) {
          double t = 0.0;
          for (std::size_t i = 0; i < n; ++i) t += simi[j][i] * dx[i];
          t = std::abs(t);
          if (t > ratio) {
            jdrop = j;
            ratio = t;
          }
          sigbar[j] = t * vsig[j];
        }
        double edgmax = kDelta * rho;
        std::size_t l = n;
        for (std::size_t j = 0; j < n; ++j) {
          if (sigbar[j] >= parsig || sigbar[j] >= vsig[j]) {
            double t = veta[j];
            if (trured > 0.0) {
              t = 0.0;
              for (std::size_t i = 0; i < n; ++i) t += (dx[i] - sim[i][j]) * (dx[i] - sim[i][j]);
              t = std::sqrt(t);
            }
            if (t > edgmax) {
              l = j;
              edgmax = t;
            }
          }
        }
        if (l < n) jdrop = l;
        if (jdrop == n) {
          reduce = true;
        } else {
          replace_edge(sim, simi, jdrop, dx);
          fv[jdrop] = fnew;
          if (trured > 0.0 && trured >= 0.1 * prerem) continue;
          reduce = true;
        }
      }

      if (reduce) {
        if (!acceptable) {
          trust_phase = false;
          continue;
        }
        if (rho > rho_end) {
          rho *= 0.5;
          if (rho <= 1.5 * rho_end) rho = rho_end;
          continue;
        }
        break;
      }
    }
  } catch (const BudgetExhausted&) {
    reason = "evaluation cap reached";
  }
  return rec.finish(iterations, reason);
}

OptimizerRun nelder_mead_minimize(const Objective& f, std::vector<double> theta,
                                  const OptimizerConfig& cfg) {
  cfg.validate();
  require_dimension(theta);
  constexpr double kRho = 1.0, kChi = 2.0, kPsi = 0.5, kSigma = 0.5;
  const NelderMeadSettings& s = cfg.nelder_mead;
  const std::size_t n = theta.size();
  Recorder rec(f, cfg.iterations());
  int iterations = 0;
  std::string reason = "evaluation cap reached";

  std::vector<std::vector<double>> pts(n + 1, theta);
  std::vector<double> vals(n + 1);
  std::vector<std::size_t> order(n + 1);
  try {
    for (std::size_t k = 0; k < n; ++k) {
      auto& p = pts[k + 1];
      p[k] = p[k] != 0.0 ? (1.0 + s.nonzero_step) * p[k] : s.zero_step;
    }
    for (std::size_t k = 0; k <= n; ++k) vals[k] = rec(pts[k]);

    std::vector<double> c(n), xr(n), xe(n), xc(n);
    auto point = [&](std::vector<double>& out, double wc, const std::vector<double>& w,
                     double ww) {
      for (std::size_t i = 0; i < n; ++i) out[i] = wc * c[i] + ww * w[i];
    };
    for (;;) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
      {
        std::vector<std::vector<double>> p2;
        std::vector<double> v2;
        for (std::size_t k : order) {
          p2.push_back(pts[k]);
          v2.push_back(vals[k]);
        }
        pts.swap(p2);
        vals.swap(v2);
      }
      double xspread = 0.0, fspread = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        fspread = std::max(fspread, std::abs(vals[k] - vals[0]));
        for (std::size_t i = 0; i < n; ++i) {
          xspread = std::max(xspread, std::abs(pts[k][i] - pts[0][i]));
        }
      }
      if (xspread <= s.xtol || fspread <= s.ftol) {
        reason = xspread <= s.xtol ? "simplex diameter below xtol" : "value spread below ftol";
        break;
      }
      ++iterations;

      std::fill(c.begin(), c.end(), 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) c[i] += pts[k][i] / static_cast<double>(n);
      }
      const auto& worst = pts[n];
      point(xr, 1.0 + kRho, worst, -kRho);
      const double fr = rec(xr);
      bool shrink = false;
      if (fr < vals[0]) {
        point(xe, 1.0 + kRho * kChi, worst, -kRho * kChi);
        const double fe = rec(xe);
        if (fe < fr) {
          pts[n] = xe;
          vals[n] = fe;
        } else {
          pts[n] = xr;
          vals[n] = fr;
        }
      } else if (fr < vals[n - 1]) {
        pts[n] = xr;
        vals[n] = fr;
      } else if (fr < vals[n]) {
        point(xc, 1.0 + kPsi * kRho, worst, -kPsi * kRho);
        const double fc = rec(xc);
        if (fc <= fr) {
          pts[n] = xc;
          vals[n] = fc;
        } else {
          shrink = true;
        }
      } else {
        point(xc, 1.0 - kPsi, worst, kPsi);
        const double fc = rec(xc);
        if (fc < vals[n]) {
          pts[n] = xc;
          vals[n] = fc;
        } else {
          shrink = true;
        }
      }
      if (shrink) {
        for (std::size_t k = 1; k <= n; ++k) {
          for (std::size_t i = 0; i < n; ++i) {
            pts[k][i] = pts[0][i] + kSigma * (pts[k][i] - pts[0][i]);
          }
          vals[k] = rec(pts[k]);
        }
      }
    }
  } catch (const BudgetExhausted&) {
    reason = "evaluation cap reached";
  }
  return rec.finish(iterations, reason);
}

void adam_step(AdamState& st, std::vector<double>& theta, std::span<const double> grad,
               const AdamSettings& s) {
  const std::size_t n = theta.size();
  if (grad.size() != n) throw std::invalid_argument("adam_step: gradient size mismatch");
  if (st.m.size() != n) {
    st.m.assign(n, 0.0);
    st.v.assign(n, 0.0);
  }
  st.m_hat.resize(n);
  ++st.t;
  const double c1 = 1.0 - std::pow(s.beta1, st.t);
  const double c2 = 1.0 - std::pow(s.beta2, st.t);
  for (std::size_t i = 0; i < n; ++i) {
    st.m[i] = s.beta1 * st.m[i] + (1.0 - s.beta1) * grad[i];
    st.v[i] = s.beta2 * st.v[i] + (1.0 - s.beta2) * grad[i] * grad[i];
    st.m_hat[i] = st.m[i] / c1;
    const double v_hat = st.v[i] / c2;
    theta[i] -= s.lr * st.m_hat[i] / (std::sqrt(v_hat) + s.eps);
  }
}

OptimizerRun adam_minimize(const Objective& f, std::vector<double> theta,
                           const OptimizerConfig& cfg) {
  cfg.validate();
  require_dimension(theta);
  const AdamSettings& s = cfg.adam;
  const std::size_t n = theta.size();
  const int steps = cfg.iterations();
  Recorder rec(f, 0);
  AdamState st;
  std::vector<double> grad(n), probe(n);
  for (int k = 0; k < steps; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      probe = theta;
      probe[i] = theta[i] + s.fd_step;
      const double fp = rec(probe);
      probe[i] = theta[i] - s.fd_step;
      const double fm = rec(probe);
      grad[i] = (fp - fm) / (2.0 * s.fd_step);
    }
    adam_step(st, theta, grad, s);
  }
  return rec.finish(steps, "step budget reached");
}

OptimizerRun minimize(const Objective& f, std::vector<double> theta0,
                      const OptimizerConfig& cfg) {
  switch (cfg.kind) {
    case OptimizerKind::SPSA: return spsa_minimize(f, std::move(theta0), cfg);
    case OptimizerKind::COBYLA: return cobyla_minimize(f, std::move(theta0), cfg);
    case OptimizerKind::NelderMead: return nelder_mead_minimize(f, std::move(theta0), cfg);
    case OptimizerKind::Adam: return adam_minimize(f, std::move(theta0), cfg);
  }
  throw std::invalid_argument("unknown optimizer kind");
}

}  // namespace mmvqe
