// Copyright (c) 2026 The ecoauv Authors.
// All rights reserved.
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

#include "ecoauv/optim/interior_point.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include <Eigen/SparseCholesky>

namespace ecoauv::optim {

using Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max-iterations";
    case SolveStatus::LineSearchFailure: return "line-search-failure";
    case SolveStatus::Infeasible: return "infeasible-result";
    case SolveStatus::InvalidBounds: return "infeasible-bounds";
    case SolveStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Problem seen in scaled units with slack variables appended for inequality
// rows: w = [x / sx ; s], residual r(w) = 0 collects all rows.
class ScaledProblem {
 public:
  ScaledProblem(const NlpProblem& problem) : p_(problem) {
    n_ = p_.num_variables();
    m_ = p_.num_constraints();
    sx_ = p_.variable_scaling();
    sc_ = p_.constraint_scaling();
    VectorXd xl, xu, gl, gu;
    p_.variable_bounds(xl, xu);
    p_.constraint_bounds(gl, gu);
    valid_ = xl.size() == n_ && xu.size() == n_ && gl.size() == m_ && gu.size() == m_ &&
             sx_.size() == n_ && sc_.size() == m_ && (sx_.array() > 0).all() &&
             (sc_.array() > 0).all() && (xl.array() < xu.array()).all() &&
             (gl.array() <= gu.array()).all();
    if (!valid_) return;
    slack_of_row_.assign(m_, -1);
    for (int r = 0; r < m_; ++r) {
      if (gl[r] != gu[r]) {
        slack_of_row_[r] = static_cast<int>(ineq_rows_.size());
        ineq_rows_.push_back(r);
      }
    }
    nw_ = n_ + static_cast<int>(ineq_rows_.size());
    lo_.resize(nw_);
    hi_.resize(nw_);
    lo_.head(n_) = xl.cwiseQuotient(sx_);
    hi_.head(n_) = xu.cwiseQuotient(sx_);
    target_ = gl.cwiseQuotient(sc_);
    for (std::size_t k = 0; k < ineq_rows_.size(); ++k) {
      const int r = ineq_rows_[k];
      lo_[n_ + k] = gl[r] / sc_[r];
      hi_[n_ + k] = gu[r] / sc_[r];
    }
    gl_ = gl;
    gu_ = gu;
  }

  bool valid() const { return valid_; }
  int n() const { return n_; }
  int m() const { return m_; }
  int nw() const { return nw_; }
  const VectorXd& lo() const { return lo_; }
  const VectorXd& hi() const { return hi_; }
  const VectorXd& sx() const { return sx_; }
  const VectorXd& sc() const { return sc_; }

  VectorXd x_of(const VectorXd& w) const { return w.head(n_).cwiseProduct(sx_); }

  double objective(const VectorXd& w) const { return p_.objective(x_of(w)); }

  VectorXd gradient(const VectorXd& w) const {
    VectorXd g = VectorXd::Zero(nw_);
    g.head(n_) = p_.gradient(x_of(w)).cwiseProduct(sx_);
    return g;
  }

  VectorXd residual(const VectorXd& w) const {
    const VectorXd c = p_.constraints(x_of(w)).cwiseQuotient(sc_);
    VectorXd r(m_);
    for (int i = 0; i < m_; ++i) {
      const int k = slack_of_row_[i];
      r[i] = k < 0 ? c[i] - target_[i] : c[i] - w[n_ + k];
    }
    return r;
  }

  // Initial slack values from the constraint values at w.
  void init_slacks(VectorXd& w) const {
    const VectorXd c = p_.constraints(x_of(w)).cwiseQuotient(sc_);
    for (std::size_t k = 0; k < ineq_rows_.size(); ++k) w[n_ + k] = c[ineq_rows_[k]];
  }

  SparseMatrix jacobian(const VectorXd& w) const {
    Triplets raw;
    p_.jacobian(x_of(w), raw);
    Triplets t;
    t.reserve(raw.size() + ineq_rows_.size());
    for (const auto& e : raw) {
      t.emplace_back(e.row(), e.col(), e.value() * sx_[e.col()] / sc_[e.row()]);
    }
    for (std::size_t k = 0; k < ineq_rows_.size(); ++k) {
      t.emplace_back(ineq_rows_[k], n_ + static_cast<int>(k), -1.0);
    }
    SparseMatrix j(m_, nw_);
    j.setFromTriplets(t.begin(), t.end());
    return j;
  }

  Triplets hessian(const VectorXd& w, const VectorXd& lambda) const {
    Triplets raw;
    p_.hessian(x_of(w), 1.0, lambda.cwiseQuotient(sc_), raw);
    Triplets t;
    t.reserve(raw.size());
    for (const auto& e : raw) {
      int r = e.row(), c = e.col();
      if (r < c) std::swap(r, c);
      t.emplace_back(r, c, e.value() * sx_[r] * sx_[c]);
    }
    return t;
  }

  double violation(const VectorXd& w) const {
    const VectorXd c = p_.constraints(x_of(w));
    double worst = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double below = gl_[i] - c[i];
      const double above = c[i] - gu_[i];
      worst = std::max(worst, std::max(below, above) / sc_[i]);
    }
    return worst;
  }

  VectorXd unscale_lambda(const VectorXd& lambda) const { return lambda.cwiseQuotient(sc_); }
  VectorXd scale_lambda(const VectorXd& lambda) const { return lambda.cwiseProduct(sc_); }

 private:
  const NlpProblem& p_;
  int n_ = 0, m_ = 0, nw_ = 0;
  bool valid_ = false;
  VectorXd sx_, sc_, lo_, hi_, target_, gl_, gu_;
  std::vector<int> ineq_rows_;
  std::vector<int> slack_of_row_;
};

double barrier_value(double f, const VectorXd& w, const VectorXd& lo, const VectorXd& hi,
                     double mu) {
  double b = f;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (std::isfinite(lo[i])) b -= mu * std::log(w[i] - lo[i]);
    if (std::isfinite(hi[i])) b -= mu * std::log(hi[i] - w[i]);
  }
  return b;
}

double max_step(const VectorXd& w, const VectorXd& dw, const VectorXd& lo, const VectorXd& hi,
                double tau) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (dw[i] < 0.0 && std::isfinite(lo[i])) alpha = std::min(alpha, -tau * (w[i] - lo[i]) / dw[i]);
    if (dw[i] > 0.0 && std::isfinite(hi[i])) alpha = std::min(alpha, tau * (hi[i] - w[i]) / dw[i]);
  }
  return alpha;
}

double max_dual_step(const VectorXd& z, const VectorXd& dz, double tau) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (dz[i] < 0.0 && z[i] > 0.0) alpha = std::min(alpha, -tau * z[i] / dz[i]);
  }
  return alpha;
}

}  // namespace

NlpSolution solve_interior_point(const NlpProblem& problem, const VectorXd& x0,
                                 const InteriorPointSettings& st, const VectorXd& lambda0) {
  const auto started = std::chrono::steady_clock::now();
  NlpSolution out;
  const ScaledProblem sp(problem);
  if (!sp.valid() || x0.size() != problem.num_variables()) {
    out.status = SolveStatus::InvalidBounds;
    out.x = x0;
    return out;
  }
  const int n = sp.n(), m = sp.m(), nw = sp.nw();
  const VectorXd& lo = sp.lo();
  const VectorXd& hi = sp.hi();
  const bool warm = lambda0.size() == m;

  // Primal start pushed strictly inside the bounds.
  VectorXd w = VectorXd::Zero(nw);
  w.head(n) = x0.cwiseQuotient(sp.sx());
  sp.init_slacks(w);
  const double k1 = st.bound_push, k2 = st.bound_push;
  for (int i = 0; i < nw; ++i) {
    const bool hl = std::isfinite(lo[i]), hh = std::isfinite(hi[i]);
    if (hl && hh) {
      const double pl = std::min(k1 * std::max(1.0, std::abs(lo[i])), k2 * (hi[i] - lo[i]));
      const double pu = std::min(k1 * std::max(1.0, std::abs(hi[i])), k2 * (hi[i] - lo[i]));
      w[i] = std::clamp(w[i], lo[i] + pl, hi[i] - pu);
    } else if (hl) {
      w[i] = std::max(w[i], lo[i] + k1 * std::max(1.0, std::abs(lo[i])));
    } else if (hh) {
      w[i] = std::min(w[i], hi[i] - k1 * std::max(1.0, std::abs(hi[i])));
    }
  }

  double mu = st.mu_init;
  VectorXd lambda = warm ? sp.scale_lambda(lambda0) : VectorXd::Zero(m);
  VectorXd zl = VectorXd::Zero(nw), zu = VectorXd::Zero(nw);
  for (int i = 0; i < nw; ++i) {
    if (std::isfinite(lo[i])) zl[i] = warm ? mu / (w[i] - lo[i]) : 1.0;
    if (std::isfinite(hi[i])) zu[i] = warm ? mu / (hi[i] - w[i]) : 1.0;
  }

  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
  bool analyzed = false;
  double delta_w_last = 0.0;
  const double delta_c = 1e-9;
  double nu = 1e-6;
  int acceptable_count = 0;
  out.status = SolveStatus::MaxIterations;

  double f = sp.objective(w);
  VectorXd r = sp.residual(w);

  int iter = 0;
  for (; iter < st.max_iterations; ++iter) {
    const VectorXd grad = sp.gradient(w);
    const SparseMatrix jac = sp.jacobian(w);
    const VectorXd rd = grad + jac.transpose() * lambda - zl + zu;

    VectorXd gap_l = VectorXd::Zero(nw), gap_u = VectorXd::Zero(nw);
    for (int i = 0; i < nw; ++i) {
      if (std::isfinite(lo[i])) gap_l[i] = w[i] - lo[i];
      if (std::isfinite(hi[i])) gap_u[i] = hi[i] - w[i];
    }
    const double smax = 100.0;
    const double zsum = zl.lpNorm<1>() + zu.lpNorm<1>();
    const double s_d = std::max(smax, (lambda.lpNorm<1>() + zsum) / std::max(1, m + 2 * nw)) / smax;
    const double s_c = std::max(smax, zsum / std::max(1, 2 * nw)) / smax;
    const double primal_err = m > 0 ? r.lpNorm<Eigen::Infinity>() : 0.0;
    auto complementarity = [&](double target) {
      double e = 0.0;
      for (int i = 0; i < nw; ++i) {
        if (std::isfinite(lo[i])) e = std::max(e, std::abs(gap_l[i] * zl[i] - target));
        if (std::isfinite(hi[i])) e = std::max(e, std::abs(gap_u[i] * zu[i] - target));
      }
      return e;
    };
    const double dual_err = rd.lpNorm<Eigen::Infinity>() / s_d;
    const double e0 = std::max({dual_err, primal_err, complementarity(0.0) / s_c});
    if (st.print_level > 0) {
      std::printf("ipm %3d  f=% .8e  inf_pr=%.2e  inf_du=%.2e  mu=%.1e  dw=%.1e\n", iter, f,
                  primal_err, dual_err, mu, delta_w_last);
    }
    if (e0 <= st.tolerance && primal_err <= st.constraint_tolerance) {
      out.status = SolveStatus::Converged;
      break;
    }
    acceptable_count =
        (e0 <= st.acceptable_tolerance && primal_err <= st.constraint_tolerance) ? acceptable_count + 1 : 0;
    if (acceptable_count >= st.acceptable_iterations) {
      out.status = SolveStatus::Converged;
      break;
    }

    const double mu_min = st.tolerance / 10.0;
    while (mu > mu_min && std::max({dual_err, primal_err, complementarity(mu) / s_c}) <= 10.0 * mu) {
      mu = std::max(mu_min, std::min(0.2 * mu, std::pow(mu, 1.5)));
    }

    VectorXd sigma = VectorXd::Zero(nw);
    VectorXd grad_phi = grad;
    for (int i = 0; i < nw; ++i) {
      if (std::isfinite(lo[i])) {
        sigma[i] += zl[i] / gap_l[i];
        grad_phi[i] -= mu / gap_l[i];
      }
      if (std::isfinite(hi[i])) {
        sigma[i] += zu[i] / gap_u[i];
        grad_phi[i] += mu / gap_u[i];
      }
    }

    const Triplets hess = sp.hessian(w, lambda);
    auto factor = [&](double delta_w) {
      Triplets t = hess;
      t.reserve(hess.size() + nw + jac.nonZeros() + m);
      for (int i = 0; i < nw; ++i) t.emplace_back(i, i, sigma[i] + delta_w);
      for (int k = 0; k < jac.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(jac, k); it; ++it) {
          t.emplace_back(nw + static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
        }
      }
      for (int i = 0; i < m; ++i) t.emplace_back(nw + i, nw + i, -delta_c);
      SparseMatrix kkt(nw + m, nw + m);
      kkt.setFromTriplets(t.begin(), t.end());
      if (!analyzed) {
        ldlt.analyzePattern(kkt);
        analyzed = true;
      }
      ldlt.factorize(kkt);
      if (ldlt.info() != Eigen::Success) return false;
      const VectorXd d = ldlt.vectorD();
      int pos = 0, neg = 0;
      for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d[i] > 1e-300) ++pos;
        else if (d[i] < -1e-300) ++neg;
      }
      return pos == nw && neg == m;
    };

    double delta_w = delta_w_last == 0.0 ? 0.0 : std::max(1e-20, delta_w_last / 3.0);
    bool ok = factor(delta_w);
    if (!ok) {
      delta_w = delta_w_last == 0.0 ? 1e-4 : std::max(1e-20, delta_w_last / 3.0);
      bool first = true;
      while (!(ok = factor(delta_w))) {
        delta_w *= (delta_w_last == 0.0 && first) ? 100.0 : 8.0;
        first = false;
        if (delta_w > 1e40) break;
      }
    }
    if (!ok) {
      out.status = SolveStatus::NumericalFailure;
      break;
    }
    delta_w_last = delta_w;

    VectorXd rhs(nw + m);
    rhs.head(nw) = -(grad_phi + jac.transpose() * lambda);
    rhs.tail(m) = -r;
    const VectorXd sol = ldlt.solve(rhs);
    VectorXd dw = sol.head(nw);
    VectorXd dlambda = sol.tail(m);

    const double tau = std::max(0.99, 1.0 - mu);
    double alpha = max_step(w, dw, lo, hi, tau);

    nu = std::max(nu, 1.5 * (lambda + dlambda).lpNorm<Eigen::Infinity>() + 1e-8);
    const double phi0 = barrier_value(f, w, lo, hi, mu) + nu * r.lpNorm<1>();
    const double slope = grad_phi.dot(dw) - nu * r.lpNorm<1>();
    const double eta = 1e-8;

    bool accepted = false;
    VectorXd w_trial;
    double f_trial = f;
    VectorXd r_trial;
    bool first_trial = true;
    while (alpha > 1e-14) {
      w_trial = w + alpha * dw;
      f_trial = sp.objective(w_trial);
      r_trial = sp.residual(w_trial);
      const double phi = barrier_value(f_trial, w_trial, lo, hi, mu) + nu * r_trial.lpNorm<1>();
      if (std::isfinite(phi) && phi <= phi0 + eta * alpha * std::min(slope, 0.0)) {
        accepted = true;
        break;
      }
      if (first_trial && m > 0) {
        // Second-order correction against the Maratos effect.
        first_trial = false;
        VectorXd rhs_soc = rhs;
        rhs_soc.tail(m) = -(alpha * r + r_trial);
        const VectorXd soc = ldlt.solve(rhs_soc);
        const VectorXd dw_soc = soc.head(nw);
        const double alpha_soc = max_step(w, dw_soc, lo, hi, tau);
        const VectorXd w_soc = w + alpha_soc * dw_soc;
        const double f_soc = sp.objective(w_soc);
        const VectorXd r_soc = sp.residual(w_soc);
        const double phi_soc = barrier_value(f_soc, w_soc, lo, hi, mu) + nu * r_soc.lpNorm<1>();
        if (std::isfinite(phi_soc) && phi_soc <= phi0 + eta * alpha * std::min(slope, 0.0)) {
          w_trial = w_soc;
          f_trial = f_soc;
          r_trial = r_soc;
          dw = dw_soc;
          dlambda = soc.tail(m);
          alpha = alpha_soc;
          accepted = true;
          break;
        }
      }
      first_trial = false;
      alpha *= 0.5;
    }
    if (!accepted) {
      out.status = SolveStatus::LineSearchFailure;
      break;
    }

    VectorXd dzl = VectorXd::Zero(nw), dzu = VectorXd::Zero(nw);
    for (int i = 0; i < nw; ++i) {
      if (std::isfinite(lo[i])) dzl[i] = mu / gap_l[i] - zl[i] - (zl[i] / gap_l[i]) * dw[i];
      if (std::isfinite(hi[i])) dzu[i] = mu / gap_u[i] - zu[i] + (zu[i] / gap_u[i]) * dw[i];
    }
    const double alpha_z = std::min(max_dual_step(zl, dzl, tau), max_dual_step(zu, dzu, tau));

    w = w_trial;
    f = f_trial;
    r = r_trial;
    lambda += alpha * dlambda;
    zl += alpha_z * dzl;
    zu += alpha_z * dzu;
    const double kappa_sigma = 1e10;
    for (int i = 0; i < nw; ++i) {
      if (std::isfinite(lo[i])) {
        const double g = w[i] - lo[i];
        zl[i] = std::clamp(zl[i], mu / (kappa_sigma * g), kappa_sigma * mu / g);
      }
      if (std::isfinite(hi[i])) {
        const double g = hi[i] - w[i];
        zu[i] = std::clamp(zu[i], mu / (kappa_sigma * g), kappa_sigma * mu / g);
      }
    }
  }

  out.x = sp.x_of(w);
  out.lambda = sp.unscale_lambda(lambda);
  out.objective = problem.objective(out.x);
  out.constraint_violation = sp.violation(w);
  out.iterations = iter;
  if (out.status == SolveStatus::MaxIterations && out.constraint_violation > st.constraint_tolerance) {
    out.status = SolveStatus::Infeasible;
  }
  out.converged = out.status == SolveStatus::Converged;
  out.solve_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

}  // namespace ecoauv::optim
