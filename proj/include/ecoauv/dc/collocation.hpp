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

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "ecoauv/error.hpp"
#include "ecoauv/optim/nlp_problem.hpp"
#include "ecoauv/scalar.hpp"

namespace ecoauv::dc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Terminal set {(x_N[ix] - cx)^2 + (x_N[iy] - cy)^2 <= radius^2}.
struct TerminalDisc {
  int ix = 0;
  int iy = 1;
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.05;
};

/// Problem data of a trapezoidal transcription over a model with NX states
/// and NU controls.
template <int NX, int NU>
struct CollocationSpec {
  using State = Eigen::Matrix<double, NX, 1>;
  using Control = Eigen::Matrix<double, NU, 1>;

  int intervals = 100;
  State initial_state = State::Zero();
  State state_lower = State::Constant(-kInfinity);
  State state_upper = State::Constant(kInfinity);
  Control control_lower = Control::Constant(-kInfinity);
  Control control_upper = Control::Constant(kInfinity);

  bool free_final_time = true;
  double final_time = 1.0;  // fixed horizon when !free_final_time
  double time_lower = 1e-2;
  double time_upper = 1e3;

  std::vector<std::pair<int, double>> terminal_equalities;
  std::optional<TerminalDisc> terminal_disc;

  State state_scale = State::Ones();
  Control control_scale = Control::Ones();
  double time_scale = 1.0;
};

/// Trapezoidal direct collocation of
///   min int_0^T L(u) dt   s.t.  x' = f(x, u), x(0) = x0, boxes, terminal set.
///
/// Decision vector: [x_0 u_0 x_1 u_1 ... x_N u_N (T)], T present only for a
/// free final time. Rows: initial-state equalities, N * NX defects
///   x_{k+1} - x_k - h/2 (f_k + f_{k+1}) = 0,  h = T / N,
/// terminal equalities, then the optional terminal disc.
///
/// Model requirements:
///   static constexpr int kStates, kControls;
///   template <class S> Matrix<S, NX, 1> rates(Matrix<S, NX, 1>, Matrix<S, NU, 1>) const;
///   double stage_cost(Control) const;                 // L(u), separable in u
///   Control stage_cost_gradient(Control) const;
///   Control stage_cost_hessian_diagonal(Control) const;
template <typename Model>
class TrapezoidCollocation : public optim::NlpProblem {
 public:
  static constexpr int NX = Model::kStates;
  static constexpr int NU = Model::kControls;
  static constexpr int NZ = NX + NU;
  using Spec = CollocationSpec<NX, NU>;
  using State = typename Spec::State;
  using Control = typename Spec::Control;
  using NodeVector = Eigen::Matrix<double, NZ, 1>;
  using NodeJacobian = Eigen::Matrix<double, NX, NZ>;
  using NodeHessian = Eigen::Matrix<double, NZ, NZ>;

  TrapezoidCollocation(Model model, Spec spec) : model_(std::move(model)), spec_(std::move(spec)) {
    if (spec_.intervals < 2) throw DomainError("collocation needs at least two intervals");
    if (spec_.free_final_time && !(spec_.time_lower < spec_.time_upper)) {
      throw DomainError("infeasible final-time bounds");
    }
    if (!spec_.free_final_time && !(spec_.final_time > 0.0)) {
      throw DomainError("fixed final time must be positive");
    }
    for (int i = 0; i < NX; ++i) {
      if (!(spec_.state_lower[i] < spec_.state_upper[i])) throw DomainError("infeasible state bounds");
    }
    for (int i = 0; i < NU; ++i) {
      if (!(spec_.control_lower[i] < spec_.control_upper[i])) {
        throw DomainError("infeasible control bounds");
      }
    }
    if (spec_.terminal_disc && !(spec_.terminal_disc->radius > 0.0)) {
      throw DomainError("terminal disc radius must be positive");
    }
  }

  const Spec& spec() const { return spec_; }
  const Model& model() const { return model_; }
  int intervals() const { return spec_.intervals; }
  int nodes() const { return spec_.intervals + 1; }

  int state_index(int k, int i) const { return k * NZ + i; }
  int control_index(int k, int j) const { return k * NZ + NX + j; }
  int time_index() const { return nodes() * NZ; }
  int defect_row(int k, int i) const { return NX + k * NX + i; }
  int terminal_row(int e) const { return NX + spec_.intervals * NX + e; }
  int disc_row() const {
    return NX + spec_.intervals * NX + static_cast<int>(spec_.terminal_equalities.size());
  }

  double final_time(const Eigen::VectorXd& x) const {
    return spec_.free_final_time ? x[time_index()] : spec_.final_time;
  }
  double step(const Eigen::VectorXd& x) const { return final_time(x) / spec_.intervals; }

  State state(const Eigen::VectorXd& x, int k) const { return x.template segment<NX>(k * NZ); }
  Control control(const Eigen::VectorXd& x, int k) const {
    return x.template segment<NU>(k * NZ + NX);
  }

  /// Packs node states/controls (and T) into a decision vector.
  Eigen::VectorXd pack(const std::vector<State>& states, const std::vector<Control>& controls,
                       double total_time) const {
    Eigen::VectorXd x(num_variables());
    for (int k = 0; k < nodes(); ++k) {
      x.template segment<NX>(k * NZ) = states.at(k);
      x.template segment<NU>(k * NZ + NX) = controls.at(k);
    }
    if (spec_.free_final_time) x[time_index()] = total_time;
    return x;
  }

  // NlpProblem

  int num_variables() const override { return nodes() * NZ + (spec_.free_final_time ? 1 : 0); }

  int num_constraints() const override {
    return NX + spec_.intervals * NX + static_cast<int>(spec_.terminal_equalities.size()) +
           (spec_.terminal_disc ? 1 : 0);
  }

  void variable_bounds(Eigen::VectorXd& lower, Eigen::VectorXd& upper) const override {
    lower.resize(num_variables());
    upper.resize(num_variables());
    for (int k = 0; k < nodes(); ++k) {
      lower.template segment<NX>(k * NZ) = spec_.state_lower;
      upper.template segment<NX>(k * NZ) = spec_.state_upper;
      lower.template segment<NU>(k * NZ + NX) = spec_.control_lower;
      upper.template segment<NU>(k * NZ + NX) = spec_.control_upper;
    }
    if (spec_.free_final_time) {
      lower[time_index()] = spec_.time_lower;
      upper[time_index()] = spec_.time_upper;
    }
  }

  void constraint_bounds(Eigen::VectorXd& lower, Eigen::VectorXd& upper) const override {
    lower = Eigen::VectorXd::Zero(num_constraints());
    upper = Eigen::VectorXd::Zero(num_constraints());
    for (std::size_t e = 0; e < spec_.terminal_equalities.size(); ++e) {
      lower[terminal_row(static_cast<int>(e))] = spec_.terminal_equalities[e].second;
      upper[terminal_row(static_cast<int>(e))] = spec_.terminal_equalities[e].second;
    }
    if (spec_.terminal_disc) {
      lower[disc_row()] = -kInfinity;
      upper[disc_row()] = spec_.terminal_disc->radius * spec_.terminal_disc->radius;
    }
  }

  double objective(const Eigen::VectorXd& x) const override {
    return step(x) * weighted_stage_sum(x);
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(num_variables());
    const double h = step(x);
    for (int k = 0; k < nodes(); ++k) {
      g.template segment<NU>(k * NZ + NX) =
          h * quadrature_weight(k) * model_.stage_cost_gradient(control(x, k));
    }
    if (spec_.free_final_time) g[time_index()] = weighted_stage_sum(x) / spec_.intervals;
    return g;
  }

  Eigen::VectorXd constraints(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd c(num_constraints());
    c.template head<NX>() = state(x, 0) - spec_.initial_state;
    const double h = step(x);
    State f_prev = model_.template rates<double>(state(x, 0), control(x, 0));
    for (int k = 0; k < spec_.intervals; ++k) {
      const State f_next = model_.template rates<double>(state(x, k + 1), control(x, k + 1));
      c.template segment<NX>(defect_row(k, 0)) =
          state(x, k + 1) - state(x, k) - 0.5 * h * (f_prev + f_next);
      f_prev = f_next;
    }
    const State last = state(x, spec_.intervals);
    for (std::size_t e = 0; e < spec_.terminal_equalities.size(); ++e) {
      c[terminal_row(static_cast<int>(e))] = last[spec_.terminal_equalities[e].first];
    }
    if (spec_.terminal_disc) {
      const auto& d = *spec_.terminal_disc;
      c[disc_row()] = std::pow(last[d.ix] - d.cx, 2) + std::pow(last[d.iy] - d.cy, 2);
    }
    return c;
  }

  void jacobian(const Eigen::VectorXd& x, optim::Triplets& out) const override {
    out.clear();
    out.reserve(NX + spec_.intervals * NX * (2 * NZ + 1) + 8);
    for (int i = 0; i < NX; ++i) out.emplace_back(i, state_index(0, i), 1.0);
    const double h = step(x);
    const double n = spec_.intervals;
    std::vector<State> f(nodes());
    std::vector<NodeJacobian> jf(nodes());
    for (int k = 0; k < nodes(); ++k) node_jacobian(node(x, k), f[k], jf[k]);
    for (int k = 0; k < spec_.intervals; ++k) {
      for (int i = 0; i < NX; ++i) {
        const int row = defect_row(k, i);
        for (int j = 0; j < NZ; ++j) {
          const double identity = (j == i) ? 1.0 : 0.0;
          out.emplace_back(row, k * NZ + j, -identity - 0.5 * h * jf[k](i, j));
          out.emplace_back(row, (k + 1) * NZ + j, identity - 0.5 * h * jf[k + 1](i, j));
        }
        if (spec_.free_final_time) {
          out.emplace_back(row, time_index(), -0.5 / n * (f[k][i] + f[k + 1][i]));
        }
      }
    }
    for (std::size_t e = 0; e < spec_.terminal_equalities.size(); ++e) {
      out.emplace_back(terminal_row(static_cast<int>(e)),
                       state_index(spec_.intervals, spec_.terminal_equalities[e].first), 1.0);
    }
    if (spec_.terminal_disc) {
      const auto& d = *spec_.terminal_disc;
      const State last = state(x, spec_.intervals);
      out.emplace_back(disc_row(), state_index(spec_.intervals, d.ix), 2.0 * (last[d.ix] - d.cx));
      out.emplace_back(disc_row(), state_index(spec_.intervals, d.iy), 2.0 * (last[d.iy] - d.cy));
    }
  }

  void hessian(const Eigen::VectorXd& x, double obj_factor, const Eigen::VectorXd& lambda,
               optim::Triplets& out) const override {
    out.clear();
    const double h = step(x);
    const double n = spec_.intervals;
    const int t_col = time_index();
    for (int k = 0; k < nodes(); ++k) {
      State mu = State::Zero();
      if (k > 0) mu += lambda.template segment<NX>(defect_row(k - 1, 0));
      if (k < spec_.intervals) mu += lambda.template segment<NX>(defect_row(k, 0));

      const NodeVector v = node(x, k);
      NodeHessian block = -0.5 * h * weighted_rate_hessian(v, mu);
      const Control u = control(x, k);
      const Control l2 = model_.stage_cost_hessian_diagonal(u);
      const double w = quadrature_weight(k);
      for (int j = 0; j < NU; ++j) block(NX + j, NX + j) += obj_factor * h * w * l2[j];
      for (int a = 0; a < NZ; ++a) {
        for (int b = 0; b <= a; ++b) out.emplace_back(k * NZ + a, k * NZ + b, block(a, b));
      }
      if (spec_.free_final_time) {
        State f;
        NodeJacobian jf;
        node_jacobian(v, f, jf);
        NodeVector cross = -0.5 / n * (jf.transpose() * mu);
        const Control l1 = model_.stage_cost_gradient(u);
        for (int j = 0; j < NU; ++j) cross[NX + j] += obj_factor * w * l1[j] / n;
        for (int a = 0; a < NZ; ++a) out.emplace_back(t_col, k * NZ + a, cross[a]);
      }
    }
    if (spec_.free_final_time) out.emplace_back(t_col, t_col, 0.0);
    if (spec_.terminal_disc) {
      const auto& d = *spec_.terminal_disc;
      const double ld = lambda[disc_row()];
      out.emplace_back(state_index(spec_.intervals, d.ix), state_index(spec_.intervals, d.ix), 2.0 * ld);
      out.emplace_back(state_index(spec_.intervals, d.iy), state_index(spec_.intervals, d.iy), 2.0 * ld);
    }
  }

  Eigen::VectorXd variable_scaling() const override {
    Eigen::VectorXd s(num_variables());
    for (int k = 0; k < nodes(); ++k) {
      s.template segment<NX>(k * NZ) = spec_.state_scale;
      s.template segment<NU>(k * NZ + NX) = spec_.control_scale;
    }
    if (spec_.free_final_time) s[time_index()] = spec_.time_scale;
    return s;
  }

  Eigen::VectorXd constraint_scaling() const override {
    Eigen::VectorXd s(num_constraints());
    s.template head<NX>() = spec_.state_scale;
    for (int k = 0; k < spec_.intervals; ++k) s.template segment<NX>(defect_row(k, 0)) = spec_.state_scale;
    for (std::size_t e = 0; e < spec_.terminal_equalities.size(); ++e) {
      s[terminal_row(static_cast<int>(e))] = spec_.state_scale[spec_.terminal_equalities[e].first];
    }
    if (spec_.terminal_disc) {
      const auto& d = *spec_.terminal_disc;
      s[disc_row()] = 2.0 * d.radius * std::max(spec_.state_scale[d.ix], spec_.state_scale[d.iy]);
    }
    return s;
  }

  /// Trapezoid weight of node k (1/2 at the ends, 1 inside).
  double quadrature_weight(int k) const { return (k == 0 || k == spec_.intervals) ? 0.5 : 1.0; }

  /// Model rates and their Jacobian with respect to [x u] at one node.
  void node_jacobian(const NodeVector& v, State& f, NodeJacobian& jf) const {
    using ADState = Eigen::Matrix<ADScalar, NX, 1>;
    using ADControl = Eigen::Matrix<ADScalar, NU, 1>;
    ADState xs;
    ADControl us;
    for (int i = 0; i < NX; ++i) xs[i] = ADScalar(v[i], NZ, i);
    for (int j = 0; j < NU; ++j) us[j] = ADScalar(v[NX + j], NZ, NX + j);
    const ADState rates = model_.template rates<ADScalar>(xs, us);
    for (int i = 0; i < NX; ++i) {
      f[i] = rates[i].value();
      if (rates[i].derivatives().size() == NZ) {
        jf.row(i) = rates[i].derivatives().transpose();
      } else {
        jf.row(i).setZero();
      }
    }
  }

 private:
  NodeVector node(const Eigen::VectorXd& x, int k) const { return x.template segment<NZ>(k * NZ); }

  double weighted_stage_sum(const Eigen::VectorXd& x) const {
    double sum = 0.0;
    for (int k = 0; k < nodes(); ++k) sum += quadrature_weight(k) * model_.stage_cost(control(x, k));
    return sum;
  }

  // Hessian of mu^T f at v by central differences of the exact gradient.
  NodeHessian weighted_rate_hessian(const NodeVector& v, const State& mu) const {
    NodeHessian hess;
    if (mu.isZero(0.0)) return NodeHessian::Zero();
    NodeVector probe = v;
    State f;
    NodeJacobian jp, jm;
    for (int j = 0; j < NZ; ++j) {
      const double scale = j < NX ? spec_.state_scale[j] : spec_.control_scale[j - NX];
      const double dh = 1e-6 * std::max(scale, std::abs(v[j]));
      probe[j] = v[j] + dh;
      node_jacobian(probe, f, jp);
      probe[j] = v[j] - dh;
      node_jacobian(probe, f, jm);
      probe[j] = v[j];
      hess.col(j) = (jp - jm).transpose() * mu / (2.0 * dh);
    }
    return 0.5 * (hess + hess.transpose());
  }

  Model model_;
  Spec spec_;
};

}  // namespace ecoauv::dc
