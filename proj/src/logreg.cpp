#include "rhetsent/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rhetsent/error.hpp"

namespace rhetsent {

namespace {

// log(1 + exp(-z)) without overflow.
double log1p_exp_neg(double z) {
  if (z > 0) return std::log1p(std::exp(-z));
  return -z + std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

void check_two_classes(const std::vector<LabeledDoc>& docs) {
  bool pos = false, neg = false;
  for (const auto& d : docs) (d.label > 0 ? pos : neg) = true;
  if (!pos || !neg) throw DataError("training data must contain both labels");
}

}  // namespace

double logreg_objective(const LogRegModel& model, const std::vector<LabeledDoc>& docs) {
  double loss = 0.0;
  for (const auto& d : docs) {
    double z = d.label * (d.features.dot(model.theta) + model.bias);
    loss += log1p_exp_neg(z);
  }
  loss /= static_cast<double>(docs.size());
  double sq = 0.0;
  for (double t : model.theta) sq += t * t;
  return loss + 0.5 * model.reg_coef * sq;
}

LogRegGradient logreg_gradient(const LogRegModel& model, const std::vector<LabeledDoc>& docs) {
  LogRegGradient grad;
  grad.theta.assign(model.theta.size(), 0.0);
  double inv_m = 1.0 / static_cast<double>(docs.size());
  for (const auto& d : docs) {
    double z = d.label * (d.features.dot(model.theta) + model.bias);
    double coef = -d.label * sigmoid(-z) * inv_m;
    d.features.add_scaled_to(grad.theta, coef);
    grad.bias += coef;
  }
  for (size_t j = 0; j < grad.theta.size(); ++j) grad.theta[j] += model.reg_coef * model.theta[j];
  return grad;
}

LogRegModel fit_logreg(const std::vector<LabeledDoc>& docs, int dim, double reg_coef,
                       const LogRegOptions& opts) {
  if (docs.empty()) throw DataError("no training documents");
  LogRegModel model;
  model.theta.assign(static_cast<size_t>(dim), 0.0);
  model.reg_coef = reg_coef;

  double obj = logreg_objective(model, docs);
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    LogRegGradient grad = logreg_gradient(model, docs);
    double grad_sq = grad.bias * grad.bias;
    for (double g : grad.theta) grad_sq += g * g;
    if (std::sqrt(grad_sq) <= opts.grad_tol) break;

    // Armijo backtracking on the full objective.
    double step = 1.0;
    LogRegModel trial = model;
    for (int bt = 0; bt < 60; ++bt) {
      for (size_t j = 0; j < model.theta.size(); ++j)
        trial.theta[j] = model.theta[j] - step * grad.theta[j];
      trial.bias = model.bias - step * grad.bias;
      double trial_obj = logreg_objective(trial, docs);
      if (trial_obj <= obj - 1e-4 * step * grad_sq) {
        obj = trial_obj;
        break;
      }
      step *= 0.5;
    }
    model.theta = trial.theta;
    model.bias = trial.bias;
    model.iterations = iter + 1;
    if (!std::isfinite(obj)) throw NumericError("non-finite logistic regression objective");
  }
  model.final_objective = obj;
  return model;
}

double accuracy_logreg(const LogRegModel& model, const std::vector<LabeledDoc>& docs) {
  if (docs.empty()) return 0.0;
  int correct = 0;
  for (const auto& d : docs)
    if (predict_logreg(model, d.features) == d.label) ++correct;
  return static_cast<double>(correct) / static_cast<double>(docs.size());
}

LogRegModel train_logreg(const std::vector<LabeledDoc>& docs, int dim,
                         const std::vector<double>& reg_grid, double heldout_fraction,
                         std::uint64_t seed, const LogRegOptions& opts) {
  if (reg_grid.empty()) throw DataError("empty regularization grid");
  if (docs.size() < 2) throw DataError("need at least 2 documents");
  if (!(heldout_fraction > 0.0 && heldout_fraction <= 0.5))
    throw DataError("heldout_fraction must be in (0, 0.5]");
  check_two_classes(docs);

  std::vector<size_t> order(docs.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  size_t heldout_n =
      std::max<size_t>(1, static_cast<size_t>(heldout_fraction * static_cast<double>(docs.size())));
  std::vector<LabeledDoc> heldout, train;
  for (size_t i = 0; i < order.size(); ++i)
    (i < heldout_n ? heldout : train).push_back(docs[order[i]]);

  // If the split strands one class, fall back to training on everything so
  // grid selection still runs on valid fits.
  bool pos = false, neg = false;
  for (const auto& d : train) (d.label > 0 ? pos : neg) = true;
  if (!pos || !neg) train = docs;

  double best_acc = -1.0, best_reg = reg_grid.front();
  for (double reg : reg_grid) {
    LogRegModel candidate = fit_logreg(train, dim, reg, opts);
    double acc = accuracy_logreg(candidate, heldout);
    if (acc > best_acc || (acc == best_acc && reg > best_reg)) {
      best_acc = acc;
      best_reg = reg;
    }
  }
  return fit_logreg(docs, dim, best_reg, opts);
}

}  // namespace rhetsent
