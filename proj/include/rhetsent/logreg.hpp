#ifndef RHETSENT_LOGREG_HPP
#define RHETSENT_LOGREG_HPP

#include <cstdint>
#include <vector>

#include "rhetsent/features.hpp"

namespace rhetsent {

struct LabeledDoc {
  SparseVector features;
  int label = 1;  // -1 or +1
};

struct LogRegModel {
  WeightVector theta;
  double bias = 0.0;
  double reg_coef = 1.0;
  int iterations = 0;
  double final_objective = 0.0;
};

struct LogRegGradient {
  WeightVector theta;
  double bias = 0.0;
};

struct LogRegOptions {
  double grad_tol = 1e-6;
  int max_iters = 500;
};

// Mean logistic loss plus (reg/2)*||theta||^2; bias unregularized.
double logreg_objective(const LogRegModel& model, const std::vector<LabeledDoc>& docs);
LogRegGradient logreg_gradient(const LogRegModel& model, const std::vector<LabeledDoc>& docs);

// Full-batch gradient descent with Armijo backtracking from a zero start.
LogRegModel fit_logreg(const std::vector<LabeledDoc>& docs, int dim, double reg_coef,
                       const LogRegOptions& opts = {});

// Fits once per reg value, picks the one with the best held-out accuracy
// (ties -> larger reg), then refits on everything. The held-out split is a
// seeded shuffle. Throws DataError on single-class input or an empty grid.
LogRegModel train_logreg(const std::vector<LabeledDoc>& docs, int dim,
                         const std::vector<double>& reg_grid, double heldout_fraction,
                         std::uint64_t seed, const LogRegOptions& opts = {});

inline int predict_logreg(const LogRegModel& model, const SparseVector& x) {
  return x.dot(model.theta) + model.bias >= 0.0 ? 1 : -1;
}

double accuracy_logreg(const LogRegModel& model, const std::vector<LabeledDoc>& docs);

}  // namespace rhetsent

#endif  // RHETSENT_LOGREG_HPP
