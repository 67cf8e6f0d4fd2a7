#ifndef RHETSENT_SCORING_HPP
#define RHETSENT_SCORING_HPP

#include <vector>

#include "rhetsent/features.hpp"

namespace rhetsent {

struct EduScore {
  int edu = 0;
  double psi = 0.0;     // theta . w
  double lambda = 1.0;  // depth weight, in [0.5, 1]
};

struct DocScore {
  double psi_doc = 0.0;
  int predicted_label = 1;  // sign(psi_doc), tie -> +1
  std::vector<EduScore> per_edu;
};

inline int sign_label(double psi) { return psi >= 0.0 ? 1 : -1; }

// max(0.5, 1 - d/6)
double depth_weight(int depth);

// Plain linear score over the summed bag of words; lambda reported as 1.
DocScore score_flat(const std::vector<BowVector>& edu_vectors, const WeightVector& theta);

// Depth-weighted score: sum_i lambda_i * (theta . w_i), with lambda from the
// DEP-DT depth of EDU i. `edu_depths` is indexed by EDU id with slot 0 unused
// and must cover every EDU; throws DataError otherwise.
DocScore score_depth_weighted(const std::vector<BowVector>& edu_vectors,
                              const std::vector<int>& edu_depths, const WeightVector& theta);

}  // namespace rhetsent

#endif  // RHETSENT_SCORING_HPP
