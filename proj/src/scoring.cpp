#include "rhetsent/scoring.hpp"

#include <algorithm>

#include "rhetsent/error.hpp"

namespace rhetsent {

double depth_weight(int depth) { return std::max(0.5, 1.0 - depth / 6.0); }

DocScore score_flat(const std::vector<BowVector>& edu_vectors, const WeightVector& theta) {
  DocScore score;
  for (size_t i = 0; i < edu_vectors.size(); ++i) {
    double psi = edu_vectors[i].dot(theta);
    score.per_edu.push_back({static_cast<int>(i) + 1, psi, 1.0});
    score.psi_doc += psi;
  }
  score.predicted_label = sign_label(score.psi_doc);
  return score;
}

DocScore score_depth_weighted(const std::vector<BowVector>& edu_vectors,
                              const std::vector<int>& edu_depths, const WeightVector& theta) {
  DocScore score;
  for (size_t i = 0; i < edu_vectors.size(); ++i) {
    size_t edu_id = i + 1;
    if (edu_id >= edu_depths.size())
      throw DataError("missing depth for EDU " + std::to_string(edu_id));
    double psi = edu_vectors[i].dot(theta);
    double lambda = depth_weight(edu_depths[edu_id]);
    score.per_edu.push_back({static_cast<int>(edu_id), psi, lambda});
    score.psi_doc += lambda * psi;
  }
  score.predicted_label = sign_label(score.psi_doc);
  return score;
}

}  // namespace rhetsent
