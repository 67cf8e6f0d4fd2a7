#ifndef RHETSENT_R2N2_HPP
#define RHETSENT_R2N2_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rhetsent/features.hpp"
#include "rhetsent/rst_tree.hpp"

namespace rhetsent {

// Whether composition scalars are split between contrastive and
// non-contrastive relations or shared across all of them.
enum class RelationMode { NoRelations, WithRelations };

// Class indices into the K maps.
inline constexpr int kSingleClass = 0;
inline constexpr int kContrastive = 0;
inline constexpr int kNonContrastive = 1;

// The closed list of contrastive relations; everything else (including
// labels never seen before) is non-contrastive. Case-insensitive.
bool is_contrastive(const std::string& relation);

// NoRelations -> kSingleClass; WithRelations -> kContrastive/kNonContrastive.
int classify_relation(const std::string& relation, RelationMode mode);

// Scalar recursive composition parameters. Only the first num_classes()
// entries of k_n/k_s are active.
struct R2n2Params {
  RelationMode mode = RelationMode::WithRelations;
  std::array<double, 2> k_n{1.0, 1.0};
  std::array<double, 2> k_s{0.5, 0.5};
  double gamma = 0.5;
  WeightVector theta;

  int num_classes() const { return mode == RelationMode::WithRelations ? 2 : 1; }
};

// Per-node activations from one forward pass. Nodes are indexed in preorder
// over the RST tree (root = 0), so node_psi[0] is the tree-root score.
struct R2n2Forward {
  std::vector<double> node_psi;
  double bow_term = 0.0;  // theta . sum_i w_i
  double psi_doc = 0.0;
  int predicted_label = 1;
};

// Leaf: psi = theta . w. Nucleus-satellite: tanh(Kn*psi_n + Ks*psi_s).
// Multinuclear: tanh(sum_j Kn*psi_j). Document: gamma*bow_term + root psi.
// `edu_vectors[i]` is the bag of words of EDU i+1.
R2n2Forward r2n2_forward(const RstTree& tree, const R2n2Params& params,
                         const std::vector<BowVector>& edu_vectors);

inline double hinge_loss(int label, double psi_doc) {
  return std::max(0.0, 1.0 - label * psi_doc);
}

struct R2n2Gradient {
  std::array<double, 2> k_n{0.0, 0.0};
  std::array<double, 2> k_s{0.0, 0.0};
  double gamma = 0.0;
  WeightVector theta;
};

// Gradient of the hinge loss max(0, 1 - y*psi_doc) in all parameters,
// obtained by backpropagation through the tree. Returns all zeros when the
// hinge is inactive (subgradient 0 at the kink).
R2n2Gradient r2n2_backward(const RstTree& tree, const R2n2Params& params,
                           const std::vector<BowVector>& edu_vectors, int label,
                           const R2n2Forward& forward);

struct R2n2Doc {
  const RstTree* tree = nullptr;
  std::vector<BowVector> edu_vectors;
  int label = 1;
};

struct R2n2TrainOptions {
  double lr = 0.01;
  int epochs = 30;
  int patience = 5;
  double heldout_fraction = 0.1;
  std::uint64_t seed = 0;
  bool train_theta = true;
};

// K_n = 1.0, K_s = 0.5, gamma = 0.5; theta copied from init_theta when given,
// otherwise seeded uniform noise in [-0.01, 0.01].
R2n2Params init_params(RelationMode mode, int vocab_size, const WeightVector* init_theta,
                       std::uint64_t seed);

struct R2n2TrainResult {
  R2n2Params params;
  int best_epoch = 0;
  double best_heldout_accuracy = 0.0;
  int epochs_run = 0;
};

// Per-document SGD with a seeded shuffle each epoch; keeps the parameters of
// the epoch with the best held-out accuracy and stops early after `patience`
// epochs without improvement. Throws DataError on empty or single-class
// input, NumericError on a non-finite score.
R2n2TrainResult train_r2n2(const std::vector<R2n2Doc>& docs, const R2n2Params& init,
                           const R2n2TrainOptions& opts);

double accuracy_r2n2(const R2n2Params& params, const std::vector<R2n2Doc>& docs);

}  // namespace rhetsent

#endif  // RHETSENT_R2N2_HPP
