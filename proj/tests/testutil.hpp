#ifndef RHETSENT_TESTS_TESTUTIL_HPP
#define RHETSENT_TESTS_TESTUTIL_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rhetsent/corpus.hpp"
#include "rhetsent/features.hpp"
#include "rhetsent/r2n2.hpp"
#include "rhetsent/rst_tree.hpp"

namespace rhetsent::testutil {

using Rng = std::mt19937_64;

struct TreeGenOptions {
  int min_edus = 1;
  int max_edus = 60;
  int max_multi_arity = 5;
  double multi_prob = 0.3;
};

// Random well-formed RST tree; relation labels drawn from a mix of
// contrastive and non-contrastive names. EDU texts are empty.
RstTree random_tree(Rng& rng, const TreeGenOptions& opts = {});

// Random sparse count vectors, one per EDU, over a vocabulary of size dim.
std::vector<BowVector> random_edu_vectors(Rng& rng, int edu_count, int dim);

R2n2Params random_params(Rng& rng, RelationMode mode, int dim);

// Plain recursive evaluation of the composition equations; the independent
// second route for checking r2n2_forward.
double oracle_psi_doc(const RstTree& tree, const R2n2Params& params,
                      const std::vector<BowVector>& edu_vectors);

// Hinge loss at (params + unit perturbation of one coordinate); used by the
// central-difference gradient check. Coordinates are enumerated as:
// k_n[0..C), k_s[0..C), gamma, theta[0..V).
struct ParamVector {
  static int dimension(const R2n2Params& params);
  static double get(const R2n2Params& params, int coord);
  static void set(R2n2Params& params, int coord, double value);
};

// max over coordinates of |analytic - central difference| relative error.
// Returns -1 for hinge-kink instances (|1 - y*psi| < kink_margin), which the
// caller should skip.
double max_gradient_rel_error(const RstTree& tree, const R2n2Params& params,
                              const std::vector<BowVector>& edu_vectors, int label,
                              double h = 1e-6, double kink_margin = 1e-3);

// Synthetic corpus whose label always follows the root-nucleus EDU while the
// satellite chain carries opposite-polarity words; flat counting is close to
// chance on it.
struct SynthDoc {
  std::string id;
  int label;
  RstTree tree;
  std::vector<std::vector<std::string>> edu_tokens;
};

struct SynthOptions {
  int num_docs = 2000;
  int num_pos_words = 30;
  int num_neg_words = 30;
  int num_filler_words = 40;
  std::uint64_t seed = 7;
};

std::vector<SynthDoc> synthetic_corpus(const SynthOptions& opts);

// Serializes a synthetic corpus into `dir` as tree files plus manifest.tsv
// and lexicon.tsv (the generator's true word polarities).
void write_synthetic_corpus(const std::vector<SynthDoc>& docs, const SynthOptions& opts,
                            const std::string& dir);

Document to_document(const SynthDoc& doc);

}  // namespace rhetsent::testutil

#endif  // RHETSENT_TESTS_TESTUTIL_HPP
