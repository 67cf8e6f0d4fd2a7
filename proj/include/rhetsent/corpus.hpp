#ifndef RHETSENT_CORPUS_HPP
#define RHETSENT_CORPUS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rhetsent/features.hpp"
#include "rhetsent/rst_tree.hpp"

namespace rhetsent {

struct Document {
  std::string id;
  int label = 1;  // -1 or +1
  RstTree tree;
  std::vector<std::vector<std::string>> edu_tokens;  // per EDU, text order
};

// 1..4 -> -1, 7..10 -> +1, 5..6 -> excluded. Throws DataError out of range.
std::optional<int> binarize_score(int score);

struct LoadStats {
  int loaded = 0;
  int skipped_neutral = 0;
  int skipped_bad = 0;
};

// Manifest: one record per line,
//   id<TAB>score:<1-10>|label:<-1|1><TAB>tree-path<TAB>text-path|-
// Paths are relative to tree_root_dir. A text path of '-' takes EDU text
// from the tree leaves; otherwise the file supplies one EDU text per line
// and must match the tree's EDU count. With skip_bad, unreadable or invalid
// records are counted and dropped instead of aborting.
std::vector<Document> load_corpus(std::istream& manifest, const std::string& tree_root_dir,
                                  bool skip_bad, LoadStats* stats = nullptr);
std::vector<Document> load_corpus_file(const std::string& manifest_path,
                                       const std::string& tree_root_dir, bool skip_bad,
                                       LoadStats* stats = nullptr);

struct FoldPlan {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<int> assignment;  // fold index per document position

  std::vector<size_t> fold_members(int fold) const;
};

// Seeded shuffle then round-robin; fold sizes differ by at most one.
FoldPlan make_folds(size_t doc_count, int k, std::uint64_t seed);

struct Prediction {
  std::string doc_id;
  int label = 1;
};

// Fraction of matching labels; the two lists must cover the same ids.
double evaluate(const std::vector<Prediction>& predictions, const std::vector<Prediction>& gold);

// Convenience: tokenized EDUs vectorized against a vocabulary, in EDU order.
std::vector<BowVector> edu_bow_vectors(const Document& doc, const Vocabulary& vocab);

}  // namespace rhetsent

#endif  // RHETSENT_CORPUS_HPP
