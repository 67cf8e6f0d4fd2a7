#ifndef RHETSENT_FEATURES_HPP
#define RHETSENT_FEATURES_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace rhetsent {

// Lowercases, splits on whitespace, strips leading/trailing punctuation from
// each token, drops tokens that end up empty. ASCII letters are lowercased;
// non-ASCII UTF-8 sequences pass through untouched and count as word
// characters.
std::vector<std::string> tokenize(const std::string& text);

// Frozen token -> dense index map, indices assigned in first-occurrence order.
class Vocabulary {
 public:
  // Keeps tokens whose total corpus frequency is >= min_count.
  // Throws DataError when nothing survives.
  static Vocabulary build(const std::vector<std::vector<std::string>>& docs, int min_count);

  // Rebuilds from an explicit token list (model files).
  static Vocabulary from_tokens(std::vector<std::string> tokens);

  int size() const { return static_cast<int>(tokens_.size()); }
  // -1 when out of vocabulary.
  int index_of(const std::string& token) const;
  const std::string& token_at(int index) const { return tokens_[static_cast<size_t>(index)]; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // FNV-1a over the token list; identifies the feature space in model files.
  std::uint64_t hash() const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

// Sparse bag-of-words counts, kept sorted by index.
class BowVector {
 public:
  BowVector() = default;

  void add(int index, int count);
  void add(const BowVector& other);

  const std::vector<std::pair<int, int>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  long total_count() const;

  double dot(const std::vector<double>& theta) const;
  // accum += scale * this
  void add_scaled_to(std::vector<double>& accum, double scale) const;

  bool operator==(const BowVector&) const = default;

 private:
  std::vector<std::pair<int, int>> entries_;  // (index, count), index ascending
};

BowVector vectorize(const std::vector<std::string>& tokens, const Vocabulary& vocab);

// Sparse real-valued vector; classifier feature vectors may mix whole counts
// with fractional depth weights.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(const BowVector& counts);

  void add(int index, double value);
  void add_scaled(const BowVector& counts, double scale);

  const std::vector<std::pair<int, double>>& entries() const { return entries_; }
  double dot(const std::vector<double>& theta) const;
  void add_scaled_to(std::vector<double>& accum, double scale) const;
  double squared_norm() const;

 private:
  std::vector<std::pair<int, double>> entries_;  // index ascending
};

using WeightVector = std::vector<double>;

struct LexiconResult {
  WeightVector theta;  // +1 / -1 / 0 per vocabulary index
  int ignored_out_of_vocab = 0;
};

// Lexicon TSV: `word<TAB>positive|negative`, '#' comments, blank lines ok.
// Throws ParseError on malformed lines, DataError on conflicting duplicates.
LexiconResult load_lexicon(std::istream& in, const Vocabulary& vocab);
LexiconResult load_lexicon_file(const std::string& path, const Vocabulary& vocab);

}  // namespace rhetsent

#endif  // RHETSENT_FEATURES_HPP
