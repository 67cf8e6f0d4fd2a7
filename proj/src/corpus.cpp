#include "rhetsent/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "rhetsent/error.hpp"

namespace rhetsent {

std::optional<int> binarize_score(int score) {
  if (score < 1 || score > 10)
    throw DataError("review score out of range 1..10: " + std::to_string(score));
  if (score <= 4) return -1;
  if (score >= 7) return 1;
  return std::nullopt;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  for (;;) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

int parse_int(const std::string& s, const std::string& context) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(context + ": expected integer, got '" + s + "'");
  }
}

std::string join_path(const std::string& root, const std::string& rel) {
  if (root.empty()) return rel;
  if (root.back() == '/') return root + rel;
  return root + "/" + rel;
}

// Either `score:N` (binarized, possibly neutral) or `label:L`.
std::optional<int> parse_label_field(const std::string& field, const std::string& context) {
  if (field.rfind("score:", 0) == 0) return binarize_score(parse_int(field.substr(6), context));
  if (field.rfind("label:", 0) == 0) {
    int label = parse_int(field.substr(6), context);
    if (label != 1 && label != -1) throw DataError(context + ": label must be -1 or 1");
    return label;
  }
  throw ParseError(context + ": expected 'score:<n>' or 'label:<n>', got '" + field + "'");
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open text file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::vector<Document> load_corpus(std::istream& manifest, const std::string& tree_root_dir,
                                  bool skip_bad, LoadStats* stats) {
  std::vector<Document> docs;
  LoadStats local;
  std::string line;
  int lineno = 0;
  while (std::getline(manifest, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::string context = "manifest line " + std::to_string(lineno);
    std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 4) throw ParseError(context + ": expected 4 tab-separated fields");

    std::optional<int> label = parse_label_field(fields[1], context);
    if (!label) {
      ++local.skipped_neutral;
      continue;
    }
    try {
      Document doc;
      doc.id = fields[0];
      doc.label = *label;
      doc.tree = parse_rst_file(join_path(tree_root_dir, fields[2]));
      std::vector<std::string> violations = validate(doc.tree);
      if (!violations.empty())
        throw DataError(context + ": invalid tree: " + violations.front());
      std::vector<const Edu*> edus = collect_edus(doc.tree);
      if (fields[3] == "-") {
        for (const Edu* e : edus) doc.edu_tokens.push_back(tokenize(e->text));
      } else {
        std::vector<std::string> lines = read_lines(join_path(tree_root_dir, fields[3]));
        if (lines.size() != edus.size())
          throw DataError(context + ": text file has " + std::to_string(lines.size()) +
                          " lines but tree has " + std::to_string(edus.size()) + " EDUs");
        for (const std::string& text : lines) doc.edu_tokens.push_back(tokenize(text));
      }
      docs.push_back(std::move(doc));
      ++local.loaded;
    } catch (const std::exception&) {
      if (!skip_bad) throw;
      ++local.skipped_bad;
    }
  }
  if (stats) *stats = local;
  return docs;
}

std::vector<Document> load_corpus_file(const std::string& manifest_path,
                                       const std::string& tree_root_dir, bool skip_bad,
                                       LoadStats* stats) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw DataError("cannot open manifest: " + manifest_path);
  return load_corpus(in, tree_root_dir, skip_bad, stats);
}

std::vector<size_t> FoldPlan::fold_members(int fold) const {
  std::vector<size_t> members;
  for (size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] == fold) members.push_back(i);
  return members;
}

FoldPlan make_folds(size_t doc_count, int k, std::uint64_t seed) {
  if (k < 2) throw DataError("fold count must be >= 2");
  if (static_cast<size_t>(k) > doc_count)
    throw DataError("fold count " + std::to_string(k) + " exceeds corpus size " +
                    std::to_string(doc_count));
  std::vector<size_t> order(doc_count);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignment.assign(doc_count, 0);
  for (size_t i = 0; i < order.size(); ++i)
    plan.assignment[order[i]] = static_cast<int>(i % static_cast<size_t>(k));
  return plan;
}

double evaluate(const std::vector<Prediction>& predictions, const std::vector<Prediction>& gold) {
  if (predictions.size() != gold.size())
    throw DataError("prediction/gold size mismatch: " + std::to_string(predictions.size()) +
                    " vs " + std::to_string(gold.size()));
  std::map<std::string, int> gold_by_id;
  for (const auto& g : gold)
    if (!gold_by_id.emplace(g.doc_id, g.label).second)
      throw DataError("duplicate gold id: " + g.doc_id);
  int correct = 0;
  for (const auto& p : predictions) {
    auto it = gold_by_id.find(p.doc_id);
    if (it == gold_by_id.end()) throw DataError("prediction for unknown id: " + p.doc_id);
    if (p.label == it->second) ++correct;
  }
  if (gold.empty()) return 0.0;
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

std::vector<BowVector> edu_bow_vectors(const Document& doc, const Vocabulary& vocab) {
  std::vector<BowVector> vectors;
  vectors.reserve(doc.edu_tokens.size());
  for (const auto& tokens : doc.edu_tokens) vectors.push_back(vectorize(tokens, vocab));
  return vectors;
}

}  // namespace rhetsent
