#include "rhetsent/features.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rhetsent/error.hpp"

namespace rhetsent {

namespace {

// Minimal UTF-8 cursor; malformed bytes are passed through as single
// codepoints so tokenization never fails on binary junk.
struct Utf8Char {
  uint32_t cp;
  size_t len;
};

Utf8Char decode_utf8(const std::string& s, size_t pos) {
  unsigned char b0 = static_cast<unsigned char>(s[pos]);
  size_t remaining = s.size() - pos;
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](size_t i) {
    return i < remaining && (static_cast<unsigned char>(s[pos + i]) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && cont(1))
    return {static_cast<uint32_t>((b0 & 0x1Fu) << 6 | (s[pos + 1] & 0x3Fu)), 2};
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2))
    return {static_cast<uint32_t>((b0 & 0x0Fu) << 12 | (s[pos + 1] & 0x3Fu) << 6 |
                                  (s[pos + 2] & 0x3Fu)),
            3};
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3))
    return {static_cast<uint32_t>((b0 & 0x07u) << 18 | (s[pos + 1] & 0x3Fu) << 12 |
                                  (s[pos + 2] & 0x3Fu) << 6 | (s[pos + 3] & 0x3Fu)),
            4};
  return {b0, 1};
}

bool is_space_cp(uint32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_word_cp(uint32_t cp) {
  if (cp < 0x80)
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  return !is_space_cp(cp);
}

void append_lowered(std::string& out, const std::string& s, size_t pos, size_t len) {
  for (size_t i = 0; i < len; ++i) {
    char c = s[pos + i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out.push_back(c);
  }
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  // (byte offset, byte length) of each codepoint in the current raw token.
  std::vector<std::pair<size_t, size_t>> cps;
  std::vector<bool> word;

  auto flush = [&]() {
    if (cps.empty()) return;
    size_t lo = 0, hi = cps.size();
    while (lo < hi && !word[lo]) ++lo;
    while (hi > lo && !word[hi - 1]) --hi;
    if (lo < hi) {
      std::string tok;
      for (size_t i = lo; i < hi; ++i) append_lowered(tok, text, cps[i].first, cps[i].second);
      tokens.push_back(std::move(tok));
    }
    cps.clear();
    word.clear();
  };

  size_t pos = 0;
  while (pos < text.size()) {
    Utf8Char u = decode_utf8(text, pos);
    if (is_space_cp(u.cp)) {
      flush();
    } else {
      cps.emplace_back(pos, u.len);
      word.push_back(is_word_cp(u.cp));
    }
    pos += u.len;
  }
  flush();
  return tokens;
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& docs, int min_count) {
  std::unordered_map<std::string, long> freq;
  std::vector<std::string> order;
  for (const auto& doc : docs) {
    for (const auto& tok : doc) {
      auto [it, fresh] = freq.emplace(tok, 0);
      if (fresh) order.push_back(tok);
      ++it->second;
    }
  }
  Vocabulary v;
  for (const auto& tok : order) {
    if (freq[tok] >= min_count) {
      v.index_.emplace(tok, v.size());
      v.tokens_.push_back(tok);
    }
  }
  if (v.tokens_.empty()) throw DataError("empty vocabulary (min_count too high or no input)");
  return v;
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  Vocabulary v;
  v.tokens_ = std::move(tokens);
  for (size_t i = 0; i < v.tokens_.size(); ++i) {
    auto [it, fresh] = v.index_.emplace(v.tokens_[i], static_cast<int>(i));
    if (!fresh) throw DataError("duplicate token in vocabulary listing: " + v.tokens_[i]);
  }
  return v;
}

int Vocabulary::index_of(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? -1 : it->second;
}

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (const auto& tok : tokens_) {
    for (char c : tok) mix(static_cast<unsigned char>(c));
    mix(0);
  }
  return h;
}

void BowVector::add(int index, int count) {
  if (count == 0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const auto& e, int i) { return e.first < i; });
  if (it != entries_.end() && it->first == index)
    it->second += count;
  else
    entries_.insert(it, {index, count});
}

void BowVector::add(const BowVector& other) {
  for (const auto& [idx, cnt] : other.entries_) add(idx, cnt);
}

long BowVector::total_count() const {
  long total = 0;
  for (const auto& [idx, cnt] : entries_) total += cnt;
  return total;
}

double BowVector::dot(const std::vector<double>& theta) const {
  double sum = 0.0;
  for (const auto& [idx, cnt] : entries_) sum += theta[static_cast<size_t>(idx)] * cnt;
  return sum;
}

void BowVector::add_scaled_to(std::vector<double>& accum, double scale) const {
  for (const auto& [idx, cnt] : entries_) accum[static_cast<size_t>(idx)] += scale * cnt;
}

SparseVector::SparseVector(const BowVector& counts) {
  for (const auto& [idx, cnt] : counts.entries()) entries_.emplace_back(idx, cnt);
}

void SparseVector::add(int index, double value) {
  if (value == 0.0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const auto& e, int i) { return e.first < i; });
  if (it != entries_.end() && it->first == index)
    it->second += value;
  else
    entries_.insert(it, {index, value});
}

void SparseVector::add_scaled(const BowVector& counts, double scale) {
  for (const auto& [idx, cnt] : counts.entries()) add(idx, scale * cnt);
}

double SparseVector::dot(const std::vector<double>& theta) const {
  double sum = 0.0;
  for (const auto& [idx, v] : entries_) sum += theta[static_cast<size_t>(idx)] * v;
  return sum;
}

void SparseVector::add_scaled_to(std::vector<double>& accum, double scale) const {
  for (const auto& [idx, v] : entries_) accum[static_cast<size_t>(idx)] += scale * v;
}

double SparseVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& [idx, v] : entries_) sum += v * v;
  return sum;
}

BowVector vectorize(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
  BowVector v;
  for (const auto& tok : tokens) {
    int idx = vocab.index_of(tok);
    if (idx >= 0) v.add(idx, 1);
  }
  return v;
}

LexiconResult load_lexicon(std::istream& in, const Vocabulary& vocab) {
  LexiconResult result;
  result.theta.assign(static_cast<size_t>(vocab.size()), 0.0);
  std::vector<int> seen(static_cast<size_t>(vocab.size()), 0);  // +1/-1 polarity already set

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("lexicon line " + std::to_string(lineno) + ": expected word<TAB>polarity");
    std::string word = line.substr(0, tab);
    std::string polarity = line.substr(tab + 1);
    int value;
    if (polarity == "positive")
      value = 1;
    else if (polarity == "negative")
      value = -1;
    else
      throw ParseError("lexicon line " + std::to_string(lineno) + ": polarity must be 'positive' or 'negative', got '" +
                       polarity + "'");
    int idx = vocab.index_of(word);
    if (idx < 0) {
      ++result.ignored_out_of_vocab;
      continue;
    }
    size_t i = static_cast<size_t>(idx);
    if (seen[i] != 0 && seen[i] != value)
      throw DataError("lexicon line " + std::to_string(lineno) + ": conflicting polarity for '" + word + "'");
    seen[i] = value;
    result.theta[i] = value;
  }
  return result;
}

LexiconResult load_lexicon_file(const std::string& path, const Vocabulary& vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open lexicon file: " + path);
  return load_lexicon(in, vocab);
}

}  // namespace rhetsent
