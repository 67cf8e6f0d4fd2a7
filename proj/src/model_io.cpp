#include "rhetsent/model_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rhetsent/error.hpp"

namespace rhetsent {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

R2n2Params SavedModel::r2n2_params() const {
  R2n2Params p;
  p.mode = mode;
  p.k_n = k_n;
  p.k_s = k_s;
  p.gamma = gamma;
  p.theta = theta;
  return p;
}

namespace {

constexpr const char* kMagic = "rhetsent-model";
constexpr int kVersion = 1;

double parse_double(const std::string& s, const std::string& context) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("model file: " + context + ": bad number '" + s + "'");
  }
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(const std::string& what) {
    std::string line;
    if (!std::getline(in_, line))
      throw ParseError("model file: unexpected end of file, expected " + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  // `key value` line; returns value.
  std::string field(const std::string& key) {
    std::string line = next("'" + key + "'");
    if (line.rfind(key + " ", 0) != 0)
      throw ParseError("model file: expected '" + key + " ...', got '" + line + "'");
    return line.substr(key.size() + 1);
  }

  void literal(const std::string& expected) {
    std::string line = next("'" + expected + "'");
    if (line != expected)
      throw ParseError("model file: expected '" + expected + "', got '" + line + "'");
  }

 private:
  std::istream& in_;
};

}  // namespace

void save_model(const SavedModel& model, std::ostream& out) {
  out << kMagic << "\n";
  out << "version " << kVersion << "\n";
  out << "kind " << (model.kind == SavedModel::Kind::LogReg ? "logreg" : "r2n2") << "\n";
  out << "seed " << model.seed << "\n";
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, model.vocab.hash());
  out << "vocab-hash " << hash << "\n";
  out << "[vocab]\n";
  out << "count " << model.vocab.size() << "\n";
  for (const std::string& tok : model.vocab.tokens()) out << tok << "\n";
  out << "[theta]\n";
  for (double t : model.theta) out << format_double(t) << "\n";
  if (model.kind == SavedModel::Kind::LogReg) {
    out << "[logreg]\n";
    out << "bias " << format_double(model.bias) << "\n";
    out << "reg " << format_double(model.reg_coef) << "\n";
  } else {
    out << "[r2n2]\n";
    out << "mode " << (model.mode == RelationMode::WithRelations ? "relations" : "no-relations")
        << "\n";
    out << "kn " << format_double(model.k_n[0]) << " " << format_double(model.k_n[1]) << "\n";
    out << "ks " << format_double(model.k_s[0]) << " " << format_double(model.k_s[1]) << "\n";
    out << "gamma " << format_double(model.gamma) << "\n";
  }
  out << "[end]\n";
}

void save_model_file(const SavedModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file: " + path);
  save_model(model, out);
  if (!out) throw DataError("error while writing model file: " + path);
}

SavedModel load_model(std::istream& in) {
  LineReader reader(in);
  reader.literal(kMagic);
  std::string version = reader.field("version");
  if (version != std::to_string(kVersion))
    throw ParseError("model file: unsupported version '" + version + "'");

  SavedModel model;
  std::string kind = reader.field("kind");
  if (kind == "logreg")
    model.kind = SavedModel::Kind::LogReg;
  else if (kind == "r2n2")
    model.kind = SavedModel::Kind::R2n2;
  else
    throw ParseError("model file: unknown kind '" + kind + "'");
  model.seed = std::stoull(reader.field("seed"));
  std::string recorded_hash = reader.field("vocab-hash");

  reader.literal("[vocab]");
  int count = std::stoi(reader.field("count"));
  std::vector<std::string> tokens;
  tokens.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) tokens.push_back(reader.next("vocabulary token"));
  model.vocab = Vocabulary::from_tokens(std::move(tokens));
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, model.vocab.hash());
  if (recorded_hash != hash)
    throw ParseError("model file: vocabulary hash mismatch (file corrupted?)");

  reader.literal("[theta]");
  model.theta.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    model.theta.push_back(parse_double(reader.next("theta value"), "theta"));

  std::string section = reader.next("parameter section");
  if (section == "[logreg]") {
    if (model.kind != SavedModel::Kind::LogReg)
      throw ParseError("model file: [logreg] section in r2n2 model");
    model.bias = parse_double(reader.field("bias"), "bias");
    model.reg_coef = parse_double(reader.field("reg"), "reg");
  } else if (section == "[r2n2]") {
    if (model.kind != SavedModel::Kind::R2n2)
      throw ParseError("model file: [r2n2] section in logreg model");
    std::string mode = reader.field("mode");
    if (mode == "relations")
      model.mode = RelationMode::WithRelations;
    else if (mode == "no-relations")
      model.mode = RelationMode::NoRelations;
    else
      throw ParseError("model file: unknown mode '" + mode + "'");
    const std::pair<const char*, std::array<double, 2>*> kmaps[] = {{"kn", &model.k_n},
                                                                    {"ks", &model.k_s}};
    for (const auto& [key, target] : kmaps) {
      std::string value = reader.field(key);
      std::istringstream parts(value);
      std::string a, b;
      if (!(parts >> a >> b)) throw ParseError(std::string("model file: bad ") + key + " line");
      (*target)[0] = parse_double(a, key);
      (*target)[1] = parse_double(b, key);
    }
    model.gamma = parse_double(reader.field("gamma"), "gamma");
  } else {
    throw ParseError("model file: unexpected section '" + section + "'");
  }
  reader.literal("[end]");
  return model;
}

SavedModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path);
  try {
    return load_model(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace rhetsent
