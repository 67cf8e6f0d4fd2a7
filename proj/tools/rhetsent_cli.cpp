// rhetsent command-line tool: score, train, eval, depdt.
//
// TSV results go to stdout, logs and summaries to stderr.
// Exit codes: 0 ok, 2 usage/config, 3 data/IO, 4 numeric failure.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rhetsent/corpus.hpp"
#include "rhetsent/depdt.hpp"
#include "rhetsent/error.hpp"
#include "rhetsent/logreg.hpp"
#include "rhetsent/model_io.hpp"
#include "rhetsent/r2n2.hpp"
#include "rhetsent/scoring.hpp"

namespace {

using namespace rhetsent;

struct Options {
  std::string manifest;
  std::string trees = ".";
  std::string lexicon;
  std::string model_in;
  std::string model_out;
  std::string tree_file;  // depdt
  std::string mode = "flat";
  std::string relations = "on";
  std::string weight_train = "on";
  int cv = 0;
  std::uint64_t seed = 42;
  double lr = 0.01;
  int epochs = 30;
  int patience = 5;
  double heldout = 0.1;
  std::string reg_grid = "0.001,0.01,0.1,1";
  int min_count = 0;  // 0 -> per-command default
  bool skip_bad = false;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_reg_grid(const std::string& spec) {
  std::vector<double> grid;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      grid.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("bad --reg-grid entry: " + item);
    }
  }
  if (grid.empty()) throw ConfigError("empty --reg-grid");
  return grid;
}

Vocabulary build_corpus_vocab(const std::vector<Document>& docs, int min_count) {
  std::vector<std::vector<std::string>> token_lists;
  for (const Document& doc : docs)
    for (const auto& tokens : doc.edu_tokens) token_lists.push_back(tokens);
  return Vocabulary::build(token_lists, min_count);
}

// Classifier feature vector: sum_i w_i, or sum_i lambda_i w_i when weighted.
SparseVector doc_features(const Document& doc, const Vocabulary& vocab, bool depth_weighted) {
  SparseVector features;
  std::vector<BowVector> vectors = edu_bow_vectors(doc, vocab);
  if (depth_weighted) {
    DepDt dep = to_depdt(doc.tree);
    for (size_t i = 0; i < vectors.size(); ++i)
      features.add_scaled(vectors[i], depth_weight(dep.depth[i + 1]));
  } else {
    for (const BowVector& w : vectors) features.add_scaled(w, 1.0);
  }
  return features;
}

std::vector<Document> load_docs(const Options& opt) {
  if (opt.manifest.empty()) throw ConfigError("--manifest is required");
  LoadStats stats;
  std::vector<Document> docs = load_corpus_file(opt.manifest, opt.trees, opt.skip_bad, &stats);
  std::cerr << "loaded " << stats.loaded << " documents (" << stats.skipped_neutral
            << " neutral skipped, " << stats.skipped_bad << " bad skipped)\n";
  if (docs.empty()) throw DataError("no usable documents in manifest");
  return docs;
}

RelationMode relation_mode(const Options& opt) {
  if (opt.relations == "on") return RelationMode::WithRelations;
  if (opt.relations == "off") return RelationMode::NoRelations;
  throw ConfigError("--relations must be 'on' or 'off'");
}

// A scorer closed over whatever theta source the command line selected.
struct Scorer {
  std::string mode;              // flat | depth | r2n2
  WeightVector theta;            // flat/depth
  double bias = 0.0;             // logreg models only
  bool has_r2n2 = false;
  R2n2Params r2n2;

  double psi(const Document& doc, const Vocabulary& vocab) const {
    std::vector<BowVector> vectors = edu_bow_vectors(doc, vocab);
    if (mode == "r2n2") return r2n2_forward(doc.tree, r2n2, vectors).psi_doc;
    if (mode == "depth") {
      DepDt dep = to_depdt(doc.tree);
      return score_depth_weighted(vectors, dep.depth, theta).psi_doc + bias;
    }
    return score_flat(vectors, theta).psi_doc + bias;
  }

  int predict(const Document& doc, const Vocabulary& vocab) const {
    return sign_label(psi(doc, vocab));
  }
};

// Resolves vocabulary + scorer from --model-in or --lexicon.
std::pair<Vocabulary, Scorer> make_scorer(const Options& opt, const std::vector<Document>& docs) {
  Scorer scorer;
  scorer.mode = opt.mode;
  if (opt.mode != "flat" && opt.mode != "depth" && opt.mode != "r2n2")
    throw ConfigError("--mode must be flat, depth or r2n2");

  if (!opt.model_in.empty()) {
    SavedModel model = load_model_file(opt.model_in);
    if (opt.mode == "r2n2") {
      if (model.kind != SavedModel::Kind::R2n2)
        throw DataError("--mode r2n2 needs an r2n2 model, got a logreg model");
      scorer.has_r2n2 = true;
      scorer.r2n2 = model.r2n2_params();
    } else {
      scorer.theta = model.theta;
      scorer.bias = model.kind == SavedModel::Kind::LogReg ? model.bias : 0.0;
    }
    return {std::move(model.vocab), std::move(scorer)};
  }
  if (!opt.lexicon.empty()) {
    if (opt.mode == "r2n2") throw ConfigError("--mode r2n2 requires --model-in");
    int min_count = opt.min_count > 0 ? opt.min_count : 1;
    Vocabulary vocab = build_corpus_vocab(docs, min_count);
    LexiconResult lex = load_lexicon_file(opt.lexicon, vocab);
    if (lex.ignored_out_of_vocab > 0)
      std::cerr << "lexicon: " << lex.ignored_out_of_vocab << " words not in vocabulary\n";
    scorer.theta = std::move(lex.theta);
    return {std::move(vocab), std::move(scorer)};
  }
  throw ConfigError("supply --model-in or --lexicon");
}

// --- training -------------------------------------------------------------

struct TrainedModel {
  SavedModel saved;
  std::string summary;
};

TrainedModel train_on(const Options& opt, const std::vector<Document>& docs) {
  TrainedModel out;
  int min_count = opt.min_count > 0 ? opt.min_count : 2;
  Vocabulary vocab = build_corpus_vocab(docs, min_count);
  bool depth_features = opt.mode == "depth" && opt.weight_train == "on";

  std::vector<LabeledDoc> flat;
  flat.reserve(docs.size());
  for (const Document& doc : docs)
    flat.push_back({doc_features(doc, vocab, depth_features), doc.label});

  std::vector<double> grid = parse_reg_grid(opt.reg_grid);

  if (opt.mode == "flat" || opt.mode == "depth") {
    LogRegModel model = train_logreg(flat, vocab.size(), grid, std::max(opt.heldout, 0.05),
                                     opt.seed, {});
    out.saved.kind = SavedModel::Kind::LogReg;
    out.saved.seed = opt.seed;
    out.saved.vocab = std::move(vocab);
    out.saved.theta = std::move(model.theta);
    out.saved.bias = model.bias;
    out.saved.reg_coef = model.reg_coef;
    std::ostringstream summary;
    summary << "logreg: reg=" << model.reg_coef << " iters=" << model.iterations
            << " objective=" << model.final_objective;
    out.summary = summary.str();
    return out;
  }
  if (opt.mode != "r2n2") throw ConfigError("--mode must be flat, depth or r2n2");

  // Warm-start theta: supplied lexicon, else a pretrained flat classifier.
  WeightVector theta0;
  if (!opt.lexicon.empty()) {
    theta0 = load_lexicon_file(opt.lexicon, vocab).theta;
  } else {
    std::vector<LabeledDoc> plain;
    plain.reserve(docs.size());
    for (const Document& doc : docs) plain.push_back({doc_features(doc, vocab, false), doc.label});
    theta0 = train_logreg(plain, vocab.size(), grid, std::max(opt.heldout, 0.05), opt.seed, {})
                 .theta;
  }

  RelationMode mode = relation_mode(opt);
  R2n2Params init = init_params(mode, vocab.size(), &theta0, opt.seed);
  std::vector<R2n2Doc> r2n2_docs;
  r2n2_docs.reserve(docs.size());
  for (const Document& doc : docs)
    r2n2_docs.push_back({&doc.tree, edu_bow_vectors(doc, vocab), doc.label});

  R2n2TrainOptions train_opts;
  train_opts.lr = opt.lr;
  train_opts.epochs = opt.epochs;
  train_opts.patience = opt.patience;
  train_opts.heldout_fraction = opt.heldout;
  train_opts.seed = opt.seed;
  R2n2TrainResult result = train_r2n2(r2n2_docs, init, train_opts);

  out.saved.kind = SavedModel::Kind::R2n2;
  out.saved.seed = opt.seed;
  out.saved.vocab = std::move(vocab);
  out.saved.theta = result.params.theta;
  out.saved.mode = result.params.mode;
  out.saved.k_n = result.params.k_n;
  out.saved.k_s = result.params.k_s;
  out.saved.gamma = result.params.gamma;
  std::ostringstream summary;
  summary << "r2n2: epochs=" << result.epochs_run << " best_epoch=" << result.best_epoch
          << " heldout_acc=" << result.best_heldout_accuracy;
  out.summary = summary.str();
  return out;
}

// --- commands -------------------------------------------------------------

int cmd_score(const Options& opt) {
  std::vector<Document> docs = load_docs(opt);
  auto [vocab, scorer] = make_scorer(opt, docs);
  for (const Document& doc : docs) {
    double psi = scorer.psi(doc, vocab);
    std::cout << doc.id << "\t" << format_double(psi) << "\t" << sign_label(psi) << "\n";
  }
  return 0;
}

int cmd_train(const Options& opt) {
  if (opt.model_out.empty()) throw ConfigError("--model-out is required");
  std::vector<Document> docs = load_docs(opt);
  TrainedModel trained = train_on(opt, docs);
  save_model_file(trained.saved, opt.model_out);
  std::cerr << trained.summary << "\n";
  return 0;
}

int cmd_eval(const Options& opt) {
  std::vector<Document> docs = load_docs(opt);

  if (opt.cv == 0) {
    auto [vocab, scorer] = make_scorer(opt, docs);
    std::vector<Prediction> predictions, gold;
    for (const Document& doc : docs) {
      predictions.push_back({doc.id, scorer.predict(doc, vocab)});
      gold.push_back({doc.id, doc.label});
    }
    std::cout << "accuracy\t" << format_double(evaluate(predictions, gold)) << "\n";
    return 0;
  }

  FoldPlan plan = make_folds(docs.size(), opt.cv, opt.seed);
  double acc_sum = 0.0;
  for (int fold = 0; fold < plan.k; ++fold) {
    std::vector<Document> train_docs;
    std::vector<const Document*> test_docs;
    for (size_t i = 0; i < docs.size(); ++i) {
      if (plan.assignment[i] == fold)
        test_docs.push_back(&docs[i]);
      else
        train_docs.push_back(docs[i]);
    }
    Vocabulary vocab;
    Scorer scorer;
    if (!opt.lexicon.empty() && opt.mode != "r2n2") {
      auto [v, s] = make_scorer(opt, train_docs);
      vocab = std::move(v);
      scorer = std::move(s);
    } else {
      TrainedModel trained = train_on(opt, train_docs);
      vocab = std::move(trained.saved.vocab);
      scorer.mode = opt.mode;
      if (trained.saved.kind == SavedModel::Kind::R2n2) {
        scorer.has_r2n2 = true;
        scorer.r2n2.mode = trained.saved.mode;
        scorer.r2n2.k_n = trained.saved.k_n;
        scorer.r2n2.k_s = trained.saved.k_s;
        scorer.r2n2.gamma = trained.saved.gamma;
        scorer.r2n2.theta = trained.saved.theta;
      } else {
        scorer.theta = trained.saved.theta;
        scorer.bias = trained.saved.bias;
      }
    }
    std::vector<Prediction> predictions, gold;
    for (const Document* doc : test_docs) {
      predictions.push_back({doc->id, scorer.predict(*doc, vocab)});
      gold.push_back({doc->id, doc->label});
    }
    double acc = evaluate(predictions, gold);
    acc_sum += acc;
    std::cout << "fold\t" << fold << "\t" << format_double(acc) << "\n";
  }
  std::cout << "mean\t" << format_double(acc_sum / plan.k) << "\n";
  return 0;
}

int cmd_depdt(const Options& opt) {
  if (opt.tree_file.empty()) throw ConfigError("tree file argument is required");
  RstTree tree = parse_rst_file(opt.tree_file);
  std::vector<std::string> violations = validate(tree);
  if (!violations.empty()) throw DataError(opt.tree_file + ": " + violations.front());
  std::cout << depdt_to_tsv(to_depdt(tree));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discourse-structured document sentiment scoring"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--manifest", opt.manifest, "corpus manifest TSV");
    cmd->add_option("--trees", opt.trees, "root directory for tree/text paths");
    cmd->add_option("--lexicon", opt.lexicon, "sentiment lexicon TSV");
    cmd->add_option("--mode", opt.mode, "flat | depth | r2n2");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--min-count", opt.min_count, "vocabulary frequency cutoff");
    cmd->add_flag("--skip-bad", opt.skip_bad, "skip unreadable documents");
  };
  auto add_train_opts = [&](CLI::App* cmd) {
    cmd->add_option("--relations", opt.relations, "r2n2 relation split: on | off");
    cmd->add_option("--weight-train", opt.weight_train, "depth-weight training features: on | off");
    cmd->add_option("--lr", opt.lr, "r2n2 learning rate");
    cmd->add_option("--epochs", opt.epochs, "r2n2 epochs");
    cmd->add_option("--patience", opt.patience, "early-stopping patience");
    cmd->add_option("--heldout", opt.heldout, "held-out fraction for tuning");
    cmd->add_option("--reg-grid", opt.reg_grid, "comma-separated regularization grid");
  };

  CLI::App* score = app.add_subcommand("score", "score documents, one TSV line each");
  add_common(score);
  score->add_option("--model-in", opt.model_in, "trained model file");

  CLI::App* train = app.add_subcommand("train", "train a classifier or r2n2 model");
  add_common(train);
  add_train_opts(train);
  train->add_option("--model-out", opt.model_out, "output model file");

  CLI::App* eval = app.add_subcommand("eval", "accuracy report, optionally cross-validated");
  add_common(eval);
  add_train_opts(eval);
  eval->add_option("--model-in", opt.model_in, "trained model file");
  eval->add_option("--cv", opt.cv, "k-fold cross-validation");

  CLI::App* depdt = app.add_subcommand("depdt", "dump the dependency discourse tree as TSV");
  depdt->add_option("tree", opt.tree_file, "tree file (.rst.sexp)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (score->parsed()) return cmd_score(opt);
    if (train->parsed()) return cmd_train(opt);
    if (eval->parsed()) return cmd_eval(opt);
    if (depdt->parsed()) return cmd_depdt(opt);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
