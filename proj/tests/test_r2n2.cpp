#include <doctest.h>

#include <cmath>
#include <random>

#include "rhetsent/error.hpp"
#include "rhetsent/logreg.hpp"
#include "rhetsent/r2n2.hpp"
#include "testutil.hpp"

using namespace rhetsent;

namespace {

std::vector<R2n2Doc> to_r2n2_docs(const std::vector<testutil::SynthDoc>& synth,
                                  const Vocabulary& vocab) {
  std::vector<R2n2Doc> docs;
  for (const auto& s : synth) {
    R2n2Doc d;
    d.tree = &s.tree;
    d.label = s.label;
    for (const auto& toks : s.edu_tokens) d.edu_vectors.push_back(vectorize(toks, vocab));
    docs.push_back(std::move(d));
  }
  return docs;
}

Vocabulary synth_vocab(const testutil::SynthOptions& opts) {
  std::vector<std::string> tokens;
  for (int i = 0; i < opts.num_pos_words; ++i) tokens.push_back("pos" + std::to_string(i));
  for (int i = 0; i < opts.num_neg_words; ++i) tokens.push_back("neg" + std::to_string(i));
  for (int i = 0; i < opts.num_filler_words; ++i) tokens.push_back("fill" + std::to_string(i));
  return Vocabulary::from_tokens(tokens);
}

}  // namespace

TEST_CASE("relation classes") {
  CHECK(is_contrastive("contrast"));
  CHECK(is_contrastive("Antithesis-E"));
  CHECK(is_contrastive("concession"));
  CHECK(is_contrastive("problem-solution"));
  CHECK_FALSE(is_contrastive("elaboration"));
  CHECK_FALSE(is_contrastive("antithesis-x"));

  CHECK(classify_relation("contrast", RelationMode::WithRelations) == kContrastive);
  CHECK(classify_relation("elaboration", RelationMode::WithRelations) == kNonContrastive);
  CHECK(classify_relation("contrast", RelationMode::NoRelations) == kSingleClass);
  CHECK(classify_relation("elaboration", RelationMode::NoRelations) == kSingleClass);
}

TEST_CASE("single leaf forward") {
  RstTree tree = parse_rst(std::string("(edu 1 \"w\")"));
  R2n2Params p;
  p.theta = {0.3};
  p.gamma = 0.5;
  std::vector<BowVector> edus(1);
  edus[0].add(0, 1);
  R2n2Forward fwd = r2n2_forward(tree, p, edus);
  CHECK(fwd.node_psi == std::vector<double>{0.3});
  CHECK(fwd.bow_term == doctest::Approx(0.3));
  CHECK(fwd.psi_doc == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(fwd.predicted_label == 1);
}

TEST_CASE("nucleus-satellite composition with the satellite nulled") {
  RstTree tree = parse_rst(std::string("(ns cause (n (edu 1 \"a\")) (s (edu 2 \"b\")))"));
  R2n2Params p;
  p.theta = {0.5, -9.0};
  p.k_n = {1.0, 1.0};
  p.k_s = {0.0, 0.0};
  p.gamma = 0.0;
  std::vector<BowVector> edus(2);
  edus[0].add(0, 1);
  edus[1].add(1, 1);
  R2n2Forward fwd = r2n2_forward(tree, p, edus);
  CHECK(fwd.psi_doc == doctest::Approx(std::tanh(0.5)).epsilon(1e-12));
  REQUIRE(fwd.node_psi.size() == 3);
  CHECK(fwd.node_psi[0] == doctest::Approx(std::tanh(0.5)));

  // with K_s = 0 and gamma = 0 the satellite text cannot matter
  edus[1] = BowVector();
  edus[1].add(0, 7);
  CHECK(r2n2_forward(tree, p, edus).psi_doc == doctest::Approx(std::tanh(0.5)).epsilon(1e-12));
}

TEST_CASE("forward pass matches a plain recursive oracle") {
  testutil::Rng rng(73);
  testutil::TreeGenOptions opts;
  opts.max_edus = 60;
  for (int trial = 0; trial < 200; ++trial) {
    RstTree tree = testutil::random_tree(rng, opts);
    RelationMode mode = trial % 2 == 0 ? RelationMode::WithRelations : RelationMode::NoRelations;
    int dim = 12;
    R2n2Params p = testutil::random_params(rng, mode, dim);
    std::vector<BowVector> edus = testutil::random_edu_vectors(rng, tree.edu_count, dim);
    R2n2Forward fwd = r2n2_forward(tree, p, edus);
    double expected = testutil::oracle_psi_doc(tree, p, edus);
    CHECK(std::abs(fwd.psi_doc - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
    CHECK(fwd.predicted_label == (fwd.psi_doc >= 0 ? 1 : -1));

    // the root score is a tanh output whenever the tree has structure
    if (!tree.root.is_leaf()) CHECK(std::abs(fwd.node_psi[0]) < 1.0);
  }
}

TEST_CASE("relation modes agree when the scalars are shared") {
  testutil::Rng rng(79);
  testutil::TreeGenOptions opts;
  opts.max_edus = 30;
  for (int trial = 0; trial < 100; ++trial) {
    RstTree tree = testutil::random_tree(rng, opts);
    int dim = 8;
    R2n2Params with = testutil::random_params(rng, RelationMode::WithRelations, dim);
    with.k_n[1] = with.k_n[0];
    with.k_s[1] = with.k_s[0];
    R2n2Params without = with;
    without.mode = RelationMode::NoRelations;
    std::vector<BowVector> edus = testutil::random_edu_vectors(rng, tree.edu_count, dim);
    CHECK(r2n2_forward(tree, with, edus).psi_doc == r2n2_forward(tree, without, edus).psi_doc);
  }
}

TEST_CASE("hinge loss basics") {
  CHECK(hinge_loss(1, 2.0) == 0.0);
  CHECK(hinge_loss(1, 0.0) == 1.0);
  CHECK(hinge_loss(-1, 0.5) == 1.5);
  CHECK(hinge_loss(1, 1.0) == 0.0);
}

TEST_CASE("backward pass matches finite differences") {
  testutil::Rng rng(83);
  testutil::TreeGenOptions opts;
  opts.max_edus = 25;
  int checked = 0;
  while (checked < 60) {
    RstTree tree = testutil::random_tree(rng, opts);
    RelationMode mode = checked % 2 == 0 ? RelationMode::WithRelations : RelationMode::NoRelations;
    int dim = 10;
    R2n2Params p = testutil::random_params(rng, mode, dim);
    std::vector<BowVector> edus = testutil::random_edu_vectors(rng, tree.edu_count, dim);
    int label = rng() % 2 == 0 ? 1 : -1;
    double worst = testutil::max_gradient_rel_error(tree, p, edus, label, 1e-6, 1e-3);
    if (worst < 0.0) continue;  // too close to the hinge kink for differencing
    CHECK(worst <= 1e-4);
    ++checked;
  }
}

TEST_CASE("backward pass is zero when the hinge is inactive") {
  RstTree tree = parse_rst(std::string("(ns cause (n (edu 1 \"a\")) (s (edu 2 \"b\")))"));
  R2n2Params p;
  p.theta = {5.0, 1.0};
  p.gamma = 1.0;
  std::vector<BowVector> edus(2);
  edus[0].add(0, 1);
  edus[1].add(1, 1);
  R2n2Forward fwd = r2n2_forward(tree, p, edus);
  REQUIRE(fwd.psi_doc > 1.0);
  R2n2Gradient g = r2n2_backward(tree, p, edus, 1, fwd);
  CHECK(g.gamma == 0.0);
  CHECK(g.k_n == std::array<double, 2>{0.0, 0.0});
  CHECK(g.k_s == std::array<double, 2>{0.0, 0.0});
  for (double t : g.theta) CHECK(t == 0.0);
}

TEST_CASE("initial parameters") {
  WeightVector warm = {0.1, -0.2, 0.3};
  R2n2Params p = init_params(RelationMode::WithRelations, 3, &warm, 9);
  CHECK(p.k_n == std::array<double, 2>{1.0, 1.0});
  CHECK(p.k_s == std::array<double, 2>{0.5, 0.5});
  CHECK(p.gamma == 0.5);
  CHECK(p.theta == warm);

  R2n2Params a = init_params(RelationMode::NoRelations, 50, nullptr, 9);
  R2n2Params b = init_params(RelationMode::NoRelations, 50, nullptr, 9);
  R2n2Params c = init_params(RelationMode::NoRelations, 50, nullptr, 10);
  CHECK(a.theta == b.theta);
  CHECK(a.theta != c.theta);
  for (double t : a.theta) {
    CHECK(t >= -0.01);
    CHECK(t <= 0.01);
  }
}

TEST_CASE("zero learning rate leaves the parameters unchanged") {
  testutil::SynthOptions sopts;
  sopts.num_docs = 40;
  auto synth = testutil::synthetic_corpus(sopts);
  Vocabulary vocab = synth_vocab(sopts);
  std::vector<R2n2Doc> docs = to_r2n2_docs(synth, vocab);

  R2n2Params init = init_params(RelationMode::WithRelations, vocab.size(), nullptr, 3);
  R2n2TrainOptions topts;
  topts.lr = 0.0;
  topts.epochs = 3;
  topts.seed = 3;
  R2n2TrainResult res = train_r2n2(docs, init, topts);
  CHECK(res.params.theta == init.theta);
  CHECK(res.params.k_n == init.k_n);
  CHECK(res.params.k_s == init.k_s);
  CHECK(res.params.gamma == init.gamma);
}

TEST_CASE("a small step on one document lowers its loss") {
  testutil::Rng rng(89);
  testutil::TreeGenOptions opts;
  opts.max_edus = 15;
  int checked = 0;
  while (checked < 30) {
    RstTree tree = testutil::random_tree(rng, opts);
    int dim = 8;
    R2n2Params p = testutil::random_params(rng, RelationMode::WithRelations, dim);
    std::vector<BowVector> edus = testutil::random_edu_vectors(rng, tree.edu_count, dim);
    int label = rng() % 2 == 0 ? 1 : -1;
    R2n2Forward fwd = r2n2_forward(tree, p, edus);
    double before = hinge_loss(label, fwd.psi_doc);
    if (before < 1e-3) continue;  // already satisfied: nothing to improve
    R2n2Gradient g = r2n2_backward(tree, p, edus, label, fwd);
    double lr = 1e-3;
    for (int c = 0; c < 2; ++c) {
      p.k_n[static_cast<size_t>(c)] -= lr * g.k_n[static_cast<size_t>(c)];
      p.k_s[static_cast<size_t>(c)] -= lr * g.k_s[static_cast<size_t>(c)];
    }
    p.gamma -= lr * g.gamma;
    for (size_t j = 0; j < p.theta.size(); ++j) p.theta[j] -= lr * g.theta[j];
    double after = hinge_loss(label, r2n2_forward(tree, p, edus).psi_doc);
    CHECK(after < before);
    ++checked;
  }
}

TEST_CASE("training rejects degenerate corpora") {
  R2n2TrainOptions topts;
  CHECK_THROWS_AS(train_r2n2({}, R2n2Params{}, topts), DataError);

  testutil::SynthOptions sopts;
  sopts.num_docs = 10;
  auto synth = testutil::synthetic_corpus(sopts);
  Vocabulary vocab = synth_vocab(sopts);
  std::vector<R2n2Doc> docs = to_r2n2_docs(synth, vocab);
  for (auto& d : docs) d.label = 1;
  R2n2Params init = init_params(RelationMode::WithRelations, vocab.size(), nullptr, 1);
  CHECK_THROWS_AS(train_r2n2(docs, init, topts), DataError);
}

TEST_CASE("training is deterministic and beats a flat bag of words") {
  testutil::SynthOptions sopts;
  sopts.num_docs = 400;
  auto synth = testutil::synthetic_corpus(sopts);
  Vocabulary vocab = synth_vocab(sopts);
  std::vector<R2n2Doc> docs = to_r2n2_docs(synth, vocab);

  // flat classifier baseline on summed bags
  std::vector<LabeledDoc> flat_docs;
  for (const R2n2Doc& d : docs) {
    BowVector sum;
    for (const BowVector& w : d.edu_vectors) sum.add(w);
    flat_docs.push_back(LabeledDoc{SparseVector(sum), d.label});
  }
  LogRegModel flat = train_logreg(flat_docs, vocab.size(), {0.001, 0.01, 0.1, 1.0}, 0.1, 42);
  double flat_acc = accuracy_logreg(flat, flat_docs);

  R2n2Params init = init_params(RelationMode::WithRelations, vocab.size(), &flat.theta, 42);
  R2n2TrainOptions topts;
  topts.seed = 42;
  R2n2TrainResult a = train_r2n2(docs, init, topts);
  R2n2TrainResult b = train_r2n2(docs, init, topts);
  CHECK(a.params.theta == b.params.theta);
  CHECK(a.params.k_n == b.params.k_n);
  CHECK(a.best_epoch == b.best_epoch);

  double r2n2_acc = accuracy_r2n2(a.params, docs);
  CHECK(r2n2_acc > flat_acc);
  CHECK(r2n2_acc > 0.8);
}
