#include "rhetsent/r2n2.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "rhetsent/error.hpp"

namespace rhetsent {

bool is_contrastive(const std::string& relation) {
  static const std::unordered_set<std::string> kSet = {
      "contrast",      "comparison", "antithesis",      "antithesis-e",
      "consequence-s", "concession", "problem-solution"};
  std::string lowered;
  lowered.reserve(relation.size());
  for (char c : relation)
    lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return kSet.count(lowered) > 0;
}

int classify_relation(const std::string& relation, RelationMode mode) {
  if (mode == RelationMode::NoRelations) return kSingleClass;
  return is_contrastive(relation) ? kContrastive : kNonContrastive;
}

namespace {

// Flattened preorder view of the tree: parents precede children, so a single
// reverse sweep evaluates psi bottom-up and a forward sweep backpropagates.
struct FlatNode {
  RstNode::Kind kind;
  int edu = 0;                          // Leaf
  const std::string* relation = nullptr;  // NucSat / Multi
  std::vector<int> children;            // flat indices
  int nucleus = -1, satellite = -1;     // NucSat
};

int flatten_rec(const RstNode& node, std::vector<FlatNode>& nodes) {
  int idx = static_cast<int>(nodes.size());
  nodes.emplace_back();
  nodes[static_cast<size_t>(idx)].kind = node.kind();
  if (node.is_leaf()) {
    nodes[static_cast<size_t>(idx)].edu = node.edu().id;
    return idx;
  }
  nodes[static_cast<size_t>(idx)].relation = &node.relation();
  std::vector<int> child_ids;
  for (const RstNode& c : node.children()) child_ids.push_back(flatten_rec(c, nodes));
  FlatNode& flat = nodes[static_cast<size_t>(idx)];
  flat.children = std::move(child_ids);
  if (node.kind() == RstNode::Kind::NucSat) {
    flat.nucleus = flat.children[static_cast<size_t>(node.nucleus_index())];
    flat.satellite = flat.children[static_cast<size_t>(1 - node.nucleus_index())];
  }
  return idx;
}

std::vector<FlatNode> flatten_tree(const RstTree& tree) {
  std::vector<FlatNode> nodes;
  flatten_rec(tree.root, nodes);
  return nodes;
}

}  // namespace

R2n2Forward r2n2_forward(const RstTree& tree, const R2n2Params& params,
                         const std::vector<BowVector>& edu_vectors) {
  std::vector<FlatNode> nodes = flatten_tree(tree);
  R2n2Forward fwd;
  fwd.node_psi.assign(nodes.size(), 0.0);

  for (size_t i = nodes.size(); i-- > 0;) {
    const FlatNode& node = nodes[i];
    double psi = 0.0;
    switch (node.kind) {
      case RstNode::Kind::Leaf:
        psi = edu_vectors[static_cast<size_t>(node.edu - 1)].dot(params.theta);
        break;
      case RstNode::Kind::NucSat: {
        int cls = classify_relation(*node.relation, params.mode);
        double pre = params.k_n[static_cast<size_t>(cls)] *
                         fwd.node_psi[static_cast<size_t>(node.nucleus)] +
                     params.k_s[static_cast<size_t>(cls)] *
                         fwd.node_psi[static_cast<size_t>(node.satellite)];
        psi = std::tanh(pre);
        break;
      }
      case RstNode::Kind::Multi: {
        int cls = classify_relation(*node.relation, params.mode);
        double pre = 0.0;
        for (int c : node.children)
          pre += params.k_n[static_cast<size_t>(cls)] * fwd.node_psi[static_cast<size_t>(c)];
        psi = std::tanh(pre);
        break;
      }
    }
    fwd.node_psi[i] = psi;
  }

  for (const BowVector& w : edu_vectors) fwd.bow_term += w.dot(params.theta);
  fwd.psi_doc = params.gamma * fwd.bow_term + fwd.node_psi[0];
  fwd.predicted_label = fwd.psi_doc >= 0.0 ? 1 : -1;
  return fwd;
}

R2n2Gradient r2n2_backward(const RstTree& tree, const R2n2Params& params,
                           const std::vector<BowVector>& edu_vectors, int label,
                           const R2n2Forward& forward) {
  R2n2Gradient grad;
  grad.theta.assign(params.theta.size(), 0.0);
  if (label * forward.psi_doc >= 1.0) return grad;  // hinge inactive (or at the kink)

  std::vector<FlatNode> nodes = flatten_tree(tree);
  double dpsi_doc = -static_cast<double>(label);

  grad.gamma = dpsi_doc * forward.bow_term;
  for (const BowVector& w : edu_vectors) w.add_scaled_to(grad.theta, dpsi_doc * params.gamma);

  std::vector<double> dpsi(nodes.size(), 0.0);
  dpsi[0] = dpsi_doc;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const FlatNode& node = nodes[i];
    switch (node.kind) {
      case RstNode::Kind::Leaf:
        edu_vectors[static_cast<size_t>(node.edu - 1)].add_scaled_to(grad.theta, dpsi[i]);
        break;
      case RstNode::Kind::NucSat: {
        size_t cls = static_cast<size_t>(classify_relation(*node.relation, params.mode));
        double psi = forward.node_psi[i];
        double dpre = dpsi[i] * (1.0 - psi * psi);
        size_t nuc = static_cast<size_t>(node.nucleus);
        size_t sat = static_cast<size_t>(node.satellite);
        grad.k_n[cls] += dpre * forward.node_psi[nuc];
        grad.k_s[cls] += dpre * forward.node_psi[sat];
        dpsi[nuc] += dpre * params.k_n[cls];
        dpsi[sat] += dpre * params.k_s[cls];
        break;
      }
      case RstNode::Kind::Multi: {
        size_t cls = static_cast<size_t>(classify_relation(*node.relation, params.mode));
        double psi = forward.node_psi[i];
        double dpre = dpsi[i] * (1.0 - psi * psi);
        for (int c : node.children) {
          grad.k_n[cls] += dpre * forward.node_psi[static_cast<size_t>(c)];
          dpsi[static_cast<size_t>(c)] += dpre * params.k_n[cls];
        }
        break;
      }
    }
  }
  return grad;
}

R2n2Params init_params(RelationMode mode, int vocab_size, const WeightVector* init_theta,
                       std::uint64_t seed) {
  R2n2Params params;
  params.mode = mode;
  params.k_n = {1.0, 1.0};
  params.k_s = {0.5, 0.5};
  params.gamma = 0.5;
  if (init_theta != nullptr) {
    params.theta = *init_theta;
  } else {
    params.theta.assign(static_cast<size_t>(vocab_size), 0.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-0.01, 0.01);
    for (double& t : params.theta) t = noise(rng);
  }
  return params;
}

double accuracy_r2n2(const R2n2Params& params, const std::vector<R2n2Doc>& docs) {
  if (docs.empty()) return 0.0;
  int correct = 0;
  for (const auto& d : docs) {
    R2n2Forward fwd = r2n2_forward(*d.tree, params, d.edu_vectors);
    if (fwd.predicted_label == d.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(docs.size());
}

R2n2TrainResult train_r2n2(const std::vector<R2n2Doc>& docs, const R2n2Params& init,
                           const R2n2TrainOptions& opts) {
  if (docs.empty()) throw DataError("empty training corpus");
  bool pos = false, neg = false;
  for (const auto& d : docs) (d.label > 0 ? pos : neg) = true;
  if (!pos || !neg) throw DataError("training data must contain both labels");

  std::vector<size_t> order(docs.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(opts.seed);
  std::shuffle(order.begin(), order.end(), rng);

  size_t heldout_n =
      static_cast<size_t>(opts.heldout_fraction * static_cast<double>(docs.size()));
  if (heldout_n >= docs.size()) heldout_n = docs.size() - 1;
  std::vector<R2n2Doc> heldout;
  std::vector<size_t> train_ids;
  for (size_t i = 0; i < order.size(); ++i) {
    if (i < heldout_n)
      heldout.push_back(docs[order[i]]);
    else
      train_ids.push_back(order[i]);
  }

  R2n2Params params = init;
  R2n2TrainResult result{init, 0, -1.0, 0};
  int since_best = 0;
  int active_classes = params.num_classes();

  for (int epoch = 1; epoch <= opts.epochs; ++epoch) {
    std::shuffle(train_ids.begin(), train_ids.end(), rng);
    for (size_t id : train_ids) {
      const R2n2Doc& doc = docs[id];
      R2n2Forward fwd = r2n2_forward(*doc.tree, params, doc.edu_vectors);
      if (!std::isfinite(fwd.psi_doc)) throw NumericError("non-finite document score during SGD");
      if (doc.label * fwd.psi_doc >= 1.0) continue;
      R2n2Gradient grad = r2n2_backward(*doc.tree, params, doc.edu_vectors, doc.label, fwd);
      for (int c = 0; c < active_classes; ++c) {
        params.k_n[static_cast<size_t>(c)] -= opts.lr * grad.k_n[static_cast<size_t>(c)];
        params.k_s[static_cast<size_t>(c)] -= opts.lr * grad.k_s[static_cast<size_t>(c)];
      }
      params.gamma -= opts.lr * grad.gamma;
      if (opts.train_theta)
        for (size_t j = 0; j < params.theta.size(); ++j)
          params.theta[j] -= opts.lr * grad.theta[j];
    }
    result.epochs_run = epoch;

    if (heldout.empty()) {
      result.params = params;
      result.best_epoch = epoch;
      continue;
    }
    double acc = accuracy_r2n2(params, heldout);
    if (acc > result.best_heldout_accuracy) {
      result.best_heldout_accuracy = acc;
      result.params = params;
      result.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= opts.patience) {
      break;
    }
  }
  if (result.best_epoch == 0) result.params = params;  // no held-out evaluation happened
  return result;
}

}  // namespace rhetsent
