#include "rhetsent/depdt.hpp"

#include <deque>

namespace rhetsent {

namespace {

// An EDU that heads a multinuclear sibling group and is waiting for the
// attachment point of the group's leftmost head.
struct Pending {
  int edu;
  std::string relation;
};

struct SubtreeHead {
  int head;
  std::vector<Pending> pending;
};

struct Builder {
  DepDt dep;

  void attach(int parent, int child, const std::string& relation) {
    dep.parent[static_cast<size_t>(child)] = parent;
    dep.relation_to_parent[static_cast<size_t>(child)] = relation;
  }

  SubtreeHead convert(const RstNode& node) {
    switch (node.kind()) {
      case RstNode::Kind::Leaf:
        return {node.edu().id, {}};
      case RstNode::Kind::NucSat: {
        SubtreeHead nuc = convert(node.nucleus());
        SubtreeHead sat = convert(node.satellite());
        attach(nuc.head, sat.head, node.relation());
        // Heads riding along with the satellite attach beside it.
        for (const Pending& p : sat.pending) attach(nuc.head, p.edu, p.relation);
        return {nuc.head, std::move(nuc.pending)};
      }
      case RstNode::Kind::Multi: {
        SubtreeHead result = convert(node.children().front());
        for (size_t i = 1; i < node.children().size(); ++i) {
          SubtreeHead child = convert(node.children()[i]);
          result.pending.push_back({child.head, node.relation()});
          for (Pending& p : child.pending) result.pending.push_back(std::move(p));
        }
        return result;
      }
    }
    return {0, {}};  // unreachable
  }
};

}  // namespace

DepDt to_depdt(const RstTree& tree) {
  Builder b;
  size_t n = static_cast<size_t>(tree.edu_count) + 1;
  b.dep.parent.assign(n, 0);
  b.dep.depth.assign(n, 0);
  b.dep.relation_to_parent.assign(n, "");

  SubtreeHead root = b.convert(tree.root);
  b.dep.head_edu = root.head;
  for (const Pending& p : root.pending) b.attach(root.head, p.edu, p.relation);

  // Depths by traversal from the head.
  std::vector<std::vector<int>> children(n);
  for (int e = 1; e <= tree.edu_count; ++e)
    if (e != root.head) children[static_cast<size_t>(b.dep.parent[static_cast<size_t>(e)])].push_back(e);
  std::deque<int> queue{root.head};
  while (!queue.empty()) {
    int e = queue.front();
    queue.pop_front();
    for (int c : children[static_cast<size_t>(e)]) {
      b.dep.depth[static_cast<size_t>(c)] = b.dep.depth[static_cast<size_t>(e)] + 1;
      queue.push_back(c);
    }
  }
  return b.dep;
}

std::vector<int> depths(const DepDt& dep) { return dep.depth; }

std::string depdt_to_tsv(const DepDt& dep) {
  std::string out;
  for (int e = 1; e <= dep.edu_count(); ++e) {
    size_t i = static_cast<size_t>(e);
    out += std::to_string(e);
    out.push_back('\t');
    out += e == dep.head_edu ? "-" : std::to_string(dep.parent[i]);
    out.push_back('\t');
    out += std::to_string(dep.depth[i]);
    out.push_back('\t');
    out += dep.relation_to_parent[i].empty() ? "-" : dep.relation_to_parent[i];
    out.push_back('\n');
  }
  return out;
}

}  // namespace rhetsent
