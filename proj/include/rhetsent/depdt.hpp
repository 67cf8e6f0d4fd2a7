#ifndef RHETSENT_DEPDT_HPP
#define RHETSENT_DEPDT_HPP

#include <string>
#include <vector>

#include "rhetsent/rst_tree.hpp"

namespace rhetsent {

// Dependency-based discourse tree: a rooted tree over the EDUs of a document.
// The head EDU has depth 0 and no parent; every other EDU points at the EDU
// that heads the relation it attaches under.
struct DepDt {
  int head_edu = 0;
  // Indexed by EDU id (slot 0 unused). parent[head_edu] == 0.
  std::vector<int> parent;
  std::vector<int> depth;
  // Relation the EDU attaches under; empty for the head.
  std::vector<std::string> relation_to_parent;

  int edu_count() const { return static_cast<int>(parent.size()) - 1; }
};

// Converts an RST constituency tree to its DEP-DT by propagating head
// (nucleus) information up the tree:
//   - head of a nucleus-satellite node is the head of its nucleus;
//   - head of a multinuclear node is the head of its leftmost child, and
//     the heads of the remaining children attach at the same point as the
//     leftmost head, wherever that turns out to be;
//   - a satellite's head (together with any co-attaching multinuclear heads
//     it carries) hangs off the head of the governing nucleus.
// Heads still unattached at the document root hang off the document head.
DepDt to_depdt(const RstTree& tree);

// Depth map keyed by EDU id (slot 0 unused); depths(d)[e] == d.depth[e].
std::vector<int> depths(const DepDt& dep);

// TSV dump, one EDU per line: edu_id, parent_id or '-', depth, relation or '-'.
std::string depdt_to_tsv(const DepDt& dep);

}  // namespace rhetsent

#endif  // RHETSENT_DEPDT_HPP
