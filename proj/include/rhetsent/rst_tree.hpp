#ifndef RHETSENT_RST_TREE_HPP
#define RHETSENT_RST_TREE_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rhetsent {

// Elementary discourse unit. Ids are document-local and run 1..N in
// left-to-right leaf order.
struct Edu {
  int id = 0;
  std::string text;

  bool operator==(const Edu&) const = default;
};

// A node of an RST constituency tree. Leaves hold EDUs; internal nodes are
// either nucleus-satellite pairs or multinuclear groups, labeled with a
// lowercase relation name. Children are stored in text order; for
// nucleus-satellite nodes `nucleus_index` says which child is the nucleus.
class RstNode {
 public:
  enum class Kind { Leaf, NucSat, Multi };

  static RstNode leaf(Edu edu);
  // `children` in text order; nucleus_index is 0 or 1.
  static RstNode nuc_sat(std::string relation, std::vector<RstNode> children, int nucleus_index);
  static RstNode multi(std::string relation, std::vector<RstNode> nuclei);

  Kind kind() const { return kind_; }
  bool is_leaf() const { return kind_ == Kind::Leaf; }

  const Edu& edu() const { return edu_; }
  const std::string& relation() const { return relation_; }
  std::span<const RstNode> children() const { return children_; }

  int nucleus_index() const { return nucleus_index_; }
  const RstNode& nucleus() const { return children_[static_cast<size_t>(nucleus_index_)]; }
  const RstNode& satellite() const { return children_[static_cast<size_t>(1 - nucleus_index_)]; }

  int leaf_count() const;
  bool operator==(const RstNode&) const = default;

 private:
  Kind kind_ = Kind::Leaf;
  Edu edu_;                // Leaf only
  std::string relation_;   // NucSat / Multi
  int nucleus_index_ = 0;  // NucSat only
  std::vector<RstNode> children_;
};

struct RstTree {
  RstNode root;
  int edu_count = 0;

  bool operator==(const RstTree&) const = default;
};

// Parses the s-expression tree format:
//   node := (edu <int> "<text>") | (ns <label> (n <node>) (s <node>))
//         | (multi <label> <node> <node>+)
// (n ...)(s ...) may appear in either order; `;` starts a line comment.
// Throws ParseError on syntax errors, id/leaf-order mismatches, and bad arity.
RstTree parse_rst(std::istream& in);
RstTree parse_rst(const std::string& text);
RstTree parse_rst_file(const std::string& path);

// Canonical serialization: single line, single spaces, children in text
// order, minimal escaping. parse(serialize(t)) == t, and serialization of a
// parsed tree is a fixed point.
std::string serialize_rst(const RstTree& tree);

// Invariant check; returns human-readable violations, empty when valid.
// Checks leaf ids 1..N in order, edu_count consistency, and node arities.
std::vector<std::string> validate(const RstTree& tree);

// EDU leaves in text order.
std::vector<const Edu*> collect_edus(const RstTree& tree);

}  // namespace rhetsent

#endif  // RHETSENT_RST_TREE_HPP
