#include "rhetsent/rst_tree.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include "rhetsent/error.hpp"

namespace rhetsent {

RstNode RstNode::leaf(Edu edu) {
  RstNode n;
  n.kind_ = Kind::Leaf;
  n.edu_ = std::move(edu);
  return n;
}

RstNode RstNode::nuc_sat(std::string relation, std::vector<RstNode> children, int nucleus_index) {
  RstNode n;
  n.kind_ = Kind::NucSat;
  n.relation_ = std::move(relation);
  n.children_ = std::move(children);
  n.nucleus_index_ = nucleus_index;
  return n;
}

RstNode RstNode::multi(std::string relation, std::vector<RstNode> nuclei) {
  RstNode n;
  n.kind_ = Kind::Multi;
  n.relation_ = std::move(relation);
  n.children_ = std::move(nuclei);
  return n;
}

int RstNode::leaf_count() const {
  if (is_leaf()) return 1;
  int total = 0;
  for (const RstNode& c : children_) total += c.leaf_count();
  return total;
}

namespace {

// --- tokenizer ------------------------------------------------------------

struct Token {
  enum class Type { LParen, RParen, Atom, String, End };
  Type type;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(std::istream& in) : in_(in) {}

  Token next() {
    skip_ws_and_comments();
    int line = line_, col = col_;
    int c = peek();
    if (c == EOF) return {Token::Type::End, "", line, col};
    if (c == '(') {
      get();
      return {Token::Type::LParen, "(", line, col};
    }
    if (c == ')') {
      get();
      return {Token::Type::RParen, ")", line, col};
    }
    if (c == '"') return lex_string(line, col);
    std::string atom;
    while (c != EOF && !std::isspace(c) && c != '(' && c != ')' && c != '"' && c != ';') {
      atom.push_back(static_cast<char>(get()));
      c = peek();
    }
    return {Token::Type::Atom, atom, line, col};
  }

 private:
  Token lex_string(int line, int col) {
    get();  // opening quote
    std::string s;
    for (;;) {
      int c = get();
      if (c == EOF) throw ParseError("unterminated string", line, col);
      if (c == '"') break;
      if (c == '\\') {
        int e = get();
        if (e == '"' || e == '\\') {
          s.push_back(static_cast<char>(e));
        } else {
          throw ParseError("invalid escape in string", line_, col_);
        }
      } else {
        s.push_back(static_cast<char>(c));
      }
    }
    return {Token::Type::String, s, line, col};
  }

  void skip_ws_and_comments() {
    for (;;) {
      int c = peek();
      if (c == ';') {
        while (c != EOF && c != '\n') c = get();
      } else if (c != EOF && std::isspace(c)) {
        get();
      } else {
        return;
      }
    }
  }

  int peek() { return in_.peek(); }

  int get() {
    int c = in_.get();
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if (c != EOF) {
      ++col_;
    }
    return c;
  }

  std::istream& in_;
  int line_ = 1;
  int col_ = 1;
};

// --- parser ---------------------------------------------------------------

std::string to_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

class Parser {
 public:
  explicit Parser(std::istream& in) : lexer_(in) { advance(); }

  RstTree parse_tree() {
    RstNode root = parse_node();
    if (tok_.type != Token::Type::End)
      throw ParseError("trailing content after tree", tok_.line, tok_.col);
    RstTree tree{std::move(root), next_edu_id_ - 1};
    return tree;
  }

 private:
  RstNode parse_node() {
    expect(Token::Type::LParen, "expected '('");
    Token head = expect(Token::Type::Atom, "expected node keyword");
    std::string kw = to_lower(head.text);
    if (kw == "edu") return finish_edu(head);
    if (kw == "ns") return finish_nuc_sat(head);
    if (kw == "multi") return finish_multi(head);
    throw ParseError("unknown node keyword '" + head.text + "'", head.line, head.col);
  }

  RstNode finish_edu(const Token& head) {
    Token id_tok = expect(Token::Type::Atom, "expected EDU id");
    int id = 0;
    try {
      size_t pos = 0;
      id = std::stoi(id_tok.text, &pos);
      if (pos != id_tok.text.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError("EDU id must be an integer, got '" + id_tok.text + "'", id_tok.line,
                       id_tok.col);
    }
    Token text_tok = expect(Token::Type::String, "expected EDU text string");
    expect(Token::Type::RParen, "expected ')'");
    if (id != next_edu_id_)
      throw ParseError("EDU id " + std::to_string(id) + " does not match leaf position " +
                           std::to_string(next_edu_id_),
                       head.line, head.col);
    ++next_edu_id_;
    return RstNode::leaf(Edu{id, text_tok.text});
  }

  RstNode finish_nuc_sat(const Token& head) {
    Token label = expect(Token::Type::Atom, "expected relation label");
    auto [first_role, first] = parse_role_child();
    auto [second_role, second] = parse_role_child();
    expect(Token::Type::RParen, "expected ')'");
    if (first_role == second_role)
      throw ParseError("ns node needs one (n ...) and one (s ...) child", head.line, head.col);
    std::vector<RstNode> children;
    children.push_back(std::move(first));
    children.push_back(std::move(second));
    int nucleus_index = first_role == 'n' ? 0 : 1;
    return RstNode::nuc_sat(to_lower(label.text), std::move(children), nucleus_index);
  }

  std::pair<char, RstNode> parse_role_child() {
    Token open = expect(Token::Type::LParen, "expected '(n ...)' or '(s ...)'");
    Token role = expect(Token::Type::Atom, "expected 'n' or 's'");
    std::string r = to_lower(role.text);
    if (r != "n" && r != "s")
      throw ParseError("expected role 'n' or 's', got '" + role.text + "'", role.line, role.col);
    RstNode child = parse_node();
    expect(Token::Type::RParen, "expected ')' after role child");
    (void)open;
    return {r[0], std::move(child)};
  }

  RstNode finish_multi(const Token& head) {
    Token label = expect(Token::Type::Atom, "expected relation label");
    std::vector<RstNode> children;
    while (tok_.type == Token::Type::LParen) children.push_back(parse_node());
    expect(Token::Type::RParen, "expected ')'");
    if (children.size() < 2)
      throw ParseError("multi node needs at least 2 children", head.line, head.col);
    return RstNode::multi(to_lower(label.text), std::move(children));
  }

  Token expect(Token::Type type, const char* what) {
    if (tok_.type != type) throw ParseError(std::string(what), tok_.line, tok_.col);
    Token t = tok_;
    advance();
    return t;
  }

  void advance() { tok_ = lexer_.next(); }

  Lexer lexer_;
  Token tok_;
  int next_edu_id_ = 1;
};

// --- serialization --------------------------------------------------------

void escape_into(const std::string& s, std::string& out) {
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
}

void serialize_node(const RstNode& node, std::string& out) {
  switch (node.kind()) {
    case RstNode::Kind::Leaf:
      out += "(edu ";
      out += std::to_string(node.edu().id);
      out += " \"";
      escape_into(node.edu().text, out);
      out += "\")";
      break;
    case RstNode::Kind::NucSat: {
      out += "(ns ";
      out += node.relation();
      for (int i = 0; i < 2; ++i) {
        out.push_back(' ');
        out.push_back('(');
        out.push_back(i == node.nucleus_index() ? 'n' : 's');
        out.push_back(' ');
        serialize_node(node.children()[static_cast<size_t>(i)], out);
        out.push_back(')');
      }
      out.push_back(')');
      break;
    }
    case RstNode::Kind::Multi:
      out += "(multi ";
      out += node.relation();
      for (const RstNode& c : node.children()) {
        out.push_back(' ');
        serialize_node(c, out);
      }
      out.push_back(')');
      break;
  }
}

void collect_edus_rec(const RstNode& node, std::vector<const Edu*>& out) {
  if (node.is_leaf()) {
    out.push_back(&node.edu());
    return;
  }
  for (const RstNode& c : node.children()) collect_edus_rec(c, out);
}

void validate_node(const RstNode& node, std::vector<std::string>& violations) {
  switch (node.kind()) {
    case RstNode::Kind::Leaf:
      break;
    case RstNode::Kind::NucSat:
      if (node.children().size() != 2)
        violations.push_back("ns node has " + std::to_string(node.children().size()) +
                             " children, expected 2");
      if (node.relation().empty()) violations.push_back("ns node with empty relation label");
      break;
    case RstNode::Kind::Multi:
      if (node.children().size() < 2)
        violations.push_back("multi node has " + std::to_string(node.children().size()) +
                             " children, expected >= 2");
      if (node.relation().empty()) violations.push_back("multi node with empty relation label");
      break;
  }
  for (const RstNode& c : node.children()) validate_node(c, violations);
}

}  // namespace

RstTree parse_rst(std::istream& in) {
  Parser parser(in);
  return parser.parse_tree();
}

RstTree parse_rst(const std::string& text) {
  std::istringstream in(text);
  return parse_rst(in);
}

RstTree parse_rst_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open tree file: " + path);
  try {
    return parse_rst(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string serialize_rst(const RstTree& tree) {
  std::string out;
  serialize_node(tree.root, out);
  out.push_back('\n');
  return out;
}

std::vector<const Edu*> collect_edus(const RstTree& tree) {
  std::vector<const Edu*> out;
  collect_edus_rec(tree.root, out);
  return out;
}

std::vector<std::string> validate(const RstTree& tree) {
  std::vector<std::string> violations;
  validate_node(tree.root, violations);
  std::vector<const Edu*> edus;
  collect_edus_rec(tree.root, edus);
  for (size_t i = 0; i < edus.size(); ++i) {
    int expected = static_cast<int>(i) + 1;
    if (edus[i]->id != expected)
      violations.push_back("EDU at leaf position " + std::to_string(expected) + " has id " +
                           std::to_string(edus[i]->id));
  }
  if (tree.edu_count != static_cast<int>(edus.size()))
    violations.push_back("edu_count " + std::to_string(tree.edu_count) + " != leaf count " +
                         std::to_string(edus.size()));
  return violations;
}

}  // namespace rhetsent
