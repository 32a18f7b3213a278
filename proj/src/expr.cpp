#include "quatrace/expr.hpp"

#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "quatrace/error.hpp"

namespace quatrace {

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos));
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos == s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool consume(const std::string& lit) {
    skip_ws();
    if (s.compare(pos, lit.size(), lit) != 0) return false;
    pos += lit.size();
    return true;
  }
  int digits() {
    size_t start = pos;
    long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      if (v > 1'000'000) fail("index out of range");
      ++pos;
    }
    if (pos == start) fail("expected digits");
    return static_cast<int>(v);
  }

  ExprNode product(char closer) {
    ExprNode node;
    node.kind = ExprNode::kProduct;
    for (;;) {
      char c = peek();
      if (c == '\0' || c == closer) break;
      if (c == ')' || c == ']') fail("unexpected closing bracket");
      node.children.push_back(factor());
    }
    if (node.children.empty()) fail("expected a matrix symbol or bracket");
    return node;
  }

  ExprNode factor() {
    if (consume("Re(")) {
      ExprNode node = product(')');
      if (!consume(")")) fail("expected ')'");
      ExprNode wrap;
      wrap.kind = ExprNode::kRe;
      wrap.children.push_back(std::move(node));
      return wrap;
    }
    if (consume("tr(")) {
      ExprNode node = product(')');
      if (!consume(")")) fail("expected ')'");
      ExprNode wrap;
      wrap.kind = ExprNode::kTr;
      wrap.children.push_back(std::move(node));
      return wrap;
    }
    skip_ws();
    if (pos >= s.size() || !std::isupper(static_cast<unsigned char>(s[pos])))
      fail("expected a matrix symbol or bracket");
    char letter = s[pos++];
    ExprNode sym;
    sym.kind = ExprNode::kSymbol;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      sym.written = digits();
      if (sym.written < 1) fail("symbol index must be at least 1");
      sym.name = std::string(1, letter) + std::to_string(sym.written);
      if (pos < s.size() && s[pos] == '*') {
        sym.starred = true;
        ++pos;
      }
      if (pos < s.size() && s[pos] == '[') {
        ++pos;
        sym.color = digits();
        if (sym.color < 1) fail("color must be at least 1");
        if (pos >= s.size() || s[pos] != ']') fail("expected ']'");
        ++pos;
      }
      return sym;
    }
    if (letter == 'I') {
      if (pos < s.size() && (s[pos] == '*' || s[pos] == '['))
        fail("identity slots take no star or color");
      sym.name = "I";
      return sym;
    }
    fail("expected digits after the matrix letter");
  }
};

void check_numbers(const ExprNode& node, std::set<int>& seen) {
  if (node.kind == ExprNode::kSymbol) {
    if (node.written != 0 && !seen.insert(node.written).second)
      throw ParseError("duplicate symbol index " + node.name);
    return;
  }
  for (const ExprNode& c : node.children) check_numbers(c, seen);
}

struct FlatExpr {
  std::vector<ExprNode> symbols;  // kSymbol nodes in layout order
  std::vector<Bracket> brackets;
};

void flatten(const ExprNode& node, FlatExpr& out) {
  switch (node.kind) {
    case ExprNode::kSymbol:
      out.symbols.push_back(node);
      return;
    case ExprNode::kProduct:
      for (const ExprNode& c : node.children) flatten(c, out);
      return;
    case ExprNode::kRe:
    case ExprNode::kTr: {
      int first = static_cast<int>(out.symbols.size()) + 1;
      for (const ExprNode& c : node.children) flatten(c, out);
      out.brackets.push_back({first, static_cast<int>(out.symbols.size()),
                              node.kind == ExprNode::kRe});
      return;
    }
  }
}

}  // namespace

ExprNode parse_expression(const std::string& text) {
  Parser p(text);
  bool wrapped = p.consume("E[");
  ExprNode node = p.product(wrapped ? ']' : '\0');
  if (wrapped && !p.consume("]")) p.fail("expected ']'");
  if (!p.at_end()) p.fail("trailing input");
  std::set<int> seen;
  check_numbers(node, seen);
  return node;
}

ParsedExpression analyze(const ExprNode& ast) {
  FlatExpr flat;
  flatten(ast, flat);
  int n = static_cast<int>(flat.symbols.size());
  QT_INPUT(n > 0, "expression has no symbols");

  // Slots keep their written indices when those already fill {1..n}
  // (the usual case); otherwise they are renumbered left to right.
  std::set<int> written;
  for (const ExprNode& s : flat.symbols) written.insert(s.written);
  bool keep = static_cast<int>(written.size()) == n && *written.begin() == 1 &&
              *written.rbegin() == n;

  ParsedExpression out;
  out.diagram.symbols = {kInf};
  out.diagram.brackets = flat.brackets;
  out.names.assign(n + 1, "");
  out.written.assign(n + 1, 0);
  out.colors.assign(n + 1, 0);
  for (int pos = 1; pos <= n; ++pos) {
    const ExprNode& s = flat.symbols[pos - 1];
    int label = keep ? s.written : pos;
    out.diagram.symbols.push_back(s.starred ? -label : label);
    out.names[label] = s.name;
    out.written[label] = s.written;
    out.colors[label] = s.written == 0 ? 0 : std::max(s.color, 1);
  }
  out.diagram.validate();
  return out;
}

ParsedExpression analyze(const std::string& text) {
  return analyze(parse_expression(text));
}

std::string serialize(const BracketDiagram& d, const std::vector<std::string>& names) {
  if (names.empty()) return d.to_string();
  BracketTree root = bracket_tree(d);
  std::ostringstream out;
  std::function<void(const BracketTree&)> emit = [&](const BracketTree& node) {
    if (node.tag != BracketTree::kTop)
      out << (node.tag == BracketTree::kRe ? "Re(" : "tr(");
    size_t child = 0, owned = 0;
    bool first = true;
    for (int p = node.first; p <= node.last; ++p) {
      if (!first) out << ' ';
      if (owned < node.owned.size() && node.owned[owned] == p) {
        int k = d.symbols[p];
        QT_INPUT(std::abs(k) < static_cast<int>(names.size()),
                 "no name bound to slot " + std::to_string(std::abs(k)));
        out << names[std::abs(k)];
        if (k < 0) out << '*';
        ++owned;
      } else {
        emit(node.children[child]);
        p = node.children[child].last;
        ++child;
      }
      first = false;
    }
    if (node.tag != BracketTree::kTop) out << ')';
  };
  emit(root);
  return out.str();
}

}  // namespace quatrace
