#pragma once

#include <string>
#include <vector>

#include "quatrace/bracket.hpp"

namespace quatrace {

// Product expression tree. Grammar:
//   expr   := factor+
//   factor := 'Re(' expr ')' | 'tr(' expr ')' | symbol
//   symbol := letter digits '*'? ('[' color ']')?  |  'I'
// with an optional 'E[' ... ']' around the whole expression, whitespace
// between tokens ignored. A bare 'I' is an identity-matrix slot.
struct ExprNode {
  enum Kind { kProduct, kRe, kTr, kSymbol };
  Kind kind = kProduct;
  std::vector<ExprNode> children;  // product, Re, tr
  std::string name;                // symbol nodes: as written, e.g. "X3" or "I"
  int written = 0;                 // symbol nodes: written index; 0 for 'I'
  bool starred = false;
  int color = 0;                   // 0 when unannotated
};

ExprNode parse_expression(const std::string& text);  // throws ParseError

// Flattened expression: one slot per symbol, stars folded into the diagram
// symbol signs, brackets from the Re/tr nodes. Slot labels are the written
// indices when those already fill {1..n} (so tag cycles read like the
// source text); otherwise slots are renumbered 1..n left to right.
struct ParsedExpression {
  BracketDiagram diagram;
  std::vector<std::string> names;  // label -> written name; [0] unused
  std::vector<int> written;        // label -> written index; 0 for identity slots
  std::vector<int> colors;         // label -> color; 0 for identity slots, else >= 1

  int n() const { return diagram.n(); }
  DiagramTags tags() const { return tag_permutations(diagram); }
};

ParsedExpression analyze(const ExprNode& ast);
ParsedExpression analyze(const std::string& text);

// Rendering that keeps the written symbol names (slot k prints names[k]).
// With empty names this matches BracketDiagram::to_string.
std::string serialize(const BracketDiagram& d,
                      const std::vector<std::string>& names = {});

}  // namespace quatrace
