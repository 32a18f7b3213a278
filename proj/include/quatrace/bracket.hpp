#pragma once

#include <string>
#include <vector>

#include "quatrace/signed_perm.hpp"

namespace quatrace {

// A bracket over a contiguous run of symbol positions. Positions are
// 1-based; position 0 is the fixed infinity anchor and is never bracketed.
struct Bracket {
  int first = 0, last = 0;  // inclusive
  bool is_re = false;       // false = tr
  bool operator==(const Bracket& o) const {
    return first == o.first && last == o.last && is_re == o.is_re;
  }
};

// A product layout with nested Re/tr brackets. symbols[0] is kInf; the rest
// are signed subscripts (negative = starred), each absolute value once.
struct BracketDiagram {
  std::vector<int> symbols;
  std::vector<Bracket> brackets;

  int n() const { return static_cast<int>(symbols.size()) - 1; }
  void validate() const;  // throws SemanticError with the reason
  // Rendering: "tr(X3 X8* Re(X4 Re(X2) X1)) Re(tr(X5 X7* tr(X6)))".
  // Equal-range Re and tr brackets render with Re outside.
  std::string to_string(char letter = 'X') const;
  bool operator==(const BracketDiagram& o) const {
    return symbols == o.symbols && brackets == o.brackets;
  }
};

// The permutation of one tag: each bracket of that tag cycles the symbols it
// directly owns (brackets of the other tag are transparent); the unbracketed
// run cycles through infinity. Subscripts are taken unsigned; the star data
// lives in eps_of_diagram.
SupportPerm perm_of_diagram(const BracketDiagram& d, bool re_tag);

// eps[k] = -1 iff X_k appears starred; index 0 unused, size n+1.
std::vector<int> eps_of_diagram(const BracketDiagram& d);

struct DiagramTags {
  SupportPerm phi_re, phi_tr;  // positive form, on {inf, 1..n}
  std::vector<int> eps;
};
DiagramTags tag_permutations(const BracketDiagram& d);

// Signed premaps on the full doubled domain, stars folded in:
// sign-conjugates of the doubled positive tags.
SignedPerm signed_tag(const SupportPerm& positive_tag, const std::vector<int>& eps);

// Nesting tree of the brackets (root covers [1, n] with tag "top"). Used by
// the renderer and the evaluator.
struct BracketTree {
  int first = 0, last = 0;
  enum Tag { kTop, kRe, kTr } tag = kTop;
  std::vector<int> owned;  // positions directly at this level, ascending
  std::vector<BracketTree> children;
};
BracketTree bracket_tree(const BracketDiagram& d);

}  // namespace quatrace
