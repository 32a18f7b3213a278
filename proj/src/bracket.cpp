#include "quatrace/bracket.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "quatrace/error.hpp"

namespace quatrace {

namespace {

// Sort order that makes parents precede children: wider ranges first; on an
// equal range, Re wraps tr.
bool outer_before_inner(const Bracket& a, const Bracket& b) {
  if (a.first != b.first) return a.first < b.first;
  if (a.last != b.last) return a.last > b.last;
  return a.is_re && !b.is_re;
}

}  // namespace

void BracketDiagram::validate() const {
  QT_INPUT(!symbols.empty() && symbols[0] == kInf,
           "diagram must start with the infinity anchor");
  QT_INPUT(n() >= 1, "diagram needs at least one symbol");
  std::vector<bool> seen(n() + 1, false);
  for (int p = 1; p <= n(); ++p) {
    int k = symbols[p];
    QT_INPUT(k != 0 && std::abs(k) != kInf, "diagram symbol must be a finite subscript");
    QT_INPUT(std::abs(k) <= n(), "diagram subscripts must cover 1..n");
    QT_INPUT(!seen[std::abs(k)], "duplicate subscript in diagram");
    seen[std::abs(k)] = true;
  }
  for (size_t i = 0; i < brackets.size(); ++i) {
    const Bracket& b = brackets[i];
    QT_INPUT(1 <= b.first && b.first <= b.last && b.last <= n(),
             "bracket range out of bounds");
    for (size_t j = 0; j < i; ++j) {
      const Bracket& a = brackets[j];
      QT_INPUT(!(a == b), "duplicate bracket");
      bool disjoint = a.last < b.first || b.last < a.first;
      bool nested = (a.first <= b.first && b.last <= a.last) ||
                    (b.first <= a.first && a.last <= b.last);
      QT_INPUT(disjoint || nested, "brackets must nest or be disjoint");
    }
  }
}

BracketTree bracket_tree(const BracketDiagram& d) {
  d.validate();
  std::vector<Bracket> order = d.brackets;
  std::sort(order.begin(), order.end(), outer_before_inner);

  BracketTree root;
  root.first = 1;
  root.last = d.n();
  root.tag = BracketTree::kTop;
  std::vector<BracketTree*> stack = {&root};
  for (const Bracket& b : order) {
    while (!(stack.back()->first <= b.first && b.last <= stack.back()->last))
      stack.pop_back();
    // An equal-range tr under Re stays nested because of the sort order.
    BracketTree node;
    node.first = b.first;
    node.last = b.last;
    node.tag = b.is_re ? BracketTree::kRe : BracketTree::kTr;
    stack.back()->children.push_back(std::move(node));
    stack.push_back(&stack.back()->children.back());
  }
  // Assign each position to the innermost node containing it.
  std::function<void(BracketTree&)> fill = [&](BracketTree& node) {
    size_t child = 0;
    for (int p = node.first; p <= node.last; ++p) {
      while (child < node.children.size() && node.children[child].last < p) ++child;
      if (child < node.children.size() && node.children[child].first <= p) {
        p = node.children[child].last;  // handled by the child
        continue;
      }
      node.owned.push_back(p);
    }
    for (BracketTree& c : node.children) fill(c);
  };
  if (root.last >= root.first) fill(root);
  return root;
}

SupportPerm perm_of_diagram(const BracketDiagram& d, bool re_tag) {
  d.validate();
  // Keep only this tag's brackets and compute direct ownership among them.
  std::vector<Bracket> own;
  for (const Bracket& b : d.brackets)
    if (b.is_re == re_tag) own.push_back(b);
  std::sort(own.begin(), own.end(), outer_before_inner);

  // owner[p] = index into `own` of the innermost bracket containing p, or -1.
  std::vector<int> owner(d.n() + 1, -1);
  for (size_t i = 0; i < own.size(); ++i)
    for (int p = own[i].first; p <= own[i].last; ++p) owner[p] = static_cast<int>(i);

  std::vector<std::vector<int>> cycles(own.size() + 1);
  for (int p = 1; p <= d.n(); ++p) {
    int slot = owner[p] + 1;
    cycles[slot].push_back(std::abs(d.symbols[p]));
  }
  std::vector<std::vector<int>> out;
  out.push_back({kInf});
  for (int s : cycles[0]) out.back().push_back(s);
  for (size_t i = 0; i < own.size(); ++i)
    if (!cycles[i + 1].empty()) out.push_back(cycles[i + 1]);

  // The result must still be a permutation of {inf, 1..n}: add missed fixed
  // points (cannot happen, every position is owned somewhere).
  return SupportPerm::from_cycles(out);
}

std::vector<int> eps_of_diagram(const BracketDiagram& d) {
  std::vector<int> eps(d.n() + 1, 1);
  for (int p = 1; p <= d.n(); ++p)
    if (d.symbols[p] < 0) eps[-d.symbols[p]] = -1;
  return eps;
}

DiagramTags tag_permutations(const BracketDiagram& d) {
  return {perm_of_diagram(d, true), perm_of_diagram(d, false), eps_of_diagram(d)};
}

SignedPerm signed_tag(const SupportPerm& positive_tag, const std::vector<int>& eps) {
  int n = static_cast<int>(eps.size()) - 1;
  return positive_tag.doubled(n, positive_tag.has_inf()).sign_conjugate(eps);
}

std::string BracketDiagram::to_string(char letter) const {
  BracketTree root = bracket_tree(*this);
  std::ostringstream out;
  std::function<void(const BracketTree&, bool)> emit = [&](const BracketTree& node,
                                                           bool outermost) {
    if (node.tag != BracketTree::kTop)
      out << (node.tag == BracketTree::kRe ? "Re(" : "tr(");
    size_t child = 0, owned = 0;
    bool first = true;
    for (int p = node.first; p <= node.last; ++p) {
      if (!first) out << ' ';
      if (owned < node.owned.size() && node.owned[owned] == p) {
        int k = symbols[p];
        out << letter << std::abs(k);
        if (k < 0) out << '*';
        ++owned;
        first = false;
      } else {
        emit(node.children[child], false);
        p = node.children[child].last;
        ++child;
        first = false;
      }
    }
    if (node.tag != BracketTree::kTop) out << ')';
    (void)outermost;
  };
  emit(root, true);
  return out.str();
}

}  // namespace quatrace
