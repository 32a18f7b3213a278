#include "quatrace/planar.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "quatrace/error.hpp"
#include "quatrace/partition.hpp"

namespace quatrace {

namespace {

std::string sym_list(const std::vector<int>& v) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << sym_to_string(v[i]);
  }
  os << "}";
  return os.str();
}

// First of p(x), p^2(x), ... that lies in `keep` (some iterate must).
int first_return(const SupportPerm& p, const std::set<int>& keep, int x) {
  int y = p(x);
  while (!keep.count(y)) y = p(y);
  return y;
}

// A quadruple (a,b,c,d) in cyclic order along one cycle of a base input
// whose first-return map on the other is (a,c)(b,d). Both inputs are tried
// as the base. Such a quadruple always exists on a single-cycle base when
// planarity fails; for multi-cycle bases it may not, hence optional.
std::optional<std::array<int, 4>> crossing_quadruple(const SupportPerm& pi,
                                                     const SupportPerm& rho) {
  for (int which = 0; which < 2; ++which) {
    const SupportPerm& base = which == 0 ? rho : pi;
    const SupportPerm& other = which == 0 ? pi : rho;
    for (const auto& cyc : base.cycles()) {
      int m = static_cast<int>(cyc.size());
      if (m < 4) continue;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          for (int k = j + 1; k < m; ++k)
            for (int l = k + 1; l < m; ++l) {
              std::array<int, 4> q{cyc[i], cyc[j], cyc[k], cyc[l]};
              std::set<int> keep(q.begin(), q.end());
              if (first_return(other, keep, q[0]) == q[2] &&
                  first_return(other, keep, q[2]) == q[0] &&
                  first_return(other, keep, q[1]) == q[3] &&
                  first_return(other, keep, q[3]) == q[1])
                return q;
            }
    }
  }
  return std::nullopt;
}

struct GreedyLayout {
  std::vector<std::vector<int>> runs;  // one run per fresh start (lub mode)
  std::vector<int> order;              // appearance order, runs concatenated
};

// The layout greedy. Maintains which rho-orbits contain an already placed
// symbol; branch one follows pi into an untouched orbit, branch two takes
// the most recently placed symbol whose rho-image has not appeared, branch
// three starts fresh at the smallest-rank unused symbol. With
// one_per_mirror the fresh start also skips symbols whose mirror appeared,
// which keeps the walk inside one orientation of each component.
GreedyLayout zeta_greedy(const SupportPerm& pi, const SupportPerm& rho,
                         bool one_per_mirror, ZetaMode mode) {
  const std::vector<int>& supp = pi.support();
  QT_CHECK(supp == rho.support(), "support mismatch in layout construction");
  QT_CHECK(!supp.empty(), "empty layout domain");

  std::map<int, int> orbit;
  const auto rho_cycles = rho.cycles();
  for (int i = 0; i < static_cast<int>(rho_cycles.size()); ++i)
    for (int x : rho_cycles[i]) orbit[x] = i;
  std::vector<char> touched(rho_cycles.size(), 0);
  std::set<int> appeared;

  GreedyLayout g;
  auto take = [&](int x, bool fresh_cycle) {
    QT_CHECK(!appeared.count(x), "layout revisited a symbol");
    if (one_per_mirror) QT_CHECK(!appeared.count(-x), "layout took both orientations of a symbol");
    if (fresh_cycle) g.runs.emplace_back();
    g.runs.back().push_back(x);
    g.order.push_back(x);
    appeared.insert(x);
    touched[orbit.at(x)] = 1;
  };

  take(supp.front(), true);
  for (;;) {
    int k = g.order.back();
    int next = pi(k);
    if (!touched[orbit.at(next)]) {
      take(next, false);
      continue;
    }
    bool found = false;
    for (int i = static_cast<int>(g.order.size()) - 1; i >= 0 && !found; --i) {
      int x = rho(g.order[i]);
      if (!appeared.count(x)) {
        take(x, false);
        found = true;
      }
    }
    if (found) continue;
    int fresh = 0;
    for (int s : supp) {
      if (appeared.count(s)) continue;
      if (one_per_mirror && appeared.count(-s)) continue;
      fresh = s;
      break;
    }
    if (fresh == 0) break;
    take(fresh, mode == ZetaMode::kLeastUpperBound);
  }

  for (int x : g.order)
    QT_CHECK(appeared.count(pi(x)) && appeared.count(rho(x)),
             "layout is not closed under the inputs");
  return g;
}

SupportPerm as_support(const SignedPerm& p) {
  std::vector<std::pair<int, int>> m;
  for (int k : p.domain()) m.emplace_back(k, p(k));
  return SupportPerm::from_map(std::move(m));
}

GreedyLayout premap_layout(const SignedPerm& phi_re, const SignedPerm& phi_tr, ZetaMode mode) {
  return zeta_greedy(as_support(phi_re), as_support(phi_tr), /*one_per_mirror=*/true, mode);
}

// The assembly layout needs more than per-tag planarity: the two bracket
// families must also nest against each other as intervals, and the greedy
// above can enter a fresh trace orbit at a point whose interval would have
// to cut across the closing product bracket. This walk places symbols left
// to right while keeping every partially placed cycle of both tags as an
// open interval on one stack. A symbol is admissible when, for each tag, it
// either continues that tag's topmost open cycle or opens an untouched one,
// and when no finished interval ends up buried under one that opened later.
// Candidates follow the greedy's preference order, so the walk reproduces
// the greedy layout whenever that layout nests, and it backtracks over the
// remaining choices otherwise.
class NestWalk {
 public:
  NestWalk(const SignedPerm& phi_re, const SignedPerm& phi_tr)
      : perm_{as_support(phi_re), as_support(phi_tr)} {
    for (int tag = 0; tag < 2; ++tag) {
      cycles_[tag] = perm_[tag].cycles();
      for (int c = 0; c < static_cast<int>(cycles_[tag].size()); ++c)
        for (int x : cycles_[tag][c]) cyc_of_[tag][x] = c;
    }
    domain_ = perm_[0].support();
    blocks_ = join(cycle_partition(phi_re), cycle_partition(phi_tr)).blocks();
    for (int b = 0; b < static_cast<int>(blocks_.size()); ++b)
      for (int x : blocks_[b]) block_of_[x] = b;
  }

  std::vector<int> run() const {
    State st;
    st.placed_in[0].assign(cycles_[0].size(), 0);
    st.placed_in[1].assign(cycles_[1].size(), 0);
    st.block = block_of_.at(kInf);
    st.block_left = static_cast<int>(blocks_[st.block].size()) - 1;
    st.order.push_back(kInf);
    st.placed.insert(kInf);
    for (int tag = 0; tag < 2; ++tag) {
      int c = cyc_of_[tag].at(kInf);
      st.stack.push_back(make_entry(tag, c, kInf, 0));
      st.placed_in[tag][c] = 1;
    }
    QT_CHECK(sweep(st.stack), "anchor cycles cannot conflict");
    auto out = dfs(st);
    QT_CHECK(out.has_value(), "no nesting layout found for planar tags");
    return *out;
  }

 private:
  struct Entry {
    int tag;
    int cyc;
    int start;             // position of the first placed symbol
    size_t next;           // index into rot of the next needed symbol
    std::vector<int> rot;  // the cycle rotated to its first placed symbol
    bool thru_inf;         // anchor cycles carry no bracket interval
  };

  struct State {
    std::vector<int> order;
    std::set<int> placed;
    std::vector<Entry> stack;
    std::array<std::vector<int>, 2> placed_in;  // per tag, per cycle
    int block = -1;
    int block_left = 0;
  };

  Entry make_entry(int tag, int c, int z, int pos) const {
    const std::vector<int>& cyc = cycles_[tag][c];
    size_t at = std::find(cyc.begin(), cyc.end(), z) - cyc.begin();
    Entry e{tag, c, pos, 1, {}, false};
    for (size_t i = 0; i < cyc.size(); ++i) e.rot.push_back(cyc[(at + i) % cyc.size()]);
    e.thru_inf = std::find(cyc.begin(), cyc.end(), kInf) != cyc.end();
    return e;
  }

  static bool finished(const Entry& e) { return e.next == e.rot.size(); }

  // Pop closed intervals off the top. Two intervals that opened at the same
  // position nest either way round, so a finished one may be lifted over an
  // unfinished twin. Anything else finished but buried would cut across the
  // interval above it.
  static bool sweep(std::vector<Entry>& stack) {
    for (;;) {
      if (!stack.empty() && finished(stack.back())) {
        stack.pop_back();
        continue;
      }
      size_t n = stack.size();
      if (n >= 2 && finished(stack[n - 2]) && stack[n - 1].start == stack[n - 2].start) {
        std::swap(stack[n - 1], stack[n - 2]);
        continue;
      }
      break;
    }
    for (const Entry& e : stack)
      if (finished(e) && !e.thru_inf) return false;
    return true;
  }

  bool place(State& st, int z) const {
    for (int tag = 0; tag < 2; ++tag) {
      int c = cyc_of_[tag].at(z);
      if (st.placed_in[tag][c] == 0) continue;
      const Entry* top = nullptr;
      for (int i = static_cast<int>(st.stack.size()) - 1; i >= 0; --i)
        if (st.stack[i].tag == tag) {
          top = &st.stack[i];
          break;
        }
      if (!top || top->cyc != c || finished(*top) || top->rot[top->next] != z) return false;
    }
    int pos = static_cast<int>(st.order.size());
    for (int tag = 0; tag < 2; ++tag) {
      int c = cyc_of_[tag].at(z);
      if (st.placed_in[tag][c] == 0) {
        st.stack.push_back(make_entry(tag, c, z, pos));
      } else {
        for (int i = static_cast<int>(st.stack.size()) - 1; i >= 0; --i)
          if (st.stack[i].tag == tag) {
            ++st.stack[i].next;
            break;
          }
      }
      ++st.placed_in[tag][c];
    }
    st.order.push_back(z);
    st.placed.insert(z);
    if (st.block_left == 0) {
      st.block = block_of_.at(z);
      st.block_left = static_cast<int>(blocks_[st.block].size()) - 1;
    } else {
      QT_CHECK(block_of_.at(z) == st.block, "walk left an unfinished component");
      --st.block_left;
    }
    return sweep(st.stack);
  }

  std::optional<std::vector<int>> dfs(const State& st) const {
    if (2 * st.order.size() == domain_.size()) return st.order;
    std::vector<int> cand;
    std::set<int> seen;
    auto add = [&](int z) {
      if (st.placed.count(z) || st.placed.count(-z) || !seen.insert(z).second) return;
      if (st.block_left > 0 && block_of_.at(z) != st.block) return;
      cand.push_back(z);
    };
    if (st.block_left > 0) {
      add(perm_[0](st.order.back()));
      for (int i = static_cast<int>(st.order.size()) - 1; i >= 0; --i) add(perm_[1](st.order[i]));
    }
    for (int s : domain_) add(s);
    for (int z : cand) {
      State next = st;
      if (!place(next, z)) continue;
      if (auto r = dfs(next)) return r;
    }
    return std::nullopt;
  }

  std::array<SupportPerm, 2> perm_;
  std::array<std::vector<std::vector<int>>, 2> cycles_;
  std::array<std::map<int, int>, 2> cyc_of_;
  std::vector<int> domain_;
  std::vector<std::vector<int>> blocks_;
  std::map<int, int> block_of_;
};

}  // namespace

bool split_order_leq(const SupportPerm& pi, const SupportPerm& sigma) {
  QT_INPUT(pi.support() == sigma.support(), "order comparison needs a common support");
  SupportPerm q = compose(sigma, pi.inverse());
  return pi.size() - q.cycle_count() == pi.cycle_count() - sigma.cycle_count();
}

bool is_planar_on(const SupportPerm& pi, const SupportPerm& rho) {
  QT_INPUT(pi.support() == rho.support(), "planarity needs a common support");
  int joined = join(cycle_partition(pi), cycle_partition(rho)).block_count();
  return pi.cycle_count() + rho.cycle_count() + compose(pi, rho).cycle_count() - pi.size() ==
         2 * joined;
}

std::string PremapPlanarity::describe() const {
  std::ostringstream os;
  switch (status) {
    case kPlanar:
      os << "planar on restriction to " << sym_list(witness);
      break;
    case kSignObstruction:
      os << "sign obstruction: component " << sym_list(component)
         << " contains both orientations of a symbol, so no one-per-orientation "
            "restriction exists";
      break;
    case kCrossing:
      os << "crossing in component " << sym_list(component);
      if (crossing)
        os << "; quadruple (" << sym_to_string((*crossing)[0]) << ","
           << sym_to_string((*crossing)[1]) << "," << sym_to_string((*crossing)[2]) << ","
           << sym_to_string((*crossing)[3]) << ")";
      break;
  }
  return os.str();
}

PremapPlanarity premap_planarity(const SignedPerm& pi, const SignedPerm& rho) {
  QT_INPUT(pi.n() == rho.n() && pi.has_inf() == rho.has_inf(),
           "planarity needs a common domain");
  QT_INPUT(pi.is_premap() && rho.is_premap(), "inputs must be premaps");

  PremapPlanarity out;
  const auto blocks = join(cycle_partition(pi), cycle_partition(rho)).blocks();
  std::map<int, int> block_of;
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
    for (int x : blocks[b]) block_of[x] = b;

  for (const auto& blk : blocks) {
    std::set<int> members(blk.begin(), blk.end());
    for (int x : blk)
      if (members.count(-x)) {
        out.status = PremapPlanarity::kSignObstruction;
        out.component = blk;
        return out;
      }
  }

  // One block per mirror pair; mirrored restrictions are inverse-conjugate,
  // so planarity does not depend on the choice. Keep the smaller leader.
  for (const auto& blk : blocks) {
    const auto& mirror = blocks[block_of.at(-blk[0])];
    if (sym_rank(blk[0]) > sym_rank(mirror[0])) continue;
    SupportPerm pc = SupportPerm::restriction(pi, blk);
    SupportPerm rc = SupportPerm::restriction(rho, blk);
    if (!is_planar_on(pc, rc)) {
      out.status = PremapPlanarity::kCrossing;
      out.component = blk;
      out.crossing = crossing_quadruple(pc, rc);
      return out;
    }
    out.witness.insert(out.witness.end(), blk.begin(), blk.end());
  }
  std::sort(out.witness.begin(), out.witness.end(),
            [](int a, int b) { return sym_rank(a) < sym_rank(b); });
  return out;
}

bool is_planar_on(const SignedPerm& pi, const SignedPerm& rho) {
  return premap_planarity(pi, rho).status == PremapPlanarity::kPlanar;
}

bool glb_condition(const SupportPerm& pi, const SupportPerm& rho) {
  QT_INPUT(pi.support() == rho.support(), "glb condition needs a common support");
  SetPartition a = cycle_partition(pi), b = cycle_partition(rho);
  int meet_c = meet(a, b).block_count();
  int join_c = join(a, b).block_count();
  return meet_c - join_c == (meet_c - pi.cycle_count()) + (meet_c - rho.cycle_count());
}

bool glb_condition(const SignedPerm& pi, const SignedPerm& rho) {
  QT_INPUT(pi.n() == rho.n() && pi.has_inf() == rho.has_inf(),
           "glb condition needs a common domain");
  SetPartition a = cycle_partition(pi), b = cycle_partition(rho);
  int meet_c = meet(a, b).block_count();
  int join_c = join(a, b).block_count();
  return meet_c - join_c == (meet_c - pi.cycle_count()) + (meet_c - rho.cycle_count());
}

UpperBoundStatus upper_bound_status(const SupportPerm& pi, const SupportPerm& rho) {
  QT_INPUT(pi.support() == rho.support(), "upper bound status needs a common support");
  UpperBoundStatus st;
  st.planar = is_planar_on(pi, rho.inverse());
  if (!st.planar) return st;

  SupportPerm sigma = construct_zeta(pi, rho, ZetaMode::kLeastUpperBound);
  st.join_witness = sigma;
  st.witness_above_both = split_order_leq(pi, sigma) && split_order_leq(rho, sigma);
  st.witness_join_orbits =
      cycle_partition(sigma).blocks() == join(cycle_partition(pi), cycle_partition(rho)).blocks();
  SupportPerm q = compose(rho, pi.inverse());
  st.witness_on_geodesic =
      (pi.cycle_count() - sigma.cycle_count()) + (rho.cycle_count() - sigma.cycle_count()) ==
      pi.size() - q.cycle_count();
  QT_CHECK(st.witness_above_both && st.witness_join_orbits && st.witness_on_geodesic,
           "constructed layout fails a witness confirmation");
  st.satisfiable = true;
  return st;
}

SupportPerm construct_zeta(const SupportPerm& pi, const SupportPerm& rho, ZetaMode mode) {
  QT_INPUT(pi.support() == rho.support(), "layout construction needs a common support");
  if (!is_planar_on(pi, rho.inverse())) {
    std::ostringstream os;
    os << "no common layout: not planar on the inverse";
    if (auto q = crossing_quadruple(pi, rho.inverse()))
      os << "; crossing quadruple (" << sym_to_string((*q)[0]) << "," << sym_to_string((*q)[1])
         << "," << sym_to_string((*q)[2]) << "," << sym_to_string((*q)[3]) << ")";
    throw BracketError(os.str());
  }
  return SupportPerm::from_cycles(zeta_greedy(pi, rho, /*one_per_mirror=*/false, mode).runs);
}

SupportPerm construct_zeta(const SignedPerm& phi_re, const SignedPerm& phi_tr, ZetaMode mode) {
  PremapPlanarity pp = premap_planarity(phi_re, phi_tr.inverse());
  if (pp.status != PremapPlanarity::kPlanar)
    throw BracketError("no common layout: " + pp.describe());
  return SupportPerm::from_cycles(premap_layout(phi_re, phi_tr, mode).runs);
}

BracketizeResult bracketize(const SignedPerm& phi_re, const SignedPerm& phi_tr) {
  QT_INPUT(phi_re.n() == phi_tr.n() && phi_re.has_inf() && phi_tr.has_inf(),
           "tags must share a domain that includes infinity");
  QT_INPUT(phi_re.is_premap() && phi_tr.is_premap(), "tags must be premaps");

  BracketizeResult res;
  PremapPlanarity pp = premap_planarity(phi_re, phi_tr.inverse());
  if (pp.status == PremapPlanarity::kSignObstruction) {
    res.failure = "sign-obstruction";
    res.detail = pp.describe();
    return res;
  }
  if (pp.status == PremapPlanarity::kCrossing) {
    res.failure = "crossing";
    res.detail = pp.describe();
    return res;
  }
  if (!glb_condition(phi_re, phi_tr)) {
    SetPartition a = cycle_partition(phi_re), b = cycle_partition(phi_tr);
    int meet_c = meet(a, b).block_count();
    std::ostringstream os;
    os << "orbit lattice gap on the signed domain: #(meet)-#(join) = "
       << meet_c - join(a, b).block_count() << " but the tags split only "
       << (meet_c - phi_re.cycle_count()) + (meet_c - phi_tr.cycle_count()) << " times";
    res.failure = "glb-violation";
    res.detail = os.str();
    return res;
  }

  std::vector<int> order = NestWalk(phi_re, phi_tr).run();
  QT_CHECK(!order.empty() && order.front() == kInf, "layout must start at infinity");

  BracketDiagram d;
  d.symbols = order;
  std::map<int, int> pos;
  for (int i = 0; i < static_cast<int>(order.size()); ++i) pos[order[i]] = i;
  std::vector<int> supp = order;
  std::sort(supp.begin(), supp.end(), [](int a, int b) { return sym_rank(a) < sym_rank(b); });

  for (int tag = 0; tag < 2; ++tag) {
    const SignedPerm& p = tag == 0 ? phi_re : phi_tr;
    for (const auto& cyc : SupportPerm::restriction(p, supp).cycles()) {
      bool through_anchor = false;
      int lo = pos.at(cyc[0]), hi = lo;
      for (int x : cyc) {
        if (x == kInf) through_anchor = true;
        lo = std::min(lo, pos.at(x));
        hi = std::max(hi, pos.at(x));
      }
      if (through_anchor) continue;
      d.brackets.push_back({lo, hi, tag == 0});
    }
  }
  d.validate();

  DiagramTags tags = tag_permutations(d);
  QT_CHECK(signed_tag(tags.phi_re, tags.eps) == phi_re,
           "layout does not reproduce the product tag");
  QT_CHECK(signed_tag(tags.phi_tr, tags.eps) == phi_tr,
           "layout does not reproduce the trace tag");
  res.ok = true;
  res.diagram = std::move(d);
  return res;
}

}  // namespace quatrace
