#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "quatrace/bracket.hpp"
#include "quatrace/error.hpp"
#include "quatrace/partition.hpp"
#include "quatrace/planar.hpp"

using namespace quatrace;
using quatrace::testing::random_diagram;

namespace {

BracketDiagram chain_ten() {
  BracketDiagram d;
  d.symbols = {kInf, -1, 2, 3, 4, 5, 6, 7, 8, 9, -10};
  d.brackets = {{2, 2, true}, {5, 10, true}, {5, 8, false}, {9, 10, false}};
  return d;
}

SupportPerm random_sperm(std::mt19937& rng, int m) {
  std::vector<int> img(m);
  std::iota(img.begin(), img.end(), 1);
  std::shuffle(img.begin(), img.end(), rng);
  std::vector<std::pair<int, int>> mp;
  for (int i = 0; i < m; ++i) mp.emplace_back(i + 1, img[i]);
  return SupportPerm::from_map(std::move(mp));
}

// Plain 1-indexed image tables for the exhaustive small-group sweeps.
using Images = std::vector<int>;

std::vector<Images> all_perms(int m) {
  Images base(m + 1);
  std::iota(base.begin(), base.end(), 0);
  std::vector<Images> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin() + 1, base.end()));
  return out;
}

int cycle_count_of(const Images& p) {
  int m = static_cast<int>(p.size()) - 1, c = 0;
  std::vector<char> seen(m + 1, 0);
  for (int i = 1; i <= m; ++i) {
    if (seen[i]) continue;
    ++c;
    for (int j = i; !seen[j]; j = p[j]) seen[j] = 1;
  }
  return c;
}

Images compose_img(const Images& a, const Images& b) {
  Images r(a.size());
  for (size_t i = 1; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

Images inverse_img(const Images& p) {
  Images r(p.size());
  for (size_t i = 1; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

// Orbit labels normalized to first-occurrence order, comparable across maps.
std::vector<int> orbit_labels(const Images& p) {
  int m = static_cast<int>(p.size()) - 1, next = 0;
  std::vector<int> lab(m + 1, -1);
  for (int i = 1; i <= m; ++i) {
    if (lab[i] >= 0) continue;
    for (int j = i; lab[j] < 0; j = p[j]) lab[j] = next;
    ++next;
  }
  return lab;
}

std::vector<int> join_labels(const std::vector<int>& a, const std::vector<int>& b) {
  int m = static_cast<int>(a.size()) - 1;
  std::vector<int> parent(m + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j)
      if (a[i] == a[j] || b[i] == b[j]) parent[find(i)] = find(j);
  std::vector<int> lab(m + 1, -1);
  int next = 0;
  for (int i = 1; i <= m; ++i) {
    int r = find(i);
    if (lab[r] < 0) lab[r] = next++;
  }
  std::vector<int> out(m + 1, -1);
  for (int i = 1; i <= m; ++i) out[i] = lab[find(i)];
  return out;
}

bool leq_img(const Images& pi, const Images& sigma) {
  int m = static_cast<int>(pi.size()) - 1;
  return m - cycle_count_of(compose_img(sigma, inverse_img(pi))) ==
         cycle_count_of(pi) - cycle_count_of(sigma);
}

SupportPerm sp_of(const Images& p) {
  std::vector<std::pair<int, int>> mp;
  for (size_t i = 1; i < p.size(); ++i) mp.emplace_back(static_cast<int>(i), p[i]);
  return SupportPerm::from_map(std::move(mp));
}

}  // namespace

TEST_CASE("cycle splitting order") {
  SupportPerm c123 = SupportPerm::from_cycle_string("(1,2,3)");
  CHECK(split_order_leq(c123, c123));
  CHECK(split_order_leq(SupportPerm::from_cycle_string("(1,2)(3)"), c123));
  CHECK(split_order_leq(SupportPerm::from_cycle_string("(1,3)(2)"), c123));
  CHECK(split_order_leq(SupportPerm::from_cycle_string("(2,3)(1)"), c123));
  CHECK(split_order_leq(SupportPerm::identity_on({1, 2, 3}), c123));
  CHECK_FALSE(split_order_leq(c123, SupportPerm::identity_on({1, 2, 3})));
  CHECK_FALSE(split_order_leq(c123, SupportPerm::from_cycle_string("(1,2)(3)")));
  CHECK_FALSE(split_order_leq(SupportPerm::from_cycle_string("(1,2)(3)"),
                              SupportPerm::from_cycle_string("(1,3)(2)")));
  CHECK_THROWS_AS(split_order_leq(SupportPerm::from_cycle_string("(1,2)"),
                                  SupportPerm::from_cycle_string("(1,3)")),
                  SemanticError);
}

TEST_CASE("planarity of a permutation pair by the genus count") {
  SupportPerm four = SupportPerm::from_cycle_string("(1,2,3,4)");
  SupportPerm cross = SupportPerm::from_cycle_string("(1,3)(2,4)");
  CHECK_FALSE(is_planar_on(four, cross));
  CHECK(is_planar_on(four, four.inverse()));
  CHECK(is_planar_on(four, SupportPerm::identity_on(four.support())));
  CHECK(is_planar_on(SupportPerm::from_cycle_string("(1,2)(3,4)"), cross));

  std::mt19937 rng(11);
  for (int it = 0; it < 200; ++it) {
    SupportPerm p = random_sperm(rng, 6), q = random_sperm(rng, 6);
    CHECK(is_planar_on(p, q) == is_planar_on(q, p));
    CHECK(is_planar_on(p, p.inverse()));
  }
}

TEST_CASE("a crossing quadruple is reported") {
  SignedPerm pi = SignedPerm::from_cycles(4, false, {{1, 2, 3, 4}, {-4, -3, -2, -1}});
  SignedPerm rho = SignedPerm::from_cycles(4, false, {{1, 3}, {-3, -1}, {2, 4}, {-4, -2}});
  REQUIRE(pi.is_premap());
  REQUIRE(rho.is_premap());
  CHECK_FALSE(is_planar_on(pi, rho));

  PremapPlanarity pp = premap_planarity(pi, rho);
  REQUIRE(pp.status == PremapPlanarity::kCrossing);
  CHECK(pp.component == std::vector<int>{1, 2, 3, 4});
  REQUIRE(pp.crossing.has_value());
  CHECK(*pp.crossing == std::array<int, 4>{1, 2, 3, 4});

  // rho is an involution, so the same pair is also non-layoutable as tags
  BracketizeResult r = bracketize(pi.extended_with_inf(), rho.extended_with_inf());
  CHECK_FALSE(r.ok);
  CHECK(r.failure == "crossing");
  CHECK(r.detail.find("quadruple") != std::string::npos);
}

TEST_CASE("a mirror-joined component blocks any layout") {
  SignedPerm re = SupportPerm::from_cycle_string("(inf)(1,3)(2,4)").doubled(4, true);
  SignedPerm tr = SignedPerm::from_cycles(4, true, {{1, -2, 3, 4}, {-1, -4, -3, 2}});
  REQUIRE(re.is_premap());
  REQUIRE(tr.is_premap());

  PremapPlanarity pp = premap_planarity(re, tr.inverse());
  CHECK(pp.status == PremapPlanarity::kSignObstruction);
  CHECK_FALSE(is_planar_on(re, tr.inverse()));
  CHECK_FALSE(glb_condition(re, tr));

  BracketizeResult r = bracketize(re, tr);
  CHECK_FALSE(r.ok);
  CHECK(r.failure == "sign-obstruction");
  CHECK_THROWS_AS(construct_zeta(re, tr), BracketError);
}

TEST_CASE("planar tags can still fail the lattice exactness") {
  SignedPerm re = SupportPerm::from_cycle_string("(1,2)(3,4)").doubled(4, false).extended_with_inf();
  SignedPerm tr = SupportPerm::from_cycle_string("(1,3)(2,4)").doubled(4, false).extended_with_inf();
  CHECK(is_planar_on(re, tr.inverse()));
  CHECK_FALSE(glb_condition(re, tr));

  BracketizeResult r = bracketize(re, tr);
  CHECK_FALSE(r.ok);
  CHECK(r.failure == "glb-violation");
}

TEST_CASE("lattice exactness for the ten-slot tags") {
  SupportPerm re = SupportPerm::from_cycle_string("(inf,1,3,4)(2)(5,6,7,8,9,10)");
  SupportPerm tr = SupportPerm::from_cycle_string("(inf,1,2,3,4)(5,6,7,8)(9,10)");
  CHECK(glb_condition(re, tr));
  CHECK(glb_condition(re.doubled(10, true), tr.doubled(10, true)));
  CHECK(glb_condition(re, re));

  UpperBoundStatus st = upper_bound_status(re, tr);
  CHECK(st.satisfiable);
  CHECK(st.join_witness == SupportPerm::from_cycle_string("(inf,1,2,3,4)(5,6,7,8,9,10)"));
}

TEST_CASE("common layout existence for named pairs") {
  SupportPerm c = SupportPerm::from_cycle_string("(1,2,3)(4,5)");
  UpperBoundStatus st = upper_bound_status(c, c);
  CHECK(st.satisfiable);
  CHECK(st.join_witness == c);
  CHECK(st.witness_above_both);
  CHECK(st.witness_join_orbits);
  CHECK(st.witness_on_geodesic);

  UpperBoundStatus st2 = upper_bound_status(SupportPerm::from_cycle_string("(1,2,3,4)"),
                                            SupportPerm::from_cycle_string("(1,3)(2,4)"));
  CHECK_FALSE(st2.satisfiable);
  CHECK_FALSE(st2.planar);
}

TEST_CASE("the four common-layout conditions agree on all pairs of small permutations") {
  for (int m : {4, 5}) {
    const auto perms = all_perms(m);
    const int count = static_cast<int>(perms.size());
    std::vector<int> cc(count);
    std::vector<Images> inv(count);
    std::vector<std::vector<int>> lab(count);
    for (int i = 0; i < count; ++i) {
      cc[i] = cycle_count_of(perms[i]);
      inv[i] = inverse_img(perms[i]);
      lab[i] = orbit_labels(perms[i]);
    }
    std::vector<std::vector<char>> leq(count, std::vector<char>(count));
    for (int i = 0; i < count; ++i)
      for (int j = 0; j < count; ++j) leq[i][j] = leq_img(perms[i], perms[j]);

    int satisfiable_pairs = 0;
    for (int i = 0; i < count; ++i) {
      for (int j = 0; j < count; ++j) {
        const auto joined = join_labels(lab[i], lab[j]);
        int join_c = *std::max_element(joined.begin() + 1, joined.end()) + 1;
        bool upper = false, upper_join = false, upper_geodesic = false;
        int dist = m - cycle_count_of(compose_img(perms[j], inv[i]));
        for (int s = 0; s < count && !(upper && upper_join && upper_geodesic); ++s) {
          if (!leq[i][s] || !leq[j][s]) continue;
          upper = true;
          if (lab[s] == joined) upper_join = true;
          if ((cc[i] - cc[s]) + (cc[j] - cc[s]) == dist) upper_geodesic = true;
        }
        bool planar =
            cc[i] + cc[j] + cycle_count_of(compose_img(perms[i], inv[j])) - m == 2 * join_c;

        INFO("m=" << m << " pair " << i << "," << j);
        CHECK(upper == upper_join);
        CHECK(upper == upper_geodesic);
        CHECK(upper == planar);
        UpperBoundStatus st = upper_bound_status(sp_of(perms[i]), sp_of(perms[j]));
        CHECK(st.satisfiable == upper);
        if (upper) ++satisfiable_pairs;
      }
    }
    CHECK(satisfiable_pairs > count);  // at least all equal pairs
  }
}

TEST_CASE("layout construction for the ten-slot diagram") {
  BracketDiagram d = chain_ten();
  DiagramTags t = tag_permutations(d);
  SignedPerm re = signed_tag(t.phi_re, t.eps), tr = signed_tag(t.phi_tr, t.eps);

  SupportPerm zeta = construct_zeta(re, tr);
  CHECK(zeta == SupportPerm::from_cycles({{kInf, -1, 2, 3, 4}, {5, 6, 7, 8, 9, -10}}));

  SupportPerm zc = construct_zeta(re, tr, ZetaMode::kCyclic);
  CHECK(zc == SupportPerm::from_cycles({{kInf, -1, 2, 3, 4, 5, 6, 7, 8, 9, -10}}));
  CHECK(zc.cycle_count() == 1);

  for (const SupportPerm& z : {zeta, zc}) {
    CHECK(is_planar_on(SupportPerm::restriction(re, z.support()), z.inverse()));
    CHECK(is_planar_on(SupportPerm::restriction(tr, z.support()), z.inverse()));
  }

  BracketizeResult r = bracketize(re, tr);
  REQUIRE(r.ok);
  CHECK(r.diagram == d);
  CHECK(r.diagram.to_string() == "X1* Re(X2) X3 X4 Re(tr(X5 X6 X7 X8) tr(X9 X10*))");
}

TEST_CASE("the ten-slot residual layout") {
  SignedPerm k_re = SignedPerm::from_cycles(
      10, true, {{kInf, 4, 3}, {-3, -4, -kInf}, {1, 5, 10, 8, -6, 2, -7}, {7, -2, 6, -8, -10, -5, -1}});
  SignedPerm k_tr = SignedPerm::from_cycles(
      10, true, {{kInf, 4, 3}, {-3, -4, -kInf}, {1, 5, 8, -6}, {6, -8, -5, -1}, {2, -7}, {7, -2}});
  REQUIRE(k_re.is_premap());
  REQUIRE(k_tr.is_premap());

  BracketizeResult r = bracketize(k_re.inverse(), k_tr.inverse());
  REQUIRE(r.ok);
  CHECK(r.diagram.symbols == std::vector<int>{kInf, 3, 4, 1, -7, 2, -6, 8, 10, 5, 9});
  CHECK(r.diagram.to_string('Y') ==
        "Y3 Y4 Re(tr(Y1 tr(Y7* Y2) Y6* Y8 tr(Y10) Y5)) Re(tr(Y9))");
}

TEST_CASE("degenerate layouts") {
  SignedPerm id3 = SignedPerm::identity(3, true);
  BracketizeResult r = bracketize(id3, id3);
  REQUIRE(r.ok);
  CHECK(r.diagram.to_string() == "Re(tr(X1)) Re(tr(X2)) Re(tr(X3))");
  CHECK(construct_zeta(id3, id3).cycle_count() == 4);

  SignedPerm full = SupportPerm::from_cycle_string("(inf,1,2,3,4)").doubled(4, true);
  BracketizeResult r2 = bracketize(full, full);
  REQUIRE(r2.ok);
  CHECK(r2.diagram.brackets.empty());
  CHECK(r2.diagram.to_string() == "X1 X2 X3 X4");
  CHECK(construct_zeta(full, full) == SupportPerm::from_cycle_string("(inf,1,2,3,4)"));
}

TEST_CASE("layout construction rejects crossing pairs") {
  SupportPerm four = SupportPerm::from_cycle_string("(1,2,3,4)");
  SupportPerm cross = SupportPerm::from_cycle_string("(1,3)(2,4)");
  CHECK_THROWS_AS(construct_zeta(four, cross), BracketError);
  try {
    construct_zeta(four, cross);
    FAIL("expected a layout error");
  } catch (const BracketError& e) {
    CHECK(std::string(e.what()).find("quadruple") != std::string::npos);
  }
}

TEST_CASE("a layout is recovered from its tag premaps") {
  std::mt19937 rng(4242);
  for (int iter = 0; iter < 400; ++iter) {
    int n = 1 + static_cast<int>(rng() % 8);
    BracketDiagram d = random_diagram(rng, n);
    DiagramTags t = tag_permutations(d);
    SignedPerm tag_re = signed_tag(t.phi_re, t.eps), tag_tr = signed_tag(t.phi_tr, t.eps);
    INFO("diagram " << d.to_string());

    PremapPlanarity pp = premap_planarity(tag_re, tag_tr.inverse());
    REQUIRE(pp.status == PremapPlanarity::kPlanar);
    std::set<int> J(pp.witness.begin(), pp.witness.end());
    std::set<int> absJ;
    for (int x : pp.witness) {
      CHECK(J.count(tag_re(x)));
      CHECK(J.count(tag_tr.inverse()(x)));
      CHECK(absJ.insert(x == kInf || x == -kInf ? kInf : std::abs(x)).second);
    }
    CHECK(static_cast<int>(absJ.size()) == n + 1);
    CHECK(glb_condition(tag_re, tag_tr));

    BracketizeResult r = bracketize(tag_re, tag_tr);
    REQUIRE(r.ok);
    DiagramTags t2 = tag_permutations(r.diagram);
    CHECK(signed_tag(t2.phi_re, t2.eps) == tag_re);
    CHECK(signed_tag(t2.phi_tr, t2.eps) == tag_tr);

    SupportPerm zeta = construct_zeta(tag_re, tag_tr);
    CHECK(is_planar_on(SupportPerm::restriction(tag_re, zeta.support()), zeta.inverse()));
    CHECK(is_planar_on(SupportPerm::restriction(tag_tr, zeta.support()), zeta.inverse()));

    // the unsigned layout cycle bounds both positive tags from above
    std::vector<int> cyc{kInf};
    for (size_t i = 1; i < d.symbols.size(); ++i)
      cyc.push_back(d.symbols[i] < 0 ? -d.symbols[i] : d.symbols[i]);
    SupportPerm layout_cycle = SupportPerm::from_cycles({cyc});
    CHECK(split_order_leq(t.phi_re, layout_cycle));
    CHECK(split_order_leq(t.phi_tr, layout_cycle));
    CHECK(upper_bound_status(t.phi_re, t.phi_tr).satisfiable);
  }
}

TEST_CASE("adding a bracket pair splits one cycle of the matching tag") {
  std::mt19937 rng(777);
  int moved = 0, vacuous = 0;
  for (int iter = 0; iter < 600; ++iter) {
    int n = 2 + static_cast<int>(rng() % 7);
    BracketDiagram d = random_diagram(rng, n);
    int a = 1 + static_cast<int>(rng() % n), b = 1 + static_cast<int>(rng() % n);
    if (a > b) std::swap(a, b);
    Bracket nb{a, b, rng() % 2 == 0};
    BracketDiagram d2 = d;
    d2.brackets.push_back(nb);
    try {
      d2.validate();
    } catch (const SemanticError&) {
      continue;
    }

    DiagramTags t1 = tag_permutations(d), t2 = tag_permutations(d2);
    const SupportPerm& same1 = nb.is_re ? t1.phi_re : t1.phi_tr;
    const SupportPerm& same2 = nb.is_re ? t2.phi_re : t2.phi_tr;
    const SupportPerm& other1 = nb.is_re ? t1.phi_tr : t1.phi_re;
    const SupportPerm& other2 = nb.is_re ? t2.phi_tr : t2.phi_re;
    INFO("diagram " << d.to_string() << " plus [" << a << "," << b << "]");
    CHECK(other1 == other2);
    if (same1 == same2) {
      // the new bracket owns no position and nothing moves
      ++vacuous;
      continue;
    }
    ++moved;
    CHECK(same2.cycle_count() == same1.cycle_count() + 1);
    CHECK(split_order_leq(same2, same1));
    SetPartition before = cycle_partition(same1);
    for (const auto& cyc : same2.cycles())
      for (size_t i = 1; i < cyc.size(); ++i) CHECK(before.same_block(cyc[0], cyc[i]));
  }
  CHECK(moved > 100);
  CHECK(vacuous > 0);
}

TEST_CASE("contract violations are rejected") {
  SignedPerm not_premap = SignedPerm::from_cycles(2, false, {{1, 2}});
  CHECK_THROWS_AS(premap_planarity(not_premap, not_premap), SemanticError);

  SignedPerm no_inf = SupportPerm::from_cycle_string("(1,2)").doubled(2, false);
  CHECK_THROWS_AS(bracketize(no_inf, no_inf), SemanticError);

  CHECK_THROWS_AS(glb_condition(SupportPerm::from_cycle_string("(1,2)"),
                                SupportPerm::from_cycle_string("(1,3)")),
                  SemanticError);
}
