#include "quatrace/signed_perm.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "quatrace/error.hpp"

namespace quatrace {

long sym_rank(int k) {
  if (k == kInf) return 0;
  if (k == -kInf) return 1L << 40;
  QT_CHECK(k != 0, "symbol 0");
  return 2L * (k > 0 ? k : -k) - (k > 0 ? 1 : 0);
}

std::string sym_to_string(int k) {
  if (k == kInf) return "inf";
  if (k == -kInf) return "-inf";
  return std::to_string(k);
}

int sym_from_string(const std::string& s) {
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size() || v == 0) throw ParseError("bad symbol: " + s);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (...) {
    throw ParseError("bad symbol: " + s);
  }
}

// --------------------------------------------------------------------------
// Perm

Perm::Perm(int m) {
  QT_INPUT(m >= 0, "negative size");
  img_.resize(m + 1);
  for (int i = 0; i <= m; ++i) img_[i] = i;
}

Perm Perm::from_images(std::vector<int> images) {
  Perm p;
  p.img_ = std::move(images);
  QT_INPUT(!p.img_.empty(), "images must be 1-indexed with a dummy slot 0");
  p.img_[0] = 0;
  int m = p.size();
  std::vector<bool> seen(m + 1, false);
  for (int i = 1; i <= m; ++i) {
    int v = p.img_[i];
    QT_INPUT(v >= 1 && v <= m && !seen[v], "not a permutation");
    seen[v] = true;
  }
  return p;
}

Perm Perm::from_cycles(int m, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> img(m + 1);
  for (int i = 0; i <= m; ++i) img[i] = i;
  std::vector<bool> used(m + 1, false);
  for (const auto& c : cycles) {
    for (size_t i = 0; i < c.size(); ++i) {
      int a = c[i], b = c[(i + 1) % c.size()];
      QT_INPUT(a >= 1 && a <= m && !used[a], "bad cycle entry");
      used[a] = true;
      img[a] = b;
    }
  }
  return from_images(std::move(img));
}

int Perm::apply(int k) const {
  QT_CHECK(k >= 1 && k <= size(), "Perm::apply out of range");
  return img_[k];
}

Perm Perm::inverse() const {
  std::vector<int> inv(img_.size());
  for (int i = 1; i <= size(); ++i) inv[img_[i]] = i;
  return from_images(std::move(inv));
}

bool Perm::is_identity() const {
  for (int i = 1; i <= size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

bool Perm::is_pairing() const {
  for (int i = 1; i <= size(); ++i)
    if (img_[i] == i || img_[img_[i]] != i) return false;
  return true;
}

int Perm::parity() const {
  int m = size();
  std::vector<bool> seen(m + 1, false);
  int transpositions = 0;
  for (int i = 1; i <= m; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0 ? 1 : -1;
}

std::vector<std::vector<int>> Perm::cycles(bool include_fixed) const {
  std::vector<std::vector<int>> out;
  int m = size();
  std::vector<bool> seen(m + 1, false);
  for (int i = 1; i <= m; ++i) {
    if (seen[i]) continue;
    std::vector<int> c;
    for (int j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      c.push_back(j);
    }
    if (include_fixed || c.size() > 1) out.push_back(std::move(c));
  }
  return out;
}

int Perm::cycle_count() const { return static_cast<int>(cycles().size()); }

std::string Perm::to_cycle_string() const {
  std::string s;
  for (const auto& c : cycles()) {
    s += '(';
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(c[i]);
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

Perm compose(const Perm& a, const Perm& b) {
  QT_CHECK(a.size() == b.size(), "size mismatch in compose");
  std::vector<int> img(a.size() + 1);
  for (int i = 1; i <= a.size(); ++i) img[i] = a(b(i));
  return Perm::from_images(std::move(img));
}

static void pairings_rec(std::vector<int>& img, std::vector<bool>& used, int m,
                         std::vector<Perm>& out) {
  int a = 0;
  for (int i = 1; i <= m; ++i)
    if (!used[i]) {
      a = i;
      break;
    }
  if (a == 0) {
    out.push_back(Perm::from_images(img));
    return;
  }
  used[a] = true;
  for (int b = a + 1; b <= m; ++b) {
    if (used[b]) continue;
    used[b] = true;
    img[a] = b;
    img[b] = a;
    pairings_rec(img, used, m, out);
    used[b] = false;
  }
  used[a] = false;
}

std::vector<Perm> enumerate_pairings(int m) {
  QT_INPUT(m >= 0, "negative size");
  if (m % 2 != 0) return {};
  std::vector<int> img(m + 1);
  std::vector<bool> used(m + 1, false);
  std::vector<Perm> out;
  pairings_rec(img, used, m, out);
  return out;
}

std::uint64_t double_factorial_odd(int m) {
  std::uint64_t r = 1;
  for (int k = m; k >= 1; k -= 2) r *= static_cast<std::uint64_t>(k);
  return r;
}

// --------------------------------------------------------------------------
// SignedPerm

SignedPerm SignedPerm::identity(int n, bool has_inf) {
  QT_INPUT(n >= 0, "negative size");
  SignedPerm p;
  p.n_ = n;
  p.has_inf_ = has_inf;
  p.img_.resize(2 * n + 1);
  for (int k = -n; k <= n; ++k) p.img_[k + n] = k;
  p.pos_inf_ = kInf;
  p.neg_inf_ = -kInf;
  return p;
}

bool SignedPerm::in_domain(int k) const {
  if (k == kInf || k == -kInf) return has_inf_;
  return k != 0 && k >= -n_ && k <= n_;
}

std::vector<int> SignedPerm::domain() const {
  std::vector<int> d;
  if (has_inf_) d.push_back(kInf);
  for (int m = 1; m <= n_; ++m) {
    d.push_back(m);
    d.push_back(-m);
  }
  if (has_inf_) d.push_back(-kInf);
  return d;
}

int SignedPerm::apply(int k) const {
  if (k == kInf) {
    QT_CHECK(has_inf_, "inf outside domain");
    return pos_inf_;
  }
  if (k == -kInf) {
    QT_CHECK(has_inf_, "-inf outside domain");
    return neg_inf_;
  }
  QT_CHECK(in_domain(k), "symbol outside domain");
  return img_[k + n_];
}

void SignedPerm::set(int k, int v) {
  if (k == kInf)
    pos_inf_ = v;
  else if (k == -kInf)
    neg_inf_ = v;
  else
    img_[k + n_] = v;
}

SignedPerm SignedPerm::from_cycles(int n, bool has_inf, const std::vector<std::vector<int>>& cycles) {
  SignedPerm p = identity(n, has_inf);
  std::set<int> used;
  for (const auto& c : cycles) {
    for (size_t i = 0; i < c.size(); ++i) {
      int a = c[i], b = c[(i + 1) % c.size()];
      QT_INPUT(p.in_domain(a), "cycle symbol outside domain: " + sym_to_string(a));
      QT_INPUT(used.insert(a).second, "symbol repeated: " + sym_to_string(a));
      p.set(a, b);
    }
  }
  // validate bijectivity
  std::set<int> image;
  for (int k : p.domain()) QT_INPUT(image.insert(p.apply(k)).second, "not a bijection");
  return p;
}

static std::vector<std::vector<int>> parse_cycle_list(const std::string& s) {
  std::vector<std::vector<int>> cycles;
  size_t i = 0;
  auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
  skip_ws();
  while (i < s.size()) {
    if (s[i] != '(') throw ParseError("expected '(' in cycle string");
    ++i;
    std::vector<int> cyc;
    skip_ws();
    while (i < s.size() && s[i] != ')') {
      size_t j = i;
      while (j < s.size() && s[j] != ',' && s[j] != ')' &&
             !std::isspace(static_cast<unsigned char>(s[j])))
        ++j;
      cyc.push_back(sym_from_string(s.substr(i, j - i)));
      i = j;
      skip_ws();
      if (i < s.size() && s[i] == ',') {
        ++i;
        skip_ws();
      }
    }
    if (i >= s.size()) throw ParseError("unterminated cycle");
    ++i;  // ')'
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return cycles;
}

SignedPerm SignedPerm::from_cycle_string(int n, bool has_inf, const std::string& s) {
  return from_cycles(n, has_inf, parse_cycle_list(s));
}

SignedPerm SignedPerm::inverse() const {
  SignedPerm p = identity(n_, has_inf_);
  for (int k : domain()) p.set(apply(k), k);
  return p;
}

SignedPerm SignedPerm::delta_conjugate() const {
  SignedPerm p = identity(n_, has_inf_);
  for (int k : domain()) p.set(k, -apply(-k));
  return p;
}

SignedPerm SignedPerm::sign_conjugate(const std::vector<int>& eps) const {
  QT_INPUT(static_cast<int>(eps.size()) >= n_ + 1, "eps too short");
  auto e = [&](int k) {
    if (k == kInf || k == -kInf) return k;
    return eps[k > 0 ? k : -k] * k;
  };
  SignedPerm p = identity(n_, has_inf_);
  for (int k : domain()) p.set(k, e(apply(e(k))));
  return p;
}

SignedPerm SignedPerm::extended_with_inf() const {
  if (has_inf_) return *this;
  SignedPerm p = identity(n_, true);
  for (int k : domain()) p.set(k, apply(k));
  return p;
}

bool SignedPerm::is_identity() const {
  for (int k : domain())
    if (apply(k) != k) return false;
  return true;
}

std::optional<std::string> SignedPerm::premap_violation() const {
  for (int k : domain()) {
    // delta pi delta = pi^{-1}  <=>  (delta pi)^2 = id
    if (-apply(-apply(k)) != k)
      return "delta pi delta != pi^{-1} at " + sym_to_string(k);
  }
  for (const auto& c : cycles()) {
    std::set<int> abs;
    for (int k : c) {
      int a = k > 0 ? k : -k;
      if (!abs.insert(a).second)
        return "cycle contains both orientations of " + sym_to_string(a);
    }
  }
  return std::nullopt;
}

bool SignedPerm::is_premap() const { return !premap_violation().has_value(); }

bool SignedPerm::is_alternating() const {
  for (int k : domain())
    if ((k > 0) == (apply(k) > 0)) return false;
  return true;
}

bool SignedPerm::is_involution_pairing() const {
  for (int k : domain())
    if (apply(k) == k || apply(apply(k)) != k) return false;
  return true;
}

std::vector<std::vector<int>> SignedPerm::cycles() const {
  std::vector<std::vector<int>> out;
  std::set<int> seen;
  for (int start : domain()) {
    if (seen.count(start)) continue;
    std::vector<int> c;
    int j = start;
    do {
      seen.insert(j);
      c.push_back(j);
      j = apply(j);
    } while (j != start);
    // rotate to sym_rank-minimal element
    size_t best = 0;
    for (size_t i = 1; i < c.size(); ++i)
      if (sym_rank(c[i]) < sym_rank(c[best])) best = i;
    std::rotate(c.begin(), c.begin() + best, c.end());
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return sym_rank(a[0]) < sym_rank(b[0]); });
  return out;
}

int SignedPerm::cycle_count() const { return static_cast<int>(cycles().size()); }

int SignedPerm::sign() const {
  return (domain_size() - cycle_count()) % 2 == 0 ? 1 : -1;
}

int SignedPerm::cycle_count_excluding_inf() const {
  int c = 0;
  for (const auto& cyc : cycles()) {
    bool has = false;
    for (int k : cyc)
      if (k == kInf || k == -kInf) has = true;
    if (!has) ++c;
  }
  return c;
}

bool SignedPerm::operator==(const SignedPerm& o) const {
  return n_ == o.n_ && has_inf_ == o.has_inf_ && img_ == o.img_ &&
         pos_inf_ == o.pos_inf_ && neg_inf_ == o.neg_inf_;
}

nlohmann::json SignedPerm::to_json() const {
  nlohmann::json cyc = nlohmann::json::array();
  for (const auto& c : cycles()) {
    nlohmann::json jc = nlohmann::json::array();
    for (int k : c) {
      if (k == kInf || k == -kInf)
        jc.push_back(sym_to_string(k));
      else
        jc.push_back(k);
    }
    cyc.push_back(std::move(jc));
  }
  return nlohmann::json{{"n", n_}, {"infinity", has_inf_}, {"cycles", std::move(cyc)}};
}

SignedPerm SignedPerm::from_json(const nlohmann::json& j) {
  QT_INPUT(j.is_object() && j.contains("n") && j.contains("infinity") && j.contains("cycles"),
           "permutation JSON needs n, infinity, cycles");
  int n = j.at("n").get<int>();
  bool has_inf = j.at("infinity").get<bool>();
  std::vector<std::vector<int>> cycles;
  for (const auto& jc : j.at("cycles")) {
    std::vector<int> c;
    for (const auto& e : jc) {
      if (e.is_string())
        c.push_back(sym_from_string(e.get<std::string>()));
      else
        c.push_back(e.get<int>());
    }
    cycles.push_back(std::move(c));
  }
  return from_cycles(n, has_inf, cycles);
}

std::string SignedPerm::to_cycle_string() const {
  std::string s;
  for (const auto& c : cycles()) {
    s += '(';
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) s += ',';
      s += sym_to_string(c[i]);
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

SignedPerm compose(const SignedPerm& a, const SignedPerm& b) {
  QT_CHECK(a.n() == b.n() && a.has_inf() == b.has_inf(), "shape mismatch in compose");
  SignedPerm p = SignedPerm::identity(a.n(), a.has_inf());
  for (int k : p.domain()) p.set(k, a(b(k)));
  return p;
}

// --------------------------------------------------------------------------
// SupportPerm

SupportPerm SupportPerm::from_map(std::vector<std::pair<int, int>> pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    return sym_rank(a.first) < sym_rank(b.first);
  });
  SupportPerm p;
  for (const auto& [k, v] : pairs) {
    p.support_.push_back(k);
    p.img_.push_back(v);
  }
  std::set<int> sup(p.support_.begin(), p.support_.end()),
      img(p.img_.begin(), p.img_.end());
  QT_INPUT(sup.size() == p.support_.size() && sup == img, "not a permutation of its support");
  return p;
}

SupportPerm SupportPerm::from_cycles(const std::vector<std::vector<int>>& cycles) {
  std::vector<std::pair<int, int>> m;
  for (const auto& c : cycles)
    for (size_t i = 0; i < c.size(); ++i) m.emplace_back(c[i], c[(i + 1) % c.size()]);
  return from_map(std::move(m));
}

SupportPerm SupportPerm::from_cycle_string(const std::string& s) {
  return from_cycles(parse_cycle_list(s));
}

SupportPerm SupportPerm::identity_on(std::vector<int> support) {
  std::vector<std::pair<int, int>> m;
  for (int k : support) m.emplace_back(k, k);
  return from_map(std::move(m));
}

SupportPerm SupportPerm::restriction(const SignedPerm& p, const std::vector<int>& support) {
  std::set<int> sup(support.begin(), support.end());
  std::vector<std::pair<int, int>> m;
  for (int k : support) {
    int v = p(k);
    QT_INPUT(sup.count(v), "support not invariant");
    m.emplace_back(k, v);
  }
  return from_map(std::move(m));
}

bool SupportPerm::contains(int k) const { return index_of(k) >= 0; }

bool SupportPerm::has_inf() const { return contains(kInf) || contains(-kInf); }

int SupportPerm::index_of(int k) const {
  long r = sym_rank(k);
  auto it = std::lower_bound(support_.begin(), support_.end(), r,
                             [](int s, long rank) { return sym_rank(s) < rank; });
  if (it == support_.end() || *it != k) return -1;
  return static_cast<int>(it - support_.begin());
}

int SupportPerm::apply(int k) const {
  int i = index_of(k);
  QT_CHECK(i >= 0, "symbol outside support");
  return img_[i];
}

SupportPerm SupportPerm::inverse() const {
  std::vector<std::pair<int, int>> m;
  for (int i = 0; i < size(); ++i) m.emplace_back(img_[i], support_[i]);
  return from_map(std::move(m));
}

SupportPerm compose(const SupportPerm& a, const SupportPerm& b) {
  QT_CHECK(a.support() == b.support(), "support mismatch in compose");
  std::vector<std::pair<int, int>> m;
  for (int k : b.support()) m.emplace_back(k, a(b(k)));
  return SupportPerm::from_map(std::move(m));
}

std::vector<std::vector<int>> SupportPerm::cycles() const {
  std::vector<std::vector<int>> out;
  std::set<int> seen;
  for (int start : support_) {
    if (seen.count(start)) continue;
    std::vector<int> c;
    int j = start;
    do {
      seen.insert(j);
      c.push_back(j);
      j = apply(j);
    } while (j != start);
    out.push_back(std::move(c));  // start is rank-minimal: support_ is rank-sorted
  }
  return out;
}

int SupportPerm::cycle_count() const { return static_cast<int>(cycles().size()); }

SignedPerm SupportPerm::extend_identity(int n, bool with_inf) const {
  SignedPerm p = SignedPerm::identity(n, with_inf);
  for (int i = 0; i < size(); ++i) {
    QT_INPUT(p.in_domain(support_[i]), "support exceeds domain");
    p.set(support_[i], img_[i]);
  }
  return p;
}

SignedPerm SupportPerm::doubled(int n, bool with_inf) const {
  SignedPerm p = SignedPerm::identity(n, with_inf);
  for (int i = 0; i < size(); ++i) {
    QT_INPUT(!contains(-support_[i]), "support contains both orientations");
    QT_INPUT(p.in_domain(support_[i]), "support exceeds domain");
    p.set(support_[i], img_[i]);
    p.set(-img_[i], -support_[i]);
  }
  QT_CHECK(p.is_premap(), "doubled map is not a premap");
  return p;
}

bool SupportPerm::operator==(const SupportPerm& o) const {
  return support_ == o.support_ && img_ == o.img_;
}

std::string SupportPerm::to_cycle_string() const {
  std::string s;
  for (const auto& c : cycles()) {
    s += '(';
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) s += ',';
      s += sym_to_string(c[i]);
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

nlohmann::json SupportPerm::to_json() const {
  nlohmann::json cyc = nlohmann::json::array();
  for (const auto& c : cycles()) {
    nlohmann::json jc = nlohmann::json::array();
    for (int k : c) {
      if (k == kInf || k == -kInf)
        jc.push_back(sym_to_string(k));
      else
        jc.push_back(k);
    }
    cyc.push_back(std::move(jc));
  }
  return nlohmann::json{{"cycles", std::move(cyc)}};
}

SupportPerm SupportPerm::from_json(const nlohmann::json& j) {
  QT_INPUT(j.is_object() && j.contains("cycles"), "support permutation JSON needs cycles");
  std::vector<std::pair<int, int>> m;
  for (const auto& jc : j.at("cycles")) {
    std::vector<int> c;
    for (const auto& e : jc) {
      if (e.is_string())
        c.push_back(sym_from_string(e.get<std::string>()));
      else
        c.push_back(e.get<int>());
    }
    for (size_t i = 0; i < c.size(); ++i) m.emplace_back(c[i], c[(i + 1) % c.size()]);
  }
  return from_map(std::move(m));
}

SupportPerm induced(const SignedPerm& p, const std::vector<int>& J) {
  QT_INPUT(!J.empty(), "induced permutation needs a nonempty subset");
  std::set<int> in_j(J.begin(), J.end());
  std::vector<std::pair<int, int>> m;
  for (int k : J) {
    QT_INPUT(p.in_domain(k), "subset exceeds domain");
    int v = p(k);
    int guard = p.domain_size();
    while (!in_j.count(v)) {
      v = p(v);
      QT_CHECK(guard-- > 0, "induced map failed to return");
    }
    m.emplace_back(k, v);
  }
  return SupportPerm::from_map(std::move(m));
}

// --------------------------------------------------------------------------
// Fundamental domain, K-map, Euler characteristic

SupportPerm fundamental_domain(const SignedPerm& premap) {
  QT_INPUT(premap.is_premap(), "fundamental domain requires a premap");
  std::vector<std::pair<int, int>> m;
  std::set<int> taken;  // absolute values already represented
  for (const auto& c : premap.cycles()) {
    int a0 = c[0] > 0 ? c[0] : -c[0];
    if (taken.count(a0)) continue;  // mirror of an earlier cycle
    // c[0] is the sym_rank-minimal element of the cycle. The minimal element
    // over the cycle/mirror pair has positive sign; keep the cycle containing
    // it. c[0] is positive exactly in that cycle.
    bool keep = c[0] > 0;
    for (int k : c) taken.insert(k > 0 ? k : -k);
    if (!keep) continue;
    for (size_t i = 0; i < c.size(); ++i) m.emplace_back(c[i], c[(i + 1) % c.size()]);
  }
  return SupportPerm::from_map(std::move(m));
}

static void check_phi_alpha_shapes(const SupportPerm& phi, const SignedPerm& alpha) {
  for (int k : phi.support())
    QT_INPUT(k == kInf || k > 0, "phi must have positive support");
  QT_INPUT(!phi.contains(kInf) || alpha.has_inf(), "phi has inf but alpha does not");
  int seen = 0;
  for (int k = 1; k <= alpha.n(); ++k) {
    QT_INPUT(phi.contains(k), "phi support must cover 1..n");
    ++seen;
  }
  QT_INPUT(seen + (phi.contains(kInf) ? 1 : 0) == phi.size(), "phi support exceeds 1..n, inf");
  QT_INPUT(!alpha.has_inf() || phi.contains(kInf), "alpha has inf but phi does not");
  if (alpha.has_inf()) QT_INPUT(alpha(kInf) == kInf && alpha(-kInf) == -kInf, "alpha must fix inf");
}

SignedPerm k_vertices(const SupportPerm& phi, const SignedPerm& alpha) {
  check_phi_alpha_shapes(phi, alpha);
  SignedPerm phi_plus = phi.extend_identity(alpha.n(), alpha.has_inf());
  SignedPerm phi_minus = phi_plus.delta_conjugate();
  return compose(phi_plus.inverse(), compose(alpha.inverse(), phi_minus));
}

int euler_characteristic(const SupportPerm& phi, const SignedPerm& alpha) {
  check_phi_alpha_shapes(phi, alpha);
  QT_INPUT(alpha.is_premap(), "alpha must be a premap");
  SignedPerm k = k_vertices(phi, alpha);
  QT_CHECK(k.is_premap(), "K-map is not a premap");
  int faces = phi.cycle_count();
  int edges2 = alpha.has_inf() ? alpha.cycle_count_excluding_inf() : alpha.cycle_count();
  int vertices2 = k.cycle_count();
  QT_CHECK(edges2 % 2 == 0 && vertices2 % 2 == 0, "odd doubled cycle count");
  return faces + edges2 / 2 + vertices2 / 2 - phi.size();
}

int euler_components(const SupportPerm& phi, const SignedPerm& alpha) {
  check_phi_alpha_shapes(phi, alpha);
  SignedPerm phi_plus = phi.extend_identity(alpha.n(), alpha.has_inf());
  SignedPerm phi_minus = phi_plus.delta_conjugate();
  std::vector<int> dom = alpha.domain();
  std::map<int, int> idx;
  for (size_t i = 0; i < dom.size(); ++i) idx[dom[i]] = static_cast<int>(i);
  std::vector<int> parent(dom.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int k : dom) {
    unite(idx[k], idx[phi_plus(k)]);
    unite(idx[k], idx[phi_minus(k)]);
    unite(idx[k], idx[alpha(k)]);
  }
  std::set<int> roots;
  for (size_t i = 0; i < dom.size(); ++i) roots.insert(find(static_cast<int>(i)));
  // identify mirror orbits
  std::set<std::pair<int, int>> classes;
  for (int r : roots) {
    int mr = find(idx[-dom[r]]);
    classes.insert({std::min(r, mr), std::max(r, mr)});
  }
  return static_cast<int>(classes.size());
}

// --------------------------------------------------------------------------
// Enumerations

std::vector<SignedPerm> enumerate_premaps(int n) {
  // Premaps on +-[n] are exactly delta . p for pairings p of the 2n symbols.
  std::vector<int> flat;  // rank order: 1,-1,2,-2,...
  for (int m = 1; m <= n; ++m) {
    flat.push_back(m);
    flat.push_back(-m);
  }
  std::vector<SignedPerm> out;
  for (const Perm& p : enumerate_pairings(2 * n)) {
    SignedPerm a = SignedPerm::identity(n, false);
    for (int i = 1; i <= 2 * n; ++i) a.set(flat[i - 1], -flat[p(i) - 1]);
    QT_CHECK(a.is_premap(), "enumerated premap invalid");
    out.push_back(std::move(a));
  }
  return out;
}

SignedPerm alternating_from_pairings(const Perm& p_plus, const Perm& p_minus) {
  QT_INPUT(p_plus.size() == p_minus.size(), "pairing size mismatch");
  QT_INPUT(p_plus.is_pairing() && p_minus.is_pairing(), "arguments must be pairings");
  int n = p_plus.size();
  SignedPerm a = SignedPerm::identity(n, false);
  for (int k = 1; k <= n; ++k) {
    a.set(k, -p_plus(k));
    a.set(-k, p_minus(k));
  }
  QT_CHECK(a.is_premap() && a.is_alternating(), "pairing pair gave a bad premap");
  return a;
}

std::vector<SignedPerm> enumerate_alternating_premaps(int n) {
  std::vector<SignedPerm> out;
  auto pairings = enumerate_pairings(n);
  for (const Perm& pp : pairings)
    for (const Perm& pm : pairings) out.push_back(alternating_from_pairings(pp, pm));
  return out;
}

std::vector<SignedPerm> enumerate_involution_premaps(int n) {
  std::vector<SignedPerm> out;
  for (const Perm& p : enumerate_pairings(n)) {
    // each pair {a,b} independently gets a sign pattern: straight or flipped
    std::vector<std::pair<int, int>> pairs;
    for (int k = 1; k <= n; ++k)
      if (k < p(k)) pairs.emplace_back(k, p(k));
    int np = static_cast<int>(pairs.size());
    for (int mask = 0; mask < (1 << np); ++mask) {
      SignedPerm a = SignedPerm::identity(n, false);
      for (int i = 0; i < np; ++i) {
        auto [x, y] = pairs[i];
        int s = (mask >> i) & 1 ? -1 : 1;
        a.set(x, s * y);
        a.set(s * y, x);
        a.set(-x, -s * y);
        a.set(-s * y, -x);
      }
      QT_CHECK(a.is_premap() && a.is_involution_pairing(), "bad involutive premap");
      out.push_back(std::move(a));
    }
  }
  return out;
}

}  // namespace quatrace
