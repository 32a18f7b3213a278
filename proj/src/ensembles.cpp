#include "quatrace/ensembles.hpp"

#include <cmath>
#include <string>

#include "quatrace/error.hpp"

namespace quatrace {
namespace {

EnsembleKind kind_from_string(const std::string& s) {
  if (s == "ginibre") return EnsembleKind::kGinibre;
  if (s == "gse") return EnsembleKind::kGSE;
  if (s == "wishart") return EnsembleKind::kWishart;
  if (s == "haar") return EnsembleKind::kHaarSymplectic;
  if (s == "identity") return EnsembleKind::kIdentity;
  if (s == "fixed") return EnsembleKind::kFixed;
  throw ParseError("unknown ensemble kind '" + s + "'");
}

std::string kind_to_string(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::kGinibre: return "ginibre";
    case EnsembleKind::kGSE: return "gse";
    case EnsembleKind::kWishart: return "wishart";
    case EnsembleKind::kHaarSymplectic: return "haar";
    case EnsembleKind::kIdentity: return "identity";
    case EnsembleKind::kFixed: return "fixed";
  }
  throw InternalError("internal check failed: unhandled ensemble kind");
}

BigRat component_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) return BigRat(v.get<long long>());
  if (v.is_string()) {
    try {
      BigRat r(v.get<std::string>());
      if (boost::multiprecision::denominator(r) == 0)
        throw std::invalid_argument("zero denominator");
      return r;
    } catch (const std::exception&) {
      throw ParseError("bad rational literal '" + v.get<std::string>() + "'");
    }
  }
  throw ParseError("matrix component must be an integer or a \"p/q\" string");
}

QMatrixR matrix_from_json(const nlohmann::json& v) {
  if (v.is_string() && v.get<std::string>() == "identity") return QMatrixR();  // size bound later
  if (!v.is_array() || v.empty()) throw ParseError("matrix must be \"identity\" or an array of rows");
  int n = static_cast<int>(v.size());
  QMatrixR m(n);
  for (int r = 0; r < n; ++r) {
    const auto& row = v[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError("matrix rows must all have the outer length");
    for (int c = 0; c < n; ++c) {
      const auto& q = row[c];
      if (!q.is_array() || q.size() != 4)
        throw ParseError("matrix entries must be [a,b,c,d] quadruples");
      m.at(r, c) = QuatR{component_from_json(q[0]), component_from_json(q[1]),
                         component_from_json(q[2]), component_from_json(q[3])};
    }
  }
  return m;
}

nlohmann::json matrix_to_json(const QMatrixR& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.size(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.size(); ++c) {
      const QuatR& q = m.at(r, c);
      row.push_back({q.a.str(), q.b.str(), q.c.str(), q.d.str()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

bool is_gaussian(EnsembleKind k) {
  return k == EnsembleKind::kGinibre || k == EnsembleKind::kGSE ||
         k == EnsembleKind::kWishart;
}

bool is_deterministic(EnsembleKind k) {
  return k == EnsembleKind::kIdentity || k == EnsembleKind::kFixed;
}

std::map<int, EnsembleSpec> parse_manifest(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("manifest must be a JSON array");
  std::map<int, EnsembleSpec> out;
  for (const auto& item : j) {
    if (!item.is_object()) throw ParseError("manifest entries must be objects");
    if (!item.contains("color") || !item["color"].is_number_integer())
      throw ParseError("manifest entry needs an integer \"color\"");
    int color = item["color"].get<int>();
    if (color < 1) throw ParseError("colors start at 1");
    if (out.count(color)) throw ParseError("color " + std::to_string(color) + " bound twice");
    if (!item.contains("kind") || !item["kind"].is_string())
      throw ParseError("manifest entry needs a string \"kind\"");
    EnsembleSpec spec;
    spec.kind = kind_from_string(item["kind"].get<std::string>());
    if (spec.kind == EnsembleKind::kWishart) {
      if (!item.contains("M") || !item["M"].is_number_integer())
        throw ParseError("wishart entry needs an integer \"M\"");
      spec.M = item["M"].get<int>();
      if (spec.M < 1) throw ParseError("wishart M must be positive");
      spec.D = item.contains("D") ? matrix_from_json(item["D"])
                                  : QMatrixR();
      if (spec.D.size() == 0) spec.D = QMatrixR::identity(spec.M);
      if (spec.D.size() != spec.M)
        throw ParseError("wishart D must be M x M");
    } else if (spec.kind == EnsembleKind::kFixed) {
      if (!item.contains("D")) throw ParseError("fixed entry needs a matrix \"D\"");
      spec.D = matrix_from_json(item["D"]);
      if (spec.D.size() == 0) throw ParseError("fixed entry needs an explicit matrix");
    } else if (item.contains("D") || item.contains("M")) {
      throw ParseError("only wishart and fixed entries take \"M\" or \"D\"");
    }
    out[color] = spec;
  }
  return out;
}

nlohmann::json manifest_to_json(const std::map<int, EnsembleSpec>& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [color, spec] : m) {
    nlohmann::json item;
    item["color"] = color;
    item["kind"] = kind_to_string(spec.kind);
    if (spec.kind == EnsembleKind::kWishart) {
      item["M"] = spec.M;
      item["D"] = matrix_to_json(spec.D);
    } else if (spec.kind == EnsembleKind::kFixed) {
      item["D"] = matrix_to_json(spec.D);
    }
    out.push_back(std::move(item));
  }
  return out;
}

QMatrix<double> to_double(const QMatrixR& m) {
  QMatrix<double> r(m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) {
      const QuatR& q = m.at(i, j);
      r.at(i, j) = {q.a.convert_to<double>(), q.b.convert_to<double>(),
                    q.c.convert_to<double>(), q.d.convert_to<double>()};
    }
  return r;
}

namespace {

// splitmix64 finalizer; mixes (seed, stream) into uncorrelated engine seeds.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

SplitRng::SplitRng(std::uint64_t seed, std::uint64_t stream)
    : gen_(mix(mix(seed) ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

double SplitRng::uniform01() {
  // 53-bit mantissa in (0, 1]; never 0, so log() below is safe.
  return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
}

double SplitRng::normal() {
  // Box-Muller instead of std::normal_distribution: the standard leaves that
  // algorithm unspecified, and the same seed must reproduce bytes everywhere.
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u = uniform01();
  double v = uniform01();
  double r = std::sqrt(-2.0 * std::log(u));
  double theta = 6.283185307179586476925286766559 * v;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Quat<double> sample_standard_quaternion(SplitRng& rng) {
  return {0.5 * rng.normal(), 0.5 * rng.normal(), 0.5 * rng.normal(),
          0.5 * rng.normal()};
}

QuaternionMatrix sample_ginibre(int N, SplitRng& rng) {
  QT_INPUT(N >= 1, "matrix dimension must be positive");
  QuaternionMatrix g(N);
  double s = 1.0 / std::sqrt(static_cast<double>(N));
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) g.at(r, c) = sample_standard_quaternion(rng) * s;
  return g;
}

QuaternionMatrix sample_gse(int N, SplitRng& rng) {
  QT_INPUT(N >= 1, "matrix dimension must be positive");
  QuaternionMatrix g(N);
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) g.at(r, c) = sample_standard_quaternion(rng);
  QuaternionMatrix t = g + adjoint(g);
  double s = 1.0 / std::sqrt(2.0 * N);
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) t.at(r, c) = t.at(r, c) * s;
  return t;
}

QuaternionMatrix sample_wishart(int N, int M, const QuaternionMatrix& D,
                                SplitRng& rng) {
  QT_INPUT(N >= 1 && M >= 1, "matrix dimensions must be positive");
  QT_INPUT(D.size() == M, "wishart D must be M x M");
  // G is M x N; QMatrix is square, so keep the rectangle as nested vectors.
  std::vector<std::vector<Quaternion>> g(M, std::vector<Quaternion>(N));
  for (int a = 0; a < M; ++a)
    for (int i = 0; i < N; ++i) g[a][i] = sample_standard_quaternion(rng);
  QuaternionMatrix w(N);
  double s = 1.0 / N;
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) {
      const Quaternion& d = D.at(a, b);
      if (d.is_zero()) continue;
      for (int i = 0; i < N; ++i) {
        Quaternion left = g[a][i].conj() * d;
        for (int j = 0; j < N; ++j) w.at(i, j) += left * g[b][j] * s;
      }
    }
  return w;
}

QuaternionMatrix sample_haar(int N, SplitRng& rng) {
  QT_INPUT(N >= 1, "matrix dimension must be positive");
  // Modified Gram-Schmidt on the columns of a Ginibre draw, in native
  // quaternion arithmetic with the right-module inner product
  // <u, v> = sum_i conj(u_i) v_i (so columns are combined as v -= u * c).
  std::vector<std::vector<Quaternion>> col(N, std::vector<Quaternion>(N));
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) col[c][r] = sample_standard_quaternion(rng);
  auto inner = [N](const std::vector<Quaternion>& u, const std::vector<Quaternion>& v) {
    Quaternion s{};
    for (int i = 0; i < N; ++i) s += u[i].conj() * v[i];
    return s;
  };
  auto orthonormalize = [&](int c) {
    for (int k = 0; k < c; ++k) {
      Quaternion p = inner(col[k], col[c]);
      for (int i = 0; i < N; ++i) col[c][i] = col[c][i] - col[k][i] * p;
    }
    double n2 = inner(col[c], col[c]).a;
    QT_CHECK(n2 > 1e-24, "gram-schmidt hit a numerically dependent column");
    double s = 1.0 / std::sqrt(n2);
    for (int i = 0; i < N; ++i) col[c][i] = col[c][i] * s;
  };
  for (int c = 0; c < N; ++c) {
    orthonormalize(c);
    // One re-orthonormalization pass keeps the residual at rounding level
    // even when the random column was nearly in the span of the others.
    double worst = 0;
    for (int k = 0; k < c; ++k) {
      Quaternion p = inner(col[k], col[c]);
      worst = std::max(worst, std::sqrt(p.norm2()));
    }
    if (worst > 1e-8) orthonormalize(c);
  }
  QuaternionMatrix u(N);
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) u.at(r, c) = col[c][r];
  return u;
}

QuaternionMatrix sample_ensemble(const EnsembleSpec& spec, int N, SplitRng& rng) {
  switch (spec.kind) {
    case EnsembleKind::kGinibre: return sample_ginibre(N, rng);
    case EnsembleKind::kGSE: return sample_gse(N, rng);
    case EnsembleKind::kWishart:
      return sample_wishart(N, spec.M, to_double(spec.D), rng);
    case EnsembleKind::kHaarSymplectic: return sample_haar(N, rng);
    case EnsembleKind::kIdentity: return QuaternionMatrix::identity(N);
    case EnsembleKind::kFixed:
      QT_INPUT(spec.D.size() == N, "fixed matrix does not match the dimension");
      return to_double(spec.D);
  }
  throw InternalError("internal check failed: unhandled ensemble kind");
}

double symplectic_residual(const QuaternionMatrix& u) {
  QuaternionMatrix r = adjoint(u) * u - QuaternionMatrix::identity(u.size());
  double worst = 0;
  for (int i = 0; i < u.size(); ++i)
    for (int j = 0; j < u.size(); ++j)
      worst = std::max(worst, std::sqrt(r.at(i, j).norm2()));
  return worst;
}

}  // namespace quatrace
