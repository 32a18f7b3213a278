#include "quatrace/mc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quatrace/error.hpp"

namespace quatrace {

std::vector<double> value_components(const Value<double>& v) {
  switch (v.kind) {
    case ValueKind::kScalar:
      return {v.scalar};
    case ValueKind::kQuaternion:
      return {v.quat.a, v.quat.b, v.quat.c, v.quat.d};
    case ValueKind::kMatrix: {
      std::vector<double> out;
      out.reserve(static_cast<size_t>(v.matrix.size()) * v.matrix.size() * 4);
      for (int r = 0; r < v.matrix.size(); ++r)
        for (int c = 0; c < v.matrix.size(); ++c) {
          const Quaternion& q = v.matrix.at(r, c);
          out.insert(out.end(), {q.a, q.b, q.c, q.d});
        }
      return out;
    }
  }
  throw InternalError("internal check failed: unhandled value kind");
}

namespace {

Value<double> value_from_components(const Value<double>& shape,
                                    const std::vector<double>& comp) {
  Value<double> v;
  v.kind = shape.kind;
  switch (shape.kind) {
    case ValueKind::kScalar:
      v.scalar = comp[0];
      break;
    case ValueKind::kQuaternion:
      v.quat = {comp[0], comp[1], comp[2], comp[3]};
      break;
    case ValueKind::kMatrix: {
      int n = shape.matrix.size();
      v.matrix = QMatrix<double>(n);
      size_t i = 0;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          v.matrix.at(r, c) = {comp[i], comp[i + 1], comp[i + 2], comp[i + 3]};
          i += 4;
        }
      break;
    }
  }
  return v;
}

}  // namespace

MCEstimate mc_expectation(const ContractionSpec& spec,
                          const std::vector<int>& colors,
                          const std::map<int, EnsembleSpec>& ensembles, int N,
                          long samples, std::uint64_t seed) {
  QT_INPUT(N >= 1, "matrix dimension must be positive");
  QT_INPUT(samples >= 2, "need at least two samples for a standard error");
  int n = static_cast<int>(colors.size());
  for (int c : colors) {
    if (c == 0) continue;
    auto it = ensembles.find(c);
    QT_INPUT(it != ensembles.end(),
             "color " + std::to_string(c) + " is not in the manifest");
  }

  std::vector<double> sum, sumsq;
  Value<double> shape;
  std::vector<QMatrix<double>> mats(n);
  for (long i = 0; i < samples; ++i) {
    SplitRng rng(seed, static_cast<std::uint64_t>(i));
    std::map<int, QuaternionMatrix> draw;
    for (const auto& [color, es] : ensembles) draw[color] = sample_ensemble(es, N, rng);
    for (int k = 0; k < n; ++k)
      mats[k] = colors[k] == 0 ? QuaternionMatrix::identity(N) : draw.at(colors[k]);
    Value<double> v = eval_contraction<double>(spec, mats);
    std::vector<double> comp = value_components(v);
    if (i == 0) {
      shape = v;
      sum.assign(comp.size(), 0.0);
      sumsq.assign(comp.size(), 0.0);
    }
    for (size_t j = 0; j < comp.size(); ++j) {
      sum[j] += comp[j];
      sumsq[j] += comp[j] * comp[j];
    }
  }

  double count = static_cast<double>(samples);
  std::vector<double> mean(sum.size()), se(sum.size());
  for (size_t j = 0; j < sum.size(); ++j) {
    mean[j] = sum[j] / count;
    double var = (sumsq[j] / count - mean[j] * mean[j]) * count / (count - 1);
    se[j] = std::sqrt(std::max(var, 0.0) / count);
  }

  MCEstimate est;
  est.mean = value_from_components(shape, mean);
  est.se = value_from_components(shape, se);
  est.samples = samples;
  est.seed = seed;
  return est;
}

double max_z(const MCEstimate& est, const Value<double>& exact) {
  QT_INPUT(est.mean.kind == exact.kind, "value kinds do not match");
  std::vector<double> m = value_components(est.mean);
  std::vector<double> s = value_components(est.se);
  std::vector<double> e = value_components(exact);
  QT_INPUT(m.size() == e.size(), "value shapes do not match");
  double worst = 0;
  for (size_t j = 0; j < m.size(); ++j) {
    double floor = 1e-12 * (1.0 + std::abs(e[j]));
    worst = std::max(worst, std::abs(m[j] - e[j]) / std::max(s[j], floor));
  }
  return worst;
}

}  // namespace quatrace
