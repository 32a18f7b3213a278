#pragma once

#include <cstdint>
#include <map>
#include <random>

#include <json.hpp>

#include "quatrace/quaternion.hpp"

namespace quatrace {

// The random-matrix families a color can be bound to, plus two deterministic
// bindings (identity and a fixed matrix) that the expansion treats through
// the identity cumulant with the matrix riding along as a residual factor.
enum class EnsembleKind { kGinibre, kGSE, kWishart, kHaarSymplectic, kIdentity, kFixed };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::kIdentity;
  int M = 0;    // Wishart inner dimension
  QMatrixR D;   // Wishart weight (M x M) or the fixed matrix (N x N)
};

bool is_gaussian(EnsembleKind k);       // built from Gaussian entries
bool is_deterministic(EnsembleKind k);  // identity or fixed

// Manifest: [{"color": 1, "kind": "gse"},
//            {"color": 2, "kind": "wishart", "M": 2, "D": "identity"}, ...].
// Inline matrices are rows of [a,b,c,d] quadruples; components are integers
// or "p/q" strings so the exact paths stay exact.
std::map<int, EnsembleSpec> parse_manifest(const nlohmann::json& j);
nlohmann::json manifest_to_json(const std::map<int, EnsembleSpec>& m);

QMatrix<double> to_double(const QMatrixR& m);

// Deterministic stream: one 64-bit seed plus a stream id (e.g. the draw
// counter) fixes every value drawn, independent of how work is divided.
class SplitRng {
 public:
  SplitRng(std::uint64_t seed, std::uint64_t stream);
  double uniform01();  // in (0, 1]
  double normal();     // standard normal, Box-Muller

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0;
};

// Components are independent N(0, 1/4).
Quat<double> sample_standard_quaternion(SplitRng& rng);

QuaternionMatrix sample_ginibre(int N, SplitRng& rng);                // G / sqrt(N)
QuaternionMatrix sample_gse(int N, SplitRng& rng);                    // (G + G*) / sqrt(2N)
QuaternionMatrix sample_wishart(int N, int M, const QuaternionMatrix& D,
                                SplitRng& rng);                       // G* D G / N
QuaternionMatrix sample_haar(int N, SplitRng& rng);                   // Gram-Schmidt
QuaternionMatrix sample_ensemble(const EnsembleSpec& spec, int N, SplitRng& rng);

// Max-norm of U*U - I, the orthonormality residual.
double symplectic_residual(const QuaternionMatrix& u);

}  // namespace quatrace
