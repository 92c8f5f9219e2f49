#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "realfunm/cmatrix.hpp"
#include "realfunm/funm.hpp"
#include "realfunm/report.hpp"

namespace realfunm {

// SplitMix64; the experiment generator. Cheap, splittable, and easy to
// reproduce in other languages, which is the property the experiments
// care about.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next();
  double next_unit();           // [0, 1), 53 random bits
  int next_below(int bound);    // uniform integer in [0, bound)

 private:
  std::uint64_t s_;
};

// Order-independent stream derivation: one SplitMix64 output step
// absorbs each of role, a, b by xor-then-step. Every generated quantity
// (cut points, diagonal entries, coefficients) draws from its own
// stream, so instances are reproducible regardless of generation order.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t role, std::uint64_t a,
                          std::uint64_t b);

// Uniform value in [0, 1) carrying `digits` decimal digits, assembled
// from successive 53-bit chunks of the stream.
XScalar hp_unit(SplitMix64& g, int digits);

struct ExperimentSpec {
  int N = 64;
  int n_blocks = 4;
  double rho = 2.0;
  int gen_digits = 64;       // precision of the reference construction
  double coef_range = 1.0;   // similarity entries uniform in [-range, range]
  std::string function = "exp";
  std::uint64_t seed = 1;
  int trials = 20;

  void validate() const;
};

// One synthetic problem: T = S D S^-1 with S unit upper-triangular and
// D block diagonal ranges, with the reference F = S f(D) S^-1 computed
// at gen_digits and rounded to working precision.
struct Instance {
  CMatrix T;
  CMatrix F_ref;
  std::vector<int> boundaries;  // construction block boundaries
  double kappa_S = 0.0;         // 2-norm estimates at working precision
  double kappa_T = 0.0;
  double construction_residual = 0.0;  // ||S S^-1 - I||_max at gen_digits
};

Instance gen_instance(const ExperimentSpec& spec, int trial = 0);

// Error metrics of F against the reference: operator-2 / Frobenius / max
// norms of the difference, their restrictions to the two main block
// diagonals ("incomplete"), and the max relative entrywise error over
// nonzero reference entries.
FunmReport metrics(const CMatrix& f, const CMatrix& f_ref, const BlockPartition& partition);

struct ExperimentResult {
  FunmReport mean;
  std::vector<FunmReport> per_trial;
};

ExperimentResult run_experiment(const ExperimentSpec& spec, const FunmConfig& cfg);

// Matrix file format: header "CMAT <rows> <cols>", then row-major
// "(re,im)" tokens; doubles in shortest form that reparses identically.
std::string format_double(double value);
void write_matrix(std::ostream& os, const CMatrix& m);
CMatrix read_matrix(std::istream& is);
void write_matrix_file(const std::string& path, const CMatrix& m);
CMatrix read_matrix_file(const std::string& path);

}  // namespace realfunm
