#pragma once

#include "realfunm/cmatrix.hpp"
#include "realfunm/interp.hpp"
#include "realfunm/partition.hpp"
#include "realfunm/report.hpp"
#include "realfunm/scalarfun.hpp"
#include "realfunm/schur.hpp"

namespace realfunm {

struct FunmConfig {
  double rho = 2.0;               // clustering interval length
  int node_count = 16;            // interpolation nodes per block
  int scalar_digits = 30;         // extended precision of the scalar work
  double real_spectrum_tol = 1e-8;
  double degenerate_delta_tol = 1e-8;  // below this half-width: Taylor path
  int taylor_degree = 16;

  enum class Mode { standard, double_block };
  Mode mode = Mode::standard;

  void validate() const;  // throws std::invalid_argument
};

struct FunmResult {
  CMatrix F;
  BlockPartition partition;
  SchurForm schur;
  FunmReport report;
};

// f applied to one diagonal block: Chebyshev interpolation of
// f(gamma + .) on [-delta, delta] evaluated at A = Tkk - gamma*I, or the
// Taylor polynomial of degree cfg.taylor_degree when the block is
// degenerate. reference_nodes is the [-1,1] Chebyshev set at
// cfg.scalar_digits (computed once per funm call).
CMatrix diag_block(const AnalyticFunction& f, const CMatrix& tkk, const BlockInfo& info,
                   const NodeSet& reference_nodes, const FunmConfig& cfg, MulCounter& ctr);

// The coupling block F_{k,k+1} for adjacent diagonal blocks: bivariate
// polynomial approximation of the first divided difference of f applied
// as sum c_ij A^i H B^j. Degenerate sides switch the corresponding
// direction to confluent (Taylor-type) coefficients.
CMatrix superdiag_block(const AnalyticFunction& f, const CMatrix& tkk, const CMatrix& tnext,
                        const CMatrix& h, const BlockInfo& a, const BlockInfo& b,
                        const NodeSet& reference_nodes, const FunmConfig& cfg, MulCounter& ctr);

// Fills every block of F strictly above the first block superdiagonal
// from the scalar recurrence, diagonal by diagonal. Entries inside the
// two main block diagonals are left untouched. Denominators are
// guaranteed >= rho by the partition and asserted here.
CMatrix parlett_fill(const CMatrix& t, CMatrix f, const BlockPartition& partition);

// Full pipeline on a square matrix with real spectrum (within
// cfg.real_spectrum_tol): Schur form with ascending diagonal, partition,
// per-block interpolation, recurrence fill, back transformation.
FunmResult funm(const CMatrix& r, const AnalyticFunction& f, const FunmConfig& cfg = {});

}  // namespace realfunm
