#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace realfunm {

// Everything one computation or experiment reports: condition numbers,
// error metrics against a reference, multiplication counts, wall-clock
// phase timings. NaN marks a field that was not measured; to_text()
// omits such fields.
struct FunmReport {
  static constexpr double unset = std::numeric_limits<double>::quiet_NaN();

  // condition numbers are 2-norm power-iteration estimates (see
  // kappa_norm in the text form)
  double kappa_S = unset;
  double kappa_T = unset;
  double norm_max_ref = unset;

  double err_op2 = unset;
  double err_frob = unset;
  double err_frob_incomplete = unset;
  double err_max = unset;
  double err_max_incomplete = unset;
  double err_rel_max = unset;

  double schur_residual = unset;
  double schur_unitarity = unset;

  std::uint64_t mul_count = 0;

  double t_schur = 0, t_partition = 0, t_diag_blocks = 0, t_superdiag_blocks = 0;
  double t_parlett = 0, t_backtransform = 0, t_total = 0;  // seconds

  std::string rng;  // experiment generator identifier, empty otherwise
  std::uint64_t seed = 0;

  std::string to_text() const;  // key=value lines
};

}  // namespace realfunm
