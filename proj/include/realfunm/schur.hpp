#pragma once

#include <utility>
#include <vector>

#include "realfunm/cmatrix.hpp"

namespace realfunm {

// Unitary similarity R = Q T Q^H with T upper triangular, diagonal real
// and ascending. Residual and unitarity defects are measured on exit.
struct SchurForm {
  CMatrix T;
  CMatrix Q;
  double residual = 0.0;        // ||Q T Q^H - R||_F / ||R||_F
  double unitarity = 0.0;       // ||Q^H Q - I||_max
  int swap_count = 0;           // adjacent transpositions spent on sorting
  double max_swap_residual = 0; // largest subdiagonal magnitude zeroed by a swap
  bool used_qr = false;         // false when the triangular fast path applied
};

// Householder reduction to upper Hessenberg form: A = Q H Q^H.
std::pair<CMatrix, CMatrix> hessenberg(const CMatrix& a);

// Swaps the diagonal entries i-1 and i of an upper-triangular T by a
// plane similarity built from the closed-form 2x2 unitary; Q is updated
// to keep Q T Q^H invariant. The rotated subdiagonal entry is zeroed
// exactly and its pre-zeroing magnitude returned.
double swap_adjacent(CMatrix& t, CMatrix& q, int i);

// Bubble sort of the triangular diagonal into ascending order via
// swap_adjacent; returns the number of swaps.
int sort_diagonal(CMatrix& t, CMatrix& q, double* max_swap_residual = nullptr);

// Checks |Im t_ii| <= tol * (1 + ||T||_1) for every diagonal entry,
// zeroes the imaginary parts in place and returns the real diagonal.
// Violations throw std::domain_error naming the worst entry.
std::vector<double> validate_real_spectrum(CMatrix& t, double tol);

// Full pipeline: Hessenberg + implicitly shifted QR on alpha*I - R
// (alpha = ||R||_1 + 1, which flips the eigenvalue order so that the
// natural bottom-up deflation emerges ascending), back-substitution of
// the shift, spectrum validation, and a final sorting pass. Inputs that
// are already upper triangular with a real diagonal skip QR entirely.
SchurForm schur_ascending(const CMatrix& r, double real_tol = 1e-8);

}  // namespace realfunm
