#include "realfunm/funm.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "realfunm/polyeval.hpp"

namespace realfunm {

void FunmConfig::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("FunmConfig: rho must be positive");
  if (node_count < 2) throw std::invalid_argument("FunmConfig: node_count must be at least 2");
  if (scalar_digits < 20)
    throw std::invalid_argument("FunmConfig: scalar_digits must be at least 20");
  if (taylor_degree < 0 || taylor_degree > AnalyticFunction::max_deriv_order)
    throw std::invalid_argument("FunmConfig: taylor_degree out of range");
  if (!(real_spectrum_tol >= 0.0) || !(degenerate_delta_tol >= 0.0))
    throw std::invalid_argument("FunmConfig: tolerances must be nonnegative");
}

namespace {

// Interpolating polynomial of f(gamma + .) on [-delta, delta] in the
// monomial basis, or its Taylor polynomial when delta is (near) zero.
MonomialPoly block_poly(const AnalyticFunction& f, const BlockInfo& info,
                        const NodeSet& reference_nodes, const FunmConfig& cfg) {
  if (info.delta.to_double() < cfg.degenerate_delta_tol)
    return taylor_coeffs(f, info.gamma, cfg.taylor_degree);

  const NodeSet nodes = reference_nodes.scaled(info.delta);
  std::vector<XScalar> values;
  values.reserve(nodes.count());
  for (const XScalar& z : nodes.nodes) values.push_back(f.eval(info.gamma + z));
  return newton_to_monomial(nodes.nodes, divided_differences(nodes, values));
}

}  // namespace

CMatrix diag_block(const AnalyticFunction& f, const CMatrix& tkk, const BlockInfo& info,
                   const NodeSet& reference_nodes, const FunmConfig& cfg, MulCounter& ctr) {
  if (!tkk.square()) throw std::invalid_argument("diag_block: block not square");
  const CMatrix a = tkk.shifted(Complex(-info.gamma.to_double(), 0.0));
  return ps_eval(block_poly(f, info, reference_nodes, cfg), a, ctr);
}

CMatrix superdiag_block(const AnalyticFunction& f, const CMatrix& tkk, const CMatrix& tnext,
                        const CMatrix& h, const BlockInfo& a, const BlockInfo& b,
                        const NodeSet& reference_nodes, const FunmConfig& cfg, MulCounter& ctr) {
  if (!tkk.square() || !tnext.square())
    throw std::invalid_argument("superdiag_block: blocks not square");
  if (h.rows() != tkk.rows() || h.cols() != tnext.rows())
    throw std::invalid_argument("superdiag_block: coupling block shape mismatch");

  const int m1 = cfg.node_count, m2 = cfg.node_count;
  const int digits = cfg.scalar_digits;
  const bool degx = a.delta.to_double() < cfg.degenerate_delta_tol;
  const bool degy = b.delta.to_double() < cfg.degenerate_delta_tol;
  const NodeSet xs = reference_nodes.scaled(a.delta);
  const NodeSet ys = reference_nodes.scaled(b.delta);

  BivariatePoly p;
  if (!degx && !degy) {
    // first divided difference of f on the node grid, interpolated
    XMatrix grid(m1, m2, digits);
    for (int i = 0; i < m1; ++i)
      for (int j = 0; j < m2; ++j)
        grid.at(i, j) = scalar_divdiff(f, a.gamma + xs.nodes[i], b.gamma + ys.nodes[j]);
    p = bivariate_interpolation(grid, xs, ys);
  } else if (degx && !degy) {
    // x side collapsed to a point: confluent divided differences
    // f[gamma1^(i+1), y] down each column, Newton interpolation in y
    // across the rows. All x centers are zero, so the column stage
    // already produces x-monomial coefficients.
    const MonomialPoly tay = taylor_coeffs(f, a.gamma, m1 - 1);
    XMatrix d(m1, m2, digits);
    for (int j = 0; j < m2; ++j) {
      const XScalar y = b.gamma + ys.nodes[j];
      const XScalar denom = y - a.gamma;
      if (denom.is_zero()) throw std::domain_error("superdiag_block: blocks touch");
      d.at(0, j) = scalar_divdiff(f, a.gamma, y);
      for (int i = 1; i < m1; ++i) d.at(i, j) = (d.at(i - 1, j) - tay.coeffs[i]) / denom;
    }
    XMatrix c(m1, m2, digits);
    std::vector<XScalar> row(m2, XScalar(digits));
    for (int i = 0; i < m1; ++i) {
      for (int j = 0; j < m2; ++j) row[j] = d.at(i, j);
      MonomialPoly q = newton_to_monomial(ys.nodes, divided_differences(ys, row));
      for (int j = 0; j < m2; ++j) c.at(i, j) = q.coeffs[j];
    }
    p.coeffs = std::move(c);
  } else if (!degx && degy) {
    // y side collapsed: Taylor-type coefficients f[x, gamma2^(j+1)]
    // across each row, then plain divided differences down the columns.
    const MonomialPoly tay = taylor_coeffs(f, b.gamma, m2 - 1);
    XMatrix v(m1, m2, digits);
    for (int i = 0; i < m1; ++i) {
      const XScalar x = a.gamma + xs.nodes[i];
      const XScalar denom = x - b.gamma;
      if (denom.is_zero()) throw std::domain_error("superdiag_block: blocks touch");
      v.at(i, 0) = scalar_divdiff(f, x, b.gamma);
      for (int j = 1; j < m2; ++j) v.at(i, j) = (v.at(i, j - 1) - tay.coeffs[j]) / denom;
    }
    XMatrix g(m1, m2, digits);
    std::vector<XScalar> col(m1, XScalar(digits));
    for (int j = 0; j < m2; ++j) {
      for (int i = 0; i < m1; ++i) col[i] = v.at(i, j);
      std::vector<XScalar> dd = divided_differences(xs, col);
      for (int i = 0; i < m1; ++i) g.at(i, j) = dd[i];
    }
    p.coeffs = newton_grid_to_monomial_x(g, xs.nodes);
  } else {
    // both sides collapsed: two-variable confluent table
    // M[r][s] = f[gamma1^(r), gamma2^(s)].
    const XScalar diff = b.gamma - a.gamma;
    if (diff.is_zero())
      throw std::domain_error("superdiag_block: degenerate blocks with equal centers");
    const MonomialPoly tay1 = taylor_coeffs(f, a.gamma, m1 - 1);
    const MonomialPoly tay2 = taylor_coeffs(f, b.gamma, m2 - 1);
    XMatrix m(m1 + 1, m2 + 1, digits);
    for (int r = 1; r <= m1; ++r) m.at(r, 0) = tay1.coeffs[r - 1];
    for (int s = 1; s <= m2; ++s) m.at(0, s) = tay2.coeffs[s - 1];
    for (int r = 1; r <= m1; ++r)
      for (int s = 1; s <= m2; ++s) m.at(r, s) = (m.at(r - 1, s) - m.at(r, s - 1)) / diff;
    XMatrix c(m1, m2, digits);
    for (int i = 0; i < m1; ++i)
      for (int j = 0; j < m2; ++j) c.at(i, j) = m.at(i + 1, j + 1);
    p.coeffs = std::move(c);
  }

  const CMatrix ba = tkk.shifted(Complex(-a.gamma.to_double(), 0.0));
  const CMatrix bb = tnext.shifted(Complex(-b.gamma.to_double(), 0.0));
  return bivariate_apply(p, ba, h, bb, ctr);
}

CMatrix parlett_fill(const CMatrix& t, CMatrix f, const BlockPartition& partition) {
  if (!t.square()) throw std::invalid_argument("parlett_fill: matrix not square");
  const int n = t.rows();
  if (f.rows() != n || f.cols() != n)
    throw std::invalid_argument("parlett_fill: value matrix shape mismatch");
  if (partition.boundaries.back() != n)
    throw std::invalid_argument("parlett_fill: partition does not tile the matrix");

  std::vector<int> blk(n);
  for (int i = 0; i < n; ++i) blk[i] = partition.block_of(i);

  for (int d = 1; d < n; ++d)
    for (int i = 0; i + d < n; ++i) {
      const int j = i + d;
      if (blk[j] < blk[i] + 2) continue;
      const Complex den = t.at(j, j) - t.at(i, i);
      if (den.real() < partition.rho * (1.0 - 1e-9))
        throw std::logic_error("parlett_fill: denominator below rho, partition invariant broken");
      Complex s = t.at(i, j) * (f.at(j, j) - f.at(i, i));
      for (int k = i + 1; k < j; ++k)
        s += t.at(i, k) * f.at(k, j) - f.at(i, k) * t.at(k, j);
      f.at(i, j) = s / den;
    }
  return f;
}

FunmResult funm(const CMatrix& r, const AnalyticFunction& f, const FunmConfig& cfg) {
  cfg.validate();
  if (!r.square()) throw std::invalid_argument("funm: matrix not square");
  const int n = r.rows();

  using clock = std::chrono::steady_clock;
  auto secs = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
  };
  const auto t0 = clock::now();
  MulCounter ctr;
  FunmResult out;

  out.schur = schur_ascending(r, cfg.real_spectrum_tol);
  const auto t1 = clock::now();
  out.report.t_schur = secs(t0, t1);
  out.report.schur_residual = out.schur.residual;
  out.report.schur_unitarity = out.schur.unitarity;

  const CMatrix& t = out.schur.T;
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = t.at(i, i).real();
  out.partition = build_partition(diag, cfg.rho, cfg.scalar_digits);
  const auto t2 = clock::now();
  out.report.t_partition = secs(t1, t2);

  const BlockPartition& part = out.partition;
  const int nb = part.block_count();
  const NodeSet ref = chebyshev_nodes(cfg.node_count, -1.0, 1.0, cfg.scalar_digits);

  CMatrix fm(n, n);
  auto put_block = [&fm](const CMatrix& g, int r0, int c0) {
    for (int i = 0; i < g.rows(); ++i)
      for (int j = 0; j < g.cols(); ++j) fm.at(r0 + i, c0 + j) = g.at(i, j);
  };
  auto tblock = [&t, &part](int k) {
    return t.block(part.block_begin(k), part.block_begin(k), part.block_size(k),
                   part.block_size(k));
  };

  auto t3 = clock::now();
  if (cfg.mode == FunmConfig::Mode::standard || nb == 1) {
    for (int k = 0; k < nb; ++k)
      put_block(diag_block(f, tblock(k), part.blocks[k], ref, cfg, ctr), part.block_begin(k),
                part.block_begin(k));
    t3 = clock::now();
    out.report.t_diag_blocks = secs(t2, t3);
    for (int k = 0; k + 1 < nb; ++k) {
      const CMatrix h = t.block(part.block_begin(k), part.block_begin(k + 1),
                                part.block_size(k), part.block_size(k + 1));
      put_block(superdiag_block(f, tblock(k), tblock(k + 1), h, part.blocks[k],
                                part.blocks[k + 1], ref, cfg, ctr),
                part.block_begin(k), part.block_begin(k + 1));
    }
  } else {
    // Cross-validation mode: each consecutive pair of blocks is treated
    // as one diagonal block and interpolated over the union interval;
    // the pieces shared by two pairs are kept from the first.
    for (int k = 0; k + 1 < nb; ++k) {
      BlockInfo joint;
      joint.alpha = part.blocks[k].alpha;
      joint.beta = part.blocks[k + 1].beta;
      joint.gamma = (joint.alpha + joint.beta) / 2L;
      joint.delta = (joint.beta - joint.alpha) / 2L;
      joint.degenerate = joint.delta.is_zero();
      const int r0 = part.block_begin(k);
      const int size = part.block_size(k) + part.block_size(k + 1);
      const CMatrix g = diag_block(f, t.block(r0, r0, size, size), joint, ref, cfg, ctr);
      const int s0 = part.block_size(k);
      if (k == 0) put_block(g.block(0, 0, s0, s0), r0, r0);
      put_block(g.block(s0, s0, g.rows() - s0, g.cols() - s0), r0 + s0, r0 + s0);
      put_block(g.block(0, s0, s0, g.cols() - s0), r0, r0 + s0);
    }
    t3 = clock::now();
  }
  const auto t4 = clock::now();
  out.report.t_superdiag_blocks = secs(t3, t4);

  fm = parlett_fill(t, std::move(fm), part);
  const auto t5 = clock::now();
  out.report.t_parlett = secs(t4, t5);

  // the sorting swaps alone can make Q nontrivial, so the fast path may
  // still need the back-transform
  if (out.schur.used_qr || out.schur.swap_count > 0)
    fm = matmul(matmul(out.schur.Q, fm, ctr), out.schur.Q.adjoint(), ctr);
  if (!out.schur.used_qr) {
    // f of a triangular matrix is triangular; drop the rotation
    // roundoff below the diagonal
    for (int i = 1; i < fm.rows(); ++i)
      for (int j = 0; j < i; ++j) fm.at(i, j) = 0.0;
    fm.set_upper_triangular();
  }
  const auto t6 = clock::now();
  out.report.t_backtransform = secs(t5, t6);
  out.report.t_total = secs(t0, t6);
  out.report.mul_count = ctr.count();
  out.F = std::move(fm);
  return out;
}

}  // namespace realfunm
