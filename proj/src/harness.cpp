#include "realfunm/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "realfunm/scalarfun.hpp"
#include "realfunm/xmatrix.hpp"

namespace realfunm {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t smix_out(std::uint64_t x) {
  std::uint64_t z = x + kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kRoleCuts = 1, kRoleDiag = 2, kRoleCoef = 3;

}  // namespace

std::uint64_t SplitMix64::next() {
  s_ += kGolden;
  std::uint64_t z = s_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int SplitMix64::next_below(int bound) {
  if (bound <= 0) throw std::invalid_argument("SplitMix64::next_below: bound must be positive");
  const int v = static_cast<int>(next_unit() * bound);
  return v < bound ? v : bound - 1;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t role, std::uint64_t a,
                          std::uint64_t b) {
  std::uint64_t s = smix_out(seed);
  s = smix_out(s ^ role);
  s = smix_out(s ^ a);
  s = smix_out(s ^ b);
  return s;
}

XScalar hp_unit(SplitMix64& g, int digits) {
  const int chunks = static_cast<int>(std::ceil(digits * 3.3219280948873626 / 53.0)) + 1;
  std::vector<long> c(chunks);
  for (int i = 0; i < chunks; ++i) c[i] = static_cast<long>(g.next() >> 11);
  const long two53 = 1L << 53;
  XScalar acc(digits);
  for (int i = chunks; i-- > 0;) acc = (acc + XScalar(c[i], digits)) / two53;
  return acc;
}

void ExperimentSpec::validate() const {
  if (N < 2) throw std::invalid_argument("ExperimentSpec: N must be at least 2");
  if (n_blocks < 1) throw std::invalid_argument("ExperimentSpec: need at least one block");
  if (N < 2 * n_blocks)
    throw std::invalid_argument("ExperimentSpec: infeasible, N < 2 * n_blocks");
  if (!(rho > 0.0)) throw std::invalid_argument("ExperimentSpec: rho must be positive");
  if (gen_digits < 30) throw std::invalid_argument("ExperimentSpec: gen_digits below 30");
  if (!(coef_range >= 0.0) || !std::isfinite(coef_range))
    throw std::invalid_argument("ExperimentSpec: coef_range must be nonnegative");
  if (trials < 1) throw std::invalid_argument("ExperimentSpec: trials must be positive");
}

namespace {

// Upper-triangular inverse at working precision (for condition numbers).
CMatrix upper_inverse(const CMatrix& u) {
  const int n = u.rows();
  CMatrix x(n, n);
  for (int j = n - 1; j >= 0; --j) {
    const Complex ujj = u.at(j, j);
    if (ujj == Complex(0.0, 0.0))
      throw std::domain_error("upper_inverse: singular diagonal entry");
    x.at(j, j) = 1.0 / ujj;
    for (int i = j - 1; i >= 0; --i) {
      Complex acc = 0.0;
      for (int k = i + 1; k <= j; ++k) acc += u.at(i, k) * x.at(k, j);
      x.at(i, j) = -acc / u.at(i, i);
    }
  }
  return x;
}

std::vector<int> draw_block_sizes(const ExperimentSpec& spec, int trial) {
  SplitMix64 g(stream_seed(spec.seed, kRoleCuts, static_cast<std::uint64_t>(trial), 0));
  std::vector<int> sizes(spec.n_blocks);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<int> w(spec.n_blocks - 1);
    for (int& x : w) x = g.next_below(spec.N + 1);  // integer cut in [0, N]
    std::sort(w.begin(), w.end());
    int prev = 0;
    bool ok = true;
    for (int k = 0; k < spec.n_blocks; ++k) {
      const int end = (k + 1 < spec.n_blocks) ? w[k] : spec.N;
      sizes[k] = end - prev;
      if (sizes[k] < 2) ok = false;
      prev = end;
    }
    if (ok) return sizes;
  }
  throw std::runtime_error("gen_instance: could not draw block sizes with every size >= 2");
}

}  // namespace

Instance gen_instance(const ExperimentSpec& spec, int trial) {
  spec.validate();
  const int n = spec.N, nb = spec.n_blocks, digits = spec.gen_digits;
  const std::uint64_t tr = static_cast<std::uint64_t>(trial);

  const std::vector<int> sizes = draw_block_sizes(spec, trial);

  // Block k of nb (from the top) draws its diagonal from
  // [-2(nb-k), -2(nb-k)+2), ascending within the block, so the whole
  // diagonal is ascending and fills [-2*nb, 0).
  std::vector<XScalar> d;
  d.reserve(n);
  std::vector<int> boundaries{0};
  int pos = 0;
  for (int k = 0; k < nb; ++k) {
    const long lo = -2L * (nb - k);
    std::vector<XScalar> vals;
    vals.reserve(sizes[k]);
    for (int i = 0; i < sizes[k]; ++i) {
      SplitMix64 g(stream_seed(spec.seed, kRoleDiag, tr, static_cast<std::uint64_t>(pos + i)));
      vals.push_back(hp_unit(g, digits) * 2L + lo);
    }
    std::sort(vals.begin(), vals.end());
    for (auto& v : vals) d.push_back(std::move(v));
    pos += sizes[k];
    boundaries.push_back(pos);
  }

  XMatrix s = XMatrix::identity(n, digits);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      SplitMix64 g(stream_seed(spec.seed, kRoleCoef, tr,
                               static_cast<std::uint64_t>(i) * n + j));
      // uniform in [-coef_range, coef_range]
      s.at(i, j) = (hp_unit(g, digits) * 2L - 1L) * XScalar(spec.coef_range, digits);
    }

  const XMatrix sinv = unit_upper_inverse_hp(s);

  const auto fn = catalog_get(spec.function);
  XMatrix sd(n, n, digits), sfd(n, n, digits);
  for (int j = 0; j < n; ++j) {
    const XScalar fd = fn->eval(d[j]);
    for (int i = 0; i <= j; ++i) {
      sd.at(i, j) = s.at(i, j) * d[j];
      sfd.at(i, j) = s.at(i, j) * fd;
    }
  }

  Instance inst;
  inst.T = matmul_hp(sd, sinv).rounded();
  inst.T.set_upper_triangular();
  inst.F_ref = matmul_hp(sfd, sinv).rounded();
  inst.F_ref.set_upper_triangular();
  inst.boundaries = std::move(boundaries);
  inst.construction_residual = identity_residual_hp(matmul_hp(s, sinv));

  const CMatrix sd_round = s.rounded();
  inst.kappa_S = norm_two_estimate(sd_round) * norm_two_estimate(upper_inverse(sd_round));
  inst.kappa_T = norm_two_estimate(inst.T) * norm_two_estimate(upper_inverse(inst.T));
  return inst;
}

FunmReport metrics(const CMatrix& f, const CMatrix& f_ref, const BlockPartition& partition) {
  if (f.rows() != f_ref.rows() || f.cols() != f_ref.cols())
    throw std::invalid_argument("metrics: shape mismatch");
  const int n = f.rows();
  if (partition.boundaries.back() != n)
    throw std::invalid_argument("metrics: partition does not tile the matrix");

  std::vector<int> blk(n);
  for (int i = 0; i < n; ++i) blk[i] = partition.block_of(i);

  const CMatrix e = f - f_ref;
  FunmReport r;
  r.err_op2 = norm_two_estimate(e);
  r.err_frob = norm_frobenius(e);
  r.err_max = norm_max_abs(e);
  r.norm_max_ref = norm_max_abs(f_ref);

  double frob_inc = 0.0, max_inc = 0.0, rel = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = std::abs(e.at(i, j));
      if (blk[j] <= blk[i] + 1) {
        frob_inc += a * a;
        max_inc = std::max(max_inc, a);
      }
      if (f_ref.at(i, j) != Complex(0.0, 0.0))
        rel = std::max(rel, a / std::abs(f_ref.at(i, j)));
    }
  r.err_frob_incomplete = std::sqrt(frob_inc);
  r.err_max_incomplete = max_inc;
  r.err_rel_max = rel;
  return r;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const FunmConfig& cfg) {
  spec.validate();
  cfg.validate();
  const auto fn = catalog_get(spec.function);

  ExperimentResult out;
  out.per_trial.reserve(spec.trials);
  for (int trial = 0; trial < spec.trials; ++trial) {
    const Instance inst = gen_instance(spec, trial);
    const FunmResult res = funm(inst.T, *fn, cfg);
    FunmReport rep = metrics(res.F, inst.F_ref, res.partition);
    rep.kappa_S = inst.kappa_S;
    rep.kappa_T = inst.kappa_T;
    rep.mul_count = res.report.mul_count;
    rep.schur_residual = res.report.schur_residual;
    rep.schur_unitarity = res.report.schur_unitarity;
    rep.t_schur = res.report.t_schur;
    rep.t_partition = res.report.t_partition;
    rep.t_diag_blocks = res.report.t_diag_blocks;
    rep.t_superdiag_blocks = res.report.t_superdiag_blocks;
    rep.t_parlett = res.report.t_parlett;
    rep.t_backtransform = res.report.t_backtransform;
    rep.t_total = res.report.t_total;
    rep.rng = "splitmix64";
    rep.seed = spec.seed;
    out.per_trial.push_back(std::move(rep));
  }

  FunmReport& m = out.mean;
  const double k = spec.trials;
  auto mean_of = [&](double FunmReport::*field) {
    double acc = 0.0;
    for (const FunmReport& r : out.per_trial) acc += r.*field;
    return acc / k;
  };
  m.kappa_S = mean_of(&FunmReport::kappa_S);
  m.kappa_T = mean_of(&FunmReport::kappa_T);
  m.norm_max_ref = mean_of(&FunmReport::norm_max_ref);
  m.err_op2 = mean_of(&FunmReport::err_op2);
  m.err_frob = mean_of(&FunmReport::err_frob);
  m.err_frob_incomplete = mean_of(&FunmReport::err_frob_incomplete);
  m.err_max = mean_of(&FunmReport::err_max);
  m.err_max_incomplete = mean_of(&FunmReport::err_max_incomplete);
  m.err_rel_max = mean_of(&FunmReport::err_rel_max);
  m.schur_residual = mean_of(&FunmReport::schur_residual);
  m.schur_unitarity = mean_of(&FunmReport::schur_unitarity);
  m.t_schur = mean_of(&FunmReport::t_schur);
  m.t_partition = mean_of(&FunmReport::t_partition);
  m.t_diag_blocks = mean_of(&FunmReport::t_diag_blocks);
  m.t_superdiag_blocks = mean_of(&FunmReport::t_superdiag_blocks);
  m.t_parlett = mean_of(&FunmReport::t_parlett);
  m.t_backtransform = mean_of(&FunmReport::t_backtransform);
  m.t_total = mean_of(&FunmReport::t_total);
  std::uint64_t muls = 0;
  for (const FunmReport& r : out.per_trial) muls += r.mul_count;
  m.mul_count = muls / spec.trials;
  m.rng = "splitmix64";
  m.seed = spec.seed;
  return out;
}

std::string format_double(double value) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, p);
}

std::string FunmReport::to_text() const {
  std::ostringstream os;
  auto put = [&os](const char* key, double v) {
    if (!std::isnan(v)) os << key << "=" << format_double(v) << "\n";
  };
  if (!rng.empty()) {
    os << "rng=" << rng << "\n";
    os << "seed=" << seed << "\n";
  }
  if (!std::isnan(kappa_S) || !std::isnan(kappa_T)) os << "kappa_norm=two_induced_estimate\n";
  put("kappa_S", kappa_S);
  put("kappa_T", kappa_T);
  put("norm_max_ref", norm_max_ref);
  put("err_op2", err_op2);
  put("err_frob", err_frob);
  put("err_frob_incomplete", err_frob_incomplete);
  put("err_max", err_max);
  put("err_max_incomplete", err_max_incomplete);
  put("err_rel_max", err_rel_max);
  put("schur_residual", schur_residual);
  put("schur_unitarity", schur_unitarity);
  os << "mul_count=" << mul_count << "\n";
  put("t_schur", t_schur);
  put("t_partition", t_partition);
  put("t_diag_blocks", t_diag_blocks);
  put("t_superdiag_blocks", t_superdiag_blocks);
  put("t_parlett", t_parlett);
  put("t_backtransform", t_backtransform);
  put("t_total", t_total);
  return os.str();
}

void write_matrix(std::ostream& os, const CMatrix& m) {
  os << "CMAT " << m.rows() << " " << m.cols() << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      const Complex& z = m.at(i, j);
      os << (j ? " " : "") << "(" << format_double(z.real()) << "," << format_double(z.imag())
         << ")";
    }
    os << "\n";
  }
  if (!os) throw std::runtime_error("write_matrix: stream failure");
}

namespace {

double parse_double_token(const std::string& tok) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size() || !std::isfinite(v))
    throw std::runtime_error("read_matrix: bad number \"" + tok + "\"");
  return v;
}

}  // namespace

CMatrix read_matrix(std::istream& is) {
  std::string magic;
  int rows = 0, cols = 0;
  if (!(is >> magic >> rows >> cols) || magic != "CMAT")
    throw std::runtime_error("read_matrix: missing CMAT header");
  if (rows <= 0 || cols <= 0 || rows > 100000 || cols > 100000)
    throw std::runtime_error("read_matrix: implausible dimensions");
  CMatrix m(rows, cols);
  std::string tok;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      if (!(is >> tok)) throw std::runtime_error("read_matrix: truncated data");
      if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
        throw std::runtime_error("read_matrix: bad entry \"" + tok + "\"");
      const size_t comma = tok.find(',');
      if (comma == std::string::npos)
        throw std::runtime_error("read_matrix: bad entry \"" + tok + "\"");
      m.at(i, j) = Complex(parse_double_token(tok.substr(1, comma - 1)),
                           parse_double_token(tok.substr(comma + 1, tok.size() - comma - 2)));
    }
  return m;
}

void write_matrix_file(const std::string& path, const CMatrix& m) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_matrix_file: cannot open " + path);
  write_matrix(f, m);
  f.flush();
  if (!f) throw std::runtime_error("write_matrix_file: write failed for " + path);
}

CMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_matrix_file: cannot open " + path);
  return read_matrix(f);
}

}  // namespace realfunm
