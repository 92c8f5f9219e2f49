#include "realfunm/partition.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace realfunm {

int BlockPartition::block_of(int index) const {
  if (index < 0 || index >= boundaries.back())
    throw std::invalid_argument("BlockPartition::block_of: index out of range");
  int k = 0;
  while (boundaries[k + 1] <= index) ++k;
  return k;
}

std::string BlockPartition::summary() const {
  std::ostringstream os;
  os << "blocks=" << block_count() << " rho=" << rho << "\n";
  for (int k = 0; k < block_count(); ++k) {
    os << "  block " << k + 1 << ": rows " << block_begin(k) + 1 << ".." << block_end(k)
       << " (size " << block_size(k) << ")"
       << " alpha=" << blocks[k].alpha.str(17) << " beta=" << blocks[k].beta.str(17)
       << " delta=" << blocks[k].delta.str(3) << (blocks[k].degenerate ? " degenerate" : "")
       << "\n";
  }
  return os.str();
}

BlockPartition build_partition(const std::vector<double>& diag, double rho, int digits) {
  if (diag.empty()) throw std::invalid_argument("build_partition: empty diagonal");
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("build_partition: rho must be positive");
  for (size_t i = 1; i < diag.size(); ++i)
    if (diag[i] < diag[i - 1])
      throw std::invalid_argument("build_partition: diagonal not nondecreasing");

  const double a = diag.front();
  const double top = diag.back();

  // interval index per entry; the exact-boundary maximum drops down one
  auto interval_of = [&](double x) {
    long c = static_cast<long>(std::floor((x - a) / rho));
    if (c < 0) c = 0;  // rounding guard, x >= a always
    if (x == top && c >= 1 && a + static_cast<double>(c) * rho == x) --c;
    return c;
  };

  BlockPartition p;
  p.origin = a;
  p.rho = rho;
  p.boundaries.push_back(0);

  long current = interval_of(diag[0]);
  double lo = diag[0], hi = diag[0];
  auto flush = [&](int end_index) {
    BlockInfo b;
    b.alpha = XScalar::rounded_down(lo, 16, digits);
    b.beta = XScalar::rounded_up(hi, 16, digits);
    b.gamma = (b.alpha + b.beta) / 2L;
    b.delta = (b.beta - b.alpha) / 2L;
    b.degenerate = b.delta.is_zero();
    p.blocks.push_back(std::move(b));
    p.boundaries.push_back(end_index);
  };

  for (size_t i = 1; i < diag.size(); ++i) {
    const long c = interval_of(diag[i]);
    if (c != current) {
      flush(static_cast<int>(i));
      current = c;
      lo = diag[i];
    }
    hi = diag[i];
  }
  flush(static_cast<int>(diag.size()));
  return p;
}

}  // namespace realfunm
