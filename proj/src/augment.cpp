#include "augblock/augment.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "augblock/errors.hpp"
#include "augblock/parallel.hpp"

namespace augblock {

namespace {

const char* strategy_name(AugmentStrategy s) {
  return s == AugmentStrategy::sign_alternating ? "sign-alternating" : "pairwise";
}

// Gamma (m x q) that makes the row blocks of [A Gamma] mutually orthogonal.
// `a` is already permuted and `part` splits its rows.
SparseMatrix row_gamma(const SparseMatrix& a, const BlockPartition& part,
                       AugmentStrategy strategy) {
  const std::size_t p = part.block_count();
  if (p == 1) return SparseMatrix(a.rows(), 0, {});

  // `a` is already reordered, so drop the partition's permutations.
  const BlockPartition rows_part(Axis::rows, {part.boundaries().begin(), part.boundaries().end()});
  const auto pairs = overlap_pairs(a, rows_part);

  if (strategy == AugmentStrategy::sign_alternating) {
    for (const auto& [i, j] : pairs) {
      if (j != i + 1) {
        std::ostringstream msg;
        msg << "sign-alternating augmentation needs only consecutive blocks to overlap, but blocks "
            << i + 1 << " and " << j + 1 << " overlap";
        throw StructureViolation(msg.str());
      }
    }
    // Gamma = D A, D = diag(I, -I, I, ...).
    auto entries = a.triplets();
    for (auto& t : entries)
      if (rows_part.block_of(t.row) % 2 == 1) t.value = -t.value;
    return SparseMatrix(a.rows(), a.cols(), std::move(entries));
  }

  // Pairwise: for each overlapping (i, j), m_j new columns holding A_i A_j^T
  // in the rows of block i and -I in the rows of block j.
  std::vector<Triplet> entries;
  std::size_t offset = 0;
  for (const auto& [i, j] : pairs) {
    const DenseMatrix ai = a.dense_rows(rows_part.begin(i), rows_part.end(i));
    const DenseMatrix aj = a.dense_rows(rows_part.begin(j), rows_part.end(j));
    const DenseMatrix cross = multiply(ai, aj.transposed());
    for (std::size_t c = 0; c < cross.cols(); ++c)
      for (std::size_t r = 0; r < cross.rows(); ++r)
        if (cross(r, c) != 0.0) entries.push_back({rows_part.begin(i) + r, offset + c, cross(r, c)});
    for (std::size_t k = 0; k < rows_part.size(j); ++k)
      entries.push_back({rows_part.begin(j) + k, offset + k, -1.0});
    offset += rows_part.size(j);
  }
  return SparseMatrix(a.rows(), offset, std::move(entries));
}

SparseMatrix hstack(const SparseMatrix& left, const SparseMatrix& right) {
  auto entries = left.triplets();
  for (auto t : right.triplets()) {
    t.col += left.cols();
    entries.push_back(t);
  }
  return SparseMatrix(left.rows(), left.cols() + right.cols(), std::move(entries));
}

SparseMatrix vstack(const SparseMatrix& top, const SparseMatrix& bottom) {
  auto entries = top.triplets();
  for (auto t : bottom.triplets()) {
    t.row += top.rows();
    entries.push_back(t);
  }
  return SparseMatrix(top.rows() + bottom.rows(), top.cols(), std::move(entries));
}

OrthogonalityReport measure(const std::vector<DenseMatrix>& blocks, Orientation orientation,
                            double tol) {
  OrthogonalityReport report;
  std::vector<double> norms;
  norms.reserve(blocks.size());
  for (const auto& b : blocks) norms.push_back(b.frobenius_norm());

  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      if (norms[i] == 0.0 || norms[j] == 0.0) continue;
      const DenseMatrix prod = orientation == Orientation::row
                                   ? multiply(blocks[i], blocks[j].transposed())
                                   : multiply(blocks[i].transposed(), blocks[j]);
      const double defect = prod.frobenius_norm() / (norms[i] * norms[j]);
      if (defect > report.max_offdiag) {
        report.max_offdiag = defect;
        report.worst_pair = std::make_pair(i, j);
      }
    }
  }
  report.passed = report.max_offdiag <= tol;
  return report;
}

}  // namespace

SparseMatrix AugmentedSystem::augmented() const {
  return orientation_ == Orientation::row ? hstack(original_, gamma_) : vstack(original_, gamma_);
}

void AugmentedSystem::factorize(const Options& opts) {
  const SparseMatrix abar = augmented();
  const std::size_t p = partition_.block_count();
  std::vector<std::optional<BlockFactorization>> slots(p);
  parallel_for(p, opts.threads, [&](std::size_t i) {
    DenseMatrix block = orientation_ == Orientation::row
                            ? abar.dense_rows(partition_.begin(i), partition_.end(i))
                            : abar.dense_cols(partition_.begin(i), partition_.end(i));
    try {
      slots[i].emplace(std::move(block), orientation_, opts.tol.rank);
    } catch (const RankDeficient& e) {
      throw RankDeficient(i, e.ratio(), "augmented block " + std::to_string(i + 1) + ": " + e.what());
    }
  });
  factorizations_.clear();
  factorizations_.reserve(p);
  for (auto& s : slots) factorizations_.push_back(std::move(*s));
}

AugmentedSystem augment_rows(const SparseMatrix& a, const BlockPartition& part,
                             AugmentStrategy strategy, const Options& opts) {
  if (part.axis() != Axis::rows) throw DimensionMismatch("augment_rows: needs a row partition");
  if (part.extent() != a.rows())
    throw DimensionMismatch("augment_rows: partition extent differs from row count");

  AugmentedSystem sys;
  sys.orientation_ = Orientation::row;
  sys.strategy_ = strategy;
  sys.partition_ = part;
  sys.threads_ = opts.threads;
  sys.original_ = apply_permutations(a, part);
  sys.gamma_ = row_gamma(sys.original_, part, strategy);
  sys.q_ = sys.gamma_.cols();
  sys.factorize(opts);

  const auto report = verify_orthogonality(sys, opts.tol.ortho);
  if (!report.passed) {
    std::ostringstream msg;
    msg << strategy_name(strategy) << " augmentation left block defect " << report.max_offdiag
        << " above ortho_tol " << opts.tol.ortho;
    throw StructureViolation(msg.str());
  }
  return sys;
}

AugmentedSystem augment_cols(const SparseMatrix& a, const BlockPartition& part,
                             AugmentStrategy strategy, const Options& opts) {
  if (part.axis() != Axis::cols) throw DimensionMismatch("augment_cols: needs a column partition");
  if (part.extent() != a.cols())
    throw DimensionMismatch("augment_cols: partition extent differs from column count");

  AugmentedSystem sys;
  sys.orientation_ = Orientation::column;
  sys.strategy_ = strategy;
  sys.partition_ = part;
  sys.threads_ = opts.threads;
  sys.original_ = apply_permutations(a, part);
  // Column blocks of A are the row blocks of A^T.
  sys.gamma_ = row_gamma(sys.original_.transposed(), part, strategy).transposed();
  sys.q_ = sys.gamma_.rows();
  sys.factorize(opts);

  const auto report = verify_orthogonality(sys, opts.tol.ortho);
  if (!report.passed) {
    std::ostringstream msg;
    msg << strategy_name(strategy) << " augmentation left block defect " << report.max_offdiag
        << " above ortho_tol " << opts.tol.ortho;
    throw StructureViolation(msg.str());
  }
  return sys;
}

OrthogonalityReport verify_orthogonality(const AugmentedSystem& system, double tol) {
  std::vector<DenseMatrix> blocks;
  blocks.reserve(system.block_count());
  for (std::size_t i = 0; i < system.block_count(); ++i) blocks.push_back(system.block(i));
  return measure(blocks, system.orientation(), tol);
}

OrthogonalityReport verify_orthogonality(const SparseMatrix& a, const BlockPartition& part,
                                         double tol) {
  const SparseMatrix permuted = apply_permutations(a, part);
  std::vector<DenseMatrix> blocks;
  blocks.reserve(part.block_count());
  for (std::size_t i = 0; i < part.block_count(); ++i)
    blocks.push_back(extract_block(permuted, part, i));
  return measure(blocks, part.axis() == Axis::rows ? Orientation::row : Orientation::column, tol);
}

}  // namespace augblock
