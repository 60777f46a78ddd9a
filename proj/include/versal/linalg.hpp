#ifndef VERSAL_LINALG_HPP
#define VERSAL_LINALG_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include <optional>
#include <vector>

#include "versal/rational.hpp"

namespace versal {

typedef Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic> QMatrix;
typedef Eigen::Matrix<Rational, Eigen::Dynamic, 1> QVector;

/** Reduced row echelon form together with its pivot columns. */
struct EchelonForm {
  QMatrix mat;
  std::vector<int> pivots;  // pivot column of each leading row, ascending
  int rank() const { return static_cast<int>(pivots.size()); }
};

/**
 * Reduced row echelon form by exact Gaussian elimination: fraction-free
 * forward pass (cross-multiplication, first nonzero pivot in column order),
 * then back-substitution and pivot normalization.  Fully deterministic.
 */
EchelonForm rowEchelonForm(const QMatrix& m);

int rank(const QMatrix& m);

/**
 * Basis of the null space, one vector per free column in ascending column
 * order; the free coordinate is set to 1 and pivot coordinates are filled
 * from the echelon form.
 */
std::vector<QVector> kernelBasis(const QMatrix& m);

/**
 * Basis of the column space: the original matrix columns at the echelon
 * pivot positions, in ascending column order.
 */
std::vector<QVector> imageBasis(const QMatrix& m);

/**
 * One solution of m x = b, or nullopt when the system is inconsistent.
 * Free variables are set to zero, so the answer is deterministic.
 */
std::optional<QVector> solve(const QMatrix& m, const QVector& b);

/** Columns assembled into a matrix; rows is the ambient dimension. */
QMatrix columnsToMatrix(int rows, const std::vector<QVector>& cols);

/**
 * A list of linearly independent vectors spanning a subspace of k^ambient.
 * Independence is verified by a rank check on construction.
 */
struct SubspaceBasis {
  int ambient = 0;
  std::vector<QVector> vectors;

  SubspaceBasis() = default;
  SubspaceBasis(int ambientDim, std::vector<QVector> vecs);
  int dim() const { return static_cast<int>(vectors.size()); }
};

/**
 * Basis of span(ambientSub)/span(sub), returned in ambientSub-coordinates.
 * Throws NotSubspace when sub is not contained in span(ambientSub).
 *
 * The choice is deterministic: scan ambientSub's vectors in order and keep
 * each one that grows the rank of [sub-vectors | kept-vectors]; the output
 * is the corresponding list of coordinate unit vectors.
 */
std::vector<QVector> quotientBasis(const SubspaceBasis& sub,
                                   const SubspaceBasis& ambientSub);

// Integer fast path.  Rows are copied into 64-bit integers after clearing
// denominators and content row by row; both are row operations, so pivot
// columns and reduced rows agree with the rational routines.  Every routine
// reports failure instead of overflowing, and callers fall back to exact
// rational arithmetic.

/** Sparse rational column: (row, value) pairs, rows strictly ascending. */
typedef std::vector<std::pair<int, Rational>> SparseColumn;

/** Row-scaled integer copy of a dense rational matrix. */
bool integerRows(const QMatrix& m, std::vector<std::vector<long long>>& out);

/** Row-scaled integer copy of a matrix given by sparse columns. */
bool integerRowsFromColumns(int rows, const std::vector<SparseColumn>& cols,
                            std::vector<std::vector<long long>>& out);

/**
 * Forward elimination on integer rows: below each pivot, rows become
 * piv*row - f*pivotRow divided by their content, so entries stay small.
 * Pivot columns are appended in ascending order.
 */
bool integerEliminate(std::vector<std::vector<long long>>& a, int cols,
                      std::vector<int>& pivots);

/** Clears entries above each pivot of an eliminated integer matrix. */
bool integerClearAbove(std::vector<std::vector<long long>>& a, int cols,
                       const std::vector<int>& pivots);

}  // namespace versal

#endif  // VERSAL_LINALG_HPP
