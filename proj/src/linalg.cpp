#include "versal/linalg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "versal/errors.hpp"

namespace versal {

namespace {

typedef __int128 Wide;

// Entries are kept below 2^62 so that piv*a - f*b cannot overflow Wide.
const long long kEntryMax = 1LL << 62;

bool fitsEntry(const boost::multiprecision::mpz_int& v) {
  static const boost::multiprecision::mpz_int lo(-kEntryMax);
  static const boost::multiprecision::mpz_int hi(kEntryMax);
  return v >= lo && v <= hi;
}

Wide gcdWide(Wide a, Wide b) {
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/** Divides a row by the gcd of its entries. */
void stripContent(std::vector<long long>& row) {
  long long g = 0;
  for (long long v : row) {
    if (v == 0) continue;
    g = std::gcd(g, v);
    if (g == 1) return;
  }
  if (g <= 1) return;
  for (long long& v : row)
    if (v != 0) v /= g;
}

/**
 * dst := (piv*dst - f*src) / content over columns `from` onward; columns
 * before `from` must already be zero in both rows.  False on overflow.
 */
bool combineRows(std::vector<long long>& dst, const std::vector<long long>& src,
                 long long piv, long long f, int from, std::vector<Wide>& tmp) {
  const int cols = static_cast<int>(dst.size());
  Wide g = 0;
  for (int j = from; j < cols; ++j) {
    Wide t = Wide(piv) * dst[j] - Wide(f) * src[j];
    tmp[j] = t;
    if (t != 0 && g != 1) g = gcdWide(g, t < 0 ? -t : t);
  }
  if (g == 0) {
    std::fill(dst.begin() + from, dst.end(), 0);
    return true;
  }
  for (int j = from; j < cols; ++j) {
    Wide t = tmp[j];
    if (g > 1) t /= g;
    if (t > kEntryMax || t < -kEntryMax) return false;
    dst[j] = static_cast<long long>(t);
  }
  return true;
}

}  // namespace

bool integerRows(const QMatrix& m, std::vector<std::vector<long long>>& out) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  out.assign(rows, std::vector<long long>());
  std::vector<long long> num(cols), den(cols);
  for (int i = 0; i < rows; ++i) {
    long long common = 1;
    for (int j = 0; j < cols; ++j) {
      const Rational& x = m(i, j);
      if (x == 0) {
        num[j] = 0;
        den[j] = 1;
        continue;
      }
      const auto n = boost::multiprecision::numerator(x);
      const auto d = boost::multiprecision::denominator(x);
      if (!fitsEntry(n) || !fitsEntry(d)) return false;
      num[j] = n.convert_to<long long>();
      den[j] = d.convert_to<long long>();
      const Wide l = Wide(common / std::gcd(common, den[j])) * den[j];
      if (l > kEntryMax) return false;
      common = static_cast<long long>(l);
    }
    std::vector<long long>& row = out[i];
    row.assign(cols, 0);
    for (int j = 0; j < cols; ++j) {
      if (num[j] == 0) continue;
      const Wide v = Wide(num[j]) * (common / den[j]);
      if (v > kEntryMax || v < -kEntryMax) return false;
      row[j] = static_cast<long long>(v);
    }
    stripContent(row);
  }
  return true;
}

bool integerRowsFromColumns(int rows, const std::vector<SparseColumn>& cols,
                            std::vector<std::vector<long long>>& out) {
  const int n = static_cast<int>(cols.size());
  std::vector<long long> common(rows, 1);
  for (const SparseColumn& col : cols)
    for (const auto& [i, x] : col) {
      const auto d = boost::multiprecision::denominator(x);
      if (!fitsEntry(boost::multiprecision::numerator(x)) || !fitsEntry(d))
        return false;
      const long long dv = d.convert_to<long long>();
      const Wide l = Wide(common[i] / std::gcd(common[i], dv)) * dv;
      if (l > kEntryMax) return false;
      common[i] = static_cast<long long>(l);
    }
  out.assign(rows, std::vector<long long>());
  for (int i = 0; i < rows; ++i) out[i].assign(n, 0);
  for (int j = 0; j < n; ++j)
    for (const auto& [i, x] : cols[j]) {
      const long long nv =
          boost::multiprecision::numerator(x).convert_to<long long>();
      const long long dv =
          boost::multiprecision::denominator(x).convert_to<long long>();
      const Wide v = Wide(nv) * (common[i] / dv);
      if (v > kEntryMax || v < -kEntryMax) return false;
      out[i][j] = static_cast<long long>(v);
    }
  for (std::vector<long long>& row : out) stripContent(row);
  return true;
}

bool integerEliminate(std::vector<std::vector<long long>>& a, int cols,
                      std::vector<int>& pivots) {
  const int rows = static_cast<int>(a.size());
  std::vector<Wide> tmp(cols);
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][col] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) a[p].swap(a[r]);
    const long long piv = a[r][col];
    for (int i = r + 1; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      if (!combineRows(a[i], a[r], piv, a[i][col], col, tmp)) return false;
    }
    pivots.push_back(col);
    ++r;
  }
  return true;
}

bool integerClearAbove(std::vector<std::vector<long long>>& a, int cols,
                       const std::vector<int>& pivots) {
  std::vector<Wide> tmp(cols);
  for (int k = static_cast<int>(pivots.size()) - 1; k >= 0; --k) {
    const int pc = pivots[k];
    for (int i = 0; i < k; ++i) {
      if (a[i][pc] == 0) continue;
      if (!combineRows(a[i], a[k], a[k][pc], a[i][pc], 0, tmp)) return false;
    }
  }
  return true;
}

namespace {

/** Integer-path reduced echelon form, or nullopt when it would overflow. */
std::optional<EchelonForm> fastRref(const QMatrix& m) {
  std::vector<std::vector<long long>> a;
  if (!integerRows(m, a)) return std::nullopt;
  const int cols = static_cast<int>(m.cols());
  EchelonForm e;
  if (!integerEliminate(a, cols, e.pivots)) return std::nullopt;
  if (!integerClearAbove(a, cols, e.pivots)) return std::nullopt;
  e.mat = QMatrix::Zero(m.rows(), cols);
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    const long long piv = a[k][e.pivots[k]];
    for (int j = e.pivots[k]; j < cols; ++j)
      if (a[k][j] != 0) e.mat(static_cast<int>(k), j) = Rational(a[k][j]) / piv;
  }
  return e;
}

std::optional<std::vector<int>> fastPivots(const QMatrix& m) {
  std::vector<std::vector<long long>> a;
  if (!integerRows(m, a)) return std::nullopt;
  std::vector<int> pivots;
  if (!integerEliminate(a, static_cast<int>(m.cols()), pivots))
    return std::nullopt;
  return pivots;
}

}  // namespace

namespace {

/**
 * In-place forward elimination, Bareiss style: modified rows are updated as
 * (pivot * row - factor * pivotRow) / previousPivot, which keeps entries as
 * quotients of minors.  Rows with a zero in the pivot column are left alone
 * (a harmless rescaling difference over a field).  Pivot selection is the
 * first nonzero entry by row order, so the result is deterministic.
 */
std::vector<int> forwardEliminate(QMatrix& a) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  std::vector<int> pivots;
  Rational prev = 1;
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (a(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) a.row(r).swap(a.row(p));
    const Rational piv = a(r, col);
    for (int i = r + 1; i < rows; ++i) {
      if (a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (int j = col; j < cols; ++j) {
        if (a(i, j) == 0 && a(r, j) == 0) continue;
        a(i, j) = (piv * a(i, j) - f * a(r, j)) / prev;
      }
    }
    prev = piv;
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

void backSubstitute(QMatrix& a, const std::vector<int>& pivots) {
  const int cols = static_cast<int>(a.cols());
  for (int k = static_cast<int>(pivots.size()) - 1; k >= 0; --k) {
    const int pc = pivots[k];
    const Rational piv = a(k, pc);
    for (int j = pc; j < cols; ++j)
      if (a(k, j) != 0) a(k, j) /= piv;
    for (int i = 0; i < k; ++i) {
      const Rational f = a(i, pc);
      if (f == 0) continue;
      for (int j = pc; j < cols; ++j)
        if (a(k, j) != 0) a(i, j) -= f * a(k, j);
    }
  }
}

}  // namespace

EchelonForm rowEchelonForm(const QMatrix& m) {
  if (std::optional<EchelonForm> fast = fastRref(m)) return std::move(*fast);
  EchelonForm e;
  e.mat = m;
  e.pivots = forwardEliminate(e.mat);
  backSubstitute(e.mat, e.pivots);
  return e;
}

namespace {

/** Pivot columns of the echelon form, without the reduced rows. */
std::vector<int> pivotColumns(const QMatrix& m) {
  if (std::optional<std::vector<int>> fast = fastPivots(m)) return *fast;
  QMatrix a = m;
  return forwardEliminate(a);
}

}  // namespace

int rank(const QMatrix& m) {
  return static_cast<int>(pivotColumns(m).size());
}

std::vector<QVector> kernelBasis(const QMatrix& m) {
  const int cols = static_cast<int>(m.cols());
  EchelonForm e = rowEchelonForm(m);
  std::vector<bool> isPivot(cols, false);
  for (int c : e.pivots) isPivot[c] = true;
  std::vector<QVector> basis;
  for (int fc = 0; fc < cols; ++fc) {
    if (isPivot[fc]) continue;
    QVector v = QVector::Zero(cols);
    v(fc) = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
      v(e.pivots[k]) = -e.mat(static_cast<int>(k), fc);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<QVector> imageBasis(const QMatrix& m) {
  std::vector<QVector> basis;
  for (int c : pivotColumns(m)) basis.push_back(m.col(c));
  return basis;
}

std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
  const int cols = static_cast<int>(m.cols());
  QMatrix aug(m.rows(), cols + 1);
  aug.leftCols(cols) = m;
  aug.col(cols) = b;
  EchelonForm e = rowEchelonForm(aug);
  for (int c : e.pivots)
    if (c == cols) return std::nullopt;
  QVector x = QVector::Zero(cols);
  for (std::size_t k = 0; k < e.pivots.size(); ++k)
    x(e.pivots[k]) = e.mat(static_cast<int>(k), cols);
  return x;
}

QMatrix columnsToMatrix(int rows, const std::vector<QVector>& cols) {
  QMatrix m = QMatrix::Zero(rows, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw std::invalid_argument("column dimension mismatch");
    m.col(static_cast<int>(j)) = cols[j];
  }
  return m;
}

SubspaceBasis::SubspaceBasis(int ambientDim, std::vector<QVector> vecs)
    : ambient(ambientDim), vectors(std::move(vecs)) {
  QMatrix m = columnsToMatrix(ambient, vectors);
  if (rank(m) != static_cast<int>(vectors.size()))
    throw std::invalid_argument("basis vectors are linearly dependent");
}

std::vector<QVector> quotientBasis(const SubspaceBasis& sub,
                                   const SubspaceBasis& ambientSub) {
  if (sub.ambient != ambientSub.ambient)
    throw std::invalid_argument("ambient dimension mismatch");

  // One elimination answers both questions: columns are [amb | sub], so a
  // pivot landing in the sub block means some sub vector escapes the span.
  {
    QMatrix contain(sub.ambient, ambientSub.dim() + sub.dim());
    for (int j = 0; j < ambientSub.dim(); ++j)
      contain.col(j) = ambientSub.vectors[j];
    for (int j = 0; j < sub.dim(); ++j)
      contain.col(ambientSub.dim() + j) = sub.vectors[j];
    for (int c : pivotColumns(contain))
      if (c >= ambientSub.dim())
        throw NotSubspace("subspace not contained in the ambient span");
  }

  // Pivot columns of [sub | amb] pick the earliest ambient vectors that
  // grow the span, which is exactly the greedy completion.
  QMatrix m(sub.ambient, sub.dim() + ambientSub.dim());
  for (int j = 0; j < sub.dim(); ++j) m.col(j) = sub.vectors[j];
  for (int j = 0; j < ambientSub.dim(); ++j)
    m.col(sub.dim() + j) = ambientSub.vectors[j];
  std::vector<QVector> out;
  for (int c : pivotColumns(m)) {
    if (c < sub.dim()) continue;
    QVector unit = QVector::Zero(ambientSub.dim());
    unit(c - sub.dim()) = 1;
    out.push_back(std::move(unit));
  }
  return out;
}

}  // namespace versal
