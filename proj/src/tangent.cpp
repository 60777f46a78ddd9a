#include "versal/tangent.hpp"

#include <algorithm>
#include <cassert>

#include "versal/errors.hpp"

namespace versal {

namespace {

void dropZeroValues(std::map<int, Poly>& values) {
  for (auto it = values.begin(); it != values.end();)
    it = it->second.isZero() ? values.erase(it) : std::next(it);
}

}  // namespace

bool TangentElement::operator==(const TangentElement& o) const {
  if (isZero() && o.isZero()) return true;
  return hdeg == o.hdeg && weight == o.weight && values == o.values;
}

TangentElement makeTangent(const Resolvent& r, std::map<int, Poly> values,
                           int hdeg, int weight) {
  dropZeroValues(values);
  for (const auto& [id, p] : values) {
    const Generator& g = r.gens[id];
    std::optional<int> h = hdegOf(r.gens, p);
    std::optional<int> w = weightOf(r.gens, p);
    if (!h || *h != g.hdeg + hdeg || !w || *w != g.weight + weight)
      throw std::invalid_argument("derivation value on '" + g.name +
                                  "' violates the declared grading");
  }
  return TangentElement{std::move(values), hdeg, weight};
}

TangentElement differentialElement(const Resolvent& r) {
  return TangentElement{r.diff, 1, 0};
}

TangentElement operator+(const TangentElement& a, const TangentElement& b) {
  assert(a.isZero() || b.isZero() ||
         (a.hdeg == b.hdeg && a.weight == b.weight));
  TangentElement out = a.isZero() && !b.isZero()
                           ? TangentElement{{}, b.hdeg, b.weight}
                           : TangentElement{{}, a.hdeg, a.weight};
  out.values = a.values;
  for (const auto& [id, p] : b.values) {
    auto it = out.values.find(id);
    if (it == out.values.end())
      out.values[id] = p;
    else
      it->second = it->second + p;
  }
  dropZeroValues(out.values);
  return out;
}

TangentElement operator-(const TangentElement& a, const TangentElement& b) {
  return a + Rational(-1) * b;
}

TangentElement operator*(const Rational& c, const TangentElement& a) {
  TangentElement out{{}, a.hdeg, a.weight};
  if (c == 0) return out;
  for (const auto& [id, p] : a.values) out.values[id] = c * p;
  return out;
}

Poly apply(const Resolvent& r, const TangentElement& theta, const Poly& p) {
  return applyDerivationValues(r.gens, theta.values, theta.hdeg, p);
}

TangentElement bracket(const Resolvent& r, const TangentElement& a,
                       const TangentElement& b) {
  TangentElement out{{}, a.hdeg + b.hdeg, a.weight + b.weight};
  int sign = isOddDegree(a.hdeg) && isOddDegree(b.hdeg) ? -1 : 1;
  for (int id = 0; id < r.gens.size(); ++id) {
    Poly term;
    auto vb = b.values.find(id);
    if (vb != b.values.end()) term = apply(r, a, vb->second);
    auto va = a.values.find(id);
    if (va != a.values.end())
      term = term - Rational(sign) * apply(r, b, va->second);
    if (!term.isZero()) out.values[id] = term;
  }
  return out;
}

TangentElement differential(const Resolvent& r, const TangentElement& theta) {
  return bracket(r, differentialElement(r), theta);
}

QVector DerivationBasis::toVector(const TangentElement& theta) const {
  std::map<int, std::map<Monomial, int, MonomialOrder>> index;
  for (std::size_t k = 0; k < entries.size(); ++k)
    index[entries[k].first][entries[k].second] = static_cast<int>(k);
  QVector v = QVector::Zero(dim());
  for (const auto& [id, p] : theta.values) {
    auto byGen = index.find(id);
    for (const auto& [m, c] : p.terms) {
      if (byGen == index.end() || !byGen->second.count(m))
        throw std::logic_error("derivation value outside the slice basis");
      v(byGen->second.at(m)) = c;
    }
  }
  return v;
}

TangentElement DerivationBasis::fromVector(const QVector& v) const {
  TangentElement out{{}, hdeg, weight};
  for (int k = 0; k < v.size(); ++k)
    if (v(k) != 0) out.values[entries[k].first].addTerm(entries[k].second, v(k));
  return out;
}

DerivationBasis derivationBasis(const Resolvent& r, int hdeg, int weight) {
  DerivationBasis basis;
  basis.hdeg = hdeg;
  basis.weight = weight;
  std::vector<int> ids = r.gens.allIds();
  for (const Generator& g : r.gens.all())
    for (const Monomial& m :
         monomialBasis(r.gens, g.hdeg + hdeg, g.weight + weight, ids))
      basis.entries.emplace_back(g.id, m);
  return basis;
}

long derivationBasisSize(const Resolvent& r, int hdeg, int weight) {
  std::vector<int> ids = r.gens.allIds();
  long n = 0;
  for (const Generator& g : r.gens.all())
    n += static_cast<long>(
        monomialBasis(r.gens, g.hdeg + hdeg, g.weight + weight, ids).size());
  return n;
}

namespace {

TangentElement basisElement(const DerivationBasis& b, std::size_t k) {
  TangentElement out{{}, b.hdeg, b.weight};
  out.values[b.entries[k].first] = Poly::fromMonomial(b.entries[k].second);
  return out;
}

/** Differential of every `from` basis element as sparse columns over `to`. */
std::vector<SparseColumn> differentialColumns(const Resolvent& r,
                                              const DerivationBasis& from,
                                              const DerivationBasis& to) {
  std::map<int, std::map<Monomial, int, MonomialOrder>> index;
  for (std::size_t k = 0; k < to.entries.size(); ++k)
    index[to.entries[k].first][to.entries[k].second] = static_cast<int>(k);
  std::vector<SparseColumn> cols(from.dim());
  for (int k = 0; k < from.dim(); ++k) {
    TangentElement d = differential(r, basisElement(from, k));
    SparseColumn& col = cols[k];
    for (const auto& [id, p] : d.values) {
      auto byGen = index.find(id);
      for (const auto& [m, c] : p.terms) {
        if (byGen == index.end() || !byGen->second.count(m))
          throw std::logic_error("derivation value outside the slice basis");
        col.emplace_back(byGen->second.at(m), c);
      }
    }
    std::sort(col.begin(), col.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return cols;
}

QMatrix differentialMatrix(const Resolvent& r, const DerivationBasis& from,
                           const DerivationBasis& to) {
  QMatrix m = QMatrix::Zero(to.dim(), from.dim());
  std::vector<SparseColumn> cols = differentialColumns(r, from, to);
  for (int k = 0; k < from.dim(); ++k)
    for (const auto& [i, c] : cols[k]) m(i, k) = c;
  return m;
}

/**
 * Representatives of one cohomology slice, computed on 64-bit integer rows
 * throughout; falls back to the rational homotopy-data route when entries
 * leave the 64-bit range.  Either route returns the canonical kernel
 * vectors of the echelon form at the positions picked by the greedy
 * completion of the image, so the output is identical.
 */
std::vector<TangentElement> sliceRepresentatives(const Resolvent& r, int hdeg,
                                                 int weight) {
  DerivationBasis below = derivationBasis(r, hdeg - 1, weight);
  DerivationBasis cur = derivationBasis(r, hdeg, weight);
  DerivationBasis above = derivationBasis(r, hdeg + 1, weight);
  const int dim = cur.dim();
  if (dim == 0) return {};

  std::vector<SparseColumn> colsBelow = differentialColumns(r, below, cur);
  std::vector<SparseColumn> colsAbove = differentialColumns(r, cur, above);

  std::vector<std::vector<long long>> up;
  std::vector<int> upPivots;
  if (!integerRowsFromColumns(above.dim(), colsAbove, up) ||
      !integerEliminate(up, dim, upPivots) ||
      !integerClearAbove(up, dim, upPivots))
    return homotopyData(r, hdeg, weight).reps;

  // Canonical kernel basis of [s,-]: one vector per free column.
  std::vector<bool> isPivot(dim, false);
  for (int c : upPivots) isPivot[c] = true;
  std::vector<SparseColumn> kernelCols;
  for (int fc = 0; fc < dim; ++fc) {
    if (isPivot[fc]) continue;
    SparseColumn v;
    for (std::size_t k = 0; k < upPivots.size(); ++k)
      if (up[k][fc] != 0)
        v.emplace_back(upPivots[k],
                       Rational(-up[k][fc]) / up[k][upPivots[k]]);
    v.emplace_back(fc, Rational(1));
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    kernelCols.push_back(std::move(v));
  }

  std::vector<std::vector<long long>> down;
  std::vector<int> downPivots;
  if (!integerRowsFromColumns(dim, colsBelow, down) ||
      !integerEliminate(down, below.dim(), downPivots))
    return homotopyData(r, hdeg, weight).reps;
  std::vector<SparseColumn> imageCols;
  for (int c : downPivots) imageCols.push_back(colsBelow[c]);

  // im[s,-] inside ker[s,-]: pivots of [kernel | image] must stay in the
  // kernel block.
  {
    std::vector<SparseColumn> both = kernelCols;
    both.insert(both.end(), imageCols.begin(), imageCols.end());
    std::vector<std::vector<long long>> rows;
    std::vector<int> piv;
    if (!integerRowsFromColumns(dim, both, rows) ||
        !integerEliminate(rows, static_cast<int>(both.size()), piv))
      return homotopyData(r, hdeg, weight).reps;
    for (int c : piv)
      if (c >= static_cast<int>(kernelCols.size()))
        throw NotSubspace("subspace not contained in the ambient span");
  }

  // Greedy completion: kernel vectors at pivot columns of [image | kernel]
  // extend the image to the kernel and represent the classes.
  std::vector<SparseColumn> completion = imageCols;
  completion.insert(completion.end(), kernelCols.begin(), kernelCols.end());
  std::vector<std::vector<long long>> rows;
  std::vector<int> compPivots;
  if (!integerRowsFromColumns(dim, completion, rows) ||
      !integerEliminate(rows, static_cast<int>(completion.size()), compPivots))
    return homotopyData(r, hdeg, weight).reps;

  std::vector<TangentElement> reps;
  const int nImage = static_cast<int>(imageCols.size());
  for (int c : compPivots) {
    if (c < nImage) continue;
    QVector v = QVector::Zero(dim);
    for (const auto& [i, x] : kernelCols[c - nImage]) v(i) = x;
    reps.push_back(cur.fromVector(v));
  }
  return reps;
}

}  // namespace

HomotopyData homotopyData(const Resolvent& r, int hdeg, int weight) {
  HomotopyData hd;
  hd.below = derivationBasis(r, hdeg - 1, weight);
  hd.cur = derivationBasis(r, hdeg, weight);
  hd.above = derivationBasis(r, hdeg + 1, weight);
  hd.dBelow = differentialMatrix(r, hd.below, hd.cur);
  hd.dAbove = differentialMatrix(r, hd.cur, hd.above);
  hd.kernel = SubspaceBasis(hd.cur.dim(), kernelBasis(hd.dAbove));
  hd.image = SubspaceBasis(hd.cur.dim(), imageBasis(hd.dBelow));
  for (const QVector& coord : quotientBasis(hd.image, hd.kernel)) {
    QVector ambient = QVector::Zero(hd.cur.dim());
    for (int i = 0; i < coord.size(); ++i)
      if (coord(i) != 0) ambient += coord(i) * hd.kernel.vectors[i];
    hd.repVectors.push_back(ambient);
    hd.reps.push_back(hd.cur.fromVector(ambient));
  }
  return hd;
}

HomotopyData::Split HomotopyData::split(const TangentElement& theta) const {
  QVector v = cur.toVector(theta);
  QVector img = dAbove * v;
  for (int i = 0; i < img.size(); ++i)
    if (img(i) != 0)
      throw NotACocycle("split requested for a derivation with [s, -] != 0");
  std::vector<QVector> cols = image.vectors;
  cols.insert(cols.end(), repVectors.begin(), repVectors.end());
  std::optional<QVector> c = solve(columnsToMatrix(cur.dim(), cols), v);
  if (!c) throw std::logic_error("cocycle outside kernel span");

  Split s;
  QVector rem = v;
  for (std::size_t i = 0; i < repVectors.size(); ++i) {
    Rational ci = (*c)(static_cast<int>(image.vectors.size() + i));
    s.projection.push_back(ci);
    rem -= ci * repVectors[i];
  }
  std::optional<QVector> y = solve(dBelow, rem);
  if (!y) throw std::logic_error("image part has no preimage");
  s.h = below.fromVector(*y);
  return s;
}

int TangentCohomology::totalDim() const {
  int n = 0;
  for (const auto& [w, reps] : pieces) n += static_cast<int>(reps.size());
  return n;
}

std::vector<std::pair<int, TangentElement>> TangentCohomology::flatten()
    const {
  std::vector<std::pair<int, TangentElement>> out;
  for (const auto& [w, reps] : pieces)
    for (const TangentElement& rep : reps) out.emplace_back(w, rep);
  return out;
}

TangentCohomology tangentCohomology(const Resolvent& r, int hdeg, int weightLo,
                                    int weightHi) {
  TangentCohomology tc;
  tc.hdeg = hdeg;
  tc.weightLo = weightLo;
  tc.weightHi = weightHi;
  for (int w = weightLo; w <= weightHi; ++w) {
    std::vector<TangentElement> reps = sliceRepresentatives(r, hdeg, w);
    if (!reps.empty()) tc.pieces.emplace_back(w, std::move(reps));
  }
  return tc;
}

std::pair<int, int> tangentScanBand(const Resolvent& r, int weightHint) {
  const long budget = 400000000L;  // cumulative elimination-operation bound
  int lo = -r.gens.maxWeight();
  int hi = 0;
  long spent = 0;
  for (int w = 1; w <= weightHint; ++w) {
    long cost = 0;
    long prev = derivationBasisSize(r, 0, w);
    for (int j = 0; j <= 2; ++j) {
      long next = derivationBasisSize(r, j + 1, w);
      cost += prev * next * std::min(prev, next);
      prev = next;
    }
    spent += cost;
    if (spent > budget) break;
    hi = w;
  }
  return {lo, hi};
}

}  // namespace versal
