#include "oracles.hpp"

#include <stdexcept>

namespace oracle {

using versal::Rational;

XPoly fromPoly(const versal::GeneratorSet& g, int numVars,
               const versal::Poly& p) {
  XPoly out;
  for (const auto& [m, c] : p.terms) {
    Expo e(numVars, 0);
    for (const auto& [id, k] : m.factors) {
      if (id >= numVars || g[id].level != 0)
        throw std::logic_error("fromPoly: not a coordinate polynomial");
      e[id] += k;
    }
    out[e] += c;
    if (out[e] == 0) out.erase(e);
  }
  return out;
}

namespace {

void collectWeight(const std::vector<int>& weights, size_t pos, int rem,
                   Expo& cur, std::vector<Expo>& out) {
  if (pos == weights.size()) {
    if (rem == 0) out.push_back(cur);
    return;
  }
  for (int e = 0; e * weights[pos] <= rem; ++e) {
    cur[pos] = e;
    collectWeight(weights, pos + 1, rem - e * weights[pos], cur, out);
  }
  cur[pos] = 0;
}

int weightOfExpo(const std::vector<int>& weights, const Expo& e) {
  int w = 0;
  for (size_t i = 0; i < e.size(); ++i) w += e[i] * weights[i];
  return w;
}

int weightOfXPoly(const std::vector<int>& weights, const XPoly& p) {
  if (p.empty()) return 0;
  return weightOfExpo(weights, p.begin()->first);
}

Row coordsOf(const XPoly& p, const std::map<Expo, int>& index, int len) {
  Row r(len, Rational(0));
  for (const auto& [e, c] : p) {
    auto it = index.find(e);
    if (it == index.end()) throw std::logic_error("coordsOf: stray monomial");
    r[it->second] = c;
  }
  return r;
}

// Echelon span kept incrementally; add returns whether the vector grew it.
struct IncrementalSpan {
  std::vector<Row> rows;
  std::vector<int> pivots;

  bool add(Row r) {
    for (size_t i = 0; i < rows.size(); ++i)
      if (r[pivots[i]] != 0) {
        Rational f = r[pivots[i]];
        for (size_t k = 0; k < r.size(); ++k) r[k] -= f * rows[i][k];
      }
    int piv = -1;
    for (size_t k = 0; k < r.size(); ++k)
      if (r[k] != 0) {
        piv = static_cast<int>(k);
        break;
      }
    if (piv < 0) return false;
    Rational f = r[piv];
    for (size_t k = 0; k < r.size(); ++k) r[k] /= f;
    rows.push_back(std::move(r));
    pivots.push_back(piv);
    return true;
  }
};

}  // namespace

std::vector<Expo> monomialsOfWeight(const std::vector<int>& weights, int w) {
  std::vector<Expo> out;
  if (w < 0) return out;
  Expo cur(weights.size(), 0);
  collectWeight(weights, 0, w, cur, out);
  return out;
}

XPoly mulX(const XPoly& a, const XPoly& b) {
  XPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Expo e(ea.size());
      for (size_t i = 0; i < ea.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
      if (out[e] == 0) out.erase(e);
    }
  return out;
}

XPoly diffX(const XPoly& a, int var) {
  XPoly out;
  for (const auto& [e, c] : a) {
    if (e[var] == 0) continue;
    Expo d = e;
    d[var] -= 1;
    out[d] += c * e[var];
    if (out[d] == 0) out.erase(d);
  }
  return out;
}

std::vector<int> rref(std::vector<Row>& rows) {
  std::vector<int> pivots;
  if (rows.empty()) return pivots;
  size_t cols = rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Rational f = rows[r][c];
    for (size_t k = c; k < cols; ++k) rows[r][k] /= f;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational g = rows[i][c];
      for (size_t k = c; k < cols; ++k) rows[i][k] -= g * rows[r][k];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

int rankOf(std::vector<Row> rows) {
  return static_cast<int>(rref(rows).size());
}

std::vector<Row> kernelOf(const std::vector<Row>& rowsIn, int cols) {
  std::vector<Row> rows = rowsIn;
  std::vector<int> pivots = rref(rows);
  std::vector<bool> isPivot(cols, false);
  for (int p : pivots) isPivot[p] = true;
  std::vector<Row> out;
  for (int f = 0; f < cols; ++f) {
    if (isPivot[f]) continue;
    Row x(cols, Rational(0));
    x[f] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -rows[i][f];
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<Row> solveOf(const std::vector<Row>& rowsIn, const Row& b) {
  int cols = rowsIn.empty() ? 0 : static_cast<int>(rowsIn[0].size());
  std::vector<Row> aug = rowsIn;
  for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == cols) return {};
  Row x(cols, Rational(0));
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return {x};
}

Row QuotientPiece::reduce(const XPoly& p) const {
  Row c = coordsOf(p, index, static_cast<int>(monos.size()));
  for (size_t i = 0; i < pivots.size(); ++i) {
    Rational f = c[pivots[i]];
    if (f == 0) continue;
    for (size_t k = 0; k < c.size(); ++k) c[k] -= f * idealRref[i][k];
  }
  Row out;
  out.reserve(freeCols.size());
  for (int k : freeCols) out.push_back(c[k]);
  return out;
}

QuotientPiece quotientPiece(const std::vector<int>& weights,
                            const std::vector<XPoly>& rels, int v) {
  QuotientPiece q;
  q.monos = monomialsOfWeight(weights, v);
  for (size_t i = 0; i < q.monos.size(); ++i)
    q.index[q.monos[i]] = static_cast<int>(i);
  for (const XPoly& f : rels) {
    int d = weightOfXPoly(weights, f);
    for (const Expo& m : monomialsOfWeight(weights, v - d))
      q.idealRref.push_back(coordsOf(mulX(XPoly{{m, Rational(1)}}, f), q.index,
                                     static_cast<int>(q.monos.size())));
  }
  q.pivots = rref(q.idealRref);
  q.idealRref.resize(q.pivots.size());
  std::vector<bool> isPivot(q.monos.size(), false);
  for (int p : q.pivots) isPivot[p] = true;
  for (size_t k = 0; k < q.monos.size(); ++k)
    if (!isPivot[k]) q.freeCols.push_back(static_cast<int>(k));
  return q;
}

int quotientDim(const std::vector<int>& weights,
                const std::vector<XPoly>& rels, int v) {
  return quotientPiece(weights, rels, v).dim();
}

int tjurinaDim(const std::vector<int>& weights, const XPoly& f) {
  std::vector<XPoly> rels{f};
  for (size_t i = 0; i < weights.size(); ++i) {
    XPoly d = diffX(f, static_cast<int>(i));
    if (!d.empty()) rels.push_back(d);
  }
  int d = weightOfXPoly(weights, f);
  int socle = 0;
  int maxw = 0;
  for (int w : weights) {
    socle += d - 2 * w;
    maxw = std::max(maxw, w);
  }
  socle = std::max(socle, 0);
  int total = 0;
  for (int v = 0; v <= socle; ++v) total += quotientDim(weights, rels, v);
  for (int v = socle + 1; v <= socle + maxw; ++v)
    if (quotientDim(weights, rels, v) != 0)
      throw std::logic_error("tjurinaDim: quotient does not terminate");
  return total;
}

std::vector<std::vector<XPoly>> syzygiesAtWeight(
    const std::vector<int>& weights, const std::vector<XPoly>& rels, int u) {
  const int m = static_cast<int>(rels.size());
  std::vector<int> dj(m);
  std::vector<std::vector<Expo>> cols(m);
  int totalCols = 0;
  for (int j = 0; j < m; ++j) {
    dj[j] = weightOfXPoly(weights, rels[j]);
    cols[j] = monomialsOfWeight(weights, u - dj[j]);
    totalCols += static_cast<int>(cols[j].size());
  }
  std::vector<Expo> target = monomialsOfWeight(weights, u);
  std::map<Expo, int> tindex;
  for (size_t i = 0; i < target.size(); ++i)
    tindex[target[i]] = static_cast<int>(i);

  std::vector<Row> rows(target.size(), Row(totalCols, Rational(0)));
  int c = 0;
  for (int j = 0; j < m; ++j)
    for (const Expo& mono : cols[j]) {
      Row col = coordsOf(mulX(XPoly{{mono, Rational(1)}}, rels[j]), tindex,
                         static_cast<int>(target.size()));
      for (size_t i = 0; i < target.size(); ++i) rows[i][c] = col[i];
      ++c;
    }

  std::vector<std::vector<XPoly>> out;
  for (const Row& x : kernelOf(rows, totalCols)) {
    std::vector<XPoly> tuple(m);
    int k = 0;
    for (int j = 0; j < m; ++j)
      for (const Expo& mono : cols[j]) {
        if (x[k] != 0) tuple[j][mono] = x[k];
        ++k;
      }
    out.push_back(std::move(tuple));
  }
  return out;
}

int t1Dim(const std::vector<int>& weights, const std::vector<XPoly>& rels,
          int nu, int syzygyBound) {
  const int m = static_cast<int>(rels.size());
  std::vector<int> dj(m);
  std::vector<QuotientPiece> Q(m);
  std::vector<int> offset(m, 0);
  int S = 0;
  for (int j = 0; j < m; ++j) {
    dj[j] = weightOfXPoly(weights, rels[j]);
    Q[j] = quotientPiece(weights, rels, dj[j] + nu);
    offset[j] = S;
    S += Q[j].dim();
  }

  std::vector<Row> constraints;
  for (int u = 1; u <= syzygyBound; ++u) {
    if (u + nu < 0) continue;
    QuotientPiece Qu = quotientPiece(weights, rels, u + nu);
    if (Qu.dim() == 0) continue;
    for (const std::vector<XPoly>& syz : syzygiesAtWeight(weights, rels, u)) {
      std::vector<Row> block(Qu.dim(), Row(S, Rational(0)));
      for (int j = 0; j < m; ++j) {
        if (syz[j].empty()) continue;
        for (int b = 0; b < Q[j].dim(); ++b) {
          const Expo& mono = Q[j].monos[Q[j].freeCols[b]];
          Row red = Qu.reduce(mulX(syz[j], XPoly{{mono, Rational(1)}}));
          for (int i = 0; i < Qu.dim(); ++i) block[i][offset[j] + b] = red[i];
        }
      }
      for (Row& r : block) constraints.push_back(std::move(r));
    }
  }

  std::vector<Row> images;
  for (size_t i = 0; i < weights.size(); ++i) {
    for (const Expo& g : monomialsOfWeight(weights, weights[i] + nu)) {
      Row img(S, Rational(0));
      bool nonzero = false;
      for (int j = 0; j < m; ++j) {
        XPoly v = mulX(XPoly{{g, Rational(1)}},
                       diffX(rels[j], static_cast<int>(i)));
        Row red = Q[j].reduce(v);
        for (int b = 0; b < Q[j].dim(); ++b) {
          img[offset[j] + b] = red[b];
          if (red[b] != 0) nonzero = true;
        }
      }
      if (nonzero) images.push_back(std::move(img));
    }
  }

  // Derivation images are honest homomorphisms, so they must satisfy every
  // syzygy constraint; anything else is an oracle bug.
  for (const Row& c : constraints)
    for (const Row& img : images) {
      Rational dot(0);
      for (int k = 0; k < S; ++k) dot += c[k] * img[k];
      if (dot != 0) throw std::logic_error("t1Dim: image breaks a constraint");
    }

  return (S - rankOf(constraints)) - rankOf(images);
}

int t2Dim(const std::vector<int>& weights, const std::vector<XPoly>& rels,
          int nu, int genBound, int relBound) {
  const int m = static_cast<int>(rels.size());
  std::vector<int> dj(m);
  for (int j = 0; j < m; ++j) dj[j] = weightOfXPoly(weights, rels[j]);

  const int scanMax = std::max(genBound, relBound);
  std::vector<std::vector<std::vector<XPoly>>> syz(scanMax + 1);
  for (int u = 0; u <= scanMax; ++u)
    syz[u] = syzygiesAtWeight(weights, rels, u);

  // Coordinates of a syzygy tuple of weight u.
  auto tupleCoords = [&](const std::vector<XPoly>& tuple, int u) {
    Row out;
    for (int j = 0; j < m; ++j) {
      std::vector<Expo> monos = monomialsOfWeight(weights, u - dj[j]);
      std::map<Expo, int> index;
      for (size_t i = 0; i < monos.size(); ++i)
        index[monos[i]] = static_cast<int>(i);
      Row part = coordsOf(tuple[j], index, static_cast<int>(monos.size()));
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  };

  // Minimal generators: weight by weight, the part of the syzygy space not
  // reached by variable multiples of lower syzygies.
  struct Gen {
    std::vector<XPoly> tuple;
    int u;
  };
  std::vector<Gen> gens;
  for (int u = 1; u <= genBound; ++u) {
    if (syz[u].empty()) continue;
    IncrementalSpan span;
    for (size_t i = 0; i < weights.size(); ++i) {
      int lower = u - weights[i];
      if (lower < 0 || lower > scanMax) continue;
      for (const std::vector<XPoly>& tuple : syz[lower]) {
        std::vector<XPoly> prod(m);
        Expo xi(weights.size(), 0);
        xi[i] = 1;
        for (int j = 0; j < m; ++j)
          prod[j] = mulX(XPoly{{xi, Rational(1)}}, tuple[j]);
        span.add(tupleCoords(prod, u));
      }
    }
    for (const std::vector<XPoly>& tuple : syz[u])
      if (span.add(tupleCoords(tuple, u))) gens.push_back(Gen{tuple, u});
  }
  const int ng = static_cast<int>(gens.size());

  std::vector<QuotientPiece> Qg(ng);
  std::vector<int> offset(ng, 0);
  int S = 0;
  for (int g = 0; g < ng; ++g) {
    Qg[g] = quotientPiece(weights, rels, gens[g].u + nu);
    offset[g] = S;
    S += Qg[g].dim();
  }

  // Presentation of the syzygy module at weight v over the generators:
  // columns (g, monomial of weight v - u_g) mapping to syzygy coordinates.
  auto presentation = [&](int v) {
    std::vector<std::vector<Expo>> colMonos(ng);
    int totalCols = 0;
    for (int g = 0; g < ng; ++g) {
      colMonos[g] = monomialsOfWeight(weights, v - gens[g].u);
      totalCols += static_cast<int>(colMonos[g].size());
    }
    int rowDim = 0;
    for (int j = 0; j < m; ++j)
      rowDim += static_cast<int>(monomialsOfWeight(weights, v - dj[j]).size());
    std::vector<Row> rows(rowDim, Row(totalCols, Rational(0)));
    int c = 0;
    for (int g = 0; g < ng; ++g)
      for (const Expo& mono : colMonos[g]) {
        std::vector<XPoly> prod(m);
        for (int j = 0; j < m; ++j)
          prod[j] = mulX(XPoly{{mono, Rational(1)}}, gens[g].tuple[j]);
        Row col = tupleCoords(prod, v);
        for (int i = 0; i < rowDim; ++i) rows[i][c] = col[i];
        ++c;
      }
    return std::make_pair(rows, colMonos);
  };

  // Turns presentation-column coefficients into a constraint block: the
  // induced map must kill the combination sum_g b_g sigma_g.
  std::vector<Row> constraints;
  auto addCombinationConstraint = [&](const Row& coeffs,
                                      const std::vector<std::vector<Expo>>&
                                          colMonos,
                                      const QuotientPiece& Qv) {
    if (Qv.dim() == 0) return;
    std::vector<Row> block(Qv.dim(), Row(S, Rational(0)));
    int c = 0;
    for (int g = 0; g < ng; ++g) {
      XPoly bg;
      for (const Expo& mono : colMonos[g]) {
        if (coeffs[c] != 0) bg[mono] = coeffs[c];
        ++c;
      }
      if (bg.empty()) continue;
      for (int b = 0; b < Qg[g].dim(); ++b) {
        const Expo& mono = Qg[g].monos[Qg[g].freeCols[b]];
        Row red = Qv.reduce(mulX(bg, XPoly{{mono, Rational(1)}}));
        for (int i = 0; i < Qv.dim(); ++i) block[i][offset[g] + b] += red[i];
      }
    }
    for (Row& r : block) constraints.push_back(std::move(r));
  };

  for (int v = 1; v <= relBound; ++v) {
    auto [rows, colMonos] = presentation(v);
    int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    if (static_cast<int>(syz[v].size()) != rankOf(rows))
      throw std::logic_error(
          "t2Dim: generators below genBound do not span the syzygies at "
          "weight " +
          std::to_string(v));
    QuotientPiece Qv = quotientPiece(weights, rels, v + nu);
    if (Qv.dim() == 0) continue;
    for (const Row& kappa : kernelOf(rows, cols))
      addCombinationConstraint(kappa, colMonos, Qv);
  }

  // Trivial syzygies f_k e_j - f_j e_k must map to zero.
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      int v = dj[j] + dj[k];
      if (v > relBound)
        throw std::logic_error("t2Dim: relBound below a trivial syzygy");
      std::vector<XPoly> kos(m);
      kos[j] = rels[k];
      for (auto& [e, c] : rels[j]) kos[k][e] = -c;
      auto [rows, colMonos] = presentation(v);
      std::vector<Row> sol = solveOf(rows, tupleCoords(kos, v));
      if (sol.empty())
        throw std::logic_error("t2Dim: trivial syzygy outside generator span");
      addCombinationConstraint(sol[0], colMonos,
                               quotientPiece(weights, rels, v + nu));
    }

  std::vector<Row> images;
  for (int j = 0; j < m; ++j) {
    QuotientPiece Qj = quotientPiece(weights, rels, dj[j] + nu);
    for (int b = 0; b < Qj.dim(); ++b) {
      const Expo& mono = Qj.monos[Qj.freeCols[b]];
      Row img(S, Rational(0));
      bool nonzero = false;
      for (int g = 0; g < ng; ++g) {
        Row red = Qg[g].reduce(
            mulX(gens[g].tuple[j], XPoly{{mono, Rational(1)}}));
        for (int c = 0; c < Qg[g].dim(); ++c) {
          img[offset[g] + c] = red[c];
          if (red[c] != 0) nonzero = true;
        }
      }
      if (nonzero) images.push_back(std::move(img));
    }
  }

  for (const Row& c : constraints)
    for (const Row& img : images) {
      Rational dot(0);
      for (int k = 0; k < S; ++k) dot += c[k] * img[k];
      if (dot != 0) throw std::logic_error("t2Dim: image breaks a constraint");
    }

  return (S - rankOf(constraints)) - rankOf(images);
}

}  // namespace oracle
