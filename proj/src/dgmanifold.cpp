#include "versal/dgmanifold.hpp"

#include <algorithm>
#include <sstream>

#include "versal/errors.hpp"

namespace versal {

GradedSpace gradedSpaceOf(const Resolvent& r) {
  GradedSpace space;
  for (const Generator& g : r.gens.all())
    space.basis.push_back(GradedSpace::BasisVector{g.name, g.level, g.weight});
  return space;
}

namespace {

std::vector<int> multisetOf(const Monomial& m) {
  std::vector<int> ms;
  for (const auto& [id, e] : m.factors)
    for (int k = 0; k < e; ++k) ms.push_back(id);
  return ms;
}

Monomial monomialFromMultiset(const GeneratorSet& g,
                              const std::vector<int>& ms) {
  Monomial m;
  for (std::size_t i = 0; i < ms.size();) {
    std::size_t j = i;
    while (j < ms.size() && ms[j] == ms[i]) ++j;
    int exp = static_cast<int>(j - i);
    if (exp > 1 && g.isOdd(ms[i]))
      throw std::invalid_argument("repeated odd index in source word");
    m.factors.emplace_back(ms[i], exp);
    i = j;
  }
  return m;
}

GeneratorSet generatorsOf(const GradedSpace& space) {
  GeneratorSet g;
  for (const GradedSpace::BasisVector& b : space.basis)
    g.add(b.name, -b.degree, b.weight, b.degree);
  return g;
}

}  // namespace

Coderivation derToCoder(const Resolvent& r) {
  Coderivation q;
  for (const auto& [id, p] : r.diff)
    for (const auto& [m, c] : p.terms) q.taylor[multisetOf(m)][id] = c;
  return q;
}

std::map<int, Poly> coderToDer(const GeneratorSet& g, const Coderivation& q) {
  std::map<int, Poly> values;
  for (const auto& [ms, targets] : q.taylor) {
    Monomial m = monomialFromMultiset(g, ms);
    for (const auto& [j, c] : targets) values[j].addTerm(m, c);
  }
  for (auto it = values.begin(); it != values.end();)
    it = it->second.isZero() ? values.erase(it) : std::next(it);
  return values;
}

std::string validateCoderivation(const GradedSpace& space,
                                 const Coderivation& q) {
  for (const auto& [ms, targets] : q.taylor) {
    if (ms.empty()) return "empty source word";
    if (!std::is_sorted(ms.begin(), ms.end())) return "unsorted source word";
    int deg = 0, w = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (ms[i] < 0 || ms[i] >= space.dim()) return "source index out of range";
      if (i > 0 && ms[i] == ms[i - 1] && space.basis[ms[i]].degree % 2 != 0)
        return "repeated odd index in source word";
      deg += space.basis[ms[i]].degree;
      w += space.basis[ms[i]].weight;
    }
    for (const auto& [j, c] : targets) {
      if (j < 0 || j >= space.dim()) return "target index out of range";
      if (c == 0) return "explicit zero coefficient";
      if (space.basis[j].degree != deg + 1)
        return "entry does not raise degree by one";
      if (space.basis[j].weight != w) return "entry does not conserve weight";
    }
  }
  return "";
}

bool checkCodifferential(const GradedSpace& space, const Coderivation& q,
                         int arityBound, int weightBound) {
  GeneratorSet g = generatorsOf(space);
  Coderivation trunc;
  for (const auto& [ms, targets] : q.taylor)
    if (static_cast<int>(ms.size()) <= arityBound) trunc.taylor[ms] = targets;
  std::map<int, Poly> values = coderToDer(g, trunc);
  for (const auto& [id, p] : values) {
    if (g[id].weight > weightBound) continue;
    if (!applyDerivationValues(g, values, 1, p).isZero()) return false;
  }
  return true;
}

DGManifold functorF(const Resolvent& r) {
  return DGManifold{gradedSpaceOf(r), derToCoder(r)};
}

DGManifold functorF(const InputIdeal& ideal, int depth, int weightBound) {
  return functorF(buildResolvent(ideal, depth, weightBound));
}

ZeroLocus zeroLocus(const GradedSpace& space, const Coderivation& q) {
  ZeroLocus z;
  z.gens = generatorsOf(space);
  std::map<int, int> eqIndex;  // basis index -> equation slot
  for (int i = 0; i < space.dim(); ++i)
    if (space.basis[i].degree == 1) {
      eqIndex[i] = static_cast<int>(z.equations.size());
      z.equations.push_back(Poly::zero());
    }
  for (const auto& [ms, targets] : q.taylor) {
    bool degreeZeroSource = true;
    for (int i : ms)
      if (space.basis[i].degree != 0) degreeZeroSource = false;
    if (!degreeZeroSource) continue;
    Monomial m = monomialFromMultiset(z.gens, ms);
    for (const auto& [j, c] : targets) {
      auto it = eqIndex.find(j);
      if (it != eqIndex.end()) z.equations[it->second].addTerm(m, c);
    }
  }
  return z;
}

bool isMinimal(const Coderivation& q) {
  for (const auto& [ms, targets] : q.taylor)
    if (ms.size() == 1 && !targets.empty()) return false;
  return true;
}

bool isLocal(const Coderivation& q) {
  for (const auto& [ms, targets] : q.taylor)
    if (ms.empty() && !targets.empty()) return false;
  return true;
}

namespace {

/** Rewrites a polynomial over the target table through generator images. */
Poly evalThrough(const GeneratorSet& gTgt, const Poly& p,
                 const std::map<int, Poly>& images, const GeneratorSet& gSrc) {
  Poly out;
  for (const auto& [m, c] : p.terms) {
    Poly acc = Poly::constant(c);
    for (const auto& [v, e] : m.factors) {
      auto it = images.find(v);
      Poly val = it != images.end() ? it->second : Poly::zero();
      acc = mul(gSrc, acc, power(gSrc, val, e));
      if (acc.isZero()) break;
    }
    out = out + acc;
  }
  return out;
}

struct Slice {
  std::vector<int> indices;  // basis indices of the (degree, weight) piece
  std::map<int, int> pos;
};

Slice sliceOf(const GradedSpace& space, int degree, int weight) {
  Slice s;
  for (int i = 0; i < space.dim(); ++i)
    if (space.basis[i].degree == degree && space.basis[i].weight == weight) {
      s.pos[i] = static_cast<int>(s.indices.size());
      s.indices.push_back(i);
    }
  return s;
}

/** Matrix of an arity-1 Taylor family between two slices. */
QMatrix linearMatrix(
    const std::map<std::vector<int>, std::map<int, Rational>>& taylor,
    const Slice& from, const Slice& to) {
  QMatrix m = QMatrix::Zero(static_cast<int>(to.indices.size()),
                            static_cast<int>(from.indices.size()));
  for (std::size_t k = 0; k < from.indices.size(); ++k) {
    auto it = taylor.find(std::vector<int>{from.indices[k]});
    if (it == taylor.end()) continue;
    for (const auto& [j, c] : it->second) {
      auto p = to.pos.find(j);
      if (p != to.pos.end()) m(p->second, static_cast<int>(k)) = c;
    }
  }
  return m;
}

struct SliceCohomology {
  SubspaceBasis kernel;
  std::vector<QVector> image;
  std::vector<QVector> reps;  // in slice coordinates
};

SliceCohomology sliceCohomology(const QMatrix& dDown, const QMatrix& dUp,
                                int dim) {
  SliceCohomology h;
  h.kernel = SubspaceBasis(dim, kernelBasis(dUp));
  h.image = imageBasis(dDown);
  SubspaceBasis img(dim, h.image);
  for (const QVector& coord : quotientBasis(img, h.kernel)) {
    QVector ambient = QVector::Zero(dim);
    for (int i = 0; i < coord.size(); ++i)
      if (coord(i) != 0) ambient += coord(i) * h.kernel.vectors[i];
    h.reps.push_back(ambient);
  }
  return h;
}

}  // namespace

bool isWeakEquivalence(const DGManifold& src, const DGManifold& tgt,
                       const MorphismTaylor& f, int weightBound) {
  GeneratorSet gS = generatorsOf(src.space);
  GeneratorSet gT = generatorsOf(tgt.space);
  std::map<int, Poly> sSrc = coderToDer(gS, src.q);
  std::map<int, Poly> sTgt = coderToDer(gT, tgt.q);

  // Dual algebra map: each target generator pulls back to a polynomial in
  // the source generators with the morphism's Taylor coefficients.
  std::map<int, Poly> phi;
  for (const auto& [ms, targets] : f.components) {
    if (ms.empty()) throw NotAMorphism("morphism has a constant component");
    Monomial m = monomialFromMultiset(gS, ms);
    for (const auto& [j, c] : targets) phi[j].addTerm(m, c);
  }
  for (const auto& [j, p] : phi) {
    if (p.isZero()) continue;
    std::optional<int> h = hdegOf(gS, p);
    std::optional<int> w = weightOf(gS, p);
    if (!h || *h != gT[j].hdeg || !w || *w != gT[j].weight)
      throw NotAMorphism("component for '" + gT[j].name +
                         "' violates degree or weight");
  }
  for (int j = 0; j < gT.size(); ++j) {
    Poly lhs = evalThrough(gT, sTgt.count(j) ? sTgt.at(j) : Poly::zero(), phi,
                           gS);
    auto it = phi.find(j);
    Poly rhs = applyDerivationValues(
        gS, sSrc, 1, it != phi.end() ? it->second : Poly::zero());
    if (!(lhs == rhs))
      throw NotAMorphism("chain condition fails on '" + gT[j].name + "'");
  }

  // Linear part must induce isomorphisms slice by slice.
  int maxDegree = 0, maxWeight = 0;
  for (const GradedSpace::BasisVector& b : src.space.basis) {
    maxDegree = std::max(maxDegree, b.degree);
    maxWeight = std::max(maxWeight, b.weight);
  }
  for (const GradedSpace::BasisVector& b : tgt.space.basis) {
    maxDegree = std::max(maxDegree, b.degree);
    maxWeight = std::max(maxWeight, b.weight);
  }
  maxWeight = std::min(maxWeight, weightBound);

  for (int d = 0; d <= maxDegree; ++d)
    for (int w = 1; w <= maxWeight; ++w) {
      Slice sCur = sliceOf(src.space, d, w);
      Slice sDown = sliceOf(src.space, d - 1, w);
      Slice sUp = sliceOf(src.space, d + 1, w);
      Slice tCur = sliceOf(tgt.space, d, w);
      Slice tDown = sliceOf(tgt.space, d - 1, w);
      Slice tUp = sliceOf(tgt.space, d + 1, w);
      int ns = static_cast<int>(sCur.indices.size());
      int nt = static_cast<int>(tCur.indices.size());
      if (ns == 0 && nt == 0) continue;

      SliceCohomology hs =
          sliceCohomology(linearMatrix(src.q.taylor, sDown, sCur),
                          linearMatrix(src.q.taylor, sCur, sUp), ns);
      SliceCohomology ht =
          sliceCohomology(linearMatrix(tgt.q.taylor, tDown, tCur),
                          linearMatrix(tgt.q.taylor, tCur, tUp), nt);
      if (hs.reps.size() != ht.reps.size()) return false;
      if (hs.reps.empty()) continue;

      QMatrix f1 = linearMatrix(f.components, sCur, tCur);
      std::vector<QVector> cols = ht.image;
      cols.insert(cols.end(), ht.reps.begin(), ht.reps.end());
      QMatrix classSolver = columnsToMatrix(nt, cols);
      QMatrix induced = QMatrix::Zero(static_cast<int>(ht.reps.size()),
                                      static_cast<int>(hs.reps.size()));
      for (std::size_t k = 0; k < hs.reps.size(); ++k) {
        std::optional<QVector> c = solve(classSolver, f1 * hs.reps[k]);
        if (!c) return false;  // image is not even a cycle class
        for (std::size_t i = 0; i < ht.reps.size(); ++i)
          induced(static_cast<int>(i), static_cast<int>(k)) =
              (*c)(static_cast<int>(ht.image.size() + i));
      }
      if (rank(induced) != static_cast<int>(ht.reps.size())) return false;
    }
  return true;
}

}  // namespace versal
