#include "versal/resolvent.hpp"

#include <algorithm>
#include <sstream>

#include "versal/errors.hpp"

namespace versal {

void InputIdeal::validate() const {
  if (vars.size() == 0) throw SemanticError("no coordinate variables");
  if (relations.empty()) throw SemanticError("no ideal generators");
  for (const Generator& v : vars.all())
    if (v.level != 0 || v.hdeg != 0)
      throw SemanticError("coordinate variables must sit at level 0");
  for (std::size_t j = 0; j < relations.size(); ++j) {
    const Poly& f = relations[j];
    std::string label = "ideal generator " + std::to_string(j + 1);
    if (f.isZero()) throw SemanticError(label + " is zero");
    if (!weightOf(vars, f))
      throw NonHomogeneousInput(label + " mixes weights");
    for (const auto& [m, c] : f.terms)
      if (m.totalDegree() < 2)
        throw LinearTermInGenerator(label +
                                    " has a term of total degree below two");
  }
}

int InputIdeal::maxRelationWeight() const {
  int w = 0;
  for (const Poly& f : relations) w = std::max(w, *weightOf(vars, f));
  return w;
}

Poly applyDifferential(const Resolvent& r, const Poly& p) {
  return applyDerivationValues(r.gens, r.diff, 1, p);
}

QVector polyToVector(const std::vector<Monomial>& basis, const Poly& p) {
  std::map<Monomial, int, MonomialOrder> index;
  for (std::size_t i = 0; i < basis.size(); ++i)
    index[basis[i]] = static_cast<int>(i);
  QVector v = QVector::Zero(static_cast<int>(basis.size()));
  for (const auto& [m, c] : p.terms) {
    auto it = index.find(m);
    if (it == index.end())
      throw std::logic_error("term outside the expected monomial basis: " +
                             std::to_string(m.totalDegree()));
    v(it->second) = c;
  }
  return v;
}

Poly vectorToPoly(const std::vector<Monomial>& basis, const QVector& v) {
  Poly p;
  for (int i = 0; i < v.size(); ++i)
    if (v(i) != 0) p.terms[basis[i]] = v(i);
  return p;
}

namespace {

/** Matrix of s restricted to the (j, w) piece, in monomial coordinates. */
QMatrix differentialMatrix(const Resolvent& r,
                           const std::vector<Monomial>& from,
                           const std::vector<Monomial>& to) {
  QMatrix m = QMatrix::Zero(static_cast<int>(to.size()),
                            static_cast<int>(from.size()));
  for (std::size_t k = 0; k < from.size(); ++k) {
    Poly image = applyDifferential(r, Poly::fromMonomial(from[k]));
    m.col(static_cast<int>(k)) = polyToVector(to, image);
  }
  return m;
}

}  // namespace

CohomologyPiece cohomologyBasis(const Resolvent& r, int j, int w) {
  if (j > 0) throw std::invalid_argument("cohomology only lives in hdeg <= 0");
  std::vector<int> ids = r.gens.allIds();
  CohomologyPiece piece;
  piece.ambientBasis = monomialBasis(r.gens, j, w, ids);
  const int n = static_cast<int>(piece.ambientBasis.size());
  if (n == 0) return piece;

  std::vector<Monomial> up = monomialBasis(r.gens, j + 1, w, ids);
  std::vector<Monomial> down = monomialBasis(r.gens, j - 1, w, ids);
  QMatrix matUp = differentialMatrix(r, piece.ambientBasis, up);
  QMatrix matDown = differentialMatrix(r, down, piece.ambientBasis);

  SubspaceBasis kernel(n, kernelBasis(matUp));
  SubspaceBasis image(n, imageBasis(matDown));
  piece.kernelDim = kernel.dim();
  piece.imageDim = image.dim();
  for (const QVector& coord : quotientBasis(image, kernel)) {
    QVector ambient = QVector::Zero(n);
    for (int i = 0; i < coord.size(); ++i)
      if (coord(i) != 0) ambient += coord(i) * kernel.vectors[i];
    piece.classes.push_back(vectorToPoly(piece.ambientBasis, ambient));
  }
  return piece;
}

namespace {

std::string levelName(int level, int index) {
  switch (level) {
    case 1:
      return "e" + std::to_string(index);
    case 2:
      return "r" + std::to_string(index);
    case 3:
      return "q" + std::to_string(index);
    default:
      return "u" + std::to_string(level) + "_" + std::to_string(index);
  }
}

void requireMinimal(const Poly& p, const std::string& context) {
  for (const auto& [m, c] : p.terms)
    if (m.totalDegree() < 2)
      throw LinearTermInGenerator(context +
                                  " acquires a constant or linear term");
}

}  // namespace

Resolvent buildResolvent(const InputIdeal& ideal, int depth, int weightBound) {
  ideal.validate();
  if (depth < 2) throw SemanticError("resolvent depth must be at least 2");
  int needed = std::max(ideal.maxRelationWeight(), ideal.vars.maxWeight());
  if (weightBound < needed)
    throw WeightBoundTooSmall("weight bound " + std::to_string(weightBound) +
                              " is below the largest input weight " +
                              std::to_string(needed));

  Resolvent r;
  r.gens = ideal.vars;
  r.depth = depth;
  r.weightBound = weightBound;

  for (std::size_t j = 0; j < ideal.relations.size(); ++j) {
    const Poly& f = ideal.relations[j];
    int id = r.gens.add(levelName(1, static_cast<int>(j) + 1), -1,
                        *weightOf(ideal.vars, f), 1);
    r.diff[id] = f;
  }

  for (int l = 1; l < depth; ++l) {
    int index = 1;
    for (int w = 1; w <= weightBound; ++w) {
      CohomologyPiece piece = cohomologyBasis(r, -l, w);
      for (const Poly& rep : piece.classes) {
        requireMinimal(rep, "level " + std::to_string(l + 1) +
                                " generator at weight " + std::to_string(w));
        int id = r.gens.add(levelName(l + 1, index++), -(l + 1), w, l + 1);
        r.diff[id] = rep;
      }
    }
  }
  return r;
}

int idealPieceDim(const GeneratorSet& g, const std::vector<int>& vars,
                  const std::vector<Poly>& relations, int w) {
  std::vector<Monomial> ambient = monomialBasis(g, 0, w, vars);
  if (ambient.empty()) return 0;
  std::vector<QVector> cols;
  for (const Poly& f : relations) {
    std::optional<int> fw = weightOf(g, f);
    if (!fw || *fw > w) continue;
    for (const Monomial& m : monomialBasis(g, 0, w - *fw, vars)) {
      Poly prod = mul(g, Poly::fromMonomial(m), f);
      if (!prod.isZero())
        cols.push_back(polyToVector(ambient, prod));
    }
  }
  if (cols.empty()) return 0;
  return rank(columnsToMatrix(static_cast<int>(ambient.size()), cols));
}

int quotientRingDim(const GeneratorSet& g, const std::vector<int>& vars,
                    const std::vector<Poly>& relations, int w) {
  int full = static_cast<int>(monomialBasis(g, 0, w, vars).size());
  return full - idealPieceDim(g, vars, relations, w);
}

CheckList verifyResolvent(const Resolvent& r) {
  CheckList out;

  bool graded = true;
  std::string gradedDetail;
  for (const auto& [id, p] : r.diff) {
    const Generator& gen = r.gens[id];
    std::optional<int> h = hdegOf(r.gens, p);
    std::optional<int> w = weightOf(r.gens, p);
    if (p.isZero() || !h || *h != gen.hdeg + 1 || !w || *w != gen.weight) {
      graded = false;
      gradedDetail = "differential of " + gen.name + " is not graded";
      break;
    }
  }
  out.add("differential_graded", graded, gradedDetail);

  bool squares = true;
  std::string squaresDetail;
  for (const auto& [id, p] : r.diff) {
    Poly ss = applyDifferential(r, p);
    if (!ss.isZero()) {
      squares = false;
      squaresDetail = "s(s(" + r.gens[id].name +
                      ")) = " + polyToString(r.gens, ss);
      break;
    }
  }
  out.add("differential_squares_to_zero", squares, squaresDetail);

  bool minimal = true;
  std::string minimalDetail;
  for (const auto& [id, p] : r.diff)
    for (const auto& [m, c] : p.terms)
      if (m.totalDegree() < 2) {
        minimal = false;
        minimalDetail = "differential of " + r.gens[id].name +
                        " has a constant or linear term";
      }
  out.add("minimal", minimal, minimalDetail);

  bool acyclic = true;
  std::string acyclicDetail;
  for (int l = 1; l < r.depth && acyclic; ++l)
    for (int w = 1; w <= r.weightBound; ++w) {
      CohomologyPiece piece = cohomologyBasis(r, -l, w);
      if (piece.dim() != 0) {
        acyclic = false;
        std::ostringstream os;
        os << "H^(" << -l << ") at weight " << w << " has dimension "
           << piece.dim();
        acyclicDetail = os.str();
        break;
      }
    }
  out.add("acyclic_below_degree_zero", acyclic, acyclicDetail);

  std::vector<int> vars = r.gens.idsAtLevel(0);
  std::vector<Poly> relations;
  for (int id : r.gens.idsAtLevel(1)) relations.push_back(r.diff.at(id));
  bool quotient = true;
  std::string quotientDetail;
  for (int w = 0; w <= r.weightBound; ++w) {
    int expected = quotientRingDim(r.gens, vars, relations, w);
    int actual = cohomologyBasis(r, 0, w).dim();
    if (expected != actual) {
      quotient = false;
      std::ostringstream os;
      os << "H^0 at weight " << w << " has dimension " << actual
         << ", quotient ring has " << expected;
      quotientDetail = os.str();
      break;
    }
  }
  out.add("degree_zero_matches_quotient_ring", quotient, quotientDetail);

  return out;
}

}  // namespace versal
