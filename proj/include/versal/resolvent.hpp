#ifndef VERSAL_RESOLVENT_HPP
#define VERSAL_RESOLVENT_HPP

#include <map>
#include <vector>

#include "versal/checks.hpp"
#include "versal/linalg.hpp"
#include "versal/poly.hpp"

namespace versal {

/**
 * The input datum: weighted coordinate variables (all level 0, hdeg 0) and
 * ideal generators inside the square of the maximal ideal.
 */
struct InputIdeal {
  GeneratorSet vars;
  std::vector<Poly> relations;

  /**
   * Enforces the admissibility rules: at least one variable and relation,
   * every relation nonzero, weight-homogeneous (else NonHomogeneousInput),
   * and free of constant and linear terms (else LinearTermInGenerator).
   */
  void validate() const;

  int maxRelationWeight() const;
};

/**
 * A free graded-commutative algebra on finitely many generators per
 * (degree, weight), carrying a degree +1 differential s given by its values
 * on generators.  Level-0 generators are the coordinate variables (s = 0),
 * level-1 generators map onto the ideal relations, and deeper levels kill
 * the cohomology classes recorded during construction, weight by weight up
 * to the certified bound.
 */
struct Resolvent {
  GeneratorSet gens;
  std::map<int, Poly> diff;  // generator id -> s(generator); absent means 0
  int depth = 0;
  int weightBound = 0;
};

/** Applies the differential s to a polynomial. */
Poly applyDifferential(const Resolvent& r, const Poly& p);

/**
 * Builds the resolvent of the ideal.  Levels 2..depth are adjoined weight
 * by weight: at each weight w <= weightBound a basis of the surviving
 * degree -l cohomology is computed and one level-(l+1) generator is added
 * per class, with the class representative as its differential.
 *
 * @param ideal       validated input.
 * @param depth       largest level to adjoin; at least 2.
 * @param weightBound certification bound W; at least the largest relation
 *                    weight (else WeightBoundTooSmall).
 */
Resolvent buildResolvent(const InputIdeal& ideal, int depth, int weightBound);

/** A basis of the (hdeg, weight) cohomology of the resolvent. */
struct CohomologyPiece {
  std::vector<Monomial> ambientBasis;  // monomial basis of the (j, w) piece
  std::vector<Poly> classes;           // cycle representatives
  int kernelDim = 0;
  int imageDim = 0;
  int dim() const { return static_cast<int>(classes.size()); }
};

/**
 * Cohomology of (R, s) in homological degree j <= 0 and weight w, with
 * deterministic cycle representatives (earliest kernel basis vectors not in
 * the image span).
 */
CohomologyPiece cohomologyBasis(const Resolvent& r, int j, int w);

/**
 * Certifies the resolvent: the differential is graded and squares to zero,
 * generators are minimal (no constant or linear differentials), cohomology
 * vanishes in degrees -1 > j > -depth up to the weight bound, and the
 * degree-0 cohomology matches a direct quotient-ring dimension count.
 */
CheckList verifyResolvent(const Resolvent& r);

/** Dimension of the weight-w piece of span{ m * f : f in relations }. */
int idealPieceDim(const GeneratorSet& g, const std::vector<int>& vars,
                  const std::vector<Poly>& relations, int w);

/** Dimension of the weight-w piece of k[vars] / (relations). */
int quotientRingDim(const GeneratorSet& g, const std::vector<int>& vars,
                    const std::vector<Poly>& relations, int w);

/** Coordinates of p over the given monomial basis; throws on a stray term. */
QVector polyToVector(const std::vector<Monomial>& basis, const Poly& p);

/** Polynomial with the given coordinates over a monomial basis. */
Poly vectorToPoly(const std::vector<Monomial>& basis, const QVector& v);

}  // namespace versal

#endif  // VERSAL_RESOLVENT_HPP
