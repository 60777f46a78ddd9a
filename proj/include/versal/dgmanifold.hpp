#ifndef VERSAL_DGMANIFOLD_HPP
#define VERSAL_DGMANIFOLD_HPP

#include <map>
#include <string>
#include <vector>

#include "versal/resolvent.hpp"

namespace versal {

/**
 * The graded space underlying a formal DG manifold: one basis vector per
 * resolvent generator, graded by level (non-negative) and weight.
 */
struct GradedSpace {
  struct BasisVector {
    std::string name;
    int degree = 0;  // the level; parity of the basis vector
    int weight = 0;
  };
  std::vector<BasisVector> basis;

  int dim() const { return static_cast<int>(basis.size()); }
};

GradedSpace gradedSpaceOf(const Resolvent& r);

/**
 * A degree +1 coderivation of the symmetric coalgebra on the space, stored
 * by Taylor coefficients: a sorted index multiset (the source word, one
 * entry per tensor factor) maps to a sparse vector of target coefficients.
 * Graded symmetry makes a repeated odd index illegal.
 */
struct Coderivation {
  std::map<std::vector<int>, std::map<int, Rational>> taylor;

  bool operator==(const Coderivation& o) const { return taylor == o.taylor; }
};

/** A graded space with a coderivation squaring to zero on it. */
struct DGManifold {
  GradedSpace space;
  Coderivation q;
};

/**
 * Reads the resolvent differential as a coderivation: each monomial of
 * s(x_i) becomes the multiset of its factors, and the coefficient carries
 * over verbatim into the e_i component.  Inverse of coderToDer, bit-exact.
 */
Coderivation derToCoder(const Resolvent& r);

/** Derivation values on generators recovered from a coderivation. */
std::map<int, Poly> coderToDer(const GeneratorSet& g, const Coderivation& q);

/**
 * Checks that every Taylor entry is graded (target degree = source degree
 * + 1, weights conserved) and free of repeated odd indices.  Returns the
 * first violation message, or the empty string.
 */
std::string validateCoderivation(const GradedSpace& space,
                                 const Coderivation& q);

/**
 * True when the coderivation squares to zero, tested through the dual
 * algebra derivation on every generator of weight <= weightBound after
 * truncating Taylor entries above the arity bound.
 */
bool checkCodifferential(const GradedSpace& space, const Coderivation& q,
                         int arityBound, int weightBound);

/** Builds the DG manifold of an ideal through its resolvent. */
DGManifold functorF(const InputIdeal& ideal, int depth, int weightBound);

/** The DG manifold already attached to a built resolvent. */
DGManifold functorF(const Resolvent& r);

/**
 * The degree-0 equations cut out by the coderivation: component of Q along
 * each degree-1 basis vector, restricted to purely degree-0 sources.  The
 * generator table reconstructs the basis vectors as variables (ids equal
 * basis indices).
 */
struct ZeroLocus {
  GeneratorSet gens;
  std::vector<Poly> equations;  // one per degree-1 basis vector, index order
};

ZeroLocus zeroLocus(const GradedSpace& space, const Coderivation& q);

/** No arity-1 Taylor coefficients (vanishing linear part). */
bool isMinimal(const Coderivation& q);

/** No arity-0 Taylor coefficients (the origin stays fixed). */
bool isLocal(const Coderivation& q);

/**
 * Taylor coefficients of a morphism of DG manifolds: a sorted source index
 * multiset maps to target coefficients; degree 0 and weight conserving.
 */
struct MorphismTaylor {
  std::map<std::vector<int>, std::map<int, Rational>> components;
};

/**
 * Checks the chain-map condition through the dual algebra map (throws
 * NotAMorphism on failure), then tests whether the linear part induces an
 * isomorphism on cohomology in every (degree, weight) slice with weight up
 * to the bound.
 */
bool isWeakEquivalence(const DGManifold& src, const DGManifold& tgt,
                       const MorphismTaylor& f, int weightBound);

}  // namespace versal

#endif  // VERSAL_DGMANIFOLD_HPP
