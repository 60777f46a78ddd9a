#ifndef VERSAL_KURANISHI_HPP
#define VERSAL_KURANISHI_HPP

#include <optional>
#include <string>
#include <vector>

#include "versal/checks.hpp"
#include "versal/tangent.hpp"

namespace versal {

/**
 * A deformation parameter.  Its weight is minus the weight of the degree-1
 * cohomology class it multiplies, so the perturbation stays weight-0.
 */
struct Parameter {
  std::string name;
  int weight = 0;
};

/** Exponent vector over the parameter list. */
typedef std::vector<int> TMonomial;

int tOrder(const TMonomial& a);
int tWeight(const std::vector<Parameter>& params, const TMonomial& a);
TMonomial tUnit(int paramCount, int index);
TMonomial tProduct(const TMonomial& a, const TMonomial& b);
std::string tMonomialToString(const std::vector<Parameter>& params,
                              const TMonomial& a);

/** Order first, then earlier parameters with higher exponents first. */
struct TMonomialOrder {
  bool operator()(const TMonomial& a, const TMonomial& b) const;
};

/** Scalar power series in the parameters (finitely many terms). */
typedef std::map<TMonomial, Rational, TMonomialOrder> TSeries;

std::string tSeriesToString(const std::vector<Parameter>& params,
                            const TSeries& s);

/**
 * The deformation data: a degree-1 derivation-valued series delta with
 * delta(0) = 0.  Each coefficient has weight minus the t-weight of its
 * monomial.
 */
struct Perturbation {
  int paramCount = 0;
  std::map<TMonomial, TangentElement, TMonomialOrder> terms;
};

/** Polynomial with series coefficients: one resolvent element per slot. */
struct TPoly {
  std::map<TMonomial, Poly, TMonomialOrder> coeffs;

  bool operator==(const TPoly& o) const { return coeffs == o.coeffs; }
};

/**
 * The Kuranishi map: one scalar series per degree-2 cohomology class, in
 * the flattened class order.  The versal base is its zero locus.
 */
struct KuranishiMap {
  std::vector<int> classWeights;     // weight of each degree-2 class
  std::vector<TSeries> components;   // aligned with classWeights

  bool isZero() const;
};

/** Per-slot diagnostics of one lifting order, kept for verification. */
struct LiftTrace {
  int order = 0;
  TMonomial alpha;
  TangentElement defect;             // corrected defect, a strict cocycle
  std::vector<Rational> projection;  // over the flattened degree-2 classes
  TangentElement h;                  // homotopy preimage; delta gets -h
};

struct DeformationResult {
  Resolvent resolvent;
  std::pair<int, int> tangentBand{0, 0};
  std::vector<Parameter> parameters;
  TangentCohomology t1;
  TangentCohomology t2;
  Perturbation delta;
  KuranishiMap kuranishi;
  std::vector<TPoly> family;  // one per level-1 generator, id order
  int order = 0;
  std::optional<int> stabilizedAt;
  std::vector<std::string> caveats;
  std::vector<LiftTrace> trace;
};

/** First-order perturbation: parameter i times the i-th degree-1 class. */
Perturbation firstOrder(const std::vector<Parameter>& params,
                        const TangentCohomology& t1);

/**
 * Mutable state threaded through the order-by-order lift.  The multipliers
 * map records the degree-2 correction series attached to each Kuranishi
 * component, so later orders stay consistent with earlier choices.
 */
struct LiftState {
  const Resolvent* r = nullptr;
  std::vector<Parameter> params;
  std::vector<std::pair<int, TangentElement>> t2flat;  // (weight, class)
  Perturbation delta;
  KuranishiMap kuranishi;
  std::map<std::pair<int, TMonomial>, TangentElement,
           std::less<std::pair<int, TMonomial>>>
      multipliers;
  std::map<int, HomotopyData> homotopyCache;  // keyed by slice weight
  std::vector<LiftTrace> trace;
  int lastContentOrder = 1;
};

/**
 * Extends the lift from order n to order n+1: assembles the quadratic
 * defect, solves for the correction inside the obstruction ideal that
 * makes every slot a strict cocycle, then splits each slot into new
 * Kuranishi coefficients (projection) and a new delta term (-h).
 *
 * @returns true when the order contributed a new delta term, Kuranishi
 *          coefficient, or multiplier.
 */
bool liftStep(LiftState& state, int n);

/** Family members s(e) + delta(e) per level-1 generator, in id order. */
std::vector<TPoly> familyFrom(const Resolvent& r, const Perturbation& delta);

/**
 * The full pipeline: resolvent, tangent cohomology over the default band,
 * first-order seed, lifting through the requested order, family assembly,
 * and termination analysis.
 */
DeformationResult semiuniversal(const InputIdeal& ideal, int depth, int order,
                                int weightBound);

/**
 * Independent flatness certificate: recomputes (s+delta)^2 on every
 * generator from the stored data alone and checks membership in the ideal
 * generated by the Kuranishi components, modulo parameter order > n.  One
 * check per generator, with the first failing slot as the witness.
 */
CheckList verifyFlatness(const Resolvent& r,
                         const std::vector<Parameter>& params,
                         const Perturbation& delta,
                         const KuranishiMap& kuranishi, int n);

}  // namespace versal

#endif  // VERSAL_KURANISHI_HPP
