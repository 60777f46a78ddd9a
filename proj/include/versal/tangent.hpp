#ifndef VERSAL_TANGENT_HPP
#define VERSAL_TANGENT_HPP

#include <map>
#include <utility>
#include <vector>

#include "versal/linalg.hpp"
#include "versal/resolvent.hpp"

namespace versal {

/**
 * A derivation of the resolvent, stored by its values on generators.
 * Values are graded: on generator x the value has hdeg(x) + hdeg and
 * weight(x) + weight.  Missing ids act as zero.
 */
struct TangentElement {
  std::map<int, Poly> values;
  int hdeg = 0;
  int weight = 0;

  bool isZero() const {
    for (const auto& [id, p] : values)
      if (!p.isZero()) return false;
    return true;
  }
  bool operator==(const TangentElement& o) const;
};

/** Builds a tangent element and checks the grading of every value. */
TangentElement makeTangent(const Resolvent& r, std::map<int, Poly> values,
                           int hdeg, int weight);

/** The differential s of the resolvent as a tangent element. */
TangentElement differentialElement(const Resolvent& r);

TangentElement operator+(const TangentElement& a, const TangentElement& b);
TangentElement operator-(const TangentElement& a, const TangentElement& b);
TangentElement operator*(const Rational& c, const TangentElement& a);

/** Applies the derivation to a polynomial by the graded Leibniz rule. */
Poly apply(const Resolvent& r, const TangentElement& theta, const Poly& p);

/**
 * Graded commutator [a, b] = a b - (-1)^{hdeg(a) hdeg(b)} b a, evaluated on
 * generators.
 */
TangentElement bracket(const Resolvent& r, const TangentElement& a,
                       const TangentElement& b);

/** Tangent-complex differential [s, theta]. */
TangentElement differential(const Resolvent& r, const TangentElement& theta);

/**
 * Ordered basis of the derivations of fixed (hdeg, weight): one entry
 * m * d/dx per generator x (id order) and monomial m (term order) of the
 * matching degree and weight.
 */
struct DerivationBasis {
  int hdeg = 0;
  int weight = 0;
  std::vector<std::pair<int, Monomial>> entries;

  int dim() const { return static_cast<int>(entries.size()); }
  QVector toVector(const TangentElement& theta) const;
  TangentElement fromVector(const QVector& v) const;
};

DerivationBasis derivationBasis(const Resolvent& r, int hdeg, int weight);

/** Number of basis derivations, computed without materializing them. */
long derivationBasisSize(const Resolvent& r, int hdeg, int weight);

/**
 * The (hdeg, weight) slice of the tangent complex with a deterministic
 * splitting: cocycles decompose as a projection onto chosen cohomology
 * representatives plus [s, h] of a preimage with free coordinates zeroed.
 */
struct HomotopyData {
  DerivationBasis below;  // hdeg - 1
  DerivationBasis cur;    // hdeg
  DerivationBasis above;  // hdeg + 1
  QMatrix dBelow;         // [s, -]: below -> cur
  QMatrix dAbove;         // [s, -]: cur -> above
  SubspaceBasis kernel;
  SubspaceBasis image;
  std::vector<QVector> repVectors;   // representatives in cur coordinates
  std::vector<TangentElement> reps;  // the same representatives as elements

  struct Split {
    std::vector<Rational> projection;  // coordinates over reps
    TangentElement h;                  // theta - proj = [s, h]
  };

  /** Splits a cocycle; throws NotACocycle when [s, theta] != 0. */
  Split split(const TangentElement& theta) const;
};

HomotopyData homotopyData(const Resolvent& r, int hdeg, int weight);

/** Cohomology of the tangent complex over a band of weights. */
struct TangentCohomology {
  int hdeg = 0;
  int weightLo = 0;
  int weightHi = 0;
  // (weight, representatives), weights ascending, empty pieces omitted
  std::vector<std::pair<int, std::vector<TangentElement>>> pieces;

  int totalDim() const;
  /** All representatives as (weight, element), in report order. */
  std::vector<std::pair<int, TangentElement>> flatten() const;
};

TangentCohomology tangentCohomology(const Resolvent& r, int hdeg, int weightLo,
                                    int weightHi);

/**
 * Default certification band for tangent weights.  The lower edge is
 * -maxGeneratorWeight (below it every derivation value vanishes).  The
 * upper edge extends from 0 toward weightHint while a deterministic
 * workload estimate stays within budget, so small inputs get the full
 * band and large ones stay tractable.
 */
std::pair<int, int> tangentScanBand(const Resolvent& r, int weightHint);

}  // namespace versal

#endif  // VERSAL_TANGENT_HPP
