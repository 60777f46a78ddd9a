#ifndef VERSAL_TEST_FIXTURES_HPP
#define VERSAL_TEST_FIXTURES_HPP

#include <vector>

#include "versal/poly.hpp"
#include "versal/resolvent.hpp"

// Shared input ideals used across the test suite.  Every fixture rebuilds
// its ideal from scratch so tests cannot leak state into each other.
namespace fixtures {

inline versal::Poly varPoly(int id) {
  return versal::Poly::fromMonomial(versal::Monomial::var(id));
}

/** Chain curve x^{k+1} with x of weight 2. */
inline versal::InputIdeal chainCurve(int k) {
  versal::InputIdeal ideal;
  int x = ideal.vars.add("x", 0, 2, 0);
  ideal.relations.push_back(
      versal::power(ideal.vars, varPoly(x), k + 1));
  return ideal;
}

/** Cusp x^3 + y^2 with weights (2, 3). */
inline versal::InputIdeal cusp() {
  versal::InputIdeal ideal;
  int x = ideal.vars.add("x", 0, 2, 0);
  int y = ideal.vars.add("y", 0, 3, 0);
  ideal.relations.push_back(versal::power(ideal.vars, varPoly(x), 3) +
                            versal::power(ideal.vars, varPoly(y), 2));
  return ideal;
}

/** Plane node x^2 + y^2 with unit weights. */
inline versal::InputIdeal node() {
  versal::InputIdeal ideal;
  int x = ideal.vars.add("x", 0, 1, 0);
  int y = ideal.vars.add("y", 0, 1, 0);
  ideal.relations.push_back(versal::power(ideal.vars, varPoly(x), 2) +
                            versal::power(ideal.vars, varPoly(y), 2));
  return ideal;
}

/** Plane-and-line union (xy, xz), three variables of weight 1. */
inline versal::InputIdeal cross() {
  versal::InputIdeal ideal;
  int x = ideal.vars.add("x", 0, 1, 0);
  int y = ideal.vars.add("y", 0, 1, 0);
  int z = ideal.vars.add("z", 0, 1, 0);
  ideal.relations.push_back(
      versal::mul(ideal.vars, varPoly(x), varPoly(y)));
  ideal.relations.push_back(
      versal::mul(ideal.vars, varPoly(x), varPoly(z)));
  return ideal;
}

/** Line with an embedded point (x^2, xy), two variables of weight 1. */
inline versal::InputIdeal embeddedPoint() {
  versal::InputIdeal ideal;
  int x = ideal.vars.add("x", 0, 1, 0);
  int y = ideal.vars.add("y", 0, 1, 0);
  ideal.relations.push_back(versal::power(ideal.vars, varPoly(x), 2));
  ideal.relations.push_back(
      versal::mul(ideal.vars, varPoly(x), varPoly(y)));
  return ideal;
}

/**
 * Cone over the rational normal curve of degree four: the 2x2 minors of
 * [[x0, x1, x2, x3], [x1, x2, x3, x4]], five variables of weight 1.
 */
inline versal::InputIdeal quarticCone() {
  versal::InputIdeal ideal;
  std::vector<int> x;
  for (int i = 0; i < 5; ++i)
    x.push_back(ideal.vars.add("x" + std::to_string(i), 0, 1, 0));
  for (int i = 0; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j)
      ideal.relations.push_back(
          versal::mul(ideal.vars, varPoly(x[i]), varPoly(x[j + 1])) -
          versal::mul(ideal.vars, varPoly(x[i + 1]), varPoly(x[j])));
  return ideal;
}

}  // namespace fixtures

#endif  // VERSAL_TEST_FIXTURES_HPP
