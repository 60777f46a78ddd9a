#ifndef VERSAL_POLY_HPP
#define VERSAL_POLY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "versal/generators.hpp"
#include "versal/rational.hpp"

namespace versal {

/**
 * A monomial in the free graded-commutative algebra: factors sorted by
 * generator id, exponents >= 1, odd generators never squared.  The empty
 * factor list is the unit monomial.
 */
struct Monomial {
  std::vector<std::pair<int, int>> factors;  // (generator id, exponent)

  static Monomial one() { return Monomial{}; }
  static Monomial var(int id, int exp = 1);

  bool isOne() const { return factors.empty(); }
  int totalDegree() const;
  int exponentOf(int id) const;

  bool operator==(const Monomial& o) const { return factors == o.factors; }
};

/**
 * Canonical term order: higher total degree first, then earlier generators
 * with higher exponents first.  Map iteration therefore starts at the
 * leading term, which is also the display order.
 */
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/** Polynomial as a sorted term map; absent keys are zero coefficients. */
struct Poly {
  std::map<Monomial, Rational, MonomialOrder> terms;

  static Poly zero() { return Poly{}; }
  static Poly constant(const Rational& c);
  static Poly fromMonomial(const Monomial& m, const Rational& c = 1);

  bool isZero() const { return terms.empty(); }
  /** Adds c to the coefficient of m, erasing the term when it cancels. */
  void addTerm(const Monomial& m, const Rational& c);

  bool operator==(const Poly& o) const { return terms == o.terms; }
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Rational& c, const Poly& a);

/** Homological degree of a monomial (sum of factor hdegs with exponents). */
int hdegOf(const GeneratorSet& g, const Monomial& m);

/** Weight of a monomial (sum of factor weights with exponents). */
int weightOf(const GeneratorSet& g, const Monomial& m);

/** Total degree of the level-0 part of a monomial. */
int level0Degree(const GeneratorSet& g, const Monomial& m);

/** Common hdeg of all terms, nullopt when mixed; 0 for the zero poly. */
std::optional<int> hdegOf(const GeneratorSet& g, const Poly& p);

/** Common weight of all terms, nullopt when mixed; 0 for the zero poly. */
std::optional<int> weightOf(const GeneratorSet& g, const Poly& p);

/**
 * Product of two monomials with the Koszul sign from sorting odd factors
 * past each other.  Returns nullopt when an odd generator would square.
 */
std::optional<std::pair<Monomial, int>> mulMonomial(const GeneratorSet& g,
                                                    const Monomial& a,
                                                    const Monomial& b);

/** Graded-commutative product. */
Poly mul(const GeneratorSet& g, const Poly& a, const Poly& b);

/** p raised to a non-negative integer power. */
Poly power(const GeneratorSet& g, const Poly& p, int n);

/**
 * Left partial derivative with respect to generator v, extended by the
 * graded Leibniz rule d(ab) = d(a) b + (-1)^{|v||a|} a d(b).
 */
Poly derive(const GeneratorSet& g, const Poly& p, int v);

/**
 * Applies the derivation with the given values on generators (missing ids
 * act as zero) and homological degree thetaHdeg to p, via the same graded
 * Leibniz rule.  This is the workhorse for both the resolvent differential
 * and tangent elements.
 */
Poly applyDerivationValues(const GeneratorSet& g,
                           const std::map<int, Poly>& values, int thetaHdeg,
                           const Poly& p);

/**
 * Algebra-map substitution: each assigned generator is replaced by its
 * value, unassigned generators map to themselves.
 *
 * In strict mode every value must be hdeg-homogeneous of the generator's
 * degree.  In relaxed mode an odd generator's value must still have purely
 * odd components (otherwise its square would not vanish); this throws
 * OddSquareViolation.
 *
 * @param g      generator table for both source and target terms.
 * @param p      polynomial to rewrite.
 * @param values generator id -> replacement value.
 * @param strict enforce exact degree match on every assignment.
 */
Poly substitute(const GeneratorSet& g, const Poly& p,
                const std::map<int, Poly>& values, bool strict);

/** Terms of the given weight. */
Poly weightComponent(const GeneratorSet& g, const Poly& p, int w);

/** Terms whose level-0 total degree is at most n. */
Poly jetTruncate(const GeneratorSet& g, const Poly& p, int n);

/**
 * All monomials in the listed generators with the exact homological degree
 * and weight, in canonical term order.  Weights are positive, so the list
 * is finite for every (hdeg, weight) pair.
 */
std::vector<Monomial> monomialBasis(const GeneratorSet& g, int hdeg,
                                    int weight, const std::vector<int>& ids);

std::string monomialToString(const GeneratorSet& g, const Monomial& m);
std::string polyToString(const GeneratorSet& g, const Poly& p);

}  // namespace versal

#endif  // VERSAL_POLY_HPP
