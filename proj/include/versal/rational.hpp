#ifndef VERSAL_RATIONAL_HPP
#define VERSAL_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace versal {

typedef boost::multiprecision::mpq_rational Rational;

/**
 * Render a rational as "p" or "p/q" with q > 0 and gcd(p, q) = 1.
 */
std::string rationalToString(const Rational& r);

/**
 * Parse "p" or "p/q" (optional leading minus, q > 0 after canonicalization).
 * Throws std::invalid_argument on malformed input or zero denominator.
 */
Rational rationalFromString(const std::string& s);

}  // namespace versal

#endif  // VERSAL_RATIONAL_HPP
