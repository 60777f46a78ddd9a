#ifndef VERSAL_PARSER_HPP
#define VERSAL_PARSER_HPP

#include <optional>
#include <string>

#include "versal/resolvent.hpp"

namespace versal {

/** Parsed problem description plus any options given inline. */
struct ParsedInput {
  InputIdeal ideal;
  std::optional<int> depth;
  std::optional<int> order;
  std::optional<int> weightBound;
};

/**
 * Parses a problem description of the form
 *
 *   ring x:2 y:3 ; ideal x^3 + y^2 ; options depth=3 order=5 weights=9
 *
 * The ring section declares weighted variables, the ideal section lists the
 * generators as polynomials in those variables, and the optional options
 * section sets depth, order and weights (the weight bound).  Sections are
 * separated by semicolons; a trailing semicolon is allowed.
 *
 * Polynomials use explicit operators: rational or integer coefficients,
 * "*" for products, "^" for powers, and parentheses.  Adjacency is never
 * multiplication.
 *
 * Variable names starting with e, r, q or u followed by a digit are
 * reserved for generated resolvent generators and rejected, as are the
 * three section keywords.
 *
 * @throws SyntaxError   on malformed text, with a 1-based position.
 * @throws SemanticError on unknown variables, duplicate or reserved names,
 *                       unknown options and empty sections.
 */
ParsedInput parseInput(const std::string& text);

/**
 * Parses a single polynomial over an existing generator table, using the
 * same expression grammar.  Products respect the graded-commutative signs,
 * so strings printed from any resolvent element parse back exactly.
 */
Poly parsePoly(const GeneratorSet& gens, const std::string& text);

}  // namespace versal

#endif  // VERSAL_PARSER_HPP
