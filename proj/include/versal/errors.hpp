#ifndef VERSAL_ERRORS_HPP
#define VERSAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace versal {

/** Base class for all domain errors raised by the engine. */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/** Raised when a substitution would square an odd generator. */
class OddSquareViolation : public Error {
 public:
  explicit OddSquareViolation(const std::string& msg) : Error(msg) {}
};

/** Raised when an ideal generator mixes weights. */
class NonHomogeneousInput : public Error {
 public:
  explicit NonHomogeneousInput(const std::string& msg) : Error(msg) {}
};

/** Raised when an ideal generator has a term of total degree below two. */
class LinearTermInGenerator : public Error {
 public:
  explicit LinearTermInGenerator(const std::string& msg) : Error(msg) {}
};

/** Raised when a computation needs weights beyond the certified bound. */
class WeightBoundTooSmall : public Error {
 public:
  explicit WeightBoundTooSmall(const std::string& msg) : Error(msg) {}
};

/** Raised when a lifting defect lands outside the scanned weight band. */
class WeightBandExceeded : public Error {
 public:
  explicit WeightBandExceeded(const std::string& msg) : Error(msg) {}
};

/** Raised when a homotopy split is requested for a non-cocycle. */
class NotACocycle : public Error {
 public:
  explicit NotACocycle(const std::string& msg) : Error(msg) {}
};

/** Raised when a Taylor-coefficient family fails the chain-map condition. */
class NotAMorphism : public Error {
 public:
  explicit NotAMorphism(const std::string& msg) : Error(msg) {}
};

/** Raised when a claimed subspace is not contained in its ambient space. */
class NotSubspace : public Error {
 public:
  explicit NotSubspace(const std::string& msg) : Error(msg) {}
};

/** Input text failed to tokenize or parse; carries a 1-based position. */
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int col)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(col) + ")"),
        line(line),
        col(col) {}
  int line;
  int col;
};

/** Input parsed but violates a semantic requirement. */
class SemanticError : public Error {
 public:
  explicit SemanticError(const std::string& msg) : Error(msg) {}
};

}  // namespace versal

#endif  // VERSAL_ERRORS_HPP
