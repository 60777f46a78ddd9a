#include "versal/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace versal {

std::string rationalToString(const Rational& r) {
  std::ostringstream out;
  out << r;  // mpq canonical form: "p" or "p/q" with q > 1
  return out.str();
}

Rational rationalFromString(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::string::size_type i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("bare sign: '" + s + "'");
  bool seenSlash = false;
  for (std::string::size_type k = i; k < s.size(); ++k) {
    if (s[k] == '/') {
      if (seenSlash || k == i || k + 1 == s.size())
        throw std::invalid_argument("malformed rational: '" + s + "'");
      seenSlash = true;
    } else if (s[k] < '0' || s[k] > '9') {
      throw std::invalid_argument("malformed rational: '" + s + "'");
    }
  }
  if (seenSlash) {
    std::string::size_type slash = s.find('/');
    Rational den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    return Rational(s.substr(0, slash)) / den;
  }
  return Rational(s);
}

}  // namespace versal
