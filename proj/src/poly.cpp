#include "versal/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "versal/errors.hpp"

namespace versal {

Monomial Monomial::var(int id, int exp) {
  Monomial m;
  if (exp < 0) throw std::invalid_argument("negative exponent");
  if (exp > 0) m.factors.emplace_back(id, exp);
  return m;
}

int Monomial::totalDegree() const {
  int d = 0;
  for (const auto& [id, e] : factors) d += e;
  return d;
}

int Monomial::exponentOf(int id) const {
  for (const auto& [v, e] : factors)
    if (v == id) return e;
  return 0;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.totalDegree(), db = b.totalDegree();
  if (da != db) return da > db;
  std::size_t n = std::min(a.factors.size(), b.factors.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.factors[i].first != b.factors[i].first)
      return a.factors[i].first < b.factors[i].first;
    if (a.factors[i].second != b.factors[i].second)
      return a.factors[i].second > b.factors[i].second;
  }
  // Equal prefixes with equal total degree force equality.
  return false;
}

Poly Poly::constant(const Rational& c) {
  Poly p;
  if (c != 0) p.terms[Monomial::one()] = c;
  return p;
}

Poly Poly::fromMonomial(const Monomial& m, const Rational& c) {
  Poly p;
  if (c != 0) p.terms[m] = c;
  return p;
}

void Poly::addTerm(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b.terms) out.addTerm(m, c);
  return out;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b.terms) out.addTerm(m, -c);
  return out;
}

Poly operator-(const Poly& a) {
  Poly out;
  for (const auto& [m, c] : a.terms) out.terms[m] = -c;
  return out;
}

Poly operator*(const Rational& c, const Poly& a) {
  Poly out;
  if (c == 0) return out;
  for (const auto& [m, k] : a.terms) out.terms[m] = c * k;
  return out;
}

int hdegOf(const GeneratorSet& g, const Monomial& m) {
  int h = 0;
  for (const auto& [id, e] : m.factors) h += e * g[id].hdeg;
  return h;
}

int weightOf(const GeneratorSet& g, const Monomial& m) {
  int w = 0;
  for (const auto& [id, e] : m.factors) w += e * g[id].weight;
  return w;
}

int level0Degree(const GeneratorSet& g, const Monomial& m) {
  int d = 0;
  for (const auto& [id, e] : m.factors)
    if (g[id].level == 0) d += e;
  return d;
}

std::optional<int> hdegOf(const GeneratorSet& g, const Poly& p) {
  if (p.isZero()) return 0;
  int h = hdegOf(g, p.terms.begin()->first);
  for (const auto& [m, c] : p.terms)
    if (hdegOf(g, m) != h) return std::nullopt;
  return h;
}

std::optional<int> weightOf(const GeneratorSet& g, const Poly& p) {
  if (p.isZero()) return 0;
  int w = weightOf(g, p.terms.begin()->first);
  for (const auto& [m, c] : p.terms)
    if (weightOf(g, m) != w) return std::nullopt;
  return w;
}

std::optional<std::pair<Monomial, int>> mulMonomial(const GeneratorSet& g,
                                                    const Monomial& a,
                                                    const Monomial& b) {
  // Odd factors of a still to the right of the merge point, for the Koszul
  // sign picked up when a factor of b crosses them.
  std::vector<int> oddSuffix(a.factors.size() + 1, 0);
  for (int i = static_cast<int>(a.factors.size()) - 1; i >= 0; --i)
    oddSuffix[i] = oddSuffix[i + 1] + (g.isOdd(a.factors[i].first) ? 1 : 0);

  Monomial out;
  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    int ida = a.factors[i].first, idb = b.factors[j].first;
    if (ida < idb) {
      out.factors.push_back(a.factors[i++]);
    } else if (ida > idb) {
      if (g.isOdd(idb) && (oddSuffix[i] % 2) != 0) sign = -sign;
      out.factors.push_back(b.factors[j++]);
    } else {
      if (g.isOdd(ida)) return std::nullopt;  // odd square vanishes
      out.factors.emplace_back(ida, a.factors[i].second + b.factors[j].second);
      ++i;
      ++j;
    }
  }
  while (i < a.factors.size()) out.factors.push_back(a.factors[i++]);
  while (j < b.factors.size()) out.factors.push_back(b.factors[j++]);
  return std::make_pair(out, sign);
}

Poly mul(const GeneratorSet& g, const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms)
      if (auto prod = mulMonomial(g, ma, mb))
        out.addTerm(prod->first, prod->second * ca * cb);
  return out;
}

Poly power(const GeneratorSet& g, const Poly& p, int n) {
  if (n < 0) throw std::invalid_argument("negative power");
  Poly out = Poly::constant(1);
  for (int i = 0; i < n; ++i) out = mul(g, out, p);
  return out;
}

Poly applyDerivationValues(const GeneratorSet& g,
                           const std::map<int, Poly>& values, int thetaHdeg,
                           const Poly& p) {
  bool thetaOdd = isOddDegree(thetaHdeg);
  Poly out;
  for (const auto& [m, c] : p.terms) {
    int prefixOdd = 0;  // odd factors strictly left of the current one
    for (std::size_t k = 0; k < m.factors.size(); ++k) {
      auto [v, n] = m.factors[k];
      auto it = values.find(v);
      if (it != values.end() && !it->second.isZero()) {
        Monomial left, right;
        left.factors.assign(m.factors.begin(), m.factors.begin() + k);
        if (n > 1) left.factors.emplace_back(v, n - 1);  // v even here
        right.factors.assign(m.factors.begin() + k + 1, m.factors.end());
        int sign = (thetaOdd && prefixOdd % 2 != 0) ? -1 : 1;
        Poly term = mul(g, mul(g, Poly::fromMonomial(left), it->second),
                        Poly::fromMonomial(right));
        out = out + (c * n * sign) * term;
      }
      if (g.isOdd(v)) ++prefixOdd;
    }
  }
  return out;
}

Poly derive(const GeneratorSet& g, const Poly& p, int v) {
  std::map<int, Poly> values;
  values[v] = Poly::constant(1);
  return applyDerivationValues(g, values, g[v].hdeg, p);
}

Poly substitute(const GeneratorSet& g, const Poly& p,
                const std::map<int, Poly>& values, bool strict) {
  for (const auto& [v, val] : values) {
    if (val.isZero()) continue;
    if (strict) {
      std::optional<int> h = hdegOf(g, val);
      if (!h || *h != g[v].hdeg)
        throw std::invalid_argument("substitution for '" + g[v].name +
                                    "' is not homogeneous of its degree");
    } else if (g.isOdd(v)) {
      for (const auto& [m, c] : val.terms)
        if (!isOddDegree(hdegOf(g, m)))
          throw OddSquareViolation("even term substituted for odd '" +
                                   g[v].name + "'");
    }
  }
  Poly out;
  for (const auto& [m, c] : p.terms) {
    Poly acc = Poly::constant(c);
    for (const auto& [v, n] : m.factors) {
      auto it = values.find(v);
      Poly val =
          it != values.end() ? it->second : Poly::fromMonomial(Monomial::var(v));
      acc = mul(g, acc, power(g, val, n));
    }
    out = out + acc;
  }
  return out;
}

Poly weightComponent(const GeneratorSet& g, const Poly& p, int w) {
  Poly out;
  for (const auto& [m, c] : p.terms)
    if (weightOf(g, m) == w) out.terms[m] = c;
  return out;
}

Poly jetTruncate(const GeneratorSet& g, const Poly& p, int n) {
  Poly out;
  for (const auto& [m, c] : p.terms)
    if (level0Degree(g, m) <= n) out.terms[m] = c;
  return out;
}

namespace {

void enumerate(const GeneratorSet& g, const std::vector<int>& ids,
               std::size_t i, int hAcc, int wAcc, int hdeg, int weight,
               Monomial& cur, std::vector<Monomial>& out) {
  if (wAcc > weight || hAcc < hdeg) return;  // hdegs are never positive
  if (i == ids.size()) {
    if (hAcc == hdeg && wAcc == weight) out.push_back(cur);
    return;
  }
  int v = ids[i];
  int maxExp = g.isOdd(v) ? 1 : (weight - wAcc) / g[v].weight;
  for (int e = 0; e <= maxExp; ++e) {
    if (e > 0) cur.factors.emplace_back(v, e);
    enumerate(g, ids, i + 1, hAcc + e * g[v].hdeg, wAcc + e * g[v].weight,
              hdeg, weight, cur, out);
    if (e > 0) cur.factors.pop_back();
  }
}

}  // namespace

std::vector<Monomial> monomialBasis(const GeneratorSet& g, int hdeg,
                                    int weight, const std::vector<int>& ids) {
  std::vector<Monomial> out;
  if (weight < 0 || hdeg > 0) return out;
  if (weight == 0) {
    if (hdeg == 0) out.push_back(Monomial::one());
    return out;
  }
  Monomial cur;
  enumerate(g, ids, 0, 0, 0, hdeg, weight, cur, out);
  std::sort(out.begin(), out.end(), MonomialOrder());
  return out;
}

std::string monomialToString(const GeneratorSet& g, const Monomial& m) {
  if (m.isOne()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [id, e] : m.factors) {
    if (!first) out << "*";
    out << g[id].name;
    if (e > 1) out << "^" << e;
    first = false;
  }
  return out.str();
}

std::string polyToString(const GeneratorSet& g, const Poly& p) {
  if (p.isZero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p.terms) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    if (m.isOne()) {
      out << rationalToString(a);
    } else {
      if (a != 1) out << rationalToString(a) << "*";
      out << monomialToString(g, m);
    }
    first = false;
  }
  return out.str();
}

}  // namespace versal
