#include "versal/kuranishi.hpp"

#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "versal/errors.hpp"

namespace versal {

int tOrder(const TMonomial& a) {
  int s = 0;
  for (int e : a) s += e;
  return s;
}

int tWeight(const std::vector<Parameter>& params, const TMonomial& a) {
  int s = 0;
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    s += a[i] * params.at(i).weight;
  return s;
}

TMonomial tUnit(int paramCount, int index) {
  TMonomial a(paramCount, 0);
  a.at(index) = 1;
  return a;
}

TMonomial tProduct(const TMonomial& a, const TMonomial& b) {
  if (a.size() != b.size())
    throw std::logic_error("parameter monomials of different lengths");
  TMonomial c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

std::string tMonomialToString(const std::vector<Parameter>& params,
                              const TMonomial& a) {
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < static_cast<int>(a.size()); ++i) {
    if (a[i] == 0) continue;
    if (!first) out << "*";
    out << params.at(i).name;
    if (a[i] > 1) out << "^" << a[i];
    first = false;
  }
  if (first) return "1";
  return out.str();
}

bool TMonomialOrder::operator()(const TMonomial& a, const TMonomial& b) const {
  int oa = tOrder(a);
  int ob = tOrder(b);
  if (oa != ob) return oa < ob;
  size_t n = std::max(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int ea = i < a.size() ? a[i] : 0;
    int eb = i < b.size() ? b[i] : 0;
    if (ea != eb) return ea > eb;
  }
  return false;
}

std::string tSeriesToString(const std::vector<Parameter>& params,
                            const TSeries& s) {
  if (s.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : s) {
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
    std::string ms = tMonomialToString(params, m);
    if (ms == "1") {
      out << rationalToString(a);
    } else {
      if (a != 1) out << rationalToString(a) << "*";
      out << ms;
    }
    first = false;
  }
  return out.str();
}

bool KuranishiMap::isZero() const {
  for (const TSeries& s : components)
    if (!s.empty()) return false;
  return true;
}

Perturbation firstOrder(const std::vector<Parameter>& params,
                        const TangentCohomology& t1) {
  auto flat = t1.flatten();
  if (flat.size() != params.size())
    throw std::logic_error("parameter count does not match the class count");
  Perturbation d;
  d.paramCount = static_cast<int>(params.size());
  for (int i = 0; i < d.paramCount; ++i) {
    if (params[i].weight != -flat[i].first)
      throw std::logic_error("parameter weight does not match its class");
    d.terms[tUnit(d.paramCount, i)] = flat[i].second;
  }
  return d;
}

namespace {

// All exponent vectors of the given length and total order, listed in the
// canonical parameter-monomial order.
void collectOrder(int len, int rem, int pos, TMonomial& cur,
                  std::vector<TMonomial>& out) {
  if (pos == len - 1) {
    cur[pos] = rem;
    out.push_back(cur);
    return;
  }
  for (int e = rem; e >= 0; --e) {
    cur[pos] = e;
    collectOrder(len, rem - e, pos + 1, cur, out);
  }
}

std::vector<TMonomial> monomialsOfOrder(int len, int order) {
  std::vector<TMonomial> out;
  if (len == 0) {
    if (order == 0) out.push_back(TMonomial{});
    return out;
  }
  TMonomial cur(len, 0);
  collectOrder(len, order, 0, cur, out);
  return out;
}

const HomotopyData& cachedHomotopy(LiftState& state, int weight) {
  auto it = state.homotopyCache.find(weight);
  if (it == state.homotopyCache.end())
    it = state.homotopyCache.emplace(weight, homotopyData(*state.r, 2, weight))
             .first;
  return it->second;
}

// Flattened degree-2 class layout: weight -> (first global index, count).
std::map<int, std::pair<int, int>> classOffsets(
    const std::vector<std::pair<int, TangentElement>>& t2flat) {
  std::map<int, std::pair<int, int>> off;
  for (int i = 0; i < static_cast<int>(t2flat.size()); ++i) {
    auto it = off.find(t2flat[i].first);
    if (it == off.end())
      off.emplace(t2flat[i].first, std::make_pair(i, 1));
    else
      it->second.second += 1;
  }
  return off;
}

}  // namespace

bool liftStep(LiftState& state, int n) {
  const Resolvent& r = *state.r;
  const int target = n + 1;
  const int p = state.delta.paramCount;
  const int numClasses = static_cast<int>(state.t2flat.size());

  // Quadratic defect: K_a = 1/2 sum over ordered pairs b + c = a of
  // [delta_b, delta_c].  Every coefficient is a degree-2 derivation of
  // weight minus the t-weight of its slot.
  const Rational half = Rational(1) / 2;
  std::map<TMonomial, TangentElement, TMonomialOrder> resid;
  for (const auto& [b, tb] : state.delta.terms)
    for (const auto& [c, tc] : state.delta.terms) {
      if (tOrder(b) + tOrder(c) != target) continue;
      TangentElement br = bracket(r, tb, tc);
      if (br.isZero()) continue;
      TMonomial a = tProduct(b, c);
      auto it = resid.find(a);
      if (it == resid.end())
        resid.emplace(a, half * br);
      else
        it->second = it->second + half * br;
    }

  // Subtract the part of the correction already pinned down by multipliers
  // frozen at earlier orders.
  for (const auto& [key, psi] : state.multipliers) {
    const auto& [l, g] = key;
    if (psi.isZero()) continue;
    for (const auto& [b, coef] : state.kuranishi.components[l]) {
      if (tOrder(b) + tOrder(g) != target) continue;
      TMonomial a = tProduct(b, g);
      TangentElement term = coef * psi;
      auto it = resid.find(a);
      if (it == resid.end())
        resid.emplace(a, Rational(-1) * term);
      else
        it->second = it->second - term;
    }
  }

  // New multiplier slots: one block per (class l, parameter monomial g) with
  // order(g) = target - order(b) for some recorded coefficient b of the
  // class series, restricted to nonempty degree-2 slices.  Orders of g are
  // at least 1, so only strictly earlier series coefficients feed in.
  struct NewCol {
    int l;
    TMonomial gamma;
    DerivationBasis basis;
    int offset;
  };
  std::vector<NewCol> newCols;
  int totalCols = 0;
  for (int l = 0; l < numClasses; ++l) {
    std::set<int> betaOrders;
    for (const auto& [b, coef] : state.kuranishi.components[l])
      betaOrders.insert(tOrder(b));
    for (int bo : betaOrders) {
      int go = target - bo;
      if (go < 1) continue;
      for (TMonomial& g : monomialsOfOrder(p, go)) {
        auto key = std::make_pair(l, g);
        if (state.multipliers.count(key)) continue;
        int wpsi = state.t2flat[l].first - tWeight(state.params, g);
        DerivationBasis db = derivationBasis(r, 2, wpsi);
        if (db.dim() == 0) continue;
        newCols.push_back(NewCol{l, g, std::move(db), totalCols});
        totalCols += newCols.back().basis.dim();
      }
    }
  }

  // Equation slots: every order-(target) monomial carrying a residual or
  // touched by a candidate block.
  std::set<TMonomial, TMonomialOrder> slotSet;
  for (const auto& [a, v] : resid)
    if (!v.isZero()) slotSet.insert(a);
  for (const NewCol& nc : newCols)
    for (const auto& [b, coef] : state.kuranishi.components[nc.l])
      if (tOrder(b) + tOrder(nc.gamma) == target)
        slotSet.insert(tProduct(b, nc.gamma));

  // Cocycle system: for every slot, the degree-3 coordinates of
  // [s, residual - correction] must vanish.  Multipliers are shared across
  // slots, so the solve is joint.
  struct SlotRows {
    TMonomial alpha;
    DerivationBasis d3;
    int offset;
  };
  std::vector<SlotRows> slots;
  int totalRows = 0;
  for (const TMonomial& a : slotSet) {
    int w = -tWeight(state.params, a);
    slots.push_back(SlotRows{a, derivationBasis(r, 3, w), totalRows});
    totalRows += slots.back().d3.dim();
  }

  QMatrix M = QMatrix::Zero(totalRows, totalCols);
  QVector rhs = QVector::Zero(totalRows);
  for (const SlotRows& sr : slots) {
    if (sr.d3.dim() == 0) continue;
    auto it = resid.find(sr.alpha);
    if (it != resid.end() && !it->second.isZero())
      rhs.segment(sr.offset, sr.d3.dim()) =
          sr.d3.toVector(differential(r, it->second));
  }
  for (const NewCol& nc : newCols) {
    for (int k = 0; k < nc.basis.dim(); ++k) {
      const auto& [gid, mono] = nc.basis.entries[k];
      TangentElement elem = makeTangent(
          r, {{gid, Poly::fromMonomial(mono)}}, 2, nc.basis.weight);
      TangentElement dElem = differential(r, elem);
      if (dElem.isZero()) continue;
      for (const auto& [b, coef] : state.kuranishi.components[nc.l]) {
        if (tOrder(b) + tOrder(nc.gamma) != target) continue;
        TMonomial a = tProduct(b, nc.gamma);
        for (const SlotRows& sr : slots) {
          if (!(sr.alpha == a)) continue;
          if (sr.d3.dim() > 0)
            M.block(sr.offset, nc.offset + k, sr.d3.dim(), 1) +=
                coef * sr.d3.toVector(dElem);
          break;
        }
      }
    }
  }

  auto sol = solve(M, rhs);
  if (!sol) {
    std::ostringstream msg;
    msg << "no correction in the obstruction ideal closes order " << target
        << "; the certified degree-2 band is too narrow for this input";
    throw Error(msg.str());
  }

  bool content = false;

  // Freeze the solved multipliers, zeros included: this order's equations
  // depend on these exact values, so later orders may not revisit them.
  for (const NewCol& nc : newCols) {
    TangentElement psi =
        nc.basis.fromVector(sol->segment(nc.offset, nc.basis.dim()));
    if (!psi.isZero()) content = true;
    state.multipliers.emplace(std::make_pair(nc.l, nc.gamma), psi);
  }

  // Apply the correction, then split each corrected slot into a projection
  // (new Kuranishi coefficients) and a homotopy preimage (new delta term).
  for (const NewCol& nc : newCols) {
    TangentElement psi = state.multipliers.at(std::make_pair(nc.l, nc.gamma));
    if (psi.isZero()) continue;
    for (const auto& [b, coef] : state.kuranishi.components[nc.l]) {
      if (tOrder(b) + tOrder(nc.gamma) != target) continue;
      TMonomial a = tProduct(b, nc.gamma);
      TangentElement term = coef * psi;
      auto it = resid.find(a);
      if (it == resid.end())
        resid.emplace(a, Rational(-1) * term);
      else
        it->second = it->second - term;
    }
  }

  auto offsets = classOffsets(state.t2flat);
  for (const SlotRows& sr : slots) {
    auto it = resid.find(sr.alpha);
    if (it == resid.end() || it->second.isZero()) continue;
    const TangentElement& v = it->second;
    int w = -tWeight(state.params, sr.alpha);

    const HomotopyData& hd = cachedHomotopy(state, w);
    HomotopyData::Split sp = hd.split(v);

    auto oit = offsets.find(w);
    if (oit == offsets.end()) {
      for (const Rational& c : sp.projection)
        if (c != 0)
          throw WeightBandExceeded(
              "defect projects onto a degree-2 class outside the certified "
              "band");
    } else {
      if (static_cast<int>(sp.projection.size()) != oit->second.second)
        throw std::logic_error("class count mismatch at a defect weight");
      for (int i = 0; i < oit->second.second; ++i) {
        if (sp.projection[i] == 0) continue;
        state.kuranishi.components[oit->second.first + i][sr.alpha] =
            sp.projection[i];
        content = true;
      }
    }

    if (!sp.h.isZero()) {
      state.delta.terms[sr.alpha] = Rational(-1) * sp.h;
      content = true;
    }

    LiftTrace tr;
    tr.order = target;
    tr.alpha = sr.alpha;
    tr.defect = v;
    tr.projection.assign(state.t2flat.size(), Rational(0));
    if (oit != offsets.end())
      for (int i = 0; i < oit->second.second; ++i)
        tr.projection[oit->second.first + i] = sp.projection[i];
    tr.h = sp.h;
    state.trace.push_back(std::move(tr));
  }

  if (content) state.lastContentOrder = target;
  return content;
}

std::vector<TPoly> familyFrom(const Resolvent& r, const Perturbation& delta) {
  std::vector<TPoly> out;
  const int p = delta.paramCount;
  for (int id : r.gens.idsAtLevel(1)) {
    TPoly f;
    f.coeffs[TMonomial(p, 0)] = r.diff.at(id);
    for (const auto& [a, theta] : delta.terms) {
      auto it = theta.values.find(id);
      if (it == theta.values.end() || it->second.isZero()) continue;
      f.coeffs[a] = it->second;
    }
    out.push_back(std::move(f));
  }
  return out;
}

DeformationResult semiuniversal(const InputIdeal& ideal, int depth, int order,
                                int weightBound) {
  if (order < 1) throw SemanticError("order must be at least 1");

  DeformationResult out;
  out.resolvent = buildResolvent(ideal, depth, weightBound);
  const Resolvent& r = out.resolvent;
  out.order = order;

  out.tangentBand = tangentScanBand(r, weightBound);
  out.t1 = tangentCohomology(r, 1, out.tangentBand.first,
                             out.tangentBand.second);
  out.t2 = tangentCohomology(r, 2, out.tangentBand.first,
                             out.tangentBand.second);

  auto flat1 = out.t1.flatten();
  for (int i = 0; i < static_cast<int>(flat1.size()); ++i)
    out.parameters.push_back(
        Parameter{"t" + std::to_string(i), -flat1[i].first});

  auto flat2 = out.t2.flatten();
  for (const auto& [w, el] : flat2) out.kuranishi.classWeights.push_back(w);
  out.kuranishi.components.resize(flat2.size());

  LiftState st;
  st.r = &r;
  st.params = out.parameters;
  st.t2flat = flat2;
  st.delta = firstOrder(out.parameters, out.t1);
  st.kuranishi = out.kuranishi;
  st.lastContentOrder = out.parameters.empty() ? 0 : 1;
  for (int n = 1; n < order; ++n) liftStep(st, n);

  out.delta = st.delta;
  out.kuranishi = st.kuranishi;
  out.trace = st.trace;

  // Termination: once delta, the series and the multipliers are supported
  // in orders <= m, every slot of order m+1 .. 2m being empty forces all
  // higher orders to vanish identically.
  int m = st.lastContentOrder;
  if (order >= 2 * m) {
    out.stabilizedAt = m;
  } else {
    std::ostringstream msg;
    msg << "new terms appear at order " << m << " and orders " << (m + 1)
        << ".." << (2 * m)
        << " were not all checked; raise the order for a termination "
           "certificate";
    out.caveats.push_back(msg.str());
  }
  if (out.tangentBand.second < weightBound) {
    std::ostringstream msg;
    msg << "tangent cohomology certified for weights " << out.tangentBand.first
        << ".." << out.tangentBand.second
        << " only; scanning up to the requested bound " << weightBound
        << " exceeds the workload budget";
    out.caveats.push_back(msg.str());
  }

  out.family = familyFrom(r, out.delta);
  return out;
}

CheckList verifyFlatness(const Resolvent& r,
                         const std::vector<Parameter>& params,
                         const Perturbation& delta,
                         const KuranishiMap& kuranishi, int n) {
  CheckList out;
  const int p = static_cast<int>(params.size());

  // The stored data may come from the outside, so grade-check it before
  // trusting any coordinate expansion.
  bool graded = true;
  std::string gradedDetail;
  for (const auto& [a, theta] : delta.terms) {
    if (static_cast<int>(a.size()) != p || tOrder(a) < 1 || theta.hdeg != 1 ||
        theta.weight != -tWeight(params, a)) {
      graded = false;
      gradedDetail = "bad grading at " + tMonomialToString(params, a);
      break;
    }
    for (const auto& [id, val] : theta.values) {
      if (id < 0 || id >= r.gens.size()) {
        graded = false;
        gradedDetail = "unknown generator id in a delta value";
        break;
      }
      auto h = hdegOf(r.gens, val);
      auto w = weightOf(r.gens, val);
      if (!val.isZero() && (!h || !w || *h != r.gens[id].hdeg + 1 ||
                            *w != r.gens[id].weight + theta.weight)) {
        graded = false;
        gradedDetail =
            "value on " + r.gens[id].name + " breaks the grading at " +
            tMonomialToString(params, a);
        break;
      }
    }
    if (!graded) break;
  }
  out.add("perturbation_graded", graded, gradedDetail);

  bool homogeneous =
      kuranishi.components.size() == kuranishi.classWeights.size();
  std::string homDetail =
      homogeneous ? "" : "component and weight counts differ";
  for (int l = 0; homogeneous && l < static_cast<int>(kuranishi.components.size()); ++l)
    for (const auto& [b, coef] : kuranishi.components[l]) {
      if (static_cast<int>(b.size()) != p ||
          tWeight(params, b) != -kuranishi.classWeights[l] || tOrder(b) < 2) {
        homogeneous = false;
        homDetail = "component " + std::to_string(l) +
                    " has an off-weight term " + tMonomialToString(params, b);
        break;
      }
    }
  out.add("kuranishi_homogeneous", homogeneous, homDetail);
  if (!graded || !homogeneous) return out;

  const int numClasses = static_cast<int>(kuranishi.components.size());

  for (int id : r.gens.allIds()) {
    const Generator& gen = r.gens[id];
    // Degree-2 derivations vanish on generators of level 0 and 1 for
    // grading reasons, so only deeper generators carry equations.
    if (gen.hdeg > -2) continue;

    // P = (s + delta)(x), then D = (s + delta)(P), truncated past order n.
    std::map<TMonomial, Poly, TMonomialOrder> P;
    {
      auto it = r.diff.find(id);
      if (it != r.diff.end() && !it->second.isZero())
        P[TMonomial(p, 0)] = it->second;
    }
    for (const auto& [a, theta] : delta.terms) {
      auto it = theta.values.find(id);
      if (it != theta.values.end() && !it->second.isZero()) P[a] = it->second;
    }

    std::map<TMonomial, Poly, TMonomialOrder> D;
    auto addD = [&](const TMonomial& a, const Poly& q) {
      if (q.isZero()) return;
      auto it = D.find(a);
      if (it == D.end()) {
        D.emplace(a, q);
      } else {
        it->second = it->second + q;
        if (it->second.isZero()) D.erase(it);
      }
    };
    for (const auto& [b, poly] : P) {
      addD(b, applyDifferential(r, poly));
      for (const auto& [a, theta] : delta.terms) {
        if (tOrder(a) + tOrder(b) > n) continue;
        addD(tProduct(a, b), apply(r, theta, poly));
      }
    }

    // Membership of D in the ideal generated by the Kuranishi components:
    // D = sum_l G_l * H_l with H_l a series of ring elements.  Coefficients
    // H_{l, g} are shared across the slots b + g, so the system is joint.
    // Blocks are identity-shaped: a basis monomial of H_{l, g} lands on the
    // same monomial of slot b + g, scaled by G_l[b].
    struct HCol {
      int l;
      TMonomial gamma;
      std::vector<Monomial> basis;
      int offset;
    };
    std::vector<HCol> cols;
    std::set<std::pair<int, TMonomial>> kept;
    std::set<TMonomial, TMonomialOrder> rows;
    for (const auto& [a, q] : D) rows.insert(a);

    bool changed = true;
    while (changed) {
      changed = false;
      for (int l = 0; l < numClasses; ++l) {
        if (kuranishi.components[l].empty()) continue;
        std::set<int> betaOrders;
        for (const auto& [b, coef] : kuranishi.components[l])
          betaOrders.insert(tOrder(b));
        int minBeta = *betaOrders.begin();
        for (int go = 0; go + minBeta <= n; ++go) {
          for (TMonomial& g : monomialsOfOrder(p, go)) {
            auto key = std::make_pair(l, g);
            if (kept.count(key)) continue;
            bool touches = false;
            for (const auto& [b, coef] : kuranishi.components[l]) {
              if (tOrder(b) + go > n) continue;
              if (rows.count(tProduct(b, g))) {
                touches = true;
                break;
              }
            }
            if (!touches) continue;
            kept.insert(key);
            changed = true;
            for (const auto& [b, coef] : kuranishi.components[l]) {
              if (tOrder(b) + go > n) continue;
              rows.insert(tProduct(b, g));
            }
          }
        }
      }
    }

    int totalCols = 0;
    for (const auto& [l, g] : kept) {
      int wH = gen.weight + kuranishi.classWeights[l] - tWeight(params, g);
      std::vector<Monomial> basis =
          monomialBasis(r.gens, gen.hdeg + 2, wH, r.gens.allIds());
      if (basis.empty()) continue;
      cols.push_back(HCol{l, g, std::move(basis), totalCols});
      totalCols += static_cast<int>(cols.back().basis.size());
    }

    struct RowBlock {
      TMonomial alpha;
      std::vector<Monomial> basis;
      int offset;
    };
    std::vector<RowBlock> rowBlocks;
    int totalRows = 0;
    for (const TMonomial& a : rows) {
      std::vector<Monomial> basis = monomialBasis(
          r.gens, gen.hdeg + 2, gen.weight - tWeight(params, a),
          r.gens.allIds());
      rowBlocks.push_back(RowBlock{a, std::move(basis), totalRows});
      totalRows += static_cast<int>(rowBlocks.back().basis.size());
    }

    QMatrix M = QMatrix::Zero(totalRows, totalCols);
    QVector rhs = QVector::Zero(totalRows);
    std::string witness;
    for (const RowBlock& rb : rowBlocks) {
      auto it = D.find(rb.alpha);
      if (it == D.end()) continue;
      if (rb.basis.empty()) {
        witness = "off-basis defect at " + tMonomialToString(params, rb.alpha);
        break;
      }
      rhs.segment(rb.offset, rb.basis.size()) =
          polyToVector(rb.basis, it->second);
    }
    if (!witness.empty()) {
      out.add("flatness_" + gen.name, false, witness);
      continue;
    }
    for (const HCol& hc : cols) {
      for (const auto& [b, coef] : kuranishi.components[hc.l]) {
        if (tOrder(b) + tOrder(hc.gamma) > n) continue;
        TMonomial a = tProduct(b, hc.gamma);
        for (const RowBlock& rb : rowBlocks) {
          if (!(rb.alpha == a)) continue;
          // Same (hdeg, weight) slice on both sides, so the bases agree
          // entry by entry.
          if (rb.basis.size() != hc.basis.size())
            throw std::logic_error("membership bases out of alignment");
          for (int k = 0; k < static_cast<int>(hc.basis.size()); ++k)
            M(rb.offset + k, hc.offset + k) += coef;
          break;
        }
      }
    }

    auto sol = solve(M, rhs);
    if (sol) {
      out.add("flatness_" + gen.name, true);
      continue;
    }

    // Attribute the failure: first slot whose defect no kept block can
    // reach is a definite witness; otherwise the multipliers are jointly
    // inconsistent and the first loaded slot is reported.
    for (const RowBlock& rb : rowBlocks) {
      if (!D.count(rb.alpha)) continue;
      bool reachable = false;
      for (const HCol& hc : cols) {
        for (const auto& [b, coef] : kuranishi.components[hc.l]) {
          if (tOrder(b) + tOrder(hc.gamma) > n) continue;
          if (tProduct(b, hc.gamma) == rb.alpha) {
            reachable = true;
            break;
          }
        }
        if (reachable) break;
      }
      if (!reachable) {
        witness = "defect at " + tMonomialToString(params, rb.alpha) +
                  " lies outside the obstruction ideal";
        break;
      }
      if (witness.empty())
        witness = "no consistent multiplier series; first loaded slot " +
                  tMonomialToString(params, rb.alpha);
    }
    if (witness.empty()) witness = "membership system inconsistent";
    out.add("flatness_" + gen.name, false, witness);
  }

  return out;
}

}  // namespace versal
