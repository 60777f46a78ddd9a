#include "versal/report.hpp"

#include <sstream>

#include "versal/errors.hpp"

namespace versal {

int defaultWeightBound(const InputIdeal& ideal, int depth) {
  int maxF = ideal.maxRelationWeight();
  if (ideal.relations.size() == 1) {
    int socle = 0;
    int maxVar = 0;
    for (const Generator& g : ideal.vars.all()) {
      socle += maxF - 2 * g.weight;
      maxVar = std::max(maxVar, g.weight);
    }
    return std::max(socle + maxVar, maxF);
  }
  return depth * maxF;
}

namespace {

Json checksJson(const CheckList& cl) {
  Json arr = Json::array();
  for (const Check& c : cl.checks) {
    Json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["detail"] = c.detail;
    arr.push_back(e);
  }
  return arr;
}

Json resolventJson(const Resolvent& r) {
  Json out;
  out["depth"] = r.depth;
  out["weight_bound"] = r.weightBound;
  Json gens = Json::array();
  for (const Generator& g : r.gens.all()) {
    Json e;
    e["name"] = g.name;
    e["level"] = g.level;
    e["weight"] = g.weight;
    auto it = r.diff.find(g.id);
    e["differential"] =
        it == r.diff.end() ? "0" : polyToString(r.gens, it->second);
    gens.push_back(e);
  }
  out["generators"] = gens;
  return out;
}

Json valuesJson(const Resolvent& r, const TangentElement& theta) {
  Json arr = Json::array();
  for (const auto& [id, p] : theta.values) {
    if (p.isZero()) continue;
    arr.push_back(Json::array({r.gens[id].name, polyToString(r.gens, p)}));
  }
  return arr;
}

Json cohomologyJson(const Resolvent& r, const TangentCohomology& t,
                    const std::pair<int, int>& band) {
  Json out;
  out["band"] = Json::array({band.first, band.second});
  out["dim"] = t.totalDim();
  Json classes = Json::array();
  for (const auto& [w, el] : t.flatten()) {
    Json e;
    e["weight"] = w;
    e["values"] = valuesJson(r, el);
    classes.push_back(e);
  }
  out["classes"] = classes;
  return out;
}

Json parametersJson(const std::vector<Parameter>& params) {
  Json arr = Json::array();
  for (const Parameter& p : params) {
    Json e;
    e["name"] = p.name;
    e["weight"] = p.weight;
    arr.push_back(e);
  }
  return arr;
}

Json deltaJson(const Resolvent& r, const Perturbation& delta) {
  Json arr = Json::array();
  for (const auto& [a, theta] : delta.terms) {
    Json e;
    e["t"] = a;
    e["weight"] = theta.weight;
    e["values"] = valuesJson(r, theta);
    arr.push_back(e);
  }
  return arr;
}

Json seriesJson(const TSeries& s) {
  Json arr = Json::array();
  for (const auto& [m, c] : s)
    arr.push_back(Json::array({Json(m), Json(rationalToString(c))}));
  return arr;
}

Json kuranishiJson(const std::vector<Parameter>& params,
                   const KuranishiMap& km) {
  Json arr = Json::array();
  for (size_t l = 0; l < km.components.size(); ++l) {
    Json e;
    e["weight"] = km.classWeights[l];
    e["series"] = seriesJson(km.components[l]);
    e["display"] = tSeriesToString(params, km.components[l]);
    arr.push_back(e);
  }
  return arr;
}

/** Human form of one family member, pivoted to ring monomials. */
std::string familyDisplay(const Resolvent& r,
                          const std::vector<Parameter>& params,
                          const TPoly& f) {
  std::map<Monomial, TSeries, MonomialOrder> pivot;
  for (const auto& [a, poly] : f.coeffs)
    for (const auto& [m, c] : poly.terms) pivot[m][a] = c;
  if (pivot.empty()) return "0";

  std::ostringstream out;
  bool first = true;
  for (const auto& [m, series] : pivot) {
    std::string ser = tSeriesToString(params, series);
    std::string mono = monomialToString(r.gens, m);
    std::string piece;
    if (ser == "1")
      piece = mono;
    else if (m.isOne())
      piece = series.size() == 1 ? ser : "(" + ser + ")";
    else if (ser == "-1")
      piece = "-" + mono;
    else if (series.size() == 1)
      piece = ser + "*" + mono;
    else
      piece = "(" + ser + ")*" + mono;

    if (first) {
      out << piece;
    } else if (piece.size() > 1 && piece[0] == '-') {
      out << " - " << piece.substr(1);
    } else {
      out << " + " << piece;
    }
    first = false;
  }
  return out.str();
}

Json familyJson(const Resolvent& r, const std::vector<Parameter>& params,
                const std::vector<TPoly>& family) {
  Json arr = Json::array();
  std::vector<int> level1 = r.gens.idsAtLevel(1);
  for (size_t j = 0; j < family.size(); ++j) {
    Json e;
    e["generator"] = r.gens[level1.at(j)].name;
    Json terms = Json::array();
    for (const auto& [a, poly] : family[j].coeffs)
      terms.push_back(Json::array({Json(a), Json(polyToString(r.gens, poly))}));
    e["terms"] = terms;
    e["display"] = familyDisplay(r, params, family[j]);
    arr.push_back(e);
  }
  return arr;
}

JobResult runVerify(const JobSpec& job) {
  Json prior;
  try {
    prior = Json::parse(job.inputText);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("report is not valid JSON: ") + e.what(), 1,
                      1);
  }

  ReconstructedDeformation d = deformationFromJson(prior);

  CheckList cl;
  CheckList rc = verifyResolvent(d.resolvent);
  for (const Check& c : rc.checks) cl.checks.push_back(c);

  std::vector<TPoly> recomputed = familyFrom(d.resolvent, d.delta);
  bool famOk = recomputed.size() == d.family.size();
  for (size_t j = 0; famOk && j < recomputed.size(); ++j)
    famOk = recomputed[j] == d.family[j];
  cl.add("family_matches_delta", famOk,
         "stored family differs from the one induced by delta");

  const TMonomial zero(d.parameters.size(), 0);
  bool zeroOk = d.family.size() == d.ideal.relations.size();
  for (size_t j = 0; zeroOk && j < d.family.size(); ++j) {
    auto it = d.family[j].coeffs.find(zero);
    zeroOk = it != d.family[j].coeffs.end() &&
             it->second == d.ideal.relations[j];
  }
  cl.add("family_at_zero_matches_input", zeroOk,
         "setting every parameter to zero does not recover the input ideal");

  CheckList fl =
      verifyFlatness(d.resolvent, d.parameters, d.delta, d.kuranishi, d.order);
  for (const Check& c : fl.checks) cl.checks.push_back(c);

  Json rep;
  rep["subcommand"] = "verify";
  rep["input"] = prior.contains("input") ? prior["input"] : Json("");
  if (prior.contains("options")) rep["options"] = prior["options"];
  rep["checks"] = checksJson(cl);
  rep["pass"] = cl.pass();
  return JobResult{rep, cl.pass()};
}

}  // namespace

Json deformationToJson(const DeformationResult& res) {
  const Resolvent& r = res.resolvent;
  Json out;
  out["t1"] = cohomologyJson(r, res.t1, res.tangentBand);
  out["t2"] = cohomologyJson(r, res.t2, res.tangentBand);
  out["parameters"] = parametersJson(res.parameters);
  out["delta"] = deltaJson(r, res.delta);
  out["kuranishi"] = kuranishiJson(res.parameters, res.kuranishi);
  out["family"] = familyJson(r, res.parameters, res.family);
  out["order"] = res.order;
  out["stabilized_at"] =
      res.stabilizedAt ? Json(*res.stabilizedAt) : Json(nullptr);
  Json caveats = Json::array();
  for (const std::string& c : res.caveats) caveats.push_back(c);
  out["caveats"] = caveats;
  return out;
}

JobResult runJob(const JobSpec& job) {
  if (job.subcommand == "verify") return runVerify(job);

  ParsedInput parsed = parseInput(job.inputText);
  parsed.ideal.validate();
  int depth = job.depth.value_or(parsed.depth.value_or(3));
  int order = job.order.value_or(parsed.order.value_or(5));
  int weightBound = job.weightBound.value_or(parsed.weightBound.value_or(
      defaultWeightBound(parsed.ideal, depth)));

  Json rep;
  rep["subcommand"] = job.subcommand;
  rep["input"] = job.inputText;
  Json opts;
  opts["depth"] = depth;
  if (job.subcommand == "deform") opts["order"] = order;
  opts["weights"] = weightBound;
  rep["options"] = opts;

  if (job.subcommand == "resolve") {
    Resolvent r = buildResolvent(parsed.ideal, depth, weightBound);
    rep["resolvent"] = resolventJson(r);
    CheckList cl = verifyResolvent(r);
    rep["checks"] = checksJson(cl);
    rep["pass"] = cl.pass();
    return JobResult{rep, cl.pass()};
  }
  if (job.subcommand == "tangent") {
    Resolvent r = buildResolvent(parsed.ideal, depth, weightBound);
    rep["resolvent"] = resolventJson(r);
    auto band = tangentScanBand(r, weightBound);
    rep["t1"] = cohomologyJson(
        r, tangentCohomology(r, 1, band.first, band.second), band);
    rep["t2"] = cohomologyJson(
        r, tangentCohomology(r, 2, band.first, band.second), band);
    return JobResult{rep, true};
  }
  if (job.subcommand == "deform") {
    DeformationResult res = semiuniversal(parsed.ideal, depth, order,
                                          weightBound);
    rep["resolvent"] = resolventJson(res.resolvent);
    Json d = deformationToJson(res);
    for (auto& [k, v] : d.items()) rep[k] = v;
    return JobResult{rep, true};
  }
  throw SemanticError("unknown subcommand '" + job.subcommand + "'");
}

std::string renderJson(const Json& report) { return report.dump(2) + "\n"; }

std::string renderText(const Json& report, std::optional<double> seconds) {
  std::ostringstream out;
  out << "subcommand: " << report.value("subcommand", "") << "\n";
  if (report.contains("options")) {
    const Json& o = report["options"];
    out << "options:";
    for (auto& [k, v] : o.items()) out << " " << k << "=" << v.dump();
    out << "\n";
  }
  if (report.contains("resolvent")) {
    const Json& r = report["resolvent"];
    out << "resolvent: " << r["generators"].size()
        << " generators, depth " << r["depth"].get<int>() << ", weight bound "
        << r["weight_bound"].get<int>() << "\n";
    for (const Json& g : r["generators"])
      out << "  " << g["name"].get<std::string>() << " (level "
          << g["level"].get<int>() << ", weight " << g["weight"].get<int>()
          << ")  s -> " << g["differential"].get<std::string>() << "\n";
  }
  for (const char* key : {"t1", "t2"}) {
    if (!report.contains(key)) continue;
    const Json& t = report[key];
    out << key << ": dim " << t["dim"].get<int>() << ", band ["
        << t["band"][0].get<int>() << ", " << t["band"][1].get<int>() << "]\n";
    for (const Json& c : t["classes"]) {
      out << "  weight " << c["weight"].get<int>() << ":";
      for (const Json& v : c["values"])
        out << " " << v[1].get<std::string>() << "*d/d"
            << v[0].get<std::string>();
      out << "\n";
    }
  }
  if (report.contains("parameters")) {
    out << "parameters:";
    if (report["parameters"].empty()) out << " none";
    for (const Json& p : report["parameters"])
      out << " " << p["name"].get<std::string>() << " (weight "
          << p["weight"].get<int>() << ")";
    out << "\n";
  }
  if (report.contains("family")) {
    out << "family:\n";
    for (const Json& f : report["family"])
      out << "  " << f["generator"].get<std::string>() << " -> "
          << f["display"].get<std::string>() << "\n";
  }
  if (report.contains("kuranishi")) {
    bool any = false;
    for (const Json& k : report["kuranishi"])
      if (k["display"].get<std::string>() != "0") any = true;
    if (!any) {
      out << "kuranishi: 0 (unobstructed base)\n";
    } else {
      out << "kuranishi:\n";
      int i = 0;
      for (const Json& k : report["kuranishi"])
        out << "  K" << i++ << " (weight " << k["weight"].get<int>()
            << ") = " << k["display"].get<std::string>() << "\n";
    }
  }
  if (report.contains("order")) {
    out << "order: " << report["order"].get<int>();
    if (report.contains("stabilized_at")) {
      if (report["stabilized_at"].is_null())
        out << ", no termination certificate";
      else
        out << ", terminates at order " << report["stabilized_at"].get<int>();
    }
    out << "\n";
  }
  if (report.contains("checks")) {
    int passed = 0;
    for (const Json& c : report["checks"])
      if (c["pass"].get<bool>()) ++passed;
    out << "checks: " << passed << "/" << report["checks"].size()
        << " passed\n";
    for (const Json& c : report["checks"])
      if (!c["pass"].get<bool>())
        out << "  FAIL " << c["name"].get<std::string>() << ": "
            << c["detail"].get<std::string>() << "\n";
  }
  if (report.contains("caveats")) {
    if (report["caveats"].empty()) {
      out << "caveats: none\n";
    } else {
      out << "caveats:\n";
      for (const Json& c : report["caveats"])
        out << "  " << c.get<std::string>() << "\n";
    }
  }
  if (report.contains("pass"))
    out << "verdict: " << (report["pass"].get<bool>() ? "PASS" : "FAIL")
        << "\n";
  if (seconds) {
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(3);
    t << *seconds;
    out << "elapsed: " << t.str() << " s\n";
  }
  return out.str();
}

ReconstructedDeformation deformationFromJson(const Json& report) {
  ReconstructedDeformation d;
  try {
    for (const char* key :
         {"input", "options", "parameters", "delta", "kuranishi", "family"})
      if (!report.contains(key))
        throw SemanticError(std::string("report is missing key '") + key +
                            "'");

    ParsedInput pin = parseInput(report["input"].get<std::string>());
    pin.ideal.validate();
    d.ideal = pin.ideal;

    const Json& o = report["options"];
    int depth = o.at("depth").get<int>();
    int weightBound = o.at("weights").get<int>();
    d.order = o.contains("order") ? o.at("order").get<int>() : 1;
    d.resolvent = buildResolvent(d.ideal, depth, weightBound);
    const GeneratorSet& gens = d.resolvent.gens;

    for (const Json& p : report["parameters"])
      d.parameters.push_back(Parameter{p.at("name").get<std::string>(),
                                       p.at("weight").get<int>()});
    const int np = static_cast<int>(d.parameters.size());

    d.delta.paramCount = np;
    for (const Json& e : report["delta"]) {
      TMonomial a = e.at("t").get<TMonomial>();
      TangentElement theta;
      theta.hdeg = 1;
      theta.weight = e.at("weight").get<int>();
      for (const Json& v : e.at("values")) {
        std::string name = v.at(0).get<std::string>();
        int id = gens.find(name);
        if (id < 0)
          throw SemanticError("delta references unknown generator '" + name +
                              "'");
        theta.values[id] = parsePoly(gens, v.at(1).get<std::string>());
      }
      d.delta.terms[a] = theta;
    }

    for (const Json& e : report["kuranishi"]) {
      d.kuranishi.classWeights.push_back(e.at("weight").get<int>());
      TSeries s;
      for (const Json& term : e.at("series"))
        s[term.at(0).get<TMonomial>()] =
            rationalFromString(term.at(1).get<std::string>());
      d.kuranishi.components.push_back(std::move(s));
    }

    std::vector<int> level1 = gens.idsAtLevel(1);
    if (report["family"].size() != level1.size())
      throw SemanticError("family size does not match the ideal");
    int j = 0;
    for (const Json& e : report["family"]) {
      if (e.at("generator").get<std::string>() != gens[level1[j]].name)
        throw SemanticError("family entries out of order");
      TPoly f;
      for (const Json& term : e.at("terms"))
        f.coeffs[term.at(0).get<TMonomial>()] =
            parsePoly(gens, term.at(1).get<std::string>());
      d.family.push_back(std::move(f));
      ++j;
    }
  } catch (const nlohmann::json::exception& e) {
    throw SemanticError(std::string("malformed report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SemanticError(std::string("malformed report: ") + e.what());
  }
  return d;
}

}  // namespace versal
