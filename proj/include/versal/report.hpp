#ifndef VERSAL_REPORT_HPP
#define VERSAL_REPORT_HPP

#include <json.hpp>

#include <optional>
#include <string>

#include "versal/kuranishi.hpp"
#include "versal/parser.hpp"

namespace versal {

typedef nlohmann::ordered_json Json;

/** A fully resolved job: subcommand, problem text and effective options. */
struct JobSpec {
  std::string subcommand;  // resolve | tangent | deform | verify
  std::string inputText;   // problem text; a prior report for verify
  std::optional<int> depth;
  std::optional<int> order;
  std::optional<int> weightBound;
};

struct JobResult {
  Json report;
  bool certificationPass = true;  // false means checks failed
};

/**
 * Weight bound used when none is requested: for a hypersurface the top
 * socle weight of the Milnor algebra plus the largest variable weight, and
 * depth times the largest relation weight otherwise.  Never below the
 * largest relation weight.
 */
int defaultWeightBound(const InputIdeal& ideal, int depth);

/**
 * Runs one job end to end and returns the report.  Inline options from the
 * problem text fill missing JobSpec fields; explicit JobSpec fields win.
 *
 * All reports are built with insertion-ordered keys and string-encoded
 * rational coefficients, so equal inputs produce byte-identical output.
 */
JobResult runJob(const JobSpec& job);

/** Report serialized as indented JSON with a trailing newline. */
std::string renderJson(const Json& report);

/**
 * Plain-text rendering of a report.  Timing is shown only here; the JSON
 * form must not depend on the clock.
 */
std::string renderText(const Json& report, std::optional<double> seconds);

/** The deformation section of a report, built from a computed result. */
Json deformationToJson(const DeformationResult& res);

/** Deformation data reconstructed from a report for re-certification. */
struct ReconstructedDeformation {
  InputIdeal ideal;
  Resolvent resolvent;
  std::vector<Parameter> parameters;
  Perturbation delta;
  KuranishiMap kuranishi;
  std::vector<TPoly> family;
  int order = 0;
};

/**
 * Rebuilds the resolvent from the embedded problem text and reparses every
 * serialized polynomial over its generator names.
 *
 * @throws SyntaxError or SemanticError on malformed or inconsistent data.
 */
ReconstructedDeformation deformationFromJson(const Json& report);

}  // namespace versal

#endif  // VERSAL_REPORT_HPP
