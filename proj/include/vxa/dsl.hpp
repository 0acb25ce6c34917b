#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vxa/state.hpp"

namespace vxa {
namespace dsl {

struct Span {
  int line = 1;
  int col = 1;
  int length = 1;
};

struct Diagnostic {
  enum class Severity { kError, kWarning };
  Severity severity = Severity::kError;
  std::string message;
  Span span;

  std::string str() const;
};

/// Parsed script statements. The surface syntax:
///   system (heis|cliff|omega) N = INT [ring (poly|rat|series(INT))] ;
///   let NAME = stateExpr ;
///   ope REF REF ;  nproduct REF INT REF ;
///   check (virasoro|topological|borcherds) ;
///   cohomology wmax = INT ;  character wmax = INT ;
///   transform map "b -> ..." order INT (check-opes | apply REF | structure) ;
///   p1 (glue | wakimoto | sections INT | euler INT | reflect REF) ;
///   cocycle (check-identities | compare-69 | eval KIND "f1,f2" "g1,g2" ["h1,h2"]) ;
struct Statement {
  enum class Kind {
    kSystem,
    kLet,
    kOpe,
    kNProduct,
    kCheck,
    kCohomology,
    kCharacter,
    kTransform,
    kP1,
    kCocycle,
  };
  Kind kind;
  Span span;
  // generic payload fields, interpreted per kind
  std::string word;                 // sub-keyword (e.g. "virasoro", "glue", "structure")
  std::string name;                 // let-name / map string
  std::vector<std::string> strings; // quoted arguments
  std::vector<long> ints;
  // parsed state expressions (lazy: raw token ranges re-parsed at run time
  // would need the system; instead the parser stores expression sources)
  std::vector<std::string> refs;
};

struct Script {
  std::vector<Statement> statements;
};

struct ParseResult {
  std::optional<Script> script;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return script.has_value() && diagnostics.empty(); }
};

ParseResult parse(const std::string& source);

/// Parses a state expression (sums of coefficient-times-letter terms, with
/// b^i_0 lowered into the coefficient) against a concrete system.
State parse_state_expr(const System& sys, const std::string& source);

/// Parses a rational-function coefficient expression in x1..xN.
FunctionElem parse_coeff_expr(const System& sys, const std::string& source);

struct RunOptions {
  bool json = false;
  unsigned seed = 1;
  long max_weight = 3;
  int series_order = 8;
  int degree_window = 4;
};

struct RunResult {
  int exit_code = 0;          // 0 pass, 1 check failed, 2 usage, 3 resource bound
  std::string output;         // stdout payload (text or json)
  std::vector<Diagnostic> diagnostics;
};

RunResult run(const Script& script, const RunOptions& options);

/// Convenience: parse + run.
RunResult run_source(const std::string& source, const RunOptions& options);

}  // namespace dsl
}  // namespace vxa
