#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "torcor/classify.hpp"
#include "torcor/markov.hpp"
#include "torcor/oracle.hpp"

namespace torcor {

// Insertion-ordered documents keep every emitted field sequence stable, so
// identical inputs produce byte-identical output.
using Json = nlohmann::ordered_json;

// Wraps nlohmann parsing; malformed text raises ParseError.
Json parse_text(const std::string& text);

// Rationals serialize as "p/q" ("p" when q = 1), matrices as row-major
// nested arrays of such strings, integer scalars as decimal strings.
Json to_json(const Rat& x);
Json to_json(const Int& x);
Json to_json(const RatVector& v);
Json to_json(const IntVector& v);
Json to_json(const RatMatrix& a);
Json to_json(const std::vector<RatVector>& points);
Json to_json(const std::vector<IntVector>& points);

Json to_json(const Lattice& l);        // {"m", "rank", "basis"}
Json to_json(const FiniteSubgroup& h); // carrier lattice object
Json to_json(const Correspondence& p); // {"m", "M", "Delta"}

// Relation form {"m", "A", "B"} with A x = B y on the torus.
Json relation_json(const Correspondence& p);

Json to_json(const DeterministicCores& cores);
Json to_json(const SpectrumReport& report);
Json to_json(const AutomorphismCoverWitness& witness);
Json to_json(const KernelGrowthRow& row);
Json to_json(const std::vector<KernelGrowthRow>& rows);
Json to_json(const ClassificationReport& report);

Json to_json(const TruncatedOperator& op);  // coordinate-list sparse form
Json to_json(const OrbitRecord& orbit);
Json to_json(const EigenvectorCheck& check);
Json to_json(const StepDistribution& dist);

Json to_json(const oracle::CheckResult& check);
Json to_json(const oracle::CaseReport& report);
Json to_json(const oracle::SuiteReport& report);

// Parsers throw ParseError on structural problems; domain violations
// (singular matrices, non-integral relation pairs) surface as the
// constructors' PreconditionError.
Rat parse_rational(const Json& j);      // string "p/q" or integer number
Int parse_integer(const Json& j);
RatVector parse_rat_vector(const Json& j);  // scalar accepted as length 1
IntVector parse_int_vector(const Json& j);
RatMatrix parse_matrix(const Json& j);      // scalar accepted as 1 x 1
Lattice parse_lattice(const Json& j);
FiniteSubgroup parse_subgroup(const Json& j);

// Accepts the map form {"m", "M", "Delta"} and the relation form
// {"A", "B"}; relation input is normalized on load.
Correspondence parse_correspondence(const Json& j);

}  // namespace torcor
