#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "embedlab/attacks.hpp"
#include "embedlab/checks.hpp"
#include "embedlab/embeddings.hpp"
#include "embedlab/optimize.hpp"
#include "embedlab/probdist.hpp"

namespace embedlab {

// Rounds to `digits` significant decimal digits; all exported JSON numbers
// pass through this with 12 digits.
double round_sig(double value, int digits);

nlohmann::json to_json(const JointDistribution& p);
JointDistribution distribution_from_json(const nlohmann::json& j);

// Reads a {"x": [...], "y": [...], "p": [[...]]} file. I/O and JSON shape
// problems raise ParseError; bad probabilities raise ValidationError.
JointDistribution load_distribution(const std::string& path);

nlohmann::json to_json(const LeakageReport& r);
nlohmann::json to_json(const TrivialityReport& r);
nlohmann::json to_json(const ComponentPartition& c);
nlohmann::json to_json(const PhaseAssignment& t);
nlohmann::json to_json(const StrictCorrectness& s);
nlohmann::json to_json(const EnvironmentMonotones& m);
nlohmann::json to_json(const OptimizerResult& r);
nlohmann::json to_json(const AttackOutcome& a);
nlohmann::json to_json(const SuiteReport& s);

// Run manifest: command, arguments, seed, tool version, wall time and the
// result payload of the run.
nlohmann::json make_manifest(const std::string& command, const std::vector<std::string>& args,
                             std::uint64_t seed, double wall_seconds,
                             nlohmann::json results);

}  // namespace embedlab
