#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "imitation/catalog.hpp"
#include "imitation/potential.hpp"
#include "imitation/rules.hpp"
#include "imitation/solver.hpp"

namespace imitation {

// Integer-mode values serialize as json integers so certificates stay exact
// and diff-friendly; float mode keeps the double.
nlohmann::json num_to_json(Num v, bool integer_mode);

const char* to_string(PotentialVerdict v);
const char* to_string(OrderSearch s);

nlohmann::json potential_certificate_to_json(const PotentialCertificate& cert,
                                             const SymmetricGame& game);
nlohmann::json equivalence_to_json(const EquivalenceReport& rep);
nlohmann::json exploitation_to_json(const ExploitationCertificate& cert,
                                    const std::vector<std::string>& actions, bool integer_mode);
nlohmann::json trajectory_to_json(const std::vector<TrajectoryStep>& steps,
                                  const std::vector<std::string>& actions, bool integer_mode);

// Lossy human-readable views of the json reports.
std::string render_analyze_table(const nlohmann::json& report);
std::string render_exploit_table(const nlohmann::json& report);

}  // namespace imitation
