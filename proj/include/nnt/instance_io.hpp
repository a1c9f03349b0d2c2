#pragma once

#include <string>

#include "json.hpp"
#include "nnt/netmodel.hpp"
#include "nnt/sources.hpp"

namespace nnt {

// Instances and witnesses travel as JSON with every numeric value kept
// as an exact decimal string. Parsing finalizes the instance, so a
// returned Instance always carries a topology.
std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);

std::string serialize_assignment(const Assignment& theta, const Instance& inst);
Assignment parse_assignment(const std::string& text);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);
Assignment load_assignment(const std::string& path);
void save_assignment(const Assignment& theta, const Instance& inst,
                     const std::string& path);

nlohmann::ordered_json source_to_json(const SourceProblem& src);
SourceProblem source_from_json(const nlohmann::ordered_json& j);

}  // namespace nnt
