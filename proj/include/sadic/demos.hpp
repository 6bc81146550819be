#pragma once

#include "sadic/analysis.hpp"

namespace sadic {

// Built-in demo inputs used by the CLI and the acceptance suite.
std::vector<std::string> demo_names();
BratteliDiagram demo_diagram(const std::string& name);
DirectiveSequence demo_directive(const std::string& name);

// Uniform seed: 2 vertices per level, constant entries, `levels` matrices.
BratteliDiagram uniform_seed(int vertices, long long entry, int levels);

}  // namespace sadic
