#pragma once

#include <json.hpp>

#include "twocopy/states.hpp"

namespace twocopy {

// Materializes a state-source document:
//   {"source":"random","n":2,"rank":2,"seed":7}
//   {"source":"bloch","p":[x,y,z]}
//   {"source":"named","name":"ghz"|"bell"|"product-zero","n":3}
//   {"source":"file","path":"state.json"}    (DensityMatrix JSON)
//   {"source":"unbiased","n":2}              (detector worst-case ancilla)
DensityMatrix resolve_state(const nlohmann::json& source);

// Runs one experiment described by a config document and returns
//   {"body": {"schema_version":"1", "config": <resolved>, "results": ...},
//    "duration_ms": ...}.
// The body is byte-deterministic for identical configs; the wall-clock
// duration lives outside it.
nlohmann::json run_experiment(const nlohmann::json& config);

}  // namespace twocopy
