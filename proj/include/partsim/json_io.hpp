// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "partsim/ensemble.hpp"
#include "partsim/partition.hpp"
#include "partsim/verify.hpp"

namespace partsim {

// {"family": "geom-power", "params": {"r": 1.0, "rho": 1.0}, "cutoff_k": 512}
// raw specs carry params.coeffs as "p/q" strings.
nlohmann::json spec_to_json(const EnsembleSpec& spec);
EnsembleSpec spec_from_json(const nlohmann::json& j);

// {"counts": {"1": 2, "2": 3, "4": 1}, "total": 12}
nlohmann::json partition_to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const VerificationReport& rep);

}  // namespace partsim
