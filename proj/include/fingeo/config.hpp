#pragma once

#include "fingeo/dirac.hpp"
#include "fingeo/entwine.hpp"
#include "fingeo/geometry.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace fingeo {

// The measurement-toolkit setup: a finite-dimensional algebra A acting on
// the vector space of an algebra P.
struct MeasureSetup {
    FinAlgebra p;
    FinAlgebra a;
    AlgebraAction action;
    std::string label;
};

// A fully validated computation session. Scalars are exact rationals; float
// mode is accepted only for the Dirac/spectrum pipeline.
struct SessionConfig {
    std::string mode = "exact";
    nlohmann::json canonical;  // effective config, echoed into reports

    GroupPtr group;
    std::optional<AdStableClass> cls;
    Calculus calc;
    WedgePtr wedge;  // Woronowicz lift installed; see `lift` for Ricci choice
    std::string lift = "woronowicz";
    std::optional<Frame> frame;  // cobein installed when eta is present
    std::optional<KillingForm> eta;
    std::string connection_source = "solve";
    std::optional<Connection> explicit_connection;
    std::string spinor_kind = "search";
    std::optional<SpinorSetup> explicit_spinor;
    std::optional<MeasureSetup> measure;
};

// Expands --preset names (s3, z2, z3, d4, and the measure presets
// z2-dynamical, z2-trivial, z3-translation, z2-two-orbits) to a full config.
nlohmann::json preset_config(const std::string& name);

// Parses and validates; unknown keys are rejected. Throws ConfigInvalid.
SessionConfig parse_config(const nlohmann::json& doc);

// Hash of the canonical dump, embedded in every report.
std::string config_hash(const nlohmann::json& doc);

}  // namespace fingeo
