#pragma once

#include "photonq/elements.hpp"
#include "photonq/fock_oracle.hpp"
#include "photonq/objectives.hpp"
#include "photonq/optimizer.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace photonq {

// Named initial-state preparation: a three-dimensional Bell pair.
struct Bell3Spec {
    std::string path_1, path_2;
    bool anti = true;
};

using InitialOp = std::variant<PhotonInject, Bell3Spec>;

struct SimulationSection {
    int steps = 1;
    std::uint64_t seed = 0;
    long shots = 1024;
};

struct OptimizationSection {
    double success_threshold = 0.0;
    int max_iters = 200;
    int seeds = 10;
    OptMethod method = OptMethod::BFGS;
};

enum class ObjectiveKind { None, Plain, PostSelected };

struct ObjectiveSection {
    ObjectiveKind kind = ObjectiveKind::None;
    FockVector target;  // normalized at parse time
    std::optional<HeraldSpec> herald;
    std::vector<std::string> postselect;
};

// Parsed declarative experiment description (see README for the format).
struct Setup {
    SetupLayout layout;
    std::vector<InitialOp> initial;
    std::vector<OpticalElement> elements;
    ParamMap parameters;
    ObjectiveSection objective;
    SimulationSection simulation;
    OptimizationSection optimization;
};

// Strict parsing: unknown keys, undeclared parameter references, and invalid
// field shapes raise SchemaError with the origin in the message.
Setup parse_setup_text(const std::string& text, const std::string& origin);
Setup parse_setup_file(const std::string& path);

// Initial preparations followed by the compiled elements; the parameters
// section becomes the circuit's symbol-table defaults.
GateCircuit build_setup_circuit(const Setup& setup, int steps,
                                std::vector<std::string>* warnings = nullptr);

Objective build_objective(const Setup& setup, int steps);

// Total photon count of the prepared initial state (conserved by every
// element family except pair sources).
int total_photons(const Setup& setup);

// Oracle-side mirror of the same setup.
FockVector oracle_initial(const Setup& setup);
FockVector oracle_output(const Setup& setup);

} // namespace photonq
