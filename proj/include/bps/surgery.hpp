#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bps/decomposition.hpp"

// Graph rewrites for grafting, bubbling, debubbling and branch-point
// movement, with exact divisor bookkeeping, plus the schematic
// bubble/debubble walk between structures.

namespace bps {

struct CurveSpec {
    enum class Topology { Separating, NonSeparating };
    std::string host;
    Topology topology = Topology::NonSeparating;
    int chi_left = 0, chi_right = 0;  // separating only; must sum to chi(host)

    static CurveSpec separating(std::string host, int chi_left, int chi_right);
    static CurveSpec non_separating(std::string host);
};

struct ArcSpec {
    enum class Pattern { InteriorPositive, InteriorNegative, CrossingOnce, AnnulusToAnnulus };
    Pattern pattern = Pattern::InteriorPositive;
    std::string component;  // interior patterns: host component
    std::string curve;      // crossing pattern: crossed curve
    std::string annulus;    // annulus-to-annulus: the negative annulus
    std::string through;    // annulus-to-annulus: the positive component passed through

    static ArcSpec interior(std::string component);
    static ArcSpec crossing_once(std::string curve);
    static ArcSpec annulus_to_annulus(std::string annulus, std::string through);
};

struct SurgeryResult {
    DecompositionGraph graph;
    std::string divisor_delta;  // "unchanged", "+(1,1)", "-(1,1)"
    std::string provenance;     // rewrite rule that fired
};

struct unsupported_surgery : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct not_a_bubble : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a rewrite produces a graph that fails validate.
struct surgery_rejected : std::runtime_error {
    ValidationReport report;
    surgery_rejected(const std::string& what, ValidationReport rep)
        : std::runtime_error(what), report(std::move(rep)) {}
};

// Inserts a grafting annulus (sign opposite to the host) bounded by two new
// essential loxodromic index-0 curves; the branching divisor is unchanged.
SurgeryResult graft(const DecompositionGraph& g, const CurveSpec& spec);

// Divisor gains (1,1); the four supported arc patterns follow the shapes of
// the simple bubbling examples (interior arc, arc crossing one real curve,
// arc through a positive component between two annulus ends).
SurgeryResult bubble(const DecompositionGraph& g, const ArcSpec& spec);

// Inverse rewrite of the bubble pattern recognizable at the given curve;
// divisor loses (1,1). Throws not_a_bubble when no pattern matches.
SurgeryResult debubble(const DecompositionGraph& g, const std::string& curve_id);

struct MoveResult {
    DecompositionGraph graph;
    bool certified = false;  // classification matches the predicted case and
                             // spectator components are preserved
};

// All valid graphs obtainable by transferring one simple branch unit from
// `from` across `across` (constrained search over the finite ord = 2 shape
// space, bounds |components|+1 / |curves|+1). `across` empty = movement within
// the component: returns the input graph. Requires ord = 2.
std::vector<MoveResult> move_branch_point(const DecompositionGraph& g, const std::string& from,
                                          const std::optional<std::string>& across);

struct PlanStep {
    std::string op;      // "debubble" | "bubble" | "debubble (bubble transfer)"
    std::string detail;  // human-readable description
    DecompositionGraph graph;  // state after the step
};

struct plan_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Schematic walk source -> target as (1 if ord(source)=2) + 2m + 2n +
// (1 if ord(target)=2) bubble/debubble steps; every intermediate validates.
// Each grafting of the chain is realized as one bubbling plus one debubbling.
std::vector<PlanStep> plan_walk(const DecompositionGraph& source, const DecompositionGraph& target,
                                int m, int n);

// --- surgery scripts (one step per line) -----------------------------------
//   graft <host> separating <chi_l> <chi_r> | graft <host> nonsep
//   bubble interior <comp> | bubble crossing <curve> | bubble a2a <annulus> <comp>
//   debubble <curve> | move <comp> <curve>
struct ScriptStep {
    enum class Kind { Graft, Bubble, Debubble, Move } kind;
    CurveSpec curve_spec;
    ArcSpec arc_spec;
    std::string curve_id;
    std::string from_comp;
    std::string line;
};

std::vector<ScriptStep> parse_script(std::istream& in);
// Applies one step; `move` picks the first certified result in canonical order.
SurgeryResult apply_step(const DecompositionGraph& g, const ScriptStep& step);

}  // namespace bps
