#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bps/decomposition.hpp"
#include "bps/fuchsian.hpp"
#include "bps/moebius.hpp"

// Numeric developing-map layer for Fuchsian examples: geodesic arc
// development, injectivity certificates, numeric indices of real curves and
// the twin-bubbling scenario on a grafted surface.

namespace bps {

struct DevelopedArc {
    std::vector<ProjectivePoint> samples;  // >= 2
    SurfaceGroupWord base_word;            // chart of analytic continuation
    double arclength = 0.0;                // hyperbolic units; +inf when the arc crosses RP^1
    bool degenerate = false;               // length-0 arcs, collapsed

    static DevelopedArc from_samples(std::vector<ProjectivePoint> samples, double arclength,
                                     SurfaceGroupWord base_word = {});
    static DevelopedArc degenerate_at(ProjectivePoint p);
};

// hyperbolic length of a sampled arc; +inf if consecutive samples sit in
// different half-planes (the path metric blows up on the real circle)
double sampled_arc_length(const std::vector<ProjectivePoint>& samples);

// Samples the unit-speed geodesic from `start` with tangent angle `direction`
// (pi/2 = straight up). Throws std::domain_error unless Im(start) > 0.
DevelopedArc develop_geodesic_arc(const FuchsianRepresentation& rep, Complex start,
                                  double direction, double length, int n_samples);

struct InjectivityCertificate {
    bool injective = false;
    double margin = 0.0;  // minimum pairwise developed distance observed
    bool small = false;   // arclength < systole estimate: tame by smallness
    // verdicts: a true answer is only certified when `small`; otherwise it is
    // an empirical sampling statement. A false answer always carries a witness.
    struct Witness {
        int sample_i = -1, sample_j = -1;
        SurfaceGroupWord word;  // group element whose translate collides (empty: same lift)
    };
    std::optional<Witness> witness;
    std::string quality() const { return injective ? (small ? "certified-small" : "empirical") : "witnessed-failure"; }
};

// Pairwise chordal separation of the samples (outside a locality window along
// the arc) and separation from all rho(g)-translates for nontrivial g up to
// word_ball.
InjectivityCertificate is_injectively_developed(const DevelopedArc& arc,
                                                const FuchsianRepresentation& rep, int word_ball,
                                                double tol);

// Counts parameter intervals of a closed curve passing through the chordal
// disk of radius tol around fixed_point, once per <holonomy>-orbit.
// Preconditions: holonomy maps the first sample to the last (closed in the
// quotient) and fixes fixed_point.
int index_of_real_curve(const DevelopedArc& curve, const MoebiusMap& holonomy,
                        const ProjectivePoint& fixed_point, double tol = 1e-4);

// --- structure models -------------------------------------------------------

struct StructureModel {
    enum class Variant { Uniformizing, Grafted, Bubbled };
    Variant variant = Variant::Uniformizing;
    FuchsianRepresentation rep;
    // Grafted
    SurfaceGroupWord graft_word;
    MoebiusMap graft_holonomy;
    bool graft_separating = true;
    // Bubbled
    std::shared_ptr<const StructureModel> inner;
    DevelopedArc bubble_arc;

    static StructureModel uniformizing(FuchsianRepresentation rep);
    // word must evaluate to a loxodromic map with real entries
    static StructureModel grafted(FuchsianRepresentation rep, const SurfaceGroupWord& word,
                                  bool separating);
    // certifies the arc injectively developed at construction (throws otherwise)
    static StructureModel bubbled(StructureModel inner, DevelopedArc arc, int word_ball,
                                  double tol);

    DecompositionGraph combinatorial_graph() const;

    struct RealCurveData {
        std::string name;  // curve id in combinatorial_graph()
        DevelopedArc curve;
        MoebiusMap holonomy;
        ProjectivePoint fixed_point;
        int expected_index = 0;
    };
    std::vector<RealCurveData> real_curves(int n_samples) const;
};

// --- the non-isotopic bubbling scenario -------------------------------------

struct ScenarioOptions {
    double theta_cap = M_PI / 8.0;  // construction bound on |theta|
    int word_ball = 3;
    double tol = 1e-6;
    int n_samples = 600;
    int systole_ball = 2;
};

struct NonIsoBubReport {
    double theta = 0.0;
    InjectivityCertificate plus;   // alpha_{+theta}
    InjectivityCertificate minus;  // alpha_{-theta}
    InjectivityCertificate zero;   // alpha_0 (the great-circle continuation)
    int orientation_plus = 0;      // sign of the angle at the base point, +1 left / -1 right
    int orientation_minus = 0;
    DevelopedArc arc_plus, arc_minus, arc_zero;
};

// Grafts along the loxodromic gamma and bubbles along the family of arcs
// alpha_theta through the annulus; all arcs live in one fundamental domain of
// rho(gamma), certified against the cyclic group <rho(gamma)>.
NonIsoBubReport scenario_nonisobub(const FuchsianRepresentation& rep,
                                   const SurfaceGroupWord& gamma_word, double eta_length,
                                   double theta, const ScenarioOptions& opt = {});

// --- arc dumps ---------------------------------------------------------------
// one sample per line "re0 im0 re1 im1", header "# arclength=<float> word=<letters>"
void write_arc_dump(const DevelopedArc& arc, std::ostream& out);
DevelopedArc read_arc_dump(std::istream& in);

}  // namespace bps
