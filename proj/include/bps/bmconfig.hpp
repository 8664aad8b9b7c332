#pragma once

#include <optional>
#include <string>

#include "bps/devmap.hpp"

// Safety calculus for bubble-preserving movements: the constants sys(rho), K
// and A, and the standard / visible predicates for bubble-plus-twin-pair
// configurations.

namespace bps {

// A bubble boundary together with an embedded twin pair based at one of its
// vertices. The twin arcs develop onto the same arc and meet only at the base.
struct BMConfiguration {
    DevelopedArc bubble_boundary;
    DevelopedArc twin_first, twin_second;
    ProjectivePoint base;

    // checks the twin-pair invariants (shared base point, projectively equal
    // developed images as sets, no other mutual intersection)
    static BMConfiguration make(DevelopedArc bubble_boundary, DevelopedArc twin_first,
                                DevelopedArc twin_second, double tol = 1e-6);
};

struct SafetyConstants {
    double sys = 0.0;  // systole estimate (upper bound for sys(rho))
    double K = 0.0;    // word-ball estimate of inf_gamma d(x, rho(gamma) y); may be +inf
    double A = 0.0;    // min(sys, K/3)
    bool simply_developed = true;  // false when the orbit minimum hits zero
};

// Path-metric distance on CP^1 minus the real circle: hyperbolic within one
// half-plane, +inf across. Throws std::domain_error for points on the circle.
double half_plane_path_distance(Complex x, Complex y);

// K = min over words up to word_ball (identity included) of
// d(x, rho(gamma) y); sys from systole_estimate; A = min(sys, K/3).
// All values are word-ball estimates, to be used conservatively.
// Throws std::domain_error when x sits on the real circle.
SafetyConstants safety_constants(const FuchsianRepresentation& rep, Complex x, Complex y,
                                 int word_ball);

struct StandardCheck {
    bool standard = false;
    bool via_containment = false;  // the twin pair runs inside the bubble boundary
    std::optional<InjectivityCertificate::Witness> witness;  // offending intersection
};

// Standard = the twin pair meets the bubble boundary (and all its word-ball
// translates) only at the base point, or lies entirely inside the boundary.
StandardCheck check_standard(const BMConfiguration& cfg, const FuchsianRepresentation& rep,
                             int word_ball, double tol = 1e-6);

enum class VisibilityVerdict { VisibleCertified, VisibleByInjectivity, NotVisible, Unknown };
const char* to_string(VisibilityVerdict v);

// Visible = the twin pair survives analytic continuation on the debubbled
// structure. Certified when shorter than the systole estimate; decidable on
// bubblings over the uniformizing structure; Unknown otherwise.
VisibilityVerdict check_visible(const BMConfiguration& cfg, const StructureModel& model,
                                int word_ball = 4);

// Largest safe twin-pair length: min(sys, K) for one movement at one vertex,
// A = min(sys, K/3) when both vertices move. Throws std::domain_error when
// K = 0 (not simply developed).
double safe_move_bound_single(const SafetyConstants& consts);
double safe_move_bound_double(const SafetyConstants& consts);

}  // namespace bps
