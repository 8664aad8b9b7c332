#pragma once

#include <complex>
#include <vector>

// PSL(2,C) acting on CP^1, in double precision. Values are immutable after
// construction; everything here is safe to call concurrently.

namespace bps {

using Complex = std::complex<double>;

// Global projective-equality tolerance. All "projectively equal" tests in the
// library default to this unless a caller passes its own.
double projective_tolerance();
void set_projective_tolerance(double tol);

// A point [z0 : z1] of CP^1, kept at unit magnitude |z0|^2 + |z1|^2 = 1.
// Infinity is [1 : 0].
struct ProjectivePoint {
    Complex z0, z1;

    ProjectivePoint(Complex hom0, Complex hom1);  // throws if both ~0

    static ProjectivePoint from_complex(Complex z) { return {z, 1.0}; }
    static ProjectivePoint infinity() { return {1.0, 0.0}; }

    bool is_infinity(double tol = projective_tolerance()) const;
    // Affine coordinate z0/z1; infinite values map to a huge double.
    Complex to_complex() const;
};

bool projectively_equal(const ProjectivePoint& p, const ProjectivePoint& q,
                        double tol = projective_tolerance());

// Round-sphere (chordal) metric on CP^1, diameter 2.
double chordal_distance(const ProjectivePoint& p, const ProjectivePoint& q);

// z -> (az+b)/(cz+d), normalized to det = 1 on construction. The map and its
// negation are identified; the stored sign is canonical: the first entry (in
// order a, b, c, d) of magnitude > 1e-12 has nonnegative real part, ties on
// the real part broken by nonnegative imaginary part.
struct MoebiusMap {
    Complex a, b, c, d;

    MoebiusMap();  // identity
    MoebiusMap(Complex a, Complex b, Complex c, Complex d);  // throws if singular

    static MoebiusMap identity() { return {}; }
    // diag(l, 1/l), i.e. z -> l^2 z.
    static MoebiusMap diagonal(Complex l);
    // Hyperbolic translation of length t along the half-plane geodesic
    // through i with endpoints -1, +1.
    static MoebiusMap translation_through_i(double t);
    // Elliptic rotation by angle theta about i (derivative e^{i theta} at i).
    static MoebiusMap rotation_about_i(double theta);

    Complex trace() const { return a + d; }
    Complex trace_squared() const { Complex t = a + d; return t * t; }
    bool has_real_entries(double tol = 1e-12) const;
    bool is_identity(double tol = projective_tolerance()) const;

    // exact on det-1 representatives; no renormalization, so no cancellation
    MoebiusMap inverse() const;

    // action in the affine chart (avoids std::apply ADL traps on std::complex)
    Complex operator()(Complex z) const;

  private:
    struct raw_tag {};
    MoebiusMap(raw_tag, Complex a, Complex b, Complex c, Complex d);
    friend MoebiusMap operator*(const MoebiusMap&, const MoebiusMap&);
};

MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n);

ProjectivePoint apply(const MoebiusMap& m, const ProjectivePoint& p);

enum class MapKind { Identity, Elliptic, Parabolic, Loxodromic };

struct MapAnalysis {
    MapKind kind = MapKind::Identity;
    std::vector<ProjectivePoint> fixed_points;  // empty for the identity
    double translation_length = 0.0;            // > 0 iff loxodromic
    Complex trace_squared{0.0, 0.0};
};

// Classification by tr^2: real in [0,4) elliptic, = 4 parabolic (or identity),
// anything else loxodromic. Fixed points solve c z^2 + (d-a) z - b = 0,
// handled projectively when c = 0.
MapAnalysis analyze(const MoebiusMap& m);

// Upper half-plane distance, cosh d = 1 + |z-w|^2 / (2 Im z Im w).
// Throws std::domain_error unless both points have Im > 0.
double hyperbolic_distance(Complex z, Complex w);

const char* to_string(MapKind k);

}  // namespace bps
