#include "bps/moebius.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace bps {

namespace {
std::atomic<double> g_proj_tol{1e-9};
constexpr double kSignTol = 1e-12;
}  // namespace

double projective_tolerance() { return g_proj_tol.load(); }
void set_projective_tolerance(double tol) {
    if (!(tol > 0)) throw std::invalid_argument("projective tolerance must be positive");
    g_proj_tol.store(tol);
}

ProjectivePoint::ProjectivePoint(Complex hom0, Complex hom1) : z0(hom0), z1(hom1) {
    double n = std::sqrt(std::norm(z0) + std::norm(z1));
    if (n < 1e-300) throw std::invalid_argument("projective point needs a nonzero representative");
    z0 /= n;
    z1 /= n;
}

bool ProjectivePoint::is_infinity(double tol) const { return std::abs(z1) < tol; }

Complex ProjectivePoint::to_complex() const {
    if (std::abs(z1) < 1e-300) return {1e300, 0.0};
    return z0 / z1;
}

bool projectively_equal(const ProjectivePoint& p, const ProjectivePoint& q, double tol) {
    return std::abs(p.z0 * q.z1 - p.z1 * q.z0) < tol;
}

double chordal_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
    // points are unit-normalized, so the cross term is the chordal distance / 2
    return 2.0 * std::abs(p.z0 * q.z1 - p.z1 * q.z0);
}

namespace {
void canonicalize_sign(Complex& a, Complex& b, Complex& c, Complex& d) {
    const Complex* entries[4] = {&a, &b, &c, &d};
    for (const Complex* e : entries) {
        if (std::abs(*e) <= kSignTol) continue;
        bool flip = false;
        if (e->real() < -kSignTol) flip = true;
        else if (std::abs(e->real()) <= kSignTol && e->imag() < 0) flip = true;
        if (flip) { a = -a; b = -b; c = -c; d = -d; }
        return;
    }
}
}  // namespace

MoebiusMap::MoebiusMap() : a(1.0), b(0.0), c(0.0), d(1.0) {}

MoebiusMap::MoebiusMap(Complex a_, Complex b_, Complex c_, Complex d_)
    : a(a_), b(b_), c(c_), d(d_) {
    Complex det = a * d - b * c;
    if (std::abs(det) < 1e-200) throw std::invalid_argument("singular Moebius map");
    Complex s = std::sqrt(det);
    a /= s; b /= s; c /= s; d /= s;
    canonicalize_sign(a, b, c, d);
}

MoebiusMap::MoebiusMap(raw_tag, Complex a_, Complex b_, Complex c_, Complex d_)
    : a(a_), b(b_), c(c_), d(d_) {
    canonicalize_sign(a, b, c, d);
}

MoebiusMap MoebiusMap::inverse() const { return {raw_tag{}, d, -b, -c, a}; }

MoebiusMap MoebiusMap::diagonal(Complex l) { return {l, 0.0, 0.0, 1.0 / l}; }

MoebiusMap MoebiusMap::translation_through_i(double t) {
    double ch = std::cosh(t / 2), sh = std::sinh(t / 2);
    return {ch, sh, sh, ch};
}

MoebiusMap MoebiusMap::rotation_about_i(double theta) {
    double cs = std::cos(theta / 2), sn = std::sin(theta / 2);
    return {cs, sn, -sn, cs};
}

bool MoebiusMap::has_real_entries(double tol) const {
    return std::abs(a.imag()) < tol && std::abs(b.imag()) < tol &&
           std::abs(c.imag()) < tol && std::abs(d.imag()) < tol;
}

bool MoebiusMap::is_identity(double tol) const {
    return std::abs(b) < tol && std::abs(c) < tol && std::abs(a - d) < tol;
}

MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n) {
    return {MoebiusMap::raw_tag{}, m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

ProjectivePoint apply(const MoebiusMap& m, const ProjectivePoint& p) {
    return {m.a * p.z0 + m.b * p.z1, m.c * p.z0 + m.d * p.z1};
}

Complex MoebiusMap::operator()(Complex z) const {
    return apply(*this, ProjectivePoint::from_complex(z)).to_complex();
}

MapAnalysis analyze(const MoebiusMap& m) {
    MapAnalysis out;
    out.trace_squared = m.trace_squared();
    const double tol = projective_tolerance();

    if (m.is_identity(tol)) {
        out.kind = MapKind::Identity;
        return out;
    }

    const Complex tr2 = out.trace_squared;
    const bool real_tr2 = std::abs(tr2.imag()) < tol;
    if (real_tr2 && std::abs(tr2.real() - 4.0) < tol) out.kind = MapKind::Parabolic;
    else if (real_tr2 && tr2.real() >= 0.0 && tr2.real() < 4.0) out.kind = MapKind::Elliptic;
    else out.kind = MapKind::Loxodromic;

    if (out.kind == MapKind::Loxodromic) {
        // |larger eigenvalue|; equals 2 acosh(|tr|/2) for real traces
        Complex disc = std::sqrt(tr2 - 4.0);
        Complex tr = m.trace();
        double lam = std::max(std::abs((tr + disc) / 2.0), std::abs((tr - disc) / 2.0));
        out.translation_length = 2.0 * std::log(lam);
    }

    // fixed points of c z^2 + (d - a) z - b = 0
    if (std::abs(m.c) < tol) {
        out.fixed_points.push_back(ProjectivePoint::infinity());
        if (out.kind != MapKind::Parabolic)
            out.fixed_points.emplace_back(m.b, m.d - m.a);
    } else {
        if (out.kind == MapKind::Parabolic) {
            out.fixed_points.emplace_back((m.a - m.d) / (2.0 * m.c), 1.0);
        } else {
            Complex disc = std::sqrt(out.trace_squared - 4.0);
            out.fixed_points.emplace_back((m.a - m.d + disc) / (2.0 * m.c), 1.0);
            out.fixed_points.emplace_back((m.a - m.d - disc) / (2.0 * m.c), 1.0);
        }
    }
    return out;
}

double hyperbolic_distance(Complex z, Complex w) {
    if (!(z.imag() > 0.0) || !(w.imag() > 0.0))
        throw std::domain_error("hyperbolic_distance needs points in the upper half-plane");
    double q = std::norm(z - w) / (2.0 * z.imag() * w.imag());
    return std::acosh(std::max(1.0, 1.0 + q));
}

const char* to_string(MapKind k) {
    switch (k) {
        case MapKind::Identity: return "identity";
        case MapKind::Elliptic: return "elliptic";
        case MapKind::Parabolic: return "parabolic";
        case MapKind::Loxodromic: return "loxodromic";
    }
    return "?";
}

}  // namespace bps
