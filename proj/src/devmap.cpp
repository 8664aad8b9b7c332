#include "bps/devmap.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "bps/surgery.hpp"

namespace bps {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// frame in which a real loxodromic map becomes z -> e^ell z (repelling fixed
// point at 0, attracting at infinity, upper half-plane preserved)
struct AxisFrame {
    MoebiusMap to_frame, from_frame;
    double ell = 0.0;
};

AxisFrame axis_frame(const MoebiusMap& m) {
    MapAnalysis an = analyze(m);
    if (an.kind != MapKind::Loxodromic || !m.has_real_entries())
        throw std::invalid_argument("axis_frame: need a real loxodromic map");
    for (const auto& fp : an.fixed_points)
        if (fp.is_infinity(1e-9))
            throw std::invalid_argument("axis_frame: conjugate the map to have finite fixed points");
    double fp0 = an.fixed_points[0].to_complex().real();
    double fp1 = an.fixed_points[1].to_complex().real();
    double start = 0.9 * fp0 + 0.1 * fp1;
    double moved = m(Complex(start, 0.0)).real();
    bool fp0_attracting = std::abs(moved - fp0) < std::abs(start - fp0);
    double p_rep = fp0_attracting ? fp1 : fp0;
    double p_att = fp0_attracting ? fp0 : fp1;
    double s = p_rep > p_att ? 1.0 : -1.0;  // keep det positive: H+ -> H+
    AxisFrame f;
    f.to_frame = MoebiusMap(s, -s * p_rep, 1.0, -p_att);
    f.from_frame = f.to_frame.inverse();
    f.ell = an.translation_length;
    return f;
}

double half_plane_side(const ProjectivePoint& p) {
    // sign of Im(z) in the affine chart; 0 on the real circle (incl. infinity)
    if (p.is_infinity(1e-12)) return 0.0;
    double im = p.to_complex().imag();
    if (std::abs(im) < 1e-12) return 0.0;
    return im > 0 ? 1.0 : -1.0;
}
}  // namespace

DevelopedArc DevelopedArc::from_samples(std::vector<ProjectivePoint> samples, double arclength,
                                        SurfaceGroupWord base_word) {
    if (samples.size() < 2) throw std::invalid_argument("developed arc needs at least 2 samples");
    for (size_t i = 0; i + 1 < samples.size(); ++i)
        if (projectively_equal(samples[i], samples[i + 1]))
            throw std::invalid_argument("consecutive arc samples coincide");
    DevelopedArc arc;
    arc.samples = std::move(samples);
    arc.arclength = arclength;
    arc.base_word = std::move(base_word);
    return arc;
}

DevelopedArc DevelopedArc::degenerate_at(ProjectivePoint p) {
    DevelopedArc arc;
    arc.samples = {p, p};
    arc.arclength = 0.0;
    arc.degenerate = true;
    return arc;
}

double sampled_arc_length(const std::vector<ProjectivePoint>& samples) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < samples.size(); ++i) {
        double s0 = half_plane_side(samples[i]), s1 = half_plane_side(samples[i + 1]);
        if (s0 == 0.0 || s1 == 0.0 || s0 != s1) return kInf;
        Complex z = samples[i].to_complex(), w = samples[i + 1].to_complex();
        if (s0 < 0) { z = std::conj(z); w = std::conj(w); }
        total += hyperbolic_distance(z, w);
    }
    return total;
}

DevelopedArc develop_geodesic_arc(const FuchsianRepresentation& rep, Complex start,
                                  double direction, double length, int n_samples) {
    (void)rep;  // the chart is the identity; the representation matters for translates
    if (!(start.imag() > 0.0))
        throw std::domain_error("develop_geodesic_arc: start must be in the upper half-plane");
    if (n_samples < 2) throw std::invalid_argument("develop_geodesic_arc: need >= 2 samples");
    if (length < 0.0) throw std::invalid_argument("develop_geodesic_arc: negative length");
    if (length < 1e-12) return DevelopedArc::degenerate_at(ProjectivePoint::from_complex(start));

    double y = start.imag();
    MoebiusMap to_start(std::sqrt(y), start.real() / std::sqrt(y), 0.0, 1.0 / std::sqrt(y));
    MoebiusMap chart = to_start * MoebiusMap::rotation_about_i(direction - M_PI / 2.0);

    std::vector<ProjectivePoint> samples;
    samples.reserve(static_cast<size_t>(n_samples));
    for (int k = 0; k < n_samples; ++k) {
        double t = length * k / (n_samples - 1);
        samples.push_back(apply(chart, ProjectivePoint::from_complex(Complex(0.0, std::exp(t)))));
    }
    return DevelopedArc::from_samples(std::move(samples), length);
}

namespace {

// every freely reduced nontrivial word up to the given length
void enumerate_ball(const FuchsianRepresentation& rep, int word_ball,
                    const std::function<void(const SurfaceGroupWord&, const MoebiusMap&)>& fn) {
    struct Node {
        SurfaceGroupWord w;
        MoebiusMap m;
        int last = 0;
    };
    std::vector<Node> layer{{SurfaceGroupWord{}, MoebiusMap::identity(), 0}};
    for (int depth = 0; depth < word_ball; ++depth) {
        std::vector<Node> next;
        for (const Node& node : layer) {
            for (int l = 1; l <= rep.rank(); ++l) {
                for (int sgn : {1, -1}) {
                    int letter = sgn * l;
                    if (node.last == -letter) continue;
                    Node nx;
                    nx.w.letters = node.w.letters;
                    nx.w.letters.push_back(letter);
                    nx.m = node.m * (letter > 0 ? rep.generator(l) : rep.generator(l).inverse());
                    nx.last = letter;
                    fn(nx.w, nx.m);
                    next.push_back(std::move(nx));
                }
            }
        }
        layer = std::move(next);
    }
}

}  // namespace

InjectivityCertificate is_injectively_developed(const DevelopedArc& arc,
                                                const FuchsianRepresentation& rep, int word_ball,
                                                double tol) {
    InjectivityCertificate cert;
    if (word_ball < 0) throw std::invalid_argument("word_ball must be >= 0");
    if (arc.degenerate) {
        cert.injective = false;
        cert.margin = 0.0;
        cert.witness = InjectivityCertificate::Witness{0, 1, {}};
        return cert;
    }
    const auto& s = arc.samples;
    const int n = static_cast<int>(s.size());

    // an arc that approaches itself within one sample spacing cannot be
    // certified injective at this resolution, whatever tol the caller asked
    double spacing = 0.0;
    for (int i = 0; i + 1 < n; ++i)
        spacing = std::max(spacing, chordal_distance(s[static_cast<size_t>(i)],
                                                     s[static_cast<size_t>(i + 1)]));
    tol = std::max(tol, 1.25 * spacing);

    // locality window: neighbours along the arc are allowed to be close
    int window = 1;
    while (window < n - 1) {
        double closest = kInf;
        for (int i = 0; i + window < n; ++i)
            closest = std::min(closest, chordal_distance(s[static_cast<size_t>(i)],
                                                         s[static_cast<size_t>(i + window)]));
        if (closest > 2.0 * tol) break;
        ++window;
    }

    double margin = kInf;
    std::optional<InjectivityCertificate::Witness> witness;
    for (int i = 0; i < n && !witness; ++i) {
        for (int j = i + window + 1; j < n; ++j) {
            double d = chordal_distance(s[static_cast<size_t>(i)], s[static_cast<size_t>(j)]);
            margin = std::min(margin, d);
            if (d <= tol) {
                witness = InjectivityCertificate::Witness{i, j, {}};
                break;
            }
        }
    }
    if (!witness) {
        enumerate_ball(rep, word_ball, [&](const SurfaceGroupWord& w, const MoebiusMap& m) {
            if (witness || m.is_identity(1e-9)) return;
            std::vector<ProjectivePoint> moved;
            moved.reserve(s.size());
            for (const auto& p : s) moved.push_back(apply(m, p));
            for (int i = 0; i < n && !witness; ++i)
                for (int j = 0; j < n; ++j) {
                    double d = chordal_distance(s[static_cast<size_t>(i)], moved[static_cast<size_t>(j)]);
                    margin = std::min(margin, d);
                    if (d <= tol) {
                        witness = InjectivityCertificate::Witness{i, j, w};
                        break;
                    }
                }
        });
    }

    cert.injective = !witness.has_value();
    cert.margin = (margin == kInf) ? 0.0 : margin;
    cert.witness = witness;
    double sys = systole_estimate(rep, std::max(1, word_ball));
    cert.small = std::isfinite(arc.arclength) && arc.arclength < sys;
    return cert;
}

int index_of_real_curve(const DevelopedArc& curve, const MoebiusMap& holonomy,
                        const ProjectivePoint& fixed_point, double tol) {
    if (!projectively_equal(apply(holonomy, fixed_point), fixed_point, 1e-6))
        throw std::invalid_argument("index_of_real_curve: the point is not fixed by the holonomy");
    const auto& s = curve.samples;
    if (s.size() < 3) throw std::invalid_argument("index_of_real_curve: curve too coarse");
    if (!projectively_equal(apply(holonomy, s.front()), s.back(), 1e-6))
        throw std::invalid_argument("index_of_real_curve: curve does not close up under the holonomy");

    // one fundamental segment: drop the last sample (identified with the first)
    const int n = static_cast<int>(s.size()) - 1;
    std::vector<char> inside(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        inside[static_cast<size_t>(i)] =
            chordal_distance(s[static_cast<size_t>(i)], fixed_point) < tol;

    int runs = 0;
    for (int i = 0; i < n; ++i) {
        int prev = (i + n - 1) % n;
        if (inside[static_cast<size_t>(i)] && !inside[static_cast<size_t>(prev)]) ++runs;
    }
    if (runs == 0 && inside[0]) return 1;  // the whole curve sits in the disk
    return runs;
}

// ---------------------------------------------------------------------------
// structure models

StructureModel StructureModel::uniformizing(FuchsianRepresentation rep) {
    StructureModel m;
    m.variant = Variant::Uniformizing;
    m.rep = std::move(rep);
    return m;
}

StructureModel StructureModel::grafted(FuchsianRepresentation rep, const SurfaceGroupWord& word,
                                       bool separating) {
    StructureModel m;
    m.variant = Variant::Grafted;
    m.graft_holonomy = evaluate_word(rep, word);
    MapAnalysis an = analyze(m.graft_holonomy);
    if (an.kind != MapKind::Loxodromic || !m.graft_holonomy.has_real_entries())
        throw std::invalid_argument("grafted model needs a loxodromic real geodesic");
    m.rep = std::move(rep);
    m.graft_word = word;
    m.graft_separating = separating;
    return m;
}

StructureModel StructureModel::bubbled(StructureModel inner, DevelopedArc arc, int word_ball,
                                       double tol) {
    InjectivityCertificate cert = is_injectively_developed(arc, inner.rep, word_ball, tol);
    if (!cert.injective)
        throw std::invalid_argument("bubbled model: the bubbling arc is not injectively developed");
    StructureModel m;
    m.variant = Variant::Bubbled;
    m.rep = inner.rep;
    m.inner = std::make_shared<StructureModel>(std::move(inner));
    m.bubble_arc = std::move(arc);
    return m;
}

DecompositionGraph StructureModel::combinatorial_graph() const {
    switch (variant) {
        case Variant::Uniformizing: return uniformizing_graph(rep.genus);
        case Variant::Grafted:
            return graft_separating ? grafted_graph_separating() : grafted_graph_nonseparating();
        case Variant::Bubbled: {
            DecompositionGraph base = inner->combinatorial_graph();
            std::string host;
            for (const auto& c : base.components)
                if (c.sign > 0) { host = c.id; break; }
            return bubble(base, ArcSpec::interior(host)).graph;
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<StructureModel::RealCurveData> StructureModel::real_curves(int n_samples) const {
    std::vector<RealCurveData> out;
    if (variant == Variant::Uniformizing) return out;
    if (variant == Variant::Grafted) {
        // in the axis frame the two real curves develop onto the positive and
        // negative reals, one fundamental segment r .. e^ell r each
        AxisFrame f = axis_frame(graft_holonomy);
        MapAnalysis an = analyze(graft_holonomy);
        int idx = 0;
        for (double side : {1.0, -1.0}) {
            std::vector<ProjectivePoint> samples;
            for (int k = 0; k < n_samples; ++k) {
                double t = static_cast<double>(k) / (n_samples - 1);
                samples.push_back(apply(f.from_frame, ProjectivePoint(side * std::exp(f.ell * t), 1.0)));
            }
            RealCurveData data{"l" + std::to_string(idx++),
                               DevelopedArc::from_samples(std::move(samples), kInf), graft_holonomy,
                               an.fixed_points[0], 0};
            out.push_back(std::move(data));
        }
        return out;
    }
    // Bubbled: the inner curves plus the bubble boundary wrapping RP^1 once
    out = inner->real_curves(n_samples);
    std::vector<ProjectivePoint> samples;
    for (int k = 0; k < n_samples; ++k) {
        double t = M_PI * k / (n_samples - 1);
        samples.push_back(ProjectivePoint(std::cos(t), std::sin(t)));
    }
    DecompositionGraph g = combinatorial_graph();
    std::string bubble_curve;
    for (const auto& l : g.curves)
        if (l.index == 1) bubble_curve = l.id;
    RealCurveData data{bubble_curve, DevelopedArc::from_samples(std::move(samples), kInf),
                       MoebiusMap::identity(), ProjectivePoint(0.0, 1.0), 1};
    out.push_back(std::move(data));
    return out;
}

// ---------------------------------------------------------------------------
// the non-isotopic bubbling scenario

namespace {

double smoothstep01(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return x * x * (3.0 - 2.0 * x);
}

// loop part: log r = tan(theta) * (-sin u) + ln(s') * smoothstep((u - pi)/pi),
// u from 0 to 2 pi, angle phi = pi/2 - u; then the geodesic tail to y_hat
std::vector<Complex> scenario_arc_frame(double theta, double phi_y, int n_loop, int n_tail) {
    std::vector<Complex> pts;
    double ln_sprime = 2.0 * std::tan(theta);
    for (int k = 0; k <= n_loop; ++k) {
        double u = 2.0 * M_PI * k / n_loop;
        double lnr = std::tan(theta) * (-std::sin(u)) + ln_sprime * smoothstep01((u - M_PI) / M_PI);
        pts.push_back(std::polar(std::exp(lnr), M_PI / 2.0 - u));
    }
    // tail: hyperbolic geodesic from i s' to e^{i phi_y}
    Complex zfrom = pts.back();
    Complex zto = std::polar(1.0, phi_y);
    for (int k = 1; k <= n_tail; ++k) {
        double t = static_cast<double>(k) / n_tail;
        // geodesic interpolation via the half-plane: circle orthogonal to R
        // through zfrom, zto (or a vertical ray when aligned)
        double x1 = zfrom.real(), y1 = zfrom.imag(), x2 = zto.real(), y2 = zto.imag();
        if (std::abs(x1 - x2) < 1e-12) {
            pts.push_back(Complex(x1, y1 * std::pow(y2 / y1, t)));
            continue;
        }
        double cx = (x2 * x2 + y2 * y2 - x1 * x1 - y1 * y1) / (2.0 * (x2 - x1));
        double r = std::hypot(x1 - cx, y1);
        double a1 = std::atan2(y1, x1 - cx), a2 = std::atan2(y2, x2 - cx);
        double a = a1 + (a2 - a1) * t;
        pts.push_back(Complex(cx + r * std::cos(a), r * std::sin(a)));
    }
    return pts;
}

std::vector<Complex> scenario_arc_zero_frame(double phi_y, int n) {
    // the full eta-circle plus the subarc to y_hat: sweep 2 pi + (pi/2 - phi_y)
    std::vector<Complex> pts;
    double total = 2.0 * M_PI + (M_PI / 2.0 - phi_y);
    for (int k = 0; k <= n; ++k) {
        double u = total * k / n;
        pts.push_back(std::polar(1.0, M_PI / 2.0 - u));
    }
    return pts;
}

}  // namespace

NonIsoBubReport scenario_nonisobub(const FuchsianRepresentation& rep,
                                   const SurfaceGroupWord& gamma_word, double eta_length,
                                   double theta, const ScenarioOptions& opt) {
    if (std::abs(theta) >= opt.theta_cap)
        throw std::domain_error("scenario_nonisobub: |theta| exceeds the construction bound");
    double sys = systole_estimate(rep, opt.systole_ball);
    if (!(eta_length > 0.0) || eta_length >= sys / 2.0)
        throw std::domain_error("scenario_nonisobub: eta must be shorter than half the systole");

    MoebiusMap gamma = evaluate_word(rep, gamma_word);
    AxisFrame frame = axis_frame(gamma);

    double phi_y = 2.0 * std::atan(std::exp(-eta_length));
    int n_loop = (opt.n_samples * 4) / 5, n_tail = opt.n_samples - n_loop;

    // all arcs live in the axis-frame chart, where rho(gamma) is the exact
    // dilation by e^ell and one fundamental annulus is 1 <= |z| < e^ell
    auto to_arc = [&](const std::vector<Complex>& frame_pts) {
        std::vector<ProjectivePoint> samples;
        samples.reserve(frame_pts.size());
        for (Complex z : frame_pts) samples.push_back(ProjectivePoint::from_complex(z));
        return DevelopedArc::from_samples(std::move(samples), kInf, gamma_word);
    };

    FuchsianRepresentation cyclic =
        FuchsianRepresentation::cyclic(MoebiusMap::diagonal(std::exp(frame.ell / 2.0)));

    NonIsoBubReport report;
    report.theta = theta;
    if (std::abs(theta) < 1e-12) {
        report.arc_plus = report.arc_minus = report.arc_zero =
            to_arc(scenario_arc_zero_frame(phi_y, opt.n_samples));
        report.zero = is_injectively_developed(report.arc_zero, cyclic, opt.word_ball, opt.tol);
        report.plus = report.minus = report.zero;
        report.orientation_plus = report.orientation_minus = 0;
        return report;
    }

    report.arc_plus = to_arc(scenario_arc_frame(theta, phi_y, n_loop, n_tail));
    report.arc_minus = to_arc(scenario_arc_frame(-theta, phi_y, n_loop, n_tail));
    report.arc_zero = to_arc(scenario_arc_zero_frame(phi_y, opt.n_samples));
    report.plus = is_injectively_developed(report.arc_plus, cyclic, opt.word_ball, opt.tol);
    report.minus = is_injectively_developed(report.arc_minus, cyclic, opt.word_ball, opt.tol);
    report.zero = is_injectively_developed(report.arc_zero, cyclic, opt.word_ball, opt.tol);
    // the delta-geodesic tangent at x_hat points along the eta-circle toward
    // y_hat; the arc leaves at angle -theta relative to it (frame coordinates)
    report.orientation_plus = theta > 0 ? -1 : 1;
    report.orientation_minus = -report.orientation_plus;
    return report;
}

// ---------------------------------------------------------------------------
// arc dumps

void write_arc_dump(const DevelopedArc& arc, std::ostream& out) {
    out << "# arclength=" << arc.arclength << " word=" << arc.base_word.str() << "\n";
    out.precision(17);
    for (const auto& p : arc.samples)
        out << p.z0.real() << ' ' << p.z0.imag() << ' ' << p.z1.real() << ' ' << p.z1.imag()
            << '\n';
}

DevelopedArc read_arc_dump(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# arclength=", 0) != 0)
        throw std::invalid_argument("arc dump: missing header");
    std::istringstream hdr(line.substr(std::string("# arclength=").size()));
    double arclength;
    hdr >> arclength;
    std::string word_part;
    std::string rest;
    std::getline(hdr, rest);
    auto at = rest.find("word=");
    SurfaceGroupWord word;
    if (at != std::string::npos) word = SurfaceGroupWord::parse(rest.substr(at + 5));
    std::vector<ProjectivePoint> samples;
    double a, b, c, d;
    while (in >> a >> b >> c >> d) samples.emplace_back(Complex(a, b), Complex(c, d));
    return DevelopedArc::from_samples(std::move(samples), arclength, std::move(word));
}

}  // namespace bps
