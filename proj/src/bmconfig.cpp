#include "bps/bmconfig.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace bps {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCircleTol = 1e-9;

// pairwise scan of two sample sets; pairs where both points sit within
// `base_exclusion` of `base` are the allowed common point
std::optional<InjectivityCertificate::Witness> scan_disjoint(
    const std::vector<ProjectivePoint>& a, const std::vector<ProjectivePoint>& b, double tol,
    const std::optional<ProjectivePoint>& base, double base_exclusion) {
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j) {
            if (chordal_distance(a[i], b[j]) > tol) continue;
            if (base && chordal_distance(a[i], *base) < base_exclusion &&
                chordal_distance(b[j], *base) < base_exclusion)
                continue;
            return InjectivityCertificate::Witness{static_cast<int>(i), static_cast<int>(j), {}};
        }
    }
    return std::nullopt;
}

bool contained_in(const std::vector<ProjectivePoint>& inner,
                  const std::vector<ProjectivePoint>& outer, double reach) {
    for (const auto& p : inner) {
        double best = kInf;
        for (const auto& q : outer) best = std::min(best, chordal_distance(p, q));
        if (best > reach) return false;
    }
    return true;
}

double sample_spacing(const std::vector<ProjectivePoint>& s) {
    double worst = 0.0;
    for (size_t i = 0; i + 1 < s.size(); ++i)
        worst = std::max(worst, chordal_distance(s[i], s[i + 1]));
    return worst;
}

void for_ball(const FuchsianRepresentation& rep, int word_ball,
              const std::function<void(const SurfaceGroupWord&, const MoebiusMap&)>& fn) {
    struct Node {
        std::vector<int> w;
        MoebiusMap m;
        int last = 0;
    };
    std::vector<Node> layer{{{}, MoebiusMap::identity(), 0}};
    for (int depth = 0; depth < word_ball; ++depth) {
        std::vector<Node> next;
        for (const Node& node : layer) {
            for (int l = 1; l <= rep.rank(); ++l) {
                for (int sgn : {1, -1}) {
                    int letter = sgn * l;
                    if (node.last == -letter) continue;
                    Node nx;
                    nx.w = node.w;
                    nx.w.push_back(letter);
                    nx.m = node.m * (letter > 0 ? rep.generator(l) : rep.generator(l).inverse());
                    nx.last = letter;
                    SurfaceGroupWord word;
                    word.letters = nx.w;
                    fn(word, nx.m);
                    next.push_back(std::move(nx));
                }
            }
        }
        layer = std::move(next);
    }
}

}  // namespace

double half_plane_path_distance(Complex x, Complex y) {
    if (std::abs(x.imag()) < kCircleTol || std::abs(y.imag()) < kCircleTol)
        throw std::domain_error("half_plane_path_distance: point on the real circle");
    if ((x.imag() > 0) != (y.imag() > 0)) return kInf;
    if (x.imag() < 0) { x = std::conj(x); y = std::conj(y); }
    return hyperbolic_distance(x, y);
}

SafetyConstants safety_constants(const FuchsianRepresentation& rep, Complex x, Complex y,
                                 int word_ball) {
    if (std::abs(x.imag()) < kCircleTol)
        throw std::domain_error("safety_constants: x sits on the real circle");
    if (word_ball < 1) throw std::invalid_argument("safety_constants: word_ball must be >= 1");

    double K = kInf;
    if (std::abs(y.imag()) >= kCircleTol) {
        K = half_plane_path_distance(x, y);
        for_ball(rep, word_ball, [&](const SurfaceGroupWord&, const MoebiusMap& m) {
            Complex moved = m(y);
            if (std::abs(moved.imag()) < kCircleTol) return;
            K = std::min(K, half_plane_path_distance(x, moved));
        });
    }

    SafetyConstants out;
    out.sys = systole_estimate(rep, word_ball);
    out.K = K;
    out.A = std::min(out.sys, K / 3.0);
    out.simply_developed = K > kCircleTol;
    return out;
}

BMConfiguration BMConfiguration::make(DevelopedArc bubble_boundary, DevelopedArc twin_first,
                                      DevelopedArc twin_second, double tol) {
    if (!projectively_equal(twin_first.samples.front(), twin_second.samples.front(), tol))
        throw std::invalid_argument("twin pair: arcs do not share the base point");
    // the two twins overlap once developed: equal as sample sets
    double reach = 2.0 * std::max({tol, sample_spacing(twin_first.samples),
                                   sample_spacing(twin_second.samples)});
    if (!contained_in(twin_first.samples, twin_second.samples, reach) ||
        !contained_in(twin_second.samples, twin_first.samples, reach))
        throw std::invalid_argument("twin pair: developed images differ as sets");
    ProjectivePoint base = twin_first.samples.front();
    return BMConfiguration{std::move(bubble_boundary), std::move(twin_first),
                           std::move(twin_second), base};
}

StandardCheck check_standard(const BMConfiguration& cfg, const FuchsianRepresentation& rep,
                             int word_ball, double tol) {
    StandardCheck out;
    double spacing = std::max({tol, sample_spacing(cfg.bubble_boundary.samples),
                               sample_spacing(cfg.twin_first.samples),
                               sample_spacing(cfg.twin_second.samples)});
    double base_exclusion = 8.0 * spacing;
    // intersections are only decidable down to the sampling resolution
    tol = std::max(tol, 1.25 * spacing);

    // clause (ii): the twin pair runs entirely inside the bubble boundary
    if (contained_in(cfg.twin_first.samples, cfg.bubble_boundary.samples, 2.0 * spacing) &&
        contained_in(cfg.twin_second.samples, cfg.bubble_boundary.samples, 2.0 * spacing)) {
        out.standard = true;
        out.via_containment = true;
        return out;
    }

    // clause (i): surface-level and developed-level intersections reduce to the base
    for (const DevelopedArc* twin : {&cfg.twin_first, &cfg.twin_second}) {
        auto w = scan_disjoint(twin->samples, cfg.bubble_boundary.samples, tol, cfg.base,
                               base_exclusion);
        if (w) {
            out.witness = w;
            return out;
        }
    }
    bool failed = false;
    for_ball(rep, word_ball, [&](const SurfaceGroupWord& word, const MoebiusMap& m) {
        if (failed || m.is_identity(1e-9)) return;
        std::vector<ProjectivePoint> moved;
        moved.reserve(cfg.bubble_boundary.samples.size());
        for (const auto& p : cfg.bubble_boundary.samples) moved.push_back(apply(m, p));
        for (const DevelopedArc* twin : {&cfg.twin_first, &cfg.twin_second}) {
            auto w = scan_disjoint(twin->samples, moved, tol, std::nullopt, 0.0);
            if (w) {
                w->word = word;
                out.witness = w;
                failed = true;
                return;
            }
        }
    });
    out.standard = !failed;
    return out;
}

const char* to_string(VisibilityVerdict v) {
    switch (v) {
        case VisibilityVerdict::VisibleCertified: return "visible_certified";
        case VisibilityVerdict::VisibleByInjectivity: return "visible_by_injectivity";
        case VisibilityVerdict::NotVisible: return "not_visible";
        case VisibilityVerdict::Unknown: return "unknown";
    }
    return "?";
}

VisibilityVerdict check_visible(const BMConfiguration& cfg, const StructureModel& model,
                                int word_ball) {
    if (model.variant != StructureModel::Variant::Bubbled)
        throw std::invalid_argument("check_visible: debubbling is defined for bubbled models only");

    bool over_uniformizing = model.inner->variant == StructureModel::Variant::Uniformizing;
    if (over_uniformizing) {
        // crossing the real locus: the continuation on the debubbled hyperbolic
        // surface would have to develop into the limit set
        bool upper = false, lower = false;
        for (const DevelopedArc* twin : {&cfg.twin_first, &cfg.twin_second}) {
            for (const auto& p : twin->samples) {
                Complex z = p.to_complex();
                if (p.is_infinity(1e-9) || std::abs(z.imag()) < kCircleTol) continue;
                (z.imag() > 0 ? upper : lower) = true;
            }
        }
        if (upper && lower) return VisibilityVerdict::NotVisible;
    }

    double twin_len = sampled_arc_length(cfg.twin_first.samples);
    double sys = systole_estimate(model.rep, std::max(1, word_ball));
    if (std::isfinite(twin_len) && twin_len < sys) return VisibilityVerdict::VisibleCertified;
    if (over_uniformizing) return VisibilityVerdict::VisibleByInjectivity;
    return VisibilityVerdict::Unknown;
}

double safe_move_bound_single(const SafetyConstants& consts) {
    if (!(consts.K > kCircleTol))
        throw std::domain_error("safe_move_bound: configuration is not simply developed (K = 0)");
    return std::min(consts.sys, consts.K);
}

double safe_move_bound_double(const SafetyConstants& consts) {
    if (!(consts.K > kCircleTol))
        throw std::domain_error("safe_move_bound: configuration is not simply developed (K = 0)");
    return std::min(consts.sys, consts.K / 3.0);
}

}  // namespace bps
