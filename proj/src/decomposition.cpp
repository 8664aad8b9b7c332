#include "bps/decomposition.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <sstream>

namespace bps {

int BranchDivisor::ord() const { return std::accumulate(orders.begin(), orders.end(), 0); }

int ComponentRecord::branch_total() const {
    return std::accumulate(branch_orders.begin(), branch_orders.end(), 0);
}

int DecompositionGraph::ord() const {
    int k = 0;
    for (const auto& c : components) k += c.branch_total();
    return k;
}

const ComponentRecord* DecompositionGraph::find_component(const std::string& id) const {
    for (const auto& c : components)
        if (c.id == id) return &c;
    return nullptr;
}

const RealCurveRecord* DecompositionGraph::find_curve(const std::string& id) const {
    for (const auto& c : curves)
        if (c.id == id) return &c;
    return nullptr;
}

bool ValidationReport::has_rule(const std::string& rule) const {
    for (const auto& v : violations)
        if (v.rule == rule) return true;
    return false;
}

const char* to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::PosPos: return "PosPos";
        case CaseLabel::NegNeg: return "NegNeg";
        case CaseLabel::Mixed: return "Mixed";
    }
    return "?";
}

namespace {

// index-based view of a structurally verified graph
struct Indexed {
    const DecompositionGraph& g;
    std::map<std::string, int> comp_of;
    std::map<std::string, int> curve_of;
    std::vector<std::vector<int>> incident;  // curve indices per component

    explicit Indexed(const DecompositionGraph& graph) : g(graph) {
        for (size_t i = 0; i < g.components.size(); ++i) {
            const auto& c = g.components[i];
            if (!comp_of.emplace(c.id, static_cast<int>(i)).second)
                throw std::invalid_argument("duplicate component id: " + c.id);
            if (c.sign != 1 && c.sign != -1)
                throw std::invalid_argument("component sign must be +1 or -1: " + c.id);
            for (int o : c.branch_orders)
                if (o < 1) throw std::invalid_argument("branch order < 1 in " + c.id);
        }
        incident.resize(g.components.size());
        for (size_t k = 0; k < g.curves.size(); ++k) {
            const auto& l = g.curves[k];
            if (!curve_of.emplace(l.id, static_cast<int>(k)).second)
                throw std::invalid_argument("duplicate curve id: " + l.id);
            if (l.index < 0) throw std::invalid_argument("negative index on curve " + l.id);
            auto li = comp_of.find(l.left), ri = comp_of.find(l.right);
            if (li == comp_of.end())
                throw std::invalid_argument("curve " + l.id + " references missing component " + l.left);
            if (ri == comp_of.end())
                throw std::invalid_argument("curve " + l.id + " references missing component " + l.right);
            incident[static_cast<size_t>(li->second)].push_back(static_cast<int>(k));
            if (ri->second != li->second)
                incident[static_cast<size_t>(ri->second)].push_back(static_cast<int>(k));
        }
        // boundary lists must match incidences exactly (as multisets)
        for (size_t i = 0; i < g.components.size(); ++i) {
            std::multiset<std::string> declared(g.components[i].boundary.begin(),
                                                g.components[i].boundary.end());
            std::multiset<std::string> actual;
            for (int k : incident[i]) {
                const auto& l = g.curves[static_cast<size_t>(k)];
                actual.insert(l.id);
                if (l.left == l.right) actual.insert(l.id);
            }
            if (declared != actual)
                throw std::invalid_argument("boundary list of " + g.components[i].id +
                                            " does not match incident curves");
        }
    }

    int n() const { return static_cast<int>(g.components.size()); }
    int m() const { return static_cast<int>(g.curves.size()); }
    int left(int k) const { return comp_of.at(g.curves[static_cast<size_t>(k)].left); }
    int right(int k) const { return comp_of.at(g.curves[static_cast<size_t>(k)].right); }
    int degree(int i) const { return static_cast<int>(incident[static_cast<size_t>(i)].size()); }

    // connected components of the incidence graph after deleting curve `skip`
    std::vector<int> parts(int skip) const {
        std::vector<int> part(static_cast<size_t>(n()), -1);
        int next = 0;
        for (int s = 0; s < n(); ++s) {
            if (part[static_cast<size_t>(s)] != -1) continue;
            part[static_cast<size_t>(s)] = next;
            std::vector<int> stack{s};
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int k : incident[static_cast<size_t>(u)]) {
                    if (k == skip) continue;
                    for (int v : {left(k), right(k)}) {
                        if (part[static_cast<size_t>(v)] == -1) {
                            part[static_cast<size_t>(v)] = next;
                            stack.push_back(v);
                        }
                    }
                }
            }
            ++next;
        }
        return part;
    }

    bool connected() const {
        auto p = parts(-1);
        return std::all_of(p.begin(), p.end(), [](int x) { return x == 0; });
    }

    // capping criterion: non-essential iff deleting the curve separates the
    // incidence graph and one side is a disk-subsurface (total euler 1)
    bool essential_derived(int k) const {
        auto part = parts(k);
        int pl = part[static_cast<size_t>(left(k))], pr = part[static_cast<size_t>(right(k))];
        if (pl == pr) return true;
        int chi_l = 0, chi_r = 0;
        for (int i = 0; i < n(); ++i) {
            if (part[static_cast<size_t>(i)] == pl) chi_l += g.components[static_cast<size_t>(i)].euler;
            if (part[static_cast<size_t>(i)] == pr) chi_r += g.components[static_cast<size_t>(i)].euler;
        }
        return chi_l != 1 && chi_r != 1;
    }

    int sum_index(int i) const {
        int s = 0;
        for (int k : incident[static_cast<size_t>(i)]) {
            const auto& l = g.curves[static_cast<size_t>(k)];
            s += l.index;
            if (l.left == l.right) s += l.index;
        }
        return s;
    }

    // sign(C) * (chi(C) + k_C - sum of boundary indices)
    int eu_derived(int i) const {
        const auto& c = g.components[static_cast<size_t>(i)];
        return c.sign * (c.euler + c.branch_total() - sum_index(i));
    }
};

struct Sub {
    std::vector<int> comps;
    std::vector<int> internal_curves;
    std::vector<int> boundary_curves;
};

// connected subsurfaces (unions of components along their common curves)
std::vector<Sub> connected_subsurfaces(const Indexed& ix) {
    std::vector<Sub> out;
    const int n = ix.n();
    const int m = ix.m();
    std::vector<int> stack;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        // connectivity by flood fill over the mask, edges scanned directly
        unsigned seen = mask & (~mask + 1u);  // lowest set bit
        stack.assign(1, static_cast<int>(__builtin_ctz(seen)));
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int k : ix.incident[static_cast<size_t>(u)]) {
                int v = ix.left(k) == u ? ix.right(k) : ix.left(k);
                unsigned bit = 1u << v;
                if ((mask & bit) && !(seen & bit)) {
                    seen |= bit;
                    stack.push_back(v);
                }
            }
        }
        if (seen != mask) continue;

        Sub s;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) s.comps.push_back(i);
        for (int k = 0; k < m; ++k) {
            bool inl = mask >> ix.left(k) & 1u, inr = mask >> ix.right(k) & 1u;
            if (inl && inr) s.internal_curves.push_back(k);
            else if (inl || inr) s.boundary_curves.push_back(k);
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string comp_desc(const ComponentRecord& c) {
    return c.id + " (sign " + (c.sign > 0 ? "+" : "-") + ", euler " + std::to_string(c.euler) + ")";
}

}  // namespace

ValidationReport validate(const DecompositionGraph& g) {
    if (g.genus < 2) throw std::invalid_argument("genus must be >= 2");
    if (g.components.empty()) throw std::invalid_argument("graph has no components");
    if (g.components.size() > 16)
        throw std::invalid_argument("more than 16 components (subsurface scan guard)");
    Indexed ix(g);

    ValidationReport rep;
    auto violate = [&](const std::string& rule, const std::string& msg) {
        rep.violations.push_back({rule, msg});
    };

    // V0: type-level consistency of each record and global connectivity
    for (int i = 0; i < ix.n(); ++i) {
        const auto& c = g.components[static_cast<size_t>(i)];
        int deg = ix.degree(i);
        if (c.euler > 1) violate("V0", comp_desc(c) + ": euler > 1");
        if (c.euler == 1 && deg != 1) violate("V0", comp_desc(c) + ": disk needs exactly one boundary curve");
        int two_genus = 2 - c.euler - deg;
        if (two_genus < 0 || two_genus % 2 != 0)
            violate("V0", comp_desc(c) + ": no nonnegative integer genus fits euler and boundary");
        if (ix.n() > 1 && deg == 0) violate("V0", comp_desc(c) + ": isolated component");
    }
    if (!ix.connected()) violate("V0", "incidence structure is not connected");

    // V1 orientation
    for (const auto& l : g.curves) {
        if (g.find_component(l.left)->sign != 1)
            violate("V1", "curve " + l.id + ": left component is not positive");
        if (g.find_component(l.right)->sign != -1)
            violate("V1", "curve " + l.id + ": right component is not negative");
    }

    // V2 Euler sum
    int chi_total = 0;
    for (const auto& c : g.components) chi_total += c.euler;
    if (chi_total != 2 - 2 * g.genus)
        violate("V2", "component Euler characteristics sum to " + std::to_string(chi_total) +
                          ", expected " + std::to_string(2 - 2 * g.genus));

    // V3 parity: ord even, 2 chi(sigma^-) = k+ - k-
    int kp = 0, km = 0, chi_neg = 0;
    for (const auto& c : g.components) {
        if (c.sign > 0) kp += c.branch_total();
        else { km += c.branch_total(); chi_neg += c.euler; }
    }
    if ((kp + km) % 2 != 0) violate("V3", "total branching order is odd");
    if (2 * chi_neg != kp - km)
        violate("V3", "2 chi(sigma^-) = " + std::to_string(2 * chi_neg) + " but k+ - k- = " +
                          std::to_string(kp - km));

    // V4 faithfulness
    for (const auto& l : g.curves) {
        if (l.holonomy == HolonomyType::Trivial && l.index < 1)
            violate("V4", "curve " + l.id + ": trivial holonomy with index 0");
        if (l.essential != (l.holonomy == HolonomyType::Loxodromic))
            violate("V4", "curve " + l.id + ": essential flag and holonomy type disagree");
    }

    // derived data, computed once and reused by every later rule
    std::vector<bool> ess(static_cast<size_t>(ix.m()));
    std::vector<int> eu(static_cast<size_t>(ix.n()));
    for (int k = 0; k < ix.m(); ++k) {
        ess[static_cast<size_t>(k)] = ix.essential_derived(k);
        rep.derived_essential[g.curves[static_cast<size_t>(k)].id] = ess[static_cast<size_t>(k)];
    }
    for (int i = 0; i < ix.n(); ++i) {
        eu[static_cast<size_t>(i)] = ix.eu_derived(i);
        rep.derived_euler_class[g.components[static_cast<size_t>(i)].id] = eu[static_cast<size_t>(i)];
    }

    // V5 disks: boundary index = k_D + 1
    for (int i = 0; i < ix.n(); ++i) {
        const auto& c = g.components[static_cast<size_t>(i)];
        if (!c.is_disk() || ix.degree(i) != 1) continue;
        const auto& l = g.curves[static_cast<size_t>(ix.incident[static_cast<size_t>(i)][0])];
        if (l.index != c.branch_total() + 1)
            violate("V5", "disk " + c.id + ": boundary curve " + l.id + " has index " +
                              std::to_string(l.index) + ", expected " +
                              std::to_string(c.branch_total() + 1));
    }

    // V6 unbranched non-disk components
    for (int i = 0; i < ix.n(); ++i) {
        const auto& c = g.components[static_cast<size_t>(i)];
        if (c.branch_total() != 0 || c.is_disk()) continue;
        for (int k : ix.incident[static_cast<size_t>(i)]) {
            const auto& l = g.curves[static_cast<size_t>(k)];
            if (l.index != 0)
                violate("V6", "unbranched component " + c.id + ": boundary curve " + l.id +
                                  " has positive index");
        }
        if (c.sign < 0 && c.euler != 0)
            violate("V6", comp_desc(c) + ": unbranched negative non-disk must be an annulus");
    }

    // V7 stored vs derived essentiality
    for (const auto& l : g.curves) {
        bool derived = rep.derived_essential.at(l.id);
        if (l.essential != derived)
            violate("V7", "curve " + l.id + ": stored essential=" +
                              (l.essential ? "true" : "false") + " but capping derives " +
                              (derived ? "true" : "false"));
    }

    // V8 / V12 over connected subsurfaces
    for (const Sub& s : connected_subsurfaces(ix)) {
        int chi = 0, eu_sum = 0;
        for (int i : s.comps) {
            chi += g.components[static_cast<size_t>(i)].euler;
            eu_sum += eu[static_cast<size_t>(i)];
        }
        bool all_ess = true, all_noness = !s.boundary_curves.empty();
        for (int k : s.boundary_curves) {
            if (ess[static_cast<size_t>(k)]) all_noness = false;
            else all_ess = false;
        }
        if (all_ess && eu_sum != chi) {
            std::string ids;
            for (int i : s.comps) ids += (ids.empty() ? "" : "+") + g.components[static_cast<size_t>(i)].id;
            violate("V8", "incompressible subsurface " + ids + ": Euler class " +
                              std::to_string(eu_sum) + " != chi " + std::to_string(chi));
        }
        int two_genus = 2 - chi - static_cast<int>(s.boundary_curves.size());
        if (all_noness && two_genus == 0 && eu_sum != 0) {
            std::string ids;
            for (int i : s.comps) ids += (ids.empty() ? "" : "+") + g.components[static_cast<size_t>(i)].id;
            violate("V12", "pi1-trivially included subsurface " + ids +
                               ": Euler class " + std::to_string(eu_sum) + " != 0");
        }
    }

    // V9 adjacency of positive-index curves
    for (int k = 0; k < ix.m(); ++k) {
        const auto& l = g.curves[static_cast<size_t>(k)];
        if (l.index < 1) continue;
        const auto& cl = g.components[static_cast<size_t>(ix.left(k))];
        const auto& cr = g.components[static_cast<size_t>(ix.right(k))];
        if (cl.branch_total() == 0 && cr.branch_total() == 0)
            violate("V9", "curve " + l.id + " has positive index but neither side is branched");
        if (cl.is_disk() && cr.is_disk())
            violate("V9", "curve " + l.id + ": both sides are disks");
    }

    // ord = 2 extras
    if (g.ord() == 2) {
        for (const auto& l : g.curves)
            if (l.index > 1)
                violate("V10", "curve " + l.id + ": index " + std::to_string(l.index) +
                                   " > 1 with two branch points");
        for (const auto& c : g.components)
            if (c.is_disk() && c.branch_total() > 0)
                violate("V11", "disk " + c.id + " is branched");
    }

    // nested disk-tree candidates are flagged, never judged
    for (int i = 0; i < ix.n(); ++i) {
        int noness = 0;
        for (int k : ix.incident[static_cast<size_t>(i)])
            if (!rep.derived_essential.at(g.curves[static_cast<size_t>(k)].id)) ++noness;
        if (noness >= 2) rep.nesting_ambiguous = true;
    }

    rep.valid = rep.violations.empty();
    return rep;
}

namespace {

struct ClassifyCtx {
    const DecompositionGraph& g;
    const Indexed ix;
    std::vector<bool> ess;  // derived essentiality per curve
    std::vector<std::string> problems;

    explicit ClassifyCtx(const DecompositionGraph& graph) : g(graph), ix(graph) {
        for (int k = 0; k < ix.m(); ++k) ess.push_back(ix.essential_derived(k));
    }

    bool incompressible(int i) const {
        for (int k : ix.incident[static_cast<size_t>(i)])
            if (!ess[static_cast<size_t>(k)]) return false;
        return true;
    }
    void expect(bool cond, const std::string& what) {
        if (!cond) problems.push_back(what);
    }
    void expect_spectators(const std::set<int>& special) {
        for (int i = 0; i < ix.n(); ++i) {
            if (special.count(i)) continue;
            const auto& c = g.components[static_cast<size_t>(i)];
            expect(c.branch_total() == 0, "component " + c.id + " outside the branched core is branched");
            if (c.sign > 0)
                expect(incompressible(i), "positive component " + c.id + " is compressible");
            else
                expect(c.euler == 0 && incompressible(i),
                       "negative component " + c.id + " is not an incompressible annulus");
        }
    }
    void expect_other_curves_zero(const std::set<int>& special) {
        for (int k = 0; k < ix.m(); ++k) {
            if (special.count(k)) continue;
            expect(g.curves[static_cast<size_t>(k)].index == 0,
                   "curve " + g.curves[static_cast<size_t>(k)].id + " should have index 0");
        }
    }
};

}  // namespace

CaseLabel classify_k2(const DecompositionGraph& g) {
    if (g.ord() != 2) throw std::invalid_argument("classify_k2 needs branching order exactly 2");
    if (!validate(g).valid) throw std::invalid_argument("classify_k2 needs a validate-passing graph");

    ClassifyCtx cx(g);
    int kp = 0, km = 0;
    for (const auto& c : g.components)
        (c.sign > 0 ? kp : km) += c.branch_total();

    CaseLabel label;
    if (kp == 2) {
        label = CaseLabel::PosPos;
        std::vector<int> disks;
        for (int i = 0; i < cx.ix.n(); ++i) {
            const auto& c = g.components[static_cast<size_t>(i)];
            if (c.sign < 0 && c.is_disk()) disks.push_back(i);
        }
        cx.expect(disks.size() == 1, "expected a unique negative disk, found " +
                                         std::to_string(disks.size()));
        if (disks.size() == 1) {
            int d = disks[0];
            cx.expect(g.components[static_cast<size_t>(d)].branch_total() == 0, "the negative disk is branched");
            int lk = cx.ix.incident[static_cast<size_t>(d)][0];
            const auto& l = g.curves[static_cast<size_t>(lk)];
            int p = cx.ix.left(lk);
            cx.expect(g.components[static_cast<size_t>(p)].branch_total() == 2,
                      "the positive component adjacent to the disk does not hold both branch points");
            cx.expect(l.index == 1 && !cx.ess[static_cast<size_t>(lk)],
                      "the disk's curve is not a non-essential index-1 curve");
            cx.expect_spectators({d, p});
            cx.expect_other_curves_zero({lk});
        }
    } else if (km == 2) {
        label = CaseLabel::NegNeg;
        std::vector<int> cores;
        for (int i = 0; i < cx.ix.n(); ++i) {
            const auto& c = g.components[static_cast<size_t>(i)];
            if (c.sign < 0 && c.branch_total() == 2) cores.push_back(i);
        }
        cx.expect(cores.size() == 1, "expected one negative component holding both branch points");
        if (cores.size() == 1) {
            int nc = cores[0];
            cx.expect(g.components[static_cast<size_t>(nc)].euler == -1,
                      "the branched negative component must have Euler characteristic -1");
            std::vector<int> noness;
            std::set<int> special_curves, special_comps{nc};
            for (int k : cx.ix.incident[static_cast<size_t>(nc)]) {
                const auto& l = g.curves[static_cast<size_t>(k)];
                if (!cx.ess[static_cast<size_t>(k)]) {
                    noness.push_back(k);
                    cx.expect(l.index == 1 && l.holonomy == HolonomyType::Trivial,
                              "non-essential boundary of the branched component must be trivial of index 1");
                } else {
                    cx.expect(l.index == 0 && l.holonomy == HolonomyType::Loxodromic,
                              "essential boundary of the branched component must be loxodromic of index 0");
                }
            }
            cx.expect(noness.size() <= 1, "more than one non-essential boundary on the branched component");
            if (noness.size() == 1) {
                int lk = noness[0];
                special_curves.insert(lk);
                int d = cx.ix.left(lk);
                const auto& c = g.components[static_cast<size_t>(d)];
                cx.expect(c.sign > 0 && c.is_disk() && c.branch_total() == 0,
                          "the component beyond the non-essential boundary is not a positive unbranched disk");
                special_comps.insert(d);
            }
            cx.expect_spectators(special_comps);
            cx.expect_other_curves_zero(special_curves);
        }
    } else if (kp == 1 && km == 1) {
        label = CaseLabel::Mixed;
        int p = -1, nn = -1;
        for (int i = 0; i < cx.ix.n(); ++i) {
            const auto& c = g.components[static_cast<size_t>(i)];
            if (c.branch_total() == 1) (c.sign > 0 ? p : nn) = i;
        }
        cx.expect(p >= 0 && nn >= 0, "branch points must sit in one positive and one negative component");
        if (p >= 0 && nn >= 0) {
            cx.expect(cx.incompressible(p), "the positive branched component is compressible");
            std::vector<int> ones;
            for (int k : cx.ix.incident[static_cast<size_t>(p)])
                if (g.curves[static_cast<size_t>(k)].index == 1) ones.push_back(k);
            cx.expect(ones.size() == 1,
                      "the positive branched component needs exactly one index-1 boundary curve");
            std::set<int> special_curves;
            if (ones.size() == 1) {
                int lk = ones[0];
                special_curves.insert(lk);
                const auto& l = g.curves[static_cast<size_t>(lk)];
                cx.expect(cx.ess[static_cast<size_t>(lk)] && l.holonomy == HolonomyType::Loxodromic,
                          "the index-1 curve must be essential with loxodromic holonomy");
                cx.expect(cx.ix.left(lk) == p && cx.ix.right(lk) == nn,
                          "the branched components must be adjacent along the index-1 curve");
            }
            cx.expect(g.components[static_cast<size_t>(nn)].euler == 0 && cx.incompressible(nn),
                      "the negative branched component is not an incompressible annulus");
            cx.expect_spectators({p, nn});
            cx.expect_other_curves_zero(special_curves);
        }
    } else {
        throw classification_mismatch("branching signature (" + std::to_string(kp) + "," +
                                      std::to_string(km) + ") matches no k=2 case");
    }

    if (!cx.problems.empty()) {
        std::string msg = std::string("graph classifies as ") + to_string(label) +
                          " but fails its clause:";
        for (const auto& p : cx.problems) msg += "\n  - " + p;
        throw classification_mismatch(msg);
    }
    return label;
}

// ---------------------------------------------------------------------------
// canonical form

namespace {

std::vector<int> encoding_under(const DecompositionGraph& g, const std::vector<int>& perm) {
    // perm[new] = old
    std::vector<int> pos(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) pos[static_cast<size_t>(perm[i])] = static_cast<int>(i);
    std::map<std::string, int> comp_idx;
    for (size_t i = 0; i < g.components.size(); ++i) comp_idx[g.components[i].id] = static_cast<int>(i);

    std::vector<int> enc;
    enc.push_back(g.genus);
    for (int old : perm) {
        const auto& c = g.components[static_cast<size_t>(old)];
        enc.push_back(c.sign);
        enc.push_back(c.euler);
        std::vector<int> orders = c.branch_orders;
        std::sort(orders.begin(), orders.end());
        enc.push_back(static_cast<int>(orders.size()));
        for (int o : orders) enc.push_back(o);
    }
    std::vector<std::array<int, 5>> curves;
    for (const auto& l : g.curves)
        curves.push_back({pos[static_cast<size_t>(comp_idx.at(l.left))],
                          pos[static_cast<size_t>(comp_idx.at(l.right))], l.index,
                          l.essential ? 1 : 0, l.holonomy == HolonomyType::Loxodromic ? 1 : 0});
    std::sort(curves.begin(), curves.end());
    for (const auto& t : curves)
        enc.insert(enc.end(), t.begin(), t.end());
    return enc;
}

std::vector<int> minimal_encoding(const DecompositionGraph& g) {
    std::vector<int> perm(g.components.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    do {
        auto enc = encoding_under(g, perm);
        if (best.empty() || enc < best) best = std::move(enc);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

std::string canonical_encoding(const DecompositionGraph& g) {
    std::ostringstream out;
    for (int v : minimal_encoding(g)) out << v << ',';
    return out.str();
}

bool isomorphic(const DecompositionGraph& a, const DecompositionGraph& b) {
    if (a.genus != b.genus || a.components.size() != b.components.size() ||
        a.curves.size() != b.curves.size())
        return false;
    return minimal_encoding(a) == minimal_encoding(b);
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

struct Shape {
    int genus = 2;
    std::vector<int> signs;
    std::vector<int> eulers;
    std::vector<std::vector<int>> branch;
    std::vector<std::pair<int, int>> ends;  // (positive comp, negative comp) per curve
};

DecompositionGraph build_graph(const Shape& s, const std::vector<int>& indices,
                               const std::vector<bool>& essential) {
    DecompositionGraph g;
    g.genus = s.genus;
    for (size_t i = 0; i < s.signs.size(); ++i) {
        ComponentRecord c;
        c.id = "c" + std::to_string(i);
        c.sign = s.signs[i];
        c.euler = s.eulers[i];
        c.branch_orders = s.branch[i];
        g.components.push_back(std::move(c));
    }
    for (size_t k = 0; k < s.ends.size(); ++k) {
        RealCurveRecord l;
        l.id = "l" + std::to_string(k);
        l.index = indices[k];
        l.essential = essential[k];
        l.holonomy = essential[k] ? HolonomyType::Loxodromic : HolonomyType::Trivial;
        l.left = g.components[static_cast<size_t>(s.ends[k].first)].id;
        l.right = g.components[static_cast<size_t>(s.ends[k].second)].id;
        g.components[static_cast<size_t>(s.ends[k].first)].boundary.push_back(l.id);
        g.components[static_cast<size_t>(s.ends[k].second)].boundary.push_back(l.id);
        g.curves.push_back(std::move(l));
    }
    return g;
}

// relabel to the canonical component order, ids c0.., l0..
DecompositionGraph canonical_form(const DecompositionGraph& g) {
    std::vector<int> perm(g.components.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best_perm = perm;
    std::vector<int> best;
    do {
        auto enc = encoding_under(g, perm);
        if (best.empty() || enc < best) {
            best = std::move(enc);
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<int> pos(best_perm.size());
    for (size_t i = 0; i < best_perm.size(); ++i)
        pos[static_cast<size_t>(best_perm[i])] = static_cast<int>(i);
    std::map<std::string, int> comp_idx;
    for (size_t i = 0; i < g.components.size(); ++i) comp_idx[g.components[i].id] = static_cast<int>(i);

    DecompositionGraph out;
    out.genus = g.genus;
    out.components.resize(g.components.size());
    for (size_t old = 0; old < g.components.size(); ++old) {
        ComponentRecord c = g.components[old];
        c.id = "c" + std::to_string(pos[old]);
        c.boundary.clear();
        out.components[static_cast<size_t>(pos[old])] = std::move(c);
    }
    std::vector<std::array<int, 5>> curves;
    for (const auto& l : g.curves)
        curves.push_back({pos[static_cast<size_t>(comp_idx.at(l.left))],
                          pos[static_cast<size_t>(comp_idx.at(l.right))], l.index,
                          l.essential ? 1 : 0, l.holonomy == HolonomyType::Loxodromic ? 1 : 0});
    std::sort(curves.begin(), curves.end());
    for (size_t k = 0; k < curves.size(); ++k) {
        RealCurveRecord l;
        l.id = "l" + std::to_string(k);
        l.left = out.components[static_cast<size_t>(curves[k][0])].id;
        l.right = out.components[static_cast<size_t>(curves[k][1])].id;
        l.index = curves[k][2];
        l.essential = curves[k][3] != 0;
        l.holonomy = curves[k][4] != 0 ? HolonomyType::Loxodromic : HolonomyType::Trivial;
        out.components[static_cast<size_t>(curves[k][0])].boundary.push_back(l.id);
        out.components[static_cast<size_t>(curves[k][1])].boundary.push_back(l.id);
        out.curves.push_back(std::move(l));
    }
    return out;
}

struct Enumerator {
    int genus, max_components, max_curves;
    std::map<std::string, DecompositionGraph> found;

    void run() {
        for (int n = 1; n <= max_components; ++n) {
            std::vector<int> signs(static_cast<size_t>(n), 1);
            sign_loop(n, signs, 0);
        }
    }

    void sign_loop(int n, std::vector<int>& signs, int at) {
        if (at == n) {
            std::vector<int> eulers(static_cast<size_t>(n));
            euler_loop(n, signs, eulers, 0, 2 - 2 * genus);
            return;
        }
        for (int s : {1, -1}) {
            signs[static_cast<size_t>(at)] = s;
            sign_loop(n, signs, at + 1);
        }
    }

    void euler_loop(int n, const std::vector<int>& signs, std::vector<int>& eulers, int at,
                    int remaining) {
        if (at == n - 1) {
            if (remaining > 1) return;
            eulers[static_cast<size_t>(at)] = remaining;
            branch_stage(n, signs, eulers);
            return;
        }
        int lo = remaining - (n - 1 - at);  // others contribute at most 1 each
        for (int e = lo; e <= 1; ++e) {
            eulers[static_cast<size_t>(at)] = e;
            euler_loop(n, signs, eulers, at + 1, remaining - e);
        }
    }

    void branch_stage(int n, const std::vector<int>& signs, const std::vector<int>& eulers) {
        // 2 chi(sigma^-) = k+ - k- with k+ + k- = 2 pins the branch split
        int chi_neg = 0;
        for (int i = 0; i < n; ++i)
            if (signs[static_cast<size_t>(i)] == -1) chi_neg += eulers[static_cast<size_t>(i)];
        if (chi_neg < -1 || chi_neg > 1) return;
        int k_pos = 1 + chi_neg;

        // degree feasibility: every non-disk component needs its parity-minimal
        // boundary, disks exactly one curve, within the curve budget per side
        int min_deg_pos = 0, min_deg_neg = 0;
        for (int i = 0; i < n; ++i) {
            int e = eulers[static_cast<size_t>(i)];
            int min_deg = (n == 1) ? 0 : (e % 2 == 0 ? 2 : 1);
            if (e == 1) min_deg = 1;
            (signs[static_cast<size_t>(i)] == 1 ? min_deg_pos : min_deg_neg) += min_deg;
        }
        if (min_deg_pos > max_curves || min_deg_neg > max_curves) return;

        std::vector<std::vector<std::vector<int>>> dists;
        auto sign_of_dist = [&](const std::vector<std::vector<int>>& d) {
            int kp = 0;
            for (int i = 0; i < n; ++i)
                if (signs[static_cast<size_t>(i)] == 1)
                    for (int o : d[static_cast<size_t>(i)]) kp += o;
            return kp;
        };
        for (int i = 0; i < n; ++i) {
            std::vector<std::vector<int>> d(static_cast<size_t>(n));
            d[static_cast<size_t>(i)] = {2};
            dists.push_back(d);
            d[static_cast<size_t>(i)] = {1, 1};
            dists.push_back(d);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                std::vector<std::vector<int>> d(static_cast<size_t>(n));
                d[static_cast<size_t>(i)] = {1};
                d[static_cast<size_t>(j)] = {1};
                dists.push_back(d);
            }
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (signs[static_cast<size_t>(i)] == 1 && signs[static_cast<size_t>(j)] == -1)
                    pairs.emplace_back(i, j);
        for (const auto& branch : dists) {
            if (sign_of_dist(branch) != k_pos) continue;
            Shape s;
            s.genus = genus;
            s.signs = signs;
            s.eulers = eulers;
            s.branch = branch;
            std::vector<int> degree(static_cast<size_t>(n), 0);
            curve_loop(s, pairs, 0, degree);
        }
    }

    // nondecreasing multiset of endpoint pairs, with degree-budget pruning
    void curve_loop(Shape& s, const std::vector<std::pair<int, int>>& pairs, size_t min_pair,
                    std::vector<int>& degree) {
        int n = static_cast<int>(s.signs.size());
        int deficit = 0;  // min extra curve-ends still owed to the components
        for (int i = 0; i < n; ++i) {
            int e = s.eulers[static_cast<size_t>(i)];
            int deg = degree[static_cast<size_t>(i)];
            if (2 - e - deg < 0) return;  // over the degree room
            int min_deg = (n == 1) ? 0 : (e % 2 == 0 ? 2 : 1);
            if (e == 1) min_deg = 1;
            deficit += std::max(0, min_deg - deg);
        }
        int remaining = max_curves - static_cast<int>(s.ends.size());
        if (deficit > 2 * remaining) return;
        finish_shape(s);
        if (remaining == 0) return;
        for (size_t p = min_pair; p < pairs.size(); ++p) {
            s.ends.push_back(pairs[p]);
            ++degree[static_cast<size_t>(pairs[p].first)];
            ++degree[static_cast<size_t>(pairs[p].second)];
            curve_loop(s, pairs, p, degree);
            --degree[static_cast<size_t>(pairs[p].first)];
            --degree[static_cast<size_t>(pairs[p].second)];
            s.ends.pop_back();
        }
    }

    void finish_shape(const Shape& s) {
        int total = 0;
        for (const auto& b : s.branch) for (int o : b) total += o;
        if (total != 2) return;
        // quick structural screen before the expensive part
        size_t n = s.signs.size();
        std::vector<int> degree(n, 0);
        for (auto [a, b] : s.ends) {
            ++degree[static_cast<size_t>(a)];
            ++degree[static_cast<size_t>(b)];
        }
        for (size_t i = 0; i < n; ++i) {
            int t = 2 - s.eulers[i] - degree[i];
            if (s.eulers[i] > 1 || t < 0 || t % 2 != 0) return;
            if (n > 1 && degree[i] == 0) return;
        }
        DecompositionGraph probe = build_graph(s, std::vector<int>(s.ends.size(), 0),
                                               std::vector<bool>(s.ends.size(), true));
        Indexed ix(probe);
        if (!ix.connected()) return;
        std::vector<bool> essential;
        for (int k = 0; k < ix.m(); ++k) essential.push_back(ix.essential_derived(k));

        // indices forced by the rules themselves: a disk pins its boundary
        // curve to k_D + 1, a non-essential curve needs index >= 1
        const size_t m = s.ends.size();
        std::vector<int> pinned(m, -1);
        for (size_t i = 0; i < n; ++i) {
            if (s.eulers[i] != 1) continue;
            int k_disk = 0;
            for (int o : s.branch[i]) k_disk += o;
            if (k_disk + 1 > 1) return;  // outside the searched index range
            for (size_t k = 0; k < m; ++k)
                if (s.ends[k].first == static_cast<int>(i) || s.ends[k].second == static_cast<int>(i)) {
                    if (pinned[k] != -1 && pinned[k] != k_disk + 1) return;
                    pinned[k] = k_disk + 1;
                }
        }
        for (size_t k = 0; k < m; ++k) {
            if (essential[k]) continue;
            if (pinned[k] == 0) return;
            if (pinned[k] == -1) pinned[k] = 1;  // trivial holonomy needs index >= 1
        }

        std::vector<int> indices(m, 0);
        for (size_t k = 0; k < m; ++k) indices[k] = std::max(0, pinned[k]);
        while (true) {
            DecompositionGraph g = build_graph(s, indices, essential);
            if (validate(g).valid) {
                DecompositionGraph canon = canonical_form(g);
                found.emplace(canonical_encoding(canon), std::move(canon));
            }
            size_t k = 0;
            while (k < m && (pinned[k] != -1 || indices[k] == 1)) {
                if (pinned[k] == -1) indices[k] = 0;
                ++k;
            }
            if (k == m) break;
            indices[k] = 1;
        }
    }
};

}  // namespace

std::vector<DecompositionGraph> enumerate_k2(int genus, int max_components, int max_curves) {
    if (genus < 2) throw std::invalid_argument("genus must be >= 2");
    if (max_components < 0 || max_curves < 0) throw std::invalid_argument("negative bounds");
    if (max_components > 8)
        throw std::invalid_argument("refusing more than 8 components (combinatorial-explosion guard)");
    Enumerator e{genus, max_components, max_curves, {}};
    e.run();
    std::vector<DecompositionGraph> out;
    for (auto& [enc, g] : e.found) out.push_back(std::move(g));
    return out;
}

// ---------------------------------------------------------------------------
// canonical fixtures

namespace {
DecompositionGraph make_graph(int genus,
                              std::vector<std::tuple<std::string, int, int, std::vector<int>>> comps,
                              std::vector<std::tuple<std::string, int, bool, std::string, std::string>> curves) {
    DecompositionGraph g;
    g.genus = genus;
    for (auto& [id, sign, euler, branch] : comps) {
        ComponentRecord c;
        c.id = id;
        c.sign = sign;
        c.euler = euler;
        c.branch_orders = branch;
        g.components.push_back(std::move(c));
    }
    for (auto& [id, index, essential, left, right] : curves) {
        RealCurveRecord l;
        l.id = id;
        l.index = index;
        l.essential = essential;
        l.holonomy = essential ? HolonomyType::Loxodromic : HolonomyType::Trivial;
        l.left = left;
        l.right = right;
        for (auto& c : g.components)
            if (c.id == left || c.id == right) c.boundary.push_back(id);
        g.curves.push_back(std::move(l));
    }
    return g;
}
}  // namespace

DecompositionGraph uniformizing_graph(int genus) {
    return make_graph(genus, {{"surface", 1, 2 - 2 * genus, {}}}, {});
}

DecompositionGraph grafted_graph_separating(int chi_left, int chi_right) {
    return make_graph(2,
                      {{"p0", 1, chi_left, {}}, {"p1", 1, chi_right, {}}, {"A", -1, 0, {}}},
                      {{"l0", 0, true, "p0", "A"}, {"l1", 0, true, "p1", "A"}});
}

DecompositionGraph grafted_graph_nonseparating() {
    return make_graph(2, {{"p0", 1, -2, {}}, {"A", -1, 0, {}}},
                      {{"l0", 0, true, "p0", "A"}, {"l1", 0, true, "p0", "A"}});
}

DecompositionGraph bubbled_hyperbolic_graph(int genus) {
    return make_graph(genus, {{"p0", 1, 2 - 2 * genus - 1, {1, 1}}, {"D", -1, 1, {}}},
                      {{"l0", 1, false, "p0", "D"}});
}

DecompositionGraph negneg_canonical_graph() {
    return make_graph(2, {{"p0", 1, -1, {}}, {"N", -1, -1, {1, 1}}}, {{"l0", 0, true, "p0", "N"}});
}

DecompositionGraph mixed_canonical_graph() {
    return make_graph(2, {{"p0", 1, -2, {1}}, {"N", -1, 0, {1}}},
                      {{"l0", 1, true, "p0", "N"}, {"l1", 0, true, "p0", "N"}});
}

}  // namespace bps
