#include "bps/surgery.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace bps {

CurveSpec CurveSpec::separating(std::string host, int chi_left, int chi_right) {
    CurveSpec s;
    s.host = std::move(host);
    s.topology = Topology::Separating;
    s.chi_left = chi_left;
    s.chi_right = chi_right;
    return s;
}

CurveSpec CurveSpec::non_separating(std::string host) {
    CurveSpec s;
    s.host = std::move(host);
    s.topology = Topology::NonSeparating;
    return s;
}

ArcSpec ArcSpec::interior(std::string component) {
    ArcSpec a;
    a.pattern = Pattern::InteriorPositive;  // sign resolved against the graph
    a.component = std::move(component);
    return a;
}

ArcSpec ArcSpec::crossing_once(std::string curve) {
    ArcSpec a;
    a.pattern = Pattern::CrossingOnce;
    a.curve = std::move(curve);
    return a;
}

ArcSpec ArcSpec::annulus_to_annulus(std::string annulus, std::string through) {
    ArcSpec a;
    a.pattern = Pattern::AnnulusToAnnulus;
    a.annulus = std::move(annulus);
    a.through = std::move(through);
    return a;
}

namespace {

std::string fresh_id(const DecompositionGraph& g, const std::string& prefix) {
    std::set<std::string> used;
    for (const auto& c : g.components) used.insert(c.id);
    for (const auto& l : g.curves) used.insert(l.id);
    for (int i = 0;; ++i) {
        std::string id = prefix + std::to_string(i);
        if (!used.count(id)) return id;
    }
}

ComponentRecord* find_component(DecompositionGraph& g, const std::string& id) {
    for (auto& c : g.components)
        if (c.id == id) return &c;
    return nullptr;
}

RealCurveRecord* find_curve(DecompositionGraph& g, const std::string& id) {
    for (auto& l : g.curves)
        if (l.id == id) return &l;
    return nullptr;
}

void erase_component(DecompositionGraph& g, const std::string& id) {
    g.components.erase(std::remove_if(g.components.begin(), g.components.end(),
                                      [&](const ComponentRecord& c) { return c.id == id; }),
                       g.components.end());
}

void erase_curve(DecompositionGraph& g, const std::string& id) {
    g.curves.erase(std::remove_if(g.curves.begin(), g.curves.end(),
                                  [&](const RealCurveRecord& l) { return l.id == id; }),
                   g.curves.end());
    for (auto& c : g.components)
        c.boundary.erase(std::remove(c.boundary.begin(), c.boundary.end(), id), c.boundary.end());
}

void remove_branch_units(std::vector<int>& orders, int count_of_ones) {
    for (int i = 0; i < count_of_ones; ++i) {
        auto it = std::find(orders.begin(), orders.end(), 1);
        orders.erase(it);
    }
}

int count_ones(const std::vector<int>& orders) {
    return static_cast<int>(std::count(orders.begin(), orders.end(), 1));
}

SurgeryResult checked(DecompositionGraph g, std::string delta, std::string provenance) {
    ValidationReport rep = validate(g);
    if (!rep.valid)
        throw surgery_rejected("surgery '" + provenance + "' produced an invalid graph",
                               std::move(rep));
    return {std::move(g), std::move(delta), std::move(provenance)};
}

// all validating boundary/branch distributions of a separating graft
std::vector<DecompositionGraph> graft_separating_variants(const DecompositionGraph& g,
                                                          const CurveSpec& spec) {
    const ComponentRecord* host = g.find_component(spec.host);
    std::vector<DecompositionGraph> out;
    const std::vector<std::string> bd = host->boundary;
    const std::vector<int> orders = host->branch_orders;
    const size_t nb = bd.size(), nk = orders.size();
    for (unsigned bmask = 0; bmask < (1u << nb); ++bmask) {
        for (unsigned kmask = 0; kmask < (1u << nk); ++kmask) {
            DecompositionGraph h = g;
            std::string left_id = fresh_id(h, "c");
            ComponentRecord left;
            left.id = left_id;
            left.sign = host->sign;
            left.euler = spec.chi_left;
            h.components.push_back(left);
            std::string right_id = fresh_id(h, "c");
            ComponentRecord right;
            right.id = right_id;
            right.sign = host->sign;
            right.euler = spec.chi_right;
            h.components.push_back(right);
            std::string ann_id = fresh_id(h, "c");
            ComponentRecord ann;
            ann.id = ann_id;
            ann.sign = -host->sign;
            ann.euler = 0;
            h.components.push_back(ann);

            for (size_t i = 0; i < nb; ++i) {
                const std::string& piece = (bmask >> i & 1u) ? right_id : left_id;
                RealCurveRecord* l = find_curve(h, bd[i]);
                if (l->left == spec.host) l->left = piece;
                if (l->right == spec.host) l->right = piece;
                find_component(h, piece)->boundary.push_back(bd[i]);
            }
            for (size_t i = 0; i < nk; ++i) {
                const std::string& piece = (kmask >> i & 1u) ? right_id : left_id;
                find_component(h, piece)->branch_orders.push_back(orders[i]);
            }
            for (const std::string& piece : {left_id, right_id}) {
                std::string nid = fresh_id(h, "l");
                RealCurveRecord nl;
                nl.id = nid;
                nl.index = 0;
                nl.essential = true;
                nl.holonomy = HolonomyType::Loxodromic;
                nl.left = host->sign > 0 ? piece : ann_id;
                nl.right = host->sign > 0 ? ann_id : piece;
                h.curves.push_back(nl);
                find_component(h, piece)->boundary.push_back(nid);
                find_component(h, ann_id)->boundary.push_back(nid);
            }
            erase_component(h, spec.host);
            if (validate(h).valid) out.push_back(std::move(h));
        }
    }
    return out;
}

std::vector<DecompositionGraph> graft_variants(const DecompositionGraph& g, const CurveSpec& spec) {
    const ComponentRecord* host = g.find_component(spec.host);
    if (!host) throw std::invalid_argument("graft: no component " + spec.host);
    if (spec.topology == CurveSpec::Topology::Separating) {
        if (spec.chi_left + spec.chi_right != host->euler)
            throw std::invalid_argument("graft: chi split does not sum to chi(host)");
        if (spec.chi_left >= 1 || spec.chi_right >= 1)
            throw std::invalid_argument("graft: separating curve must be essential (both sides chi < 1)");
        return graft_separating_variants(g, spec);
    }
    // non-separating: host keeps chi; the curve absorbs one handle
    int deg = 0;
    for (const auto& l : g.curves) deg += (l.left == spec.host) + (l.right == spec.host);
    int two_genus = 2 - host->euler - deg;
    if (two_genus < 2)
        throw std::invalid_argument("graft: host has no handle for a non-separating curve");
    DecompositionGraph h = g;
    std::string ann_id = fresh_id(h, "c");
    ComponentRecord ann;
    ann.id = ann_id;
    ann.sign = -host->sign;
    ann.euler = 0;
    h.components.push_back(ann);
    for (int i = 0; i < 2; ++i) {
        std::string nid = fresh_id(h, "l");
        RealCurveRecord nl;
        nl.id = nid;
        nl.index = 0;
        nl.essential = true;
        nl.holonomy = HolonomyType::Loxodromic;
        nl.left = host->sign > 0 ? spec.host : ann_id;
        nl.right = host->sign > 0 ? ann_id : spec.host;
        h.curves.push_back(nl);
        find_component(h, spec.host)->boundary.push_back(nid);
        find_component(h, ann_id)->boundary.push_back(nid);
    }
    if (validate(h).valid) return {std::move(h)};
    return {};
}

}  // namespace

SurgeryResult graft(const DecompositionGraph& g, const CurveSpec& spec) {
    std::string provenance = "graft " + std::string(spec.topology == CurveSpec::Topology::Separating
                                                        ? "separating"
                                                        : "nonsep") +
                             " on " + spec.host;
    std::vector<DecompositionGraph> variants = graft_variants(g, spec);
    if (variants.empty()) {
        ValidationReport rep;
        rep.valid = false;
        rep.violations.push_back({"V-", "no boundary/branch distribution validates"});
        throw surgery_rejected(provenance + ": no valid insertion", std::move(rep));
    }
    auto best = std::min_element(variants.begin(), variants.end(),
                                 [](const DecompositionGraph& a, const DecompositionGraph& b) {
                                     return canonical_encoding(a) < canonical_encoding(b);
                                 });
    return {*best, "unchanged", provenance};
}

SurgeryResult bubble(const DecompositionGraph& g, const ArcSpec& spec) {
    using P = ArcSpec::Pattern;
    if (spec.pattern == P::InteriorPositive || spec.pattern == P::InteriorNegative) {
        const ComponentRecord* host = g.find_component(spec.component);
        if (!host) throw std::invalid_argument("bubble: no component " + spec.component);
        DecompositionGraph h = g;
        ComponentRecord* hc = find_component(h, spec.component);
        hc->euler -= 1;
        hc->branch_orders.push_back(1);
        hc->branch_orders.push_back(1);
        std::string disk_id = fresh_id(h, "c");
        std::string curve_id = fresh_id(h, "l");
        ComponentRecord disk;
        disk.id = disk_id;
        disk.sign = -host->sign;
        disk.euler = 1;
        disk.boundary.push_back(curve_id);
        h.components.push_back(disk);
        RealCurveRecord l;
        l.id = curve_id;
        l.index = 1;
        l.essential = false;
        l.holonomy = HolonomyType::Trivial;
        l.left = host->sign > 0 ? spec.component : disk_id;
        l.right = host->sign > 0 ? disk_id : spec.component;
        h.curves.push_back(l);
        find_component(h, spec.component)->boundary.push_back(curve_id);
        std::string prov = std::string("bubble interior(") + (host->sign > 0 ? "+" : "-") +
                           spec.component + ")";
        return checked(std::move(h), "+(1,1)", prov);
    }
    if (spec.pattern == P::CrossingOnce) {
        const RealCurveRecord* l = g.find_curve(spec.curve);
        if (!l) throw std::invalid_argument("bubble: no curve " + spec.curve);
        DecompositionGraph h = g;
        RealCurveRecord* hl = find_curve(h, spec.curve);
        hl->index += 1;
        find_component(h, hl->left)->branch_orders.push_back(1);
        find_component(h, hl->right)->branch_orders.push_back(1);
        return checked(std::move(h), "+(1,1)", "bubble crossing(" + spec.curve + ")");
    }
    if (spec.pattern == P::AnnulusToAnnulus) {
        const ComponentRecord* ann = g.find_component(spec.annulus);
        const ComponentRecord* thru = g.find_component(spec.through);
        if (!ann || !thru)
            throw std::invalid_argument("bubble: missing component for annulus-to-annulus arc");
        if (ann->sign != -1 || ann->euler != 0 || ann->branch_total() != 0)
            throw unsupported_surgery("bubble a2a: " + spec.annulus +
                                      " is not an unbranched negative annulus");
        std::vector<std::string> joining;
        for (const auto& l : g.curves)
            if (l.right == spec.annulus && l.left == spec.through) joining.push_back(l.id);
        if (joining.size() != 2)
            throw unsupported_surgery(
                "bubble a2a: the annulus must meet the positive component along both boundary curves");
        DecompositionGraph h = g;
        erase_curve(h, joining[0]);
        erase_curve(h, joining[1]);
        erase_component(h, spec.annulus);
        ComponentRecord* c = find_component(h, spec.through);
        c->euler += 1;
        std::string core_id = fresh_id(h, "c");
        std::string curve_id = fresh_id(h, "l");
        ComponentRecord core;
        core.id = core_id;
        core.sign = -1;
        core.euler = -1;
        core.branch_orders = {1, 1};
        core.boundary.push_back(curve_id);
        h.components.push_back(core);
        RealCurveRecord l;
        l.id = curve_id;
        l.index = 0;
        l.essential = true;
        l.holonomy = HolonomyType::Loxodromic;
        l.left = spec.through;
        l.right = core_id;
        h.curves.push_back(l);
        find_component(h, spec.through)->boundary.push_back(curve_id);
        return checked(std::move(h), "+(1,1)",
                       "bubble a2a(" + spec.annulus + " through " + spec.through + ")");
    }
    throw unsupported_surgery("bubble: unsupported arc pattern");
}

SurgeryResult debubble(const DecompositionGraph& g, const std::string& curve_id) {
    const RealCurveRecord* l = g.find_curve(curve_id);
    if (!l) throw std::invalid_argument("debubble: no curve " + curve_id);
    const ComponentRecord* left = g.find_component(l->left);
    const ComponentRecord* right = g.find_component(l->right);

    auto is_plain_disk = [&](const ComponentRecord* c) {
        return c->is_disk() && c->branch_total() == 0;
    };

    // a pattern that matches locally but leaves an invalid graph was no bubble
    auto checked_or_not_a_bubble = [&](DecompositionGraph h, const std::string& prov) {
        try {
            return checked(std::move(h), "-(1,1)", prov);
        } catch (const surgery_rejected& e) {
            throw not_a_bubble("curve " + curve_id + " matches a bubble pattern shape but " +
                               e.what());
        }
    };

    // interior patterns: an unbranched disk of index 1 against a component
    // holding two simple branch points
    for (bool disk_on_right : {true, false}) {
        const ComponentRecord* disk = disk_on_right ? right : left;
        const ComponentRecord* carrier = disk_on_right ? left : right;
        if (!is_plain_disk(disk) || l->index != 1 || l->holonomy != HolonomyType::Trivial) continue;
        if (count_ones(carrier->branch_orders) < 2) continue;
        DecompositionGraph h = g;
        ComponentRecord* c = find_component(h, carrier->id);
        remove_branch_units(c->branch_orders, 2);
        c->euler += 1;
        std::string disk_id = disk->id;
        erase_curve(h, curve_id);
        erase_component(h, disk_id);
        return checked_or_not_a_bubble(std::move(h), "debubble interior bubble at " + curve_id);
    }

    // annulus-to-annulus pattern: a once-holed negative core with exactly the
    // divisor (1,1) behind an essential index-0 curve
    if (right->euler == -1 && right->branch_orders.size() == 2 && count_ones(right->branch_orders) == 2 &&
        l->index == 0 && l->holonomy == HolonomyType::Loxodromic) {
        int deg = 0;
        for (const auto& cv : g.curves) deg += (cv.left == right->id) + (cv.right == right->id);
        if (deg == 1) {
            DecompositionGraph h = g;
            std::string core_id = right->id, through_id = left->id;
            erase_curve(h, curve_id);
            erase_component(h, core_id);
            ComponentRecord* c = find_component(h, through_id);
            c->euler -= 1;
            std::string ann_id = fresh_id(h, "c");
            ComponentRecord ann;
            ann.id = ann_id;
            ann.sign = -1;
            ann.euler = 0;
            h.components.push_back(ann);
            for (int i = 0; i < 2; ++i) {
                std::string nid = fresh_id(h, "l");
                RealCurveRecord nl;
                nl.id = nid;
                nl.index = 0;
                nl.essential = true;
                nl.holonomy = HolonomyType::Loxodromic;
                nl.left = through_id;
                nl.right = ann_id;
                h.curves.push_back(nl);
                find_component(h, through_id)->boundary.push_back(nid);
                find_component(h, ann_id)->boundary.push_back(nid);
            }
            return checked_or_not_a_bubble(std::move(h), "debubble a2a bubble at " + curve_id);
        }
    }

    // crossing pattern: positive index, a simple branch unit on each side
    if (l->index >= 1 && count_ones(left->branch_orders) >= 1 && count_ones(right->branch_orders) >= 1) {
        DecompositionGraph h = g;
        RealCurveRecord* hl = find_curve(h, curve_id);
        hl->index -= 1;
        remove_branch_units(find_component(h, left->id)->branch_orders, 1);
        remove_branch_units(find_component(h, right->id)->branch_orders, 1);
        return checked_or_not_a_bubble(std::move(h), "debubble crossing bubble at " + curve_id);
    }

    throw not_a_bubble("no bubble pattern matches at curve " + curve_id);
}

std::vector<MoveResult> move_branch_point(const DecompositionGraph& g, const std::string& from,
                                          const std::optional<std::string>& across) {
    if (g.ord() != 2) throw unsupported_surgery("move_branch_point supports ord = 2 only");
    const ComponentRecord* src = g.find_component(from);
    if (!src) throw std::invalid_argument("move_branch_point: no component " + from);
    if (count_ones(src->branch_orders) < 1)
        throw unsupported_surgery("move_branch_point: " + from + " has no simple branch unit");

    if (!across) return {{g, true}};  // movement inside the component

    const RealCurveRecord* l = g.find_curve(*across);
    if (!l) throw std::invalid_argument("move_branch_point: no curve " + *across);
    if (l->left != from && l->right != from)
        throw std::invalid_argument("move_branch_point: curve " + *across + " is not on the boundary of " + from);

    int kp = 0, km = 0;
    for (const auto& c : g.components)
        (c.sign > 0 ? kp : km) += c.branch_total();
    if (src->sign > 0) { kp -= 1; km += 1; }
    else { kp += 1; km -= 1; }

    // spectators: components not adjacent to the crossed curve keep their shape
    std::multiset<std::tuple<int, int, int>> spectators;
    for (const auto& c : g.components)
        if (c.id != l->left && c.id != l->right)
            spectators.insert({c.sign, c.euler, c.branch_total()});

    std::vector<MoveResult> out;
    auto pool = enumerate_k2(g.genus, static_cast<int>(g.components.size()) + 1,
                             static_cast<int>(g.curves.size()) + 1);
    for (auto& h : pool) {
        int hkp = 0, hkm = 0;
        for (const auto& c : h.components)
            (c.sign > 0 ? hkp : hkm) += c.branch_total();
        if (hkp != kp || hkm != km) continue;
        std::multiset<std::tuple<int, int, int>> shapes;
        for (const auto& c : h.components) shapes.insert({c.sign, c.euler, c.branch_total()});
        bool spectators_kept = std::includes(shapes.begin(), shapes.end(), spectators.begin(),
                                             spectators.end());
        out.push_back({std::move(h), spectators_kept});
    }
    return out;  // pool is already sorted by canonical encoding
}

// ---------------------------------------------------------------------------
// schematic walks

namespace {

std::optional<std::pair<std::string, SurgeryResult>> find_debubble(const DecompositionGraph& g) {
    for (const auto& l : g.curves) {
        try {
            return std::make_pair(l.id, debubble(g, l.id));
        } catch (const not_a_bubble&) {
        } catch (const surgery_rejected&) {
        }
    }
    return std::nullopt;
}

std::vector<CurveSpec> graft_specs(const DecompositionGraph& g) {
    std::vector<CurveSpec> out;
    for (const auto& c : g.components) {
        int deg = 0;
        for (const auto& l : g.curves) deg += (l.left == c.id) + (l.right == c.id);
        if (2 - c.euler - deg >= 2) out.push_back(CurveSpec::non_separating(c.id));
        for (int chi_l = c.euler; chi_l <= 0; ++chi_l) {
            int chi_r = c.euler - chi_l;
            if (chi_r > 0 || chi_l > chi_r) continue;
            out.push_back(CurveSpec::separating(c.id, chi_l, chi_r));
        }
    }
    return out;
}

std::vector<ArcSpec> bubble_specs(const DecompositionGraph& g) {
    std::vector<ArcSpec> out;
    for (const auto& c : g.components) out.push_back(ArcSpec::interior(c.id));
    for (const auto& l : g.curves) out.push_back(ArcSpec::crossing_once(l.id));
    for (const auto& a : g.components) {
        if (a.sign != -1 || a.euler != 0 || a.branch_total() != 0) continue;
        std::map<std::string, int> counts;
        for (const auto& l : g.curves)
            if (l.right == a.id) counts[l.left] += 1;
        for (const auto& [thru, cnt] : counts)
            if (cnt == 2) out.push_back(ArcSpec::annulus_to_annulus(a.id, thru));
    }
    return out;
}

struct ChainNode {
    DecompositionGraph graph;
    std::vector<std::pair<CurveSpec, DecompositionGraph>> steps;  // grafts applied
};

}  // namespace

std::vector<PlanStep> plan_walk(const DecompositionGraph& source, const DecompositionGraph& target,
                                int m, int n) {
    if (m < 0 || n < 0) throw std::invalid_argument("plan_walk: negative counts");
    for (const DecompositionGraph* g : {&source, &target}) {
        if (g->ord() != 0 && g->ord() != 2)
            throw std::invalid_argument("plan_walk needs structures of order 0 or 2");
        if (!validate(*g).valid) throw std::invalid_argument("plan_walk: input graph does not validate");
    }

    std::vector<PlanStep> plan;

    DecompositionGraph src0 = source;
    if (source.ord() == 2) {
        auto db = find_debubble(source);
        if (!db) throw plan_failure("source graph carries no recognizable bubble");
        src0 = db->second.graph;
        plan.push_back({"debubble", "debubble at " + db->first, src0});
    }
    DecompositionGraph tgt0 = target;
    if (target.ord() == 2) {
        auto db = find_debubble(target);
        if (!db) throw plan_failure("target graph carries no recognizable bubble");
        tgt0 = db->second.graph;
    }

    // graft chain of length m + n from src0 to tgt0
    const int depth = m + n;
    const std::string tgt_enc = canonical_encoding(tgt0);
    std::vector<ChainNode> layer{{src0, {}}};
    std::optional<ChainNode> found;
    if (canonical_encoding(src0) == tgt_enc && depth == 0) found = layer[0];
    for (int step = 0; step < depth && !found; ++step) {
        std::vector<ChainNode> next;
        std::set<std::string> seen;
        for (const ChainNode& node : layer) {
            for (const CurveSpec& spec : graft_specs(node.graph)) {
                std::vector<DecompositionGraph> variants;
                try {
                    variants = graft_variants(node.graph, spec);
                } catch (const std::invalid_argument&) {
                    continue;
                }
                for (DecompositionGraph& h : variants) {
                    std::string enc = canonical_encoding(h);
                    if (step + 1 == depth) {
                        if (enc == tgt_enc) {
                            ChainNode done = node;
                            done.steps.emplace_back(spec, h);
                            done.graph = std::move(h);
                            found = std::move(done);
                            break;
                        }
                    } else if (seen.insert(enc).second) {
                        ChainNode nx = node;
                        nx.steps.emplace_back(spec, h);
                        nx.graph = std::move(h);
                        next.push_back(std::move(nx));
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        layer = std::move(next);
    }
    if (!found)
        throw plan_failure("no chain of " + std::to_string(depth) +
                           " graftings connects the debubbled source to the debubbled target");

    // expand each grafting into one bubbling plus one (transfer) debubbling
    DecompositionGraph current = src0;
    int applied = 0;
    for (const auto& [spec, after] : found->steps) {
        SurgeryResult bub = bubble(current, ArcSpec::interior(spec.host));
        const char* phase = applied < m ? "first leg" : "second leg";
        plan.push_back({"bubble", std::string("bubble interior(") + spec.host + ") [" + phase + "]",
                        bub.graph});
        if (!validate(after).valid)
            throw plan_failure("grafted intermediate does not validate");
        plan.push_back({"debubble (bubble transfer)",
                        "debubble the transferred bubble, realizing graft on " + spec.host, after});
        current = after;
        ++applied;
    }

    if (target.ord() == 2) {
        bool placed = false;
        for (const ArcSpec& spec : bubble_specs(current)) {
            try {
                SurgeryResult bub = bubble(current, spec);
                if (isomorphic(bub.graph, target)) {
                    plan.push_back({"bubble", "final bubbling: " + bub.provenance, bub.graph});
                    placed = true;
                    break;
                }
            } catch (const unsupported_surgery&) {
            } catch (const surgery_rejected&) {
            }
        }
        if (!placed) throw plan_failure("no supported bubbling of the debubbled target reproduces it");
    }

    for (const PlanStep& step : plan)
        if (!validate(step.graph).valid)
            throw plan_failure("intermediate after '" + step.op + "' does not validate");
    return plan;
}

// ---------------------------------------------------------------------------
// scripts

std::vector<ScriptStep> parse_script(std::istream& in) {
    std::vector<ScriptStep> out;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op) || op[0] == '#') continue;
        ScriptStep step;
        step.line = line;
        if (op == "graft") {
            std::string host, kind;
            if (!(ls >> host >> kind)) throw std::invalid_argument("bad graft line: " + line);
            step.kind = ScriptStep::Kind::Graft;
            if (kind == "separating") {
                int cl, cr;
                if (!(ls >> cl >> cr)) throw std::invalid_argument("bad graft line: " + line);
                step.curve_spec = CurveSpec::separating(host, cl, cr);
            } else if (kind == "nonsep") {
                step.curve_spec = CurveSpec::non_separating(host);
            } else {
                throw std::invalid_argument("bad graft topology: " + line);
            }
        } else if (op == "bubble") {
            std::string kind;
            if (!(ls >> kind)) throw std::invalid_argument("bad bubble line: " + line);
            step.kind = ScriptStep::Kind::Bubble;
            if (kind == "interior") {
                std::string comp;
                if (!(ls >> comp)) throw std::invalid_argument("bad bubble line: " + line);
                step.arc_spec = ArcSpec::interior(comp);
            } else if (kind == "crossing") {
                std::string curve;
                if (!(ls >> curve)) throw std::invalid_argument("bad bubble line: " + line);
                step.arc_spec = ArcSpec::crossing_once(curve);
            } else if (kind == "a2a") {
                std::string ann, comp;
                if (!(ls >> ann >> comp)) throw std::invalid_argument("bad bubble line: " + line);
                step.arc_spec = ArcSpec::annulus_to_annulus(ann, comp);
            } else {
                throw std::invalid_argument("bad bubble pattern: " + line);
            }
        } else if (op == "debubble") {
            if (!(ls >> step.curve_id)) throw std::invalid_argument("bad debubble line: " + line);
            step.kind = ScriptStep::Kind::Debubble;
        } else if (op == "move") {
            if (!(ls >> step.from_comp >> step.curve_id))
                throw std::invalid_argument("bad move line: " + line);
            step.kind = ScriptStep::Kind::Move;
        } else {
            throw std::invalid_argument("unknown surgery op: " + line);
        }
        out.push_back(std::move(step));
    }
    return out;
}

SurgeryResult apply_step(const DecompositionGraph& g, const ScriptStep& step) {
    switch (step.kind) {
        case ScriptStep::Kind::Graft: return graft(g, step.curve_spec);
        case ScriptStep::Kind::Bubble: return bubble(g, step.arc_spec);
        case ScriptStep::Kind::Debubble: return debubble(g, step.curve_id);
        case ScriptStep::Kind::Move: {
            auto results = move_branch_point(g, step.from_comp, step.curve_id);
            for (auto& r : results)
                if (r.certified)
                    return {std::move(r.graph), "unchanged", "move " + step.from_comp + " across " +
                                                                 step.curve_id + " (first certified)"};
            throw unsupported_surgery("move: no certified neighbor for " + step.line);
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace bps
