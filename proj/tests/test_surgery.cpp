#include <doctest.h>

#include <random>
#include <sstream>

#include "bps/surgery.hpp"

using namespace bps;

TEST_CASE("grafting the uniformizing structure") {
    DecompositionGraph uni = uniformizing_graph();

    SurgeryResult sep = graft(uni, CurveSpec::separating("surface", -1, -1));
    CHECK(sep.divisor_delta == "unchanged");
    CHECK(isomorphic(sep.graph, grafted_graph_separating()));

    SurgeryResult nonsep = graft(uni, CurveSpec::non_separating("surface"));
    CHECK(isomorphic(nonsep.graph, grafted_graph_nonseparating()));

    // grafting twice along disjoint separating curves
    std::string host;
    for (const auto& c : sep.graph.components)
        if (c.sign > 0) { host = c.id; break; }
    SurgeryResult twice = graft(sep.graph, CurveSpec::separating(host, 0, -1));
    CHECK(validate(twice.graph).valid);
    int pos = 0, annuli = 0;
    for (const auto& c : twice.graph.components) {
        if (c.sign > 0) ++pos;
        if (c.sign < 0 && c.euler == 0) ++annuli;
    }
    CHECK(pos == 3);
    CHECK(annuli == 2);
}

TEST_CASE("grafting a branched host distributes boundary and branching consistently") {
    DecompositionGraph pospos = bubbled_hyperbolic_graph();
    SurgeryResult res = graft(pospos, CurveSpec::separating("p0", -1, -2));
    CHECK(validate(res.graph).valid);
    CHECK(res.graph.ord() == 2);
    CHECK(classify_k2(res.graph) == CaseLabel::PosPos);  // still a bubbling shape
    // both branch points must have landed in the piece that kept the disk
    for (const auto& c : res.graph.components) {
        if (c.branch_total() == 0) continue;
        CHECK(c.branch_total() == 2);
        bool touches_disk = false;
        for (const auto& l : res.graph.curves)
            if (l.left == c.id && res.graph.find_component(l.right)->is_disk()) touches_disk = true;
        CHECK(touches_disk);
    }
}

TEST_CASE("graft rejects inconsistent specs") {
    DecompositionGraph uni = uniformizing_graph();
    CHECK_THROWS_AS(graft(uni, CurveSpec::separating("surface", -1, -2)), std::invalid_argument);
    CHECK_THROWS_AS(graft(uni, CurveSpec::separating("surface", 1, -3)), std::invalid_argument);
    CHECK_THROWS_AS(graft(uni, CurveSpec::separating("nowhere", -1, -1)), std::invalid_argument);
    // a disk has no room for a non-separating curve
    DecompositionGraph pospos = bubbled_hyperbolic_graph();
    CHECK_THROWS_AS(graft(pospos, CurveSpec::non_separating("D")), std::invalid_argument);
}

TEST_CASE("bubble patterns produce the documented decompositions") {
    DecompositionGraph uni = uniformizing_graph();

    SurgeryResult bub = bubble(uni, ArcSpec::interior("surface"));
    CHECK(bub.divisor_delta == "+(1,1)");
    CHECK(isomorphic(bub.graph, bubbled_hyperbolic_graph()));
    CHECK(classify_k2(bub.graph) == CaseLabel::PosPos);

    DecompositionGraph grafted = grafted_graph_separating();
    SurgeryResult crossing = bubble(grafted, ArcSpec::crossing_once("l0"));
    CHECK(classify_k2(crossing.graph) == CaseLabel::Mixed);

    DecompositionGraph nonsep = grafted_graph_nonseparating();
    SurgeryResult a2a = bubble(nonsep, ArcSpec::annulus_to_annulus("A", "p0"));
    CHECK(isomorphic(a2a.graph, negneg_canonical_graph()));
    CHECK(classify_k2(a2a.graph) == CaseLabel::NegNeg);

    // mirror pattern: a bubble inside a negative component adds a positive disk
    SurgeryResult neg_interior = bubble(grafted, ArcSpec::interior("A"));
    CHECK(validate(neg_interior.graph).valid);
    bool has_positive_disk = false;
    for (const auto& c : neg_interior.graph.components)
        if (c.sign > 0 && c.is_disk()) has_positive_disk = true;
    CHECK(has_positive_disk);
}

TEST_CASE("unsupported bubbles are explicit errors") {
    DecompositionGraph sep = grafted_graph_separating();
    // the separated graft has the annulus between two different components
    CHECK_THROWS_AS(bubble(sep, ArcSpec::annulus_to_annulus("A", "p0")), unsupported_surgery);
    CHECK_THROWS_AS(bubble(sep, ArcSpec::annulus_to_annulus("p0", "p1")), unsupported_surgery);
}

TEST_CASE("debubble inverts every bubble pattern") {
    DecompositionGraph uni = uniformizing_graph();
    DecompositionGraph grafted = grafted_graph_separating();
    DecompositionGraph nonsep = grafted_graph_nonseparating();

    struct Case {
        DecompositionGraph base;
        ArcSpec spec;
    };
    std::vector<Case> cases = {
        {uni, ArcSpec::interior("surface")},
        {grafted, ArcSpec::interior("A")},
        {grafted, ArcSpec::crossing_once("l0")},
        {nonsep, ArcSpec::annulus_to_annulus("A", "p0")},
    };
    for (const auto& c : cases) {
        SurgeryResult bub = bubble(c.base, c.spec);
        // locate the curve the inverse pattern recognizes
        bool inverted = false;
        for (const auto& l : bub.graph.curves) {
            try {
                SurgeryResult deb = debubble(bub.graph, l.id);
                CHECK(deb.divisor_delta == "-(1,1)");
                CHECK(isomorphic(deb.graph, c.base));
                inverted = true;
                break;
            } catch (const not_a_bubble&) {
            }
        }
        CHECK(inverted);
    }
}

TEST_CASE("debubble errors") {
    CHECK_THROWS_AS(debubble(grafted_graph_separating(), "l0"), not_a_bubble);
    CHECK_THROWS_AS(debubble(uniformizing_graph(), "l0"), std::invalid_argument);  // no curves

    // a single order-2 branch point is not a bubbling
    DecompositionGraph order2 = bubbled_hyperbolic_graph();
    order2.components[0].branch_orders = {2};
    REQUIRE(validate(order2).valid);
    CHECK_THROWS_AS(debubble(order2, "l0"), not_a_bubble);
}

TEST_CASE("debubble the PosPos canonical graph at its non-essential curve") {
    SurgeryResult deb = debubble(bubbled_hyperbolic_graph(), "l0");
    CHECK(isomorphic(deb.graph, uniformizing_graph()));
    CHECK(validate(deb.graph).valid);
}

TEST_CASE("move_branch_point: canonical transitions") {
    DecompositionGraph pospos = bubbled_hyperbolic_graph();
    auto moves = move_branch_point(pospos, "p0", std::optional<std::string>("l0"));
    bool mixed_certified = false;
    for (const auto& r : moves) {
        CHECK(validate(r.graph).valid);
        CHECK(classify_k2(r.graph) == CaseLabel::Mixed);
        if (r.certified && isomorphic(r.graph, mixed_canonical_graph())) mixed_certified = true;
    }
    CHECK(mixed_certified);

    // identity move inside the component
    auto same = move_branch_point(pospos, "p0", std::nullopt);
    REQUIRE(same.size() == 1);
    CHECK(isomorphic(same[0].graph, pospos));
    CHECK(same[0].certified);

    // both directions from the Mixed canonical graph
    DecompositionGraph mixed = mixed_canonical_graph();
    auto toward_neg = move_branch_point(mixed, "p0", std::optional<std::string>("l0"));
    bool has_negneg = false;
    for (const auto& r : toward_neg)
        if (classify_k2(r.graph) == CaseLabel::NegNeg) has_negneg = true;
    CHECK(has_negneg);

    auto toward_pos = move_branch_point(mixed, "N", std::optional<std::string>("l0"));
    bool has_pospos = false;
    for (const auto& r : toward_pos)
        if (classify_k2(r.graph) == CaseLabel::PosPos) has_pospos = true;
    CHECK(has_pospos);
}

TEST_CASE("move_branch_point outputs live inside the enumerated shape space") {
    DecompositionGraph pospos = bubbled_hyperbolic_graph();
    auto moves = move_branch_point(pospos, "p0", std::optional<std::string>("l0"));
    auto pool = enumerate_k2(pospos.genus, static_cast<int>(pospos.components.size()) + 1,
                             static_cast<int>(pospos.curves.size()) + 1);
    for (const auto& r : moves) {
        bool found = false;
        for (const auto& g : pool) found = found || isomorphic(g, r.graph);
        CHECK(found);
    }
    CHECK_THROWS_AS(move_branch_point(uniformizing_graph(), "surface", std::nullopt),
                    unsupported_surgery);
}

TEST_CASE("plan_walk: degenerate and canonical walks") {
    DecompositionGraph uni = uniformizing_graph();
    CHECK(plan_walk(uni, uni, 0, 0).empty());

    auto single = plan_walk(bubbled_hyperbolic_graph(), uni, 0, 0);
    REQUIRE(single.size() == 1);
    CHECK(single[0].op == "debubble");
    CHECK(isomorphic(single[0].graph, uni));

    auto walk = plan_walk(bubbled_hyperbolic_graph(), mixed_canonical_graph(), 1, 0);
    REQUIRE(walk.size() == 4);  // 1 debub + (1 bub + 1 debub) + 1 bub
    CHECK(walk[0].op == "debubble");
    CHECK(walk[1].op == "bubble");
    CHECK(walk[2].op == "debubble (bubble transfer)");
    CHECK(walk[3].op == "bubble");
    for (const auto& step : walk) CHECK(validate(step.graph).valid);
    CHECK(isomorphic(walk.back().graph, mixed_canonical_graph()));

    CHECK_THROWS_AS(plan_walk(uni, mixed_canonical_graph(), 0, 0), plan_failure);
}

TEST_CASE("plan_walk reaches a bubbling over the separating graft") {
    // target: the three-component Mixed shape over the separated graft
    DecompositionGraph target = bubble(grafted_graph_separating(), ArcSpec::crossing_once("l0")).graph;
    REQUIRE(classify_k2(target) == CaseLabel::Mixed);
    auto walk = plan_walk(bubbled_hyperbolic_graph(), target, 1, 0);
    REQUIRE(walk.size() == 4);
    CHECK(isomorphic(walk.back().graph, target));
    for (const auto& step : walk) CHECK(validate(step.graph).valid);
}

TEST_CASE("divisor bookkeeping is exact") {
    DecompositionGraph uni = uniformizing_graph();
    SurgeryResult g1 = graft(uni, CurveSpec::non_separating("surface"));
    CHECK(g1.graph.ord() == uni.ord());
    SurgeryResult b1 = bubble(g1.graph, ArcSpec::crossing_once(g1.graph.curves[0].id));
    CHECK(b1.graph.ord() == g1.graph.ord() + 2);
    SurgeryResult d1 = debubble(b1.graph, b1.graph.curves[0].id);
    CHECK(d1.graph.ord() == b1.graph.ord() - 2);
}

TEST_CASE("surgery scripts: parse and round trip") {
    std::istringstream script(R"(# bubble then undo it
bubble interior surface
debubble l0
)");
    auto steps = parse_script(script);
    REQUIRE(steps.size() == 2);
    DecompositionGraph g = uniformizing_graph();
    for (const auto& s : steps) g = apply_step(g, s).graph;
    CHECK(isomorphic(g, uniformizing_graph()));

    std::istringstream bad("frobnicate x\n");
    CHECK_THROWS_AS(parse_script(bad), std::invalid_argument);
}

TEST_CASE("fuzzed surgeries stay valid and round trip") {
    std::mt19937 rng(101);
    auto seeds = enumerate_k2(2, 3, 3);
    seeds.push_back(uniformizing_graph());
    seeds.push_back(grafted_graph_separating());
    seeds.push_back(grafted_graph_nonseparating());
    std::uniform_int_distribution<size_t> pick(0, seeds.size() - 1);

    int performed = 0;
    while (performed < 150) {
        const DecompositionGraph& g = seeds[pick(rng)];
        // try a bubble at a random supported spot
        std::vector<ArcSpec> specs;
        for (const auto& c : g.components) specs.push_back(ArcSpec::interior(c.id));
        for (const auto& l : g.curves) specs.push_back(ArcSpec::crossing_once(l.id));
        std::uniform_int_distribution<size_t> spot(0, specs.size() - 1);
        try {
            SurgeryResult bub = bubble(g, specs[spot(rng)]);
            CHECK(validate(bub.graph).valid);
            CHECK(bub.graph.ord() == g.ord() + 2);
            // round trip through the matching debubble
            for (const auto& l : bub.graph.curves) {
                try {
                    SurgeryResult deb = debubble(bub.graph, l.id);
                    if (isomorphic(deb.graph, g)) break;
                } catch (const not_a_bubble&) {
                }
            }
            ++performed;
        } catch (const surgery_rejected&) {
            // a legitimately rejected insertion still counts as an exercised case
            ++performed;
        }
    }
    CHECK(performed == 150);
}
