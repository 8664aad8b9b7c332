#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Decomposition graphs: the combinatorial image of the geometric
// decomposition sigma^+ / sigma^R / sigma^- of a branched projective
// structure with (quasi-)Fuchsian holonomy. Graphs are immutable values;
// validate / classify / enumerate are pure.

namespace bps {

struct BranchDivisor {
    std::vector<int> orders;  // all >= 1
    int ord() const;
};

enum class HolonomyType { Trivial, Loxodromic };

struct ComponentRecord {
    std::string id;
    int sign = +1;  // +1 or -1
    int euler = 0;  // chi(C) <= 1
    std::vector<int> branch_orders;
    std::vector<std::string> boundary;  // curve ids

    int branch_total() const;
    bool is_disk() const { return euler == 1; }
};

struct RealCurveRecord {
    std::string id;
    int index = 0;  // I(l) >= 0
    bool essential = true;
    HolonomyType holonomy = HolonomyType::Loxodromic;
    std::string left;   // component with sign +
    std::string right;  // component with sign -
};

struct DecompositionGraph {
    int genus = 2;
    std::vector<ComponentRecord> components;
    std::vector<RealCurveRecord> curves;

    int ord() const;
    const ComponentRecord* find_component(const std::string& id) const;
    const RealCurveRecord* find_curve(const std::string& id) const;
};

struct Violation {
    std::string rule;
    std::string message;
};

struct ValidationReport {
    bool valid = false;
    std::vector<Violation> violations;
    std::map<std::string, int> derived_euler_class;  // per component id
    std::map<std::string, bool> derived_essential;   // per curve id
    bool nesting_ambiguous = false;

    bool has_rule(const std::string& rule) const;
};

// Rule set:
//   V1 curve orientation (+ on the left, - on the right)
//   V2 sum of component Euler characteristics = 2 - 2 genus
//   V3 total branching order even and 2 chi(sigma^-) = k+ - k-
//   V4 faithfulness: trivial holonomy => index >= 1; essential <=> loxodromic
//   V5 disk components: boundary curve index = k_D + 1
//   V6 unbranched non-disk components: boundary indices 0; negative ones are annuli
//   V7 stored essential flags match the derived (capping) essentiality
//   V8 every connected incompressible subsurface E: sum of derived Euler
//      classes over E equals chi(E)
//   V9 curves of positive index: at least one side branched, at most one a disk
//   V10 (ord = 2) all indices <= 1
//   V11 (ord = 2) disks are unbranched
//   V12 every pi1-trivially included connected subsurface (genus 0, all
//      boundary curves non-essential) has vanishing total Euler class
// Structural problems (dangling references, duplicate ids, inconsistent
// boundary lists, per-component genus not a nonnegative integer) throw
// std::invalid_argument instead of reporting violations.
ValidationReport validate(const DecompositionGraph& g);

enum class CaseLabel { PosPos, NegNeg, Mixed };
const char* to_string(CaseLabel c);

struct classification_mismatch : std::logic_error {
    using std::logic_error::logic_error;
};

// Classifies a valid ord = 2 graph into its k=2 case by (k+, k-) and asserts
// the full structural content of the matching clause; a valid graph failing
// its clause throws classification_mismatch (this would falsify the
// implementation, not the graph). Throws std::invalid_argument if ord != 2 or
// the graph does not validate.
CaseLabel classify_k2(const DecompositionGraph& g);

// All validate-passing graphs with ord = 2 within the bounds, up to graph
// isomorphism, sorted by canonical encoding. Throws std::invalid_argument for
// genus < 2, negative bounds, or max_components > 8 (combinatorial-explosion
// guard).
std::vector<DecompositionGraph> enumerate_k2(int genus, int max_components, int max_curves);

// Lexicographically minimal encoding over all label permutations; equal
// encodings <=> isomorphic graphs.
std::string canonical_encoding(const DecompositionGraph& g);
bool isomorphic(const DecompositionGraph& a, const DecompositionGraph& b);

// Canonical fixtures used across tests, demos and documentation.
DecompositionGraph uniformizing_graph(int genus = 2);
DecompositionGraph grafted_graph_separating(int chi_left = -1, int chi_right = -1);
DecompositionGraph grafted_graph_nonseparating();
DecompositionGraph bubbled_hyperbolic_graph(int genus = 2);  // PosPos canonical
DecompositionGraph negneg_canonical_graph();
DecompositionGraph mixed_canonical_graph();

}  // namespace bps
