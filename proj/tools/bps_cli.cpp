// Command-line front end: validate / enumerate / apply on decomposition-graph
// files, and numeric demos with arc dumps.
//
// Exit codes: 0 success, 1 I/O or parse error, 2 validation failure,
// 3 unsupported surgery, 4 numeric-certificate failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "bps/bmconfig.hpp"
#include "bps/decomposition.hpp"
#include "bps/devmap.hpp"
#include "bps/fuchsian.hpp"
#include "bps/graph_json.hpp"
#include "bps/surgery.hpp"

namespace {

constexpr int kOk = 0, kIoError = 1, kInvalid = 2, kUnsupported = 3, kCertificate = 4;

std::string fmt(double v) {
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

struct Report {
    std::vector<std::pair<std::string, std::string>> entries;
    void add(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }
    void add(const std::string& key, const char* value) { entries.emplace_back(key, value); }
    void add(const std::string& key, double value) { add(key, fmt(value)); }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }
    void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
    void print() const {
        std::cout << "---BEGIN REPORT---\n";
        for (const auto& [k, v] : entries) std::cout << k << '=' << v << '\n';
        std::cout << "---END REPORT---\n";
    }
};

void print_validation(const bps::ValidationReport& rep) {
    if (rep.valid) {
        std::cout << "valid: all rules hold\n";
    } else {
        std::cout << "INVALID: " << rep.violations.size() << " violation(s)\n";
        for (const auto& v : rep.violations)
            std::cout << "  [" << v.rule << "] " << v.message << "\n";
    }
}

int cmd_validate(const std::string& path) {
    bps::DecompositionGraph g;
    try {
        g = bps::read_graph_json_file(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }
    bps::ValidationReport rep;
    try {
        rep = bps::validate(g);
    } catch (const std::invalid_argument& e) {
        std::cerr << "structural error: " << e.what() << "\n";
        return kIoError;
    }
    print_validation(rep);
    Report out;
    out.add("valid", rep.valid);
    out.add("ord", g.ord());
    out.add("nesting_ambiguous", rep.nesting_ambiguous);
    for (const auto& [id, eu] : rep.derived_euler_class) out.add("eu." + id, eu);
    for (const auto& [id, ess] : rep.derived_essential) out.add("essential." + id, ess);
    for (const auto& v : rep.violations) out.add("violation", v.rule + ": " + v.message);
    if (rep.valid && g.ord() == 2) {
        try {
            out.add("classification", bps::to_string(bps::classify_k2(g)));
        } catch (const bps::classification_mismatch& e) {
            out.add("classification", std::string("MISMATCH: ") + e.what());
        }
    }
    out.print();
    return rep.valid ? kOk : kInvalid;
}

int cmd_enumerate(int genus, int max_components, int max_curves, const std::string& out_dir) {
    std::vector<bps::DecompositionGraph> graphs;
    try {
        graphs = bps::enumerate_k2(genus, max_components, max_curves);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }
    try {
        std::filesystem::create_directories(out_dir);
        int i = 0;
        for (const auto& g : graphs) {
            std::ostringstream name;
            name << "graph_" << std::setw(3) << std::setfill('0') << i++ << ".json";
            bps::write_graph_json_file(g, out_dir + "/" + name.str());
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }
    std::cout << "count=" << graphs.size() << "\n";
    Report out;
    out.add("count", static_cast<int>(graphs.size()));
    int pospos = 0, negneg = 0, mixed = 0;
    for (const auto& g : graphs) {
        switch (bps::classify_k2(g)) {
            case bps::CaseLabel::PosPos: ++pospos; break;
            case bps::CaseLabel::NegNeg: ++negneg; break;
            case bps::CaseLabel::Mixed: ++mixed; break;
        }
    }
    out.add("pospos", pospos);
    out.add("negneg", negneg);
    out.add("mixed", mixed);
    out.print();
    return kOk;
}

int cmd_apply(const std::string& graph_path, const std::string& script_path) {
    bps::DecompositionGraph g;
    std::vector<bps::ScriptStep> steps;
    try {
        g = bps::read_graph_json_file(graph_path);
        std::ifstream in(script_path);
        if (!in) throw std::runtime_error("cannot open " + script_path);
        steps = bps::parse_script(in);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }
    int stepno = 0;
    for (const auto& step : steps) {
        ++stepno;
        try {
            bps::SurgeryResult res = bps::apply_step(g, step);
            std::cout << "# step " << stepno << ": " << step.line << "  [" << res.provenance
                      << ", divisor " << res.divisor_delta << "]\n";
            std::cout << bps::write_graph_json(res.graph);
            g = std::move(res.graph);
        } catch (const bps::surgery_rejected& e) {
            std::cerr << "step " << stepno << " rejected: " << e.what() << "\n";
            for (const auto& v : e.report.violations)
                std::cerr << "  [" << v.rule << "] " << v.message << "\n";
            return kInvalid;
        } catch (const bps::unsupported_surgery& e) {
            std::cerr << "step " << stepno << ": " << e.what() << "\n";
            return kUnsupported;
        } catch (const bps::not_a_bubble& e) {
            std::cerr << "step " << stepno << ": " << e.what() << "\n";
            return kUnsupported;
        } catch (const std::invalid_argument& e) {
            std::cerr << "step " << stepno << ": " << e.what() << "\n";
            return kIoError;
        }
    }
    Report out;
    out.add("steps", stepno);
    out.add("final_ord", g.ord());
    out.add("final_valid", bps::validate(g).valid);
    out.print();
    return kOk;
}

void dump_arc(const bps::DevelopedArc& arc, const std::string& dir, const std::string& name) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::ofstream out(dir + "/" + name);
    bps::write_arc_dump(arc, out);
}

int demo_nonisobub(double theta, int word_ball, double tol, const std::string& out_dir) {
    auto rep = bps::FuchsianRepresentation::standard_genus2();
    bps::SurfaceGroupWord gamma = bps::SurfaceGroupWord::parse("a1 b1 A1 B1");
    bps::ScenarioOptions opt;
    opt.word_ball = word_ball;
    opt.tol = tol;
    bps::NonIsoBubReport rep0 = bps::scenario_nonisobub(rep, gamma, 0.3, 0.0, opt);
    bps::NonIsoBubReport repT = bps::scenario_nonisobub(rep, gamma, 0.3, theta, opt);

    std::cout << "alpha_{+theta}: injective=" << (repT.plus.injective ? "true" : "false")
              << " margin=" << fmt(repT.plus.margin) << "\n";
    std::cout << "alpha_{-theta}: injective=" << (repT.minus.injective ? "true" : "false")
              << " margin=" << fmt(repT.minus.margin) << "\n";
    std::cout << "alpha_0: injective=" << (rep0.zero.injective ? "true" : "false");
    if (rep0.zero.witness)
        std::cout << " witness=(" << rep0.zero.witness->sample_i << ","
                  << rep0.zero.witness->sample_j << ")";
    std::cout << "\n";
    std::cout << "orientation at the base point: +theta -> "
              << (repT.orientation_plus > 0 ? "left" : "right") << ", -theta -> "
              << (repT.orientation_minus > 0 ? "left" : "right") << "\n";

    dump_arc(repT.arc_plus, out_dir, "alpha_plus.txt");
    dump_arc(repT.arc_minus, out_dir, "alpha_minus.txt");
    dump_arc(rep0.arc_zero, out_dir, "alpha_zero.txt");

    Report out;
    out.add("theta", theta);
    out.add("injective_plus", repT.plus.injective);
    out.add("injective_minus", repT.minus.injective);
    out.add("injective_zero", rep0.zero.injective);
    out.add("orientation_plus", repT.orientation_plus);
    out.add("orientation_minus", repT.orientation_minus);
    out.print();

    bool expected = repT.plus.injective && repT.minus.injective && !rep0.zero.injective &&
                    repT.orientation_plus == -repT.orientation_minus;
    return expected ? kOk : kCertificate;
}

int demo_systole(int word_ball) {
    auto rep = bps::FuchsianRepresentation::standard_genus2();
    double reference = 2.0 * std::acosh(1.0 + std::sqrt(2.0));
    Report out;
    double last = 0.0;
    for (int L = 1; L <= word_ball; ++L) {
        last = bps::systole_estimate(rep, L);
        std::cout << "systole estimate, words up to " << L << ": " << fmt(last) << "\n";
        out.add("sys_" + std::to_string(L), last);
    }
    std::cout << "closed form 2 acosh(1+sqrt 2): " << fmt(reference) << "\n";
    out.add("reference", reference);
    out.print();
    return std::abs(last - reference) < 1e-6 ? kOk : kCertificate;
}

int demo_index(int n_samples, const std::string& out_dir) {
    auto rep = bps::FuchsianRepresentation::standard_genus2();
    Report out;
    bool all_match = true;

    auto grafted = bps::StructureModel::grafted(rep, bps::SurfaceGroupWord::parse("a1 b1 A1 B1"), true);
    auto arc = bps::develop_geodesic_arc(rep, bps::Complex(0.0, 1.0), M_PI / 2.0, 0.4, 64);
    auto bubbled = bps::StructureModel::bubbled(bps::StructureModel::uniformizing(rep), arc, 2, 1e-6);

    int i = 0;
    for (const auto* model : {&grafted, &bubbled}) {
        for (const auto& rc : model->real_curves(n_samples)) {
            int numeric = bps::index_of_real_curve(rc.curve, rc.holonomy, rc.fixed_point, 0.02);
            std::string name = (model == &grafted ? "grafted." : "bubbled.") + rc.name;
            std::cout << name << ": numeric index " << numeric << ", combinatorial "
                      << rc.expected_index << "\n";
            out.add("index." + name, numeric);
            all_match = all_match && numeric == rc.expected_index;
            dump_arc(rc.curve, out_dir, "curve_" + std::to_string(i++) + ".txt");
        }
    }

    // synthetic curve winding three times with holonomy z -> 2z
    bps::MoebiusMap doubling = bps::MoebiusMap::diagonal(std::sqrt(2.0));
    double a_end = std::atan(0.5);
    double sweep = 3.0 * M_PI + (M_PI / 4.0 - a_end);
    std::vector<bps::ProjectivePoint> pts;
    for (int k = 0; k <= 6000; ++k) {
        double t = M_PI / 4.0 - sweep * k / 6000;
        pts.emplace_back(std::cos(t), std::sin(t));
    }
    auto winding = bps::DevelopedArc::from_samples(std::move(pts),
                                                   std::numeric_limits<double>::infinity());
    int widx = bps::index_of_real_curve(winding, doubling, bps::ProjectivePoint(0.0, 1.0), 0.02);
    std::cout << "synthetic winding-3 curve: numeric index " << widx << ", expected 3\n";
    out.add("index.winding3", widx);
    all_match = all_match && widx == 3;

    out.print();
    return all_match ? kOk : kCertificate;
}

int demo_safety(int word_ball) {
    auto rep = bps::FuchsianRepresentation::standard_genus2();
    Report out;

    bps::Complex x(0.0, 1.0), y(0.3, 1.4);
    auto consts = bps::safety_constants(rep, x, y, word_ball);
    std::cout << "well-separated points: sys=" << fmt(consts.sys) << " K=" << fmt(consts.K)
              << " A=" << fmt(consts.A) << "\n";
    out.add("sys", consts.sys);
    out.add("K", consts.K);
    out.add("A", consts.A);
    out.add("single_move_bound", bps::safe_move_bound_single(consts));
    out.add("double_move_bound", bps::safe_move_bound_double(consts));

    bps::Complex avatar = rep.generator(1)(x);
    auto consts_avatar = bps::safety_constants(rep, x, avatar, word_ball);
    std::cout << "avatar configuration: K=" << fmt(consts_avatar.K) << " simply developed: "
              << (consts_avatar.simply_developed ? "yes" : "no") << "\n";
    out.add("avatar_K", consts_avatar.K);
    out.add("avatar_simply_developed", consts_avatar.simply_developed);

    auto consts_opp = bps::safety_constants(rep, x, std::conj(y), word_ball);
    std::cout << "opposite half-planes: K=" << (std::isinf(consts_opp.K) ? "inf" : fmt(consts_opp.K))
              << "\n";
    out.add("opposite_K", std::isinf(consts_opp.K) ? std::string("inf") : fmt(consts_opp.K));
    out.print();

    bool expected = consts.simply_developed && !consts_avatar.simply_developed &&
                    std::isinf(consts_opp.K);
    return expected ? kOk : kCertificate;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"branched projective structure calculus"};
    app.require_subcommand(1);

    std::string graph_path, script_path, out_dir;
    int genus = 2, max_components = 4, max_curves = 4;
    std::string demo_name;
    double theta = 0.2, tol = 1e-6;
    int word_ball = 3, n_samples = 600;

    auto* validate_cmd = app.add_subcommand("validate", "validate a decomposition-graph file");
    validate_cmd->add_option("file", graph_path, "graph JSON file")->required();

    auto* enum_cmd = app.add_subcommand("enumerate", "enumerate valid two-branch-point graphs");
    enum_cmd->add_option("--genus", genus, "surface genus")->capture_default_str();
    enum_cmd->add_option("--max-components", max_components)->capture_default_str();
    enum_cmd->add_option("--max-curves", max_curves)->capture_default_str();
    enum_cmd->add_option("--out", out_dir, "output directory")->required();

    auto* apply_cmd = app.add_subcommand("apply", "apply a surgery script to a graph file");
    apply_cmd->add_option("graph", graph_path)->required();
    apply_cmd->add_option("script", script_path)->required();

    auto* demo_cmd = app.add_subcommand("demo", "numeric demos: nonisobub, systole, index, safety");
    demo_cmd->add_option("name", demo_name)->required();
    demo_cmd->add_option("--theta", theta)->capture_default_str();
    demo_cmd->add_option("--word-ball", word_ball)->capture_default_str();
    demo_cmd->add_option("--tol", tol)->capture_default_str();
    demo_cmd->add_option("--samples", n_samples)->capture_default_str();
    demo_cmd->add_option("--out", out_dir, "directory for arc dumps");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return cmd_validate(graph_path);
        if (enum_cmd->parsed()) return cmd_enumerate(genus, max_components, max_curves, out_dir);
        if (apply_cmd->parsed()) return cmd_apply(graph_path, script_path);
        if (demo_cmd->parsed()) {
            if (demo_name == "nonisobub") return demo_nonisobub(theta, word_ball, tol, out_dir);
            if (demo_name == "systole") return demo_systole(std::max(word_ball, 6));
            if (demo_name == "index") return demo_index(n_samples, out_dir);
            if (demo_name == "safety") return demo_safety(std::max(word_ball, 4));
            std::cerr << "unknown demo: " << demo_name << "\n";
            return kIoError;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }
    return kIoError;
}
