#include "bps/graph_json.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bps {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::set<std::string>& keys, const std::string& where) {
    if (!obj.is_object()) throw graph_parse_error(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!keys.count(it.key()))
            throw graph_parse_error(where + ": unknown key '" + it.key() + "'");
    for (const auto& k : keys)
        if (!obj.contains(k)) throw graph_parse_error(where + ": missing key '" + k + "'");
}

int require_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw graph_parse_error(where + ": expected an integer");
    return v.get<int>();
}

std::string require_string(const json& v, const std::string& where) {
    if (!v.is_string()) throw graph_parse_error(where + ": expected a string");
    return v.get<std::string>();
}

DecompositionGraph from_json(const json& j) {
    require_keys(j, {"genus", "components", "curves"}, "graph");
    DecompositionGraph g;
    g.genus = require_int(j["genus"], "genus");
    if (!j["components"].is_array()) throw graph_parse_error("components: expected an array");
    if (!j["curves"].is_array()) throw graph_parse_error("curves: expected an array");

    for (const auto& jc : j["components"]) {
        require_keys(jc, {"id", "sign", "euler", "branch_orders", "boundary"}, "component");
        ComponentRecord c;
        c.id = require_string(jc["id"], "component id");
        std::string sign = require_string(jc["sign"], "component sign");
        if (sign == "+") c.sign = 1;
        else if (sign == "-") c.sign = -1;
        else throw graph_parse_error("component " + c.id + ": sign must be \"+\" or \"-\"");
        c.euler = require_int(jc["euler"], "component euler");
        if (!jc["branch_orders"].is_array())
            throw graph_parse_error("component " + c.id + ": branch_orders must be an array");
        for (const auto& o : jc["branch_orders"]) {
            int v = require_int(o, "branch order");
            if (v < 1) throw graph_parse_error("component " + c.id + ": branch order < 1");
            c.branch_orders.push_back(v);
        }
        if (!jc["boundary"].is_array())
            throw graph_parse_error("component " + c.id + ": boundary must be an array");
        for (const auto& b : jc["boundary"])
            c.boundary.push_back(require_string(b, "boundary entry"));
        g.components.push_back(std::move(c));
    }

    for (const auto& jl : j["curves"]) {
        require_keys(jl, {"id", "index", "essential", "holonomy", "left", "right"}, "curve");
        RealCurveRecord l;
        l.id = require_string(jl["id"], "curve id");
        l.index = require_int(jl["index"], "curve index");
        if (l.index < 0) throw graph_parse_error("curve " + l.id + ": index must be >= 0");
        if (!jl["essential"].is_boolean())
            throw graph_parse_error("curve " + l.id + ": essential must be a boolean");
        l.essential = jl["essential"].get<bool>();
        std::string h = require_string(jl["holonomy"], "curve holonomy");
        if (h == "trivial") l.holonomy = HolonomyType::Trivial;
        else if (h == "loxodromic") l.holonomy = HolonomyType::Loxodromic;
        else throw graph_parse_error("curve " + l.id + ": holonomy must be \"trivial\" or \"loxodromic\"");
        l.left = require_string(jl["left"], "curve left");
        l.right = require_string(jl["right"], "curve right");
        g.curves.push_back(std::move(l));
    }
    return g;
}

}  // namespace

DecompositionGraph parse_graph_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw graph_parse_error(std::string("not valid JSON: ") + e.what());
    }
    return from_json(j);
}

DecompositionGraph read_graph_json(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph_json(buf.str());
}

DecompositionGraph read_graph_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw graph_parse_error("cannot open " + path);
    return read_graph_json(in);
}

std::string write_graph_json(const DecompositionGraph& g) {
    json j;
    j["genus"] = g.genus;
    j["components"] = json::array();
    for (const auto& c : g.components) {
        json jc;
        jc["id"] = c.id;
        jc["sign"] = c.sign > 0 ? "+" : "-";
        jc["euler"] = c.euler;
        jc["branch_orders"] = c.branch_orders;
        jc["boundary"] = c.boundary;
        j["components"].push_back(std::move(jc));
    }
    j["curves"] = json::array();
    for (const auto& l : g.curves) {
        json jl;
        jl["id"] = l.id;
        jl["index"] = l.index;
        jl["essential"] = l.essential;
        jl["holonomy"] = l.holonomy == HolonomyType::Trivial ? "trivial" : "loxodromic";
        jl["left"] = l.left;
        jl["right"] = l.right;
        j["curves"].push_back(std::move(jl));
    }
    return j.dump(2) + "\n";
}

void write_graph_json_file(const DecompositionGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw graph_parse_error("cannot write " + path);
    out << write_graph_json(g);
}

}  // namespace bps
