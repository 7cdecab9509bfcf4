#include "mgraph/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mgraph {

using nlohmann::json;

namespace {

std::string idToLabel(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number()) return formatDouble(j.get<double>());
    fail(ErrorCode::BadInput, "vertex/edge id must be a string or number");
}

EdgeId edgeByLabel(const MetricGraph& g, const json& j) {
    std::string label = idToLabel(j);
    auto e = g.findEdge(label);
    if (!e) fail(ErrorCode::BadInput, "unknown edge '" + label + "'");
    return *e;
}

json parseFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::BadInput, "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        fail(ErrorCode::BadInput, "malformed JSON in '" + path + "': " + ex.what());
    }
    return j;
}

Measure measureFromJson(const MetricGraph& g, const json& j) {
    Measure mu(g);
    if (j.contains("density")) {
        for (const json& entry : j.at("density")) {
            EdgeId e = edgeByLabel(g, entry.at("edge"));
            for (const json& piece : entry.at("pieces"))
                mu.addDensityPiece(e, piece.at("from").get<double>(), piece.at("to").get<double>(),
                                   piece.at("value").get<double>());
        }
    }
    if (j.contains("atoms")) {
        for (const json& entry : j.at("atoms")) {
            EdgeId e = edgeByLabel(g, entry.at("edge"));
            mu.addAtom(g.canonical(e, entry.at("offset").get<double>()), entry.at("mass").get<double>());
        }
    }
    return mu;
}

PiecewiseFunction linearFromJson(const MetricGraph& g, const json& j) {
    PiecewiseFunction f(g);
    for (const json& entry : j.at("edges")) {
        EdgeId e = edgeByLabel(g, entry.at("edge"));
        std::vector<double> breaks = entry.at("breakpoints").get<std::vector<double>>();
        std::vector<double> values = entry.at("values").get<std::vector<double>>();
        f.setEdgeLinear(e, breaks, values);
    }
    return f;
}

PiecewiseFunction constantFromJson(const MetricGraph& g, const json& j) {
    PiecewiseFunction f(g);
    for (const json& entry : j.at("edges")) {
        EdgeId e = edgeByLabel(g, entry.at("edge"));
        for (const json& piece : entry.at("pieces"))
            f.addConstantPiece(e, piece.at("from").get<double>(), piece.at("to").get<double>(),
                               piece.at("value").get<double>());
    }
    return f;
}

}  // namespace

ProblemSpec loadProblem(const std::string& path) {
    json j = parseFile(path);
    ProblemSpec ps;
    if (!j.contains("edges")) fail(ErrorCode::BadInput, "problem file needs an 'edges' array");
    std::vector<std::string> vertices;
    if (j.contains("vertices"))
        for (const json& v : j.at("vertices")) vertices.push_back(idToLabel(v));
    std::vector<EdgeSpec> edges;
    for (const json& e : j.at("edges")) {
        EdgeSpec spec;
        spec.label = e.contains("id") ? idToLabel(e.at("id")) : "e" + std::to_string(edges.size());
        spec.from = idToLabel(e.at("from"));
        spec.to = idToLabel(e.at("to"));
        spec.length = e.at("length").get<double>();
        edges.push_back(spec);
    }
    ps.graph = std::make_shared<MetricGraph>(vertices, edges);
    if (j.contains("measure")) ps.measure = measureFromJson(*ps.graph, j.at("measure"));
    if (j.contains("measure2")) ps.measure2 = measureFromJson(*ps.graph, j.at("measure2"));
    if (j.contains("u")) ps.u = linearFromJson(*ps.graph, j.at("u"));
    if (j.contains("weight_a")) ps.weightA = constantFromJson(*ps.graph, j.at("weight_a"));
    if (j.contains("p")) ps.p = j.at("p").is_string() ? std::numeric_limits<double>::infinity()
                                                      : j.at("p").get<double>();
    return ps;
}

Measure loadMeasure(const MetricGraph& g, const std::string& path) { return measureFromJson(g, parseFile(path)); }

PiecewiseFunction loadPiecewiseLinear(const MetricGraph& g, const std::string& path) {
    return linearFromJson(g, parseFile(path));
}

PiecewiseFunction loadPiecewiseConstant(const MetricGraph& g, const std::string& path) {
    return constantFromJson(g, parseFile(path));
}

FunctionalPtr makeFunctionalFromSpec(const ProblemSpec& ps, const std::string& spec) {
    const MetricGraph& g = *ps.graph;
    auto param = [&spec](const std::string& prefix) -> std::optional<double> {
        if (spec.rfind(prefix + ":", 0) != 0) return std::nullopt;
        return std::stod(spec.substr(prefix.size() + 1));
    };
    double p = ps.p.value_or(2.0);
    if (spec == "length") return makeLength(g);
    if (spec == "measure") {
        if (!ps.measure) fail(ErrorCode::BadInput, "functional 'measure' needs a measure section");
        return makeMeasureFunctional(*ps.measure);
    }
    if (auto alpha = param("product")) {
        if (!ps.measure || !ps.measure2)
            fail(ErrorCode::BadInput, "functional 'product' needs measure and measure2 sections");
        return makeProduct(*ps.measure, *ps.measure2, *alpha);
    }
    if (spec == "phi_u") {
        if (!ps.u) fail(ErrorCode::BadInput, "functional 'phi_u' needs a u section");
        PiecewiseFunction a = ps.weightA ? *ps.weightA : PiecewiseFunction::constant(g, 1.0);
        return makePhiU(*ps.u, a, p);
    }
    if (spec == "phi_mu") {
        if (!ps.measure) fail(ErrorCode::BadInput, "functional 'phi_mu' needs a measure section");
        PiecewiseFunction a = ps.weightA ? *ps.weightA : PiecewiseFunction::constant(g, 1.0);
        return makePhiMu(a, p, *ps.measure);
    }
    if (auto theta = param("phi_theta")) {
        if (!ps.measure) fail(ErrorCode::BadInput, "functional 'phi_theta' needs a measure section");
        return makePhiTheta(*theta, p, *ps.measure);
    }
    fail(ErrorCode::BadInput, "unknown functional spec '" + spec + "'");
}

std::string formatDouble(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string pointToString(const MetricGraph& g, const GraphPoint& p) {
    if (p.isVertex()) return "v:" + g.vertexLabel(p.vertex());
    return g.edgeLabel(p.edge()) + "@" + formatDouble(p.offset());
}

GraphPoint pointFromString(const MetricGraph& g, const std::string& s) {
    if (s.rfind("v:", 0) == 0) {
        auto v = g.findVertex(s.substr(2));
        if (!v) fail(ErrorCode::BadInput, "unknown vertex '" + s.substr(2) + "'");
        return GraphPoint::atVertex(*v);
    }
    auto at = s.find('@');
    if (at == std::string::npos) fail(ErrorCode::BadInput, "bad point '" + s + "'");
    auto e = g.findEdge(s.substr(0, at));
    if (!e) fail(ErrorCode::BadInput, "unknown edge in point '" + s + "'");
    return g.canonical(*e, std::stod(s.substr(at + 1)));
}

std::string subsetToString(const Subset& s) {
    const MetricGraph& g = s.graph();
    std::ostringstream out;
    bool firstEdge = true;
    for (EdgeId e = 0; e < g.edgeCount(); ++e) {
        const auto& ivs = s.edgeIntervals(e);
        if (ivs.empty()) continue;
        if (!firstEdge) out << ";";
        firstEdge = false;
        out << g.edgeLabel(e) << ":";
        for (size_t i = 0; i < ivs.size(); ++i) {
            if (i) out << ",";
            out << "[" << formatDouble(ivs[i].lo) << "," << formatDouble(ivs[i].hi) << "]";
        }
    }
    if (firstEdge) out << "-";
    out << " verts ";
    auto verts = s.includedVertices();
    if (verts.empty()) out << "-";
    for (size_t i = 0; i < verts.size(); ++i) out << (i ? "," : "") << g.vertexLabel(verts[i]);
    out << " excl ";
    auto excl = s.excludedPoints();
    if (excl.empty()) out << "-";
    for (size_t i = 0; i < excl.size(); ++i) out << (i ? "," : "") << pointToString(g, excl[i]);
    return out.str();
}

Subset subsetFromString(const MetricGraph& g, const std::string& str) {
    Subset s(g);
    std::istringstream in(str);
    std::string intervals, kw1, verts, kw2, excl;
    in >> intervals >> kw1 >> verts >> kw2 >> excl;
    if (kw1 != "verts" || kw2 != "excl") fail(ErrorCode::BadInput, "bad subset string");
    auto splitOn = [](const std::string& s2, char sep) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s2) {
            if (c == sep) {
                out.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) out.push_back(cur);
        return out;
    };
    if (intervals != "-") {
        for (const std::string& part : splitOn(intervals, ';')) {
            auto colon = part.rfind(':');
            if (colon == std::string::npos) fail(ErrorCode::BadInput, "bad subset segment '" + part + "'");
            auto e = g.findEdge(part.substr(0, colon));
            if (!e) fail(ErrorCode::BadInput, "unknown edge in subset");
            std::string rest = part.substr(colon + 1);
            size_t pos = 0;
            while (pos < rest.size()) {
                if (rest[pos] == ',') ++pos;
                if (rest[pos] != '[') fail(ErrorCode::BadInput, "bad interval syntax");
                auto close = rest.find(']', pos);
                std::string body = rest.substr(pos + 1, close - pos - 1);
                auto comma = body.find(',');
                s.addInterval(*e, std::stod(body.substr(0, comma)), std::stod(body.substr(comma + 1)));
                pos = close + 1;
            }
        }
    }
    if (verts != "-")
        for (const std::string& v : splitOn(verts, ',')) {
            auto vid = g.findVertex(v);
            if (!vid) fail(ErrorCode::BadInput, "unknown vertex '" + v + "'");
            s.addVertex(*vid);
        }
    // vertices touched by intervals but not listed are not members
    if (verts != "-") {
        auto listed = splitOn(verts, ',');
        for (VertexId v = 0; v < g.vertexCount(); ++v) {
            GraphPoint p = GraphPoint::atVertex(v);
            if (!s.contains(p)) continue;
            bool found = false;
            for (const std::string& name : listed)
                if (name == g.vertexLabel(v)) found = true;
            if (!found) s.excludePoint(p);
        }
    } else {
        for (VertexId v = 0; v < g.vertexCount(); ++v) {
            GraphPoint p = GraphPoint::atVertex(v);
            if (s.contains(p)) s.excludePoint(p);
        }
    }
    if (excl != "-")
        for (const std::string& e : splitOn(excl, ',')) s.excludePoint(pointFromString(g, e));
    return s;
}

std::string fileDigest(const std::string& path) {
    std::string data = readTextFile(path);
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", h);
    return buf;
}

void writeTextFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::BadInput, "cannot write '" + path + "'");
    out << content;
}

std::string readTextFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::BadInput, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string partitionDot(const MetricGraph& g, const std::vector<Subset>& parts) {
    static const char* palette[] = {"red",    "blue",   "green3", "orange", "purple",
                                    "brown",  "cyan3",  "magenta", "gold3",  "gray40"};
    std::ostringstream out;
    out << "graph partition {\n";
    for (VertexId v = 0; v < g.vertexCount(); ++v) out << "  \"" << g.vertexLabel(v) << "\";\n";
    for (EdgeId e = 0; e < g.edgeCount(); ++e) {
        const Edge& ed = g.edge(e);
        size_t owner = 0;
        double bestLen = -1.0;
        for (size_t j = 0; j < parts.size(); ++j) {
            double len = 0.0;
            for (const Interval& iv : parts[j].edgeIntervals(e)) len += iv.length();
            if (len > bestLen) {
                bestLen = len;
                owner = j;
            }
        }
        out << "  \"" << g.vertexLabel(ed.from) << "\" -- \"" << g.vertexLabel(ed.to) << "\" [label=\""
            << g.edgeLabel(e) << "\",color=" << palette[owner % 10] << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace mgraph
