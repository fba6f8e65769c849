#include "sdimlab/graph_io.h"

#include "sdimlab/errors.h"

#include <cstdint>
#include <cstdio>

namespace sdimlab {

namespace {

constexpr const char* kFormat = "sdimlab-graph/1";

void fnv1a(std::uint64_t& h, std::string_view s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
}

}  // namespace

std::string host_id(const PLGraph& g) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const auto& p : g.vertices()) {
        fnv1a(h, p.x.str());
        fnv1a(h, ",");
        fnv1a(h, p.y.str());
        fnv1a(h, ";");
    }
    fnv1a(h, "|");
    for (const auto& e : g.edges()) {
        fnv1a(h, std::to_string(e.u));
        fnv1a(h, "-");
        fnv1a(h, std::to_string(e.v));
        fnv1a(h, ";");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string serialize_graph(const PLGraph& g, const nlohmann::json& meta) {
    nlohmann::json j;
    j["format"] = kFormat;
    j["host"] = host_id(g);
    auto& vs = j["vertices"] = nlohmann::json::array();
    for (const auto& p : g.vertices()) vs.push_back({p.x.str(), p.y.str()});
    auto& es = j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges()) es.push_back({e.u, e.v});
    j["meta"] = meta;
    return j.dump(1) + "\n";
}

GraphDocument parse_graph(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("graph file is not JSON: ") + ex.what());
    }
    try {
        if (j.value("format", std::string(kFormat)) != kFormat) {
            throw ParseError("unsupported graph format '" + j["format"].get<std::string>() + "'");
        }
        std::vector<Point> vertices;
        for (const auto& v : j.at("vertices")) {
            if (!v.is_array() || v.size() != 2) throw ParseError("vertex must be a [x, y] pair");
            vertices.push_back(Point{Rational::parse(v[0].get<std::string>()),
                                     Rational::parse(v[1].get<std::string>())});
        }
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a [u, v] pair");
            edges.push_back(Edge{e[0].get<std::size_t>(), e[1].get<std::size_t>()});
        }
        GraphDocument doc{PLGraph(std::move(vertices), std::move(edges)),
                          j.value("meta", nlohmann::json::object())};
        if (j.contains("host") && j["host"].get<std::string>() != host_id(doc.graph)) {
            throw ParseError("stored host id does not match the graph contents");
        }
        return doc;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed graph file: ") + ex.what());
    }
}

}  // namespace sdimlab
