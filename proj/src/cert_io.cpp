#include "sdimlab/cert_io.h"

#include "sdimlab/errors.h"

namespace sdimlab {

namespace {

constexpr const char* kFormat = "sdimlab-cert/1";

Rational rat(const nlohmann::json& j) { return Rational::parse(j.get<std::string>()); }

CoverCertificate parse_cover(const nlohmann::json& j) {
    CoverCertificate c;
    c.host = j.at("host").get<std::string>();
    c.epsilon = rat(j.at("epsilon"));
    for (const auto& el : j.at("elements")) {
        SubSet s;
        for (const auto& e : el.value("whole", nlohmann::json::array())) s.whole_edges.push_back(e.get<std::size_t>());
        for (const auto& p : el.value("partial", nlohmann::json::array())) {
            if (!p.is_array() || p.size() != 3) throw ParseError("partial piece must be [edge, s, t]");
            s.partial_edges.push_back(PartialEdge{p[0].get<std::size_t>(), rat(p[1]), rat(p[2])});
        }
        for (const auto& v : el.value("anchors", nlohmann::json::array())) s.anchor_vertices.push_back(v.get<std::size_t>());
        c.elements.push_back(std::move(s));
    }
    return c;
}

SeparationCertificate parse_separation(const nlohmann::json& j) {
    SeparationCertificate s;
    s.host = j.at("host").get<std::string>();
    s.epsilon = rat(j.at("epsilon"));
    for (const auto& p : j.at("points")) {
        if (p.contains("vertex")) {
            s.points.push_back(GraphPoint::at_vertex(p["vertex"].get<std::size_t>()));
        } else {
            s.points.push_back(GraphPoint::on_edge(p.at("edge").get<std::size_t>(), rat(p.at("param"))));
        }
    }
    for (const auto& w : j.at("witnesses")) {
        if (!w.is_array() || w.size() < 3) throw ParseError("witness must be [i, j, kind, ...]");
        PairWitness pw;
        pw.i = w[0].get<std::size_t>();
        pw.j = w[1].get<std::size_t>();
        const auto kind = w[2].get<std::string>();
        if (kind == "distance") {
            pw.kind = PairWitness::Kind::distance;
        } else if (kind == "disconnection") {
            if (w.size() != 7) throw ParseError("disconnection witness must have 7 fields");
            pw.kind = PairWitness::Kind::disconnection;
            pw.disconnection = DisconnectionWitness{w[3].get<std::size_t>(), rat(w[4]), w[5].get<std::size_t>(),
                                                    w[6].get<std::size_t>()};
        } else {
            throw ParseError("unknown witness kind '" + kind + "'");
        }
        s.witnesses.push_back(std::move(pw));
    }
    if (j.contains("guard") && !j["guard"].is_null()) {
        const auto& g = j["guard"];
        s.guard = TruncationGuard{g.at("K").get<unsigned>(), rat(g.at("amplitude")), rat(g.at("threshold"))};
    }
    return s;
}

void parse_into(const nlohmann::json& j, std::vector<Certificate>& out) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "cover") {
        out.emplace_back(parse_cover(j));
    } else if (kind == "separation") {
        out.emplace_back(parse_separation(j));
    } else if (kind == "bundle") {
        for (const auto& c : j.at("certificates")) parse_into(c, out);
    } else {
        throw ParseError("unknown certificate kind '" + kind + "'");
    }
}

}  // namespace

nlohmann::json certificate_json(const CoverCertificate& c) {
    nlohmann::json j;
    j["format"] = kFormat;
    j["kind"] = "cover";
    j["host"] = c.host;
    j["epsilon"] = c.epsilon.str();
    j["bound"] = "S_eps <= " + std::to_string(c.elements.size());
    auto& els = j["elements"] = nlohmann::json::array();
    for (const auto& el : c.elements) {
        nlohmann::json e;
        e["whole"] = el.whole_edges;
        auto& parts = e["partial"] = nlohmann::json::array();
        for (const auto& p : el.partial_edges) parts.push_back({p.edge, p.s.str(), p.t.str()});
        e["anchors"] = el.anchor_vertices;
        els.push_back(std::move(e));
    }
    return j;
}

nlohmann::json certificate_json(const SeparationCertificate& s) {
    nlohmann::json j;
    j["format"] = kFormat;
    j["kind"] = "separation";
    j["host"] = s.host;
    j["epsilon"] = s.epsilon.str();
    j["bound"] = "S_eps >= " + std::to_string(s.points.size());
    auto& pts = j["points"] = nlohmann::json::array();
    for (const auto& p : s.points) {
        if (p.vertex) pts.push_back({{"vertex", *p.vertex}});
        else pts.push_back({{"edge", p.edge}, {"param", p.param.str()}});
    }
    auto& ws = j["witnesses"] = nlohmann::json::array();
    for (const auto& w : s.witnesses) {
        if (w.kind == PairWitness::Kind::distance) {
            ws.push_back({w.i, w.j, "distance"});
        } else {
            const auto& d = w.disconnection;
            ws.push_back({w.i, w.j, "disconnection", d.center, d.delta.str(), d.clipped_fragments,
                          d.center_component_size});
        }
    }
    if (s.guard) {
        j["guard"] = {{"K", s.guard->K}, {"amplitude", s.guard->amplitude.str()}, {"threshold", s.guard->threshold.str()}};
    } else {
        j["guard"] = nullptr;
    }
    return j;
}

std::string serialize_certificates(const std::vector<Certificate>& certs) {
    auto one = [](const Certificate& c) { return std::visit([](const auto& x) { return certificate_json(x); }, c); };
    if (certs.size() == 1) return one(certs.front()).dump() + "\n";
    nlohmann::json j;
    j["format"] = kFormat;
    j["kind"] = "bundle";
    auto& arr = j["certificates"] = nlohmann::json::array();
    for (const auto& c : certs) arr.push_back(one(c));
    return j.dump() + "\n";
}

std::vector<Certificate> parse_certificates(std::string_view text) {
    std::vector<Certificate> out;
    try {
        parse_into(nlohmann::json::parse(text), out);
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed certificate file: ") + ex.what());
    }
    return out;
}

}  // namespace sdimlab
