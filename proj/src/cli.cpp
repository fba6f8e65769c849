#include "sdimlab/cli.h"

#include "sdimlab/budget.h"
#include "sdimlab/cert_io.h"
#include "sdimlab/continuum.h"
#include "sdimlab/cover.h"
#include "sdimlab/dimension.h"
#include "sdimlab/errors.h"
#include "sdimlab/graph_io.h"
#include "sdimlab/ifs.h"
#include "sdimlab/svg.h"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sdimlab {

namespace {

namespace fs = std::filesystem;

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("IoError", what) {}
};

/// A verification failure, reported with exit code 1.
class VerifyFailed : public Error {
public:
    explicit VerifyFailed(const std::string& what) : Error("VerificationFailed", what) {}
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_atomic(const std::string& path, const std::string& data) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp);
        out << data;
        out.flush();
        if (!out) throw IoError("write failed for " + tmp);
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot replace " + path);
    }
}

void require_distinct(const std::string& in, const std::string& out) {
    if (in.empty() || out.empty()) return;
    std::error_code ec;
    if (in == out || fs::equivalent(in, out, ec)) throw InvalidArgument("input and output paths must differ: " + out);
}

Rational positive_rational(const std::string& text, const char* what) {
    const Rational r = Rational::parse(text);
    if (r.sign() <= 0) throw ParseError(std::string(what) + " must be positive, got " + r.str());
    return r;
}

double positive_decimal(const std::string& text, const char* what) {
    double v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) {
        throw ParseError(std::string(what) + " is not a decimal number: '" + text + "'");
    }
    if (!(v > 0)) throw ParseError(std::string(what) + " must be positive");
    return v;
}

std::optional<GuardRequest> guard_from_meta(const GraphDocument& doc) {
    if (!doc.meta.contains("tooth_spec")) {
        throw InvalidArgument("--guard needs a graph built from a tooth spec");
    }
    const auto spec = parse_tooth_spec(doc.meta["tooth_spec"].dump());
    return GuardRequest{spec.K, guard_amplitude(spec)};
}

struct Options {
    std::string spec, graph, cert, epsilon, mode = "both", eps_start, eps_factor = "1/2", delta, out;
    std::string delta_rational;
    unsigned steps = 10, depth = 6, scales = 12;
    bool guard = false;
    bool no_sampling = false;
};

int cmd_build(const Options& o, std::ostream& out) {
    require_distinct(o.spec, o.out);
    const auto spec = parse_tooth_spec(read_file(o.spec));
    const auto g = build_shark_teeth(spec, Budget::from_env());
    nlohmann::json meta;
    meta["tooth_spec"] = tooth_spec_json(spec);
    meta["K"] = spec.K;
    write_atomic(o.out, serialize_graph(g, meta));
    out << g.num_vertices() << " vertices, " << g.num_edges() << " edges\n";
    return kExitOk;
}

int cmd_cover(const Options& o, std::ostream& out) {
    require_distinct(o.graph, o.out);
    const auto doc = parse_graph(read_file(o.graph));
    const Rational eps = positive_rational(o.epsilon, "epsilon");
    const bool want_upper = o.mode != "lower";
    const bool want_lower = o.mode != "upper";

    SeparationOptions sep;
    sep.budget = Budget::from_env();
    sep.interior_sampling = !o.no_sampling;
    if (!o.delta_rational.empty()) sep.delta = positive_rational(o.delta_rational, "delta");
    if (o.guard) sep.guard = guard_from_meta(doc);

    std::vector<Certificate> certs;
    std::ostringstream line;
    if (want_lower) {
        auto s = lower_separation(doc.graph, eps, sep);
        line << "lower=" << s.points.size();
        certs.emplace_back(std::move(s));
    }
    if (want_upper) {
        auto c = upper_cover(doc.graph, eps);
        if (want_lower) line << ' ';
        line << "upper=" << c.elements.size();
        certs.emplace_back(std::move(c));
    }
    write_atomic(o.out, serialize_certificates(certs));
    out << line.str() << "\n";
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const auto doc = parse_graph(read_file(o.graph));
    const auto certs = parse_certificates(read_file(o.cert));
    if (certs.empty()) throw ParseError("certificate file holds no certificate");
    for (const auto& c : certs) {
        if (const auto* cov = std::get_if<CoverCertificate>(&c)) {
            if (!verify_cover(doc.graph, *cov)) throw VerifyFailed("cover certificate rejected");
            out << "verified: S_eps <= " << cov->elements.size() << " at eps=" << cov->epsilon.str() << "\n";
        } else {
            const auto& sep = std::get<SeparationCertificate>(c);
            if (!verify_separation(doc.graph, sep)) throw VerifyFailed("separation certificate rejected");
            out << "verified: S_eps >= " << sep.points.size() << " at eps=" << sep.epsilon.str()
                << (sep.guard ? " (guarded, holds for the untruncated continuum)" : "") << "\n";
        }
    }
    return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    require_distinct(o.graph, o.out);
    const auto doc = parse_graph(read_file(o.graph));
    std::vector<Rational> schedule;
    if (o.eps_start.empty()) {
        schedule = default_schedule(doc.graph);
    } else {
        if (o.steps < 1) throw ParseError("steps must be >= 1");
        const Rational factor = positive_rational(o.eps_factor, "eps-factor");
        if (factor >= Rational(1)) throw ParseError("eps-factor must be < 1");
        schedule = geometric_schedule(positive_rational(o.eps_start, "eps-start"), factor, o.steps);
    }
    SweepOptions so;
    so.separation.budget = Budget::from_env();
    so.separation.interior_sampling = !o.no_sampling;
    if (o.guard) so.guard = guard_from_meta(doc);
    const auto profile = sweep(doc.graph, schedule, so);
    write_atomic(o.out, profile_csv(profile));
    for (const auto& r : profile.rows) {
        out << "eps=" << r.epsilon.str() << " lower=" << r.lower << " upper=" << r.upper;
        if (r.guarded_lower) out << " guarded=" << *r.guarded_lower;
        out << "\n";
    }
    const auto est = sdim_estimate(profile);
    char buf[128];
    std::snprintf(buf, sizeof buf, "sdim proxy (finest third): [%.6f, %.6f]\n", est.low, est.high);
    out << buf;
    return kExitOk;
}

int cmd_ifs(const Options& o, std::ostream& out) {
    require_distinct(o.spec, o.out);
    const double delta = positive_decimal(o.delta, "delta");
    IFSSpec spec = [&] {
        try {
            return parse_ifs_spec(read_file(o.spec));
        } catch (const DomainError& e) {
            throw ParseError(std::string("not a contraction system: ") + e.what());
        }
    }();
    Budget budget = Budget::from_env();
    const double D = approximate_diameter(spec, o.depth, budget);
    const auto rep = theorem2_report(spec, delta, o.scales, D);
    write_atomic(o.out, rep.to_text());
    char buf[160];
    std::snprintf(buf, sizeof buf, "bound=%.4f k0=%llu eps0=%.6e %s\n", rep.bound,
                  static_cast<unsigned long long>(rep.k0.k0), rep.k0.epsilon0, rep.all_pass ? "PASS" : "FAIL");
    out << buf;
    return rep.all_pass ? kExitOk : kExitVerifyFailed;
}

int cmd_render(const Options& o, std::ostream& out) {
    require_distinct(o.graph.empty() ? o.spec : o.graph, o.out);
    std::string svg;
    if (!o.graph.empty()) {
        svg = render_graph_svg(parse_graph(read_file(o.graph)).graph);
    } else {
        const std::string text = read_file(o.spec);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed spec: ") + e.what());
        }
        if (j.is_object() && j.contains("maps")) {
            const IFSSpec s = [&] {
                try {
                    return parse_ifs_spec(text);
                } catch (const DomainError& e) {
                    throw ParseError(std::string("not a contraction system: ") + e.what());
                }
            }();
            svg = render_cloud_svg(attractor_cloud(s, o.depth, fixed_point(s.maps().front()), Budget::from_env()));
        } else {
            svg = render_graph_svg(build_shark_teeth(parse_tooth_spec(text), Budget::from_env()));
        }
    }
    write_atomic(o.out, svg);
    out << "wrote " << o.out << "\n";
    return kExitOk;
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const CrossingAssertionFailure*>(&e)) return kExitCrossing;
    if (dynamic_cast<const BudgetExceeded*>(&e) || dynamic_cast<const SizeLimit*>(&e)) return kExitBudget;
    if (dynamic_cast<const TooFewScales*>(&e)) return kExitTooFewScales;
    if (dynamic_cast<const HostMismatch*>(&e) || dynamic_cast<const VerifyFailed*>(&e)) return kExitVerifyFailed;
    return kExitParse;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Connected-cover numbers of shark-teeth continua and IFS attractors", "sdimlab"};
    app.require_subcommand(1);
    Options o;

    auto* build = app.add_subcommand("build", "Build a truncated shark-teeth continuum");
    build->add_option("--spec", o.spec, "Tooth spec (JSON)")->required();
    build->add_option("--out", o.out, "Graph output path")->required();

    auto* cover = app.add_subcommand("cover", "Compute cover / separation certificates");
    cover->add_option("--graph", o.graph)->required();
    cover->add_option("--epsilon", o.epsilon, "Scale as p/q")->required();
    cover->add_option("--mode", o.mode)->check(CLI::IsMember({"upper", "lower", "both"}));
    cover->add_option("--delta", o.delta_rational, "Ball-clip granularity as p/q (default eps/8)");
    cover->add_flag("--guard", o.guard, "Keep only points above the truncation guard");
    cover->add_flag("--no-sampling", o.no_sampling, "Vertices only as separation candidates");
    cover->add_option("--out", o.out)->required();

    auto* verify = app.add_subcommand("verify", "Check a certificate file against a graph");
    verify->add_option("--graph", o.graph)->required();
    verify->add_option("--cert", o.cert)->required();

    auto* sw = app.add_subcommand("sweep", "Bounds over a geometric scale schedule");
    sw->add_option("--graph", o.graph)->required();
    sw->add_option("--eps-start", o.eps_start, "First scale as p/q (default: diameter/2)");
    sw->add_option("--eps-factor", o.eps_factor, "Ratio between scales as p/q");
    sw->add_option("--steps", o.steps);
    sw->add_flag("--guard", o.guard, "Add a guarded lower bound column");
    sw->add_flag("--no-sampling", o.no_sampling);
    sw->add_option("--out", o.out, "CSV output path")->required();

    auto* ifs = app.add_subcommand("ifs", "Dimension bound report for an affine IFS");
    ifs->add_option("--spec", o.spec)->required();
    ifs->add_option("--delta", o.delta, "Slack as a decimal")->required();
    ifs->add_option("--depth", o.depth, "Cloud depth for the diameter estimate");
    ifs->add_option("--scales", o.scales, "Rows in the report");
    ifs->add_option("--out", o.out)->required();

    auto* render = app.add_subcommand("render", "Draw a graph or IFS cloud as SVG");
    auto* rg = render->add_option("--graph", o.graph);
    auto* rs = render->add_option("--spec", o.spec, "IFS spec or tooth spec");
    rg->excludes(rs);
    render->add_option("--depth", o.depth, "IFS cloud depth");
    render->add_option("--out", o.out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: UsageError: " << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (build->parsed()) return cmd_build(o, out);
        if (cover->parsed()) return cmd_cover(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        if (sw->parsed()) return cmd_sweep(o, out);
        if (ifs->parsed()) return cmd_ifs(o, out);
        if (o.graph.empty() && o.spec.empty()) throw ParseError("render needs --graph or --spec");
        return cmd_render(o, out);
    } catch (const Error& e) {
        err << "error: " << e.tag() << ": " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: InternalError: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
}

}  // namespace sdimlab
