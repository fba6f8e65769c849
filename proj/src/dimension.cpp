#include "sdimlab/dimension.h"

#include "sdimlab/errors.h"
#include "sdimlab/graph_io.h"

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

namespace sdimlab {

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace

double scale_ratio(std::uint64_t count, double epsilon) {
    if (count <= 1) return 0;
    return -std::log(static_cast<double>(count)) / std::log(epsilon);
}

ScaleRow make_row(Rational epsilon, std::uint64_t lower, std::uint64_t upper) {
    ScaleRow r;
    const double e = epsilon.to_double();
    r.epsilon = std::move(epsilon);
    r.lower = lower;
    r.upper = upper;
    r.ratio_lower = scale_ratio(lower, e);
    r.ratio_upper = scale_ratio(upper, e);
    return r;
}

std::vector<Rational> geometric_schedule(const Rational& start, const Rational& factor, unsigned steps) {
    if (start.sign() <= 0) throw InvalidArgument("schedule start must be positive");
    if (factor.sign() <= 0 || factor >= Rational(1)) throw InvalidArgument("schedule factor must lie in (0, 1)");
    std::vector<Rational> out;
    Rational e = start;
    for (unsigned j = 0; j < steps; ++j) {
        out.push_back(e);
        e *= factor;
    }
    return out;
}

std::vector<Rational> default_schedule(const PLGraph& g) {
    const Rational d2 = graph_diameter2(g);
    Rational d;
    if (!exact_sqrt(d2, d)) {
        constexpr long kBits = 30;
        long j = static_cast<long>(std::floor(std::sqrt(d2.to_double()) * static_cast<double>(1L << kBits)));
        auto at = [&](long i) { return Rational(i) * Rational::pow2(-kBits); };
        while (j > 0 && at(j) * at(j) > d2) --j;
        while (at(j + 1) * at(j + 1) <= d2) ++j;
        d = at(j);
    }
    if (d.sign() <= 0) throw InvalidArgument("graph has zero diameter");
    return geometric_schedule(d / Rational(2), Rational(1, 2), 10);
}

DimensionProfile sweep(const PLGraph& g, const std::vector<Rational>& schedule, const SweepOptions& opts) {
    if (schedule.empty()) throw InvalidArgument("empty schedule");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i].sign() <= 0) throw InvalidArgument("schedule entries must be positive");
        if (i > 0 && !(schedule[i] < schedule[i - 1])) throw InvalidArgument("schedule must strictly decrease");
    }

    auto row_at = [&](const Rational& eps) {
        const auto cover = upper_cover(g, eps, opts.cover);
        const auto sep = lower_separation(g, eps, opts.separation);
        if (opts.verify && !verify_cover(g, cover)) throw std::logic_error("cover certificate failed at eps=" + eps.str());
        if (opts.verify && !verify_separation(g, sep)) {
            throw std::logic_error("separation certificate failed at eps=" + eps.str());
        }
        if (sep.points.size() > cover.elements.size()) {
            throw std::logic_error("lower bound exceeds upper bound at eps=" + eps.str());
        }
        ScaleRow row = make_row(eps, sep.points.size(), cover.elements.size());
        if (opts.guard) {
            SeparationOptions guarded = opts.separation;
            guarded.guard = opts.guard;
            const auto gs = lower_separation(g, eps, guarded);
            if (opts.verify && !verify_separation(g, gs)) {
                throw std::logic_error("guarded separation certificate failed at eps=" + eps.str());
            }
            row.guarded_lower = gs.points.size();
        }
        return row;
    };

    DimensionProfile p;
    p.source = host_id(g);
    if (opts.guard) p.K = opts.guard->K;
    if (opts.parallel && schedule.size() > 1) {
        std::vector<std::future<ScaleRow>> jobs;
        for (const auto& eps : schedule) jobs.push_back(std::async(std::launch::async, row_at, std::cref(eps)));
        for (auto& j : jobs) p.rows.push_back(j.get());
    } else {
        for (const auto& eps : schedule) p.rows.push_back(row_at(eps));
    }
    if (!cross_scale_consistent(p)) throw std::logic_error("profile violates cross-scale consistency");
    return p;
}

DimensionProfile ifs_profile(const IFSSpec& s, double D, const std::vector<double>& schedule) {
    DimensionProfile p;
    p.source = s.name();
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (i > 0 && !(schedule[i] < schedule[i - 1])) throw InvalidArgument("schedule must strictly decrease");
        p.rows.push_back(make_row(Rational(mpq_class(schedule[i])), 1, s_upper_ifs(s, schedule[i], D)));
    }
    return p;
}

bool cross_scale_consistent(const DimensionProfile& p) {
    const auto& r = p.rows;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i].lower > r[i].upper) return false;
        if (r[i].epsilon < Rational(1) && r[i].lower >= 1 && r[i].ratio_lower > r[i].ratio_upper + 1e-12) return false;
        for (std::size_t j = 0; j < r.size(); ++j) {
            // eps_j <= eps_i: S is nonincreasing in eps, so lower(eps_i) <= S(eps_i) <= S(eps_j) <= upper(eps_j).
            if (r[j].epsilon <= r[i].epsilon && r[i].lower > r[j].upper) return false;
        }
    }
    return true;
}

SdimEstimate sdim_estimate(const DimensionProfile& p) {
    if (p.rows.size() < 3) {
        throw TooFewScales("need at least 3 scales, profile has " + std::to_string(p.rows.size()));
    }
    const std::size_t tail = (p.rows.size() + 2) / 3;
    SdimEstimate e{-INFINITY, -INFINITY};
    for (std::size_t i = p.rows.size() - tail; i < p.rows.size(); ++i) {
        e.low = std::max(e.low, p.rows[i].ratio_lower);
        e.high = std::max(e.high, p.rows[i].ratio_upper);
    }
    return e;
}

std::string profile_csv(const DimensionProfile& p) {
    bool guarded = false;
    for (const auto& r : p.rows) guarded = guarded || r.guarded_lower.has_value();
    std::ostringstream out;
    out << "epsilon_num,epsilon_den,lower,upper,ratio_lower,ratio_upper" << (guarded ? ",guarded_lower" : "") << "\n";
    for (const auto& r : p.rows) {
        out << r.epsilon.num().get_str() << ',' << r.epsilon.den().get_str() << ',' << r.lower << ',' << r.upper << ','
            << fmt("%.9f", r.ratio_lower) << ',' << fmt("%.9f", r.ratio_upper);
        if (guarded) {
            out << ',';
            if (r.guarded_lower) out << *r.guarded_lower;
        }
        out << "\n";
    }
    return out.str();
}

Theorem2Report theorem2_report(const IFSSpec& s, double delta, unsigned scales, double D) {
    Theorem2Report rep;
    rep.name = s.name();
    rep.n = s.n();
    rep.lambda = s.lambda();
    rep.bound = s.n() == 1 ? 0.0 : theorem2_bound(s.n(), s.lambda());
    rep.delta = delta;
    rep.D = D;
    if (!(D > 0)) {
        // A single point: no scale lies in (0, D], so the inequality holds vacuously.
        rep.k0 = K0{1, 0.0};
        rep.note = "attractor approximation is a single point; no scales to check";
        return rep;
    }
    rep.k0 = find_k0(s, delta, D);

    const double lam = s.lambda() > 0 ? s.lambda() : 0.5;
    for (unsigned j = 0; j < scales; ++j) {
        Theorem2Row row;
        row.epsilon = rep.k0.epsilon0 * std::pow(lam, j / 2.0);
        row.k = cover_level(s, row.epsilon, D);
        mpz_class count;
        mpz_ui_pow_ui(count.get_mpz_t(), s.n(), row.k);
        row.count = count.get_str();
        row.ratio = -static_cast<double>(row.k) * std::log(static_cast<double>(s.n())) / std::log(row.epsilon);
        if (row.ratio == 0) row.ratio = 0;  // drop the sign of -0
        row.pass = row.ratio < rep.bound + delta;
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::string Theorem2Report::to_text() const {
    std::ostringstream out;
    out << "ifs=" << name << "\n"
        << "n=" << n << "\n"
        << "lambda=" << fmt("%.10f", lambda) << "\n"
        << "bound=" << fmt("%.4f", bound) << "\n"
        << "delta=" << fmt("%.4f", delta) << "\n"
        << "D (approx)=" << fmt("%.10f", D) << "\n"
        << "k0=" << k0.k0 << "\n"
        << "eps0=" << fmt("%.10e", k0.epsilon0) << "\n"
        << "epsilon,k,n^k,ratio,status\n";
    if (!note.empty()) out << "# " << note << "\n";
    for (const auto& r : rows) {
        out << fmt("%.10e", r.epsilon) << ',' << r.k << ',' << r.count << ',' << fmt("%.9f", r.ratio) << ','
            << (r.pass ? "pass" : "FAIL") << "\n";
    }
    out << "result=" << (all_pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace sdimlab
