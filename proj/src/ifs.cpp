#include "sdimlab/ifs.h"

#include "sdimlab/errors.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace sdimlab {

namespace {

std::uint64_t checked_power(std::uint64_t n, std::uint64_t k, std::uint64_t limit, const char* what) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (__builtin_mul_overflow(r, n, &r) || r > limit) {
            throw SizeLimit(std::string(what) + ": " + std::to_string(n) + "^" + std::to_string(k) + " exceeds " +
                            std::to_string(limit));
        }
    }
    return r;
}

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double parse_decimal(const nlohmann::json& j) {
    if (!j.is_string()) throw ParseError("IFS numbers must be decimal strings");
    const auto& s = j.get_ref<const std::string&>();
    double v = 0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    const auto [end, ec] = std::from_chars(first, s.data() + s.size(), v, std::chars_format::general);
    if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) {
        throw ParseError("not a decimal number: '" + s + "'");
    }
    return v;
}

std::string decimal(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

}  // namespace

AffineMap2 AffineMap2::compose(const AffineMap2& inner) const {
    const auto& a = linear;
    const auto& b = inner.linear;
    AffineMap2 r;
    r.linear = {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
                a[2] * b[1] + a[3] * b[3]};
    r.translation = apply(inner.translation);
    return r;
}

double lip_affine(const AffineMap2& m) {
    const auto& [a, b, c, d] = m.linear;
    const double s = a * a + b * b + c * c + d * d;
    const double det = a * d - b * c;
    const double disc = std::max(0.0, s * s - 4 * det * det);
    return std::sqrt((s + std::sqrt(disc)) / 2);
}

IFSSpec IFSSpec::make(std::string name, std::vector<AffineMap2> maps) {
    if (maps.empty()) throw DomainError("an IFS needs at least one map");
    IFSSpec s;
    s.name_ = std::move(name);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const double l = lip_affine(maps[i]);
        if (!std::isfinite(l) || l >= 1) {
            throw DomainError("map " + std::to_string(i) + " has Lipschitz constant " + decimal(l) +
                              " and is not a contraction");
        }
        s.lambda_ = std::max(s.lambda_, l);
    }
    s.maps_ = std::move(maps);
    return s;
}

double theorem2_bound(std::uint64_t n, double lambda) {
    if (n < 1) throw DomainError("n must be >= 1");
    if (!(lambda > 0 && lambda < 1)) throw DomainError("lambda must lie in (0, 1), got " + decimal(lambda));
    return -std::log(static_cast<double>(n)) / std::log(lambda);
}

std::vector<Vec2> attractor_cloud(const IFSSpec& s, unsigned depth, const Vec2& seed, const Budget& budget) {
    checked_power(s.n(), depth, budget.max_words, "attractor cloud");
    std::vector<Vec2> cloud{seed};
    for (unsigned d = 0; d < depth; ++d) {
        std::vector<Vec2> next;
        next.reserve(cloud.size() * s.n());
        for (const auto& f : s.maps()) {
            for (const auto& p : cloud) next.push_back(f.apply(p));
        }
        cloud = std::move(next);
    }
    return cloud;
}

Vec2 fixed_point(const AffineMap2& m) {
    // (I - A) p = t
    const double a = 1 - m.linear[0], b = -m.linear[1], c = -m.linear[2], d = 1 - m.linear[3];
    const double det = a * d - b * c;
    if (det == 0) throw DomainError("map has no unique fixed point");
    return {(d * m.translation.x - b * m.translation.y) / det, (a * m.translation.y - c * m.translation.x) / det};
}

double approximate_diameter(const IFSSpec& s, unsigned depth, const Budget& budget) {
    std::vector<Vec2> all;
    for (const auto& f : s.maps()) {
        auto c = attractor_cloud(s, depth, fixed_point(f), budget);
        all.insert(all.end(), c.begin(), c.end());
    }
    return cloud_diameter(all);
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Vec2> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

double cloud_diameter(const std::vector<Vec2>& pts) {
    const auto h = convex_hull(pts);
    double best = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        for (std::size_t j = i + 1; j < h.size(); ++j) best = std::max(best, distance(h[i], h[j]));
    }
    return best;
}

double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    auto directed = [](const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
        double worst = 0;
        for (const auto& p : from) {
            double nearest = std::numeric_limits<double>::infinity();
            for (const auto& q : to) nearest = std::min(nearest, distance(p, q));
            worst = std::max(worst, nearest);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

WordCover word_cover(const IFSSpec& s, unsigned k, const std::vector<Vec2>& base_cloud, const Budget& budget) {
    if (k < 1) throw InvalidArgument("word length must be >= 1");
    if (base_cloud.empty()) throw InvalidArgument("base cloud is empty");
    checked_power(s.n(), k, budget.max_words, "word cover");

    WordCover wc;
    wc.k = k;
    wc.D = cloud_diameter(base_cloud);
    const auto hull = convex_hull(base_cloud);

    std::vector<WordPiece> level{WordPiece{}};
    for (unsigned d = 0; d < k; ++d) {
        std::vector<WordPiece> next;
        next.reserve(level.size() * s.n());
        for (std::uint32_t i = 0; i < s.n(); ++i) {
            for (const auto& w : level) {
                WordPiece p;
                p.word.reserve(d + 1);
                p.word.push_back(i);
                p.word.insert(p.word.end(), w.word.begin(), w.word.end());
                p.map = s.maps()[i].compose(w.map);
                next.push_back(std::move(p));
            }
        }
        level = std::move(next);
    }

    const double limit = std::pow(s.lambda(), static_cast<double>(k)) * wc.D * (1 + 1e-9);
    for (auto& p : level) {
        p.hull.reserve(hull.size());
        for (const auto& v : hull) p.hull.push_back(p.map.apply(v));
        double diam = 0;
        for (std::size_t i = 0; i < p.hull.size(); ++i) {
            for (std::size_t j = i + 1; j < p.hull.size(); ++j) diam = std::max(diam, distance(p.hull[i], p.hull[j]));
        }
        p.diameter = diam;
        if (diam > limit) {
            throw std::logic_error("word piece diameter " + decimal(diam) + " exceeds lambda^k D = " + decimal(limit));
        }
    }
    wc.pieces = std::move(level);
    return wc;
}

double word_ratio(std::uint64_t n, double lambda, double D, std::uint64_t k) {
    const double denom = static_cast<double>(k - 1) * std::log(lambda) + std::log(D);
    if (!(denom < 0)) return std::numeric_limits<double>::infinity();
    return -static_cast<double>(k) * std::log(static_cast<double>(n)) / denom;
}

K0 find_k0(const IFSSpec& s, double delta, double D) {
    if (!(delta > 0)) throw DomainError("delta must be positive");
    if (!(D > 0)) throw DomainError("D must be positive");
    if (s.n() == 1) return {1, D};
    const double target = theorem2_bound(s.n(), s.lambda()) + delta;
    auto holds = [&](std::uint64_t k) { return word_ratio(s.n(), s.lambda(), D, k) < target; };

    constexpr std::uint64_t kCap = 100'000'000;
    std::uint64_t k = 1;
    for (;;) {
        while (!holds(k)) {
            if (++k > kCap) throw DomainError("no k0 below " + std::to_string(kCap));
        }
        // The ratio is a Möbius function of k, so one window past the first
        // hit settles monotonicity.
        const std::uint64_t end = k + std::max<std::uint64_t>(64, 4 * k);
        std::uint64_t bad = 0;
        for (std::uint64_t j = k + 1; j <= end; ++j) {
            if (!holds(j)) bad = j;
        }
        if (bad == 0) break;
        k = bad + 1;
    }
    return {k, std::pow(s.lambda(), static_cast<double>(k - 1)) * D};
}

std::uint64_t cover_level(const IFSSpec& s, double epsilon, double D) {
    if (!(D > 0)) throw DomainError("D must be positive");
    if (!(epsilon > 0 && epsilon <= D)) throw DomainError("epsilon must lie in (0, D]");
    const double lam = s.lambda();
    if (!(lam > 0)) return 1;
    auto scale = [&](std::uint64_t j) { return std::pow(lam, static_cast<double>(j)) * D; };
    std::uint64_t k = 1;
    const double guess = std::floor(std::log(epsilon / D) / std::log(lam)) + 1;
    if (guess > 1 && guess < 1e15) k = static_cast<std::uint64_t>(guess);
    while (!(scale(k) < epsilon)) ++k;
    while (k > 1 && !(epsilon <= scale(k - 1))) --k;
    return k;
}

std::uint64_t s_upper_ifs(const IFSSpec& s, double epsilon, double D) {
    return checked_power(s.n(), cover_level(s, epsilon, D), std::numeric_limits<std::uint64_t>::max(), "cover size");
}

IFSSpec sierpinski() {
    const double h = std::sqrt(3.0) / 4;
    std::vector<AffineMap2> maps;
    for (const Vec2 t : {Vec2{0, 0}, Vec2{0.5, 0}, Vec2{0.25, h}}) maps.push_back({{0.5, 0, 0, 0.5}, t});
    return IFSSpec::make("sierpinski", std::move(maps));
}

IFSSpec cantor_dust() {
    std::vector<AffineMap2> maps;
    for (const Vec2 t : {Vec2{0, 0}, Vec2{0.75, 0}, Vec2{0, 0.75}, Vec2{0.75, 0.75}}) {
        maps.push_back({{0.25, 0, 0, 0.25}, t});
    }
    return IFSSpec::make("cantor-dust", std::move(maps));
}

IFSSpec segment_ifs() {
    std::vector<AffineMap2> maps;
    for (const Vec2 t : {Vec2{0, 0}, Vec2{0.5, 0}}) maps.push_back({{0.5, 0, 0, 0.5}, t});
    return IFSSpec::make("segment", std::move(maps));
}

IFSSpec parse_ifs_spec(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed IFS spec: ") + ex.what());
    }
    std::vector<AffineMap2> maps;
    try {
        for (const auto& m : j.at("maps")) {
            AffineMap2 f;
            const auto& lin = m.at("linear");
            if (!lin.is_array() || lin.size() != 2 || lin[0].size() != 2 || lin[1].size() != 2) {
                throw ParseError("linear part must be a 2x2 array");
            }
            f.linear = {parse_decimal(lin[0][0]), parse_decimal(lin[0][1]), parse_decimal(lin[1][0]),
                        parse_decimal(lin[1][1])};
            const auto& t = m.at("translation");
            if (!t.is_array() || t.size() != 2) throw ParseError("translation must have two entries");
            f.translation = {parse_decimal(t[0]), parse_decimal(t[1])};
            maps.push_back(f);
        }
        return IFSSpec::make(j.value("name", std::string("ifs")), std::move(maps));
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed IFS spec: ") + ex.what());
    }
}

nlohmann::json ifs_spec_json(const IFSSpec& s) {
    nlohmann::json j;
    j["name"] = s.name();
    auto& maps = j["maps"] = nlohmann::json::array();
    for (const auto& m : s.maps()) {
        // Explicit arrays: a braced pair led by a string would become an object entry.
        using nlohmann::json;
        const json row0 = json::array({decimal(m.linear[0]), decimal(m.linear[1])});
        const json row1 = json::array({decimal(m.linear[2]), decimal(m.linear[3])});
        json entry;
        entry["linear"] = json::array({row0, row1});
        entry["translation"] = json::array({decimal(m.translation.x), decimal(m.translation.y)});
        maps.push_back(std::move(entry));
    }
    return j;
}

}  // namespace sdimlab
