#include "sdimlab/budget.h"

#include "sdimlab/errors.h"

#include <cstdlib>
#include <string>

namespace sdimlab {

namespace {

std::uint64_t parse_count(std::string_view s) {
    const std::string text(s);
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !(v >= 1.0) || v > 1e18) {
        throw ParseError("bad budget value '" + text + "'");
    }
    return static_cast<std::uint64_t>(v);
}

}  // namespace

Budget Budget::parse(std::string_view text) {
    Budget b;
    if (text.find('=') == std::string_view::npos) {
        const auto v = parse_count(text);
        b.max_edges = static_cast<std::size_t>(v);
        b.max_pair_checks = v;
        b.max_words = v;
        return b;
    }
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw ParseError("bad budget item '" + std::string(item) + "'");
        const auto key = item.substr(0, eq);
        const auto v = parse_count(item.substr(eq + 1));
        if (key == "edges") b.max_edges = static_cast<std::size_t>(v);
        else if (key == "pairs") b.max_pair_checks = v;
        else if (key == "words") b.max_words = v;
        else throw ParseError("unknown budget key '" + std::string(key) + "'");
    }
    return b;
}

Budget Budget::from_env() {
    const char* env = std::getenv("SDIMLAB_BUDGET");
    if (env == nullptr || *env == '\0') return Budget{};
    return parse(env);
}

}  // namespace sdimlab
