#pragma once

#include "sdimlab/cover.h"

#include <json.hpp>

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sdimlab {

using Certificate = std::variant<CoverCertificate, SeparationCertificate>;

// Certificate files are JSON objects tagged with "kind": "cover",
// "separation", or "bundle" (a list of certificates). Every rational is a
// "p/q" string.

nlohmann::json certificate_json(const CoverCertificate& c);
nlohmann::json certificate_json(const SeparationCertificate& s);

std::string serialize_certificates(const std::vector<Certificate>& certs);

/// Throws ParseError on malformed input.
std::vector<Certificate> parse_certificates(std::string_view text);

}  // namespace sdimlab
