#pragma once

#include <optional>
#include <string>

#include "ddecap/constants.hpp"
#include "ddecap/grid.hpp"

namespace ddecap {

constexpr int kCertificateSchemaVersion = 1;

// JSON text of a certificate. Intervals are pairs of C99 hex-float strings.
// `slim` drops the solution tube; a ledger, if given, goes under "ledger".
std::string serialize_certificate(const OrbitCertificate& cert, bool slim, const ConstantsLedger* ledger = nullptr);

// Inverse of serialize_certificate. The tube is empty for slim files.
// Throws std::runtime_error on malformed input or a schema mismatch.
OrbitCertificate parse_certificate(const std::string& text);
std::optional<ConstantsLedger> parse_ledger(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ddecap
