#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sandwich/covering.hpp"

namespace sandwich {

std::string mode_name(Mode mode);
Mode mode_from_name(const std::string& name);

// Interchange schema:
//   {base, mode, n (decimal string), screen?: {kind, witness},
//    entries: [{d, kind: "auto"|"covering", p?, k?, witnesses?: [{i, g}]}]}
nlohmann::ordered_json certificate_to_json(const CoveringCertificate& cert);

// Throws std::runtime_error on a malformed document.
CoveringCertificate certificate_from_json(const nlohmann::json& doc);

void save_certificate(const CoveringCertificate& cert, const std::filesystem::path& path);
CoveringCertificate load_certificate(const std::filesystem::path& path);

}  // namespace sandwich
