#pragma once

#include "qlab/ensembles.hpp"
#include "qlab/linalg.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>

namespace qlab {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix exchange format: {"rows": n, "cols": m, "re": [...], "im": [...]},
// row-major. Readers reject mismatched lengths and non-finite entries.
nlohmann::json matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const nlohmann::json& j);

struct IsometryRecord {
    Isometry isometry;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

nlohmann::json isometry_to_json(const IsometryRecord& rec);
IsometryRecord isometry_from_json(const nlohmann::json& j);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace qlab
