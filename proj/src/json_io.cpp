#include "qlab/json_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>

namespace qlab {

using nlohmann::json;

json matrix_to_json(const CMatrix& a) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            re.push_back(a(i, j).real());
            im.push_back(a(i, j).imag());
        }
    }
    return json{{"rows", a.rows()}, {"cols", a.cols()}, {"re", std::move(re)},
                {"im", std::move(im)}};
}

CMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
        !j.contains("re") || !j.contains("im")) {
        throw ParseError("matrix JSON missing rows/cols/re/im");
    }
    const long rows = j.at("rows").get<long>();
    const long cols = j.at("cols").get<long>();
    if (rows <= 0 || cols <= 0) {
        throw ParseError("matrix JSON has non-positive dimensions");
    }
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (static_cast<long>(re.size()) != rows * cols ||
        static_cast<long>(im.size()) != rows * cols) {
        throw ParseError("matrix JSON entry count does not match rows*cols");
    }
    CMatrix a(rows, cols);
    for (long i = 0; i < rows; ++i) {
        for (long k = 0; k < cols; ++k) {
            const long idx = i * cols + k;
            const double x = re[idx].get<double>();
            const double y = im[idx].get<double>();
            if (!std::isfinite(x) || !std::isfinite(y)) {
                throw ParseError("matrix JSON has non-finite entry");
            }
            a(i, k) = Complex(x, y);
        }
    }
    return a;
}

json isometry_to_json(const IsometryRecord& rec) {
    json j = matrix_to_json(rec.isometry.matrix);
    j["m"] = rec.isometry.m;
    j["d"] = rec.isometry.d;
    j["r"] = rec.isometry.r;
    j["field"] = rec.isometry.field == FieldTag::Real ? "real" : "complex";
    j["seed"] = rec.seed;
    j["stream"] = rec.stream;
    return j;
}

IsometryRecord isometry_from_json(const json& j) {
    IsometryRecord rec;
    rec.isometry.m = j.at("m").get<int>();
    rec.isometry.d = j.at("d").get<int>();
    rec.isometry.r = j.at("r").get<int>();
    const std::string field = j.at("field").get<std::string>();
    if (field == "real") {
        rec.isometry.field = FieldTag::Real;
    } else if (field == "complex") {
        rec.isometry.field = FieldTag::Complex;
    } else {
        throw ParseError("isometry JSON field must be 'real' or 'complex'");
    }
    rec.isometry.matrix = matrix_from_json(j);
    rec.seed = j.value("seed", std::uint64_t{0});
    rec.stream = j.value("stream", std::uint64_t{0});
    rec.isometry.validate();
    return rec;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << j.dump(2) << '\n';
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open for reading: " + path);
    }
    return json::parse(in);
}

}  // namespace qlab
