#include "rankstab/json_io.hpp"

#include <fstream>
#include <sstream>

namespace rankstab {

Json field_to_json(const FieldSpec& f) {
    Json j;
    if (f.is_rationals()) {
        j["kind"] = "Q";
    } else {
        j["kind"] = "Fp";
        j["p"] = f.prime();
    }
    return j;
}

FieldSpec field_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("field descriptor must be an object with a \"kind\" string");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "Q") return FieldSpec::rationals();
    if (kind == "Fp") {
        if (!j.contains("p") || !j["p"].is_number_unsigned())
            throw ParseError("Fp field descriptor requires an integer \"p\"");
        try {
            return FieldSpec::prime_field(j["p"].get<std::uint64_t>());
        } catch (const Error& e) {
            throw ParseError(e.what());
        }
    }
    throw ParseError("unknown field kind: " + kind);
}

Json mat_to_json(const Mat& m) {
    Json j;
    j["field"] = field_to_json(m.field());
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(i, c).to_string());
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

Mat mat_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("rows"))
        throw ParseError("matrix JSON requires \"field\" and \"rows\"");
    FieldSpec f = field_from_json(j["field"]);
    const Json& rows = j["rows"];
    if (!rows.is_array()) throw ParseError("matrix \"rows\" must be an array");
    int r = (int)rows.size();
    int c = r == 0 ? 0 : (int)rows[0].size();
    Mat m(f, r, c);
    for (int i = 0; i < r; ++i) {
        if (!rows[i].is_array() || (int)rows[i].size() != c)
            throw ParseError("matrix rows must be arrays of equal length");
        for (int k = 0; k < c; ++k) {
            if (!rows[i][k].is_string())
                throw ParseError("matrix entries must be strings (\"a\" or \"a/b\")");
            try {
                m.set(i, k, Scalar::parse(f, rows[i][k].get<std::string>()));
            } catch (const Error& e) {
                throw ParseError(e.what());
            }
        }
    }
    return m;
}

Json tuple_to_json(const MatTuple& t) {
    Json j;
    j["field"] = field_to_json(t.field());
    j["n"] = t.n();
    Json mats = Json::array();
    for (const Mat& m : t.mats()) mats.push_back(mat_to_json(m));
    j["mats"] = std::move(mats);
    return j;
}

MatTuple tuple_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("n") || !j.contains("mats"))
        throw ParseError("tuple JSON requires \"field\", \"n\" and \"mats\"");
    FieldSpec f = field_from_json(j["field"]);
    if (!j["n"].is_number_integer()) throw ParseError("tuple \"n\" must be an integer");
    long n = j["n"].get<long>();
    if (!j["mats"].is_array()) throw ParseError("tuple \"mats\" must be an array");
    std::vector<Mat> mats;
    for (const Json& mj : j["mats"]) mats.push_back(mat_from_json(mj));
    try {
        return MatTuple(f, (int)n, std::move(mats));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

Json defect_report_to_json(const DefectReport& r) {
    Json j;
    j["n"] = r.n;
    j["max_defect"] = r.max_defect.get_str();
    Json per = Json::array();
    for (const auto& [idx, val] : r.per_relator) {
        Json item;
        item["relator"] = idx;
        item["normalized_rank"] = val.get_str();
        per.push_back(std::move(item));
    }
    j["per_relator"] = std::move(per);
    return j;
}

Json outcome_to_json(const StabilizeOutcome& o) {
    Json j;
    j["verified"] = o.verified;
    j["distances"] = o.distances;
    Json diag;
    for (const auto& [k, v] : o.diagnostics) diag[k] = v;
    j["diagnostics"] = std::move(diag);
    j["solution"] = tuple_to_json(o.solution);
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace rankstab
