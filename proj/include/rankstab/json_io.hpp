#pragma once

#include <string>

#include <json.hpp>

#include "rankstab/approx.hpp"
#include "rankstab/stabilize.hpp"

namespace rankstab {

using Json = nlohmann::ordered_json;

Json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const Json& j);

/// {"field": ..., "rows": [["1/2","-3",...], ...]}
Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);

/// {"field": ..., "n": ..., "mats": [<matrix>, ...]}
Json tuple_to_json(const MatTuple& t);
MatTuple tuple_from_json(const Json& j);

Json defect_report_to_json(const DefectReport& r);
Json outcome_to_json(const StabilizeOutcome& o);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
Json parse_json_text(const std::string& text);  // wraps errors into ParseError

}  // namespace rankstab
