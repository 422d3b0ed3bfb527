#ifndef MEANLAB_JSON_IO_HPP
#define MEANLAB_JSON_IO_HPP

// Stable wire formats (schema 1):
//   matrix:   { "dim": n, "re": [[..]], "im": [[..]] }   (omitted "im" = real)
//   instance: { "schema": 1, "X": [..], "Y": [..], "family": {name: [values]},
//               "T": {name: [values-on-Y]}, "strict": bool }
//   report:   { "schema": 1, ..., "records": [..], "summary": {..} }

#include <string>

#include <json.hpp>

#include "meanlab/cones.hpp"
#include "meanlab/report.hpp"
#include "meanlab/spectral.hpp"

namespace meanlab {

using Json = nlohmann::ordered_json;

HermitianMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const HermitianMatrix& a);

// Throws InstanceFormatError naming the offending field.
PreserverMap instance_from_json(const Json& j);
PreserverMap load_instance(const std::string& path);
Json instance_to_json(const PreserverMap& map);

Json preservation_report_json(const PreservationReport& report, const PreserverMap& map);
Json reconstruction_json(const ReconstructionResult& r, const PreserverMap& map);

Json suite_records_json(const std::vector<CheckRecord>& records);
Json summary_json(const SuiteReport& report);
std::string report_text(const Json& report);

// Atomic write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace meanlab

#endif
