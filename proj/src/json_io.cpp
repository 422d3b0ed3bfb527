#include "meanlab/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace meanlab {

namespace {

const Json& require_field(const Json& j, const std::string& field) {
  if (!j.contains(field)) {
    throw InstanceFormatError(field, "missing field '" + field + "'");
  }
  return j.at(field);
}

std::vector<std::string> string_list(const Json& j, const std::string& field) {
  const Json& arr = require_field(j, field);
  if (!arr.is_array() || arr.empty()) {
    throw InstanceFormatError(field, "field '" + field + "' must be a nonempty array");
  }
  std::vector<std::string> out;
  for (const auto& item : arr) {
    if (!item.is_string()) {
      throw InstanceFormatError(field, "field '" + field + "' must hold strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

Eigen::ArrayXd value_list(const Json& arr, const std::string& field, int expected) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != expected) {
    throw InstanceFormatError(field, "field '" + field + "' must be an array of " +
                                         std::to_string(expected) + " numbers");
  }
  Eigen::ArrayXd out(expected);
  int i = 0;
  for (const auto& item : arr) {
    if (!item.is_number()) {
      throw InstanceFormatError(field, "field '" + field + "' must hold numbers");
    }
    out(i) = item.get<double>();
    if (out(i) < 0.0) {
      throw InstanceFormatError(field, "field '" + field + "' holds a negative value");
    }
    ++i;
  }
  return out;
}

}  // namespace

HermitianMatrix matrix_from_json(const Json& j) {
  const Json& jdim = require_field(j, "dim");
  if (!jdim.is_number_integer() || jdim.get<int>() < 1) {
    throw InstanceFormatError("dim", "field 'dim' must be a positive integer");
  }
  const int dim = jdim.get<int>();
  const auto read_square = [dim](const Json& rows, const std::string& field) {
    Eigen::MatrixXd m(dim, dim);
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
      throw InstanceFormatError(field, "field '" + field + "' must be a " +
                                           std::to_string(dim) + "x" +
                                           std::to_string(dim) + " array");
    }
    for (int i = 0; i < dim; ++i) {
      const Json& row = rows.at(i);
      if (!row.is_array() || static_cast<int>(row.size()) != dim) {
        throw InstanceFormatError(field, "row " + std::to_string(i) + " of '" + field +
                                             "' has the wrong length");
      }
      for (int k = 0; k < dim; ++k) {
        if (!row.at(k).is_number()) {
          throw InstanceFormatError(field, "field '" + field + "' must hold numbers");
        }
        m(i, k) = row.at(k).get<double>();
      }
    }
    return m;
  };
  const Eigen::MatrixXd re = read_square(require_field(j, "re"), "re");
  CMatrix entries = re.cast<Complex>();
  if (j.contains("im")) {
    const Eigen::MatrixXd im = read_square(j.at("im"), "im");
    entries += Complex(0.0, 1.0) * im.cast<Complex>();
  }
  return HermitianMatrix(std::move(entries));
}

Json matrix_to_json(const HermitianMatrix& a) {
  Json j;
  j["dim"] = a.dim();
  Json re = Json::array(), im = Json::array();
  bool any_imag = false;
  for (int i = 0; i < a.dim(); ++i) {
    Json re_row = Json::array(), im_row = Json::array();
    for (int k = 0; k < a.dim(); ++k) {
      re_row.push_back(a.entries(i, k).real());
      im_row.push_back(a.entries(i, k).imag());
      any_imag = any_imag || a.entries(i, k).imag() != 0.0;
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  j["re"] = std::move(re);
  if (any_imag) j["im"] = std::move(im);
  return j;
}

PreserverMap instance_from_json(const Json& j) {
  if (j.contains("schema") && (!j.at("schema").is_number_integer() || j.at("schema") != 1)) {
    throw InstanceFormatError("schema", "unsupported instance schema");
  }
  auto x_space = make_space(string_list(j, "X"));
  auto y_space = make_space(string_list(j, "Y"));

  const Json& family = require_field(j, "family");
  if (!family.is_object() || family.empty()) {
    throw InstanceFormatError("family", "field 'family' must be a nonempty object");
  }
  const Json& images = require_field(j, "T");
  if (!images.is_object()) {
    throw InstanceFormatError("T", "field 'T' must be an object");
  }

  bool strict = false;
  if (j.contains("strict")) {
    if (!j.at("strict").is_boolean()) {
      throw InstanceFormatError("strict", "field 'strict' must be a boolean");
    }
    strict = j.at("strict").get<bool>();
  }

  FunctionFamily fam(x_space);
  for (const auto& [name, vals] : family.items()) {
    const Eigen::ArrayXd v = value_list(vals, "family." + name, x_space->size());
    if (strict && v.minCoeff() <= 0.0) {
      throw InstanceFormatError("strict", "family member '" + name +
                                              "' has a zero value but strict is true");
    }
    fam.add(name, v);
  }

  PreserverMap map(std::move(fam), y_space);
  for (int i = 0; i < map.domain.size(); ++i) {
    const std::string& name = map.domain.names[i];
    if (!images.contains(name)) {
      throw InstanceFormatError("T." + name, "missing image for member '" + name + "'");
    }
    map.add_image(value_list(images.at(name), "T." + name, y_space->size()));
  }
  if (images.size() != static_cast<std::size_t>(map.domain.size())) {
    throw InstanceFormatError("T", "field 'T' names a member not in the family");
  }
  return map;
}

PreserverMap load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceFormatError("instance", "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InstanceFormatError("instance", std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

Json instance_to_json(const PreserverMap& map) {
  Json j;
  j["schema"] = 1;
  j["X"] = map.domain.space->points;
  j["Y"] = map.target->points;
  Json family = Json::object(), images = Json::object();
  for (int i = 0; i < map.domain.size(); ++i) {
    Json vals = Json::array();
    for (int k = 0; k < map.domain.space->size(); ++k) {
      vals.push_back(map.domain.members[i].values(k));
    }
    family[map.domain.names[i]] = std::move(vals);
    Json img = Json::array();
    for (int k = 0; k < map.target->size(); ++k) {
      img.push_back(map.images[i].values(k));
    }
    images[map.domain.names[i]] = std::move(img);
  }
  j["family"] = std::move(family);
  j["T"] = std::move(images);
  j["strict"] = map.domain.strict_flag;
  return j;
}

Json preservation_report_json(const PreservationReport& report, const PreserverMap& map) {
  Json j;
  j["kind"] = report.kind.name();
  j["max_multiset"] = report.max_multiset;
  j["tol"] = report.tol;
  j["multisets_checked"] = report.multisets_checked;
  j["truncated"] = report.truncated;
  j["max_violation"] = report.max_violation;
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json names = Json::array();
    for (int i : v.members) names.push_back(map.domain.names[i]);
    violations.push_back(Json{{"multiset", names}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  j["violations"] = std::move(violations);
  return j;
}

Json reconstruction_json(const ReconstructionResult& r, const PreserverMap& map) {
  Json j;
  Json y0 = Json::array();
  Json tau = Json::object();
  for (std::size_t k = 0; k < r.y0.size(); ++k) {
    const std::string& ylabel = map.target->points[r.y0[k]];
    y0.push_back(ylabel);
    tau[ylabel] = map.domain.space->points[r.tau[k]];
  }
  j["Y0"] = std::move(y0);
  j["tau"] = std::move(tau);
  j["residual"] = r.residual;
  j["surjective_tau"] = r.surjective_tau;
  j["injective_T"] = r.injective_t;
  return j;
}

Json suite_records_json(const std::vector<CheckRecord>& records) {
  Json arr = Json::array();
  for (const auto& r : records) {
    Json metrics = Json::object();
    for (const auto& [k, v] : r.metrics) metrics[k] = v;
    arr.push_back(Json{{"name", r.name},
                       {"status", r.status},
                       {"detail", r.detail},
                       {"metrics", std::move(metrics)}});
  }
  return arr;
}

Json summary_json(const SuiteReport& report) {
  return Json{{"pass", report.passed()}, {"fail", report.failed()}, {"skip", report.skipped()}};
}

std::string report_text(const Json& report) {
  std::ostringstream os;
  if (report.contains("command")) {
    os << "meanlab " << report.at("command").get<std::string>() << "\n";
  }
  if (report.contains("records")) {
    for (const auto& r : report.at("records")) {
      const std::string status = r.at("status").get<std::string>();
      os << "[" << (status == "pass" ? "PASS" : status == "fail" ? "FAIL" : "SKIP") << "] "
         << r.at("name").get<std::string>();
      const std::string detail = r.value("detail", std::string{});
      if (!detail.empty()) os << " - " << detail;
      os << "\n";
    }
  }
  if (report.contains("violations")) {
    for (const auto& v : report.at("violations")) {
      os << "violation:";
      for (const auto& name : v.at("multiset")) os << " " << name.get<std::string>();
      os << " | " << v.at("lhs").get<double>() << " vs " << v.at("rhs").get<double>() << "\n";
    }
  }
  if (report.contains("reconstruction")) {
    const Json& rec = report.at("reconstruction");
    os << "Y0:";
    for (const auto& y : rec.at("Y0")) os << " " << y.get<std::string>();
    os << "\nresidual: " << rec.at("residual").get<double>() << "\n";
  }
  if (report.contains("summary")) {
    const Json& s = report.at("summary");
    os << "pass " << s.at("pass").get<int>() << ", fail " << s.at("fail").get<int>()
       << ", skip " << s.at("skip").get<int>() << "\n";
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw Error("short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace meanlab
