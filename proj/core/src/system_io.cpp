#include "rapidstab/system_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace rapidstab {
namespace {

using json = nlohmann::json;
using Kind = SystemFileError::Kind;

double read_entry(const json& v, const char* field, std::size_t index) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "NaN" || s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "Infinity" || s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity" || s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw SystemFileError(Kind::kMalformed, std::string(field) + "[" + std::to_string(index) +
                                              "] is not a number");
}

Eigen::MatrixXd read_matrix(const json& doc, const char* field, long rows, long cols) {
  if (!doc.contains(field) || !doc[field].is_array()) {
    throw SystemFileError(Kind::kMalformed, std::string("missing array field '") + field + "'");
  }
  const auto& arr = doc[field];
  if (static_cast<long>(arr.size()) != rows * cols) {
    throw SystemFileError(Kind::kDimension,
                          std::string(field) + " has " + std::to_string(arr.size()) +
                              " entries, expected " + std::to_string(rows * cols));
  }
  Eigen::MatrixXd M(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      const auto idx = static_cast<std::size_t>(i * cols + j);
      M(i, j) = read_entry(arr[idx], field, idx);
      if (!std::isfinite(M(i, j))) {
        throw SystemFileError(Kind::kNonFinite, std::string(field) + "[" + std::to_string(idx) +
                                                    "] is not finite");
      }
    }
  }
  return M;
}

long read_dimension(const json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_number_integer()) {
    throw SystemFileError(Kind::kMalformed, std::string("missing integer field '") + field + "'");
  }
  const long v = doc[field].get<long>();
  if (v < 1) throw SystemFileError(Kind::kDimension, std::string(field) + " must be >= 1");
  return v;
}

}  // namespace

LtiSystem parse_system(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Bare NaN/Infinity tokens are not JSON; report them as what they mean.
    static const std::regex bare_non_finite(R"((^|[\[,:\s])-?(NaN|nan|Infinity|inf)($|[\],\s]))");
    if (std::regex_search(std::string(text), bare_non_finite)) {
      throw SystemFileError(Kind::kNonFinite, "system document contains a non-finite literal");
    }
    throw SystemFileError(Kind::kMalformed, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SystemFileError(Kind::kMalformed, "system document must be an object");
  if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
    throw SystemFileError(Kind::kMalformed, "missing integer field 'schema_version'");
  }
  if (doc["schema_version"].get<int>() != kSystemSchemaVersion) {
    throw SystemFileError(Kind::kMalformed, "unsupported schema_version " +
                                                doc["schema_version"].dump());
  }
  const long n = read_dimension(doc, "n");
  const long m = read_dimension(doc, "m");
  std::string label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw SystemFileError(Kind::kMalformed, "'label' must be a string");
    label = doc["label"].get<std::string>();
  }
  Eigen::MatrixXd A = read_matrix(doc, "A", n, n);
  Eigen::MatrixXd B = read_matrix(doc, "B", n, m);
  return LtiSystem::make(std::move(A), std::move(B), std::move(label));
}

LtiSystem load_system(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open system file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

std::string serialize_system(const LtiSystem& sys) {
  json doc;
  doc["schema_version"] = kSystemSchemaVersion;
  doc["label"] = sys.label();
  doc["n"] = sys.n();
  doc["m"] = sys.m();
  json a = json::array();
  for (int i = 0; i < sys.n(); ++i) {
    for (int j = 0; j < sys.n(); ++j) a.push_back(sys.A()(i, j));
  }
  json b = json::array();
  for (int i = 0; i < sys.n(); ++i) {
    for (int j = 0; j < sys.m(); ++j) b.push_back(sys.B()(i, j));
  }
  doc["A"] = std::move(a);
  doc["B"] = std::move(b);
  return doc.dump(2) + "\n";
}

}  // namespace rapidstab
