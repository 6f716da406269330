#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rapidstab/lti.hpp"

namespace rapidstab {

/// JSON system document:
///
///   {"schema_version": 1, "label": "oscillator", "n": 2, "m": 1,
///    "A": [0, 1, -1, 0], "B": [0, 1]}
///
/// A and B are row-major. Entries are JSON numbers; the strings "NaN",
/// "Infinity" and "-Infinity" are read so they can be rejected as non-finite.
class SystemFileError : public std::runtime_error {
 public:
  enum class Kind { kMalformed, kDimension, kNonFinite };

  SystemFileError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

inline constexpr int kSystemSchemaVersion = 1;

LtiSystem parse_system(std::string_view text);
LtiSystem load_system(const std::filesystem::path& path);
std::string serialize_system(const LtiSystem& sys);

}  // namespace rapidstab
