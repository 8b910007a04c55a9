#pragma once

// Pencil serialization: JSON (lossless, round-trips), SDPA sparse text, and
// the plain-text linear-forms input format.

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "esp/pencil.hpp"

namespace esp {

inline constexpr int kPencilSchemaVersion = 1;

/// Matrix indices are 1-based in the file; entry values must fit in int64.
nlohmann::ordered_json pencil_to_json(const Pencil& p);
Pencil pencil_from_json(const nlohmann::ordered_json& j);

/// Canonical text: two-space indent, trailing newline.
std::string write_pencil_json(const Pencil& p);
Pencil read_pencil_json(std::string_view text);

/// SDPA sparse format with no F0 block. Objective defaults to all ones and
/// must consist of finite decimals.
std::string write_pencil_sdpa(const Pencil& p, const RationalVector& objective = {});

/// Exact decimal rendering; throws if the value has no finite expansion.
std::string to_decimal_string(const Rational& value);

/// "d n", then d rows of n rationals, then the base point. '#' starts a comment.
LinearFormsSystem parse_forms(std::string_view text);

std::string read_file(const std::string& path);
/// Writes atomically enough for CLI use; throws Error on failure.
void write_file(const std::string& path, std::string_view contents);

}  // namespace esp
