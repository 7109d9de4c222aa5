#pragma once

#include <rbridge/dataset.hpp>
#include <rbridge/restriction.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace rbridge {

/// Reads a comma-separated file with a header row. The column named
/// `response` becomes y; every other column goes to X in file order.
Dataset load_csv(const std::filesystem::path& path, const std::string& response);

/// Same as load_csv but from in-memory text; `source` labels error messages.
Dataset parse_csv(std::string_view text, const std::string& response,
                  const std::string& source = "<memory>");

/// Restriction JSON: either {"rows": [[...], ...], "values": [...]}
/// or {"zero_indices": [...], "p": N} with 1-based indices.
Restriction load_restriction(const std::filesystem::path& path);
Restriction parse_restriction(std::string_view json_text, const std::string& source = "<memory>");

/// A restriction paired with the coefficient vector it was derived from.
struct Prior {
  std::string label;
  Restriction restriction;
  std::optional<Vector> beta_prior;
};

/// Restriction JSON plus optional "label" and "beta_prior" fields.
Prior load_prior(const std::filesystem::path& path);
Prior parse_prior(std::string_view json_text, const std::string& source = "<memory>");

std::string read_text_file(const std::filesystem::path& path);

}  // namespace rbridge
