#include <rbridge/errors.hpp>
#include <rbridge/io.hpp>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace rbridge {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::string_view unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == ',' && !quoted) {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(line.substr(start));
  return out;
}

bool parse_number(std::string_view cell, double& out) {
  cell = unquote(cell);
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("{}: malformed JSON: {}", source, e.what()));
  }
}

Vector to_vector(const json& arr, const std::string& what, const std::string& source) {
  if (!arr.is_array()) throw ParseError(fmt::format("{}: '{}' must be an array", source, what));
  Vector v(static_cast<Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      throw ParseError(fmt::format("{}: '{}'[{}] is not a number", source, what, i));
    v(static_cast<Index>(i)) = arr[i].get<double>();
  }
  return v;
}

Restriction restriction_from_json(const json& j, const std::string& source, bool prior) {
  if (!j.is_object()) throw ParseError(fmt::format("{}: restriction must be a JSON object", source));
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    const bool known = k == "rows" || k == "values" || k == "zero_indices" || k == "p" ||
                       (prior && (k == "label" || k == "beta_prior"));
    if (!known) throw ParseError(fmt::format("{}: unknown key '{}'", source, k));
  }
  const bool has_rows = j.contains("rows");
  const bool has_zero = j.contains("zero_indices");
  if (has_rows == has_zero)
    throw ParseError(
        fmt::format("{}: give exactly one of 'rows'/'values' or 'zero_indices'/'p'", source));

  if (has_zero) {
    if (!j.contains("p") || !j["p"].is_number_integer())
      throw ParseError(fmt::format("{}: 'zero_indices' needs an integer 'p'", source));
    const auto& zi = j["zero_indices"];
    if (!zi.is_array()) throw ParseError(fmt::format("{}: 'zero_indices' must be an array", source));
    std::set<Index> idx;
    for (const auto& e : zi) {
      if (!e.is_number_integer())
        throw ParseError(fmt::format("{}: zero index {} is not an integer", source, e.dump()));
      if (!idx.insert(e.get<Index>()).second)
        throw ParseError(fmt::format("{}: zero index {} repeated", source, e.get<Index>()));
    }
    return restriction_zeros(idx, j["p"].get<Index>());
  }

  if (!j.contains("values"))
    throw ParseError(fmt::format("{}: 'rows' given without 'values'", source));
  const auto& rows = j["rows"];
  if (!rows.is_array()) throw ParseError(fmt::format("{}: 'rows' must be an array", source));
  const Vector values = to_vector(j["values"], "values", source);
  if (static_cast<Index>(rows.size()) != values.size())
    throw ParseError(fmt::format("{}: {} rows but {} values", source, rows.size(), values.size()));
  std::vector<AffineRow> stacked;
  for (std::size_t k = 0; k < rows.size(); ++k)
    stacked.push_back({to_vector(rows[k], fmt::format("rows[{}]", k), source),
                       values(static_cast<Index>(k))});
  return restriction_affine(stacked);
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Dataset parse_csv(std::string_view text, const std::string& response, const std::string& source) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back(text.substr(start, end - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(fmt::format("{}: empty file", source));

  const auto header = split_fields(lines.front());
  std::vector<std::string> names;
  for (auto h : header) names.emplace_back(unquote(h));

  Index response_col = -1;
  for (std::size_t c = 0; c < names.size(); ++c)
    if (names[c] == response) response_col = static_cast<Index>(c);
  if (response_col < 0)
    throw ParseError(fmt::format("{}: response column '{}' not found in header", source, response));

  const auto ncols = static_cast<Index>(names.size());
  const auto nrows = static_cast<Index>(lines.size()) - 1;
  Matrix X(nrows, ncols - 1);
  Vector y(nrows);
  for (Index i = 0; i < nrows; ++i) {
    const auto fields = split_fields(lines[static_cast<std::size_t>(i + 1)]);
    if (static_cast<Index>(fields.size()) != ncols)
      throw ParseError(fmt::format("{}: line {} has {} fields, header has {}", source, i + 2,
                                   fields.size(), ncols));
    Index xcol = 0;
    for (Index c = 0; c < ncols; ++c) {
      double v = 0.0;
      if (!parse_number(fields[static_cast<std::size_t>(c)], v))
        throw ParseError(fmt::format("{}: non-numeric cell '{}' at line {}, column '{}'", source,
                                     trim(fields[static_cast<std::size_t>(c)]), i + 2,
                                     names[static_cast<std::size_t>(c)]));
      if (c == response_col) {
        y(i) = v;
      } else {
        X(i, xcol++) = v;
      }
    }
  }

  std::vector<std::string> predictors;
  for (Index c = 0; c < ncols; ++c)
    if (c != response_col) predictors.push_back(names[static_cast<std::size_t>(c)]);
  return Dataset(std::move(X), std::move(y), std::move(predictors), false, response);
}

Dataset load_csv(const std::filesystem::path& path, const std::string& response) {
  if (!std::filesystem::exists(path))
    throw ParseError(fmt::format("data file '{}' does not exist", path.string()));
  return parse_csv(read_text_file(path), response, path.string());
}

Restriction parse_restriction(std::string_view json_text, const std::string& source) {
  return restriction_from_json(parse_json(json_text, source), source, false);
}

Restriction load_restriction(const std::filesystem::path& path) {
  return parse_restriction(read_text_file(path), path.string());
}

Prior parse_prior(std::string_view json_text, const std::string& source) {
  const json j = parse_json(json_text, source);
  Restriction rest = restriction_from_json(j, source, true);
  std::string label = j.value("label", std::string{});
  std::optional<Vector> beta;
  if (j.contains("beta_prior")) {
    beta = to_vector(j["beta_prior"], "beta_prior", source);
    if (beta->size() != rest.p())
      throw InvalidArgument(fmt::format("{}: beta_prior has {} entries but restriction has p = {}",
                                        source, beta->size(), rest.p()));
  }
  return Prior{std::move(label), std::move(rest), std::move(beta)};
}

Prior load_prior(const std::filesystem::path& path) {
  Prior prior = parse_prior(read_text_file(path), path.string());
  if (prior.label.empty()) prior.label = path.stem().string();
  return prior;
}

}  // namespace rbridge
