#pragma once

// Coloring documents: one flat JSON object holding n, k, the mode label,
// the color array in edge-index order, and an optional provenance note.
// Diff-friendly and portable; loading re-validates everything.

#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tripal/core.hpp"

namespace tripal {

struct ColoringDocument {
  static constexpr int format_version = 1;
  static constexpr const char* format_name = "triangle-palette-coloring";

  EdgeColoring coloring;
  PaletteMode mode = PaletteMode::Multiset;
  std::string note;  // optional provenance (construction name, search flags)
};

inline nlohmann::json to_json(const ColoringDocument& doc) {
  doc.coloring.validate();
  nlohmann::json j;
  j["format"] = ColoringDocument::format_name;
  j["version"] = ColoringDocument::format_version;
  j["n"] = doc.coloring.n;
  j["k"] = doc.coloring.k;
  j["mode"] = std::string(mode_name(doc.mode));
  j["colors"] = doc.coloring.colors;
  if (!doc.note.empty()) j["note"] = doc.note;
  return j;
}

inline void save_document(const ColoringDocument& doc, std::ostream& out) {
  out << to_json(doc).dump(2) << "\n";
}

inline void save_document(const ColoringDocument& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("document: cannot open '" + path + "' for writing");
  save_document(doc, out);
  if (!out) throw std::runtime_error("document: write to '" + path + "' failed");
}

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j,
                                           const char* field) {
  auto it = j.find(field);
  if (it == j.end())
    throw std::runtime_error(std::string("document: missing field '") + field + "'");
  return *it;
}

inline int int_field(const nlohmann::json& j, const char* field) {
  const auto& v = require_field(j, field);
  if (!v.is_number_integer())
    throw std::runtime_error(std::string("document: field '") + field +
                             "' must be an integer");
  return v.get<int>();
}

}  // namespace detail

inline ColoringDocument document_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::runtime_error("document: top level must be an object");
  const auto& format = detail::require_field(j, "format");
  if (!format.is_string() || format.get<std::string>() != ColoringDocument::format_name)
    throw std::runtime_error("document: field 'format' must be \"" +
                             std::string(ColoringDocument::format_name) + "\"");
  const int version = detail::int_field(j, "version");
  if (version != ColoringDocument::format_version)
    throw std::runtime_error("document: unsupported version " + std::to_string(version));

  ColoringDocument doc;
  const int n = detail::int_field(j, "n");
  const int k = detail::int_field(j, "k");
  const auto& mode = detail::require_field(j, "mode");
  if (!mode.is_string())
    throw std::runtime_error("document: field 'mode' must be a string");
  const auto parsed = parse_mode(mode.get<std::string>());
  if (!parsed)
    throw std::runtime_error("document: field 'mode' must be rainbow, set or multiset");
  doc.mode = *parsed;
  const auto& colors = detail::require_field(j, "colors");
  if (!colors.is_array())
    throw std::runtime_error("document: field 'colors' must be an array");
  std::vector<Color> values;
  values.reserve(colors.size());
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (!colors[i].is_number_integer())
      throw std::runtime_error("document: colors[" + std::to_string(i) +
                               "] must be an integer");
    values.push_back(colors[i].get<Color>());
  }
  try {
    doc.coloring = EdgeColoring(n, k, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("document: ") + e.what());
  }
  if (auto it = j.find("note"); it != j.end()) {
    if (!it->is_string())
      throw std::runtime_error("document: field 'note' must be a string");
    doc.note = it->get<std::string>();
  }
  return doc;
}

// Parse errors surface nlohmann's line/column diagnostics.
inline ColoringDocument load_document(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("document: ") + e.what());
  }
  return document_from_json(j);
}

inline ColoringDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("document: cannot open '" + path + "'");
  return load_document(in);
}

}  // namespace tripal
