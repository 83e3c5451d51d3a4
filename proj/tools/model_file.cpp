#include "model_file.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fracred::tools {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

struct DuplicateKey {
  std::string key;
};

// byte offset of the n-th occurrence of "key" used as an object key
std::size_t nth_key_offset(const std::string& text, const std::string& key,
                           int n) {
  const std::string needle = "\"" + key + "\"";
  std::size_t pos = 0;
  int seen = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    std::size_t after = pos + needle.size();
    while (after < text.size() &&
           (text[after] == ' ' || text[after] == '\t' ||
            text[after] == '\n' || text[after] == '\r')) {
      ++after;
    }
    if (after < text.size() && text[after] == ':') {
      if (++seen == n) return pos + 1;
    }
    pos += needle.size();
  }
  return 0;
}

std::vector<double> number_array(const json& value, const std::string& field) {
  if (!value.is_array() || value.empty()) {
    throw ValidationError("'" + field + "' must be a non-empty array",
                          field);
  }
  std::vector<double> out;
  out.reserve(value.size());
  for (const json& item : value) {
    if (!item.is_number()) {
      throw ValidationError("'" + field + "' must contain numbers only",
                            field);
    }
    const double v = item.get<double>();
    if (!std::isfinite(v)) {
      throw ValidationError("'" + field + "' must contain finite numbers",
                            field);
    }
    out.push_back(v);
  }
  return out;
}

int dof_index(const json& value, const std::string& field) {
  if (!value.is_number_integer()) {
    throw ValidationError("'" + field + "' must be an integer", field);
  }
  const long long v = value.get<long long>();
  if (v < 1 || v > 1'000'000) {
    throw ValidationError("'" + field + "' must be a positive DOF index",
                          field);
  }
  return static_cast<int>(v);
}

}  // namespace

ModelFile parse_model_text(const std::string& text) {
  // duplicate keys silently collapse in the DOM, so track them in the
  // parser callback
  std::vector<std::set<std::string>> key_stack;
  auto callback = [&](int, json::parse_event_t event, json& parsed) {
    if (event == json::parse_event_t::object_start) {
      key_stack.emplace_back();
    } else if (event == json::parse_event_t::object_end) {
      key_stack.pop_back();
    } else if (event == json::parse_event_t::key) {
      const std::string key = parsed.get<std::string>();
      if (!key_stack.back().insert(key).second) {
        throw DuplicateKey{key};
      }
    }
    return true;
  };

  json doc;
  try {
    doc = json::parse(text, callback);
  } catch (const DuplicateKey& dup) {
    const auto [line, column] =
        line_column(text, nth_key_offset(text, dup.key, 2));
    throw ParseError("duplicate key '" + dup.key + "'", line, column);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ParseError(e.what(), line, column);
  }

  if (!doc.is_object()) {
    throw ValidationError("model file must be a JSON object", "");
  }
  static const std::set<std::string> known = {
      "masses", "stiffnesses", "dampers", "force_dof", "active_dofs"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!known.count(key)) {
      throw ValidationError("unknown key '" + key + "'", key);
    }
  }
  for (const char* required : {"masses", "stiffnesses", "dampers"}) {
    if (!doc.contains(required)) {
      throw ValidationError("missing key '" + std::string(required) + "'",
                            required);
    }
  }

  ModelFile model;
  model.masses = number_array(doc["masses"], "masses");
  model.stiffnesses = number_array(doc["stiffnesses"], "stiffnesses");
  model.dampers = number_array(doc["dampers"], "dampers");
  if (doc.contains("force_dof")) {
    model.force_dof = dof_index(doc["force_dof"], "force_dof");
  }
  if (doc.contains("active_dofs")) {
    const json& dofs = doc["active_dofs"];
    if (!dofs.is_array() || dofs.empty()) {
      throw ValidationError("'active_dofs' must be a non-empty array",
                            "active_dofs");
    }
    for (const json& item : dofs) {
      model.active_dofs.push_back(dof_index(item, "active_dofs"));
    }
  } else {
    model.active_dofs = {model.force_dof};
  }
  return model;
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open model file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model_text(buffer.str());
}

}  // namespace fracred::tools
