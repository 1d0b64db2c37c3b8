#pragma once

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dynsml/decide/instance.hpp"

namespace dynsml::cli {

using nlohmann::json;

// Byte offsets of every value in a JSON text, keyed by JSON pointer.
class JsonLocator {
 public:
  explicit JsonLocator(std::string_view text);
  // 1-based line and column of the value at `where` (or of its nearest
  // located ancestor).
  std::pair<long, long> locate(const json::json_pointer& where) const;
  std::pair<long, long> line_column(std::size_t offset) const;

 private:
  void scan_value(const std::string& path);
  std::string scan_string();
  void skip_ws();

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> offsets_;
};

// Throws ParseError ("line L, column C: ...") for malformed documents and
// ill-typed fields; semantic checks are left to the pipeline.
ProblemInstance parse_instance(std::string_view text);
ProblemInstance load_instance(const std::string& path);

json instance_to_json(const ProblemInstance& in);

}  // namespace dynsml::cli
