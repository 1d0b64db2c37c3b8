#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "dynsml/decide/decide.hpp"
#include "dynsml/sml/sml.hpp"

namespace dynsml::cli {

using nlohmann::json;

// Output of the decide and sml subcommands. Exactly one of the two answers is
// present.
struct Report {
  std::optional<decide::ProgressionSet> automorphism;
  std::optional<sml::RecurrenceZeroSet> recurrence;
  decide::DensityFlag density;
  std::optional<long> elapsed_ms;
  bool operator==(const Report&) const = default;
};

Report make_report(decide::ProgressionSet result);
Report make_report(sml::RecurrenceZeroSet result);

json render_machine(const Report& r);
// Throws ParseError on documents that are not rendered reports.
Report parse_machine(const json& doc);

// Answer first, certificates after.
std::string render_human(const Report& r);

// "0, 2 (mod 4)", or "none".
std::string progression_text(unsigned long modulus, const std::vector<unsigned long>& classes);

}  // namespace dynsml::cli
