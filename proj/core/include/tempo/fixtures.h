#pragma once

#include "tempo/temporal.h"

#include <optional>
#include <string>
#include <vector>

namespace tempo {

/// A fixture directory `<root>/<name>/` with program.tlp, init.asn, goal.asn and expected.json
/// (plus domain.txt and instance.txt for planning cases).
struct GoldenCase {
	std::string                            name;
	std::string                            program_text;
	std::shared_ptr<const TemporalProgram> program;
	StateAssignment                        init;
	StateAssignment                        goal;
	/// Raw JSON object; every member is `{"value": ..., "provenance": "<non-empty>"}`.
	std::string                            expected_json;
	std::optional<std::string>             domain_text;
	std::optional<std::string>             instance_text;
};

/// Registered fixture names.
const std::vector<std::string>& golden_names();

/// The TEMPO_FIXTURE_DIR environment variable if set, else the directory configured at build time.
std::string default_fixture_dir();

/// Loads and validates a fixture. Throws Error for unknown names, unreadable files, parse errors
/// or entries without provenance.
GoldenCase load_golden(std::string_view name, const std::string& root = default_fixture_dir());

} // namespace tempo
