#include "tempo/fixtures.h"

#include "tempo/asn.h"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>

#ifndef TEMPO_FIXTURE_DIR
#define TEMPO_FIXTURE_DIR "fixtures"
#endif

namespace tempo {

const std::vector<std::string>& golden_names() {
	static const std::vector<std::string> names{"pi1", "pi2", "blocks3"};
	return names;
}

std::string default_fixture_dir() {
	if (const char* env = std::getenv("TEMPO_FIXTURE_DIR"); env && *env) return env;
	return TEMPO_FIXTURE_DIR;
}

GoldenCase load_golden(std::string_view name, const std::string& root) {
	const auto& names = golden_names();
	if (std::find(names.begin(), names.end(), name) == names.end())
		throw Error("unknown fixture '" + std::string(name) + "'");
	namespace fs = std::filesystem;
	fs::path dir = fs::path(root) / std::string(name);
	auto read = [&](const char* file) { return read_text_file((dir / file).string()); };

	GoldenCase c;
	c.name = name;
	c.program_text = read("program.tlp");
	c.program = std::make_shared<const TemporalProgram>(parse_temporal_program(c.program_text));
	c.init = parse_state_assignment(read("init.asn"), c.program->atoms());
	c.goal = parse_state_assignment(read("goal.asn"), c.program->atoms());
	c.expected_json = read("expected.json");
	if (fs::exists(dir / "domain.txt")) c.domain_text = read("domain.txt");
	if (fs::exists(dir / "instance.txt")) c.instance_text = read("instance.txt");

	nlohmann::json j;
	try {
		j = nlohmann::json::parse(c.expected_json);
	} catch (const nlohmann::json::exception& e) {
		throw Error("fixture '" + c.name + "': invalid expected.json: " + e.what());
	}
	if (!j.is_object()) throw Error("fixture '" + c.name + "': expected.json must be an object");
	for (const auto& [key, entry] : j.items()) {
		if (!entry.is_object() || !entry.contains("value"))
			throw Error("fixture '" + c.name + "': entry '" + key + "' has no value");
		auto p = entry.find("provenance");
		if (p == entry.end() || !p->is_string() || p->get<std::string>().empty())
			throw Error("fixture '" + c.name + "': entry '" + key + "' has no provenance");
	}
	return c;
}

} // namespace tempo
