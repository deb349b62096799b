#include "tempo/asn.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace tempo {

StateAssignment AsnFile::untimed() const {
	StateAssignment a;
	for (const auto& e : entries)
		if (!e.timed()) a.set(e.atom, e.positive);
	return a;
}

std::vector<SignedTerm> AsnFile::timed(Step n) const {
	std::vector<SignedTerm> out;
	for (const auto& e : entries) {
		if (!e.timed()) continue;
		Step hi = e.hi.value_or(n);
		for (Step s = *e.lo; s <= hi; ++s) out.push_back({Term::atom(e.atom, s), e.positive});
	}
	return out;
}

bool AsnFile::has_timed() const {
	for (const auto& e : entries)
		if (e.timed()) return true;
	return false;
}

namespace {

Step parse_step(const std::string& s, std::size_t line) {
	if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
		throw ParseError(line, 1, "invalid step '" + s + "'");
	return static_cast<Step>(std::stol(s));
}

} // namespace

AsnFile parse_asn(std::string_view text, const AtomTable& names) {
	AsnFile f;
	std::istringstream in{std::string(text)};
	std::string line;
	std::size_t lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		if (auto c = line.find('%'); c != std::string::npos) line.erase(c);
		std::istringstream ls(line);
		std::string sign, atom, extra;
		if (!(ls >> sign)) continue;
		if (sign != "T" && sign != "F") throw ParseError(lineno, 1, "expected 'T' or 'F'");
		if (!(ls >> atom)) throw ParseError(lineno, 3, "expected atom");
		if (ls >> extra) throw ParseError(lineno, 1, "unexpected text after atom");
		AsnEntry e;
		e.positive = sign == "T";
		// The step suffix starts at the last '@' outside parentheses.
		std::size_t at = std::string::npos;
		int depth = 0;
		for (std::size_t i = 0; i < atom.size(); ++i) {
			if (atom[i] == '(') ++depth;
			else if (atom[i] == ')') --depth;
			else if (atom[i] == '@' && depth == 0) at = i;
		}
		std::string name = atom.substr(0, at);
		if (at != std::string::npos) {
			std::string steps = atom.substr(at + 1);
			auto dots = steps.find("..");
			if (dots == std::string::npos) {
				e.lo = e.hi = parse_step(steps, lineno);
			} else {
				e.lo = parse_step(steps.substr(0, dots), lineno);
				std::string hi = steps.substr(dots + 2);
				if (hi != "n") e.hi = parse_step(hi, lineno);
				if (e.hi && *e.hi < *e.lo) throw ParseError(lineno, 1, "empty step range");
			}
		}
		auto id = names.find(name);
		if (!id) throw ParseError(lineno, 3, "unknown atom '" + name + "'");
		e.atom = *id;
		f.entries.push_back(e);
	}
	return f;
}

StateAssignment parse_state_assignment(std::string_view text, const AtomTable& names) {
	auto f = parse_asn(text, names);
	if (f.has_timed()) throw ParseError(1, 1, "expected an untimed assignment");
	return f.untimed();
}

std::string format_state_assignment(const StateAssignment& a, const AtomTable& names) {
	std::string s;
	for (const auto& [atom, v] : a.values()) s += std::string(v ? "T " : "F ") + names.name(atom) + "\n";
	return s;
}

std::string format_timed_assignment(const std::vector<SignedTerm>& lits, const AtomTable& names) {
	std::map<std::pair<AtomId, bool>, std::vector<Step>> grouped;
	std::vector<std::pair<AtomId, bool>> order;
	for (const auto& l : lits) {
		if (!l.term.is_atom()) throw Error("timed assignment contains a body term");
		auto key = std::make_pair(l.term.id, l.positive);
		if (!grouped.count(key)) order.push_back(key);
		grouped[key].push_back(l.term.step);
	}
	std::string s;
	for (const auto& key : order) {
		auto steps = grouped[key];
		std::sort(steps.begin(), steps.end());
		for (std::size_t i = 0; i < steps.size();) {
			std::size_t j = i;
			while (j + 1 < steps.size() && steps[j + 1] == steps[j] + 1) ++j;
			s += std::string(key.second ? "T " : "F ") + names.name(key.first) + "@" + std::to_string(steps[i]);
			if (j > i) s += ".." + std::to_string(steps[j]);
			s += "\n";
			i = j + 1;
		}
	}
	return s;
}

namespace {

std::string trim_copy(std::string_view s) {
	std::size_t b = 0, e = s.size();
	while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
	while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
	return std::string(s.substr(b, e - b));
}

// Splits on commas outside parentheses and braces.
std::vector<std::string> split_top(std::string_view s) {
	std::vector<std::string> out;
	int depth = 0;
	std::size_t start = 0;
	for (std::size_t i = 0; i <= s.size(); ++i) {
		if (i == s.size() || (s[i] == ',' && depth == 0)) {
			auto item = trim_copy(s.substr(start, i - start));
			if (!item.empty()) out.push_back(std::move(item));
			start = i + 1;
		} else if (s[i] == '(' || s[i] == '{') {
			++depth;
		} else if (s[i] == ')' || s[i] == '}') {
			--depth;
		}
	}
	return out;
}

AtomId lookup(const TemporalProgram& p, const std::string& name) {
	auto id = p.atoms().find(name);
	if (!id) throw ParseError(1, 1, "unknown atom '" + name + "'");
	return *id;
}

Step parse_suffix_step(const std::string& s) {
	if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos) throw ParseError(1, 1, "invalid step '" + s + "'");
	return static_cast<Step>(std::stol(s));
}

// `name'` or `name` (temporal), `name@k` (timed).
std::pair<AtomId, Step> parse_atom_at(const std::string& text, const TemporalProgram& p, bool temporal) {
	if (temporal) {
		if (!text.empty() && text.back() == '\'')
			return {lookup(p, text.substr(0, text.size() - 1)), -1};
		if (text.find('@') == std::string::npos) return {lookup(p, text), 0};
	}
	auto at = text.rfind('@');
	if (at == std::string::npos) throw ParseError(1, 1, "missing step in '" + text + "'");
	return {lookup(p, text.substr(0, at)), parse_suffix_step(text.substr(at + 1))};
}

} // namespace

Nogood parse_nogood(std::string_view text, const TemporalProgram& p, bool temporal) {
	auto t = trim_copy(text);
	if (t.size() < 2 || t.front() != '{' || t.back() != '}') throw ParseError(1, 1, "nogood must be enclosed in braces: " + t);
	std::vector<SignedTerm> lits;
	for (const auto& item : split_top(std::string_view(t).substr(1, t.size() - 2))) {
		if (item.size() < 3 || (item[0] != 'T' && item[0] != 'F') || item[1] != ' ')
			throw ParseError(1, 1, "literal must start with 'T ' or 'F ': " + item);
		bool positive = item[0] == 'T';
		auto term = trim_copy(std::string_view(item).substr(2));
		if (term.front() == '{') {
			auto close = term.rfind('}');
			Body body;
			for (auto lit : split_top(std::string_view(term).substr(1, close - 1))) {
				bool pos = true;
				if (lit.rfind("not ", 0) == 0) {
					pos = false;
					lit = trim_copy(std::string_view(lit).substr(4));
				}
				bool primed = !lit.empty() && lit.back() == '\'';
				if (primed) lit.pop_back();
				body.push_back({lookup(p, lit), primed, pos});
			}
			auto id = p.find_body(canonical_body(std::move(body), p.atoms()));
			if (!id) throw ParseError(1, 1, "unknown body " + term.substr(0, close + 1));
			Step step = 0;
			std::string rest = term.substr(close + 1);
			if (!rest.empty()) {
				if (rest[0] != '@') throw ParseError(1, 1, "invalid body term " + term);
				step = parse_suffix_step(rest.substr(1));
			} else if (!temporal) {
				throw ParseError(1, 1, "missing step in body term " + term);
			}
			lits.push_back({Term::body(*id, step), positive});
		} else {
			auto [a, s] = parse_atom_at(term, p, temporal);
			lits.push_back({Term::atom(a, s), positive});
		}
	}
	return Nogood(std::move(lits));
}

NogoodSet parse_nogood_list(std::string_view text, const TemporalProgram& p, bool temporal) {
	NogoodSet out;
	std::istringstream in{std::string(text)};
	std::string line;
	std::size_t lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		if (auto c = line.find('%'); c != std::string::npos) line.erase(c);
		auto t = trim_copy(line);
		if (t.empty() || t[0] == '#') continue;
		try {
			out.insert(parse_nogood(t, p, temporal));
		} catch (const ParseError& e) {
			std::string msg = e.what();
			throw ParseError(lineno, e.column(), msg.substr(msg.find(' ') + 1));
		}
	}
	return out;
}

std::string read_text_file(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw Error("cannot read '" + path + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
	std::ofstream out(path, std::ios::binary);
	if (!out) throw Error("cannot write '" + path + "'");
	out << content;
}

} // namespace tempo
