#include "tempo/program.h"

#include <algorithm>
#include <map>
#include <sstream>

namespace tempo {

ParseError::ParseError(std::size_t line, std::size_t col, const std::string& msg)
    : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}

AtomId AtomTable::intern(std::string_view name) {
	std::string key(name);
	if (auto it = index_.find(key); it != index_.end()) return it->second;
	if (!is_valid_atom_name(name)) throw Error("invalid atom name '" + key + "'");
	auto id = static_cast<AtomId>(names_.size());
	names_.push_back(key);
	index_.emplace(std::move(key), id);
	return id;
}

std::optional<AtomId> AtomTable::find(std::string_view name) const {
	if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
	return std::nullopt;
}

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_ident(char c) {
	return is_lower(c) || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

// Returns the length of the longest atom-name prefix of s, or 0 if none.
std::size_t scan_name(std::string_view s) {
	std::size_t i = 0;
	while (i < s.size() && s[i] == '_') ++i;
	if (i >= s.size() || !is_lower(s[i])) return 0;
	++i;
	while (i < s.size() && is_ident(s[i])) ++i;
	if (i < s.size() && s[i] == '(') {
		int depth = 0;
		std::size_t j = i;
		for (; j < s.size(); ++j) {
			if (s[j] == '(') ++depth;
			else if (s[j] == ')') {
				if (--depth == 0) break;
			} else if (s[j] == '\n') {
				return 0;
			}
		}
		if (j >= s.size()) return 0;
		i = j + 1;
	}
	return i;
}

} // namespace

bool is_valid_atom_name(std::string_view name) {
	return !name.empty() && scan_name(name) == name.size();
}

TemporalProgram::TemporalProgram() : atoms_(std::make_shared<AtomTable>()) {}

std::optional<BodyId> TemporalProgram::find_body(const Body& canonical) const {
	for (std::size_t i = 0; i < bodies_.size(); ++i)
		if (bodies_[i] == canonical) return static_cast<BodyId>(i);
	return std::nullopt;
}

Body canonical_body(Body body, const AtomTable& names) {
	std::sort(body.begin(), body.end(), [&](const Literal& x, const Literal& y) {
		if (x.positive != y.positive) return x.positive;
		if (x.atom != y.atom) {
			const auto& nx = names.name(x.atom);
			const auto& ny = names.name(y.atom);
			if (nx != ny) return nx < ny;
			return x.atom < y.atom;
		}
		return x.primed < y.primed;
	});
	body.erase(std::unique(body.begin(), body.end()), body.end());
	for (std::size_t i = 0; i < body.size(); ++i)
		for (std::size_t j = i + 1; j < body.size(); ++j)
			if (body[i].sym() == body[j].sym() && body[i].positive != body[j].positive)
				throw Error("atom '" + names.name(body[i].atom) + (body[i].primed ? "'" : "") +
				            "' occurs both positively and negatively in one body");
	return body;
}

bool has_primed(const Body& b) noexcept {
	return std::any_of(b.begin(), b.end(), [](const Literal& l) { return l.primed; });
}

bool has_current(const Body& b) noexcept {
	return std::any_of(b.begin(), b.end(), [](const Literal& l) { return !l.primed; });
}

ProgramBuilder::ProgramBuilder() : atoms_(std::make_shared<AtomTable>()) {}

ProgramBuilder::ProgramBuilder(const TemporalProgram& base)
    : atoms_(std::make_shared<AtomTable>(base.atoms())), rules_(base.rules().begin(), base.rules().end()) {}

AtomId ProgramBuilder::declare(std::string_view name) { return atoms_->intern(name); }

Body ProgramBuilder::canonical(Body body) const {
	for (const auto& l : body)
		if (l.atom >= atoms_->size()) throw Error("body literal refers to an undeclared atom");
	return canonical_body(std::move(body), *atoms_);
}

void ProgramBuilder::add_normal(AtomId head, Body body) { add_rule({HeadKind::normal, head, std::move(body)}); }
void ProgramBuilder::add_choice(AtomId head, Body body) { add_rule({HeadKind::choice, head, std::move(body)}); }
void ProgramBuilder::add_constraint(Body body) { add_rule({HeadKind::constraint, 0, std::move(body)}); }

void ProgramBuilder::add_rule(Rule r) {
	r.body = canonical(std::move(r.body));
	if (r.kind == HeadKind::constraint) {
		r.head = 0;
		if (!has_current(r.body)) throw Error("integrity constraint must mention a current-step atom");
	} else if (r.head >= atoms_->size()) {
		throw Error("rule head refers to an undeclared atom");
	}
	rules_.push_back(std::move(r));
}

TemporalProgram ProgramBuilder::build() const {
	TemporalProgram p;
	p.atoms_ = std::make_shared<AtomTable>(*atoms_);
	p.rules_ = rules_;
	std::map<std::vector<std::tuple<AtomId, bool, bool>>, BodyId> seen;
	for (const auto& r : p.rules_) {
		std::vector<std::tuple<AtomId, bool, bool>> key;
		for (const auto& l : r.body) key.emplace_back(l.atom, l.primed, l.positive);
		auto [it, fresh] = seen.emplace(std::move(key), static_cast<BodyId>(p.bodies_.size()));
		if (fresh) {
			p.bodies_.push_back(r.body);
			p.rule_body_flag_.push_back(false);
		}
		p.rule_body_.push_back(it->second);
		if (r.kind != HeadKind::constraint) p.rule_body_flag_[it->second] = true;
	}
	return p;
}

// ---------------------------------------------------------------------------
// .tlp parser

namespace {

class Parser {
public:
	explicit Parser(std::string_view text) : s_(text) {}

	TemporalProgram run() {
		for (;;) {
			skip_ws();
			if (eof()) break;
			statement();
		}
		return b_.build();
	}

private:
	struct Pos {
		std::size_t line, col;
	};

	[[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }
	[[noreturn]] void fail_at(Pos p, const std::string& msg) const { throw ParseError(p.line, p.col, msg); }

	bool eof() const { return i_ >= s_.size(); }
	char peek() const { return eof() ? '\0' : s_[i_]; }
	Pos pos() const { return {line_, col_}; }

	void advance(std::size_t n = 1) {
		while (n-- > 0 && !eof()) {
			if (s_[i_] == '\n') {
				++line_;
				col_ = 1;
			} else {
				++col_;
			}
			++i_;
		}
	}

	void skip_ws() {
		while (!eof()) {
			char c = peek();
			if (c == '%') {
				while (!eof() && peek() != '\n') advance();
			} else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
				advance();
			} else {
				break;
			}
		}
	}

	void expect(char c) {
		skip_ws();
		if (peek() != c) fail(std::string("expected '") + c + "'");
		advance();
	}

	bool accept(std::string_view tok) {
		skip_ws();
		if (s_.substr(i_, tok.size()) != tok) return false;
		advance(tok.size());
		return true;
	}

	struct ParsedAtom {
		AtomId id;
		bool primed;
		Pos at;
	};

	ParsedAtom atom() {
		skip_ws();
		Pos at = pos();
		std::size_t n = scan_name(s_.substr(i_));
		if (n == 0) fail("expected atom");
		AtomId id = b_.declare(s_.substr(i_, n));
		advance(n);
		bool primed = false;
		if (peek() == '\'') {
			primed = true;
			advance();
		}
		return {id, primed, at};
	}

	bool at_keyword_not() const {
		if (s_.substr(i_, 3) != "not") return false;
		char c = i_ + 3 < s_.size() ? s_[i_ + 3] : '\0';
		return c == ' ' || c == '\t' || c == '\n' || c == '\r';
	}

	Body body() {
		Body out;
		for (;;) {
			skip_ws();
			bool positive = true;
			if (at_keyword_not()) {
				advance(3);
				positive = false;
			}
			auto a = atom();
			out.push_back({a.id, a.primed, positive});
			skip_ws();
			if (peek() == ',') {
				advance();
				continue;
			}
			break;
		}
		return out;
	}

	void add(Rule r, Pos at) {
		try {
			b_.add_rule(std::move(r));
		} catch (const ParseError&) {
			throw;
		} catch (const Error& e) {
			fail_at(at, e.what());
		}
	}

	void statement() {
		Pos start = pos();
		if (peek() == '{') {
			advance();
			std::vector<ParsedAtom> heads;
			skip_ws();
			if (peek() != '}') {
				for (;;) {
					heads.push_back(atom());
					skip_ws();
					if (peek() == ';') {
						advance();
						continue;
					}
					break;
				}
			}
			expect('}');
			Body bd;
			if (accept(":-")) bd = body();
			expect('.');
			for (const auto& h : heads) {
				if (h.primed) fail_at(h.at, "rule head must not be a previous-step atom");
				add({HeadKind::choice, h.id, bd}, start);
			}
			return;
		}
		if (accept(":-")) {
			Body bd = body();
			expect('.');
			add({HeadKind::constraint, 0, std::move(bd)}, start);
			return;
		}
		auto h = atom();
		if (h.primed) fail_at(h.at, "rule head must not be a previous-step atom");
		Body bd;
		if (accept(":-")) bd = body();
		expect('.');
		add({HeadKind::normal, h.id, std::move(bd)}, start);
	}

	std::string_view s_;
	std::size_t      i_ = 0;
	std::size_t      line_ = 1;
	std::size_t      col_ = 1;
	ProgramBuilder   b_;
};

} // namespace

TemporalProgram parse_temporal_program(std::string_view text) { return Parser(text).run(); }

std::string format_literal(const Literal& l, const AtomTable& names) {
	std::string s = l.positive ? "" : "not ";
	s += names.name(l.atom);
	if (l.primed) s += '\'';
	return s;
}

std::string format_body(const Body& b, const AtomTable& names) {
	std::string s;
	for (std::size_t i = 0; i < b.size(); ++i) {
		if (i) s += ", ";
		s += format_literal(b[i], names);
	}
	return s;
}

std::string format_program(const TemporalProgram& p) {
	std::ostringstream out;
	const auto& names = p.atoms();
	for (const auto& r : p.rules()) {
		switch (r.kind) {
		case HeadKind::normal: out << names.name(r.head); break;
		case HeadKind::choice: out << '{' << names.name(r.head) << '}'; break;
		case HeadKind::constraint: break;
		}
		if (!r.body.empty() || r.kind == HeadKind::constraint) {
			out << (r.kind == HeadKind::constraint ? ":- " : " :- ") << format_body(r.body, names);
		}
		out << ".\n";
	}
	return out.str();
}

RuleClasses classify_rules(const TemporalProgram& p) {
	RuleClasses c;
	auto rules = p.rules();
	for (std::size_t i = 0; i < rules.size(); ++i) {
		switch (rules[i].kind) {
		case HeadKind::normal: c.normal.push_back(i); break;
		case HeadKind::choice: c.choice.push_back(i); break;
		case HeadKind::constraint: c.constraints.push_back(i); break;
		}
	}
	return c;
}

std::vector<Body> program_bodies(const TemporalProgram& p) {
	return {p.bodies().begin(), p.bodies().end()};
}

} // namespace tempo
