#include "tempo/ground.h"

#include <algorithm>

namespace tempo {

GroundProgram::GroundProgram(std::shared_ptr<const AtomTable> names, std::shared_ptr<const TemporalProgram> source)
    : names_(std::move(names)), source_(std::move(source)) {
	if (!names_) throw Error("ground program needs an atom table");
}

std::uint32_t GroundProgram::add_atom(GroundAtom a) {
	if (a.base >= names_->size()) throw Error("ground atom refers to an unknown base atom");
	auto [it, fresh] = index_.emplace(a, static_cast<std::uint32_t>(atoms_.size()));
	if (fresh) atoms_.push_back(a);
	return it->second;
}

std::optional<std::uint32_t> GroundProgram::find_atom(GroundAtom a) const {
	if (auto it = index_.find(a); it != index_.end()) return it->second;
	return std::nullopt;
}

void GroundProgram::add_rule(GroundRule r) {
	if (r.kind != HeadKind::constraint && r.head >= atoms_.size()) throw Error("rule head is not a declared atom");
	for (const auto& l : r.body)
		if (l.atom >= atoms_.size()) throw Error("rule body mentions an undeclared atom");
	std::sort(r.body.begin(), r.body.end());
	r.body.erase(std::unique(r.body.begin(), r.body.end()), r.body.end());
	for (std::size_t i = 1; i < r.body.size(); ++i)
		if (r.body[i].atom == r.body[i - 1].atom) throw Error("ground body contains an atom with both signs");
	if (r.kind == HeadKind::constraint) r.head = 0;
	if (!r.tag && !r.body.empty()) {
		auto [it, fresh] = local_index_.emplace(r.body, static_cast<std::uint32_t>(local_bodies_.size()));
		if (fresh) local_bodies_.push_back(r.body);
	}
	rules_.push_back(std::move(r));
}

Term GroundProgram::body_term(const GroundRule& r) const {
	if (r.body.empty()) return Term::empty();
	if (r.tag) return Term::body(r.tag->body, r.tag->step);
	return Term::local_body(local_index_.at(r.body));
}

GroundProgramBuilder::GroundProgramBuilder() : names_(std::make_shared<AtomTable>()) {}

std::uint32_t GroundProgramBuilder::atom(std::string_view name) {
	AtomId id = names_->intern(name);
	if (id == atoms_.size()) atoms_.push_back({id, 0});
	return id;
}

std::vector<GroundLiteral> GroundProgramBuilder::lits(const std::vector<std::pair<std::string_view, bool>>& body) {
	std::vector<GroundLiteral> out;
	for (const auto& [n, pos] : body) out.push_back({atom(n), pos});
	return out;
}

void GroundProgramBuilder::normal(std::string_view head, std::vector<std::pair<std::string_view, bool>> body) {
	auto h = atom(head);
	rules_.push_back({HeadKind::normal, h, lits(body), std::nullopt});
}

void GroundProgramBuilder::choice(std::string_view head, std::vector<std::pair<std::string_view, bool>> body) {
	auto h = atom(head);
	rules_.push_back({HeadKind::choice, h, lits(body), std::nullopt});
}

void GroundProgramBuilder::constraint(std::vector<std::pair<std::string_view, bool>> body) {
	rules_.push_back({HeadKind::constraint, 0, lits(body), std::nullopt});
}

GroundProgram GroundProgramBuilder::build() const {
	GroundProgram gp(std::make_shared<AtomTable>(*names_));
	for (const auto& a : atoms_) gp.add_atom(a);
	for (const auto& r : rules_) gp.add_rule(r);
	return gp;
}

} // namespace tempo
