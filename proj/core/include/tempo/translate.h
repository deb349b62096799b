#pragma once

#include "tempo/temporal.h"

#include <map>
#include <optional>

namespace tempo {

enum class TranslationKind { none, lambda, pnf, trb, pnf_trb };

std::string to_string(TranslationKind k);
TranslationKind parse_translation_kind(std::string_view s);

/// A translated program. Atom ids of the source program are preserved; auxiliary atoms are
/// appended.
struct TranslationResult {
	TranslationKind                        kind = TranslationKind::none;
	std::shared_ptr<const TemporalProgram> program;
	std::vector<AtomId>                    aux_atoms;
	/// Values the auxiliary atoms must take at step 0.
	StateAssignment                        required_init;
	std::optional<AtomId>                  lambda;
	std::map<AtomId, AtomId>               star_to_original;
	std::map<AtomId, AtomId>               original_to_star;

	/// required_init at step 0 plus Tλ@1..Tλ@n when λ is present.
	std::vector<SignedTerm> schedule(Step n) const;
};

/// Returns `base`, or `base_<k>` for the least k making it unused.
std::string fresh_name(const AtomTable& names, std::string_view base);

/// {λ}← ∪ {H ← B ∪ {λ} | H ← B ∈ Π} ∪ {{a} ← not λ | a ∈ A}.
TranslationResult lambda_translate(const TemporalProgram& p);

/// Previous-step atoms occur only in integrity constraints.
bool is_pnf(const TemporalProgram& p);

/// Replaces every a' by a*, and adds {a*}←, ⊥ ← a', not a*, ⊥ ← not a', a* for every a ∈ A.
TranslationResult pnf_translate(const TemporalProgram& p);

/// Adds λ to every integrity constraint mentioning a previous-step atom, plus {λ}←. Throws Error
/// if p is not in previous normal form.
TranslationResult trb_translate(const TemporalProgram& p);

/// trb_translate(pnf_translate(p)), keeping the star map.
TranslationResult pnf_trb_translate(const TemporalProgram& p);

/// Dispatch by kind; `none` returns p unchanged.
TranslationResult translate(const TemporalProgram& p, TranslationKind kind);

} // namespace tempo
