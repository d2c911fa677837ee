#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fillnorm/errors.hpp"
#include "fillnorm/word.hpp"

namespace fillnorm {

struct Generator {
    std::string name;
    std::string inverse_name;
};

struct RewriteRule {
    Word lhs;
    Word rhs;
};

// Termination orders a rule set may be validated against.
//
//  - Shortlex: every rule strictly decreases shortlex order.
//  - Weighted: positive per-generator weights; a rule must strictly decrease
//    (total weight, length, lex). Needed for redundant generators that
//    rewrite to longer words (t -> x y).
//  - Collection: per-generator levels; a rule must strictly decrease the
//    triple (inversions among positive-level letters, displaced level-zero
//    letters, shortlex). This is the usual collection order for nilpotent
//    normal forms, where central letters may be created while sorting.
enum class RuleOrder { Shortlex, Weighted, Collection };

struct ConfluenceViolation {
    Word word;                       // smallest witness found
    std::vector<Word> normal_forms;  // the distinct normal forms reached
};

struct ConfluenceReport {
    int length_bound = 0;
    std::uint64_t words_checked = 0;
    std::vector<ConfluenceViolation> violations;
    bool confluent() const { return violations.empty(); }
};

class GroupPresentation;

// An element is its irreducible normal form. Ordering is shortlex so that
// elements sort the same way everywhere.
struct GroupElement {
    Word normal_form;

    bool is_identity() const { return normal_form.empty(); }
    bool operator==(const GroupElement& o) const { return normal_form == o.normal_form; }
    bool operator<(const GroupElement& o) const { return shortlex_less(normal_form, o.normal_form); }
};

// A finitely presented group with a convergent-at-scale rewriting system.
// Immutable after construction; safe to share.
class GroupPresentation {
public:
    GroupPresentation(std::string name,
                      std::vector<Generator> generators,
                      std::vector<Word> relators,
                      std::vector<RewriteRule> rules,
                      RuleOrder order = RuleOrder::Shortlex,
                      std::vector<std::int64_t> order_params = {});

    const std::string& name() const { return name_; }
    const std::vector<Generator>& generators() const { return generators_; }
    const std::vector<Word>& relators() const { return relators_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    std::size_t alphabet_size() const { return 2 * generators_.size(); }
    bool is_trivial() const { return generators_.empty(); }

    // Word <-> text. Words are whitespace-separated symbols; a spaceless
    // string of single-character symbols is also accepted. Unknown symbols
    // raise MalformedWordError.
    Word parse_word(const std::string& text) const;
    std::string word_to_string(const Word& w) const;

    // Unique irreducible descendant under the rule set, leftmost-outermost,
    // first matching rule. Throws NonTerminationError past the step budget.
    GroupElement reduce(const Word& w) const;
    GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
    GroupElement inverse(const GroupElement& g) const;
    GroupElement identity() const { return GroupElement{}; }

    // All elements of word length <= r, sorted shortlex by normal form.
    // Throws ResourceLimitError if more than `cap` elements appear.
    std::vector<GroupElement> ball(int r, std::size_t cap = 200000) const;

    // Exhaustively reduces every word of length <= L along all reduction
    // paths and reports words with more than one normal form.
    ConfluenceReport verify_confluence(int L, std::size_t word_cap = 5000000) const;

    std::size_t reduction_step_budget() const { return step_budget_; }
    void set_reduction_step_budget(std::size_t b) { step_budget_ = b; }

private:
    void validate() const;
    bool rule_admissible(const RewriteRule& r, std::string* why) const;
    std::optional<std::pair<std::size_t, std::size_t>> find_redex(const Word& w) const;

    std::string name_;
    std::vector<Generator> generators_;
    std::vector<Word> relators_;
    std::vector<RewriteRule> rules_;
    RuleOrder order_;
    std::vector<std::int64_t> order_params_;  // weights or levels, per generator
    std::map<std::string, Letter> symbol_table_;
    std::size_t step_budget_ = 1000000;
};

using GroupPtr = std::shared_ptr<const GroupPresentation>;

}  // namespace fillnorm
