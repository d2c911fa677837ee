#include "fillnorm/group.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace fillnorm {

namespace {

// Multiset of generator indices appearing in a word, filtered by a level
// predicate. Used by the collection-order admissibility check.
std::multiset<int> letter_multiset(const Word& w, const std::vector<std::int64_t>& lvl,
                                   bool positive_only) {
    std::multiset<int> out;
    for (Letter l : w) {
        int g = letter_generator(l);
        if (!positive_only || lvl[g] > 0) out.insert(g);
    }
    return out;
}

bool submultiset(const std::multiset<int>& a, const std::multiset<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Inversions among positive-level letters: pairs (i < j) with
// level(w_i) > level(w_j) > 0.
std::int64_t inversions_positive(const Word& w, const std::vector<std::int64_t>& lvl) {
    std::int64_t n = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            auto li = lvl[letter_generator(w[i])];
            auto lj = lvl[letter_generator(w[j])];
            if (li > lj && lj > 0) ++n;
        }
    return n;
}

// Displaced central letters: pairs (i < j) with level(w_i) = 0 < level(w_j).
std::int64_t displaced_central(const Word& w, const std::vector<std::int64_t>& lvl) {
    std::int64_t n = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            if (lvl[letter_generator(w[i])] == 0 && lvl[letter_generator(w[j])] > 0) ++n;
        }
    return n;
}

}  // namespace

GroupPresentation::GroupPresentation(std::string name,
                                     std::vector<Generator> generators,
                                     std::vector<Word> relators,
                                     std::vector<RewriteRule> rules,
                                     RuleOrder order,
                                     std::vector<std::int64_t> order_params)
    : name_(std::move(name)),
      generators_(std::move(generators)),
      relators_(std::move(relators)),
      rules_(std::move(rules)),
      order_(order),
      order_params_(std::move(order_params)) {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        symbol_table_[generators_[i].name] = static_cast<Letter>(2 * i);
        symbol_table_[generators_[i].inverse_name] = static_cast<Letter>(2 * i + 1);
    }
    if (order_params_.empty()) order_params_.assign(generators_.size(), 1);
    validate();
}

void GroupPresentation::validate() const {
    std::set<std::string> seen;
    for (const auto& g : generators_) {
        if (g.name == g.inverse_name)
            throw ValidationError("generator '" + g.name + "' equals its inverse symbol");
        if (!seen.insert(g.name).second || !seen.insert(g.inverse_name).second)
            throw ValidationError("duplicate generator symbol in presentation '" + name_ + "'");
    }
    if (order_params_.size() != generators_.size())
        throw ValidationError("order parameter count does not match generator count");
    if (order_ == RuleOrder::Weighted)
        for (auto w : order_params_)
            if (w < 1) throw ValidationError("weights must be positive");
    if (order_ == RuleOrder::Collection)
        for (auto w : order_params_)
            if (w < 0) throw ValidationError("levels must be non-negative");
    for (const auto& r : rules_) {
        std::string why;
        if (!rule_admissible(r, &why))
            throw ValidationError("rule not admissible in presentation '" + name_ + "': " + why);
        for (Letter l : r.lhs)
            if (l < 0 || static_cast<std::size_t>(l) >= alphabet_size())
                throw ValidationError("rule letter out of range");
        for (Letter l : r.rhs)
            if (l < 0 || static_cast<std::size_t>(l) >= alphabet_size())
                throw ValidationError("rule letter out of range");
        if (r.lhs.empty()) throw ValidationError("empty rule left-hand side");
    }
    for (const auto& rel : relators_) {
        if (rel.empty()) throw ValidationError("empty relator");
        if (!cyclically_reduced(rel)) {
            // a relator fixed by reduction is also accepted
            GroupElement e = reduce(rel);
            if (e.normal_form != rel)
                throw ValidationError("relator neither cyclically reduced nor reduction-stable");
        }
    }
}

bool GroupPresentation::rule_admissible(const RewriteRule& r, std::string* why) const {
    switch (order_) {
        case RuleOrder::Shortlex:
            if (!shortlex_less(r.rhs, r.lhs)) {
                *why = "right side not shortlex-smaller";
                return false;
            }
            return true;
        case RuleOrder::Weighted: {
            std::int64_t wl = 0, wr = 0;
            for (Letter l : r.lhs) wl += order_params_[letter_generator(l)];
            for (Letter l : r.rhs) wr += order_params_[letter_generator(l)];
            if (wr < wl) return true;
            if (wr == wl && shortlex_less(r.rhs, r.lhs)) return true;
            *why = "right side not smaller in weighted order";
            return false;
        }
        case RuleOrder::Collection: {
            const auto& lvl = order_params_;
            auto i1 = inversions_positive(r.lhs, lvl), i2 = inversions_positive(r.rhs, lvl);
            auto d1 = displaced_central(r.lhs, lvl), d2 = displaced_central(r.rhs, lvl);
            auto pos_l = letter_multiset(r.lhs, lvl, true);
            auto pos_r = letter_multiset(r.rhs, lvl, true);
            auto all_l = letter_multiset(r.lhs, lvl, false);
            auto all_r = letter_multiset(r.rhs, lvl, false);
            // Strict decrease of (inversions, displacements, shortlex), with
            // multiset side conditions so the decrease survives embedding the
            // rule into an arbitrary context.
            if (i2 < i1 && submultiset(pos_r, pos_l)) return true;
            if (i2 == i1 && pos_r == pos_l && d2 < d1 && submultiset(all_r, all_l)) return true;
            if (i2 == i1 && d2 == d1 && all_r == all_l && shortlex_less(r.rhs, r.lhs)) return true;
            if (i2 == i1 && d2 == d1 && submultiset(all_r, all_l) && all_r != all_l &&
                shortlex_less(r.rhs, r.lhs))
                return true;
            *why = "right side not smaller in collection order";
            return false;
        }
    }
    return false;
}

Word GroupPresentation::parse_word(const std::string& text) const {
    Word out;
    std::istringstream in(text);
    std::string tok;
    std::vector<std::string> tokens;
    while (in >> tok) tokens.push_back(tok);
    if (tokens.size() == 1 && symbol_table_.find(tokens[0]) == symbol_table_.end()) {
        // compact form: string of single-character symbols
        tokens.clear();
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) tokens.push_back(std::string(1, c));
    }
    for (const auto& t : tokens) {
        auto it = symbol_table_.find(t);
        if (it == symbol_table_.end())
            throw MalformedWordError("symbol '" + t + "' not in generator set of '" + name_ + "'");
        out.push_back(it->second);
    }
    return out;
}

std::string GroupPresentation::word_to_string(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        const auto& g = generators_[letter_generator(w[i])];
        out += letter_is_inverse(w[i]) ? g.inverse_name : g.name;
    }
    return out;
}

std::optional<std::pair<std::size_t, std::size_t>> GroupPresentation::find_redex(
    const Word& w) const {
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
        for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
            const Word& lhs = rules_[ri].lhs;
            if (pos + lhs.size() > w.size()) continue;
            if (std::equal(lhs.begin(), lhs.end(), w.begin() + pos)) return {{pos, ri}};
        }
    }
    return std::nullopt;
}

GroupElement GroupPresentation::reduce(const Word& w) const {
    for (Letter l : w)
        if (l < 0 || static_cast<std::size_t>(l) >= alphabet_size())
            throw MalformedWordError("letter out of range for presentation '" + name_ + "'");
    Word cur = w;
    std::size_t steps = 0;
    while (auto redex = find_redex(cur)) {
        if (++steps > step_budget_)
            throw NonTerminationError("reduction step budget exhausted in '" + name_ + "'");
        auto [pos, ri] = *redex;
        const auto& rule = rules_[ri];
        Word next;
        next.reserve(cur.size() - rule.lhs.size() + rule.rhs.size());
        next.insert(next.end(), cur.begin(), cur.begin() + pos);
        next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
        next.insert(next.end(), cur.begin() + pos + rule.lhs.size(), cur.end());
        cur = std::move(next);
    }
    return GroupElement{std::move(cur)};
}

GroupElement GroupPresentation::multiply(const GroupElement& g, const GroupElement& h) const {
    return reduce(concat(g.normal_form, h.normal_form));
}

GroupElement GroupPresentation::inverse(const GroupElement& g) const {
    return reduce(inverse_word(g.normal_form));
}

std::vector<GroupElement> GroupPresentation::ball(int r, std::size_t cap) const {
    if (r < 0) throw ValidationError("ball radius must be non-negative");
    std::set<Word> seen;
    std::vector<Word> frontier;
    seen.insert(Word{});
    frontier.push_back(Word{});
    for (int depth = 1; depth <= r; ++depth) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (Letter l = 0; static_cast<std::size_t>(l) < alphabet_size(); ++l) {
                Word cand = w;
                cand.push_back(l);
                Word nf = reduce(cand).normal_form;
                if (seen.insert(nf).second) {
                    if (seen.size() > cap)
                        throw ResourceLimitError("ball size cap exceeded for '" + name_ + "'");
                    next.push_back(std::move(nf));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<GroupElement> out;
    out.reserve(seen.size());
    for (const auto& w : seen) out.push_back(GroupElement{w});
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// All normal forms reachable from `w`, exploring every one-step reduction.
const std::vector<Word>& all_normal_forms(const GroupPresentation& p, const Word& w,
                                          std::map<Word, std::vector<Word>>& memo,
                                          std::size_t cap) {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    if (memo.size() > cap) throw ResourceLimitError("confluence check memo cap exceeded");
    // reserve the slot to cut self-recursion on (impossible) cycles
    memo[w] = {};
    std::set<Word> nfs;
    bool any = false;
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
        for (const auto& rule : p.rules()) {
            if (pos + rule.lhs.size() > w.size()) continue;
            if (!std::equal(rule.lhs.begin(), rule.lhs.end(), w.begin() + pos)) continue;
            any = true;
            Word next;
            next.insert(next.end(), w.begin(), w.begin() + pos);
            next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
            next.insert(next.end(), w.begin() + pos + rule.lhs.size(), w.end());
            for (const auto& nf : all_normal_forms(p, next, memo, cap)) nfs.insert(nf);
        }
    }
    if (!any) nfs.insert(w);
    auto& slot = memo[w];
    slot.assign(nfs.begin(), nfs.end());
    return slot;
}

}  // namespace

ConfluenceReport GroupPresentation::verify_confluence(int L, std::size_t word_cap) const {
    ConfluenceReport report;
    report.length_bound = L;
    std::map<Word, std::vector<Word>> memo;
    // enumerate words by length, then lexicographically
    Word w;
    std::function<void(int)> walk = [&](int remaining) {
        const auto& nfs = all_normal_forms(*this, w, memo, word_cap);
        ++report.words_checked;
        if (nfs.size() > 1 && report.violations.size() < 10)
            report.violations.push_back({w, nfs});
        if (remaining == 0) return;
        for (Letter l = 0; static_cast<std::size_t>(l) < alphabet_size(); ++l) {
            w.push_back(l);
            walk(remaining - 1);
            w.pop_back();
        }
    };
    walk(L);
    return report;
}

}  // namespace fillnorm
