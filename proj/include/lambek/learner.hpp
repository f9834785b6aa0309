#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lambek/frame.hpp"
#include "lambek/grammar.hpp"
#include "lambek/parser.hpp"
#include "lambek/unify.hpp"

namespace lambek {

std::string example_key(const Example& e);
std::vector<Example> dedup_examples(const std::vector<Example>& examples);

// The general form grammar: most general labellings with globally disjoint
// fresh variables, one lexical assignment per word occurrence.
Grammar gf(const std::vector<Example>& examples, FreshCounter& fresh);

struct RgResult {
  Grammar grammar;  // rigid; ununifiable words keep an empty entry
  std::vector<std::string> dropped;
};

// The rigid grammar: grammar-wide most general unifier of gf, canonicalized.
// Words whose categories do not unify end up with an empty entry.
RgResult rg(const std::vector<Example>& examples);

// Incremental learning state: keeps the current rigid grammar (raw variable
// names, so fresh variables stay disjoint) and re-unifies with each new
// example's general form. Set-driven by construction: repeated examples are
// recognized by frame isomorphism and ignored.
class Phi {
public:
  // Returns true when the hypothesis changed.
  bool observe(const Example& e);
  const Grammar& raw_grammar() const { return current_; }
  Grammar grammar() const { return canonicalize(current_); }
  const std::set<std::string>& dropped() const { return dropped_; }
  bool generates(const Example& e) const;
  std::size_t distinct_examples() const { return seen_.size(); }

private:
  void reunify(Grammar merged);

  Grammar current_;
  std::set<std::string> seen_;
  std::set<std::string> dropped_;
  FreshCounter fresh_;
};

// H is subsumed by G: some substitution maps every lexical assignment of H
// onto one of G, without identifying two categories of one word.
std::optional<Subst> subsumes(const Grammar& h, const Grammar& g);

struct PropertyReport {
  bool conservative = true;
  bool consistent = true;
  bool set_driven = true;
  bool incremental = true;
  bool chain_monotone = true;
  std::vector<std::string> notes;
  bool all() const { return conservative && consistent && set_driven && incremental && chain_monotone; }
};

// Replays a trace of examples through the learner and checks the learner
// properties on it (set-drivenness by full permutation replay when the trace
// has at most four distinct examples, sampled otherwise).
PropertyReport check_learner_properties(const std::vector<Example>& trace);

struct ConvergenceReport {
  std::size_t example_count = 0;
  std::size_t stabilization_index = 0;  // 1-based index of the last change
  bool stabilized = false;
  bool grammar_equal = false;   // final grammar vs target on the words seen
  bool language_match = false;  // frame sets agree up to the bound
  bool chain_ok = false;        // rg(D_1) <= rg(D_2) <= ... <= target
  Grammar final_grammar;
  std::vector<std::string> notes;
};

struct ConvergeError {
  enum class Kind { EmptyLanguageBelowBound, Search } kind;
  std::string detail;
  std::string what() const;
};

// Gold-style simulation: enumerate the target's frame language up to
// max_len (canonical order, or a seeded shuffle), feed it to the learner,
// and report stabilization, grammar equality up to base-category renaming on
// the seen words, frame-language agreement below the bound, and the
// subsumption chain along every prefix.
Result<ConvergenceReport, ConvergeError> converge(const Grammar& target, std::size_t max_len,
                                                  std::optional<unsigned> shuffle_seed = std::nullopt,
                                                  const EnumerationLimits& limits = {});

}  // namespace lambek
