#pragma once

#include <string>
#include <vector>

#include "lambek/grammar.hpp"
#include "lambek/result.hpp"
#include "lambek/subst.hpp"

namespace lambek {

struct UnifyError {
  enum class Kind { Clash, OccursCheck } kind;
  Category lhs, rhs;  // the offending equation
  std::string what() const;
};

// Multiset of potential equations rewritten to solved form. The rewrite
// strategy is fixed: first applicable rule in listed order against the first
// equation in insertion order, so results are deterministic; they differ from
// other strategies only by a renaming. When `check_measure` is set, each step
// asserts that (unsolved variables, node count, non-variable left-hand sides)
// decreases lexicographically.
class EquationSet {
public:
  void add(Category lhs, Category rhs) { eqs_.push_back({std::move(lhs), std::move(rhs)}); }
  Result<Subst, UnifyError> solve(bool check_measure = false);

private:
  struct Eq {
    Category lhs, rhs;
  };
  std::vector<Eq> eqs_;
};

// Most general unifier of two categories.
Result<Subst, UnifyError> unify(const Category& a, const Category& b);

// mgu of a non-empty set: the result maps the whole set to a singleton and is
// canonical up to renaming regardless of iteration order.
Result<Subst, UnifyError> unify_set(const std::vector<Category>& cats);

struct UnunifiableWord {
  std::string word;
  UnifyError cause;
  std::string what() const;
};

struct RigidResult {
  Grammar grammar;  // rigid
  Subst unifier;
};

// Simultaneous mgu across all words: one global substitution, since variables
// may be shared between words of one example. The caller decides whether an
// ununifiable word is dropped or fatal.
Result<RigidResult, UnunifiableWord> unify_grammar(const Grammar& g);

}  // namespace lambek
