#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lambek/category.hpp"
#include "lambek/subst.hpp"

namespace lambek {

// Lexicon: word -> finite set of categories, kept sorted and deduplicated.
// An empty entry marks a word whose categories failed to unify during
// learning; the text format never produces one.
class Grammar {
public:
  using Lexicon = std::map<std::string, std::vector<Category>>;

  Grammar() = default;

  void add(const std::string& word, const Category& c);
  void set_empty(const std::string& word) { lex_[word].clear(); }
  bool has_word(const std::string& word) const { return lex_.count(word) != 0; }
  const std::vector<Category>& categories(const std::string& word) const;
  const Lexicon& lexicon() const { return lex_; }
  bool empty() const { return lex_.empty(); }

  bool is_rigid() const;  // 1-valued
  bool is_k_valued(std::size_t k) const;
  // Sum of category sizes over all category occurrences.
  std::size_t size() const;

  std::string str() const;

  friend bool operator==(const Grammar& a, const Grammar& b) { return a.lex_ == b.lex_; }
  friend bool operator!=(const Grammar& a, const Grammar& b) { return !(a == b); }

private:
  Lexicon lex_;
};

Grammar apply(const Subst& sigma, const Grammar& g);

// Canonical representative of the renaming class: variables renumbered
// x1, x2, ... by first occurrence, words in lexicographic order, each word's
// categories in a name-independent structural order. Two grammars are equal
// up to renaming iff their canonical forms are identical. With `all_atoms`
// every non-s atom (constants included) is treated as renamable; that form is
// only used for comparisons where base-category identities are arbitrary.
Grammar canonical_form(const Grammar& g, bool all_atoms);
inline Grammar canonicalize(const Grammar& g) { return canonical_form(g, false); }

bool equal_up_to_renaming(const Grammar& a, const Grammar& b);
bool equal_up_to_atom_renaming(const Grammar& a, const Grammar& b);

// Text format: one `word : category` line per assignment, repeated words
// accumulate a set, `#` starts a comment, blank lines ignored.
Grammar parse_grammar(std::istream& in);
Grammar parse_grammar_text(const std::string& text);
Grammar load_grammar_file(const std::string& path);

}  // namespace lambek
