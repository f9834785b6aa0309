#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lambek/frame.hpp"
#include "lambek/grammar.hpp"
#include "lambek/result.hpp"

namespace lambek {

struct ParserError {
  enum class Kind { UnknownWord, ArityMismatch, NoMatch, CapExceeded, TooManyItems } kind;
  std::string detail;
  std::string what() const;
};

// Does the grammar generate this frame for this sentence? On success returns
// the witness substitution sigma with apply(sigma, most_general_labelling(f))
// a net whose word conclusions are the chosen lexicon categories. Lexicon
// categories are matched as ground terms; their variables are frozen.
Result<Subst, ParserError> match_frame(const Grammar& g, const std::vector<std::string>& sentence,
                                       const Frame& f);

struct SearchLimits {
  std::size_t max_candidates = 1000000;  // complete matchings per sentence
};

// Exhaustive frame search: every planar matching of dual subformula
// occurrences (complex axioms included) over every lexicon choice vector,
// filtered by the correctness criterion, erased and deduplicated. Frames are
// returned in canonical-serialization order.
Result<std::vector<Frame>, ParserError> parse_sentence(const Grammar& g,
                                                       const std::vector<std::string>& sentence,
                                                       const SearchLimits& limits = {});

struct EnumerationLimits {
  std::size_t max_candidates = 1000000;
  std::size_t max_items = 500000;  // reachable conclusion-list states
};

// Deterministic enumeration of the frame language up to a sentence length:
// sentences ordered by (length, lexicographic), frames per sentence via
// parse_sentence. Derivable conclusion lists are found by a closure under
// the net constructors over the lexicon's subformula universe, so only
// parseable sentences are ever expanded.
Result<std::vector<Example>, ParserError> enumerate_spf(const Grammar& g, std::size_t max_len,
                                                        const EnumerationLimits& limits = {});

}  // namespace lambek
