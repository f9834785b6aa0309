#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lambek/proofnet.hpp"

namespace lambek {

// An s proof frame: a proof structure whose axiom labels are erased to O/I
// tip polarities, except the designated s-axiom whose output tip is labelled
// s and input tip s~. The s output is the unique output conclusion. Frames
// are validated when built, so consumers may assume the full criterion.
struct Frame {
  ProofStructure ps;
  int s_axiom = 0;

  std::string str() const { return ps.str(); }
  std::size_t word_count() const { return ps.conclusions.size() - 1; }
};

// Erase a labelled net whose output conclusion is the constant s.
Result<Frame, NetError> erase(const ProofNet& p);

// Label each non-s axiom with a fresh distinct variable (output side x_k,
// input side x_k~) and recompute internal labels. Every net generating the
// frame is a substitution instance of the result.
Result<ProofNet, NetError> most_general_labelling(const Frame& f, FreshCounter& fresh);

// Equality up to axiom renumbering.
bool frame_iso(const Frame& f1, const Frame& f2);
std::string frame_canonical_key(const Frame& f);

// Validate an arbitrary structure as a frame: full criterion, the only
// labels are the two s-axiom tips, and the s output is the output conclusion.
Result<Frame, NetError> make_frame(const ProofStructure& ps);

// One positive example: a sentence plus its frame. The i-th conclusion of
// the frame belongs to the (n+1-i)-th word; the s output comes last.
struct Example {
  std::vector<std::string> sentence;
  Frame frame;
};

// Example file: blocks `words: w1 w2 ...` / `frame: t1, t2, ..., s#k`
// separated by blank lines, `#` comments.
std::vector<Example> parse_examples(std::istream& in);
std::vector<Example> parse_examples_text(const std::string& text);
std::vector<Example> load_examples_file(const std::string& path);
std::string examples_str(const std::vector<Example>& examples);

}  // namespace lambek
