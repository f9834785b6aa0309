#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lambek/category.hpp"
#include "lambek/proofnet.hpp"
#include "lambek/result.hpp"

namespace lambek {

// Product-free natural deductions as plain trees. Discharge marks are not
// part of the surface syntax: an introduction cancels the leftmost (under \)
// or rightmost (under /) free hypothesis of its subtree, so marks are
// recomputed by inference and only checked for consistency.
enum class NdKind { Hyp, IntroLeft, IntroRight, ElimLeft, ElimRight };

class NatDed {
public:
  static NatDed hyp(Category c);
  static NatDed intro_left(NatDed d);                 // \i
  static NatDed intro_right(NatDed d);                // /i
  static NatDed elim_left(NatDed minor, NatDed principal);   // \e
  static NatDed elim_right(NatDed principal, NatDed minor);  // /e

  NdKind kind() const { return node_->kind; }
  const Category& hyp_category() const { return node_->cat; }
  NatDed child() const;  // intro
  NatDed first() const;  // elim: left subtree as written
  NatDed second() const;

  std::string str() const;  // s-expression form

  friend bool operator==(const NatDed& a, const NatDed& b) { return a.str() == b.str(); }
  friend bool operator!=(const NatDed& a, const NatDed& b) { return !(a == b); }

private:
  struct Node {
    NdKind kind;
    Category cat;  // Hyp only
    std::shared_ptr<const Node> a, b;
  };
  std::shared_ptr<const Node> node_;
};

struct NdError {
  enum class Kind { IllFormed, NotNormal, NotProductFree } kind;
  std::string detail;
  std::string what() const;
};

struct NdInfo {
  Category conclusion;
  std::vector<Category> hypotheses;  // free hypotheses, left to right
};

// Type-checks the tree: every category product-free, eliminations match
// their principal premise, every introduction has at least two free
// hypotheses below it. Returns the conclusion and free hypothesis sequence.
Result<NdInfo, NdError> infer(const NatDed& d);

// No elimination whose principal premise is an introduction.
bool is_normal(const NatDed& d);

// A normal deduction of C from H1..Hn becomes a cut-free net with
// conclusions -Hn, ..., -H1, +C, built by the inductive constructors.
Result<ProofNet, NdError> nd_to_pn(const NatDed& d);

// Inverse translation: climb the output through par links (introductions),
// cross an axiom, descend through tensor links collecting arguments (the
// principal branch), and recurse on the argument outputs.
Result<NatDed, NdError> pn_to_nd(const ProofNet& p);

// S-expression format: (hyp C), (introL D), (introR D), (elimL D1 D2),
// (elimR D1 D2).
NatDed parse_natded(const std::string& text);

}  // namespace lambek
