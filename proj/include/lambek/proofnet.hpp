#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lambek/linear.hpp"
#include "lambek/result.hpp"
#include "lambek/subst.hpp"

namespace lambek {

// A proof structure: the subformula trees of its conclusions, cut at axiom
// tips, plus the perfect matching of tips induced by axiom ids. Conclusions
// are cyclically ordered; the stored order anchors the unique output last
// (nets) or is as written (arbitrary structures). Tips may stop on complex
// formulas. Labels are optional: a fully labelled structure is a candidate
// net, an unlabelled one (except the s-axiom) is frame material.
struct PSNode {
  bool is_tip = true;
  // tips
  int axiom_id = 0;
  Polarity side = Polarity::Output;
  // internal nodes
  LConn conn = LConn::Tensor;
  int left = -1, right = -1;
  int parent = -1;
  std::optional<Linear> label;
};

enum class NetErrorKind {
  NotIntuitionistic,
  AxiomsCross,
  Cyclic,
  EmptyAntecedent,
  IllPolarized,
  BothInputs,
  NotAdjacent,
  WouldEmptyAntecedent,
  AtomicAxiom,
  Unlabelled,
  OutputNotS,
  UnknownAxiom,
};

struct NetError {
  NetErrorKind kind;
  std::string detail;
  std::string what() const;
};

std::string net_error_kind_str(NetErrorKind k);

class ProofStructure {
public:
  std::vector<PSNode> nodes;
  std::vector<int> conclusions;  // root node indices in display order

  int add_tip(int axiom_id, Polarity side, std::optional<Linear> label = std::nullopt);
  int add_node(LConn conn, int left, int right);

  bool labelled() const;  // every tip carries a formula
  // Side-algebra polarity of a subtree; nullopt when malformed.
  std::optional<Polarity> node_polarity(int node) const;
  // Derived label of an internal node (connective of children labels).
  std::optional<Linear> node_label(int node) const;

  std::vector<int> tips_in_order() const;              // display order
  std::vector<int> tips_of_subtree(int node) const;    // left-to-right
  std::pair<int, int> axiom_tips(int axiom_id) const;  // (output tip, input tip)
  std::vector<int> axiom_ids() const;                  // sorted, unique
  int max_axiom_id() const;

  // Renumber axiom ids 1..n by first tip occurrence in display order.
  ProofStructure canonical_renumbered() const;

  std::string str() const;  // indexed-term notation

  friend bool operator==(const ProofStructure& a, const ProofStructure& b) {
    return a.str() == b.str();
  }
};

// Sequentialization witness: the inductive build recovered by validation.
struct Witness {
  enum class Kind { Axiom, Tensor, Par } kind;
  int axiom_id = 0;  // Axiom
  std::shared_ptr<const Witness> first, second;
};

// A validated structure. `output()` is the display index of the unique
// output conclusion (always last in structures built by the constructors).
class ProofNet {
public:
  ProofStructure ps;
  std::shared_ptr<const Witness> witness;

  int output() const;
  std::size_t conclusion_count() const { return ps.conclusions.size(); }
};

// Decides the correctness criterion. Cheap necessary checks run first
// (exactly one output conclusion; tips well-nested in cyclic order), then the
// full criterion by exhaustive sequentialization search with memoization on
// the axiom-id set of each sub-structure. A failure that disappears when
// single-conclusion sub-nets are permitted is an EmptyAntecedent; any other
// search failure is a switch cycle.
Result<ProofNet, NetError> validate(const ProofStructure& ps);

// Axiom net [f~#k, f#k] for an output formula f; complex formulas allowed.
Result<ProofNet, NetError> build_axiom(const Linear& f, int axiom_id = 1);

struct JoinResult {
  ProofNet net;
  int joined;  // display index of the new conclusion
};

// Tensor link between conclusion c1 of p1 (left child) and c2 of p2 (right
// child); at least one of the two must be its net's output conclusion.
// Conclusion order follows the inductive definition.
Result<JoinResult, NetError> join_tensor(const ProofNet& p1, int c1, const ProofNet& p2, int c2);

// Par link between two cyclically adjacent conclusions (`right` must be the
// cyclic successor of `left`); requires at least three conclusions.
Result<JoinResult, NetError> attach_par(const ProofNet& p, int left, int right);

// One-step expansion of a complex axiom into two axioms under dual links.
Result<ProofNet, NetError> eta_expand(const ProofNet& p, int axiom_id);
// Expand until every axiom is atomic.
Result<ProofNet, NetError> eta_expand_all(const ProofNet& p);

// Conclusion formulas in display order (output last). Requires labels.
Result<std::vector<Linear>, NetError> conclusions_of(const ProofNet& p);

// Substitution on every label; tips keep their tip status, so an axiom on a
// variable becomes a complex axiom.
ProofNet apply(const Subst& sigma, const ProofNet& p);

// Indexed-term notation: comma-separated conclusions, tips `formula#id`,
// `(formula)#id`, or `O#id` / `I#id` when unlabelled.
ProofStructure parse_structure(const std::string& text);

}  // namespace lambek
