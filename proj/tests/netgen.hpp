#pragma once

// Test-only helpers: random proof nets built through the inductive
// constructors, structure corruption, and an independent brute-force
// deconstruction oracle. The oracle tries every decomposition at every step
// and never uses the library's eager peeling, connectivity splits, or
// memoization, so it can arbitrate the validator's verdicts.

#include <optional>
#include <random>
#include <vector>

#include "lambek/proofnet.hpp"

namespace lambek::testutil {

inline std::vector<Linear> axiom_formula_pool() {
  Linear s = Linear::positive(Atom::s());
  Linear a = Linear::positive(Atom::constant("a"));
  Linear b = Linear::positive(Atom::constant("b"));
  Linear na = Linear::negative(Atom::constant("a"));
  return {
      s, a, b,
      Linear::tensor(a, b),           // complex output
      Linear::par(na, s),             // a~ | s
      Linear::tensor(a, Linear::tensor(b, s)),
  };
}

inline ProofNet random_net(std::mt19937& rng, int target_axioms) {
  auto pool = axiom_formula_pool();
  auto pick_formula = [&]() { return pool[rng() % pool.size()]; };
  ProofNet net = build_axiom(pick_formula(), 1).value();
  int next_id = 2;
  while (net.ps.axiom_ids().size() < static_cast<std::size_t>(target_axioms)) {
    bool did = false;
    if (net.ps.conclusions.size() >= 3 && rng() % 3 == 0) {
      int n = static_cast<int>(net.ps.conclusions.size());
      int left = static_cast<int>(rng() % static_cast<unsigned>(n));
      auto r = attach_par(net, left, (left + 1) % n);
      if (r.ok()) {
        net = r.value().net;
        did = true;
      }
    }
    if (!did) {
      ProofNet fresh = build_axiom(pick_formula(), next_id++).value();
      int n = static_cast<int>(net.ps.conclusions.size());
      int c1 = static_cast<int>(rng() % static_cast<unsigned>(n));
      int c2 = static_cast<int>(rng() % 2u);
      Result<JoinResult, NetError> r = rng() % 2 ? join_tensor(net, c1, fresh, c2)
                                                 : join_tensor(fresh, c2, net, c1);
      if (r.ok()) net = r.value().net;
    }
  }
  return net;
}

inline ProofStructure strip_labels(const ProofStructure& ps) {
  ProofStructure out = ps;
  for (auto& n : out.nodes) n.label.reset();
  return out;
}

// Swap the axiom ids of two random same-side tips (keeps the matching
// invariant, usually breaks the net).
inline ProofStructure corrupt_tip_swap(const ProofStructure& ps, std::mt19937& rng) {
  ProofStructure out = ps;
  std::vector<int> outs, ins;
  for (std::size_t i = 0; i < out.nodes.size(); i++) {
    if (!out.nodes[i].is_tip) continue;
    (out.nodes[i].side == Polarity::Output ? outs : ins).push_back(static_cast<int>(i));
  }
  auto& side = rng() % 2 ? outs : ins;
  if (side.size() < 2) return out;
  int i = side[rng() % side.size()];
  int j = side[rng() % side.size()];
  std::swap(out.nodes[i].axiom_id, out.nodes[j].axiom_id);
  return out;
}

// Brute-force reverse application of the inductive constructors.
inline bool brute_decompose(const ProofStructure& ps, const std::vector<int>& roots, bool strict) {
  if (roots.size() == 2 && ps.nodes[roots[0]].is_tip && ps.nodes[roots[1]].is_tip &&
      ps.nodes[roots[0]].axiom_id == ps.nodes[roots[1]].axiom_id)
    return true;

  for (std::size_t i = 0; i < roots.size(); i++) {
    const PSNode& n = ps.nodes[roots[i]];
    if (n.is_tip || n.conn != LConn::Par) continue;
    if (strict && roots.size() < 2) continue;
    std::vector<int> peeled(roots);
    peeled[i] = n.left;
    peeled.insert(peeled.begin() + static_cast<std::ptrdiff_t>(i) + 1, n.right);
    if (brute_decompose(ps, peeled, strict)) return true;
  }

  for (std::size_t i = 0; i < roots.size(); i++) {
    const PSNode& n = ps.nodes[roots[i]];
    if (n.is_tip || n.conn != LConn::Tensor) continue;
    auto pl = ps.node_polarity(n.left);
    auto pr = ps.node_polarity(n.right);
    if (pl != Polarity::Output && pr != Polarity::Output) continue;
    std::vector<int> others;
    for (std::size_t k = 1; k < roots.size(); k++) others.push_back(roots[(i + k) % roots.size()]);
    for (std::size_t j = 0; j <= others.size(); j++) {
      std::vector<int> side_y = {n.right};
      side_y.insert(side_y.end(), others.begin(), others.begin() + static_cast<std::ptrdiff_t>(j));
      std::vector<int> side_x = {n.left};
      side_x.insert(side_x.end(), others.begin() + static_cast<std::ptrdiff_t>(j), others.end());
      if (brute_decompose(ps, side_y, strict) && brute_decompose(ps, side_x, strict)) return true;
    }
  }
  return false;
}

inline bool brute_valid(const ProofStructure& ps) {
  return brute_decompose(ps, ps.conclusions, true);
}

}  // namespace lambek::testutil
