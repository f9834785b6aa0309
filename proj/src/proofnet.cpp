#include "lambek/proofnet.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace lambek {

std::string net_error_kind_str(NetErrorKind k) {
  switch (k) {
    case NetErrorKind::NotIntuitionistic: return "NotIntuitionistic";
    case NetErrorKind::AxiomsCross: return "AxiomsCross";
    case NetErrorKind::Cyclic: return "Cyclic";
    case NetErrorKind::EmptyAntecedent: return "EmptyAntecedent";
    case NetErrorKind::IllPolarized: return "IllPolarized";
    case NetErrorKind::BothInputs: return "BothInputs";
    case NetErrorKind::NotAdjacent: return "NotAdjacent";
    case NetErrorKind::WouldEmptyAntecedent: return "WouldEmptyAntecedent";
    case NetErrorKind::AtomicAxiom: return "AtomicAxiom";
    case NetErrorKind::Unlabelled: return "Unlabelled";
    case NetErrorKind::OutputNotS: return "OutputNotS";
    case NetErrorKind::UnknownAxiom: return "UnknownAxiom";
  }
  return "?";
}

std::string NetError::what() const {
  return detail.empty() ? net_error_kind_str(kind) : net_error_kind_str(kind) + ": " + detail;
}

int ProofStructure::add_tip(int axiom_id, Polarity side, std::optional<Linear> label) {
  PSNode n;
  n.is_tip = true;
  n.axiom_id = axiom_id;
  n.side = side;
  n.label = std::move(label);
  nodes.push_back(std::move(n));
  return static_cast<int>(nodes.size()) - 1;
}

int ProofStructure::add_node(LConn conn, int left, int right) {
  PSNode n;
  n.is_tip = false;
  n.conn = conn;
  n.left = left;
  n.right = right;
  nodes.push_back(std::move(n));
  int idx = static_cast<int>(nodes.size()) - 1;
  nodes[left].parent = idx;
  nodes[right].parent = idx;
  return idx;
}

bool ProofStructure::labelled() const {
  for (const auto& n : nodes)
    if (n.is_tip && !n.label) return false;
  return true;
}

std::optional<Polarity> ProofStructure::node_polarity(int node) const {
  const PSNode& n = nodes[node];
  if (n.is_tip) return n.side;
  auto l = node_polarity(n.left);
  auto r = node_polarity(n.right);
  if (!l || !r) return std::nullopt;
  if (n.conn == LConn::Tensor) {
    if (*l == Polarity::Output && *r == Polarity::Output) return Polarity::Output;
    if (*l != *r) return Polarity::Input;
    return std::nullopt;
  }
  if (*l == Polarity::Input && *r == Polarity::Input) return Polarity::Input;
  if (*l != *r) return Polarity::Output;
  return std::nullopt;
}

std::optional<Linear> ProofStructure::node_label(int node) const {
  const PSNode& n = nodes[node];
  if (n.is_tip) return n.label;
  auto l = node_label(n.left);
  auto r = node_label(n.right);
  if (!l || !r) return std::nullopt;
  return Linear::make(n.conn, *l, *r);
}

std::vector<int> ProofStructure::tips_of_subtree(int node) const {
  std::vector<int> out;
  auto rec = [this, &out](int i, auto&& self) -> void {
    const PSNode& n = nodes[i];
    if (n.is_tip) {
      out.push_back(i);
      return;
    }
    self(n.left, self);
    self(n.right, self);
  };
  rec(node, rec);
  return out;
}

std::vector<int> ProofStructure::tips_in_order() const {
  std::vector<int> out;
  for (int c : conclusions) {
    auto t = tips_of_subtree(c);
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

std::pair<int, int> ProofStructure::axiom_tips(int axiom_id) const {
  int out = -1, in = -1;
  for (std::size_t i = 0; i < nodes.size(); i++) {
    if (!nodes[i].is_tip || nodes[i].axiom_id != axiom_id) continue;
    if (nodes[i].side == Polarity::Output)
      out = static_cast<int>(i);
    else
      in = static_cast<int>(i);
  }
  return {out, in};
}

std::vector<int> ProofStructure::axiom_ids() const {
  std::set<int> ids;
  for (const auto& n : nodes)
    if (n.is_tip) ids.insert(n.axiom_id);
  return std::vector<int>(ids.begin(), ids.end());
}

int ProofStructure::max_axiom_id() const {
  int m = 0;
  for (const auto& n : nodes)
    if (n.is_tip) m = std::max(m, n.axiom_id);
  return m;
}

ProofStructure ProofStructure::canonical_renumbered() const {
  std::map<int, int> renumber;
  for (int t : tips_in_order())
    renumber.emplace(nodes[t].axiom_id, static_cast<int>(renumber.size()) + 1);
  ProofStructure out = *this;
  for (auto& n : out.nodes)
    if (n.is_tip) n.axiom_id = renumber.at(n.axiom_id);
  return out;
}

namespace {

std::string node_str(const ProofStructure& ps, int i) {
  const PSNode& n = ps.nodes[i];
  if (n.is_tip) {
    std::string id = "#" + std::to_string(n.axiom_id);
    if (!n.label) return (n.side == Polarity::Output ? "O" : "I") + id;
    if (n.label->is_literal()) return n.label->str() + id;
    return "(" + n.label->str() + ")" + id;
  }
  auto sub = [&ps](int j) {
    const PSNode& m = ps.nodes[j];
    if (m.is_tip) return node_str(ps, j);
    return "(" + node_str(ps, j) + ")";
  };
  return sub(n.left) + (n.conn == LConn::Tensor ? "*" : "|") + sub(n.right);
}

}  // namespace

std::string ProofStructure::str() const {
  std::string out;
  for (std::size_t i = 0; i < conclusions.size(); i++) {
    if (i) out += ", ";
    out += node_str(*this, conclusions[i]);
  }
  return out;
}

int ProofNet::output() const {
  for (std::size_t i = 0; i < ps.conclusions.size(); i++)
    if (ps.node_polarity(ps.conclusions[i]) == Polarity::Output) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

class Validator {
public:
  Validator(const ProofStructure& ps, bool relaxed) : ps_(ps), relaxed_(relaxed) {}

  std::shared_ptr<const Witness> solve(const std::vector<int>& roots) {
    // Every sub-net has exactly one output conclusion.
    int outputs = 0;
    for (int r : roots)
      if (ps_.node_polarity(r) == Polarity::Output) outputs++;
    if (outputs != 1) return nullptr;
    if (roots.size() == 1 && !relaxed_) return nullptr;

    std::vector<int> key = state_key(roots);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    auto remember = [this, &key](std::shared_ptr<const Witness> w) {
      memo_.emplace(std::move(key), w);
      return w;
    };

    // Axiom base case.
    if (roots.size() == 2 && ps_.nodes[roots[0]].is_tip && ps_.nodes[roots[1]].is_tip &&
        ps_.nodes[roots[0]].axiom_id == ps_.nodes[roots[1]].axiom_id) {
      auto w = std::make_shared<Witness>();
      w->kind = Witness::Kind::Axiom;
      w->axiom_id = ps_.nodes[roots[0]].axiom_id;
      return remember(w);
    }

    // Terminal par links are reversible: peel the first one eagerly.
    for (std::size_t i = 0; i < roots.size(); i++) {
      const PSNode& n = ps_.nodes[roots[i]];
      if (n.is_tip || n.conn != LConn::Par) continue;
      std::vector<int> next(roots);
      next[i] = n.left;
      next.insert(next.begin() + static_cast<std::ptrdiff_t>(i) + 1, n.right);
      auto sub = solve(next);
      if (!sub) return remember(nullptr);
      auto w = std::make_shared<Witness>();
      w->kind = Witness::Kind::Par;
      w->first = sub;
      return remember(w);
    }

    // Splitting tensor: the split is forced by axiom connectivity.
    for (std::size_t i = 0; i < roots.size(); i++) {
      const PSNode& n = ps_.nodes[roots[i]];
      if (n.is_tip || n.conn != LConn::Tensor) continue;
      auto pl = ps_.node_polarity(n.left);
      auto pr = ps_.node_polarity(n.right);
      if (pl != Polarity::Output && pr != Polarity::Output) continue;

      std::vector<int> slots(roots);
      slots[i] = n.left;
      slots.insert(slots.begin() + static_cast<std::ptrdiff_t>(i) + 1, n.right);
      std::size_t xpos = i, ypos = i + 1;

      std::vector<std::size_t> comp = components(slots);
      if (comp[xpos] == comp[ypos]) continue;

      // The Y side must form a contiguous cyclic arc right after the link.
      std::size_t m = slots.size();
      std::vector<int> side_y, side_x;
      std::size_t q = ypos;
      while (q != xpos && comp[q] == comp[ypos]) {
        side_y.push_back(slots[q]);
        q = (q + 1) % m;
      }
      bool contiguous = true;
      std::size_t r = q;
      while (r != ypos) {
        if (comp[r] != comp[xpos]) {
          contiguous = false;
          break;
        }
        side_x.push_back(slots[r]);
        r = (r + 1) % m;
      }
      if (!contiguous) continue;
      // side_x ends with the X child (xpos precedes ypos cyclically).
      auto wy = solve(side_y);
      if (!wy) continue;
      auto wx = solve(side_x);
      if (!wx) continue;
      auto w = std::make_shared<Witness>();
      w->kind = Witness::Kind::Tensor;
      w->first = wx;
      w->second = wy;
      return remember(w);
    }

    return remember(nullptr);
  }

private:
  // Sub-structures are tip-closed, so the axiom-id set identifies them.
  std::vector<int> state_key(const std::vector<int>& roots) const {
    std::set<int> ids;
    for (int r : roots)
      for (int t : ps_.tips_of_subtree(r)) ids.insert(ps_.nodes[t].axiom_id);
    return std::vector<int>(ids.begin(), ids.end());
  }

  // Connected components of the slot list under axiom edges.
  std::vector<std::size_t> components(const std::vector<int>& slots) const {
    std::vector<std::size_t> parent(slots.size());
    for (std::size_t i = 0; i < parent.size(); i++) parent[i] = i;
    auto find = [&parent](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    std::map<int, std::size_t> axiom_slot;
    for (std::size_t i = 0; i < slots.size(); i++) {
      for (int t : ps_.tips_of_subtree(slots[i])) {
        int id = ps_.nodes[t].axiom_id;
        auto [it, inserted] = axiom_slot.emplace(id, i);
        if (!inserted) {
          std::size_t a = find(it->second), b = find(i);
          if (a != b) parent[a] = b;
        }
      }
    }
    std::vector<std::size_t> comp(slots.size());
    for (std::size_t i = 0; i < comp.size(); i++) comp[i] = find(i);
    return comp;
  }

  const ProofStructure& ps_;
  bool relaxed_;
  std::map<std::vector<int>, std::shared_ptr<const Witness>> memo_;
};

}  // namespace

Result<ProofNet, NetError> validate(const ProofStructure& ps) {
  using R = Result<ProofNet, NetError>;
  if (ps.conclusions.empty())
    return R(NetError{NetErrorKind::IllPolarized, "structure has no conclusions"});

  // Structural matching invariant: each axiom id twice, one tip per side.
  std::map<int, std::pair<int, int>> sides;  // id -> (output count, input count)
  for (const auto& n : ps.nodes) {
    if (!n.is_tip) continue;
    auto& s = sides[n.axiom_id];
    (n.side == Polarity::Output ? s.first : s.second)++;
  }
  for (const auto& [id, s] : sides)
    if (s.first != 1 || s.second != 1)
      return R(NetError{NetErrorKind::IllPolarized,
                        "axiom " + std::to_string(id) + " does not link one output tip to one input tip"});

  // Label consistency where labels are present.
  for (const auto& n : ps.nodes) {
    if (!n.is_tip || !n.label) continue;
    auto pol = n.label->polarity();
    if (!pol)
      return R(NetError{NetErrorKind::IllPolarized, "tip label is not polarizable: " + n.label->str()});
    if (*pol != n.side)
      return R(NetError{NetErrorKind::IllPolarized, "tip side disagrees with label " + n.label->str()});
  }
  for (const auto& [id, s] : sides) {
    auto [out, in] = ps.axiom_tips(id);
    const auto& lo = ps.nodes[out].label;
    const auto& li = ps.nodes[in].label;
    if (lo && li && *li != dual(*lo))
      return R(NetError{NetErrorKind::IllPolarized,
                        "axiom " + std::to_string(id) + " links non-dual formulas"});
    if (lo.has_value() != li.has_value())
      return R(NetError{NetErrorKind::IllPolarized,
                        "axiom " + std::to_string(id) + " is only half labelled"});
  }

  // Planarity: no two axioms cross in the cyclic tip order.
  std::vector<int> tips = ps.tips_in_order();
  std::map<int, std::pair<int, int>> pos;
  for (std::size_t i = 0; i < tips.size(); i++) {
    int id = ps.nodes[tips[i]].axiom_id;
    auto [it, inserted] = pos.emplace(id, std::make_pair(static_cast<int>(i), -1));
    if (!inserted) it->second.second = static_cast<int>(i);
  }
  for (auto a = pos.begin(); a != pos.end(); ++a) {
    for (auto b = std::next(a); b != pos.end(); ++b) {
      auto [a1, a2] = a->second;
      auto [b1, b2] = b->second;
      bool in1 = a1 < b1 && b1 < a2;
      bool in2 = a1 < b2 && b2 < a2;
      if (in1 != in2)
        return R(NetError{NetErrorKind::AxiomsCross,
                          "axioms " + std::to_string(a->first) + " and " + std::to_string(b->first)});
    }
  }

  // Exactly one output conclusion.
  int outputs = 0;
  for (int c : ps.conclusions)
    if (ps.node_polarity(c) == Polarity::Output) outputs++;
  if (outputs != 1)
    return R(NetError{NetErrorKind::NotIntuitionistic,
                      std::to_string(outputs) + " output conclusions"});

  Validator strict(ps, false);
  if (auto w = strict.solve(ps.conclusions)) {
    ProofNet net;
    net.ps = ps;
    net.witness = w;
    return R(std::move(net));
  }
  Validator relaxed(ps, true);
  if (relaxed.solve(ps.conclusions))
    return R(NetError{NetErrorKind::EmptyAntecedent,
                      "some sub proof net would have a single conclusion"});
  return R(NetError{NetErrorKind::Cyclic, "no sequentialization exists"});
}

// ---------------------------------------------------------------------------
// Inductive constructors

Result<ProofNet, NetError> build_axiom(const Linear& f, int axiom_id) {
  using R = Result<ProofNet, NetError>;
  if (f.polarity() != Polarity::Output)
    return R(NetError{NetErrorKind::IllPolarized, "axiom formula must be an output: " + f.str()});
  ProofStructure ps;
  ps.conclusions.push_back(ps.add_tip(axiom_id, Polarity::Input, dual(f)));
  ps.conclusions.push_back(ps.add_tip(axiom_id, Polarity::Output, f));
  auto w = std::make_shared<Witness>();
  w->kind = Witness::Kind::Axiom;
  w->axiom_id = axiom_id;
  ProofNet net;
  net.ps = std::move(ps);
  net.witness = w;
  return R(std::move(net));
}

namespace {

// Copy a subtree into dst, offsetting axiom ids; returns the new root index.
int copy_subtree(const ProofStructure& src, int node, ProofStructure& dst, int id_offset) {
  const PSNode& n = src.nodes[node];
  if (n.is_tip) return dst.add_tip(n.axiom_id + id_offset, n.side, n.label);
  int l = copy_subtree(src, n.left, dst, id_offset);
  int r = copy_subtree(src, n.right, dst, id_offset);
  return dst.add_node(n.conn, l, r);
}

// Rotate the (cyclic) conclusion list so the output comes last; `idx` is
// remapped alongside.
ProofNet anchor_output_last(const ProofNet& p, int& idx) {
  int n = static_cast<int>(p.ps.conclusions.size());
  int out = p.output();
  if (out < 0 || out == n - 1) return p;
  ProofNet r = p;
  int shift = (out + 1) % n;
  std::vector<int> concl(static_cast<std::size_t>(n));
  for (int j = 0; j < n; j++)
    concl[static_cast<std::size_t>(j)] = p.ps.conclusions[static_cast<std::size_t>((shift + j) % n)];
  r.ps.conclusions = std::move(concl);
  idx = (idx - shift + n) % n;
  return r;
}

}  // namespace

Result<JoinResult, NetError> join_tensor(const ProofNet& q1, int c1, const ProofNet& q2, int c2) {
  using R = Result<JoinResult, NetError>;
  int n1 = static_cast<int>(q1.ps.conclusions.size());
  int n2 = static_cast<int>(q2.ps.conclusions.size());
  if (c1 < 0 || c1 >= n1 || c2 < 0 || c2 >= n2)
    return R(NetError{NetErrorKind::UnknownAxiom, "conclusion index out of range"});
  ProofNet p1 = anchor_output_last(q1, c1);
  ProofNet p2 = anchor_output_last(q2, c2);
  auto pol1 = p1.ps.node_polarity(p1.ps.conclusions[static_cast<std::size_t>(c1)]);
  auto pol2 = p2.ps.node_polarity(p2.ps.conclusions[static_cast<std::size_t>(c2)]);
  if (!pol1 || !pol2)
    return R(NetError{NetErrorKind::IllPolarized, "selected conclusion has no polarity"});
  if (*pol1 == Polarity::Input && *pol2 == Polarity::Input)
    return R(NetError{NetErrorKind::BothInputs, "a tensor link needs an output conclusion"});

  int offset = p1.ps.max_axiom_id();
  ProofStructure out;
  std::vector<int> map1(p1.ps.conclusions.size()), map2(p2.ps.conclusions.size());
  for (std::size_t i = 0; i < p1.ps.conclusions.size(); i++)
    map1[i] = copy_subtree(p1.ps, p1.ps.conclusions[i], out, 0);
  for (std::size_t i = 0; i < p2.ps.conclusions.size(); i++)
    map2[i] = copy_subtree(p2.ps, p2.ps.conclusions[i], out, offset);
  int link = out.add_node(LConn::Tensor, map1[static_cast<std::size_t>(c1)],
                          map2[static_cast<std::size_t>(c2)]);

  int out1 = p1.output(), out2 = p2.output();
  std::vector<int> concl;
  if (*pol1 == Polarity::Output && *pol2 == Polarity::Output) {
    // O1*O2, inputs of p2 then inputs of p1, link is the output.
    for (int i = 0; i < n2; i++)
      if (i != out2) concl.push_back(map2[static_cast<std::size_t>(i)]);
    for (int i = 0; i < n1; i++)
      if (i != out1) concl.push_back(map1[static_cast<std::size_t>(i)]);
    concl.push_back(link);
  } else if (*pol1 == Polarity::Output) {
    // O1*I2_k; output is p2's output.
    for (int i = 0; i < c2; i++)
      if (i != out2) concl.push_back(map2[static_cast<std::size_t>(i)]);
    for (int i = 0; i < n1; i++)
      if (i != out1) concl.push_back(map1[static_cast<std::size_t>(i)]);
    concl.push_back(link);
    for (int i = c2 + 1; i < n2; i++)
      if (i != out2) concl.push_back(map2[static_cast<std::size_t>(i)]);
    concl.push_back(map2[static_cast<std::size_t>(out2)]);
  } else {
    // I1_l*O2; output is p1's output.
    for (int i = 0; i < c1; i++)
      if (i != out1) concl.push_back(map1[static_cast<std::size_t>(i)]);
    concl.push_back(link);
    for (int i = 0; i < n2; i++)
      if (i != out2) concl.push_back(map2[static_cast<std::size_t>(i)]);
    for (int i = c1 + 1; i < n1; i++)
      if (i != out1) concl.push_back(map1[static_cast<std::size_t>(i)]);
    concl.push_back(map1[static_cast<std::size_t>(out1)]);
  }
  out.conclusions = std::move(concl);

  auto w = std::make_shared<Witness>();
  w->kind = Witness::Kind::Tensor;
  w->first = p1.witness;
  w->second = p2.witness;
  ProofNet net;
  net.ps = std::move(out);
  net.witness = w;
  int joined = -1;
  for (std::size_t i = 0; i < net.ps.conclusions.size(); i++)
    if (net.ps.conclusions[i] == link) joined = static_cast<int>(i);
  return R(JoinResult{std::move(net), joined});
}

Result<JoinResult, NetError> attach_par(const ProofNet& q, int left, int right) {
  using R = Result<JoinResult, NetError>;
  int n = static_cast<int>(q.ps.conclusions.size());
  if (left < 0 || left >= n || right < 0 || right >= n)
    return R(NetError{NetErrorKind::UnknownAxiom, "conclusion index out of range"});
  if (right != (left + 1) % n)
    return R(NetError{NetErrorKind::NotAdjacent, "conclusions are not cyclically adjacent"});
  if (n < 3)
    return R(NetError{NetErrorKind::WouldEmptyAntecedent,
                      "a par link on a two-conclusion net leaves a single conclusion"});
  ProofNet p = anchor_output_last(q, left);
  right = (left + 1) % n;

  ProofStructure out = p.ps;
  int link = out.add_node(LConn::Par, out.conclusions[static_cast<std::size_t>(left)],
                          out.conclusions[static_cast<std::size_t>(right)]);
  std::vector<int> concl;
  if (left == n - 1 && right == 0) {
    for (int i = 1; i < n - 1; i++) concl.push_back(out.conclusions[static_cast<std::size_t>(i)]);
    concl.push_back(link);
  } else if (right == n - 1) {
    for (int i = 0; i < n - 2; i++) concl.push_back(out.conclusions[static_cast<std::size_t>(i)]);
    concl.push_back(link);
  } else {
    for (int i = 0; i < n; i++) {
      if (i == left) {
        concl.push_back(link);
        continue;
      }
      if (i == right) continue;
      concl.push_back(out.conclusions[static_cast<std::size_t>(i)]);
    }
  }
  out.conclusions = std::move(concl);

  auto w = std::make_shared<Witness>();
  w->kind = Witness::Kind::Par;
  w->first = p.witness;
  ProofNet net;
  net.ps = std::move(out);
  net.witness = w;
  int joined = -1;
  for (std::size_t i = 0; i < net.ps.conclusions.size(); i++)
    if (net.ps.conclusions[i] == link) joined = static_cast<int>(i);
  return R(JoinResult{std::move(net), joined});
}

// ---------------------------------------------------------------------------
// Eta expansion

Result<ProofNet, NetError> eta_expand(const ProofNet& p, int axiom_id) {
  using R = Result<ProofNet, NetError>;
  auto [tout, tin] = p.ps.axiom_tips(axiom_id);
  if (tout < 0 || tin < 0)
    return R(NetError{NetErrorKind::UnknownAxiom, "no axiom " + std::to_string(axiom_id)});
  const auto& label = p.ps.nodes[tout].label;
  if (!label)
    return R(NetError{NetErrorKind::Unlabelled, "axiom " + std::to_string(axiom_id) + " carries no formula"});
  if (label->is_literal())
    return R(NetError{NetErrorKind::AtomicAxiom, "axiom " + std::to_string(axiom_id) + " is already atomic"});

  Linear g = label->left(), h = label->right();
  int id_g = p.ps.max_axiom_id() + 1;
  int id_h = id_g + 1;

  ProofStructure out = p.ps;
  // Output side: the formula's connective over fresh tips for G and H.
  {
    int lg = out.add_tip(id_g, *g.polarity(), g);
    int lh = out.add_tip(id_h, *h.polarity(), h);
    PSNode& n = out.nodes[tout];
    n.is_tip = false;
    n.conn = label->conn();
    n.left = lg;
    n.right = lh;
    n.label.reset();
    out.nodes[lg].parent = tout;
    out.nodes[lh].parent = tout;
  }
  // Input side: dual connective over dual(H), dual(G).
  {
    Linear dh = dual(h), dg = dual(g);
    int lh = out.add_tip(id_h, *dh.polarity(), dh);
    int lg = out.add_tip(id_g, *dg.polarity(), dg);
    PSNode& n = out.nodes[tin];
    n.is_tip = false;
    n.conn = label->conn() == LConn::Tensor ? LConn::Par : LConn::Tensor;
    n.left = lh;
    n.right = lg;
    n.label.reset();
    out.nodes[lh].parent = tin;
    out.nodes[lg].parent = tin;
  }

  auto revalidated = validate(out);
  if (!revalidated)
    return R(NetError{revalidated.error().kind, "eta expansion broke the net: " + revalidated.error().what()});
  return revalidated;
}

Result<ProofNet, NetError> eta_expand_all(const ProofNet& p) {
  using R = Result<ProofNet, NetError>;
  ProofNet cur = p;
  for (;;) {
    int target = -1;
    for (int id : cur.ps.axiom_ids()) {
      auto [tout, tin] = cur.ps.axiom_tips(id);
      if (cur.ps.nodes[tout].label && !cur.ps.nodes[tout].label->is_literal()) {
        target = id;
        break;
      }
    }
    if (target < 0) return R(std::move(cur));
    auto next = eta_expand(cur, target);
    if (!next) return next;
    cur = next.value();
  }
}

Result<std::vector<Linear>, NetError> conclusions_of(const ProofNet& p) {
  using R = Result<std::vector<Linear>, NetError>;
  std::vector<Linear> out;
  for (int c : p.ps.conclusions) {
    auto label = p.ps.node_label(c);
    if (!label)
      return R(NetError{NetErrorKind::Unlabelled, "structure must be labelled first"});
    out.push_back(*label);
  }
  return R(std::move(out));
}

ProofNet apply(const Subst& sigma, const ProofNet& p) {
  ProofNet out = p;
  for (auto& n : out.ps.nodes)
    if (n.is_tip && n.label) n.label = sigma(*n.label);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct NetParser {
  const std::string& s;
  std::size_t pos = 0;
  ProofStructure& ps;

  NetParser(const std::string& text, ProofStructure& out) : s(text), ps(out) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) pos++;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error("net parse error at position " + std::to_string(pos) + ": " + msg);
  }

  bool at_conn() { return pos < s.size() && (s[pos] == '*' || s[pos] == '|'); }

  int read_id() {
    if (pos >= s.size() || s[pos] != '#') fail("expected '#<id>'");
    pos++;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) pos++;
    if (pos == start) fail("expected an axiom id");
    int id = std::stoi(s.substr(start, pos - start));
    if (id <= 0) fail("axiom ids are positive");
    return id;
  }

  // A tip, or a parenthesized group. A group directly followed by '#' is a
  // complex axiom tip; its inside must be a pure formula.
  int item() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    if (s[pos] == '(') {
      std::size_t open = pos;
      std::size_t close = open;
      int depth = 0;
      for (std::size_t i = open; i < s.size(); i++) {
        if (s[i] == '(') depth++;
        if (s[i] == ')' && --depth == 0) {
          close = i;
          break;
        }
      }
      if (close == open) fail("unbalanced '('");
      if (close + 1 < s.size() && s[close + 1] == '#') {
        std::string formula = s.substr(open + 1, close - open - 1);
        if (formula.find('#') != std::string::npos) fail("axiom ids inside a complex tip formula");
        Linear f = parse_linear(formula);
        auto polarity = f.polarity();
        if (!polarity) fail("complex tip formula is not polarizable: " + formula);
        pos = close + 1;
        int id = read_id();
        return ps.add_tip(id, *polarity, f);
      }
      pos++;
      int inner = node();
      skip_ws();
      if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
      pos++;
      return inner;
    }
    // O#k / I#k / atom tip
    if (s[pos] == 'O' || s[pos] == 'I') {
      Polarity side = s[pos] == 'O' ? Polarity::Output : Polarity::Input;
      pos++;
      int id = read_id();
      return ps.add_tip(id, side, std::nullopt);
    }
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) pos++;
    if (pos == start) fail("expected a tip");
    std::string name = s.substr(start, pos - start);
    bool dualled = false;
    if (pos < s.size() && s[pos] == '~') {
      dualled = true;
      pos++;
    }
    Category a = parse_category(name);
    Linear f = Linear::literal(a.as_atom(), dualled);
    int id = read_id();
    return ps.add_tip(id, *f.polarity(), f);
  }

  int node() {
    int l = item();
    skip_ws();
    if (!at_conn()) return l;
    LConn c = s[pos++] == '*' ? LConn::Tensor : LConn::Par;
    int r = item();
    skip_ws();
    if (at_conn()) fail("ambiguous chain; parenthesize nested terms");
    return ps.add_node(c, l, r);
  }

  void run() {
    for (;;) {
      ps.conclusions.push_back(node());
      skip_ws();
      if (pos >= s.size()) break;
      if (s[pos] != ',') fail("expected ',' between conclusions");
      pos++;
    }
  }
};

}  // namespace

ProofStructure parse_structure(const std::string& text) {
  ProofStructure ps;
  NetParser p(text, ps);
  p.run();
  // Matching invariant is a format requirement.
  std::map<int, std::pair<int, int>> sides;
  for (const auto& n : ps.nodes) {
    if (!n.is_tip) continue;
    auto& s = sides[n.axiom_id];
    (n.side == Polarity::Output ? s.first : s.second)++;
  }
  for (const auto& [id, s] : sides)
    if (s.first != 1 || s.second != 1)
      throw std::runtime_error("net parse error: axiom " + std::to_string(id) +
                               " must occur exactly twice with opposite polarities");
  return ps;
}

}  // namespace lambek
