#include "lambek/natded.hpp"

#include <cassert>
#include <cctype>
#include <set>
#include <stdexcept>

namespace lambek {

std::string NdError::what() const {
  const char* k = "";
  switch (kind) {
    case Kind::IllFormed: k = "IllFormed"; break;
    case Kind::NotNormal: k = "NotNormal"; break;
    case Kind::NotProductFree: k = "NotProductFree"; break;
  }
  return detail.empty() ? std::string(k) : std::string(k) + ": " + detail;
}

NatDed NatDed::hyp(Category c) {
  NatDed d;
  auto n = std::make_shared<Node>();
  n->kind = NdKind::Hyp;
  n->cat = std::move(c);
  d.node_ = std::move(n);
  return d;
}

NatDed NatDed::intro_left(NatDed d) {
  NatDed out;
  auto n = std::make_shared<Node>();
  n->kind = NdKind::IntroLeft;
  n->a = d.node_;
  out.node_ = std::move(n);
  return out;
}

NatDed NatDed::intro_right(NatDed d) {
  NatDed out;
  auto n = std::make_shared<Node>();
  n->kind = NdKind::IntroRight;
  n->a = d.node_;
  out.node_ = std::move(n);
  return out;
}

NatDed NatDed::elim_left(NatDed minor, NatDed principal) {
  NatDed out;
  auto n = std::make_shared<Node>();
  n->kind = NdKind::ElimLeft;
  n->a = minor.node_;
  n->b = principal.node_;
  out.node_ = std::move(n);
  return out;
}

NatDed NatDed::elim_right(NatDed principal, NatDed minor) {
  NatDed out;
  auto n = std::make_shared<Node>();
  n->kind = NdKind::ElimRight;
  n->a = principal.node_;
  n->b = minor.node_;
  out.node_ = std::move(n);
  return out;
}

NatDed NatDed::child() const {
  NatDed d;
  d.node_ = node_->a;
  return d;
}
NatDed NatDed::first() const { return child(); }
NatDed NatDed::second() const {
  NatDed d;
  d.node_ = node_->b;
  return d;
}

std::string NatDed::str() const {
  switch (kind()) {
    case NdKind::Hyp: return "(hyp " + node_->cat.str() + ")";
    case NdKind::IntroLeft: return "(introL " + child().str() + ")";
    case NdKind::IntroRight: return "(introR " + child().str() + ")";
    case NdKind::ElimLeft: return "(elimL " + first().str() + " " + second().str() + ")";
    case NdKind::ElimRight: return "(elimR " + first().str() + " " + second().str() + ")";
  }
  return "?";
}

Result<NdInfo, NdError> infer(const NatDed& d) {
  using R = Result<NdInfo, NdError>;
  switch (d.kind()) {
    case NdKind::Hyp: {
      if (!d.hyp_category().product_free())
        return R(NdError{NdError::Kind::NotProductFree, d.hyp_category().str()});
      return R(NdInfo{d.hyp_category(), {d.hyp_category()}});
    }
    case NdKind::IntroLeft:
    case NdKind::IntroRight: {
      auto sub = infer(d.child());
      if (!sub) return sub;
      NdInfo info = sub.value();
      if (info.hypotheses.size() < 2)
        return R(NdError{NdError::Kind::IllFormed, "an introduction needs at least two free hypotheses"});
      if (d.kind() == NdKind::IntroLeft) {
        Category a = info.hypotheses.front();
        info.hypotheses.erase(info.hypotheses.begin());
        info.conclusion = Category::under(a, info.conclusion);
      } else {
        Category a = info.hypotheses.back();
        info.hypotheses.pop_back();
        info.conclusion = Category::over(info.conclusion, a);
      }
      return R(std::move(info));
    }
    case NdKind::ElimLeft: {
      auto minor = infer(d.first());
      auto principal = infer(d.second());
      if (!minor) return minor;
      if (!principal) return principal;
      const Category& pc = principal.value().conclusion;
      if (pc.is_atom() || pc.conn() != Conn::LeftDiv || !(pc.left() == minor.value().conclusion))
        return R(NdError{NdError::Kind::IllFormed,
                         "left elimination expects A and A\\B, got " + minor.value().conclusion.str() +
                             " and " + pc.str()});
      NdInfo info;
      info.conclusion = pc.right();
      info.hypotheses = minor.value().hypotheses;
      info.hypotheses.insert(info.hypotheses.end(), principal.value().hypotheses.begin(),
                             principal.value().hypotheses.end());
      return R(std::move(info));
    }
    case NdKind::ElimRight: {
      auto principal = infer(d.first());
      auto minor = infer(d.second());
      if (!principal) return principal;
      if (!minor) return minor;
      const Category& pc = principal.value().conclusion;
      if (pc.is_atom() || pc.conn() != Conn::RightDiv || !(pc.right() == minor.value().conclusion))
        return R(NdError{NdError::Kind::IllFormed,
                         "right elimination expects B/A and A, got " + pc.str() + " and " +
                             minor.value().conclusion.str()});
      NdInfo info;
      info.conclusion = pc.left();
      info.hypotheses = principal.value().hypotheses;
      info.hypotheses.insert(info.hypotheses.end(), minor.value().hypotheses.begin(),
                             minor.value().hypotheses.end());
      return R(std::move(info));
    }
  }
  return R(NdError{NdError::Kind::IllFormed, "unknown node"});
}

bool is_normal(const NatDed& d) {
  switch (d.kind()) {
    case NdKind::Hyp: return true;
    case NdKind::IntroLeft:
    case NdKind::IntroRight: return is_normal(d.child());
    case NdKind::ElimLeft:
      if (d.second().kind() == NdKind::IntroLeft || d.second().kind() == NdKind::IntroRight)
        return false;
      return is_normal(d.first()) && is_normal(d.second());
    case NdKind::ElimRight:
      if (d.first().kind() == NdKind::IntroLeft || d.first().kind() == NdKind::IntroRight)
        return false;
      return is_normal(d.first()) && is_normal(d.second());
  }
  return false;
}

// ---------------------------------------------------------------------------
// Normal deduction -> cut-free net

namespace {

Result<ProofNet, NdError> nd_to_pn_rec(const NatDed& d) {
  using R = Result<ProofNet, NdError>;
  switch (d.kind()) {
    case NdKind::Hyp: {
      auto ax = build_axiom(to_linear(d.hyp_category(), Polarity::Output));
      if (!ax) return R(NdError{NdError::Kind::IllFormed, ax.error().what()});
      return R(ax.value());
    }
    case NdKind::IntroLeft: {
      auto sub = nd_to_pn_rec(d.child());
      if (!sub) return sub;
      int m = static_cast<int>(sub.value().ps.conclusions.size());
      auto r = attach_par(sub.value(), m - 2, m - 1);
      if (!r) return R(NdError{NdError::Kind::IllFormed, r.error().what()});
      return R(r.value().net);
    }
    case NdKind::IntroRight: {
      auto sub = nd_to_pn_rec(d.child());
      if (!sub) return sub;
      int m = static_cast<int>(sub.value().ps.conclusions.size());
      auto r = attach_par(sub.value(), m - 1, 0);
      if (!r) return R(NdError{NdError::Kind::IllFormed, r.error().what()});
      return R(r.value().net);
    }
    default: break;
  }

  // Elimination tail: climb the principal branch to its head hypothesis.
  std::vector<std::pair<bool, NatDed>> chain;  // (is_left, minor), root first
  NatDed cur = d;
  for (;;) {
    if (cur.kind() == NdKind::ElimLeft) {
      chain.push_back({true, cur.first()});
      cur = cur.second();
    } else if (cur.kind() == NdKind::ElimRight) {
      chain.push_back({false, cur.second()});
      cur = cur.first();
    } else {
      break;
    }
  }
  if (cur.kind() != NdKind::Hyp)
    return Result<ProofNet, NdError>(
        NdError{NdError::Kind::NotNormal, "an elimination's principal premise is an introduction"});

  auto info = infer(d);
  if (!info) return Result<ProofNet, NdError>(info.error());
  auto axiom = build_axiom(to_linear(info.value().conclusion, Polarity::Output));
  if (!axiom)
    return Result<ProofNet, NdError>(NdError{NdError::Kind::IllFormed, axiom.error().what()});
  ProofNet net = axiom.value();
  int cpos = 0;  // display index of the principal-branch input conclusion

  for (const auto& [is_left, minor] : chain) {
    auto m = nd_to_pn_rec(minor);
    if (!m) return m;
    int mout = m.value().output();
    Result<JoinResult, NetError> joined =
        is_left ? join_tensor(net, cpos, m.value(), mout) : join_tensor(m.value(), mout, net, cpos);
    if (!joined)
      return Result<ProofNet, NdError>(NdError{NdError::Kind::IllFormed, joined.error().what()});
    net = joined.value().net;
    cpos = joined.value().joined;
  }
  return Result<ProofNet, NdError>(std::move(net));
}

}  // namespace

Result<ProofNet, NdError> nd_to_pn(const NatDed& d) {
  using R = Result<ProofNet, NdError>;
  auto info = infer(d);
  if (!info) return R(info.error());
  if (!is_normal(d))
    return R(NdError{NdError::Kind::NotNormal, "the deduction contains a redex"});
  auto net = nd_to_pn_rec(d);
  if (!net) return net;

  // The conclusions must be -Hn, ..., -H1, +C.
  const NdInfo& i = info.value();
  const ProofStructure& ps = net.value().ps;
  std::size_t n = i.hypotheses.size();
  if (ps.conclusions.size() != n + 1)
    return R(NdError{NdError::Kind::IllFormed, "translation produced a wrong conclusion count"});
  for (std::size_t j = 0; j < n; j++) {
    auto label = ps.node_label(ps.conclusions[j]);
    if (!label || !(*label == to_linear(i.hypotheses[n - 1 - j], Polarity::Input)))
      return R(NdError{NdError::Kind::IllFormed, "translation misplaced a hypothesis"});
  }
  auto out_label = ps.node_label(ps.conclusions[n]);
  if (!out_label || !(*out_label == to_linear(i.conclusion, Polarity::Output)))
    return R(NdError{NdError::Kind::IllFormed, "translation misplaced the conclusion"});
  return net;
}

// ---------------------------------------------------------------------------
// Cut-free net -> normal deduction

namespace {

struct PnReader {
  const ProofStructure& ps;
  std::set<int> crossed;  // axiom ids, each crossed exactly once

  Result<NatDed, NdError> translate_output(int node) {
    using R = Result<NatDed, NdError>;
    // Climb through output pars: each is an introduction.
    std::vector<NdKind> intros;
    int cur = node;
    while (!ps.nodes[cur].is_tip) {
      const PSNode& n = ps.nodes[cur];
      if (n.conn != LConn::Par)
        return R(NdError{NdError::Kind::NotProductFree, "output tensor in the product-free fragment"});
      auto lp = ps.node_polarity(n.left);
      intros.push_back(lp == Polarity::Input ? NdKind::IntroLeft : NdKind::IntroRight);
      cur = lp == Polarity::Input ? n.right : n.left;
    }

    // Cross the axiom.
    int id = ps.nodes[cur].axiom_id;
    if (!crossed.insert(id).second)
      return R(NdError{NdError::Kind::IllFormed, "axiom crossed twice; the net is not sequential"});
    auto [tout, tin] = ps.axiom_tips(id);
    int down = tin;

    // Descend through input tensors collecting the principal branch.
    std::vector<std::pair<bool, int>> chain;  // (is_left_elim, argument output node)
    while (ps.nodes[down].parent >= 0 &&
           !ps.nodes[ps.nodes[down].parent].is_tip &&
           ps.nodes[ps.nodes[down].parent].conn == LConn::Tensor) {
      int parent = ps.nodes[down].parent;
      const PSNode& pn = ps.nodes[parent];
      bool down_is_left = pn.left == down;
      int sibling = down_is_left ? pn.right : pn.left;
      // -X * +G is a left elimination, +G * -X a right one.
      chain.push_back({down_is_left, sibling});
      down = parent;
    }

    // The hypothesis formula: the top of the input spine.
    auto hyp_label = ps.node_label(down);
    auto hyp_cat = from_linear(*hyp_label);
    if (!hyp_cat.ok())
      return R(NdError{NdError::Kind::IllFormed, hyp_cat.error().what});
    NatDed term = NatDed::hyp(hyp_cat.value().first);

    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      auto arg = translate_output(it->second);
      if (!arg) return arg;
      term = it->first ? NatDed::elim_left(arg.value(), term)
                       : NatDed::elim_right(term, arg.value());
    }

    for (auto it = intros.rbegin(); it != intros.rend(); ++it)
      term = *it == NdKind::IntroLeft ? NatDed::intro_left(term) : NatDed::intro_right(term);
    return R(std::move(term));
  }
};

}  // namespace

Result<NatDed, NdError> pn_to_nd(const ProofNet& p) {
  using R = Result<NatDed, NdError>;
  if (!p.ps.labelled())
    return R(NdError{NdError::Kind::IllFormed, "the net must be labelled"});
  for (int c : p.ps.conclusions) {
    auto label = p.ps.node_label(c);
    if (!label || !heterogeneous(*label))
      return R(NdError{NdError::Kind::NotProductFree,
                       "conclusion outside the product-free fragment: " + label->str()});
  }
  int out = p.output();
  if (out < 0) return R(NdError{NdError::Kind::IllFormed, "no output conclusion"});

  PnReader reader{p.ps, {}};
  auto d = reader.translate_output(p.ps.conclusions[static_cast<std::size_t>(out)]);
  if (!d) return d;

  auto info = infer(d.value());
  if (!info) return R(NdError{NdError::Kind::IllFormed, "extracted deduction is ill-typed: " +
                                                            info.error().what()});
  if (!is_normal(d.value()))
    return R(NdError{NdError::Kind::IllFormed, "extracted deduction is not normal"});
  return d;
}

// ---------------------------------------------------------------------------
// S-expression format

namespace {

struct NdParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit NdParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) pos++;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error("deduction parse error at position " + std::to_string(pos) + ": " + msg);
  }

  void expect(char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
    pos++;
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) pos++;
    if (pos == start) fail("expected a keyword");
    return s.substr(start, pos - start);
  }

  NatDed node() {
    expect('(');
    std::string kw = word();
    if (kw == "hyp") {
      skip_ws();
      std::size_t start = pos;
      int depth = 0;
      while (pos < s.size() && (depth > 0 || s[pos] != ')')) {
        if (s[pos] == '(') depth++;
        if (s[pos] == ')') depth--;
        pos++;
      }
      if (pos >= s.size()) fail("unterminated hypothesis");
      NatDed d = NatDed::hyp(parse_category(s.substr(start, pos - start)));
      expect(')');
      return d;
    }
    if (kw == "introL" || kw == "introR") {
      NatDed sub = node();
      expect(')');
      return kw == "introL" ? NatDed::intro_left(sub) : NatDed::intro_right(sub);
    }
    if (kw == "elimL" || kw == "elimR") {
      NatDed a = node();
      NatDed b = node();
      expect(')');
      return kw == "elimL" ? NatDed::elim_left(a, b) : NatDed::elim_right(a, b);
    }
    fail("unknown node kind: " + kw);
  }
};

}  // namespace

NatDed parse_natded(const std::string& text) {
  NdParser p(text);
  NatDed d = p.node();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return d;
}

}  // namespace lambek
