#include "lambek/linear.hpp"

#include <cctype>
#include <stdexcept>

namespace lambek {

Polarity flip(Polarity p) { return p == Polarity::Output ? Polarity::Input : Polarity::Output; }

namespace {

int combine_pol(LConn c, int l, int r) {
  if (l == 2 || r == 2) return 2;
  if (c == LConn::Tensor) {
    if (l == 0 && r == 0) return 0;
    if (l != r) return 1;
    return 2;  // input tensor input
  }
  // Par
  if (l == 1 && r == 1) return 1;
  if (l != r) return 0;
  return 2;  // output par output
}

}  // namespace

Linear Linear::literal(Atom a, bool dualled) {
  Linear f;
  auto n = std::make_shared<Node>();
  n->lit = std::make_pair(std::move(a), dualled);
  n->pol = dualled ? 1 : 0;
  f.node_ = std::move(n);
  return f;
}

Linear Linear::make(LConn c, Linear left, Linear right) {
  Linear f;
  auto n = std::make_shared<Node>();
  n->conn = c;
  n->left = left.node_;
  n->right = right.node_;
  n->pol = combine_pol(c, left.node_->pol, right.node_->pol);
  f.node_ = std::move(n);
  return f;
}

bool Linear::is_literal() const { return node_ && node_->lit.has_value(); }
const Atom& Linear::atom() const { return node_->lit->first; }
bool Linear::dualled() const { return node_->lit->second; }
LConn Linear::conn() const { return node_->conn; }

Linear Linear::left() const {
  Linear f;
  f.node_ = node_->left;
  return f;
}

Linear Linear::right() const {
  Linear f;
  f.node_ = node_->right;
  return f;
}

std::optional<Polarity> Linear::polarity() const {
  if (!node_ || node_->pol == 2) return std::nullopt;
  return node_->pol == 0 ? Polarity::Output : Polarity::Input;
}

std::size_t Linear::size() const {
  if (is_literal()) return 1;
  return left().size() + right().size();
}

std::string Linear::str() const {
  if (empty()) return "<empty>";
  if (is_literal()) return atom().str() + (dualled() ? "~" : "");
  auto sub = [](const Linear& f) {
    return f.is_literal() ? f.str() : "(" + f.str() + ")";
  };
  return sub(left()) + (conn() == LConn::Tensor ? "*" : "|") + sub(right());
}

bool operator==(const Linear& a, const Linear& b) { return Linear::compare(a, b) == 0; }

int Linear::compare(const Linear& a, const Linear& b) {
  if (a.is_literal() != b.is_literal()) return a.is_literal() ? -1 : 1;
  if (a.is_literal()) {
    if (a.dualled() != b.dualled()) return a.dualled() ? 1 : -1;
    const Atom& x = a.atom();
    const Atom& y = b.atom();
    if (x == y) return 0;
    return x < y ? -1 : 1;
  }
  if (a.conn() != b.conn()) return a.conn() == LConn::Tensor ? -1 : 1;
  if (int c = compare(a.left(), b.left())) return c;
  return compare(a.right(), b.right());
}

Linear dual(const Linear& f) {
  if (f.is_literal()) return Linear::literal(f.atom(), !f.dualled());
  LConn c = f.conn() == LConn::Tensor ? LConn::Par : LConn::Tensor;
  return Linear::make(c, dual(f.right()), dual(f.left()));
}

Linear to_linear(const Category& c, Polarity p) {
  if (c.is_atom()) return Linear::literal(c.as_atom(), p == Polarity::Input);
  if (p == Polarity::Output) {
    switch (c.conn()) {
      case Conn::Product:  // +(M*N) = +M * +N
        return Linear::tensor(to_linear(c.left(), Polarity::Output), to_linear(c.right(), Polarity::Output));
      case Conn::LeftDiv:  // +(M\N) = -M | +N
        return Linear::par(to_linear(c.left(), Polarity::Input), to_linear(c.right(), Polarity::Output));
      case Conn::RightDiv:  // +(N/M) = +N | -M
        return Linear::par(to_linear(c.left(), Polarity::Output), to_linear(c.right(), Polarity::Input));
    }
  }
  switch (c.conn()) {
    case Conn::Product:  // -(M*N) = -N | -M
      return Linear::par(to_linear(c.right(), Polarity::Input), to_linear(c.left(), Polarity::Input));
    case Conn::LeftDiv:  // -(M\N) = -N * +M
      return Linear::tensor(to_linear(c.right(), Polarity::Input), to_linear(c.left(), Polarity::Output));
    case Conn::RightDiv:  // -(N/M) = +M * -N
      return Linear::tensor(to_linear(c.right(), Polarity::Output), to_linear(c.left(), Polarity::Input));
  }
  return Linear();
}

Result<std::pair<Category, Polarity>, IllPolarized> from_linear(const Linear& f) {
  using R = Result<std::pair<Category, Polarity>, IllPolarized>;
  auto pol = f.polarity();
  if (!pol) return R(IllPolarized{"formula fits neither the output nor the input fragment: " + f.str()});
  if (f.is_literal()) return R(std::make_pair(Category::atom(f.atom()), *pol));
  auto l = from_linear(f.left());
  auto r = from_linear(f.right());
  if (!l) return l;
  if (!r) return r;
  const auto& [lc, lp] = l.value();
  const auto& [rc, rp] = r.value();
  if (*pol == Polarity::Output) {
    if (f.conn() == LConn::Tensor)  // +M * +N
      return R(std::make_pair(Category::product(lc, rc), Polarity::Output));
    if (lp == Polarity::Input)  // -M | +N = +(M\N)
      return R(std::make_pair(Category::under(lc, rc), Polarity::Output));
    // +N | -M = +(N/M)
    return R(std::make_pair(Category::over(lc, rc), Polarity::Output));
  }
  if (f.conn() == LConn::Par)  // -N | -M = -(M*N)
    return R(std::make_pair(Category::product(rc, lc), Polarity::Input));
  if (lp == Polarity::Input)  // -N * +M = -(M\N)
    return R(std::make_pair(Category::under(rc, lc), Polarity::Input));
  // +M * -N = -(N/M)
  return R(std::make_pair(Category::over(rc, lc), Polarity::Input));
}

bool heterogeneous(const Linear& f) {
  if (!f.well_polarized()) return false;
  if (f.is_literal()) return true;
  auto lp = f.left().polarity();
  auto rp = f.right().polarity();
  if (f.conn() == LConn::Tensor && lp == Polarity::Output && rp == Polarity::Output) return false;
  if (f.conn() == LConn::Par && lp == Polarity::Input && rp == Polarity::Input) return false;
  return heterogeneous(f.left()) && heterogeneous(f.right());
}

namespace {

struct LinParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit LinParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) pos++;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error("linear formula parse error at position " + std::to_string(pos) + ": " + msg);
  }

  bool at_conn() { return pos < s.size() && (s[pos] == '*' || s[pos] == '|'); }

  Linear term() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    if (s[pos] == '(') {
      pos++;
      Linear f = expr();
      skip_ws();
      if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
      pos++;
      return f;
    }
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) pos++;
    if (pos == start) fail("expected an atom");
    std::string name = s.substr(start, pos - start);
    bool dualled = false;
    if (pos < s.size() && s[pos] == '~') {
      dualled = true;
      pos++;
    }
    Category a = parse_category(name);
    return Linear::literal(a.as_atom(), dualled);
  }

  Linear expr() {
    Linear l = term();
    skip_ws();
    if (!at_conn()) return l;
    LConn c = s[pos++] == '*' ? LConn::Tensor : LConn::Par;
    Linear r = term();
    skip_ws();
    if (at_conn()) fail("ambiguous chain; parenthesize nested formulas");
    return Linear::make(c, std::move(l), std::move(r));
  }
};

}  // namespace

Linear parse_linear(const std::string& text) {
  LinParser p(text);
  Linear f = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return f;
}

}  // namespace lambek
