#include "lambek/category.hpp"

#include <cctype>
#include <map>
#include <stdexcept>

namespace lambek {

Atom Atom::constant(std::string name) {
  Atom a;
  a.name_ = std::move(name);
  return a;
}

Atom Atom::variable(std::uint64_t index) {
  Atom a;
  a.var_ = index;
  return a;
}

std::string Atom::str() const {
  if (is_variable()) return "x" + std::to_string(var_);
  return name_;
}

Category Category::atom(Atom a) {
  Category c;
  auto n = std::make_shared<Node>();
  n->atom = std::move(a);
  c.node_ = std::move(n);
  return c;
}

Category Category::make(Conn conn, Category left, Category right) {
  Category c;
  auto n = std::make_shared<Node>();
  n->conn = conn;
  n->left = left.node_;
  n->right = right.node_;
  c.node_ = std::move(n);
  return c;
}

bool Category::is_atom() const { return node_ && node_->atom.has_value(); }

const Atom& Category::as_atom() const { return *node_->atom; }

Conn Category::conn() const { return node_->conn; }

Category Category::left() const {
  Category c;
  c.node_ = node_->left;
  return c;
}

Category Category::right() const {
  Category c;
  c.node_ = node_->right;
  return c;
}

std::size_t Category::size() const {
  if (is_atom()) return 1;
  return left().size() + right().size();
}

std::size_t Category::node_count() const {
  if (is_atom()) return 1;
  return 1 + left().node_count() + right().node_count();
}

bool Category::product_free() const {
  if (is_atom()) return true;
  if (conn() == Conn::Product) return false;
  return left().product_free() && right().product_free();
}

bool Category::contains_var(std::uint64_t v) const {
  if (is_atom()) return as_atom().is_variable() && as_atom().var_index() == v;
  return left().contains_var(v) || right().contains_var(v);
}

void Category::collect_vars(std::set<std::uint64_t>& out) const {
  if (is_atom()) {
    if (as_atom().is_variable()) out.insert(as_atom().var_index());
    return;
  }
  left().collect_vars(out);
  right().collect_vars(out);
}

std::string conn_str(Conn c) {
  switch (c) {
    case Conn::LeftDiv: return "\\";
    case Conn::RightDiv: return "/";
    case Conn::Product: return "*";
  }
  return "?";
}

std::string Category::str() const {
  if (empty()) return "<empty>";
  if (is_atom()) return as_atom().str();
  auto sub = [](const Category& c) {
    return c.is_atom() ? c.str() : "(" + c.str() + ")";
  };
  return sub(left()) + conn_str(conn()) + sub(right());
}

bool operator==(const Category& a, const Category& b) { return Category::compare(a, b) == 0; }

int Category::compare(const Category& a, const Category& b) {
  if (a.is_atom() != b.is_atom()) return a.is_atom() ? -1 : 1;
  if (a.is_atom()) {
    const Atom& x = a.as_atom();
    const Atom& y = b.as_atom();
    if (x == y) return 0;
    return x < y ? -1 : 1;
  }
  if (a.conn() != b.conn()) return static_cast<int>(a.conn()) < static_cast<int>(b.conn()) ? -1 : 1;
  if (int c = compare(a.left(), b.left())) return c;
  return compare(a.right(), b.right());
}

namespace {

struct CatParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit CatParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) pos++;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error("category parse error at position " + std::to_string(pos) + ": " + msg);
  }

  bool at_conn() {
    return pos < s.size() && (s[pos] == '\\' || s[pos] == '/' || s[pos] == '*');
  }

  Conn read_conn() {
    char c = s[pos++];
    if (c == '\\') return Conn::LeftDiv;
    if (c == '/') return Conn::RightDiv;
    return Conn::Product;
  }

  Atom read_atom() {
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) pos++;
    if (pos == start) fail("expected an atom");
    std::string name = s.substr(start, pos - start);
    if (!std::islower(static_cast<unsigned char>(name[0]))) fail("atoms must start with a lowercase letter");
    if (name[0] == 'x' && name.size() > 1) {
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); i++)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
      if (digits) {
        std::uint64_t idx = std::stoull(name.substr(1));
        if (idx == 0) fail("variable indices start at 1");
        return Atom::variable(idx);
      }
    }
    if (name == "x") fail("bare 'x' is reserved; variables are written x1, x2, ...");
    return Atom::constant(name);
  }

  Category term() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    if (s[pos] == '(') {
      pos++;
      Category c = expr();
      skip_ws();
      if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
      pos++;
      return c;
    }
    return Category::atom(read_atom());
  }

  // At most one connective per level: expr := term (conn term)?
  Category expr() {
    Category l = term();
    skip_ws();
    if (!at_conn()) return l;
    Conn c = read_conn();
    Category r = term();
    skip_ws();
    if (at_conn()) fail("ambiguous chain; parenthesize nested categories");
    return Category::make(c, std::move(l), std::move(r));
  }
};

}  // namespace

Category parse_category(const std::string& text) {
  CatParser p(text);
  Category c = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return c;
}

namespace {

void pattern_key_rec(const Category& c, std::map<std::uint64_t, std::size_t>& seen, std::string& out) {
  if (c.is_atom()) {
    const Atom& a = c.as_atom();
    if (a.is_variable()) {
      auto [it, inserted] = seen.emplace(a.var_index(), seen.size() + 1);
      out += "v" + std::to_string(it->second);
    } else {
      out += a.constant_name();
    }
    return;
  }
  out += "(";
  pattern_key_rec(c.left(), seen, out);
  out += conn_str(c.conn());
  pattern_key_rec(c.right(), seen, out);
  out += ")";
}

}  // namespace

std::string local_pattern_key(const Category& c) {
  std::map<std::uint64_t, std::size_t> seen;
  std::string out;
  pattern_key_rec(c, seen, out);
  return out;
}

}  // namespace lambek
