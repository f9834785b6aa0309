#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lambek {

// Base category: the distinguished constant `s`, other lowercase constants
// (np, cn, ...), or a variable x1, x2, ... drawn from an unbounded namespace.
class Atom {
public:
  static Atom constant(std::string name);
  static Atom variable(std::uint64_t index);
  static Atom s() { return constant("s"); }

  bool is_variable() const { return var_ != 0; }
  bool is_constant() const { return var_ == 0; }
  bool is_s() const { return is_constant() && name_ == "s"; }
  std::uint64_t var_index() const { return var_; }
  const std::string& constant_name() const { return name_; }

  std::string str() const;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.var_ == b.var_ && a.name_ == b.name_;
  }
  friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
  // Constants sort before variables; constants by name, variables by index.
  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.is_variable() != b.is_variable()) return b.is_variable();
    if (a.is_variable()) return a.var_ < b.var_;
    return a.name_ < b.name_;
  }

private:
  std::string name_;       // constants only
  std::uint64_t var_ = 0;  // variables only; 0 means constant
};

// A\B consumes an A on the left, B/A consumes an A on the right, A*B is the
// concatenation product. Children are stored as written: left op right.
enum class Conn { LeftDiv, RightDiv, Product };

// Immutable category tree; cheap to copy (shared subtrees).
class Category {
public:
  Category() = default;
  static Category atom(Atom a);
  static Category make(Conn c, Category left, Category right);
  // a\b
  static Category under(Category a, Category b) { return make(Conn::LeftDiv, std::move(a), std::move(b)); }
  // b/a
  static Category over(Category b, Category a) { return make(Conn::RightDiv, std::move(b), std::move(a)); }
  // a*b
  static Category product(Category a, Category b) { return make(Conn::Product, std::move(a), std::move(b)); }

  bool empty() const { return node_ == nullptr; }
  bool is_atom() const;
  const Atom& as_atom() const;
  Conn conn() const;
  Category left() const;
  Category right() const;

  // Number of base-category occurrences (atom leaves).
  std::size_t size() const;
  // Total node count (atoms + connectives); the unification measure uses it.
  std::size_t node_count() const;
  bool product_free() const;
  bool contains_var(std::uint64_t v) const;
  void collect_vars(std::set<std::uint64_t>& out) const;

  std::string str() const;

  friend bool operator==(const Category& a, const Category& b);
  friend bool operator!=(const Category& a, const Category& b) { return !(a == b); }
  friend bool operator<(const Category& a, const Category& b) { return compare(a, b) < 0; }
  static int compare(const Category& a, const Category& b);

private:
  struct Node {
    std::optional<Atom> atom;
    Conn conn = Conn::LeftDiv;
    std::shared_ptr<const Node> left, right;
  };
  std::shared_ptr<const Node> node_;
};

std::string conn_str(Conn c);

// Concrete syntax: atoms are lowercase identifiers, variables `x<digits>`,
// connectives `\\`, `/`, `*`, parentheses mandatory for nesting (at most one
// connective per parenthesis level, no precedence). Throws std::runtime_error
// with a position message on bad input.
Category parse_category(const std::string& text);

// Variable-blind structural key: variables replaced by their first-occurrence
// index within the category. Used to order categories independently of names.
std::string local_pattern_key(const Category& c);

}  // namespace lambek
