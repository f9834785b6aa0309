#pragma once

#include <memory>
#include <optional>
#include <string>

#include "lambek/category.hpp"
#include "lambek/result.hpp"

namespace lambek {

enum class LConn { Tensor, Par };
enum class Polarity { Output, Input };

Polarity flip(Polarity p);

// Multiplicative linear formula over polarized literals a / a~. Arbitrary
// trees are representable; well-polarizedness (membership in the output or
// input fragment) is a derived property cached per node: literals polarize by
// their dual mark, a tensor of two outputs is an output, a par of two inputs
// is an input, and a par (tensor) mixing polarities is an output (input).
// Tensor of two inputs and par of two outputs fit neither fragment.
class Linear {
public:
  Linear() = default;
  static Linear literal(Atom a, bool dualled);
  static Linear positive(Atom a) { return literal(std::move(a), false); }
  static Linear negative(Atom a) { return literal(std::move(a), true); }
  static Linear make(LConn c, Linear left, Linear right);
  static Linear tensor(Linear l, Linear r) { return make(LConn::Tensor, std::move(l), std::move(r)); }
  static Linear par(Linear l, Linear r) { return make(LConn::Par, std::move(l), std::move(r)); }

  bool empty() const { return node_ == nullptr; }
  bool is_literal() const;
  const Atom& atom() const;
  bool dualled() const;
  LConn conn() const;
  Linear left() const;
  Linear right() const;

  // nullopt when some subformula fits neither fragment.
  std::optional<Polarity> polarity() const;
  bool well_polarized() const { return polarity().has_value(); }

  std::size_t size() const;  // literal count
  std::string str() const;

  friend bool operator==(const Linear& a, const Linear& b);
  friend bool operator!=(const Linear& a, const Linear& b) { return !(a == b); }
  friend bool operator<(const Linear& a, const Linear& b) { return compare(a, b) < 0; }
  static int compare(const Linear& a, const Linear& b);

private:
  struct Node {
    std::optional<std::pair<Atom, bool>> lit;
    LConn conn = LConn::Tensor;
    std::shared_ptr<const Node> left, right;
    int pol = 0;  // 0 output, 1 input, 2 neither
  };
  std::shared_ptr<const Node> node_;
};

// De Morgan dual; involutive, order-reversing on the connectives.
Linear dual(const Linear& f);

// +c for output, -c for input, per the polarized translation tables.
Linear to_linear(const Category& c, Polarity p);

struct IllPolarized {
  std::string what;
};

// Inverse of to_linear; fails on formulas outside both fragments.
Result<std::pair<Category, Polarity>, IllPolarized> from_linear(const Linear& f);

// Heterogeneous (product-free) fragment: no output tensor, no input par.
bool heterogeneous(const Linear& f);

// Concrete syntax: `*` tensor, `|` par, postfix `~` on atoms only,
// parentheses mandatory for nesting.
Linear parse_linear(const std::string& text);

}  // namespace lambek
