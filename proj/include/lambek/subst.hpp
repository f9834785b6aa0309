#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "lambek/category.hpp"
#include "lambek/linear.hpp"

namespace lambek {

// Finite mapping from category variables to categories; `s` and unmapped
// variables are fixed. Application is homomorphic over all three connectives.
class Subst {
public:
  Subst() = default;

  // Identity bindings are dropped.
  void bind(std::uint64_t var, Category c);
  bool bound(std::uint64_t var) const { return map_.count(var) != 0; }
  const std::map<std::uint64_t, Category>& bindings() const { return map_; }
  bool identity() const { return map_.empty(); }

  Category operator()(const Category& c) const;
  // Variable images translated through to_linear; preserves polarity.
  Linear operator()(const Linear& f) const;

  // Range is all variables and the variable-to-variable map is injective.
  bool is_renaming() const;

  std::string str() const;

  friend bool operator==(const Subst& a, const Subst& b) { return a.map_ == b.map_; }

private:
  std::map<std::uint64_t, Category> map_;
};

// apply(compose(tau, sigma), t) == apply(tau, apply(sigma, t)) for all t.
Subst compose(const Subst& tau, const Subst& sigma);

// Explicit session counter for deterministic fresh-variable generation.
class FreshCounter {
public:
  explicit FreshCounter(std::uint64_t next = 1) : next_(next) {}
  std::uint64_t next() { return next_++; }
  std::uint64_t peek() const { return next_; }
  // Never hand out indices at or below `floor` again.
  void reserve(std::uint64_t floor) {
    if (floor >= next_) next_ = floor + 1;
  }

private:
  std::uint64_t next_;
};

}  // namespace lambek
