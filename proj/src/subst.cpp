#include "lambek/subst.hpp"

#include <set>

namespace lambek {

void Subst::bind(std::uint64_t var, Category c) {
  if (c.is_atom() && c.as_atom().is_variable() && c.as_atom().var_index() == var) {
    map_.erase(var);
    return;
  }
  map_[var] = std::move(c);
}

Category Subst::operator()(const Category& c) const {
  if (c.is_atom()) {
    const Atom& a = c.as_atom();
    if (a.is_variable()) {
      auto it = map_.find(a.var_index());
      if (it != map_.end()) return it->second;
    }
    return c;
  }
  return Category::make(c.conn(), (*this)(c.left()), (*this)(c.right()));
}

Linear Subst::operator()(const Linear& f) const {
  if (f.is_literal()) {
    const Atom& a = f.atom();
    if (a.is_variable()) {
      auto it = map_.find(a.var_index());
      if (it != map_.end())
        return to_linear(it->second, f.dualled() ? Polarity::Input : Polarity::Output);
    }
    return f;
  }
  return Linear::make(f.conn(), (*this)(f.left()), (*this)(f.right()));
}

bool Subst::is_renaming() const {
  std::set<std::uint64_t> images;
  for (const auto& [v, c] : map_) {
    if (!c.is_atom() || !c.as_atom().is_variable()) return false;
    if (!images.insert(c.as_atom().var_index()).second) return false;
  }
  return true;
}

std::string Subst::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, c] : map_) {
    if (!first) out += ", ";
    first = false;
    out += "x" + std::to_string(v) + " -> " + c.str();
  }
  return out + "}";
}

Subst compose(const Subst& tau, const Subst& sigma) {
  Subst out;
  for (const auto& [v, c] : sigma.bindings()) out.bind(v, tau(c));
  for (const auto& [v, c] : tau.bindings())
    if (!sigma.bound(v)) out.bind(v, c);
  return out;
}

}  // namespace lambek
