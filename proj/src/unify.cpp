#include "lambek/unify.hpp"

#include <cassert>
#include <set>

namespace lambek {

std::string UnifyError::what() const {
  return std::string(kind == Kind::Clash ? "Clash" : "OccursCheck") + ": " + lhs.str() +
         " = " + rhs.str();
}

std::string UnunifiableWord::what() const {
  return "categories of `" + word + "` do not unify (" + cause.what() + ")";
}

namespace {

bool is_var(const Category& c) { return c.is_atom() && c.as_atom().is_variable(); }
bool is_const(const Category& c) { return c.is_atom() && c.as_atom().is_constant(); }

Category subst_one(const Category& c, std::uint64_t var, const Category& image) {
  if (c.is_atom()) {
    if (c.as_atom().is_variable() && c.as_atom().var_index() == var) return image;
    return c;
  }
  return Category::make(c.conn(), subst_one(c.left(), var, image), subst_one(c.right(), var, image));
}

}  // namespace

Result<Subst, UnifyError> EquationSet::solve(bool check_measure) {
  using R = Result<Subst, UnifyError>;

  // (unsolved variables, node count, non-variable left-hand sides); a
  // variable is solved when its only occurrence is as the left of its own
  // equation.
  // Occurrence counts per variable over all equation sides; a variable is
  // solved when it occurs exactly once, as the bare lhs of its equation.
  auto measure = [this]() {
    std::map<std::uint64_t, std::size_t> occ;
    std::set<std::uint64_t> bare_lhs;
    std::size_t nodes = 0, nonvar_left = 0;
    auto count = [&occ](const Category& c, auto&& self) -> void {
      if (c.is_atom()) {
        if (c.as_atom().is_variable()) occ[c.as_atom().var_index()]++;
        return;
      }
      self(c.left(), self);
      self(c.right(), self);
    };
    for (const auto& eq : eqs_) {
      count(eq.lhs, count);
      count(eq.rhs, count);
      nodes += eq.lhs.node_count() + eq.rhs.node_count();
      if (is_var(eq.lhs))
        bare_lhs.insert(eq.lhs.as_atom().var_index());
      else
        nonvar_left++;
    }
    std::size_t unsolved = 0;
    for (const auto& [v, n] : occ)
      if (!(n == 1 && bare_lhs.count(v))) unsolved++;
    return std::tuple<std::size_t, std::size_t, std::size_t>(unsolved, nodes, nonvar_left);
  };

  auto prev = measure();

  for (;;) {
    bool fired = false;
    for (std::size_t i = 0; i < eqs_.size() && !fired; i++) {
      Category l = eqs_[i].lhs, r = eqs_[i].rhs;
      // 1. C = C
      if (l == r) {
        eqs_.erase(eqs_.begin() + static_cast<std::ptrdiff_t>(i));
        fired = true;
        break;
      }
      // 2. decomposition of a shared connective
      if (!l.is_atom() && !r.is_atom() && l.conn() == r.conn()) {
        eqs_.erase(eqs_.begin() + static_cast<std::ptrdiff_t>(i));
        eqs_.push_back({l.left(), r.left()});
        eqs_.push_back({l.right(), r.right()});
        fired = true;
        break;
      }
      // 3. orient: C = x becomes x = C
      if (is_var(r) && !is_var(l)) {
        eqs_[i] = {r, l};
        fired = true;
        break;
      }
      if (is_var(l)) {
        std::uint64_t x = l.as_atom().var_index();
        // 4. occurs check
        if (r.contains_var(x)) return R(UnifyError{UnifyError::Kind::OccursCheck, l, r});
        // 5. eliminate x from the rest of the multiset
        bool elsewhere = false;
        for (std::size_t j = 0; j < eqs_.size(); j++) {
          if (j == i) continue;
          if (eqs_[j].lhs.contains_var(x) || eqs_[j].rhs.contains_var(x)) elsewhere = true;
        }
        if (elsewhere) {
          for (std::size_t j = 0; j < eqs_.size(); j++) {
            if (j == i) continue;
            eqs_[j].lhs = subst_one(eqs_[j].lhs, x, r);
            eqs_[j].rhs = subst_one(eqs_[j].rhs, x, r);
          }
          fired = true;
          break;
        }
        continue;  // solved equation, leave in place
      }
      // 6. connective clash
      if (!l.is_atom() && !r.is_atom())
        return R(UnifyError{UnifyError::Kind::Clash, l, r});
      // 7./8. constant against compound or distinct constant
      if (is_const(l) || is_const(r)) return R(UnifyError{UnifyError::Kind::Clash, l, r});
      assert(false && "unreachable equation shape");
    }
    if (!fired) break;
    if (check_measure) {
      auto cur = measure();
      assert(cur < prev && "unification measure must decrease");
      prev = cur;
    }
  }

  Subst sigma;
  for (const auto& eq : eqs_) {
    assert(is_var(eq.lhs));
    sigma.bind(eq.lhs.as_atom().var_index(), eq.rhs);
  }
  return R(sigma);
}

Result<Subst, UnifyError> unify(const Category& a, const Category& b) {
  EquationSet e;
  e.add(a, b);
#ifndef NDEBUG
  return e.solve(true);
#else
  return e.solve(false);
#endif
}

Result<Subst, UnifyError> unify_set(const std::vector<Category>& cats) {
  EquationSet e;
  for (std::size_t i = 0; i + 1 < cats.size(); i++) e.add(cats[i], cats[i + 1]);
  return e.solve(false);
}

Result<RigidResult, UnunifiableWord> unify_grammar(const Grammar& g) {
  using R = Result<RigidResult, UnunifiableWord>;
  Subst sigma;
  for (const auto& [word, cats] : g.lexicon()) {
    if (cats.size() <= 1) continue;
    std::vector<Category> mapped;
    for (const auto& c : cats) mapped.push_back(sigma(c));
    auto mgu = unify_set(mapped);
    if (!mgu) return R(UnunifiableWord{word, mgu.error()});
    sigma = compose(mgu.value(), sigma);
  }
  Grammar rigid = apply(sigma, g);
  assert(rigid.is_rigid());
  return R(RigidResult{std::move(rigid), std::move(sigma)});
}

}  // namespace lambek
