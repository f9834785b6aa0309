#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lambek/grammar.hpp"
#include "lambek/linear.hpp"
#include "lambek/subst.hpp"
#include "lambek/unify.hpp"

using namespace lambek;

namespace {

Category cat(const std::string& s) { return parse_category(s); }
Linear lin(const std::string& s) { return parse_linear(s); }

// Uniform random category over the given atoms.
Category random_category(std::mt19937& rng, const std::vector<Atom>& atoms, int depth) {
  std::uniform_int_distribution<int> pick(0, 3);
  if (depth == 0 || pick(rng) == 0) {
    std::uniform_int_distribution<std::size_t> a(0, atoms.size() - 1);
    return Category::atom(atoms[a(rng)]);
  }
  Conn c = static_cast<Conn>(std::uniform_int_distribution<int>(0, 2)(rng));
  return Category::make(c, random_category(rng, atoms, depth - 1),
                        random_category(rng, atoms, depth - 1));
}

std::vector<Atom> mixed_atoms() {
  return {Atom::s(), Atom::constant("np"), Atom::constant("cn"), Atom::variable(1),
          Atom::variable(2), Atom::variable(3)};
}

}  // namespace

TEST_CASE("category parsing and printing round-trips") {
  for (const char* text : {"s", "np", "x12", "np\\s", "s/np", "np*pp",
                           "(x1\\s)/(x2*x3)", "a/(b\\c)", "((np*pp)\\(np*pp))/(np*pp)"}) {
    Category c = cat(text);
    CHECK(cat(c.str()) == c);
  }
  CHECK_THROWS(cat("a\\b/c"));
  CHECK_THROWS(cat("x"));
  CHECK_THROWS(cat("x0"));
  CHECK_THROWS(cat("(a"));
  CHECK(cat("x7").as_atom().is_variable());
  CHECK(cat("xy7").as_atom().is_constant());
  CHECK(cat("s").as_atom().is_s());
}

TEST_CASE("to_linear follows the translation table") {
  CHECK(to_linear(cat("np"), Polarity::Output) == lin("np"));
  CHECK(to_linear(cat("np"), Polarity::Input) == lin("np~"));
  // -(M\N) = -N * +M
  CHECK(to_linear(cat("np\\s"), Polarity::Input) == lin("s~*np"));
  // +(M\N) = -M | +N
  CHECK(to_linear(cat("np\\s"), Polarity::Output) == lin("np~|s"));
  // -(N/M) = +M * -N
  CHECK(to_linear(cat("s/np"), Polarity::Input) == lin("np*s~"));
  // +(M*N) = +M * +N ; -(M*N) = -N | -M
  CHECK(to_linear(cat("a*b"), Polarity::Output) == lin("a*b"));
  CHECK(to_linear(cat("a*b"), Polarity::Input) == lin("b~|a~"));
}

TEST_CASE("worked lexicon rows translate as displayed") {
  // that : ((x34\x33)/(x36/x35)) has dual (x36|x35~)*(x33~*x34)
  CHECK(to_linear(cat("(x34\\x33)/(x36/x35)"), Polarity::Input) ==
        lin("(x36|x35~)*(x33~*x34)"));
  // gave : (x11\s)/(x13*x12) has dual (x13*x12)*(s~*x11)
  CHECK(to_linear(cat("(x11\\s)/(x13*x12)"), Polarity::Input) ==
        lin("(x13*x12)*(s~*x11)"));
  // to : x12/x15 has dual x15*x12~
  CHECK(to_linear(cat("x12/x15"), Polarity::Input) == lin("x15*x12~"));
}

TEST_CASE("dual is involutive and De Morgan") {
  CHECK(dual(lin("a")) == lin("a~"));
  CHECK(dual(lin("a~|b")) == lin("b~*a"));
  std::mt19937 rng(7);
  auto atoms = mixed_atoms();
  for (int i = 0; i < 1000; i++) {
    Category c = random_category(rng, atoms, 3);
    Polarity p = (i % 2) ? Polarity::Output : Polarity::Input;
    Linear f = to_linear(c, p);
    CHECK(dual(dual(f)) == f);
    CHECK(dual(to_linear(c, Polarity::Output)) == to_linear(c, Polarity::Input));
  }
}

TEST_CASE("from_linear inverts to_linear") {
  auto r = from_linear(lin("s"));
  REQUIRE(r.ok());
  CHECK(r.value().first == cat("s"));
  CHECK(r.value().second == Polarity::Output);

  auto r2 = from_linear(lin("s~*np"));
  REQUIRE(r2.ok());
  CHECK(r2.value().first == cat("np\\s"));
  CHECK(r2.value().second == Polarity::Input);

  CHECK_FALSE(from_linear(lin("np|np")).ok());
  CHECK_FALSE(lin("np|np").well_polarized());
  CHECK_FALSE(lin("np~*s~").well_polarized());

  std::mt19937 rng(11);
  auto atoms = mixed_atoms();
  for (int i = 0; i < 2000; i++) {
    Category c = random_category(rng, atoms, 3);
    Polarity p = (i % 2) ? Polarity::Output : Polarity::Input;
    Linear f = to_linear(c, p);
    REQUIRE(f.well_polarized());
    CHECK(f.polarity() == p);
    auto back = from_linear(f);
    REQUIRE(back.ok());
    CHECK(back.value().first == c);
    CHECK(back.value().second == p);
  }
}

TEST_CASE("substitution basics") {
  Subst empty;
  CHECK(empty(cat("(x1\\s)/x2")) == cat("(x1\\s)/x2"));

  // sigma(A) can be a singleton while A is not
  Grammar g;
  g.add("w", cat("a/(b\\c)"));
  g.add("w", cat("a/x1"));
  CHECK(g.categories("w").size() == 2);
  Subst sigma;
  sigma.bind(1, cat("b\\c"));
  Grammar g2 = apply(sigma, g);
  CHECK(g2.categories("w").size() == 1);
  CHECK(g2.categories("w")[0] == cat("a/(b\\c)"));

  // polarity preservation on a literal
  Subst tonp;
  tonp.bind(3, cat("np"));
  CHECK(tonp(lin("x3~")) == lin("np~"));
  CHECK(tonp(lin("x3")) == lin("np"));

  // substitution through a linear formula preserves polarity
  std::mt19937 rng(13);
  auto atoms = mixed_atoms();
  for (int i = 0; i < 500; i++) {
    Category c = random_category(rng, atoms, 3);
    Subst s;
    s.bind(1, random_category(rng, atoms, 2));
    s.bind(2, random_category(rng, atoms, 1));
    Linear f = to_linear(c, Polarity::Input);
    CHECK(s(f).polarity() == Polarity::Input);
    CHECK(s(f) == to_linear(s(c), Polarity::Input));
    // substitution never decreases category size
    CHECK(s(c).size() >= c.size());
  }
}

TEST_CASE("compose satisfies its defining equation") {
  Subst sigma;
  sigma.bind(1, cat("x2\\s"));  // x1 -> x2\s
  Subst tau;
  tau.bind(2, cat("np"));  // x2 -> np
  Subst both = compose(tau, sigma);
  CHECK(both(cat("x1")) == cat("np\\s"));
  CHECK(both(cat("x2")) == cat("np"));
  CHECK(compose(Subst{}, sigma) == sigma);
  CHECK(compose(sigma, Subst{}) == sigma);

  std::mt19937 rng(17);
  auto atoms = mixed_atoms();
  for (int i = 0; i < 500; i++) {
    Subst s, t;
    s.bind(1, random_category(rng, atoms, 2));
    t.bind(2, random_category(rng, atoms, 2));
    t.bind(3, random_category(rng, atoms, 1));
    Category c = random_category(rng, atoms, 3);
    CHECK(compose(t, s)(c) == t(s(c)));
  }
}

TEST_CASE("renamings") {
  Subst nu;
  nu.bind(1, cat("x5"));
  nu.bind(2, cat("x6"));
  CHECK(nu.is_renaming());
  Subst bad;
  bad.bind(1, cat("x5"));
  bad.bind(2, cat("x5"));
  CHECK_FALSE(bad.is_renaming());
  Subst notvar;
  notvar.bind(1, cat("np\\s"));
  CHECK_FALSE(notvar.is_renaming());

  // renamings preserve size exactly
  Grammar g;
  g.add("w", cat("(x1\\s)/x2"));
  CHECK(apply(nu, g).size() == g.size());
}

TEST_CASE("grammar text format") {
  Grammar g = parse_grammar_text(
      "# lexicon\n"
      "Sophie : pn\n"
      "liked : (pn\\s)/np  # transitive\n"
      "liked : (pn\\s)/np\n"
      "a : np/cn\n"
      "\n");
  CHECK(g.categories("liked").size() == 1);  // repeated line accumulates a set
  CHECK(g.categories("Sophie")[0] == cat("pn"));
  CHECK(g.is_rigid());
  CHECK(g.size() == 1 + 3 + 2);
  CHECK_THROWS(parse_grammar_text("no colon here\n"));
}

TEST_CASE("canonicalize renumbers by first occurrence") {
  Grammar g;
  g.add("w", cat("x7\\s"));
  Grammar c = canonicalize(g);
  CHECK(c.categories("w")[0] == cat("x1\\s"));

  // idempotent on random grammars, invariant under renaming
  std::mt19937 rng(23);
  auto atoms = mixed_atoms();
  for (int i = 0; i < 1000; i++) {
    Grammar h;
    int words = 1 + static_cast<int>(rng() % 3);
    for (int w = 0; w < words; w++)
      h.add("w" + std::to_string(w), random_category(rng, atoms, 2));
    Grammar c1 = canonicalize(h);
    CHECK(canonicalize(c1) == c1);
    Subst nu;
    nu.bind(1, cat("x17"));
    nu.bind(2, cat("x23"));
    nu.bind(3, cat("x31"));
    CHECK(canonicalize(apply(nu, h)) == c1);
  }
}

TEST_CASE("unify: paper cases") {
  auto r = unify(cat("x1"), cat("np\\s"));
  REQUIRE(r.ok());
  CHECK(r.value()(cat("x1")) == cat("np\\s"));

  auto r2 = unify(cat("a/(b\\c)"), cat("a/x1"));
  REQUIRE(r2.ok());
  CHECK(r2.value()(cat("a/x1")) == cat("a/(b\\c)"));

  auto clash = unify(cat("s"), cat("a*b"));
  REQUIRE_FALSE(clash.ok());
  CHECK(clash.error().kind == UnifyError::Kind::Clash);

  auto occurs = unify(cat("x1"), cat("x1\\s"));
  REQUIRE_FALSE(occurs.ok());
  CHECK(occurs.error().kind == UnifyError::Kind::OccursCheck);

  auto cclash = unify(cat("np"), cat("cn"));
  REQUIRE_FALSE(cclash.ok());
  CHECK(cclash.error().kind == UnifyError::Kind::Clash);
}

TEST_CASE("unify_set identifies the worked equivalence classes") {
  std::vector<Category> cats = {cat("x13/x14"), cat("x23/x24"), cat("x28/x29"), cat("x32/x33")};
  auto r = unify_set(cats);
  REQUIRE(r.ok());
  const Subst& s = r.value();
  Category image = s(cats[0]);
  for (const auto& c : cats) CHECK(s(c) == image);
  CHECK(image.left().is_atom());
  CHECK(image.right().is_atom());
  CHECK(image.left().as_atom() != image.right().as_atom());

  auto fail = unify_set({cat("s"), cat("np")});
  CHECK_FALSE(fail.ok());

  CHECK(unify_set({cat("np\\s")}).ok());
  CHECK(unify_set({cat("np\\s")}).value().identity());
}

TEST_CASE("unify_set is order independent up to renaming") {
  std::vector<Category> base = {cat("x1/x2"), cat("x3/s"), cat("x3/x4"), cat("x5")};
  std::vector<std::size_t> idx = {0, 1, 2, 3};
  Grammar reference;
  bool have_reference = false;
  do {
    std::vector<Category> perm;
    for (auto i : idx) perm.push_back(base[i]);
    auto r = unify_set(perm);
    REQUIRE(r.ok());
    Grammar g;
    g.add("w", r.value()(base[0]));
    g = canonicalize(g);
    if (!have_reference) {
      reference = g;
      have_reference = true;
    } else {
      CHECK(g == reference);
    }
  } while (std::next_permutation(idx.begin(), idx.end()));
}

TEST_CASE("unify_grammar threads one substitution across words") {
  Grammar g;
  g.add("v", cat("x1\\s"));
  g.add("v", cat("x2\\x3"));
  g.add("w", cat("x2"));
  g.add("w", cat("np"));
  auto r = unify_grammar(g);
  REQUIRE(r.ok());
  CHECK(r.value().grammar.is_rigid());
  // x2 = np flows into v's entry
  CHECK(r.value().grammar.categories("v")[0] == cat("np\\s"));

  Grammar rigid;
  rigid.add("u", cat("np"));
  auto r2 = unify_grammar(rigid);
  REQUIRE(r2.ok());
  CHECK(r2.value().unifier.identity());
  CHECK(r2.value().grammar == rigid);

  Grammar bad;
  bad.add("w", cat("s"));
  bad.add("w", cat("x1\\x1"));
  auto r3 = unify_grammar(bad);
  REQUIRE_FALSE(r3.ok());
  CHECK(r3.error().word == "w");
}
