#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lambek/proofnet.hpp"
#include "netgen.hpp"

using namespace lambek;
using namespace lambek::testutil;

namespace {

const char* kNet5a = "s~#1*(s#2|np~#3), np#3*(s~*np)#7, (np~|s)#7*s~#2, s#1";
const char* kNet5b = "s~#1*(s#2|np~#3), np#3*(s~#4*np#5), (np~#5|s#4)*s~#2, s#1";

NetErrorKind verdict(const std::string& text) {
  auto r = validate(parse_structure(text));
  REQUIRE_FALSE(r.ok());
  return r.error().kind;
}

}  // namespace

TEST_CASE("serialization round-trips") {
  for (const char* text : {kNet5a, kNet5b, "s~#1, s#1", "s~#1*(O#2|I#3), O#3*(I#4*O#5), (I#5|O#4)*I#2, s#1"}) {
    ProofStructure ps = parse_structure(text);
    CHECK(ps.str() == text);
    CHECK(parse_structure(ps.str()).str() == text);
  }
  CHECK_THROWS(parse_structure("a#1, a#1"));        // same side twice
  CHECK_THROWS(parse_structure("a#1, a~#1, a#1"));  // id three times
  CHECK_THROWS(parse_structure("a#1"));             // unmatched id
}

TEST_CASE("validate: the five reference structures") {
  CHECK(validate(parse_structure("s~#1, s#1")).ok());
  CHECK(validate(parse_structure(kNet5b)).ok());
  CHECK(verdict("a#1*b#2, b~#2*a~#1") == NetErrorKind::Cyclic);
  CHECK(verdict("a~#1|a#1") == NetErrorKind::EmptyAntecedent);
  CHECK(verdict("a~#1, b~#2, a#1, b#2") == NetErrorKind::AxiomsCross);
}

TEST_CASE("validate: more verdicts") {
  CHECK(validate(parse_structure(kNet5a)).ok());
  // two outputs
  CHECK(verdict("a~#1, a#1, b~#2, b#2") == NetErrorKind::NotIntuitionistic);
  // non-dual axiom labels
  CHECK(verdict("a~#1, b#1") == NetErrorKind::IllPolarized);
  // a sub-net with a single conclusion hidden under a tensor
  CHECK(verdict("c~#3, c#3*(a~#1|a#1)") == NetErrorKind::EmptyAntecedent);
  // frame-style (unlabelled) structures validate too
  CHECK(validate(parse_structure("s~#1*(O#2|I#3), O#3*(I#4*O#5), (I#5|O#4)*I#2, s#1")).ok());
}

TEST_CASE("build_axiom") {
  auto ax = build_axiom(parse_linear("s"));
  REQUIRE(ax.ok());
  CHECK(ax.value().ps.str() == "s~#1, s#1");

  auto complex_ax = build_axiom(parse_linear("np*pp"), 1);
  REQUIRE(complex_ax.ok());
  CHECK(complex_ax.value().ps.str() == "(pp~|np~)#1, (np*pp)#1");

  auto bad = build_axiom(parse_linear("s~"));
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.error().kind == NetErrorKind::IllPolarized);
}

TEST_CASE("join_tensor follows the inductive cases") {
  ProofNet np_ax = build_axiom(parse_linear("np"), 1).value();
  ProofNet pp_ax = build_axiom(parse_linear("pp"), 1).value();

  // case 3: both outputs
  auto j = join_tensor(np_ax, 1, pp_ax, 1);
  REQUIRE(j.ok());
  CHECK(j.value().net.ps.str() == "pp~#2, np~#1, np#1*pp#2");
  CHECK(validate(j.value().net.ps).ok());

  // case 1: output of one against the input of the other
  ProofNet s_ax = build_axiom(parse_linear("s"), 1).value();
  ProofNet np_ax2 = build_axiom(parse_linear("np"), 1).value();
  auto j2 = join_tensor(np_ax2, 1, s_ax, 0);
  REQUIRE(j2.ok());
  CHECK(validate(j2.value().net.ps).ok());
  CHECK(j2.value().net.ps.str() == "np~#1, np#1*s~#2, s#2");

  // both inputs rejected
  auto bad = join_tensor(np_ax, 0, pp_ax, 0);
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.error().kind == NetErrorKind::BothInputs);
}

TEST_CASE("attach_par guards") {
  ProofNet ax = build_axiom(parse_linear("s"), 1).value();
  auto bad = attach_par(ax, 0, 1);
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.error().kind == NetErrorKind::WouldEmptyAntecedent);

  // 3-conclusion net: pair the two inputs
  ProofNet s_ax = build_axiom(parse_linear("s"), 1).value();
  ProofNet np_ax = build_axiom(parse_linear("np"), 1).value();
  ProofNet vp = join_tensor(np_ax, 1, s_ax, 0).value().net;  // np~#1, np#1*s~#2, s#2
  auto par = attach_par(vp, 0, 1);
  REQUIRE(par.ok());
  CHECK(par.value().net.ps.str() == "np~#1|(np#1*s~#2), s#2");
  CHECK(validate(par.value().net.ps).ok());

  auto nonadj = attach_par(join_tensor(vp, 0, build_axiom(parse_linear("a")).value(), 1).value().net, 0, 2);
  REQUIRE_FALSE(nonadj.ok());
  CHECK(nonadj.error().kind == NetErrorKind::NotAdjacent);
}

TEST_CASE("eta expansion turns the complex axiom of 5a into 5b") {
  auto net5a = validate(parse_structure(kNet5a));
  REQUIRE(net5a.ok());
  auto expanded = eta_expand(net5a.value(), 7);
  REQUIRE(expanded.ok());
  ProofStructure want = parse_structure(kNet5b);
  CHECK(expanded.value().ps.canonical_renumbered().str() == want.canonical_renumbered().str());
  CHECK(validate(expanded.value().ps).ok());

  // atomic axioms cannot be expanded
  auto atomic = eta_expand(net5a.value(), 1);
  REQUIRE_FALSE(atomic.ok());
  CHECK(atomic.error().kind == NetErrorKind::AtomicAxiom);
}

TEST_CASE("eta_expand_all reaches atomic axioms and keeps conclusions") {
  ProofNet ax = build_axiom(parse_linear("np*pp"), 1).value();
  ProofNet s_ax = build_axiom(parse_linear("s"), 5).value();
  ProofNet joined = join_tensor(ax, 1, s_ax, 0).value().net;
  auto before = conclusions_of(joined);
  REQUIRE(before.ok());
  auto all = eta_expand_all(joined);
  REQUIRE(all.ok());
  for (int id : all.value().ps.axiom_ids()) {
    auto [tout, tin] = all.value().ps.axiom_tips(id);
    CHECK(all.value().ps.nodes[tout].label->is_literal());
  }
  auto after = conclusions_of(all.value());
  REQUIRE(after.ok());
  CHECK(before.value() == after.value());
  CHECK(validate(all.value().ps).ok());
}

TEST_CASE("conclusions_of anchors at the output") {
  ProofNet ax = build_axiom(parse_linear("s")).value();
  auto c = conclusions_of(ax);
  REQUIRE(c.ok());
  REQUIRE(c.value().size() == 2);
  CHECK(c.value()[0].str() == "s~");
  CHECK(c.value()[1].str() == "s");

  auto net5b = validate(parse_structure(kNet5b)).value();
  auto c2 = conclusions_of(net5b);
  REQUIRE(c2.ok());
  CHECK(c2.value()[0].str() == "s~*(s|np~)");
  CHECK(c2.value()[3].str() == "s");

  // unlabelled frames must be labelled first
  ProofStructure frame = parse_structure("s~#1*(O#2|I#3), O#3*(I#4*O#5), (I#5|O#4)*I#2, s#1");
  ProofNet fnet = validate(frame).value();
  auto c3 = conclusions_of(fnet);
  REQUIRE_FALSE(c3.ok());
  CHECK(c3.error().kind == NetErrorKind::Unlabelled);
}

TEST_CASE("substitution preserves validity and witnesses complex axioms") {
  // axiom on x1 instantiated with np*pp becomes a complex axiom
  ProofNet ax = build_axiom(parse_linear("x1"), 1).value();
  Subst sigma;
  sigma.bind(1, parse_category("np*pp"));
  ProofNet inst = apply(sigma, ax);
  CHECK(inst.ps.str() == "(pp~|np~)#1, (np*pp)#1");
  CHECK(validate(inst.ps).ok());
}

TEST_CASE("random nets built by the constructors all validate") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 1000; i++) {
    ProofNet net = random_net(rng, 2 + static_cast<int>(rng() % 6));
    ProofStructure ps = net.ps;
    auto r = validate(ps);
    CHECK(r.ok());
    // exactly one output conclusion
    int outputs = 0;
    for (int c : ps.conclusions)
      if (ps.node_polarity(c) == Polarity::Output) outputs++;
    CHECK(outputs == 1);
  }
}

TEST_CASE("validator agrees with the brute-force deconstruction oracle") {
  std::mt19937 rng(99);
  int disagreements = 0;
  for (int i = 0; i < 400; i++) {
    ProofNet net = random_net(rng, 2 + static_cast<int>(rng() % 5));
    ProofStructure bare = strip_labels(net.ps);
    CHECK(brute_valid(bare));
    CHECK(validate(bare).ok());

    ProofStructure bad = corrupt_tip_swap(bare, rng);
    bool oracle = brute_valid(bad);
    bool ours = validate(bad).ok();
    if (oracle != ours) disagreements++;
  }
  CHECK(disagreements == 0);
}
