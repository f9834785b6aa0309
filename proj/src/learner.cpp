#include "lambek/learner.hpp"

#include <algorithm>
#include <cassert>
#include <random>

namespace lambek {

std::string ConvergeError::what() const {
  return (kind == Kind::EmptyLanguageBelowBound ? std::string("EmptyLanguageBelowBound")
                                                : std::string("Search")) +
         (detail.empty() ? "" : ": " + detail);
}

std::string example_key(const Example& e) {
  std::string k;
  for (const auto& w : e.sentence) k += w + " ";
  return k + "| " + frame_canonical_key(e.frame);
}

std::vector<Example> dedup_examples(const std::vector<Example>& examples) {
  std::vector<Example> out;
  std::set<std::string> seen;
  for (const auto& e : examples)
    if (seen.insert(example_key(e)).second) out.push_back(e);
  return out;
}

Grammar gf(const std::vector<Example>& examples, FreshCounter& fresh) {
  Grammar g;
  for (const auto& e : examples) {
    auto net = most_general_labelling(e.frame, fresh);
    assert(net.ok() && "frames are validated on construction");
    const ProofStructure& ps = net.value().ps;
    std::size_t n = e.sentence.size();
    for (std::size_t j = 0; j < n; j++) {
      auto label = ps.node_label(ps.conclusions[j]);
      auto cat = from_linear(*label);
      assert(cat.ok() && cat.value().second == Polarity::Input);
      g.add(e.sentence[n - 1 - j], cat.value().first);
    }
  }
  return g;
}

namespace {

// Global mgu with the footnote policy: a word whose categories do not unify
// is dropped (empty entry) and contributes no equations.
std::pair<Grammar, std::vector<std::string>> unify_dropping(Grammar g,
                                                            std::set<std::string> pre_dropped) {
  std::vector<std::string> dropped(pre_dropped.begin(), pre_dropped.end());
  for (const auto& w : pre_dropped) g.set_empty(w);
  for (;;) {
    auto r = unify_grammar(g);
    if (r.ok()) return {r.value().grammar, dropped};
    dropped.push_back(r.error().word);
    g.set_empty(r.error().word);
  }
}

}  // namespace

RgResult rg(const std::vector<Example>& examples) {
  FreshCounter fresh;
  Grammar general = gf(dedup_examples(examples), fresh);
  auto [grammar, dropped] = unify_dropping(std::move(general), {});
  RgResult out;
  out.grammar = canonicalize(grammar);
  out.dropped = std::move(dropped);
  std::sort(out.dropped.begin(), out.dropped.end());
  return out;
}

bool Phi::observe(const Example& e) {
  if (!seen_.insert(example_key(e)).second) return false;
  Grammar addition = gf({e}, fresh_);
  Grammar merged = current_;
  for (const auto& [w, cats] : addition.lexicon())
    for (const auto& c : cats) merged.add(w, c);
  Grammar before = current_;
  reunify(std::move(merged));
  return !(canonicalize(before) == canonicalize(current_));
}

void Phi::reunify(Grammar merged) {
  auto [grammar, dropped] = unify_dropping(std::move(merged), dropped_);
  for (const auto& w : dropped) dropped_.insert(w);
  current_ = std::move(grammar);
}

bool Phi::generates(const Example& e) const {
  auto r = match_frame(current_, e.sentence, e.frame);
  return r.ok();
}

std::optional<Subst> subsumes(const Grammar& h, const Grammar& g) {
  // Depth-first over words; within a word, an injective assignment of h's
  // categories onto g's, all under one global binding map.
  using Bindings = std::map<std::uint64_t, Category>;
  Bindings bound;
  std::vector<std::uint64_t> trail;

  auto match = [&](const Category& pattern, const Category& target, auto&& self) -> bool {
    if (pattern.is_atom()) {
      const Atom& a = pattern.as_atom();
      if (a.is_constant()) return target.is_atom() && target.as_atom() == a;
      auto it = bound.find(a.var_index());
      if (it != bound.end()) return it->second == target;
      bound.emplace(a.var_index(), target);
      trail.push_back(a.var_index());
      return true;
    }
    if (target.is_atom() || target.conn() != pattern.conn()) return false;
    return self(pattern.left(), target.left(), self) && self(pattern.right(), target.right(), self);
  };

  std::vector<std::pair<const std::string*, const std::vector<Category>*>> words;
  for (const auto& [w, cats] : h.lexicon()) {
    if (cats.empty()) continue;
    if (!g.has_word(w) || g.categories(w).empty()) return std::nullopt;
    words.push_back({&w, &cats});
  }

  auto solve = [&](std::size_t wi, auto&& self) -> bool {
    if (wi == words.size()) return true;
    const auto& hcats = *words[wi].second;
    const auto& gcats = g.categories(*words[wi].first);
    if (hcats.size() > gcats.size()) return false;
    std::vector<bool> used(gcats.size(), false);
    auto assign = [&](std::size_t ci, auto&& aself) -> bool {
      if (ci == hcats.size()) return self(wi + 1, self);
      for (std::size_t t = 0; t < gcats.size(); t++) {
        if (used[t]) continue;
        std::size_t mark = trail.size();
        used[t] = true;
        if (match(hcats[ci], gcats[t], match) && aself(ci + 1, aself)) return true;
        used[t] = false;
        while (trail.size() > mark) {
          bound.erase(trail.back());
          trail.pop_back();
        }
      }
      return false;
    };
    return assign(0, assign);
  };

  if (!solve(0, solve)) return std::nullopt;
  Subst sigma;
  for (const auto& [v, c] : bound) sigma.bind(v, c);
  return sigma;
}

PropertyReport check_learner_properties(const std::vector<Example>& trace) {
  PropertyReport report;
  if (trace.empty()) return report;

  Phi phi;
  std::vector<Grammar> hypotheses;
  std::vector<Example> seen;
  for (const auto& e : trace) {
    bool member_before = !phi.raw_grammar().empty() && phi.generates(e);
    Grammar before = phi.grammar();
    phi.observe(e);
    Grammar after = phi.grammar();
    if (member_before && !(before == after)) {
      report.conservative = false;
      report.notes.push_back("hypothesis changed on a generated example");
    }
    seen.push_back(e);
    for (const auto& past : seen) {
      if (!phi.generates(past)) {
        report.consistent = false;
        report.notes.push_back("a seen example is not generated by the current hypothesis");
        break;
      }
    }
    hypotheses.push_back(after);
  }

  // Batch equals incremental.
  RgResult batch = rg(trace);
  if (!equal_up_to_renaming(batch.grammar, phi.grammar())) {
    report.incremental = false;
    report.notes.push_back("batch and incremental hypotheses differ");
  }

  // Set-drivenness: replay permutations (all of them when small), plus a
  // duplicated trace.
  std::vector<Example> distinct = dedup_examples(trace);
  Grammar reference = phi.grammar();
  std::vector<std::size_t> idx(distinct.size());
  for (std::size_t i = 0; i < idx.size(); i++) idx[i] = i;
  std::size_t permutations = 0;
  do {
    Phi replay;
    for (auto i : idx) replay.observe(distinct[i]);
    if (!equal_up_to_renaming(replay.grammar(), reference)) {
      report.set_driven = false;
      report.notes.push_back("a permutation of the examples yields a different grammar");
      break;
    }
    permutations++;
    if (idx.size() > 4 && permutations >= 24) break;  // sampled beyond 4 examples
  } while (std::next_permutation(idx.begin(), idx.end()));
  {
    Phi doubled;
    for (const auto& e : trace) doubled.observe(e);
    for (const auto& e : trace) doubled.observe(e);
    if (!equal_up_to_renaming(doubled.grammar(), reference)) {
      report.set_driven = false;
      report.notes.push_back("repeating the trace changes the grammar");
    }
  }

  // The subsumption chain over prefixes.
  for (std::size_t i = 1; i < trace.size(); i++) {
    RgResult a = rg(std::vector<Example>(trace.begin(), trace.begin() + static_cast<std::ptrdiff_t>(i)));
    RgResult b = rg(std::vector<Example>(trace.begin(), trace.begin() + static_cast<std::ptrdiff_t>(i) + 1));
    if (!subsumes(a.grammar, b.grammar)) {
      report.chain_monotone = false;
      report.notes.push_back("prefix " + std::to_string(i) + " is not subsumed by its successor");
    }
  }
  return report;
}

namespace {

Grammar nonempty_view(const Grammar& g) {
  Grammar out;
  for (const auto& [w, cats] : g.lexicon())
    for (const auto& c : cats) out.add(w, c);
  return out;
}

Grammar restrict_to(const Grammar& g, const std::set<std::string>& words) {
  Grammar out;
  for (const auto& [w, cats] : g.lexicon()) {
    if (!words.count(w)) continue;
    for (const auto& c : cats) out.add(w, c);
  }
  return out;
}

}  // namespace

Result<ConvergenceReport, ConvergeError> converge(const Grammar& target, std::size_t max_len,
                                                  std::optional<unsigned> shuffle_seed,
                                                  const EnumerationLimits& limits) {
  using R = Result<ConvergenceReport, ConvergeError>;
  auto stream = enumerate_spf(target, max_len, limits);
  if (!stream)
    return R(ConvergeError{ConvergeError::Kind::Search, stream.error().what()});
  std::vector<Example> examples = stream.value();
  if (examples.empty())
    return R(ConvergeError{ConvergeError::Kind::EmptyLanguageBelowBound,
                           "the grammar generates no frame with at most " + std::to_string(max_len) +
                               " words"});
  if (shuffle_seed) {
    std::mt19937 rng(*shuffle_seed);
    std::shuffle(examples.begin(), examples.end(), rng);
  }

  ConvergenceReport report;
  report.example_count = examples.size();

  Phi phi;
  std::set<std::string> seen_words;
  report.chain_ok = true;
  Grammar previous = phi.grammar();
  bool have_previous = false;
  for (std::size_t i = 0; i < examples.size(); i++) {
    for (const auto& w : examples[i].sentence) seen_words.insert(w);
    bool changed = phi.observe(examples[i]);
    if (changed) report.stabilization_index = i + 1;
    Grammar current = nonempty_view(phi.raw_grammar());
    if (have_previous && !subsumes(previous, current)) {
      report.chain_ok = false;
      report.notes.push_back("chain break at example " + std::to_string(i + 1));
    }
    if (!subsumes(current, target)) {
      report.chain_ok = false;
      report.notes.push_back("hypothesis " + std::to_string(i + 1) + " not subsumed by the target");
    }
    previous = std::move(current);
    have_previous = true;
  }

  // The full finite language below the bound has been presented; repeats are
  // ignored by the set-driven learner, so the hypothesis is final.
  report.stabilized = true;
  report.final_grammar = phi.grammar();

  if (!phi.dropped().empty()) {
    report.notes.push_back("dropped words: " + std::to_string(phi.dropped().size()));
    report.grammar_equal = false;
  } else {
    Grammar goal = restrict_to(target, seen_words);
    report.grammar_equal = equal_up_to_atom_renaming(nonempty_view(phi.raw_grammar()), goal);
  }
  for (const auto& [w, cats] : target.lexicon())
    if (!seen_words.count(w))
      report.notes.push_back("target word never observed below the bound: " + w);

  auto learned_stream = enumerate_spf(nonempty_view(phi.raw_grammar()), max_len, limits);
  if (!learned_stream)
    return R(ConvergeError{ConvergeError::Kind::Search, learned_stream.error().what()});
  std::set<std::string> a, b;
  for (const auto& e : examples) a.insert(example_key(e));
  for (const auto& e : learned_stream.value()) b.insert(example_key(e));
  report.language_match = (a == b);
  return R(std::move(report));
}

}  // namespace lambek
