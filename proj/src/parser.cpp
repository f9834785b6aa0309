#include "lambek/parser.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <cstdlib>
#include <cstdio>
#include <set>

namespace lambek {

std::string ParserError::what() const {
  const char* k = "";
  switch (kind) {
    case Kind::UnknownWord: k = "UnknownWord"; break;
    case Kind::ArityMismatch: k = "ArityMismatch"; break;
    case Kind::NoMatch: k = "NoMatch"; break;
    case Kind::CapExceeded: k = "CapExceeded"; break;
    case Kind::TooManyItems: k = "TooManyItems"; break;
  }
  return detail.empty() ? std::string(k) : std::string(k) + ": " + detail;
}

namespace {

using Bindings = std::map<std::uint64_t, Category>;

// One-sided matching: variables of `pattern` bind to subtrees of the frozen
// `target` (identity bindings included); `trail` records additions for
// backtracking.
bool match_onto(const Category& pattern, const Category& target, Bindings& bound,
                std::vector<std::uint64_t>& trail) {
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
  return match_onto(pattern.left(), target.left(), bound, trail) &&
         match_onto(pattern.right(), target.right(), bound, trail);
}

bool assign_words(const std::vector<Category>& patterns, const Grammar& g,
                  const std::vector<std::string>& sentence, std::size_t word, Bindings& bound,
                  std::vector<std::uint64_t>& trail) {
  if (word == sentence.size()) return true;
  const auto& choices = g.categories(sentence[word]);
  // patterns[j] belongs to word n-1-j, so word i matches pattern n-1-i.
  const Category& pattern = patterns[sentence.size() - 1 - word];
  for (const auto& target : choices) {
    std::size_t mark = trail.size();
    if (match_onto(pattern, target, bound, trail) &&
        assign_words(patterns, g, sentence, word + 1, bound, trail))
      return true;
    while (trail.size() > mark) {
      bound.erase(trail.back());
      trail.pop_back();
    }
  }
  return false;
}

}  // namespace

Result<Subst, ParserError> match_frame(const Grammar& g, const std::vector<std::string>& sentence,
                                       const Frame& f) {
  using R = Result<Subst, ParserError>;
  for (const auto& w : sentence)
    if (!g.has_word(w) || g.categories(w).empty())
      return R(ParserError{ParserError::Kind::UnknownWord, w});
  if (f.word_count() != sentence.size())
    return R(ParserError{ParserError::Kind::ArityMismatch,
                         std::to_string(f.word_count()) + " conclusions for " +
                             std::to_string(sentence.size()) + " words"});

  FreshCounter fresh;
  auto labelled = most_general_labelling(f, fresh);
  if (!labelled)
    return R(ParserError{ParserError::Kind::ArityMismatch,
                         "frame does not validate: " + labelled.error().what()});
  std::vector<Category> patterns;
  for (std::size_t j = 0; j + 1 < labelled.value().ps.conclusions.size(); j++) {
    auto label = labelled.value().ps.node_label(labelled.value().ps.conclusions[j]);
    auto cat = from_linear(*label);
    assert(cat.ok() && cat.value().second == Polarity::Input);
    patterns.push_back(cat.value().first);
  }

  Bindings bound;
  std::vector<std::uint64_t> trail;
  if (!assign_words(patterns, g, sentence, 0, bound, trail))
    return R(ParserError{ParserError::Kind::NoMatch, "no lexicon choice matches the frame"});
  Subst sigma;
  for (const auto& [v, c] : bound) sigma.bind(v, c);
  return R(sigma);
}

// ---------------------------------------------------------------------------
// Exhaustive parsing

namespace {

// Matching search over the conclusion forest: nodes are visited in display
// order; each node either descends into its children or becomes an axiom tip
// that matches the top of the open-tip stack or opens a new one. The stack
// discipline enumerates exactly the cyclically planar matchings; descending
// first yields maximal-depth (atomic) matchings first.
struct MatchSearch {
  struct FNode {
    Linear f;
    int left = -1, right = -1;
  };
  std::vector<FNode> arena;
  std::vector<int> roots;
  std::size_t max_candidates;
  std::size_t candidates = 0;
  std::size_t steps = 0;
  bool capped = false;
  std::vector<std::pair<int, int>> pairs;  // matched node pairs
  std::vector<Frame> frames;
  std::set<std::string> seen;

  int build(const Linear& f) {
    FNode n;
    n.f = f;
    if (!f.is_literal()) {
      n.left = build(f.left());
      n.right = build(f.right());
    }
    arena.push_back(n);
    return static_cast<int>(arena.size()) - 1;
  }

  void run(const std::vector<Linear>& conclusions) {
    for (const auto& c : conclusions) roots.push_back(build(c));
    std::vector<int> order(roots.rbegin(), roots.rend());  // stack: first root on top
    std::vector<int> open;
    explore(order, open);
  }

  void explore(std::vector<int>& pending, std::vector<int>& open) {
    if (capped) return;
    if (++steps > max_candidates * 64) {
      capped = true;
      return;
    }
    if (pending.empty()) {
      if (open.empty()) emit();
      return;
    }
    int node = pending.back();
    pending.pop_back();
    const FNode& n = arena[static_cast<std::size_t>(node)];

    if (n.left >= 0) {
      pending.push_back(n.right);
      pending.push_back(n.left);
      explore(pending, open);
      pending.pop_back();
      pending.pop_back();
    }
    // close against the stack top
    if (!open.empty() && arena[static_cast<std::size_t>(open.back())].f == dual(n.f)) {
      int partner = open.back();
      open.pop_back();
      pairs.push_back({partner, node});
      explore(pending, open);
      pairs.pop_back();
      open.push_back(partner);
    }
    // open a new tip
    open.push_back(node);
    explore(pending, open);
    open.pop_back();

    pending.push_back(node);
  }

  void emit() {
    if (candidates >= max_candidates) {
      capped = true;
      return;
    }
    candidates++;
    // Materialize the structure with tips at the matched nodes.
    std::map<int, int> tip_axiom;
    int next_id = 1;
    for (const auto& [a, b] : pairs) {
      tip_axiom[a] = next_id;
      tip_axiom[b] = next_id;
      next_id++;
    }
    ProofStructure ps;
    auto copy = [&](int node, auto&& self) -> int {
      const FNode& n = arena[static_cast<std::size_t>(node)];
      auto it = tip_axiom.find(node);
      if (it != tip_axiom.end()) return ps.add_tip(it->second, *n.f.polarity(), n.f);
      int l = self(n.left, self);
      int r = self(n.right, self);
      return ps.add_node(n.f.conn(), l, r);
    };
    for (int r : roots) ps.conclusions.push_back(copy(r, copy));

    auto net = validate(ps);
    if (!net) return;
    auto frame = erase(net.value());
    if (!frame) return;
    std::string key = frame_canonical_key(frame.value());
    if (seen.insert(key).second) frames.push_back(frame.value());
  }
};

}  // namespace

Result<std::vector<Frame>, ParserError> parse_sentence(const Grammar& g,
                                                       const std::vector<std::string>& sentence,
                                                       const SearchLimits& limits) {
  using R = Result<std::vector<Frame>, ParserError>;
  for (const auto& w : sentence)
    if (!g.has_word(w) || g.categories(w).empty())
      return R(ParserError{ParserError::Kind::UnknownWord, w});

  std::size_t n = sentence.size();
  std::vector<Frame> all;
  std::set<std::string> seen;

  // Cartesian product over lexicon choices.
  std::vector<std::size_t> choice(n, 0);
  for (;;) {
    std::vector<Linear> conclusions;
    for (std::size_t j = 0; j < n; j++) {
      const auto& cats = g.categories(sentence[n - 1 - j]);
      conclusions.push_back(to_linear(cats[choice[n - 1 - j]], Polarity::Input));
    }
    conclusions.push_back(Linear::positive(Atom::s()));

    MatchSearch search;
    search.max_candidates = limits.max_candidates;
    search.run(conclusions);
    if (search.capped)
      return R(ParserError{ParserError::Kind::CapExceeded,
                           "matching search exceeded " + std::to_string(limits.max_candidates) +
                               " candidates"});
    for (auto& f : search.frames) {
      std::string key = frame_canonical_key(f);
      if (seen.insert(key).second) all.push_back(std::move(f));
    }

    // next choice vector
    std::size_t i = 0;
    for (; i < n; i++) {
      if (++choice[i] < g.categories(sentence[i]).size()) break;
      choice[i] = 0;
    }
    if (i == n) break;
  }

  std::sort(all.begin(), all.end(),
            [](const Frame& a, const Frame& b) { return frame_canonical_key(a) < frame_canonical_key(b); });
  return R(std::move(all));
}

// ---------------------------------------------------------------------------
// Frame-language enumeration

namespace {

// A reachable conclusion list: output formula plus the inputs that follow it
// in cyclic order, interned over the subformula universe. Existence of one
// net with these conclusions is all that matters, so states are deduplicated.
//
// Every conclusion of a sub-net embeds into the final forest, whose trees are
// one conclusion per word plus the bare s output. A join's arguments become
// children of the new link, hence proper subtrees of some word tree. Each
// input is therefore tagged: W marks a finished word conclusion (it persists
// to the end and is never joined again), P marks proper-subtree material that
// a later join must consume. Tags give an exact running word count and a
// sound lower bound on the words any completion needs, which prunes states
// that cannot fit the length bound long before the atom budget would.
struct Item {
  int out;
  std::vector<int> inputs;
  std::vector<unsigned char> word_tag;  // 1 = W, 0 = P
  std::size_t atoms;
  std::size_t words;  // number of W inputs

  std::vector<int> key() const {
    std::vector<int> k = inputs;
    for (std::size_t i = 0; i < word_tag.size(); i++)
      if (word_tag[i]) k.push_back(static_cast<int>(i) + 1000000);
    k.push_back(-1 - out);
    return k;
  }
};

struct Closure {
  // Interned subformula universe.
  std::vector<Linear> formulas;
  std::map<std::string, int> intern_ids;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<int>> tensor_of, par_of;  // -1 when outside the universe
  std::vector<std::tuple<int, int, int>> tensor_edges;  // (left, right, result)
  std::vector<int> dual_of;
  std::vector<char> lexical;  // the dual translation of a lexicon category
  // Host packing: every P input embeds as a proper node of some word tree,
  // and P inputs sharing one host instance must occupy disjoint subtrees.
  // Per word-tree type, the maximal antichains of proper nodes give the
  // possible contents of one host; the minimum number of hosts covering a
  // P multiset is computed exactly with memoization.
  std::vector<std::vector<std::map<int, int>>> tree_configs;
  std::vector<std::vector<std::size_t>> trees_hosting;  // formula -> tree types
  std::map<std::vector<int>, std::size_t> packing_memo;

  std::vector<Item> items;
  std::set<std::vector<int>> item_keys;
  std::map<int, std::vector<std::size_t>> by_out;      // output id -> item index
  std::map<int, std::vector<std::size_t>> by_p_input;  // P-input id -> item index
  std::size_t max_atoms = 0;
  std::size_t max_words = 0;
  std::size_t max_items = 0;
  bool overflow = false;

  int intern(const Linear& f) {
    auto [it, inserted] = intern_ids.emplace(f.str(), static_cast<int>(formulas.size()));
    if (inserted) formulas.push_back(f);
    return it->second;
  }

  void add_subformulas(const Linear& f) {
    intern(f);
    if (f.is_literal()) return;
    add_subformulas(f.left());
    add_subformulas(f.right());
  }

  void build_tables(const std::vector<Linear>& word_trees) {
    std::size_t n = formulas.size();
    sizes.resize(n);
    dual_of.assign(n, -1);
    lexical.assign(n, 0);
    tensor_of.assign(n, std::vector<int>(n, -1));
    par_of.assign(n, std::vector<int>(n, -1));
    for (std::size_t i = 0; i < n; i++) {
      sizes[i] = formulas[i].size();
      auto d = intern_ids.find(dual(formulas[i]).str());
      if (d != intern_ids.end()) dual_of[i] = d->second;
    }
    for (std::size_t i = 0; i < n; i++) {
      const Linear& f = formulas[i];
      if (f.is_literal()) continue;
      int l = intern_ids.at(f.left().str());
      int r = intern_ids.at(f.right().str());
      if (f.conn() == LConn::Tensor) {
        tensor_of[static_cast<std::size_t>(l)][static_cast<std::size_t>(r)] = static_cast<int>(i);
        tensor_edges.push_back({l, r, static_cast<int>(i)});
      } else {
        par_of[static_cast<std::size_t>(l)][static_cast<std::size_t>(r)] = static_cast<int>(i);
      }
    }
    trees_hosting.assign(n, {});
    tree_configs.clear();
    for (std::size_t w = 0; w < word_trees.size(); w++) {
      lexical[static_cast<std::size_t>(intern_ids.at(word_trees[w].str()))] = 1;
      // Maximal antichains of proper nodes: either the node alone, or the
      // combinations of the children's antichains.
      auto antichains = [&](const Linear& f, bool root, auto&& self) -> std::vector<std::map<int, int>> {
        std::vector<std::map<int, int>> out;
        if (!f.is_literal()) {
          auto ls = self(f.left(), false, self);
          auto rs = self(f.right(), false, self);
          for (const auto& l : ls)
            for (const auto& r : rs) {
              std::map<int, int> merged = l;
              for (const auto& [id, c] : r) merged[id] += c;
              out.push_back(std::move(merged));
            }
        }
        if (!root) {
          std::map<int, int> self_only;
          self_only[intern_ids.at(f.str())] = 1;
          out.push_back(std::move(self_only));
        }
        return out;
      };
      std::vector<std::map<int, int>> configs = antichains(word_trees[w], true, antichains);
      std::sort(configs.begin(), configs.end());
      configs.erase(std::unique(configs.begin(), configs.end()), configs.end());
      std::set<int> covered;
      for (const auto& c : configs)
        for (const auto& [id, cnt] : c) covered.insert(id);
      for (int id : covered) trees_hosting[static_cast<std::size_t>(id)].push_back(tree_configs.size());
      tree_configs.push_back(std::move(configs));
    }
  }

  static constexpr std::size_t kInfinity = 1000000;

  std::size_t min_hosts(std::vector<int> multiset_key, std::map<int, std::size_t> remaining) {
    if (remaining.empty()) return 0;
    if (auto it = packing_memo.find(multiset_key); it != packing_memo.end()) return it->second;
    int f = remaining.begin()->first;
    std::size_t best = kInfinity;
    for (std::size_t t : trees_hosting[static_cast<std::size_t>(f)]) {
      for (const auto& config : tree_configs[t]) {
        auto slot = config.find(f);
        if (slot == config.end()) continue;
        std::map<int, std::size_t> next = remaining;
        for (const auto& [id, cap] : config) {
          auto it = next.find(id);
          if (it == next.end()) continue;
          if (it->second <= static_cast<std::size_t>(cap))
            next.erase(it);
          else
            it->second -= static_cast<std::size_t>(cap);
        }
        std::vector<int> key;
        for (const auto& [id, c] : next) {
          key.push_back(id);
          key.push_back(static_cast<int>(c));
        }
        std::size_t sub = min_hosts(std::move(key), std::move(next));
        if (sub + 1 < best) best = sub + 1;
      }
    }
    packing_memo.emplace(std::move(multiset_key), best);
    return best;
  }

  // W inputs are one word each; the P multiset needs at least min_hosts
  // further words, all distinct from the W ones.
  bool within_word_bound(const Item& item) {
    if (item.words > max_words) return false;
    std::map<int, std::size_t> p_counts;
    for (std::size_t i = 0; i < item.inputs.size(); i++)
      if (!item.word_tag[i]) p_counts[item.inputs[i]]++;
    if (p_counts.empty()) return true;
    std::vector<int> key;
    for (const auto& [id, c] : p_counts) {
      key.push_back(id);
      key.push_back(static_cast<int>(c));
    }
    return item.words + min_hosts(std::move(key), std::move(p_counts)) <= max_words;
  }

  void add_item(Item item) {
    if (overflow) return;
    if (item.atoms > max_atoms) return;
    if (!within_word_bound(item)) return;
    if (!item_keys.insert(item.key()).second) return;
    if (items.size() >= max_items) {
      overflow = true;
      return;
    }
    std::size_t idx = items.size();
    if (std::getenv("LAMBEK_DUMP_ITEMS") && idx % 5000 == 0) {
      std::string s = std::to_string(idx) + ": w=" + std::to_string(item.words) + " " +
                      formulas[static_cast<std::size_t>(item.out)].str() + " <-";
      for (std::size_t i = 0; i < item.inputs.size(); i++)
        s += std::string(" ") + (item.word_tag[i] ? "W[" : "P[") +
             formulas[static_cast<std::size_t>(item.inputs[i])].str() + "]";
      fprintf(stderr, "%s\n", s.c_str());
    }
    by_out[item.out].push_back(idx);
    std::set<int> p_ids;
    for (std::size_t i = 0; i < item.inputs.size(); i++)
      if (!item.word_tag[i]) p_ids.insert(item.inputs[i]);
    for (int id : p_ids) by_p_input[id].push_back(idx);
    items.push_back(std::move(item));
  }

  // A new input-polar conclusion is either a finished word conclusion or
  // material for a later join; both readings are explored when available.
  template <typename Fill>
  void add_with_input_tags(int formula, Fill&& fill) {
    if (lexical[static_cast<std::size_t>(formula)]) {
      Item item = fill(static_cast<unsigned char>(1));
      item.words += 1;
      add_item(std::move(item));
    }
    if (!trees_hosting[static_cast<std::size_t>(formula)].empty())
      add_item(fill(static_cast<unsigned char>(0)));
  }

  void try_pars(const Item& a) {
    std::size_t k = a.inputs.size();
    if (k + 1 < 3) return;
    auto par_at = [this](int x, int y) {
      return par_of[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    };
    for (std::size_t i = 0; i + 1 < k; i++) {
      if (a.word_tag[i] || a.word_tag[i + 1]) continue;
      int p = par_at(a.inputs[i], a.inputs[i + 1]);
      if (p < 0) continue;
      add_with_input_tags(p, [&](unsigned char tag) {
        Item next = a;
        next.inputs[i] = p;
        next.word_tag[i] = tag;
        next.inputs.erase(next.inputs.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        next.word_tag.erase(next.word_tag.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        return next;
      });
    }
    if (!a.word_tag.front()) {
      if (int p = par_at(a.out, a.inputs.front()); p >= 0) {
        Item next{p,
                  {a.inputs.begin() + 1, a.inputs.end()},
                  {a.word_tag.begin() + 1, a.word_tag.end()},
                  a.atoms,
                  a.words};
        add_item(std::move(next));
      }
    }
    if (!a.word_tag.back()) {
      if (int p = par_at(a.inputs.back(), a.out); p >= 0) {
        Item next{p,
                  {a.inputs.begin(), a.inputs.end() - 1},
                  {a.word_tag.begin(), a.word_tag.end() - 1},
                  a.atoms,
                  a.words};
        add_item(std::move(next));
      }
    }
  }

  void join_case3(const Item& a, const Item& b, int t) {
    if (a.atoms + b.atoms > max_atoms || a.words + b.words > max_words) return;
    Item next{t, b.inputs, b.word_tag, a.atoms + b.atoms, a.words + b.words};
    next.inputs.insert(next.inputs.end(), a.inputs.begin(), a.inputs.end());
    next.word_tag.insert(next.word_tag.end(), a.word_tag.begin(), a.word_tag.end());
    add_item(std::move(next));
  }

  // a.out * b.inputs[k]; the joined P input of b is consumed.
  void join_case1(const Item& a, const Item& b, int y, int t) {
    if (a.atoms + b.atoms > max_atoms || a.words + b.words > max_words) return;
    for (std::size_t k = 0; k < b.inputs.size(); k++) {
      if (b.inputs[k] != y || b.word_tag[k]) continue;
      add_with_input_tags(t, [&](unsigned char tag) {
        Item next{b.out, {}, {}, a.atoms + b.atoms, a.words + b.words};
        auto kp = static_cast<std::ptrdiff_t>(k);
        next.inputs.assign(b.inputs.begin(), b.inputs.begin() + kp);
        next.word_tag.assign(b.word_tag.begin(), b.word_tag.begin() + kp);
        next.inputs.insert(next.inputs.end(), a.inputs.begin(), a.inputs.end());
        next.word_tag.insert(next.word_tag.end(), a.word_tag.begin(), a.word_tag.end());
        next.inputs.push_back(t);
        next.word_tag.push_back(tag);
        next.inputs.insert(next.inputs.end(), b.inputs.begin() + kp + 1, b.inputs.end());
        next.word_tag.insert(next.word_tag.end(), b.word_tag.begin() + kp + 1, b.word_tag.end());
        return next;
      });
    }
  }

  // a.inputs[l] * b.out; the joined P input of a is consumed.
  void join_case2(const Item& a, const Item& b, int x, int t) {
    if (a.atoms + b.atoms > max_atoms || a.words + b.words > max_words) return;
    for (std::size_t l = 0; l < a.inputs.size(); l++) {
      if (a.inputs[l] != x || a.word_tag[l]) continue;
      add_with_input_tags(t, [&](unsigned char tag) {
        Item next{a.out, {}, {}, a.atoms + b.atoms, a.words + b.words};
        auto lp = static_cast<std::ptrdiff_t>(l);
        next.inputs.assign(a.inputs.begin(), a.inputs.begin() + lp);
        next.word_tag.assign(a.word_tag.begin(), a.word_tag.begin() + lp);
        next.inputs.push_back(t);
        next.word_tag.push_back(tag);
        next.inputs.insert(next.inputs.end(), b.inputs.begin(), b.inputs.end());
        next.word_tag.insert(next.word_tag.end(), b.word_tag.begin(), b.word_tag.end());
        next.inputs.insert(next.inputs.end(), a.inputs.begin() + lp + 1, a.inputs.end());
        next.word_tag.insert(next.word_tag.end(), a.word_tag.begin() + lp + 1, a.word_tag.end());
        return next;
      });
    }
  }

  template <typename Fn>
  void for_partners(const std::map<int, std::vector<std::size_t>>& index, int id, std::size_t limit,
                    Fn&& fn) {
    auto it = index.find(id);
    if (it == index.end()) return;
    for (std::size_t j : it->second) {
      if (j > limit) break;
      fn(j);
      if (overflow) return;
    }
  }

  void saturate(const std::vector<Linear>& word_trees) {
    build_tables(word_trees);
    for (std::size_t i = 0; i < formulas.size(); i++) {
      if (formulas[i].polarity() != Polarity::Output || dual_of[i] < 0) continue;
      int in = dual_of[i];
      add_with_input_tags(in, [&](unsigned char tag) {
        return Item{static_cast<int>(i), {in}, {tag}, 2 * sizes[i], 0};
      });
    }
    for (std::size_t cur = 0; cur < items.size() && !overflow; cur++) {
      Item a = items[cur];
      try_pars(a);
      for (const auto& [x, y, t] : tensor_edges) {
        if (a.out == x) {
          // case 3: partner provides the right output
          for_partners(by_out, y, cur, [&](std::size_t j) {
            Item b = items[j];
            join_case3(a, b, t);
          });
          // case 1: partner holds the P input y
          for_partners(by_p_input, y, cur, [&](std::size_t j) {
            Item b = items[j];
            join_case1(a, b, y, t);
          });
        }
        if (a.out == y) {
          for_partners(by_out, x, cur, [&](std::size_t j) {
            Item b = items[j];
            join_case3(b, a, t);
          });
          // case 2: partner holds the P input x
          for_partners(by_p_input, x, cur, [&](std::size_t j) {
            Item b = items[j];
            join_case2(b, a, x, t);
          });
        }
        // the dual roles with `a` holding the input
        bool a_has_y = false, a_has_x = false;
        for (std::size_t i = 0; i < a.inputs.size(); i++) {
          if (a.word_tag[i]) continue;
          a_has_y |= a.inputs[i] == y;
          a_has_x |= a.inputs[i] == x;
        }
        if (a_has_y)
          for_partners(by_out, x, cur, [&](std::size_t j) {
            Item b = items[j];
            join_case1(b, a, y, t);
          });
        if (a_has_x)
          for_partners(by_out, y, cur, [&](std::size_t j) {
            Item b = items[j];
            join_case2(a, b, x, t);
          });
        if (overflow) break;
      }
    }
  }
};

}  // namespace

Result<std::vector<Example>, ParserError> enumerate_spf(const Grammar& g, std::size_t max_len,
                                                        const EnumerationLimits& limits) {
  using R = Result<std::vector<Example>, ParserError>;

  Closure closure;
  closure.max_items = limits.max_items;
  closure.max_words = max_len;
  std::map<int, std::vector<std::string>> words_for;  // interned -c -> words
  std::vector<Linear> word_trees;
  std::size_t max_cat = 1;
  for (const auto& [word, cats] : g.lexicon()) {
    for (const auto& c : cats) {
      Linear f = to_linear(c, Polarity::Input);
      closure.add_subformulas(f);
      auto& bucket = words_for[closure.intern(f)];
      if (bucket.empty()) word_trees.push_back(f);
      bucket.push_back(word);
      max_cat = std::max(max_cat, c.size());
    }
  }
  Linear s_out = Linear::positive(Atom::s());
  closure.add_subformulas(s_out);
  int s_id = closure.intern(s_out);
  closure.max_atoms = max_len * max_cat + 1;
  closure.saturate(word_trees);
  if (std::getenv("LAMBEK_DUMP_ITEMS")) {
    std::map<std::size_t, int> by_words;
    for (const auto& it : closure.items) by_words[it.words]++;
    fprintf(stderr, "items=%zu\n", closure.items.size());
    for (auto& [w, c] : by_words) fprintf(stderr, "  words=%zu count=%d\n", w, c);
    int shown = 0;
    for (auto it = closure.items.rbegin(); it != closure.items.rend() && shown < 8; ++it, ++shown) {
      std::string s = closure.formulas[static_cast<std::size_t>(it->out)].str() + " <-";
      for (std::size_t i = 0; i < it->inputs.size(); i++)
        s += std::string(" ") + (it->word_tag[i] ? "W[" : "P[") +
             closure.formulas[static_cast<std::size_t>(it->inputs[i])].str() + "]";
      fprintf(stderr, "%s\n", s.c_str());
    }
  }
  if (closure.overflow)
    return R(ParserError{ParserError::Kind::TooManyItems,
                         "conclusion-list closure exceeded " + std::to_string(limits.max_items)});

  // Lexical items: output s, every input a finished word conclusion.
  std::set<std::vector<std::string>> sentences;
  for (const auto& item : closure.items) {
    if (item.out != s_id) continue;
    if (item.inputs.size() > max_len) continue;
    if (item.words != item.inputs.size()) continue;
    std::vector<const std::vector<std::string>*> choices;
    bool lexical = true;
    for (int f : item.inputs) {
      auto it = words_for.find(f);
      if (it == words_for.end()) {
        lexical = false;
        break;
      }
      choices.push_back(&it->second);
    }
    if (!lexical) continue;
    // inputs[j] belongs to word n-1-j.
    std::size_t n = item.inputs.size();
    std::vector<std::size_t> pick(n, 0);
    for (;;) {
      std::vector<std::string> sentence(n);
      for (std::size_t j = 0; j < n; j++) sentence[n - 1 - j] = (*choices[j])[pick[j]];
      sentences.insert(std::move(sentence));
      std::size_t i = 0;
      for (; i < n; i++) {
        if (++pick[i] < choices[i]->size()) break;
        pick[i] = 0;
      }
      if (i == n) break;
    }
  }

  std::vector<std::vector<std::string>> ordered(sentences.begin(), sentences.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  std::vector<Example> out;
  for (const auto& sentence : ordered) {
    SearchLimits sl;
    sl.max_candidates = limits.max_candidates;
    auto frames = parse_sentence(g, sentence, sl);
    if (!frames) return R(frames.error());
    for (const auto& f : frames.value()) out.push_back(Example{sentence, f});
  }
  return R(std::move(out));
}

}  // namespace lambek
