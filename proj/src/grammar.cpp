#include "lambek/grammar.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lambek {

void Grammar::add(const std::string& word, const Category& c) {
  auto& set = lex_[word];
  auto it = std::lower_bound(set.begin(), set.end(), c);
  if (it != set.end() && *it == c) return;
  set.insert(it, c);
}

const std::vector<Category>& Grammar::categories(const std::string& word) const {
  static const std::vector<Category> none;
  auto it = lex_.find(word);
  return it == lex_.end() ? none : it->second;
}

bool Grammar::is_rigid() const { return is_k_valued(1); }

bool Grammar::is_k_valued(std::size_t k) const {
  for (const auto& [w, cats] : lex_)
    if (cats.size() > k) return false;
  return true;
}

std::size_t Grammar::size() const {
  std::size_t n = 0;
  for (const auto& [w, cats] : lex_)
    for (const auto& c : cats) n += c.size();
  return n;
}

std::string Grammar::str() const {
  std::string out;
  for (const auto& [w, cats] : lex_)
    for (const auto& c : cats) out += w + " : " + c.str() + "\n";
  return out;
}

Grammar apply(const Subst& sigma, const Grammar& g) {
  Grammar out;
  for (const auto& [w, cats] : g.lexicon()) {
    if (cats.empty()) {
      out.set_empty(w);
      continue;
    }
    for (const auto& c : cats) out.add(w, sigma(c));
  }
  return out;
}

namespace {

bool renamable(const Atom& a, bool all_atoms) {
  if (a.is_variable()) return true;
  return all_atoms && !a.is_s();
}

// Serialization where committed atoms print their new index and uncommitted
// renamable atoms print tentative indices in order of first occurrence; the
// result is independent of the original names.
void candidate_key(const Category& c, const std::map<Atom, std::uint64_t>& committed,
                   std::uint64_t next, bool all_atoms, std::map<Atom, std::uint64_t>& tentative,
                   std::string& out) {
  if (c.is_atom()) {
    const Atom& a = c.as_atom();
    if (!renamable(a, all_atoms)) {
      out += a.str();
      return;
    }
    auto it = committed.find(a);
    if (it != committed.end()) {
      out += "x" + std::to_string(it->second);
      return;
    }
    auto [t, inserted] = tentative.emplace(a, next + tentative.size());
    out += "x" + std::to_string(t->second);
    return;
  }
  out += "(";
  candidate_key(c.left(), committed, next, all_atoms, tentative, out);
  out += conn_str(c.conn());
  candidate_key(c.right(), committed, next, all_atoms, tentative, out);
  out += ")";
}

void commit_atoms(const Category& c, std::map<Atom, std::uint64_t>& committed, std::uint64_t& next,
                  bool all_atoms) {
  if (c.is_atom()) {
    const Atom& a = c.as_atom();
    if (renamable(a, all_atoms) && !committed.count(a)) committed.emplace(a, next++);
    return;
  }
  commit_atoms(c.left(), committed, next, all_atoms);
  commit_atoms(c.right(), committed, next, all_atoms);
}

Category rename_category(const Category& c, const std::map<Atom, std::uint64_t>& committed,
                         bool all_atoms) {
  if (c.is_atom()) {
    const Atom& a = c.as_atom();
    if (renamable(a, all_atoms)) return Category::atom(Atom::variable(committed.at(a)));
    return c;
  }
  return Category::make(c.conn(), rename_category(c.left(), committed, all_atoms),
                        rename_category(c.right(), committed, all_atoms));
}

}  // namespace

Grammar canonical_form(const Grammar& g, bool all_atoms) {
  Grammar out;
  std::map<Atom, std::uint64_t> committed;
  std::uint64_t next = 1;
  for (const auto& [w, cats] : g.lexicon()) {
    if (cats.empty()) {
      out.set_empty(w);
      continue;
    }
    std::vector<Category> remaining = cats;
    while (!remaining.empty()) {
      std::size_t best = 0;
      std::string best_key;
      for (std::size_t i = 0; i < remaining.size(); i++) {
        std::map<Atom, std::uint64_t> tentative;
        std::string key;
        candidate_key(remaining[i], committed, next, all_atoms, tentative, key);
        if (i == 0 || key < best_key) {
          best = i;
          best_key = std::move(key);
        }
      }
      commit_atoms(remaining[best], committed, next, all_atoms);
      out.add(w, rename_category(remaining[best], committed, all_atoms));
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }
  }
  return out;
}

bool equal_up_to_renaming(const Grammar& a, const Grammar& b) {
  return canonical_form(a, false) == canonical_form(b, false);
}

bool equal_up_to_atom_renaming(const Grammar& a, const Grammar& b) {
  return canonical_form(a, true) == canonical_form(b, true);
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Grammar parse_grammar(std::istream& in) {
  Grammar g;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("grammar line " + std::to_string(lineno) + ": expected `word : category`");
    std::string word = trim(line.substr(0, colon));
    std::string cat = trim(line.substr(colon + 1));
    if (word.empty() || word.find_first_of(" \t") != std::string::npos)
      throw std::runtime_error("grammar line " + std::to_string(lineno) + ": bad word token");
    try {
      g.add(word, parse_category(cat));
    } catch (const std::exception& e) {
      throw std::runtime_error("grammar line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return g;
}

Grammar parse_grammar_text(const std::string& text) {
  std::istringstream in(text);
  return parse_grammar(in);
}

Grammar load_grammar_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open grammar file: " + path);
  return parse_grammar(in);
}

}  // namespace lambek
