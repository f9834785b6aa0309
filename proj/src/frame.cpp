#include "lambek/frame.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lambek {

Result<Frame, NetError> erase(const ProofNet& p) {
  using R = Result<Frame, NetError>;
  if (!p.ps.labelled())
    return R(NetError{NetErrorKind::Unlabelled, "erasure needs a labelled net"});
  int out = p.output();
  if (out < 0) return R(NetError{NetErrorKind::NotIntuitionistic, "no output conclusion"});
  int outroot = p.ps.conclusions[static_cast<std::size_t>(out)];
  const PSNode& n = p.ps.nodes[outroot];
  Linear s_out = Linear::positive(Atom::s());
  if (!n.is_tip || !n.label || *n.label != s_out)
    return R(NetError{NetErrorKind::OutputNotS, "output conclusion is not the constant s"});

  Frame f;
  f.ps = p.ps;
  f.s_axiom = n.axiom_id;
  for (auto& node : f.ps.nodes) {
    if (!node.is_tip) continue;
    if (node.axiom_id == f.s_axiom) continue;
    node.label.reset();
  }
  return R(std::move(f));
}

Result<ProofNet, NetError> most_general_labelling(const Frame& f, FreshCounter& fresh) {
  ProofStructure ps = f.ps;
  for (int id : ps.axiom_ids()) {
    if (id == f.s_axiom) continue;
    Atom v = Atom::variable(fresh.next());
    auto [tout, tin] = ps.axiom_tips(id);
    ps.nodes[tout].label = Linear::positive(v);
    ps.nodes[tin].label = Linear::negative(v);
  }
  return validate(ps);
}

std::string frame_canonical_key(const Frame& f) {
  return f.ps.canonical_renumbered().str();
}

bool frame_iso(const Frame& f1, const Frame& f2) {
  return frame_canonical_key(f1) == frame_canonical_key(f2);
}

Result<Frame, NetError> make_frame(const ProofStructure& ps) {
  using R = Result<Frame, NetError>;
  // Exactly the s-axiom tips may carry labels, and they must be s / s~.
  int s_axiom = 0;
  Linear s_out = Linear::positive(Atom::s());
  Linear s_in = Linear::negative(Atom::s());
  for (std::size_t i = 0; i < ps.nodes.size(); i++) {
    const PSNode& n = ps.nodes[i];
    if (!n.is_tip || !n.label) continue;
    if (*n.label != s_out && *n.label != s_in)
      return R(NetError{NetErrorKind::IllPolarized,
                        "frames carry no labels besides the s axiom, found " + n.label->str()});
    if (s_axiom != 0 && s_axiom != n.axiom_id)
      return R(NetError{NetErrorKind::IllPolarized, "two distinct labelled axioms in a frame"});
    s_axiom = n.axiom_id;
  }
  if (s_axiom == 0)
    return R(NetError{NetErrorKind::OutputNotS, "frame lacks the labelled s axiom"});
  auto [tout, tin] = ps.axiom_tips(s_axiom);
  if (!ps.nodes[tout].label || !ps.nodes[tin].label)
    return R(NetError{NetErrorKind::IllPolarized, "the s axiom must be labelled on both tips"});

  auto net = validate(ps);
  if (!net) return R(net.error());
  int out = net.value().output();
  if (ps.conclusions[static_cast<std::size_t>(out)] != tout)
    return R(NetError{NetErrorKind::OutputNotS, "the s output must be the output conclusion"});
  Frame f;
  f.ps = ps;
  f.s_axiom = s_axiom;
  return R(std::move(f));
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<Example> parse_examples(std::istream& in) {
  std::vector<Example> out;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> words;
  bool have_words = false;
  while (std::getline(in, line)) {
    lineno++;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      // '#' inside a frame line is an axiom id marker; comments start a line
      // or follow whitespace-#-space. Keep it simple: a comment '#' must be
      // the first non-blank character.
      std::string t = trim(line);
      if (!t.empty() && t[0] == '#') continue;
    }
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.rfind("words:", 0) == 0) {
      if (have_words)
        throw std::runtime_error("examples line " + std::to_string(lineno) + ": words without a frame");
      words.clear();
      std::istringstream ws(t.substr(6));
      std::string w;
      while (ws >> w) words.push_back(w);
      if (words.empty())
        throw std::runtime_error("examples line " + std::to_string(lineno) + ": empty sentence");
      have_words = true;
      continue;
    }
    if (t.rfind("frame:", 0) == 0) {
      if (!have_words)
        throw std::runtime_error("examples line " + std::to_string(lineno) + ": frame without words");
      ProofStructure ps;
      try {
        ps = parse_structure(trim(t.substr(6)));
      } catch (const std::exception& e) {
        throw std::runtime_error("examples line " + std::to_string(lineno) + ": " + e.what());
      }
      auto frame = make_frame(ps);
      if (!frame)
        throw std::runtime_error("examples line " + std::to_string(lineno) +
                                 ": not a valid frame: " + frame.error().what());
      if (frame.value().word_count() != words.size())
        throw std::runtime_error("examples line " + std::to_string(lineno) + ": frame has " +
                                 std::to_string(frame.value().word_count()) + " word conclusions for " +
                                 std::to_string(words.size()) + " words");
      out.push_back(Example{words, frame.value()});
      have_words = false;
      continue;
    }
    throw std::runtime_error("examples line " + std::to_string(lineno) + ": expected `words:` or `frame:`");
  }
  if (have_words) throw std::runtime_error("examples file ends with words but no frame");
  return out;
}

std::vector<Example> parse_examples_text(const std::string& text) {
  std::istringstream in(text);
  return parse_examples(in);
}

std::vector<Example> load_examples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open examples file: " + path);
  return parse_examples(in);
}

std::string examples_str(const std::vector<Example>& examples) {
  std::string out;
  for (const auto& ex : examples) {
    out += "words:";
    for (const auto& w : ex.sentence) out += " " + w;
    out += "\nframe: " + ex.frame.str() + "\n\n";
  }
  return out;
}

}  // namespace lambek
