// Copyright 2026 The Luck Generator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "support/corpus.h"

#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "luck/constraints/denote.h"
#include "luck/support/random.h"

namespace luck::testing {

std::string program_path(const std::string& name) {
  return std::string(LUCK_SOURCE_DIR) + "/programs/" + name + ".luck";
}

std::string read_program(const std::string& name) {
  std::ifstream in(program_path(name));
  if (!in) throw std::runtime_error("missing program " + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::shared_ptr<surface::LoadedProgram> corpus(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<surface::LoadedProgram>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[name];
  if (!slot) slot = surface::load_program(read_program(name));
  return slot;
}

surface::CompiledQuery query(const std::string& program,
                             const std::string& text,
                             const surface::QueryBounds& bounds) {
  auto p = corpus(program);
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  return surface::compile_query(p, text, bounds);
}

std::vector<ExploredOutcome> explore(const surface::CompiledQuery& q,
                                     const Budget& budget, size_t limit) {
  std::vector<ExploredOutcome> out;
  EnumeratingChoices choices;
  do {
    AttemptResult a = run_attempt(q, choices, budget);
    mpq_class path_q(1);
    for (const auto& [num, den] : choices.taken_probabilities()) {
      path_q *= mpq_class(mpz_class(std::to_string(num)),
                          mpz_class(std::to_string(den)));
    }
    path_q.canonicalize();
    out.push_back(
        {a.valuation, a.trace.script(), a.trace.probability(), path_q});
    if (out.size() > limit) throw std::runtime_error("too many traces");
  } while (choices.advance());
  return out;
}

namespace {

struct TreeParser {
  std::istringstream in;
  explicit TreeParser(const std::string& s) {
    std::string spaced;
    for (char c : s) {
      if (c == '(' || c == ')') {
        spaced += ' ';
        spaced += c;
        spaced += ' ';
      } else {
        spaced += c;
      }
    }
    in.str(spaced);
  }
  std::string next() {
    std::string w;
    if (!(in >> w)) throw std::runtime_error("truncated tree");
    return w;
  }
  std::unique_ptr<Tree> parse() {
    std::string w = next();
    if (w == "(") {
      auto t = parse();
      if (next() != ")") throw std::runtime_error("unbalanced tree");
      return t;
    }
    auto t = std::make_unique<Tree>();
    if (w == "Empty" || w == "Leaf") return t;
    if (w != "Node") throw std::runtime_error("unexpected " + w);
    t->leaf = false;
    std::string k = next();
    if (k == "Red" || k == "Black") {
      t->red = k == "Red";
      k = next();
    }
    if (k == "(") {  // negative key
      k = next();
      next();
    }
    t->key = std::stoll(k);
    t->left = parse();
    t->right = parse();
    return t;
  }
};

// Black height of t counting black nodes, or -1 when the colouring is off.
int black_height(const Tree& t, bool parent_red) {
  if (t.leaf) return 0;
  if (t.red && parent_red) return -1;
  const int l = black_height(*t.left, t.red);
  const int r = black_height(*t.right, t.red);
  if (l < 0 || l != r) return -1;
  return l + (t.red ? 0 : 1);
}

bool keys_inside(const Tree& t, int64_t low, int64_t high) {
  if (t.leaf) return true;
  return low < t.key && t.key < high && keys_inside(*t.left, low, t.key) &&
         keys_inside(*t.right, t.key, high);
}

}  // namespace

std::unique_ptr<Tree> parse_tree(const std::string& text) {
  TreeParser p(text);
  auto t = p.parse();
  std::string rest;
  if (p.in >> rest) throw std::runtime_error("trailing input " + rest);
  return t;
}

bool is_bst(const Tree& t, int64_t low, int64_t high) {
  return keys_inside(t, low, high);
}

bool is_rbt(const Tree& t, int h, int64_t low, int64_t high, bool parent_red) {
  return keys_inside(t, low, high) && black_height(t, parent_red) == h;
}

uint64_t count_rbts(int h, int64_t low, int64_t high, bool parent_red) {
  // Trees with keys in (low, high): choose the root key, split the range.
  std::map<std::tuple<int, int64_t, int64_t, bool>, uint64_t> memo;
  std::function<uint64_t(int, int64_t, int64_t, bool)> count =
      [&](int bh, int64_t lo, int64_t hi, bool pred) -> uint64_t {
    if (bh < 0) return 0;
    auto key = std::make_tuple(bh, lo, hi, pred);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    uint64_t n = bh == 0 ? 1 : 0;  // a leaf
    for (int64_t k = lo + 1; k < hi; ++k) {
      if (!pred) {  // red node, children black
        n += count(bh, lo, k, true) * count(bh, k, hi, true);
      }
      n += count(bh - 1, lo, k, false) * count(bh - 1, k, hi, false);
    }
    memo[key] = n;
    return n;
  };
  return count(h, low, high, parent_red);
}

std::string show_tree(const Tree& t) {
  if (t.leaf) return "Leaf";
  return "(Node " + std::string(t.red ? "R " : "B ") + std::to_string(t.key) +
         " " + show_tree(*t.left) + " " + show_tree(*t.right) + ")";
}

std::vector<ValuePtr> all_values(Type t, uint32_t depth, int64_t lo,
                                 int64_t hi) {
  return values_of_type(t, depth, IntervalSet::range(lo, hi), 1000000);
}

}  // namespace luck::testing
