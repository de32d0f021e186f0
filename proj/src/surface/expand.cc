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

#include "luck/surface/expand.h"

#include <map>
#include <memory>
#include <set>
#include <utility>

#include "luck/support/error.h"

namespace luck::surface {
namespace {

[[noreturn]] void fail_at(Pos pos, const std::string& msg) {
  throw SyntaxError(msg, pos.line, pos.column);
}

bool is_binder(const Pattern& p) {
  return p.kind == PatternKind::kVar || p.kind == PatternKind::kWild;
}

bool binds(const Pattern& p, const std::string& name) {
  if (p.kind == PatternKind::kVar) return p.name == name;
  for (const auto& a : p.args) {
    if (binds(*a, name)) return true;
  }
  return false;
}

// Coefficients on each source arm's weight expression.
using LinearForm = std::map<int, mpq_class>;

struct Row {
  std::vector<PatternPtr> pats;
  int arm;
  std::vector<std::pair<std::string, std::string>> renames;
};

struct Node {
  enum Kind { kLeaf, kFail, kSwitch, kSplit } kind = kFail;
  int arm = -1;
  std::vector<std::pair<std::string, std::string>> renames;
  std::string occ;
  const DataDecl* data = nullptr;
  struct Branch {
    std::string ctor;
    std::vector<std::string> vars;
    std::unique_ptr<Node> sub;
    LinearForm mass;
    SExprPtr weight;
    bool has_literal = false;
    mpz_class literal;
  };
  std::vector<Branch> branches;
  std::set<int> arms;
  std::set<std::string> uses;  // occurrence names referenced below
};

class Compiler {
 public:
  Compiler(const SExpr& c, const DataTable& data) : case_(c), data_(data) {
    for (const Arm& arm : c.arms) {
      weights_.push_back(arm.weight ? arm.weight : mk::integer(1, arm.pos));
    }
  }

  std::vector<ConstructorArm> root_arms() {
    std::vector<Row> rows;
    for (size_t i = 0; i < case_.arms.size(); ++i) {
      rows.push_back(Row{{case_.arms[i].pattern}, static_cast<int>(i), {}});
    }
    std::unique_ptr<Node> tree = compile({"_root"}, std::move(rows));
    if (tree->kind != Node::kSwitch) {
      throw ContractViolation("constructor_arms on a case without constructors");
    }
    collect(*tree);
    LinearForm top;
    for (size_t i = 0; i < case_.arms.size(); ++i) top[static_cast<int>(i)] = 1;
    distribute(*tree, top);
    std::vector<ConstructorArm> out;
    for (const auto& b : tree->branches) {
      out.push_back(ConstructorArm{
          b.sub->kind == Node::kLeaf ? b.sub->arm : -1, b.weight});
    }
    return out;
  }

  CaseExpansion run() {
    CaseExpansion out;
    const SExpr& scrutinee = *case_.items[0];
    const std::string root =
        scrutinee.kind == SExprKind::kVar ? scrutinee.name : fresh();
    std::vector<Row> rows;
    for (size_t i = 0; i < case_.arms.size(); ++i) {
      rows.push_back(Row{{case_.arms[i].pattern}, static_cast<int>(i), {}});
    }
    std::unique_ptr<Node> tree = compile({root}, std::move(rows));
    collect(*tree);
    for (size_t i = 0; i < case_.arms.size(); ++i) {
      if (!tree->arms.count(static_cast<int>(i))) {
        fail_at(case_.arms[i].pos, "case arm can never match");
      }
    }
    LinearForm top;
    for (size_t i = 0; i < case_.arms.size(); ++i) top[static_cast<int>(i)] = 1;
    distribute(*tree, top);
    leaves(*tree, {}, mpq_class(1), true, out.leaves);

    out.changed = !is_simple_case(case_);
    if (!out.changed) {
      out.expr = std::make_shared<SExpr>(case_);
      return out;
    }
    const bool bind_root = scrutinee.kind != SExprKind::kVar &&
                           (tree->kind == Node::kLeaf ||
                            tree->kind == Node::kFail || uses_root(*tree, root));
    if (bind_root) {
      Arm arm;
      arm.pattern = mk::pvar(root, case_.pos);
      arm.body = emit(*tree, nullptr);
      arm.pos = case_.pos;
      out.expr = mk::case_of(case_.items[0], {std::move(arm)}, case_.pos);
    } else {
      out.expr = emit(*tree, scrutinee.kind == SExprKind::kVar
                                 ? nullptr
                                 : case_.items[0]);
    }
    return out;
  }

 private:
  std::string fresh() { return "_o" + std::to_string(++counter_); }

  std::unique_ptr<Node> compile(std::vector<std::string> occs,
                                std::vector<Row> rows) {
    auto node = std::make_unique<Node>();
    if (rows.empty()) {
      node->kind = Node::kFail;
      return node;
    }
    const Row& first = rows.front();
    size_t col = first.pats.size();
    for (size_t j = 0; j < first.pats.size(); ++j) {
      if (!is_binder(*first.pats[j])) {
        col = j;
        break;
      }
    }
    if (col == first.pats.size()) {
      node->kind = Node::kLeaf;
      node->arm = first.arm;
      node->renames = first.renames;
      for (size_t j = 0; j < first.pats.size(); ++j) {
        if (first.pats[j]->kind == PatternKind::kVar) {
          node->renames.emplace_back(first.pats[j]->name, occs[j]);
        }
      }
      return node;
    }
    const Pattern& head = *first.pats[col];
    node->occ = occs[col];
    if (head.kind == PatternKind::kTuple) {
      node->kind = Node::kSplit;
      const size_t n = head.args.size();
      Node::Branch b;
      for (size_t k = 0; k < n; ++k) b.vars.push_back(fresh());
      std::vector<Row> sub;
      for (const Row& r : rows) {
        const Pattern& p = *r.pats[col];
        if (p.kind == PatternKind::kCon) {
          fail_at(p.pos, "constructor pattern where a tuple is expected");
        }
        if (p.kind == PatternKind::kTuple && p.args.size() != n) {
          fail_at(p.pos, "tuple pattern of the wrong size");
        }
        sub.push_back(specialize(r, col, p.kind == PatternKind::kTuple
                                             ? p.args
                                             : wildcards(n),
                                 occs[col]));
      }
      b.sub = compile(splice(occs, col, b.vars), std::move(sub));
      node->branches.push_back(std::move(b));
      return node;
    }
    auto ref = data_.constructor(head.name);
    if (!ref) fail_at(head.pos, "unknown constructor '" + head.name + "'");
    node->kind = Node::kSwitch;
    node->data = ref->data;
    for (const Constructor& ctor : ref->data->constructors) {
      const size_t n = ctor.fields.size();
      Node::Branch b;
      b.ctor = ctor.name;
      for (size_t k = 0; k < n; ++k) b.vars.push_back(fresh());
      std::vector<Row> sub;
      for (const Row& r : rows) {
        const Pattern& p = *r.pats[col];
        if (p.kind == PatternKind::kTuple) {
          fail_at(p.pos, "tuple pattern where a constructor is expected");
        }
        if (p.kind == PatternKind::kCon) {
          auto other = data_.constructor(p.name);
          if (!other) fail_at(p.pos, "unknown constructor '" + p.name + "'");
          if (other->data != ref->data) {
            fail_at(p.pos, "constructor '" + p.name + "' does not belong to " +
                               ref->data->name);
          }
          if (p.name != ctor.name) continue;
          if (p.args.size() != n) {
            fail_at(p.pos, "constructor '" + p.name + "' expects " +
                               std::to_string(n) + " arguments");
          }
          sub.push_back(specialize(r, col, p.args, occs[col]));
        } else {
          sub.push_back(specialize(r, col, wildcards(n), occs[col]));
        }
      }
      b.sub = compile(splice(occs, col, b.vars), std::move(sub));
      node->branches.push_back(std::move(b));
    }
    return node;
  }

  static std::vector<PatternPtr> wildcards(size_t n) {
    return std::vector<PatternPtr>(n, mk::wild());
  }

  static std::vector<std::string> splice(std::vector<std::string> occs,
                                         size_t col,
                                         const std::vector<std::string>& vars) {
    occs.erase(occs.begin() + static_cast<std::ptrdiff_t>(col));
    occs.insert(occs.begin() + static_cast<std::ptrdiff_t>(col), vars.begin(),
                vars.end());
    return occs;
  }

  static Row specialize(const Row& r, size_t col,
                        const std::vector<PatternPtr>& args,
                        const std::string& occ) {
    Row out;
    out.arm = r.arm;
    out.renames = r.renames;
    const Pattern& p = *r.pats[col];
    if (p.kind == PatternKind::kVar) out.renames.emplace_back(p.name, occ);
    for (size_t j = 0; j < r.pats.size(); ++j) {
      if (j == col) {
        out.pats.insert(out.pats.end(), args.begin(), args.end());
      } else {
        out.pats.push_back(r.pats[j]);
      }
    }
    return out;
  }

  void collect(Node& n) {
    if (n.kind == Node::kLeaf) {
      n.arms.insert(n.arm);
      for (const auto& [from, to] : n.renames) n.uses.insert(to);
      return;
    }
    if (!n.occ.empty()) n.uses.insert(n.occ);
    for (auto& b : n.branches) {
      collect(*b.sub);
      n.arms.insert(b.sub->arms.begin(), b.sub->arms.end());
      n.uses.insert(b.sub->uses.begin(), b.sub->uses.end());
    }
  }

  bool uses_root(const Node& n, const std::string& root) const {
    if (n.kind == Node::kLeaf) return n.uses.count(root) > 0;
    for (const auto& b : n.branches) {
      if (b.sub->uses.count(root)) return true;
    }
    return false;
  }

  bool literal_weight(int arm, mpz_class* out) const {
    const SExpr& w = *weights_[static_cast<size_t>(arm)];
    if (w.kind != SExprKind::kInt) return false;
    *out = mpz_class(std::to_string(w.value));
    if (*out < 0) *out = 0;
    return true;
  }

  // Splits each arm's share evenly over the branches that contain it,
  // then turns each switch's branch shares into integer weights.
  void distribute(Node& n, const LinearForm& mass) {
    if (n.kind == Node::kLeaf || n.kind == Node::kFail) return;
    if (n.kind == Node::kSplit) {
      n.branches[0].mass = mass;
      distribute(*n.branches[0].sub, mass);
      return;
    }
    for (const auto& [arm, coeff] : mass) {
      size_t holders = 0;
      for (const auto& b : n.branches) holders += b.sub->arms.count(arm);
      if (holders == 0) continue;
      for (auto& b : n.branches) {
        if (b.sub->arms.count(arm)) {
          b.mass[arm] += coeff / static_cast<long>(holders);
        }
      }
    }
    assign_weights(n);
    for (auto& b : n.branches) distribute(*b.sub, b.mass);
  }

  void assign_weights(Node& n) {
    bool all_literal = true;
    for (const auto& b : n.branches) {
      for (const auto& [arm, coeff] : b.mass) {
        mpz_class ignored;
        all_literal = all_literal && literal_weight(arm, &ignored);
      }
    }
    if (all_literal) {
      std::vector<mpq_class> values;
      for (const auto& b : n.branches) {
        mpq_class v = 0;
        for (const auto& [arm, coeff] : b.mass) {
          mpz_class w;
          literal_weight(arm, &w);
          v += coeff * w;
        }
        values.push_back(v);
      }
      mpz_class denom_lcm = 1;
      for (const auto& v : values) {
        mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(),
                v.get_den().get_mpz_t());
      }
      mpz_class num_gcd = 0;
      std::vector<mpz_class> ints;
      for (const auto& v : values) {
        mpz_class k = v.get_num() * (denom_lcm / v.get_den());
        ints.push_back(k);
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), k.get_mpz_t());
      }
      for (size_t i = 0; i < n.branches.size(); ++i) {
        auto& b = n.branches[i];
        b.has_literal = true;
        if (b.sub->kind == Node::kFail) {
          b.literal = 1;
        } else {
          b.literal = num_gcd == 0 ? mpz_class(1) : ints[i] / num_gcd;
        }
        if (!b.literal.fits_slong_p()) {
          fail_at(case_.pos, "expanded case weight does not fit in an integer");
        }
        b.weight = mk::integer(b.literal.get_si(), case_.pos);
      }
      return;
    }
    mpz_class denom_lcm = 1;
    for (const auto& b : n.branches) {
      for (const auto& [arm, coeff] : b.mass) {
        mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(),
                coeff.get_den().get_mpz_t());
      }
    }
    for (auto& b : n.branches) {
      if (b.sub->kind == Node::kFail) {
        b.weight = mk::integer(1, case_.pos);
        continue;
      }
      SExprPtr sum;
      mpz_class constant = 0;
      for (const auto& [arm, coeff] : b.mass) {
        const mpz_class k = coeff.get_num() * (denom_lcm / coeff.get_den());
        if (k == 0) continue;
        mpz_class w;
        if (literal_weight(arm, &w)) {
          constant += k * w;
          continue;
        }
        if (!k.fits_slong_p()) {
          fail_at(case_.pos, "expanded case weight does not fit in an integer");
        }
        SExprPtr term = weights_[static_cast<size_t>(arm)];
        if (k != 1) term = mk::binary(BinOp::kMul, mk::integer(k.get_si()), term);
        sum = sum ? mk::binary(BinOp::kAdd, sum, term) : term;
      }
      if (constant != 0 || sum == nullptr) {
        if (!constant.fits_slong_p()) {
          fail_at(case_.pos, "expanded case weight does not fit in an integer");
        }
        SExprPtr c = mk::integer(constant.get_si());
        sum = sum ? mk::binary(BinOp::kAdd, sum, c) : c;
      }
      b.weight = sum;
    }
  }

  void leaves(const Node& n, std::vector<std::string> path, mpq_class prob,
              bool known, std::vector<ExpansionLeaf>& out) const {
    if (n.kind == Node::kLeaf || n.kind == Node::kFail) {
      ExpansionLeaf leaf;
      leaf.path = std::move(path);
      leaf.arm = n.kind == Node::kLeaf ? n.arm : -1;
      leaf.has_probability = known;
      if (known) leaf.probability = prob;
      out.push_back(std::move(leaf));
      return;
    }
    if (n.kind == Node::kSplit) {
      leaves(*n.branches[0].sub, std::move(path), prob, known, out);
      return;
    }
    mpz_class total = 0;
    bool literal = true;
    for (const auto& b : n.branches) {
      literal = literal && b.has_literal;
      if (b.has_literal) total += b.literal;
    }
    for (const auto& b : n.branches) {
      auto p = path;
      p.push_back(b.ctor);
      const bool k = known && literal && total > 0;
      mpq_class q = k ? prob * mpq_class(b.literal, total) : mpq_class(0);
      q.canonicalize();
      leaves(*b.sub, std::move(p), q, k, out);
    }
  }

  SExprPtr emit(const Node& n, const SExprPtr& root_expr) const {
    switch (n.kind) {
      case Node::kLeaf: {
        SExprPtr body = case_.arms[static_cast<size_t>(n.arm)].body;
        for (const auto& [from, to] : n.renames) {
          if (from != to) body = rename_free(body, from, to);
        }
        return body;
      }
      case Node::kFail:
        throw ContractViolation("emitting a failing leaf");
      case Node::kSplit: {
        const auto& b = n.branches[0];
        std::vector<PatternPtr> vars;
        for (const auto& v : b.vars) vars.push_back(binder(v, *b.sub));
        Arm arm;
        arm.pattern = mk::ptuple(std::move(vars), case_.pos);
        arm.body = b.sub->kind == Node::kFail ? nullptr : emit(*b.sub, nullptr);
        arm.pos = case_.pos;
        SExprPtr scrutinee = root_expr ? root_expr : mk::var(n.occ, case_.pos);
        return mk::case_of(scrutinee, {std::move(arm)}, case_.pos);
      }
      case Node::kSwitch: {
        std::vector<Arm> arms;
        for (const auto& b : n.branches) {
          if (b.sub->kind == Node::kFail) continue;
          std::vector<PatternPtr> vars;
          for (const auto& v : b.vars) vars.push_back(binder(v, *b.sub));
          Arm arm;
          arm.weight = b.weight;
          arm.pattern = mk::pcon(b.ctor, std::move(vars), case_.pos);
          arm.body = emit(*b.sub, nullptr);
          arm.pos = case_.pos;
          arms.push_back(std::move(arm));
        }
        SExprPtr scrutinee = root_expr ? root_expr : mk::var(n.occ, case_.pos);
        return mk::case_of(scrutinee, std::move(arms), case_.pos);
      }
    }
    return nullptr;
  }

  static PatternPtr binder(const std::string& v, const Node& sub) {
    return sub.uses.count(v) ? mk::pvar(v) : mk::wild();
  }

  const SExpr& case_;
  const DataTable& data_;
  std::vector<SExprPtr> weights_;
  int counter_ = 0;
};

std::vector<Arm> map_arms(const std::vector<Arm>& arms, const DataTable& data) {
  std::vector<Arm> out;
  for (const Arm& a : arms) {
    Arm b = a;
    if (b.weight) b.weight = expand_expression(b.weight, data);
    b.body = expand_expression(b.body, data);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

bool is_simple_case(const SExpr& c) {
  std::set<std::string> seen;
  for (size_t i = 0; i < c.arms.size(); ++i) {
    const Pattern& p = *c.arms[i].pattern;
    if (is_binder(p)) {
      if (i + 1 != c.arms.size()) return false;
      continue;
    }
    for (const auto& a : p.args) {
      if (!is_binder(*a)) return false;
    }
    if (p.kind == PatternKind::kTuple && c.arms.size() != 1) return false;
    if (p.kind == PatternKind::kCon && !seen.insert(p.name).second) return false;
  }
  return true;
}

CaseExpansion expand_case(const SExpr& case_expr, const DataTable& data) {
  if (case_expr.kind != SExprKind::kCase) {
    throw ContractViolation("expand_case on a non-case expression");
  }
  if (case_expr.arms.empty()) fail_at(case_expr.pos, "case without arms");
  return Compiler(case_expr, data).run();
}

std::vector<ConstructorArm> constructor_arms(const SExpr& simple_case,
                                             const DataTable& data) {
  return Compiler(simple_case, data).root_arms();
}

SExprPtr expand_expression(const SExprPtr& e, const DataTable& data) {
  if (e == nullptr) return e;
  auto copy = std::make_shared<SExpr>(*e);
  for (auto& item : copy->items) item = expand_expression(item, data);
  if (copy->kind != SExprKind::kCase) return copy;
  copy->arms = map_arms(copy->arms, data);
  return expand_case(*copy, data).expr;
}

SurfaceProgram expand_patterns(const SurfaceProgram& p) {
  DataTable data(p.data);
  SurfaceProgram out = p;
  for (auto& f : out.functions) f.body = expand_expression(f.body, data);
  return out;
}

SExprPtr rename_free(const SExprPtr& e, const std::string& from,
                     const std::string& to) {
  if (e == nullptr) return e;
  auto copy = std::make_shared<SExpr>(*e);
  if ((copy->kind == SExprKind::kVar || copy->kind == SExprKind::kSample) &&
      copy->name == from) {
    copy->name = to;
  }
  for (auto& item : copy->items) item = rename_free(item, from, to);
  for (auto& arm : copy->arms) {
    if (arm.weight) arm.weight = rename_free(arm.weight, from, to);
    if (!binds(*arm.pattern, from)) arm.body = rename_free(arm.body, from, to);
  }
  return copy;
}

}  // namespace luck::surface
