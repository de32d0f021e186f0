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

#include "luck/surface/frontend.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "luck/core/typecheck.h"
#include "luck/support/error.h"
#include "luck/surface/expand.h"
#include "luck/surface/parser.h"

namespace luck::surface {
namespace {

void int_literals(const SExpr& e, std::vector<int64_t>& out) {
  if (e.kind == SExprKind::kInt) out.push_back(e.value);
  for (const auto& item : e.items) int_literals(*item, out);
  for (const auto& arm : e.arms) {
    if (arm.weight) int_literals(*arm.weight, out);
    int_literals(*arm.body, out);
  }
}

bool mentions_int(const GType& t) {
  if (t.kind == GKind::kInt) return true;
  for (const auto& a : t.args) {
    if (mentions_int(*a)) return true;
  }
  return false;
}

}  // namespace

LoadedProgram::LoadedProgram(std::string_view text)
    : surface_(parse_program(text)) {
  data_ = std::make_unique<DataTable>(surface_.data);
  expanded_ = expand_patterns(surface_);
  types_ = infer_program(expanded_, *data_);
  encoder_ = std::make_unique<Encoder>(*data_);
  core_ = std::make_unique<CoreProgram>();
  desugarer_ = std::make_unique<Desugarer>(*encoder_, *core_, types_.functions);
  desugarer_->define_functions(expanded_, types_.exprs);
  core_->finalize();
}

std::shared_ptr<LoadedProgram> load_program(std::string_view text) {
  return std::make_shared<LoadedProgram>(text);
}

std::shared_ptr<LoadedProgram> load_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LuckError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return load_program(text.str());
}

ValuePtr CompiledQuery::target_value() const {
  return target ? val::true_value() : val::false_value();
}

std::vector<uint32_t> CompiledQuery::ids() const {
  std::vector<uint32_t> out;
  for (const auto& u : unknowns) out.push_back(u.id);
  return out;
}

std::string CompiledQuery::render_value(size_t i, const Valuation& s) const {
  auto it = s.find(unknowns[i].id);
  if (it == s.end()) return "?";
  return program->encoder().render(*it->second, *unknowns[i].type);
}

std::string CompiledQuery::render(const Valuation& s) const {
  std::string out;
  for (size_t i = 0; i < unknowns.size(); ++i) {
    if (i) out += ", ";
    out += unknowns[i].name + " = " + render_value(i, s);
  }
  return out;
}

CompiledQuery compile_query(const std::shared_ptr<LoadedProgram>& program,
                            std::string_view text, const QueryBounds& bounds) {
  CompiledQuery q;
  q.program = program;
  q.text = std::string(text);
  QueryText parsed = parse_query(text);
  q.target = parsed.target;
  SExprPtr expr = expand_expression(parsed.expr, program->data());
  QueryTypes types =
      infer_query(*expr, program->data(), program->types().functions);

  bool needs_ints = false;
  for (const auto& [name, t] : types.unknowns) {
    needs_ints = needs_ints || mentions_int(*t);
  }
  if (bounds.ints) {
    q.int_bound = bounds.ints;
  } else if (program->surface().int_bound) {
    q.int_bound = program->surface().int_bound;
  } else {
    std::vector<int64_t> lits;
    int_literals(*parsed.expr, lits);
    if (!lits.empty()) {
      auto [lo, hi] = std::minmax_element(lits.begin(), lits.end());
      q.int_bound = std::make_pair(*lo, *hi);
    }
  }
  if (needs_ints && !q.int_bound) {
    throw TypeError(
        "integer unknowns need bounds: pass --int-bound lo..hi or declare "
        "'bound Int = lo .. hi'");
  }
  if (q.int_bound && q.int_bound->first > q.int_bound->second) {
    throw TypeError("empty integer bound");
  }
  q.depth = bounds.depth ? bounds.depth : program->surface().depth_bound;

  q.store = q.int_bound ? ConstraintSet(q.int_bound->first, q.int_bound->second)
                        : ConstraintSet();
  std::vector<Desugarer::Unknown> unknowns;
  TypingEnv env;
  for (const auto& [name, t] : types.unknowns) {
    QueryUnknown u;
    u.name = name;
    u.type = t;
    u.core = program->encoder().core(*t);
    u.id = q.store.fresh(u.core);
    if (q.depth && u.core->recursive) q.store.constrain_depth(u.id, *q.depth);
    env.unknowns[u.id] = u.core;
    unknowns.push_back({u.name, u.id, u.type});
    q.unknowns.push_back(std::move(u));
  }
  ExprPtr core = program->desugarer().query(*expr, types.exprs, unknowns);
  program->core().finalize();
  q.expr = annotate(env, core);
  if (q.expr->type != bool_type()) {
    throw TypeError("query must have type Bool");
  }
  return q;
}

}  // namespace luck::surface
