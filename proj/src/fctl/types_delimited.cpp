#include "fctl/types_delimited.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "fctl/pretty.hpp"

namespace fctl {

namespace {

[[noreturn]] void fail(TypeErrorKind kind, const std::string& msg) {
  throw TypeError(kind, msg);
}

bool has_meta(const TypePtr& t) {
  if (!t) return false;
  if (as<MetaTy>(t)) return true;
  if (as<TyVar>(t)) return false;
  if (auto* a = as<Arrow>(t)) return has_meta(a->dom) || has_meta(a->cod);
  if (auto* f = as<Forall>(t)) return has_meta(f->body);
  if (auto* a = as<ArrowD>(t)) {
    bool dom = std::holds_alternative<TypePtr>(a->dom)
                   ? has_meta(std::get<TypePtr>(a->dom))
                   : (has_meta(std::get<CompTriple>(a->dom).val) ||
                      has_meta(std::get<CompTriple>(a->dom).ans_in) ||
                      has_meta(std::get<CompTriple>(a->dom).ans_out));
    return dom || has_meta(a->cod) || has_meta(a->ans_in) || has_meta(a->ans_out);
  }
  auto* f = as<ForallD>(t);
  return has_meta(f->body) || has_meta(f->ans_in) || has_meta(f->ans_out);
}

void collect_ftv(const TypePtr& t, std::set<std::string>& out) {
  for (const auto& v : free_type_vars(t)) out.insert(v);
}

std::set<std::string> env_ftv(const EnvD& env) {
  std::set<std::string> out;
  for (const auto& [name, at] : env.vars) {
    (void)name;
    if (std::holds_alternative<TypePtr>(at)) {
      collect_ftv(std::get<TypePtr>(at), out);
    } else {
      const auto& tr = std::get<CompTriple>(at);
      collect_ftv(tr.val, out);
      collect_ftv(tr.ans_in, out);
      collect_ftv(tr.ans_out, out);
    }
  }
  for (const auto& [name, ct] : env.conts) {
    (void)name;
    collect_ftv(ct.hole, out);
    if (ct.ans) collect_ftv(ct.ans, out);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Unifier
// ---------------------------------------------------------------------------

TypePtr Unifier::fresh() {
  solutions_.push_back(nullptr);
  return ty_meta(solutions_.size() - 1);
}

bool Unifier::is_meta(const TypePtr& t) const {
  return as<MetaTy>(resolve(t)) != nullptr;
}

TypePtr Unifier::resolve(TypePtr t) const {
  while (t) {
    auto* m = as<MetaTy>(t);
    if (!m || m->id >= solutions_.size() || !solutions_[m->id]) return t;
    t = solutions_[m->id];
  }
  return t;
}

TypePtr Unifier::zonk(const TypePtr& t) const {
  TypePtr r = resolve(t);
  if (!r) return r;
  if (as<TyVar>(r) || as<MetaTy>(r)) return r;
  if (auto* a = as<Arrow>(r)) return ty_arrow(zonk(a->dom), zonk(a->cod));
  if (auto* f = as<Forall>(r)) return ty_forall(f->var, zonk(f->body));
  if (auto* a = as<ArrowD>(r))
    return ty_arrow_d(zonk(a->dom), zonk(a->cod), zonk(a->ans_in),
                      zonk(a->ans_out));
  auto* f = as<ForallD>(r);
  return ty_forall_d(f->var, zonk(f->body), zonk(f->ans_in), zonk(f->ans_out));
}

ArgType Unifier::zonk(const ArgType& t) const {
  if (std::holds_alternative<TypePtr>(t)) return zonk(std::get<TypePtr>(t));
  const auto& tr = std::get<CompTriple>(t);
  return CompTriple{zonk(tr.val), zonk(tr.ans_in), zonk(tr.ans_out)};
}

Judgment Unifier::zonk(const Judgment& j) const {
  return {zonk(j.ty), zonk(j.ans_in), zonk(j.ans_out)};
}

void Unifier::undo(std::size_t mark) {
  while (trail_.size() > mark) {
    solutions_[trail_.back()] = nullptr;
    trail_.pop_back();
  }
}

bool Unifier::occurs(std::uint64_t id, const TypePtr& t) const {
  TypePtr r = resolve(t);
  if (!r) return false;
  if (auto* m = as<MetaTy>(r)) return m->id == id;
  if (as<TyVar>(r)) return false;
  if (auto* a = as<Arrow>(r)) return occurs(id, a->dom) || occurs(id, a->cod);
  if (auto* f = as<Forall>(r)) return occurs(id, f->body);
  if (auto* a = as<ArrowD>(r)) {
    bool dom = std::holds_alternative<TypePtr>(a->dom)
                   ? occurs(id, std::get<TypePtr>(a->dom))
                   : (occurs(id, std::get<CompTriple>(a->dom).val) ||
                      occurs(id, std::get<CompTriple>(a->dom).ans_in) ||
                      occurs(id, std::get<CompTriple>(a->dom).ans_out));
    return dom || occurs(id, a->cod) || occurs(id, a->ans_in) ||
           occurs(id, a->ans_out);
  }
  auto* f = as<ForallD>(r);
  return occurs(id, f->body) || occurs(id, f->ans_in) || occurs(id, f->ans_out);
}

void Unifier::bind(std::uint64_t id, const TypePtr& t) {
  if (occurs(id, t))
    fail(TypeErrorKind::OccursCheck,
         "metavariable ?m" + std::to_string(id) + " occurs in " + pretty(zonk(t)));
  solutions_[id] = t;
  trail_.push_back(id);
}

void Unifier::unify(const ArgType& a, const ArgType& b) {
  if (a.index() != b.index())
    fail(TypeErrorKind::Mismatch,
         "argument type mismatch: plain type versus computation triple");
  if (std::holds_alternative<TypePtr>(a)) {
    unify(std::get<TypePtr>(a), std::get<TypePtr>(b));
    return;
  }
  const auto& ta = std::get<CompTriple>(a);
  const auto& tb = std::get<CompTriple>(b);
  unify(ta.val, tb.val);
  unify(ta.ans_in, tb.ans_in);
  unify(ta.ans_out, tb.ans_out);
}

void Unifier::unify(const TypePtr& a0, const TypePtr& b0) {
  TypePtr a = resolve(a0), b = resolve(b0);
  auto* ma = as<MetaTy>(a);
  auto* mb = as<MetaTy>(b);
  if (ma && mb && ma->id == mb->id) return;
  if (ma) {
    bind(ma->id, b);
    return;
  }
  if (mb) {
    bind(mb->id, a);
    return;
  }
  auto mismatch = [&]() {
    fail(TypeErrorKind::Mismatch,
         "cannot unify " + pretty(zonk(a)) + " with " + pretty(zonk(b)));
  };
  if (a->node.index() != b->node.index()) mismatch();
  if (auto* va = as<TyVar>(a)) {
    if (va->name != as<TyVar>(b)->name) mismatch();
    return;
  }
  if (auto* aa = as<Arrow>(a)) {
    auto* ab = as<Arrow>(b);
    unify(aa->dom, ab->dom);
    unify(aa->cod, ab->cod);
    return;
  }
  if (auto* aa = as<ArrowD>(a)) {
    auto* ab = as<ArrowD>(b);
    unify(aa->dom, ab->dom);
    unify(aa->cod, ab->cod);
    unify(aa->ans_in, ab->ans_in);
    unify(aa->ans_out, ab->ans_out);
    return;
  }

  // Quantified types. Binders are aligned by renaming one side to the other
  // side's binder name before unifying the components. The side whose
  // components still contain metavariables keeps its binder name: any meta
  // solved to the bound variable then names the binder it actually sits
  // under. Renaming a side is only safe when the target name does not occur
  // free in it.
  std::string var_a, var_b;
  std::vector<TypePtr> comps_a, comps_b;
  if (auto* fa = as<Forall>(a)) {
    auto* fb = as<Forall>(b);
    var_a = fa->var;
    var_b = fb->var;
    comps_a = {zonk(fa->body)};
    comps_b = {zonk(fb->body)};
  } else {
    auto* da = as<ForallD>(a);
    auto* db = as<ForallD>(b);
    var_a = da->var;
    var_b = db->var;
    comps_a = {zonk(da->body), zonk(da->ans_in), zonk(da->ans_out)};
    comps_b = {zonk(db->body), zonk(db->ans_in), zonk(db->ans_out)};
  }
  auto any_meta = [](const std::vector<TypePtr>& ts) {
    return std::any_of(ts.begin(), ts.end(),
                       [](const TypePtr& t) { return has_meta(t); });
  };
  auto captures = [](const std::string& name, const std::vector<TypePtr>& ts) {
    return std::any_of(ts.begin(), ts.end(), [&](const TypePtr& t) {
      return free_type_vars(t).count(name) != 0;
    });
  };
  auto rename_to = [](std::vector<TypePtr>& ts, const std::string& from,
                      const std::string& to) {
    if (from == to) return;
    TypePtr v = ty_var(to);
    for (auto& t : ts) t = subst_type(t, from, v);
  };
  if (var_a != var_b) {
    bool meta_a = any_meta(comps_a);
    bool meta_b = any_meta(comps_b);
    bool can_to_a = !captures(var_a, comps_b);
    bool can_to_b = !captures(var_b, comps_a);
    if (meta_a && !meta_b && can_to_a) {
      rename_to(comps_b, var_b, var_a);
    } else if (meta_b && !meta_a && can_to_b) {
      rename_to(comps_a, var_a, var_b);
    } else if (!meta_a && !meta_b) {
      if (can_to_a) {
        rename_to(comps_b, var_b, var_a);
      } else {
        std::set<std::string> avoid;
        for (const auto& t : comps_a) collect_ftv(t, avoid);
        for (const auto& t : comps_b) collect_ftv(t, avoid);
        std::string c = fresh_name_avoiding(var_a, avoid);
        rename_to(comps_a, var_a, c);
        rename_to(comps_b, var_b, c);
      }
    } else if (can_to_a) {
      rename_to(comps_b, var_b, var_a);
    } else if (can_to_b) {
      rename_to(comps_a, var_a, var_b);
    } else {
      fail(TypeErrorKind::Ambiguous,
           "cannot align quantifier binders of " + pretty(zonk(a)) + " and " +
               pretty(zonk(b)));
    }
  }
  for (std::size_t i = 0; i < comps_a.size(); ++i) unify(comps_a[i], comps_b[i]);
}

// ---------------------------------------------------------------------------
// DelimChecker
// ---------------------------------------------------------------------------

DelimChecker::DelimChecker(Mode mode) : mode_(mode) {}

Judgment DelimChecker::infer(const EnvD& env, const TermPtr& t,
                             DerivNode* deriv) {
  bool cbv = mode_.strategy == Strategy::Cbv;
  auto conclude = [&](const char* rule, Judgment j,
                      std::vector<DerivNode> kids) {
    if (deriv) {
      deriv->rule = rule;
      deriv->term = t;
      deriv->j = j;
      deriv->kids = std::move(kids);
    }
    return j;
  };
  auto kid = [&]() { return deriv ? new DerivNode() : nullptr; };
  auto take = [&](DerivNode* d, std::vector<DerivNode>& kids) {
    if (d) {
      kids.push_back(std::move(*d));
      delete d;
    }
  };

  if (auto* v = as<Var>(t)) {
    auto it = env.vars.find(v->name);
    if (it == env.vars.end())
      fail(TypeErrorKind::UnboundVar, "unbound variable " + v->name);
    if (std::holds_alternative<TypePtr>(it->second)) {
      if (!cbv)
        fail(TypeErrorKind::ModeViolation,
             "variable " + v->name +
                 " has a plain type in a call-by-name environment");
      TypePtr m = uni_.fresh();
      return conclude("var", {std::get<TypePtr>(it->second), m, m}, {});
    }
    if (cbv)
      fail(TypeErrorKind::ModeViolation,
           "variable " + v->name +
               " has a computation triple in a call-by-value environment");
    const auto& tr = std::get<CompTriple>(it->second);
    return conclude("var", {tr.val, tr.ans_in, tr.ans_out}, {});
  }

  if (auto* l = as<Lam>(t)) {
    if (cbv && !std::holds_alternative<TypePtr>(l->ann))
      fail(TypeErrorKind::ModeViolation,
           "call-by-value binder " + l->var + " annotated with a triple");
    if (!cbv && !std::holds_alternative<CompTriple>(l->ann))
      fail(TypeErrorKind::ModeViolation,
           "call-by-name binder " + l->var + " needs a computation triple");
    EnvD env2 = env;
    env2.vars[l->var] = l->ann;
    auto* d = kid();
    Judgment jb = infer(env2, l->body, d);
    std::vector<DerivNode> kids;
    take(d, kids);
    TypePtr arrow = ty_arrow_d(l->ann, jb.ty, jb.ans_in, jb.ans_out);
    TypePtr m = uni_.fresh();
    return conclude("lam", {arrow, m, m}, std::move(kids));
  }

  if (auto* a = as<App>(t)) {
    auto* d0 = kid();
    Judgment j0 = infer(env, a->fn, d0);
    std::vector<DerivNode> kids;
    take(d0, kids);
    if (cbv) {
      auto* d1 = kid();
      Judgment j1 = infer(env, a->arg, d1);
      take(d1, kids);
      TypePtr s = uni_.fresh(), tt = uni_.fresh(), u = uni_.fresh(),
              w = uni_.fresh();
      uni_.unify(j0.ty, ty_arrow_d(ArgType{s}, tt, u, w));
      uni_.unify(j1.ty, s);
      uni_.unify(j1.ans_in, w);
      uni_.unify(j1.ans_out, j0.ans_in);
      return conclude("app", {tt, u, j0.ans_out}, std::move(kids));
    }
    TypePtr s = uni_.fresh(), ti = uni_.fresh(), to = uni_.fresh(),
            v = uni_.fresh(), w = uni_.fresh(), x = uni_.fresh();
    uni_.unify(j0.ty, ty_arrow_d(CompTriple{s, ti, to}, v, w, x));
    uni_.unify(j0.ans_in, x);
    auto* d1 = kid();
    Judgment j1 = infer(env, a->arg, d1);
    take(d1, kids);
    uni_.unify(j1.ty, s);
    uni_.unify(j1.ans_in, ti);
    uni_.unify(j1.ans_out, to);
    return conclude("app", {v, w, j0.ans_out}, std::move(kids));
  }

  if (auto* tl = as<TyLam>(t)) {
    std::set<std::string> env_vars = env_ftv(env);
    if (env_vars.count(tl->var))
      fail(TypeErrorKind::FtvEscape,
           "type variable " + tl->var + " escapes into the environment");
    // Rename the binder to a globally fresh name so metavariables solved
    // under it cannot collide with other scopes.
    std::string fresh = fresh_name_avoiding(tl->var, env_vars);
    TermPtr body = subst_type_in_term(tl->body, tl->var, ty_var(fresh));
    auto* d = kid();
    Judgment jb = infer(env, body, d);
    std::vector<DerivNode> kids;
    take(d, kids);
    TypePtr m = uni_.fresh();
    return conclude("tylam",
                    {ty_forall_d(fresh, jb.ty, jb.ans_in, jb.ans_out), m, m},
                    std::move(kids));
  }

  if (auto* ta = as<TyApp>(t)) {
    auto* d0 = kid();
    Judgment j0 = infer(env, ta->fn, d0);
    std::vector<DerivNode> kids;
    take(d0, kids);
    TypePtr fn_ty = uni_.zonk(j0.ty);
    auto* f = as<ForallD>(fn_ty);
    if (!f) {
      if (as<MetaTy>(fn_ty))
        fail(TypeErrorKind::Ambiguous,
             "cannot determine a quantified type for " + pretty(ta->fn));
      fail(TypeErrorKind::NotForall, "type application of a non-quantified " +
                                         pretty(fn_ty));
    }
    TypePtr body = subst_type(f->body, f->var, ta->ty);
    TypePtr ain = subst_type(f->ans_in, f->var, ta->ty);
    TypePtr aout = subst_type(f->ans_out, f->var, ta->ty);
    uni_.unify(j0.ans_in, aout);
    return conclude("tyapp", {body, ain, j0.ans_out}, std::move(kids));
  }

  if (auto* r = as<Reset>(t)) {
    auto* d = kid();
    Judgment jb = infer(env, r->body, d);
    std::vector<DerivNode> kids;
    take(d, kids);
    uni_.unify(jb.ty, jb.ans_in);
    TypePtr m = uni_.fresh();
    return conclude("reset", {jb.ans_out, m, m}, std::move(kids));
  }

  if (auto* s = as<Shift>(t)) {
    if (!s->ann.ans)
      fail(TypeErrorKind::ModeViolation,
           "shift binder " + s->k + " needs a two-part continuation type");
    EnvD env2 = env;
    env2.conts[s->k] = s->ann;
    auto* d = kid();
    Judgment jb = infer(env2, s->body, d);
    std::vector<DerivNode> kids;
    take(d, kids);
    uni_.unify(jb.ty, jb.ans_in);
    return conclude("shift", {s->ann.hole, s->ann.ans, jb.ans_out},
                    std::move(kids));
  }

  if (auto* tv = as<ThrowVar>(t)) {
    if (tv->result_ann)
      fail(TypeErrorKind::ModeViolation,
           "throw carries a result annotation in a delimited program");
    auto it = env.conts.find(tv->k);
    if (it == env.conts.end())
      fail(TypeErrorKind::UnboundVar,
           "free continuation variable " + tv->k);
    const ContextType& kt = it->second;
    if (!kt.ans)
      fail(TypeErrorKind::ModeViolation,
           "continuation " + tv->k + " lacks an answer type");
    auto* d = kid();
    Judgment ja = infer(env, tv->arg, d);
    std::vector<DerivNode> kids;
    take(d, kids);
    uni_.unify(ja.ty, kt.hole);
    if (cbv) return conclude("throw", {kt.ans, ja.ans_in, ja.ans_out},
                             std::move(kids));
    uni_.unify(ja.ans_in, kt.ans);
    TypePtr m = uni_.fresh();
    return conclude("throw", {ja.ans_out, m, m}, std::move(kids));
  }

  if (auto* tc = as<ThrowCtx>(t)) {
    if (tc->result_ann)
      fail(TypeErrorKind::ModeViolation,
           "throw carries a result annotation in a delimited program");
    auto* d = kid();
    Judgment ja = infer(env, tc->arg, d);
    std::vector<DerivNode> kids;
    take(d, kids);
    ContextType et = infer_context(env, tc->ctx, ja.ty);
    if (cbv) return conclude("throw", {et.ans, ja.ans_in, ja.ans_out},
                             std::move(kids));
    uni_.unify(ja.ans_in, et.ans);
    TypePtr m = uni_.fresh();
    return conclude("throw", {ja.ans_out, m, m}, std::move(kids));
  }

  auto* c = as<Callcc>(t);
  fail(TypeErrorKind::ModeViolation,
       "callcc " + (c ? c->k : std::string("?")) +
           " does not exist in delimited programs");
}

TypePtr DelimChecker::fold_context(const EnvD& env, const Context& e,
                                   std::size_t i, TypePtr hole) {
  if (i == e.frames.size()) return hole;
  const Frame& fr = e.frames[i];
  bool cbv = mode_.strategy == Strategy::Cbv;
  if (auto* af = as<AppFrame>(fr)) {
    if (cbv) {
      TypePtr s = uni_.fresh(), tt = uni_.fresh(), u = uni_.fresh(),
              v = uni_.fresh();
      uni_.unify(hole, ty_arrow_d(ArgType{s}, tt, u, v));
      Judgment jt = infer(env, af->arg);
      uni_.unify(jt.ty, s);
      uni_.unify(jt.ans_in, v);
      TypePtr rest = fold_context(env, e, i + 1, tt);
      uni_.unify(rest, u);
      return jt.ans_out;
    }
    TypePtr s = uni_.fresh(), ti = uni_.fresh(), to = uni_.fresh(),
            v = uni_.fresh(), w = uni_.fresh(), x = uni_.fresh();
    uni_.unify(hole, ty_arrow_d(CompTriple{s, ti, to}, v, w, x));
    Judgment jt = infer(env, af->arg);
    uni_.unify(jt.ty, s);
    uni_.unify(jt.ans_in, ti);
    uni_.unify(jt.ans_out, to);
    TypePtr rest = fold_context(env, e, i + 1, v);
    uni_.unify(rest, w);
    return x;
  }
  if (auto* ff = as<FunFrame>(fr)) {
    if (!cbv)
      fail(TypeErrorKind::ModeViolation,
           "operand frame in a call-by-name context");
    Judgment jl = infer(env, ff->fn);
    TypePtr s = uni_.fresh(), tt = uni_.fresh(), u = uni_.fresh(),
            v = uni_.fresh();
    uni_.unify(jl.ty, ty_arrow_d(ArgType{s}, tt, u, v));
    uni_.unify(hole, s);
    TypePtr rest = fold_context(env, e, i + 1, tt);
    uni_.unify(rest, u);
    return v;
  }
  if (auto* tf = as<TyAppFrame>(fr)) {
    TypePtr h = uni_.zonk(hole);
    auto* f = as<ForallD>(h);
    if (!f) {
      if (as<MetaTy>(h))
        fail(TypeErrorKind::Ambiguous,
             "cannot determine a quantified hole type in a context");
      fail(TypeErrorKind::NotForall,
           "type application frame over a non-quantified hole " + pretty(h));
    }
    TypePtr body = subst_type(f->body, f->var, tf->ty);
    TypePtr ain = subst_type(f->ans_in, f->var, tf->ty);
    TypePtr aout = subst_type(f->ans_out, f->var, tf->ty);
    TypePtr rest = fold_context(env, e, i + 1, body);
    uni_.unify(rest, ain);
    return aout;
  }
  auto* th = as<ThrowFrame>(fr);
  if (!cbv)
    fail(TypeErrorKind::ModeViolation, "throw frame in a call-by-name context");
  if (th->result_ann)
    fail(TypeErrorKind::ModeViolation,
         "throw frame carries a result annotation in a delimited program");
  TypePtr inner_ans = fold_context(env, th->ctx, 0, hole);
  return fold_context(env, e, i + 1, inner_ans);
}

ContextType DelimChecker::infer_context(const EnvD& env, const Context& e,
                                        TypePtr hole) {
  if (auto why = mode_violation(mode_, e))
    fail(TypeErrorKind::ModeViolation, *why);
  TypePtr ans = fold_context(env, e, 0, hole);
  return ContextType{hole, ans};
}

MetacontextType DelimChecker::infer_metacontext(const EnvD& env,
                                                const Metacontext& f,
                                                TypePtr hole) {
  TypePtr cur = hole;
  for (const auto& e : f.stack) cur = infer_context(env, e, cur).ans;
  (void)cur;
  return MetacontextType{hole};
}

// ---------------------------------------------------------------------------
// Wrappers
// ---------------------------------------------------------------------------

namespace {

void zonk_deriv(const Unifier& uni, DerivNode& d) {
  d.j = uni.zonk(d.j);
  for (auto& k : d.kids) zonk_deriv(uni, k);
}

void check_delim_mode(Mode mode) {
  if (mode.family != Family::Delimited)
    fail(TypeErrorKind::ModeViolation,
         "delimited typing judgment applied under " + to_string(mode));
}

}  // namespace

Judgment infer_term_delim(const EnvD& env, Mode mode, const TermPtr& t,
                          DerivNode* deriv) {
  check_delim_mode(mode);
  if (auto why = mode_violation(mode, t))
    fail(TypeErrorKind::ModeViolation, *why);
  DelimChecker ck(mode);
  Judgment j = ck.infer(env, t, deriv);
  if (deriv) zonk_deriv(ck.unifier(), *deriv);
  return ck.unifier().zonk(j);
}

ContextType infer_context_delim(const EnvD& env, Mode mode, const Context& e,
                                const TypePtr& hole) {
  check_delim_mode(mode);
  DelimChecker ck(mode);
  ContextType ct = ck.infer_context(env, e, hole);
  return ContextType{ck.unifier().zonk(ct.hole), ck.unifier().zonk(ct.ans)};
}

MetacontextType infer_metacontext(const EnvD& env, Mode mode,
                                  const Metacontext& f, const TypePtr& hole) {
  check_delim_mode(mode);
  DelimChecker ck(mode);
  MetacontextType mt = ck.infer_metacontext(env, f, hole);
  return MetacontextType{ck.unifier().zonk(mt.hole)};
}

namespace {

TypePtr renumber(const TypePtr& t, std::map<std::uint64_t, std::uint64_t>& map) {
  if (!t) return t;
  if (auto* m = as<MetaTy>(t)) {
    auto it = map.find(m->id);
    if (it == map.end()) it = map.emplace(m->id, map.size()).first;
    return ty_meta(it->second);
  }
  if (as<TyVar>(t)) return t;
  // Sequence the recursion explicitly: numbering must not depend on the
  // compiler's argument evaluation order.
  if (auto* a = as<Arrow>(t)) {
    TypePtr dom = renumber(a->dom, map);
    return ty_arrow(dom, renumber(a->cod, map));
  }
  if (auto* f = as<Forall>(t)) return ty_forall(f->var, renumber(f->body, map));
  if (auto* a = as<ArrowD>(t)) {
    ArgType dom;
    if (std::holds_alternative<TypePtr>(a->dom)) {
      dom = ArgType{renumber(std::get<TypePtr>(a->dom), map)};
    } else {
      const auto& tr = std::get<CompTriple>(a->dom);
      TypePtr val = renumber(tr.val, map);
      TypePtr ain = renumber(tr.ans_in, map);
      dom = ArgType{CompTriple{val, ain, renumber(tr.ans_out, map)}};
    }
    TypePtr cod = renumber(a->cod, map);
    TypePtr ain = renumber(a->ans_in, map);
    return ty_arrow_d(dom, cod, ain, renumber(a->ans_out, map));
  }
  auto* f = as<ForallD>(t);
  TypePtr body = renumber(f->body, map);
  TypePtr ain = renumber(f->ans_in, map);
  return ty_forall_d(f->var, body, ain, renumber(f->ans_out, map));
}

}  // namespace

Judgment normalize_metas(const Judgment& j) {
  std::map<std::uint64_t, std::uint64_t> map;
  return {renumber(j.ty, map), renumber(j.ans_in, map),
          renumber(j.ans_out, map)};
}

namespace {

std::string canonical_binder(std::size_t i) {
  std::string s(1, static_cast<char>('a' + i % 26));
  if (i >= 26) s += std::to_string(i / 26);
  return s;
}

// Renames quantifier binders in traversal order so reported types do not
// depend on the global fresh-name counter. Only used on closed types.
TypePtr canonicalize_binders(const TypePtr& t, std::size_t& next) {
  if (!t || as<TyVar>(t) || as<MetaTy>(t)) return t;
  if (auto* a = as<Arrow>(t)) {
    TypePtr dom = canonicalize_binders(a->dom, next);
    return ty_arrow(dom, canonicalize_binders(a->cod, next));
  }
  if (auto* f = as<Forall>(t)) {
    std::string name = canonical_binder(next++);
    TypePtr body = subst_type(f->body, f->var, ty_var(name));
    return ty_forall(name, canonicalize_binders(body, next));
  }
  if (auto* a = as<ArrowD>(t)) {
    ArgType dom =
        std::holds_alternative<TypePtr>(a->dom)
            ? ArgType{canonicalize_binders(std::get<TypePtr>(a->dom), next)}
            : ArgType{CompTriple{
                  canonicalize_binders(std::get<CompTriple>(a->dom).val, next),
                  canonicalize_binders(std::get<CompTriple>(a->dom).ans_in,
                                       next),
                  canonicalize_binders(std::get<CompTriple>(a->dom).ans_out,
                                       next)}};
    TypePtr cod = canonicalize_binders(a->cod, next);
    TypePtr ain = canonicalize_binders(a->ans_in, next);
    return ty_arrow_d(dom, cod, ain, canonicalize_binders(a->ans_out, next));
  }
  auto* f = as<ForallD>(t);
  std::string name = canonical_binder(next++);
  TypePtr body = subst_type(f->body, f->var, ty_var(name));
  TypePtr ain = subst_type(f->ans_in, f->var, ty_var(name));
  TypePtr aout = subst_type(f->ans_out, f->var, ty_var(name));
  body = canonicalize_binders(body, next);
  ain = canonicalize_binders(ain, next);
  return ty_forall_d(name, body, ain, canonicalize_binders(aout, next));
}

}  // namespace

TypePtr check_program_delim(Mode mode, const TermPtr& t) {
  check_delim_mode(mode);
  if (auto why = mode_violation(mode, t))
    fail(TypeErrorKind::ModeViolation, *why);
  if (!is_plain(t))
    fail(TypeErrorKind::NotPlain,
         "source programs must not contain reified contexts");
  if (!is_closed(t))
    fail(TypeErrorKind::OpenTerm, "program has free variables");
  if (!as<Reset>(t))
    fail(TypeErrorKind::ModeViolation,
         "program not delimited by a top-level reset");
  DelimChecker ck(mode);
  Judgment j = ck.infer({}, t);
  ck.unifier().unify(j.ans_in, j.ty);
  ck.unifier().unify(j.ans_out, j.ty);
  std::size_t next = 0;
  return canonicalize_binders(
      fctl::normalize_metas(ck.unifier().zonk(j.ty)), next);
}

TypePtr skolemize(const TypePtr& t) {
  std::map<std::uint64_t, TypePtr> map;
  std::function<TypePtr(const TypePtr&)> go = [&](const TypePtr& x) -> TypePtr {
    if (!x) return x;
    if (auto* m = as<MetaTy>(x)) {
      auto it = map.find(m->id);
      if (it == map.end())
        it = map.emplace(m->id, ty_var(fresh_name("s"))).first;
      return it->second;
    }
    if (as<TyVar>(x)) return x;
    if (auto* a = as<Arrow>(x)) return ty_arrow(go(a->dom), go(a->cod));
    if (auto* f = as<Forall>(x)) return ty_forall(f->var, go(f->body));
    if (auto* a = as<ArrowD>(x)) {
      ArgType dom =
          std::holds_alternative<TypePtr>(a->dom)
              ? ArgType{go(std::get<TypePtr>(a->dom))}
              : ArgType{CompTriple{go(std::get<CompTriple>(a->dom).val),
                                   go(std::get<CompTriple>(a->dom).ans_in),
                                   go(std::get<CompTriple>(a->dom).ans_out)}};
      return ty_arrow_d(dom, go(a->cod), go(a->ans_in), go(a->ans_out));
    }
    auto* f = as<ForallD>(x);
    return ty_forall_d(f->var, go(f->body), go(f->ans_in), go(f->ans_out));
  };
  return go(t);
}

void check_runtime_delim_at(Mode mode, const TermPtr& t, const TypePtr& want) {
  check_delim_mode(mode);
  if (has_meta(want))
    fail(TypeErrorKind::Ambiguous,
         "runtime checks need a metavariable-free type; skolemize first");
  if (auto why = mode_violation(mode, t))
    fail(TypeErrorKind::ModeViolation, *why);
  if (!is_closed(t))
    fail(TypeErrorKind::OpenTerm, "program has free variables");
  if (!as<Reset>(t))
    fail(TypeErrorKind::ModeViolation,
         "program not delimited by a top-level reset");
  DelimChecker ck(mode);
  Judgment j = ck.infer({}, t);
  ck.unifier().unify(j.ty, want);
  ck.unifier().unify(j.ans_in, want);
  ck.unifier().unify(j.ans_out, want);
}

}  // namespace fctl
