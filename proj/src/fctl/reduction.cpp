#include "fctl/reduction.hpp"

namespace fctl {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::BetaV: return "beta_v";
    case Rule::BetaN: return "beta_n";
    case Rule::BetaT: return "beta_T";
    case Rule::Callcc: return "callcc";
    case Rule::ThrowV: return "throw_v";
    case Rule::ThrowN: return "throw_n";
    case Rule::Shift: return "shift";
    case Rule::Reset: return "reset";
  }
  return "?";
}

TermPtr plug(TermPtr t, const Context& e) {
  for (const Frame& f : e.frames) {
    t = std::visit(
        [&](const auto& n) -> TermPtr {
          using F = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<F, AppFrame>)
            return mk_app(t, n.arg);
          else if constexpr (std::is_same_v<F, FunFrame>)
            return mk_app(n.fn, t);
          else if constexpr (std::is_same_v<F, TyAppFrame>)
            return mk_tyapp(t, n.ty);
          else
            return mk_throw_ctx(n.ctx, n.result_ann, t);
        },
        f.node);
  }
  return t;
}

TermPtr plug_meta(TermPtr t, const Metacontext& f) {
  for (const Context& e : f.stack) t = mk_reset(plug(t, e));
  return t;
}

Metacontext push_meta(Context e, const Metacontext& f) {
  Metacontext out;
  out.stack.reserve(f.stack.size() + 1);
  out.stack.push_back(std::move(e));
  out.stack.insert(out.stack.end(), f.stack.begin(), f.stack.end());
  return out;
}

TermPtr reconstitute(Mode mode, const Decomposition& d) {
  if (mode.family == Family::Abortive) return plug(d.focus, d.ctx);
  return plug_meta(d.focus, push_meta(d.ctx, d.meta));
}

// ---------------------------------------------------------------- exact equality

bool exact_eq(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  if (const auto* v = as<TyVar>(a)) return v->name == as<TyVar>(b)->name;
  if (const auto* r = as<Arrow>(a)) {
    const auto* s = as<Arrow>(b);
    return exact_eq(r->dom, s->dom) && exact_eq(r->cod, s->cod);
  }
  if (const auto* r = as<Forall>(a)) {
    const auto* s = as<Forall>(b);
    return r->var == s->var && exact_eq(r->body, s->body);
  }
  if (const auto* r = as<ArrowD>(a)) {
    const auto* s = as<ArrowD>(b);
    if (r->dom.index() != s->dom.index()) return false;
    bool dom_ok;
    if (const TypePtr* p = std::get_if<TypePtr>(&r->dom)) {
      dom_ok = exact_eq(*p, std::get<TypePtr>(s->dom));
    } else {
      const CompTriple& c = std::get<CompTriple>(r->dom);
      const CompTriple& d = std::get<CompTriple>(s->dom);
      dom_ok = exact_eq(c.val, d.val) && exact_eq(c.ans_in, d.ans_in) &&
               exact_eq(c.ans_out, d.ans_out);
    }
    return dom_ok && exact_eq(r->cod, s->cod) &&
           exact_eq(r->ans_in, s->ans_in) && exact_eq(r->ans_out, s->ans_out);
  }
  if (const auto* r = as<ForallD>(a)) {
    const auto* s = as<ForallD>(b);
    return r->var == s->var && exact_eq(r->body, s->body) &&
           exact_eq(r->ans_in, s->ans_in) && exact_eq(r->ans_out, s->ans_out);
  }
  return as<MetaTy>(a)->id == as<MetaTy>(b)->id;
}

static bool exact_eq_frame(const Frame& a, const Frame& b);

bool exact_eq(const Context& a, const Context& b) {
  if (a.frames.size() != b.frames.size()) return false;
  for (std::size_t i = 0; i < a.frames.size(); ++i)
    if (!exact_eq_frame(a.frames[i], b.frames[i])) return false;
  return true;
}

bool exact_eq(const Metacontext& a, const Metacontext& b) {
  if (a.stack.size() != b.stack.size()) return false;
  for (std::size_t i = 0; i < a.stack.size(); ++i)
    if (!exact_eq(a.stack[i], b.stack[i])) return false;
  return true;
}

bool exact_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  if (const auto* v = as<Var>(a)) return v->name == as<Var>(b)->name;
  if (const auto* l = as<Lam>(a)) {
    const auto* m = as<Lam>(b);
    if (l->var != m->var || l->ann.index() != m->ann.index()) return false;
    if (const TypePtr* p = std::get_if<TypePtr>(&l->ann)) {
      if (!exact_eq(*p, std::get<TypePtr>(m->ann))) return false;
    } else {
      const CompTriple& c = std::get<CompTriple>(l->ann);
      const CompTriple& d = std::get<CompTriple>(m->ann);
      if (!exact_eq(c.val, d.val) || !exact_eq(c.ans_in, d.ans_in) ||
          !exact_eq(c.ans_out, d.ans_out))
        return false;
    }
    return exact_eq(l->body, m->body);
  }
  if (const auto* p = as<App>(a)) {
    const auto* q = as<App>(b);
    return exact_eq(p->fn, q->fn) && exact_eq(p->arg, q->arg);
  }
  if (const auto* l = as<TyLam>(a)) {
    const auto* m = as<TyLam>(b);
    return l->var == m->var && exact_eq(l->body, m->body);
  }
  if (const auto* p = as<TyApp>(a)) {
    const auto* q = as<TyApp>(b);
    return exact_eq(p->fn, q->fn) && exact_eq(p->ty, q->ty);
  }
  if (const auto* c = as<Callcc>(a)) {
    const auto* d = as<Callcc>(b);
    return c->k == d->k && exact_eq(c->ann.hole, d->ann.hole) &&
           exact_eq(c->ann.ans, d->ann.ans) && exact_eq(c->body, d->body);
  }
  if (const auto* c = as<Shift>(a)) {
    const auto* d = as<Shift>(b);
    return c->k == d->k && exact_eq(c->ann.hole, d->ann.hole) &&
           exact_eq(c->ann.ans, d->ann.ans) && exact_eq(c->body, d->body);
  }
  if (const auto* r = as<Reset>(a)) return exact_eq(r->body, as<Reset>(b)->body);
  if (const auto* t = as<ThrowVar>(a)) {
    const auto* u = as<ThrowVar>(b);
    return t->k == u->k && exact_eq(t->result_ann, u->result_ann) &&
           exact_eq(t->arg, u->arg);
  }
  const auto* t = as<ThrowCtx>(a);
  const auto* u = as<ThrowCtx>(b);
  return exact_eq(t->ctx, u->ctx) && exact_eq(t->result_ann, u->result_ann) &&
         exact_eq(t->arg, u->arg);
}

static bool exact_eq_frame(const Frame& a, const Frame& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* f = as<AppFrame>(a))
    return exact_eq(f->arg, as<AppFrame>(b)->arg);
  if (const auto* f = as<FunFrame>(a))
    return exact_eq(f->fn, as<FunFrame>(b)->fn);
  if (const auto* f = as<TyAppFrame>(a))
    return exact_eq(f->ty, as<TyAppFrame>(b)->ty);
  const auto* f = as<ThrowFrame>(a);
  const auto* g = as<ThrowFrame>(b);
  return exact_eq(f->ctx, g->ctx) && exact_eq(f->result_ann, g->result_ann);
}

// ---------------------------------------------------------------- redex shapes

std::optional<Rule> redex_rule(Mode mode, const TermPtr& t) {
  bool cbv = mode.strategy == Strategy::Cbv;
  bool delim = mode.family == Family::Delimited;
  if (const auto* a = as<App>(t)) {
    if (!as<Lam>(a->fn)) return std::nullopt;
    if (cbv) return is_value(a->arg) ? std::optional(Rule::BetaV) : std::nullopt;
    return Rule::BetaN;
  }
  if (const auto* a = as<TyApp>(t))
    return as<TyLam>(a->fn) ? std::optional(Rule::BetaT) : std::nullopt;
  if (as<Callcc>(t)) return delim ? std::nullopt : std::optional(Rule::Callcc);
  if (as<Shift>(t)) return delim ? std::optional(Rule::Shift) : std::nullopt;
  if (const auto* r = as<Reset>(t)) {
    if (!delim) return std::nullopt;
    return is_value(r->body) ? std::optional(Rule::Reset) : std::nullopt;
  }
  if (const auto* th = as<ThrowCtx>(t)) {
    if (cbv)
      return is_value(th->arg) ? std::optional(Rule::ThrowV) : std::nullopt;
    return Rule::ThrowN;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- decompose

namespace {

Context make_ctx(std::vector<Frame> outer_first) {
  Context e;
  e.frames.assign(outer_first.rbegin(), outer_first.rend());
  return e;
}

Metacontext make_meta(const std::vector<Context>& outer_first) {
  Metacontext f;
  f.stack.assign(outer_first.rbegin(), outer_first.rend());
  return f;
}

struct Decomposer {
  Mode mode;
  // Accumulators ordered outermost first while descending.
  std::vector<Frame> ctx_acc;
  std::vector<Context> meta_acc;

  bool cbv() const { return mode.strategy == Strategy::Cbv; }
  bool delim() const { return mode.family == Family::Delimited; }

  Decomposition here(Decomposition::Kind kind, Rule rule,
                     const TermPtr& focus) {
    return Decomposition{kind, rule, focus, make_ctx(ctx_acc),
                         make_meta(meta_acc)};
  }

  DecomposeResult stuck(const std::string& why, const TermPtr& at) {
    return StuckInfo{why, at};
  }

  DecomposeResult go(const TermPtr& t) {
    if (auto r = redex_rule(mode, t)) {
      // Inner resets around a value are redexes; a top-level reset around a
      // value is a finished program and is stripped before go() is entered.
      return here(Decomposition::Kind::Redex, *r, t);
    }
    if (is_value(t)) {
      if (ctx_acc.empty() && meta_acc.empty())
        return here(delim() ? Decomposition::Kind::ProgramValue
                            : Decomposition::Kind::Value,
                    Rule::BetaV, t);
      return stuck("internal: value focused in a non-empty context", t);
    }
    return std::visit(
        [&](const auto& n) -> DecomposeResult {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Var>) {
            return stuck("free variable " + n.name, t);
          } else if constexpr (std::is_same_v<T, App>) {
            if (as<Lam>(n.fn)) {
              // Not a redex, so call-by-value with a non-value argument.
              ctx_acc.push_back(Frame{FunFrame{n.fn}});
              return go(n.arg);
            }
            if (as<TyLam>(n.fn))
              return stuck("type abstraction applied as a function", t);
            ctx_acc.push_back(Frame{AppFrame{n.arg}});
            return go(n.fn);
          } else if constexpr (std::is_same_v<T, TyApp>) {
            if (as<Lam>(n.fn))
              return stuck("term abstraction applied to a type", t);
            ctx_acc.push_back(Frame{TyAppFrame{n.ty}});
            return go(n.fn);
          } else if constexpr (std::is_same_v<T, Callcc>) {
            return stuck("callcc in a delimited program", t);
          } else if constexpr (std::is_same_v<T, Shift>) {
            return stuck("shift in an abortive program", t);
          } else if constexpr (std::is_same_v<T, Reset>) {
            if (!delim()) return stuck("reset in an abortive program", t);
            meta_acc.push_back(make_ctx(ctx_acc));
            ctx_acc.clear();
            return go(n.body);
          } else if constexpr (std::is_same_v<T, ThrowVar>) {
            return stuck("free continuation variable " + n.k, t);
          } else if constexpr (std::is_same_v<T, ThrowCtx>) {
            // Not a redex, so call-by-value with a non-value payload.
            ctx_acc.push_back(Frame{ThrowFrame{n.ctx, n.result_ann}});
            return go(n.arg);
          } else {
            // Lam and TyLam are values and were handled before the visit.
            return stuck("internal: value form reached the descent", t);
          }
        },
        t->node);
  }
};

}  // namespace

DecomposeResult decompose(Mode mode, const TermPtr& program) {
  Decomposer d{mode, {}, {}};
  if (mode.family == Family::Abortive) return d.go(program);
  const Reset* top = as<Reset>(program);
  if (!top)
    return StuckInfo{"program not delimited by a top-level reset", program};
  return d.go(top->body);
}

// The decomposer treats the metacontext push as part of the descent, so a
// context accumulated before an inner reset is frozen correctly: make_ctx
// was already applied when the frame vector was pushed.

std::vector<Decomposition> enumerate_decompositions(Mode mode,
                                                    const TermPtr& program) {
  std::vector<Decomposition> out;
  bool cbv = mode.strategy == Strategy::Cbv;

  struct Enum {
    Mode mode;
    bool cbv;
    std::vector<Decomposition>* out;
    std::vector<Frame> ctx_acc;
    std::vector<Context> meta_acc;

    void visit_term(const TermPtr& t) {
      Decomposition d{Decomposition::Kind::Position, Rule::BetaV, t,
                      make_ctx(ctx_acc), make_meta(meta_acc)};
      if (auto r = redex_rule(mode, t)) {
        d.kind = Decomposition::Kind::Redex;
        d.rule = *r;
      } else if (is_value(t) && d.ctx.frames.empty() && d.meta.stack.empty()) {
        d.kind = mode.family == Family::Delimited
                     ? Decomposition::Kind::ProgramValue
                     : Decomposition::Kind::Value;
      }
      out->push_back(std::move(d));

      std::visit(
          [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, App>) {
              ctx_acc.push_back(Frame{AppFrame{n.arg}});
              visit_term(n.fn);
              ctx_acc.pop_back();
              if (cbv && as<Lam>(n.fn)) {
                ctx_acc.push_back(Frame{FunFrame{n.fn}});
                visit_term(n.arg);
                ctx_acc.pop_back();
              }
            } else if constexpr (std::is_same_v<T, TyApp>) {
              ctx_acc.push_back(Frame{TyAppFrame{n.ty}});
              visit_term(n.fn);
              ctx_acc.pop_back();
            } else if constexpr (std::is_same_v<T, ThrowCtx>) {
              if (cbv) {
                ctx_acc.push_back(Frame{ThrowFrame{n.ctx, n.result_ann}});
                visit_term(n.arg);
                ctx_acc.pop_back();
              }
            } else if constexpr (std::is_same_v<T, Reset>) {
              if (mode.family == Family::Delimited) {
                meta_acc.push_back(make_ctx(ctx_acc));
                std::vector<Frame> saved = std::move(ctx_acc);
                ctx_acc.clear();
                visit_term(n.body);
                ctx_acc = std::move(saved);
                meta_acc.pop_back();
              }
            }
          },
          t->node);
    }
  };

  Enum e{mode, cbv, &out, {}, {}};
  if (mode.family == Family::Abortive) {
    e.visit_term(program);
  } else {
    const Reset* top = as<Reset>(program);
    if (!top) return out;
    e.visit_term(top->body);
  }
  return out;
}

// ---------------------------------------------------------------- stepping

namespace {

TermPtr contract(Mode mode, const Decomposition& d, TermPtr* out_program) {
  const TermPtr& t = d.focus;
  switch (d.rule) {
    case Rule::BetaV:
    case Rule::BetaN: {
      const App* a = as<App>(t);
      const Lam* l = as<Lam>(a->fn);
      TermPtr reduced = subst_term(l->body, l->var, a->arg);
      *out_program = reconstitute(mode, Decomposition{d.kind, d.rule, reduced,
                                                      d.ctx, d.meta});
      return reduced;
    }
    case Rule::BetaT: {
      const TyApp* a = as<TyApp>(t);
      const TyLam* l = as<TyLam>(a->fn);
      TermPtr reduced = subst_type_in_term(l->body, l->var, a->ty);
      *out_program = reconstitute(mode, Decomposition{d.kind, d.rule, reduced,
                                                      d.ctx, d.meta});
      return reduced;
    }
    case Rule::Callcc: {
      const Callcc* c = as<Callcc>(t);
      TermPtr reduced = subst_cont(c->body, c->k, d.ctx);
      *out_program = reconstitute(mode, Decomposition{d.kind, d.rule, reduced,
                                                      d.ctx, d.meta});
      return reduced;
    }
    case Rule::Shift: {
      const Shift* s = as<Shift>(t);
      TermPtr reduced = subst_cont(s->body, s->k, d.ctx);
      // The body restarts in an empty context under a fresh delimiter.
      *out_program = reconstitute(
          mode, Decomposition{d.kind, d.rule, reduced, Context{}, d.meta});
      return reduced;
    }
    case Rule::ThrowV:
    case Rule::ThrowN: {
      const ThrowCtx* th = as<ThrowCtx>(t);
      if (mode.family == Family::Abortive) {
        // The current context is discarded wholesale.
        *out_program = plug(th->arg, th->ctx);
      } else {
        // The current context is pushed onto the metacontext and the thrown
        // term resumes in the captured context.
        *out_program = reconstitute(
            mode, Decomposition{d.kind, d.rule, th->arg, th->ctx,
                                push_meta(d.ctx, d.meta)});
      }
      return th->arg;
    }
    case Rule::Reset: {
      const Reset* r = as<Reset>(t);
      *out_program = reconstitute(
          mode, Decomposition{d.kind, d.rule, r->body, d.ctx, d.meta});
      return r->body;
    }
  }
  *out_program = t;
  return t;
}

}  // namespace

StepResult step(Mode mode, const TermPtr& program) {
  DecomposeResult r = decompose(mode, program);
  if (const StuckInfo* s = std::get_if<StuckInfo>(&r)) return *s;
  Decomposition d = std::get<Decomposition>(std::move(r));
  if (d.kind != Decomposition::Kind::Redex) return StepDone{std::move(d)};
  TermPtr next;
  contract(mode, d, &next);
  return StepOk{d.rule, next, std::move(d)};
}

std::string outcome_label(Outcome o, Mode mode) {
  switch (o) {
    case Outcome::Normalized:
      return mode.family == Family::Delimited ? "program-value" : "value";
    case Outcome::FuelExhausted:
      return "fuel-exhausted";
    case Outcome::Stuck:
      return "stuck";
  }
  return "?";
}

EvalResult evaluate(Mode mode, TermPtr program, std::uint64_t fuel) {
  EvalResult res;
  res.steps = 0;
  for (;;) {
    StepResult r = step(mode, program);
    if (const StepOk* ok = std::get_if<StepOk>(&r)) {
      if (res.steps >= fuel) {
        res.outcome = Outcome::FuelExhausted;
        res.result = program;
        res.final_program = program;
        return res;
      }
      ++res.steps;
      program = ok->program;
      continue;
    }
    if (const StepDone* done = std::get_if<StepDone>(&r)) {
      res.outcome = Outcome::Normalized;
      res.result = done->decomp.focus;
      res.final_program = program;
      return res;
    }
    const StuckInfo& s = std::get<StuckInfo>(r);
    res.outcome = Outcome::Stuck;
    res.result = program;
    res.final_program = program;
    res.stuck_reason = s.reason;
    return res;
  }
}

TraceResult trace(Mode mode, TermPtr program, std::uint64_t fuel) {
  TraceResult res;
  res.steps = 0;
  for (;;) {
    StepResult r = step(mode, program);
    if (const StepOk* ok = std::get_if<StepOk>(&r)) {
      if (res.steps >= fuel) {
        res.entries.push_back(TraceEntry{program, std::nullopt, std::nullopt});
        res.outcome = Outcome::FuelExhausted;
        res.result = program;
        res.final_program = program;
        return res;
      }
      res.entries.push_back(TraceEntry{program, ok->decomp, ok->rule});
      ++res.steps;
      program = ok->program;
      continue;
    }
    if (const StepDone* done = std::get_if<StepDone>(&r)) {
      res.entries.push_back(TraceEntry{program, done->decomp, std::nullopt});
      res.outcome = Outcome::Normalized;
      res.result = done->decomp.focus;
      res.final_program = program;
      return res;
    }
    const StuckInfo& s = std::get<StuckInfo>(r);
    res.entries.push_back(TraceEntry{program, std::nullopt, std::nullopt});
    res.outcome = Outcome::Stuck;
    res.result = program;
    res.final_program = program;
    res.stuck_reason = s.reason;
    return res;
  }
}

}  // namespace fctl
