#include "fctl/machine.hpp"

namespace fctl {

namespace {

// Contexts are kept innermost-at-back so pushes and pops are O(1); kernel
// ordering (innermost first) is materialized only when a context is
// captured or recorded.
using RevCtx = std::vector<Frame>;
using RevMeta = std::vector<RevCtx>;  // top (innermost) at back

Context to_ctx(const RevCtx& rev) {
  Context e;
  e.frames.assign(rev.rbegin(), rev.rend());
  return e;
}

RevCtx from_ctx(const Context& e) {
  return RevCtx(e.frames.rbegin(), e.frames.rend());
}

Metacontext to_meta(const RevMeta& rev) {
  Metacontext f;
  for (auto it = rev.rbegin(); it != rev.rend(); ++it)
    f.stack.push_back(to_ctx(*it));
  return f;
}

struct Machine {
  Mode mode;
  std::uint64_t fuel;
  std::vector<MachineTraceEntry>* trace;

  TermPtr focus;
  RevCtx ctx;
  RevMeta meta;
  enum class State { Eval, Continue, ContinueMeta } state = State::Eval;

  MachineResult res;

  bool cbv() const { return mode.strategy == Strategy::Cbv; }
  bool delim() const { return mode.family == Family::Delimited; }

  void record(const char* what) {
    if (trace)
      trace->push_back(
          MachineTraceEntry{what, focus, to_ctx(ctx), to_meta(meta)});
  }

  MachineResult stuck(const std::string& why) {
    res.outcome = Outcome::Stuck;
    res.result = focus;
    res.stuck_reason = why;
    return res;
  }

  MachineResult done() {
    if (trace)
      trace->push_back(MachineTraceEntry{"done", focus, Context{}, Metacontext{}});
    res.outcome = Outcome::Normalized;
    res.result = focus;
    return res;
  }

  MachineResult run(const TermPtr& program) {
    if (delim() && !as<Reset>(program))
      return stuckAt(program, "program not delimited by a top-level reset");
    focus = program;
    for (;;) {
      if (res.transitions >= fuel) {
        res.outcome = Outcome::FuelExhausted;
        res.result = focus;
        return res;
      }
      ++res.transitions;
      switch (state) {
        case State::Eval: {
          record("eval");
          auto r = eval_step();
          if (r) return *r;
          break;
        }
        case State::Continue: {
          record("continue");
          auto r = continue_step();
          if (r) return *r;
          break;
        }
        case State::ContinueMeta: {
          record("continue-meta");
          auto r = continue_meta_step();
          if (r) return *r;
          break;
        }
      }
    }
  }

  MachineResult stuckAt(const TermPtr& at, const std::string& why) {
    focus = at;
    return stuck(why);
  }

  std::optional<MachineResult> eval_step() {
    if (is_value(focus)) {
      state = State::Continue;
      return std::nullopt;
    }
    const Term& t = *focus;
    if (const auto* v = std::get_if<Var>(&t.node))
      return stuck("free variable " + v->name);
    if (const auto* a = std::get_if<App>(&t.node)) {
      if (cbv()) {
        ctx.push_back(Frame{AppFrame{a->arg}});
        focus = a->fn;
        return std::nullopt;
      }
      // Call-by-name: reduce the function position only.
      if (const Lam* l = as<Lam>(a->fn)) {
        focus = subst_term(l->body, l->var, a->arg);
        return std::nullopt;
      }
      if (as<TyLam>(a->fn))
        return stuck("type abstraction applied as a function");
      ctx.push_back(Frame{AppFrame{a->arg}});
      focus = a->fn;
      return std::nullopt;
    }
    if (const auto* a = std::get_if<TyApp>(&t.node)) {
      if (const TyLam* l = as<TyLam>(a->fn)) {
        focus = subst_type_in_term(l->body, l->var, a->ty);
        return std::nullopt;
      }
      if (as<Lam>(a->fn)) return stuck("term abstraction applied to a type");
      ctx.push_back(Frame{TyAppFrame{a->ty}});
      focus = a->fn;
      return std::nullopt;
    }
    if (const auto* c = std::get_if<Callcc>(&t.node)) {
      if (delim()) return stuck("callcc in a delimited program");
      focus = subst_cont(c->body, c->k, to_ctx(ctx));
      return std::nullopt;
    }
    if (const auto* s = std::get_if<Shift>(&t.node)) {
      if (!delim()) return stuck("shift in an abortive program");
      focus = subst_cont(s->body, s->k, to_ctx(ctx));
      ctx.clear();
      return std::nullopt;
    }
    if (const auto* r = std::get_if<Reset>(&t.node)) {
      if (!delim()) return stuck("reset in an abortive program");
      meta.push_back(std::move(ctx));
      ctx = RevCtx{};
      focus = r->body;
      return std::nullopt;
    }
    if (const auto* th = std::get_if<ThrowVar>(&t.node))
      return stuck("free continuation variable " + th->k);
    const ThrowCtx& th = std::get<ThrowCtx>(t.node);
    if (cbv()) {
      ctx.push_back(Frame{ThrowFrame{th.ctx, th.result_ann}});
      focus = th.arg;
      return std::nullopt;
    }
    // Call-by-name throw: jump immediately, payload unevaluated.
    if (delim()) {
      meta.push_back(std::move(ctx));
      ctx = from_ctx(th.ctx);
    } else {
      ctx = from_ctx(th.ctx);
    }
    focus = th.arg;
    return std::nullopt;
  }

  std::optional<MachineResult> continue_step() {
    if (ctx.empty()) {
      if (delim()) {
        state = State::ContinueMeta;
        return std::nullopt;
      }
      return done();
    }
    Frame f = std::move(ctx.back());
    ctx.pop_back();
    if (const auto* af = as<AppFrame>(f)) {
      if (const Lam* l = as<Lam>(focus)) {
        if (cbv()) {
          ctx.push_back(Frame{FunFrame{focus}});
          focus = af->arg;
          state = State::Eval;
          return std::nullopt;
        }
        focus = subst_term(l->body, l->var, af->arg);
        state = State::Eval;
        return std::nullopt;
      }
      return stuck("type abstraction applied as a function");
    }
    if (const auto* ff = as<FunFrame>(f)) {
      const Lam* l = as<Lam>(ff->fn);
      focus = subst_term(l->body, l->var, focus);
      state = State::Eval;
      return std::nullopt;
    }
    if (const auto* tf = as<TyAppFrame>(f)) {
      if (const TyLam* l = as<TyLam>(focus)) {
        focus = subst_type_in_term(l->body, l->var, tf->ty);
        state = State::Eval;
        return std::nullopt;
      }
      return stuck("term abstraction applied to a type");
    }
    const ThrowFrame& hf = std::get<ThrowFrame>(f.node);
    if (delim()) {
      meta.push_back(std::move(ctx));
    }
    ctx = from_ctx(hf.ctx);
    return std::nullopt;  // remain in Continue with the captured context
  }

  std::optional<MachineResult> continue_meta_step() {
    if (meta.empty()) return done();
    ctx = std::move(meta.back());
    meta.pop_back();
    state = State::Continue;
    return std::nullopt;
  }
};

}  // namespace

MachineResult machine_eval(Mode mode, const TermPtr& program,
                           std::uint64_t fuel,
                           std::vector<MachineTraceEntry>* trace) {
  Machine m{mode, fuel, trace, nullptr, {}, {}, Machine::State::Eval, {}};
  return m.run(program);
}

}  // namespace fctl
