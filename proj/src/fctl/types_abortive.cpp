#include "fctl/types_abortive.hpp"

#include "fctl/pretty.hpp"
#include "fctl/reduction.hpp"

namespace fctl {

const char* to_string(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundVar: return "unbound-var";
    case TypeErrorKind::Mismatch: return "mismatch";
    case TypeErrorKind::NotArrow: return "not-arrow";
    case TypeErrorKind::NotForall: return "not-forall";
    case TypeErrorKind::FtvEscape: return "ftv-escape";
    case TypeErrorKind::ModeViolation: return "mode-violation";
    case TypeErrorKind::OpenTerm: return "open-term";
    case TypeErrorKind::NotPlain: return "not-plain";
    case TypeErrorKind::OccursCheck: return "occurs-check";
    case TypeErrorKind::Ambiguous: return "ambiguous";
  }
  return "?";
}

namespace {

[[noreturn]] void err(TypeErrorKind k, const std::string& msg) {
  throw TypeError(k, msg);
}

struct InferA {
  Mode mode;
  std::vector<TypePtr>* collect;

  TypePtr plain_arg(const ArgType& a) {
    const TypePtr* p = std::get_if<TypePtr>(&a);
    if (!p)
      err(TypeErrorKind::ModeViolation,
          "computation-triple annotation in an abortive term");
    return *p;
  }

  void escape_check(const EnvA& env, const std::string& a,
                    const TermPtr& at) {
    for (const auto& [name, ty] : env.vars)
      if (free_type_vars(ty).count(a))
        err(TypeErrorKind::FtvEscape,
            "type variable " + a + " of tfun would capture the type of " +
                name + " : " + pretty(ty) + " in " + pretty(at));
    for (const auto& [name, ty] : env.conts)
      if (free_type_vars(ty).count(a))
        err(TypeErrorKind::FtvEscape,
            "type variable " + a +
                " of tfun would capture the continuation type of " + name +
                " : " + pretty(ty) + " cont in " + pretty(at));
  }

  TypePtr context_answer(const Context& e, const TypePtr& hole) {
    if (auto bad = mode_violation(mode, e))
      err(TypeErrorKind::ModeViolation, *bad);
    std::string x = fresh_name("hole");
    EnvA env;
    env.vars[x] = hole;
    return go(env, plug(mk_var(x), e));
  }

  TypePtr go(const EnvA& env, const TermPtr& t) {
    return std::visit(
        [&](const auto& n) -> TypePtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Var>) {
            auto it = env.vars.find(n.name);
            if (it == env.vars.end())
              err(TypeErrorKind::UnboundVar, "unbound variable " + n.name);
            return it->second;
          } else if constexpr (std::is_same_v<T, Lam>) {
            TypePtr dom = plain_arg(n.ann);
            EnvA inner = env;
            inner.vars[n.var] = dom;
            return ty_arrow(dom, go(inner, n.body));
          } else if constexpr (std::is_same_v<T, App>) {
            TypePtr fn = go(env, n.fn);
            const Arrow* ar = as<Arrow>(fn);
            if (!ar)
              err(TypeErrorKind::NotArrow,
                  "applied a non-function of type " + pretty(fn) + " in " +
                      pretty(t));
            TypePtr arg = go(env, n.arg);
            if (!alpha_eq(arg, ar->dom))
              err(TypeErrorKind::Mismatch,
                  "argument type " + pretty(arg) + " does not match domain " +
                      pretty(ar->dom) + " in " + pretty(t));
            return ar->cod;
          } else if constexpr (std::is_same_v<T, TyLam>) {
            escape_check(env, n.var, t);
            return ty_forall(n.var, go(env, n.body));
          } else if constexpr (std::is_same_v<T, TyApp>) {
            TypePtr fn = go(env, n.fn);
            const Forall* fa = as<Forall>(fn);
            if (!fa)
              err(TypeErrorKind::NotForall,
                  "type-applied a term of non-forall type " + pretty(fn) +
                      " in " + pretty(t));
            return subst_type(fa->body, fa->var, n.ty);
          } else if constexpr (std::is_same_v<T, Callcc>) {
            if (n.ann.ans)
              err(TypeErrorKind::ModeViolation,
                  "abortive continuation annotation carries an answer type");
            EnvA inner = env;
            inner.conts[n.k] = n.ann.hole;
            TypePtr body = go(inner, n.body);
            if (!alpha_eq(body, n.ann.hole))
              err(TypeErrorKind::Mismatch,
                  "callcc body has type " + pretty(body) +
                      " but the continuation expects " + pretty(n.ann.hole));
            return n.ann.hole;
          } else if constexpr (std::is_same_v<T, Shift> ||
                               std::is_same_v<T, Reset>) {
            err(TypeErrorKind::ModeViolation,
                "delimited operator in an abortive term: " + pretty(t));
          } else if constexpr (std::is_same_v<T, ThrowVar>) {
            auto it = env.conts.find(n.k);
            if (it == env.conts.end())
              err(TypeErrorKind::UnboundVar,
                  "unbound continuation variable " + n.k);
            if (!n.result_ann)
              err(TypeErrorKind::ModeViolation,
                  "abortive throw lacks a result annotation");
            TypePtr arg = go(env, n.arg);
            if (!alpha_eq(arg, it->second))
              err(TypeErrorKind::Mismatch,
                  "thrown value has type " + pretty(arg) +
                      " but continuation " + n.k + " expects " +
                      pretty(it->second));
            return n.result_ann;
          } else if constexpr (std::is_same_v<T, ThrowCtx>) {
            if (!n.result_ann)
              err(TypeErrorKind::ModeViolation,
                  "abortive throw lacks a result annotation");
            TypePtr arg = go(env, n.arg);
            TypePtr ans = context_answer(n.ctx, arg);
            if (collect) collect->push_back(ans);
            return n.result_ann;
          }
        },
        t->node);
  }
};

}  // namespace

TypePtr infer_term(const EnvA& env, Mode mode, const TermPtr& t,
                   std::vector<TypePtr>* collect) {
  if (mode.family != Family::Abortive)
    err(TypeErrorKind::ModeViolation,
        "abortive typechecker used on a delimited mode");
  InferA inf{mode, collect};
  return inf.go(env, t);
}

TypePtr answer_type(Mode mode, const Context& e, const TypePtr& hole) {
  InferA inf{mode, nullptr};
  return inf.context_answer(e, hole);
}

namespace {

// Replaces every occurrence of the type `needle` in `hay` by variable a.
// Stops below binders that capture a free variable of the needle.
TypePtr anti_subst(const TypePtr& hay, const TypePtr& needle,
                   const std::string& a,
                   const std::set<std::string>& needle_ftv) {
  if (alpha_eq(hay, needle)) return ty_var(a);
  return std::visit(
      [&](const auto& n) -> TypePtr {
        using T = std::decay_t<decltype(n)>;
        auto rec = [&](const TypePtr& t) {
          return anti_subst(t, needle, a, needle_ftv);
        };
        if constexpr (std::is_same_v<T, Arrow>) {
          return ty_arrow(rec(n.dom), rec(n.cod));
        } else if constexpr (std::is_same_v<T, Forall>) {
          if (needle_ftv.count(n.var)) return hay;
          return ty_forall(n.var, rec(n.body));
        } else if constexpr (std::is_same_v<T, ArrowD>) {
          ArgType dom = n.dom;
          if (const TypePtr* p = std::get_if<TypePtr>(&dom)) {
            dom = rec(*p);
          } else {
            const CompTriple& c = std::get<CompTriple>(dom);
            dom = CompTriple{rec(c.val), rec(c.ans_in), rec(c.ans_out)};
          }
          return ty_arrow_d(dom, rec(n.cod), rec(n.ans_in), rec(n.ans_out));
        } else if constexpr (std::is_same_v<T, ForallD>) {
          if (needle_ftv.count(n.var)) return hay;
          return ty_forall_d(n.var, rec(n.body), rec(n.ans_in),
                             rec(n.ans_out));
        } else {
          return hay;
        }
      },
      hay->node);
}

}  // namespace

ContextType infer_context(const EnvA& env, Mode mode, const Context& e,
                          const TypePtr& answer) {
  if (auto bad = mode_violation(mode, e))
    err(TypeErrorKind::ModeViolation, *bad);
  TypePtr cur = answer;
  for (auto it = e.frames.rbegin(); it != e.frames.rend(); ++it) {
    cur = std::visit(
        [&](const auto& n) -> TypePtr {
          using F = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<F, AppFrame>) {
            return ty_arrow(infer_term(env, mode, n.arg), cur);
          } else if constexpr (std::is_same_v<F, FunFrame>) {
            TypePtr fn = infer_term(env, mode, n.fn);
            const Arrow* ar = as<Arrow>(fn);
            if (!ar)
              err(TypeErrorKind::NotArrow,
                  "function frame holds a term of type " + pretty(fn));
            if (!alpha_eq(ar->cod, cur))
              err(TypeErrorKind::Mismatch,
                  "function frame produces " + pretty(ar->cod) +
                      " where the surrounding context consumes " +
                      pretty(cur));
            return ar->dom;
          } else if constexpr (std::is_same_v<F, TyAppFrame>) {
            std::string a = fresh_name("a");
            std::set<std::string> nf = free_type_vars(n.ty);
            return ty_forall(a, anti_subst(cur, n.ty, a, nf));
          } else if constexpr (std::is_same_v<F, ThrowFrame>) {
            if (!n.result_ann)
              err(TypeErrorKind::ModeViolation,
                  "abortive throw frame lacks a result annotation");
            if (!alpha_eq(n.result_ann, cur))
              err(TypeErrorKind::Mismatch,
                  "throw frame is annotated " + pretty(n.result_ann) +
                      " where the surrounding context consumes " +
                      pretty(cur));
            return infer_context(env, mode, n.ctx, answer).hole;
          }
        },
        it->node);
  }
  return ContextType{cur, nullptr};
}

TypePtr check_program(Mode mode, const TermPtr& t) {
  if (auto bad = mode_violation(mode, t))
    err(TypeErrorKind::ModeViolation, *bad);
  if (!is_plain(t))
    err(TypeErrorKind::NotPlain,
        "source programs must not contain reified contexts");
  FreeVars fv = free_vars(t);
  if (!fv.empty()) {
    std::string who = !fv.term.empty()  ? *fv.term.begin()
                      : !fv.cont.empty() ? *fv.cont.begin()
                                         : *fv.type.begin();
    err(TypeErrorKind::OpenTerm, "program has a free variable: " + who);
  }
  return infer_term(EnvA{}, mode, t);
}

TypePtr check_runtime(Mode mode, const TermPtr& t,
                      std::vector<TypePtr>* reified_answers) {
  if (auto bad = mode_violation(mode, t))
    err(TypeErrorKind::ModeViolation, *bad);
  FreeVars fv = free_vars(t);
  if (!fv.empty()) {
    std::string who = !fv.term.empty()  ? *fv.term.begin()
                      : !fv.cont.empty() ? *fv.cont.begin()
                                         : *fv.type.begin();
    err(TypeErrorKind::OpenTerm,
        "intermediate program has a free variable: " + who);
  }
  return infer_term(EnvA{}, mode, t, reified_answers);
}

}  // namespace fctl
