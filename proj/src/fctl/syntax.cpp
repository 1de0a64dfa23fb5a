#include "fctl/syntax.hpp"

#include <atomic>

namespace fctl {

std::string to_string(Mode m) {
  std::string s = m.family == Family::Abortive ? "abortive" : "delimited";
  s += m.strategy == Strategy::Cbv ? " cbv" : " cbn";
  return s;
}

std::optional<Mode> mode_of_string(const std::string& family,
                                   const std::string& strategy) {
  Mode m{};
  if (family == "abortive")
    m.family = Family::Abortive;
  else if (family == "delimited")
    m.family = Family::Delimited;
  else
    return std::nullopt;
  if (strategy == "cbv")
    m.strategy = Strategy::Cbv;
  else if (strategy == "cbn")
    m.strategy = Strategy::Cbn;
  else
    return std::nullopt;
  return m;
}

TypePtr ty_var(std::string name) {
  return std::make_shared<Type>(Type{TyVar{std::move(name)}});
}
TypePtr ty_arrow(TypePtr dom, TypePtr cod) {
  return std::make_shared<Type>(Type{Arrow{std::move(dom), std::move(cod)}});
}
TypePtr ty_forall(std::string var, TypePtr body) {
  return std::make_shared<Type>(Type{Forall{std::move(var), std::move(body)}});
}
TypePtr ty_arrow_d(ArgType dom, TypePtr cod, TypePtr ans_in, TypePtr ans_out) {
  return std::make_shared<Type>(Type{ArrowD{std::move(dom), std::move(cod),
                                            std::move(ans_in),
                                            std::move(ans_out)}});
}
TypePtr ty_forall_d(std::string var, TypePtr body, TypePtr ans_in,
                    TypePtr ans_out) {
  return std::make_shared<Type>(Type{ForallD{std::move(var), std::move(body),
                                             std::move(ans_in),
                                             std::move(ans_out)}});
}
TypePtr ty_meta(std::uint64_t id) {
  return std::make_shared<Type>(Type{MetaTy{id}});
}

TermPtr mk_var(std::string name) {
  return std::make_shared<Term>(Term{Var{std::move(name)}});
}
TermPtr mk_lam(std::string var, ArgType ann, TermPtr body) {
  return std::make_shared<Term>(
      Term{Lam{std::move(var), std::move(ann), std::move(body)}});
}
TermPtr mk_app(TermPtr fn, TermPtr arg) {
  return std::make_shared<Term>(Term{App{std::move(fn), std::move(arg)}});
}
TermPtr mk_tylam(std::string var, TermPtr body) {
  return std::make_shared<Term>(Term{TyLam{std::move(var), std::move(body)}});
}
TermPtr mk_tyapp(TermPtr fn, TypePtr ty) {
  return std::make_shared<Term>(Term{TyApp{std::move(fn), std::move(ty)}});
}
TermPtr mk_callcc(std::string k, ContextType ann, TermPtr body) {
  return std::make_shared<Term>(
      Term{Callcc{std::move(k), std::move(ann), std::move(body)}});
}
TermPtr mk_shift(std::string k, ContextType ann, TermPtr body) {
  return std::make_shared<Term>(
      Term{Shift{std::move(k), std::move(ann), std::move(body)}});
}
TermPtr mk_reset(TermPtr body) {
  return std::make_shared<Term>(Term{Reset{std::move(body)}});
}
TermPtr mk_throw_var(std::string k, TypePtr result_ann, TermPtr arg) {
  return std::make_shared<Term>(
      Term{ThrowVar{std::move(k), std::move(result_ann), std::move(arg)}});
}
TermPtr mk_throw_ctx(Context ctx, TypePtr result_ann, TermPtr arg) {
  return std::make_shared<Term>(
      Term{ThrowCtx{std::move(ctx), std::move(result_ann), std::move(arg)}});
}

bool is_value(const TermPtr& t) {
  return as<Lam>(t) != nullptr || as<TyLam>(t) != nullptr;
}

static bool plain_ctx(const Context& e);

static bool plain(const TermPtr& t) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) return true;
        if constexpr (std::is_same_v<T, Lam>) return plain(n.body);
        if constexpr (std::is_same_v<T, App>)
          return plain(n.fn) && plain(n.arg);
        if constexpr (std::is_same_v<T, TyLam>) return plain(n.body);
        if constexpr (std::is_same_v<T, TyApp>) return plain(n.fn);
        if constexpr (std::is_same_v<T, Callcc>) return plain(n.body);
        if constexpr (std::is_same_v<T, Shift>) return plain(n.body);
        if constexpr (std::is_same_v<T, Reset>) return plain(n.body);
        if constexpr (std::is_same_v<T, ThrowVar>) return plain(n.arg);
        if constexpr (std::is_same_v<T, ThrowCtx>) return false;
      },
      t->node);
}

static bool plain_ctx(const Context& e) {
  for (const Frame& f : e.frames) {
    bool ok = std::visit(
        [](const auto& n) -> bool {
          using F = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<F, AppFrame>) return plain(n.arg);
          if constexpr (std::is_same_v<F, FunFrame>) return plain(n.fn);
          if constexpr (std::is_same_v<F, TyAppFrame>) return true;
          if constexpr (std::is_same_v<F, ThrowFrame>) return false;
        },
        f.node);
    if (!ok) return false;
  }
  return true;
}

bool is_plain(const TermPtr& t) { return plain(t); }

// ---------------------------------------------------------------- free vars

namespace {

struct FvState {
  FreeVars out;
  // Bound-name environments; a name may be bound more than once.
  std::vector<std::string> term_env, cont_env, type_env;

  bool bound(const std::vector<std::string>& env, const std::string& n) {
    for (const auto& b : env)
      if (b == n) return true;
    return false;
  }

  void type(const TypePtr& t) {
    if (!t) return;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, TyVar>) {
            if (!bound(type_env, n.name)) out.type.insert(n.name);
          } else if constexpr (std::is_same_v<T, Arrow>) {
            type(n.dom);
            type(n.cod);
          } else if constexpr (std::is_same_v<T, Forall>) {
            type_env.push_back(n.var);
            type(n.body);
            type_env.pop_back();
          } else if constexpr (std::is_same_v<T, ArrowD>) {
            arg_type(n.dom);
            type(n.cod);
            type(n.ans_in);
            type(n.ans_out);
          } else if constexpr (std::is_same_v<T, ForallD>) {
            type_env.push_back(n.var);
            type(n.body);
            type(n.ans_in);
            type(n.ans_out);
            type_env.pop_back();
          } else if constexpr (std::is_same_v<T, MetaTy>) {
          }
        },
        t->node);
  }

  void arg_type(const ArgType& a) {
    if (const TypePtr* p = std::get_if<TypePtr>(&a)) {
      type(*p);
    } else {
      const CompTriple& c = std::get<CompTriple>(a);
      type(c.val);
      type(c.ans_in);
      type(c.ans_out);
    }
  }

  void context_type(const ContextType& c) {
    type(c.hole);
    type(c.ans);
  }

  void term(const TermPtr& t) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Var>) {
            if (!bound(term_env, n.name)) out.term.insert(n.name);
          } else if constexpr (std::is_same_v<T, Lam>) {
            arg_type(n.ann);
            term_env.push_back(n.var);
            term(n.body);
            term_env.pop_back();
          } else if constexpr (std::is_same_v<T, App>) {
            term(n.fn);
            term(n.arg);
          } else if constexpr (std::is_same_v<T, TyLam>) {
            type_env.push_back(n.var);
            term(n.body);
            type_env.pop_back();
          } else if constexpr (std::is_same_v<T, TyApp>) {
            term(n.fn);
            type(n.ty);
          } else if constexpr (std::is_same_v<T, Callcc> ||
                               std::is_same_v<T, Shift>) {
            context_type(n.ann);
            cont_env.push_back(n.k);
            term(n.body);
            cont_env.pop_back();
          } else if constexpr (std::is_same_v<T, Reset>) {
            term(n.body);
          } else if constexpr (std::is_same_v<T, ThrowVar>) {
            if (!bound(cont_env, n.k)) out.cont.insert(n.k);
            type(n.result_ann);
            term(n.arg);
          } else if constexpr (std::is_same_v<T, ThrowCtx>) {
            context(n.ctx);
            type(n.result_ann);
            term(n.arg);
          }
        },
        t->node);
  }

  void context(const Context& e) {
    for (const Frame& f : e.frames) {
      std::visit(
          [&](const auto& n) {
            using F = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<F, AppFrame>) {
              term(n.arg);
            } else if constexpr (std::is_same_v<F, FunFrame>) {
              term(n.fn);
            } else if constexpr (std::is_same_v<F, TyAppFrame>) {
              type(n.ty);
            } else if constexpr (std::is_same_v<F, ThrowFrame>) {
              context(n.ctx);
              type(n.result_ann);
            }
          },
          f.node);
    }
  }
};

}  // namespace

FreeVars free_vars(const TermPtr& t) {
  FvState s;
  s.term(t);
  return std::move(s.out);
}

void free_type_vars(const TypePtr& t, std::set<std::string>& out) {
  FvState s;
  s.type(t);
  for (auto& n : s.out.type) out.insert(n);
}

std::set<std::string> free_type_vars(const TypePtr& t) {
  std::set<std::string> out;
  free_type_vars(t, out);
  return out;
}

bool is_closed(const TermPtr& t) { return free_vars(t).empty(); }

// ---------------------------------------------------------------- mode check

namespace {

struct ModeCheck {
  Mode m;
  std::optional<std::string> bad;

  void fail(const std::string& what) {
    if (!bad) bad = what;
  }

  bool delim() const { return m.family == Family::Delimited; }
  bool cbn() const { return m.strategy == Strategy::Cbn; }

  void type(const TypePtr& t) {
    if (!t || bad) return;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, TyVar> || std::is_same_v<T, MetaTy>) {
          } else if constexpr (std::is_same_v<T, Arrow>) {
            if (delim()) return fail("plain function type in a delimited term");
            type(n.dom);
            type(n.cod);
          } else if constexpr (std::is_same_v<T, Forall>) {
            if (delim())
              return fail("plain forall type in a delimited term");
            type(n.body);
          } else if constexpr (std::is_same_v<T, ArrowD>) {
            if (!delim())
              return fail("answer-typed function type in an abortive term");
            arg_type(n.dom);
            type(n.cod);
            type(n.ans_in);
            type(n.ans_out);
          } else if constexpr (std::is_same_v<T, ForallD>) {
            if (!delim())
              return fail("answer-typed forall type in an abortive term");
            type(n.body);
            type(n.ans_in);
            type(n.ans_out);
          }
        },
        t->node);
  }

  void arg_type(const ArgType& a) {
    if (bad) return;
    if (const TypePtr* p = std::get_if<TypePtr>(&a)) {
      if (delim() && cbn())
        return fail(
            "function domain must be a computation triple in delimited "
            "call-by-name");
      type(*p);
    } else {
      if (!(delim() && cbn()))
        return fail(
            "computation-triple domain outside delimited call-by-name");
      const CompTriple& c = std::get<CompTriple>(a);
      type(c.val);
      type(c.ans_in);
      type(c.ans_out);
    }
  }

  void context_type(const ContextType& c) {
    if (bad) return;
    if (delim() && !c.ans)
      return fail("continuation annotation lacks an answer type");
    if (!delim() && c.ans)
      return fail("abortive continuation annotation carries an answer type");
    type(c.hole);
    type(c.ans);
  }

  void term(const TermPtr& t) {
    if (bad) return;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Var>) {
          } else if constexpr (std::is_same_v<T, Lam>) {
            arg_type(n.ann);
            term(n.body);
          } else if constexpr (std::is_same_v<T, App>) {
            term(n.fn);
            term(n.arg);
          } else if constexpr (std::is_same_v<T, TyLam>) {
            term(n.body);
          } else if constexpr (std::is_same_v<T, TyApp>) {
            term(n.fn);
            type(n.ty);
          } else if constexpr (std::is_same_v<T, Callcc>) {
            if (delim()) return fail("callcc in a delimited term");
            context_type(n.ann);
            term(n.body);
          } else if constexpr (std::is_same_v<T, Shift>) {
            if (!delim()) return fail("shift in an abortive term");
            context_type(n.ann);
            term(n.body);
          } else if constexpr (std::is_same_v<T, Reset>) {
            if (!delim()) return fail("reset in an abortive term");
            term(n.body);
          } else if constexpr (std::is_same_v<T, ThrowVar>) {
            if (delim() && n.result_ann)
              return fail("delimited throw carries a result annotation");
            if (!delim() && !n.result_ann)
              return fail("abortive throw lacks a result annotation");
            type(n.result_ann);
            term(n.arg);
          } else if constexpr (std::is_same_v<T, ThrowCtx>) {
            if (delim() && n.result_ann)
              return fail("delimited throw carries a result annotation");
            if (!delim() && !n.result_ann)
              return fail("abortive throw lacks a result annotation");
            context(n.ctx);
            type(n.result_ann);
            term(n.arg);
          }
        },
        t->node);
  }

  void context(const Context& e) {
    for (const Frame& f : e.frames) {
      if (bad) return;
      std::visit(
          [&](const auto& n) {
            using F = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<F, AppFrame>) {
              term(n.arg);
            } else if constexpr (std::is_same_v<F, FunFrame>) {
              if (cbn())
                return fail("argument-side frame in a call-by-name context");
              if (!as<Lam>(n.fn))
                return fail("function frame holding a non-lambda");
              term(n.fn);
            } else if constexpr (std::is_same_v<F, TyAppFrame>) {
              type(n.ty);
            } else if constexpr (std::is_same_v<F, ThrowFrame>) {
              if (cbn())
                return fail("throw frame in a call-by-name context");
              if (!delim() && !n.result_ann)
                return fail("abortive throw frame lacks a result annotation");
              if (delim() && n.result_ann)
                return fail("delimited throw frame carries a result annotation");
              context(n.ctx);
              type(n.result_ann);
            }
          },
          f.node);
    }
  }
};

}  // namespace

std::optional<std::string> mode_violation(Mode m, const TermPtr& t) {
  ModeCheck c{m, std::nullopt};
  c.term(t);
  return c.bad;
}

std::optional<std::string> mode_violation(Mode m, const Context& e) {
  ModeCheck c{m, std::nullopt};
  c.context(e);
  return c.bad;
}

// ---------------------------------------------------------------- fresh names

static std::atomic<std::uint64_t> g_fresh_counter{0};

std::string fresh_name(const std::string& base) {
  std::size_t end = base.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(base[end - 1])))
    --end;
  std::string stem = end == 0 ? "v" : base.substr(0, end);
  return stem + std::to_string(++g_fresh_counter);
}

std::string fresh_name_avoiding(const std::string& base,
                                const std::set<std::string>& avoid) {
  std::string n = fresh_name(base);
  while (avoid.count(n)) n = fresh_name(base);
  return n;
}

}  // namespace fctl
