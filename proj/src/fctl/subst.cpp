#include <map>

#include "fctl/syntax.hpp"

namespace fctl {

// ---------------------------------------------------------------- types

TypePtr subst_type(const TypePtr& t, const std::string& a, const TypePtr& s) {
  if (!t) return t;
  return std::visit(
      [&](const auto& n) -> TypePtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TyVar>) {
          return n.name == a ? s : t;
        } else if constexpr (std::is_same_v<T, Arrow>) {
          TypePtr d = subst_type(n.dom, a, s), c = subst_type(n.cod, a, s);
          if (d == n.dom && c == n.cod) return t;
          return ty_arrow(d, c);
        } else if constexpr (std::is_same_v<T, Forall>) {
          if (n.var == a) return t;
          if (free_type_vars(s).count(n.var)) {
            std::set<std::string> avoid = free_type_vars(s);
            free_type_vars(n.body, avoid);
            avoid.insert(a);
            std::string v = fresh_name_avoiding(n.var, avoid);
            TypePtr body = subst_type(n.body, n.var, ty_var(v));
            return ty_forall(v, subst_type(body, a, s));
          }
          TypePtr b = subst_type(n.body, a, s);
          if (b == n.body) return t;
          return ty_forall(n.var, b);
        } else if constexpr (std::is_same_v<T, ArrowD>) {
          ArgType d = subst_type(n.dom, a, s);
          TypePtr c = subst_type(n.cod, a, s);
          TypePtr ai = subst_type(n.ans_in, a, s);
          TypePtr ao = subst_type(n.ans_out, a, s);
          return ty_arrow_d(d, c, ai, ao);
        } else if constexpr (std::is_same_v<T, ForallD>) {
          if (n.var == a) return t;
          auto rebuild = [&](const ForallD& f) {
            return ty_forall_d(f.var, subst_type(f.body, a, s),
                               subst_type(f.ans_in, a, s),
                               subst_type(f.ans_out, a, s));
          };
          if (free_type_vars(s).count(n.var)) {
            std::set<std::string> avoid = free_type_vars(s);
            free_type_vars(n.body, avoid);
            free_type_vars(n.ans_in, avoid);
            free_type_vars(n.ans_out, avoid);
            avoid.insert(a);
            std::string v = fresh_name_avoiding(n.var, avoid);
            ForallD renamed{v, subst_type(n.body, n.var, ty_var(v)),
                            subst_type(n.ans_in, n.var, ty_var(v)),
                            subst_type(n.ans_out, n.var, ty_var(v))};
            return rebuild(renamed);
          }
          return rebuild(n);
        } else if constexpr (std::is_same_v<T, MetaTy>) {
          return t;
        }
      },
      t->node);
}

ArgType subst_type(const ArgType& t, const std::string& a, const TypePtr& s) {
  if (const TypePtr* p = std::get_if<TypePtr>(&t))
    return subst_type(*p, a, s);
  const CompTriple& c = std::get<CompTriple>(t);
  return CompTriple{subst_type(c.val, a, s), subst_type(c.ans_in, a, s),
                    subst_type(c.ans_out, a, s)};
}

static ContextType subst_type_ct(const ContextType& c, const std::string& a,
                                 const TypePtr& s) {
  return ContextType{subst_type(c.hole, a, s),
                     c.ans ? subst_type(c.ans, a, s) : nullptr};
}

// ---------------------------------------------------------------- free vars of a context

static FreeVars free_vars_ctx(const Context& e) {
  FreeVars out;
  struct {
    FreeVars* out;
    void frame_term(const TermPtr& t) {
      FreeVars fv = free_vars(t);
      out->term.insert(fv.term.begin(), fv.term.end());
      out->cont.insert(fv.cont.begin(), fv.cont.end());
      out->type.insert(fv.type.begin(), fv.type.end());
    }
    void type(const TypePtr& ty) {
      if (ty) free_type_vars(ty, out->type);
    }
    void ctx(const Context& c) {
      for (const Frame& f : c.frames) {
        if (const auto* af = as<AppFrame>(f)) frame_term(af->arg);
        if (const auto* ff = as<FunFrame>(f)) frame_term(ff->fn);
        if (const auto* tf = as<TyAppFrame>(f)) type(tf->ty);
        if (const auto* hf = as<ThrowFrame>(f)) {
          ctx(hf->ctx);
          type(hf->result_ann);
        }
      }
    }
  } walker{&out};
  walker.ctx(e);
  return out;
}

// ---------------------------------------------------------------- term-level substitutions

namespace {

// Renames a continuation variable (no reification); used for capture
// avoidance inside subst_term/subst_cont.
TermPtr rename_cont(const TermPtr& t, const std::string& k,
                    const std::string& k2);

Context rename_cont_ctx(const Context& e, const std::string& k,
                        const std::string& k2) {
  Context out;
  for (const Frame& f : e.frames) {
    out.frames.push_back(std::visit(
        [&](const auto& n) -> Frame {
          using F = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<F, AppFrame>)
            return Frame{AppFrame{rename_cont(n.arg, k, k2)}};
          else if constexpr (std::is_same_v<F, FunFrame>)
            return Frame{FunFrame{rename_cont(n.fn, k, k2)}};
          else if constexpr (std::is_same_v<F, TyAppFrame>)
            return Frame{n};
          else
            return Frame{ThrowFrame{rename_cont_ctx(n.ctx, k, k2),
                                    n.result_ann}};
        },
        f.node));
  }
  return out;
}

TermPtr rename_cont(const TermPtr& t, const std::string& k,
                    const std::string& k2) {
  return std::visit(
      [&](const auto& n) -> TermPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          return t;
        } else if constexpr (std::is_same_v<T, Lam>) {
          return mk_lam(n.var, n.ann, rename_cont(n.body, k, k2));
        } else if constexpr (std::is_same_v<T, App>) {
          return mk_app(rename_cont(n.fn, k, k2), rename_cont(n.arg, k, k2));
        } else if constexpr (std::is_same_v<T, TyLam>) {
          return mk_tylam(n.var, rename_cont(n.body, k, k2));
        } else if constexpr (std::is_same_v<T, TyApp>) {
          return mk_tyapp(rename_cont(n.fn, k, k2), n.ty);
        } else if constexpr (std::is_same_v<T, Callcc>) {
          if (n.k == k) return t;
          return mk_callcc(n.k, n.ann, rename_cont(n.body, k, k2));
        } else if constexpr (std::is_same_v<T, Shift>) {
          if (n.k == k) return t;
          return mk_shift(n.k, n.ann, rename_cont(n.body, k, k2));
        } else if constexpr (std::is_same_v<T, Reset>) {
          return mk_reset(rename_cont(n.body, k, k2));
        } else if constexpr (std::is_same_v<T, ThrowVar>) {
          return mk_throw_var(n.k == k ? k2 : n.k, n.result_ann,
                              rename_cont(n.arg, k, k2));
        } else if constexpr (std::is_same_v<T, ThrowCtx>) {
          return mk_throw_ctx(rename_cont_ctx(n.ctx, k, k2), n.result_ann,
                              rename_cont(n.arg, k, k2));
        }
      },
      t->node);
}

struct TermSubst {
  const std::string& x;
  const TermPtr& s;
  FreeVars fvs;  // free variables of s

  Context ctx(const Context& e) {
    Context out;
    for (const Frame& f : e.frames) {
      out.frames.push_back(std::visit(
          [&](const auto& n) -> Frame {
            using F = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<F, AppFrame>)
              return Frame{AppFrame{go(n.arg)}};
            else if constexpr (std::is_same_v<F, FunFrame>)
              return Frame{FunFrame{go(n.fn)}};
            else if constexpr (std::is_same_v<F, TyAppFrame>)
              return Frame{n};
            else
              return Frame{ThrowFrame{ctx(n.ctx), n.result_ann}};
          },
          f.node));
    }
    return out;
  }

  TermPtr go(const TermPtr& t) {
    return std::visit(
        [&](const auto& n) -> TermPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Var>) {
            return n.name == x ? s : t;
          } else if constexpr (std::is_same_v<T, Lam>) {
            if (n.var == x) return t;
            if (fvs.term.count(n.var)) {
              FreeVars bodyFv = free_vars(n.body);
              std::set<std::string> avoid = fvs.term;
              avoid.insert(bodyFv.term.begin(), bodyFv.term.end());
              avoid.insert(x);
              std::string v = fresh_name_avoiding(n.var, avoid);
              TermPtr body = subst_term(n.body, n.var, mk_var(v));
              return mk_lam(v, n.ann, go(body));
            }
            return mk_lam(n.var, n.ann, go(n.body));
          } else if constexpr (std::is_same_v<T, App>) {
            return mk_app(go(n.fn), go(n.arg));
          } else if constexpr (std::is_same_v<T, TyLam>) {
            if (fvs.type.count(n.var)) {
              FreeVars bodyFv = free_vars(n.body);
              std::set<std::string> avoid = fvs.type;
              avoid.insert(bodyFv.type.begin(), bodyFv.type.end());
              std::string v = fresh_name_avoiding(n.var, avoid);
              TermPtr body = subst_type_in_term(n.body, n.var, ty_var(v));
              return mk_tylam(v, go(body));
            }
            return mk_tylam(n.var, go(n.body));
          } else if constexpr (std::is_same_v<T, TyApp>) {
            return mk_tyapp(go(n.fn), n.ty);
          } else if constexpr (std::is_same_v<T, Callcc>) {
            if (fvs.cont.count(n.k)) {
              FreeVars bodyFv = free_vars(n.body);
              std::set<std::string> avoid = fvs.cont;
              avoid.insert(bodyFv.cont.begin(), bodyFv.cont.end());
              std::string v = fresh_name_avoiding(n.k, avoid);
              return mk_callcc(v, n.ann, go(rename_cont(n.body, n.k, v)));
            }
            return mk_callcc(n.k, n.ann, go(n.body));
          } else if constexpr (std::is_same_v<T, Shift>) {
            if (fvs.cont.count(n.k)) {
              FreeVars bodyFv = free_vars(n.body);
              std::set<std::string> avoid = fvs.cont;
              avoid.insert(bodyFv.cont.begin(), bodyFv.cont.end());
              std::string v = fresh_name_avoiding(n.k, avoid);
              return mk_shift(v, n.ann, go(rename_cont(n.body, n.k, v)));
            }
            return mk_shift(n.k, n.ann, go(n.body));
          } else if constexpr (std::is_same_v<T, Reset>) {
            return mk_reset(go(n.body));
          } else if constexpr (std::is_same_v<T, ThrowVar>) {
            return mk_throw_var(n.k, n.result_ann, go(n.arg));
          } else if constexpr (std::is_same_v<T, ThrowCtx>) {
            return mk_throw_ctx(ctx(n.ctx), n.result_ann, go(n.arg));
          }
        },
        t->node);
  }
};

}  // namespace

TermPtr subst_term(const TermPtr& t, const std::string& x, const TermPtr& s) {
  TermSubst ts{x, s, free_vars(s)};
  return ts.go(t);
}

TermPtr subst_type_in_term(const TermPtr& t, const std::string& a,
                           const TypePtr& s) {
  auto sub_ctx = [&](const Context& e, const auto& self) -> Context {
    Context out;
    for (const Frame& f : e.frames) {
      out.frames.push_back(std::visit(
          [&](const auto& n) -> Frame {
            using F = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<F, AppFrame>)
              return Frame{AppFrame{subst_type_in_term(n.arg, a, s)}};
            else if constexpr (std::is_same_v<F, FunFrame>)
              return Frame{FunFrame{subst_type_in_term(n.fn, a, s)}};
            else if constexpr (std::is_same_v<F, TyAppFrame>)
              return Frame{TyAppFrame{subst_type(n.ty, a, s)}};
            else
              return Frame{ThrowFrame{
                  self(n.ctx, self),
                  n.result_ann ? subst_type(n.result_ann, a, s) : nullptr}};
          },
          f.node));
    }
    return out;
  };

  return std::visit(
      [&](const auto& n) -> TermPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          return t;
        } else if constexpr (std::is_same_v<T, Lam>) {
          return mk_lam(n.var, subst_type(n.ann, a, s),
                        subst_type_in_term(n.body, a, s));
        } else if constexpr (std::is_same_v<T, App>) {
          return mk_app(subst_type_in_term(n.fn, a, s),
                        subst_type_in_term(n.arg, a, s));
        } else if constexpr (std::is_same_v<T, TyLam>) {
          if (n.var == a) return t;
          if (free_type_vars(s).count(n.var)) {
            FreeVars bodyFv = free_vars(n.body);
            std::set<std::string> avoid = free_type_vars(s);
            avoid.insert(bodyFv.type.begin(), bodyFv.type.end());
            avoid.insert(a);
            std::string v = fresh_name_avoiding(n.var, avoid);
            TermPtr body = subst_type_in_term(n.body, n.var, ty_var(v));
            return mk_tylam(v, subst_type_in_term(body, a, s));
          }
          return mk_tylam(n.var, subst_type_in_term(n.body, a, s));
        } else if constexpr (std::is_same_v<T, TyApp>) {
          return mk_tyapp(subst_type_in_term(n.fn, a, s),
                          subst_type(n.ty, a, s));
        } else if constexpr (std::is_same_v<T, Callcc>) {
          return mk_callcc(n.k, subst_type_ct(n.ann, a, s),
                           subst_type_in_term(n.body, a, s));
        } else if constexpr (std::is_same_v<T, Shift>) {
          return mk_shift(n.k, subst_type_ct(n.ann, a, s),
                          subst_type_in_term(n.body, a, s));
        } else if constexpr (std::is_same_v<T, Reset>) {
          return mk_reset(subst_type_in_term(n.body, a, s));
        } else if constexpr (std::is_same_v<T, ThrowVar>) {
          return mk_throw_var(n.k,
                              n.result_ann ? subst_type(n.result_ann, a, s)
                                           : nullptr,
                              subst_type_in_term(n.arg, a, s));
        } else if constexpr (std::is_same_v<T, ThrowCtx>) {
          return mk_throw_ctx(sub_ctx(n.ctx, sub_ctx),
                              n.result_ann ? subst_type(n.result_ann, a, s)
                                           : nullptr,
                              subst_type_in_term(n.arg, a, s));
        }
      },
      t->node);
}

namespace {

struct ContSubst {
  const std::string& k;
  const Context& e;
  FreeVars fvs;  // free variables of e

  Context ctx(const Context& c) {
    Context out;
    for (const Frame& f : c.frames) {
      out.frames.push_back(std::visit(
          [&](const auto& n) -> Frame {
            using F = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<F, AppFrame>)
              return Frame{AppFrame{go(n.arg)}};
            else if constexpr (std::is_same_v<F, FunFrame>)
              return Frame{FunFrame{go(n.fn)}};
            else if constexpr (std::is_same_v<F, TyAppFrame>)
              return Frame{n};
            else
              return Frame{ThrowFrame{ctx(n.ctx), n.result_ann}};
          },
          f.node));
    }
    return out;
  }

  TermPtr go(const TermPtr& t) {
    return std::visit(
        [&](const auto& n) -> TermPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Var>) {
            return t;
          } else if constexpr (std::is_same_v<T, Lam>) {
            if (fvs.term.count(n.var)) {
              FreeVars bodyFv = free_vars(n.body);
              std::set<std::string> avoid = fvs.term;
              avoid.insert(bodyFv.term.begin(), bodyFv.term.end());
              std::string v = fresh_name_avoiding(n.var, avoid);
              return mk_lam(v, n.ann, go(subst_term(n.body, n.var, mk_var(v))));
            }
            return mk_lam(n.var, n.ann, go(n.body));
          } else if constexpr (std::is_same_v<T, App>) {
            return mk_app(go(n.fn), go(n.arg));
          } else if constexpr (std::is_same_v<T, TyLam>) {
            if (fvs.type.count(n.var)) {
              FreeVars bodyFv = free_vars(n.body);
              std::set<std::string> avoid = fvs.type;
              avoid.insert(bodyFv.type.begin(), bodyFv.type.end());
              std::string v = fresh_name_avoiding(n.var, avoid);
              return mk_tylam(v, go(subst_type_in_term(n.body, n.var, ty_var(v))));
            }
            return mk_tylam(n.var, go(n.body));
          } else if constexpr (std::is_same_v<T, TyApp>) {
            return mk_tyapp(go(n.fn), n.ty);
          } else if constexpr (std::is_same_v<T, Callcc>) {
            if (n.k == k) return t;
            if (fvs.cont.count(n.k)) {
              FreeVars bodyFv = free_vars(n.body);
              std::set<std::string> avoid = fvs.cont;
              avoid.insert(bodyFv.cont.begin(), bodyFv.cont.end());
              avoid.insert(k);
              std::string v = fresh_name_avoiding(n.k, avoid);
              return mk_callcc(v, n.ann, go(rename_cont(n.body, n.k, v)));
            }
            return mk_callcc(n.k, n.ann, go(n.body));
          } else if constexpr (std::is_same_v<T, Shift>) {
            if (n.k == k) return t;
            if (fvs.cont.count(n.k)) {
              FreeVars bodyFv = free_vars(n.body);
              std::set<std::string> avoid = fvs.cont;
              avoid.insert(bodyFv.cont.begin(), bodyFv.cont.end());
              avoid.insert(k);
              std::string v = fresh_name_avoiding(n.k, avoid);
              return mk_shift(v, n.ann, go(rename_cont(n.body, n.k, v)));
            }
            return mk_shift(n.k, n.ann, go(n.body));
          } else if constexpr (std::is_same_v<T, Reset>) {
            return mk_reset(go(n.body));
          } else if constexpr (std::is_same_v<T, ThrowVar>) {
            if (n.k == k) return mk_throw_ctx(e, n.result_ann, go(n.arg));
            return mk_throw_var(n.k, n.result_ann, go(n.arg));
          } else if constexpr (std::is_same_v<T, ThrowCtx>) {
            return mk_throw_ctx(ctx(n.ctx), n.result_ann, go(n.arg));
          }
        },
        t->node);
  }
};

}  // namespace

TermPtr subst_cont(const TermPtr& t, const std::string& k, const Context& e) {
  ContSubst cs{k, e, free_vars_ctx(e)};
  return cs.go(t);
}

// ---------------------------------------------------------------- alpha equivalence

namespace {

struct Alpha {
  // Parallel binder stacks; a bound name is compared by position.
  std::vector<std::pair<std::string, std::string>> terms, conts, types;

  static bool lookup(const std::vector<std::pair<std::string, std::string>>& env,
                     const std::string& a, const std::string& b) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      bool la = it->first == a, lb = it->second == b;
      if (la || lb) return la && lb;
    }
    return a == b;  // both free
  }

  bool ty(const TypePtr& a, const TypePtr& b) {
    if (!a || !b) return a == b;
    if (a->node.index() != b->node.index()) return false;
    if (const auto* va = as<TyVar>(a))
      return lookup(types, va->name, as<TyVar>(b)->name);
    if (const auto* aa = as<Arrow>(a)) {
      const auto* ab = as<Arrow>(b);
      return ty(aa->dom, ab->dom) && ty(aa->cod, ab->cod);
    }
    if (const auto* fa = as<Forall>(a)) {
      const auto* fb = as<Forall>(b);
      types.emplace_back(fa->var, fb->var);
      bool r = ty(fa->body, fb->body);
      types.pop_back();
      return r;
    }
    if (const auto* aa = as<ArrowD>(a)) {
      const auto* ab = as<ArrowD>(b);
      return arg(aa->dom, ab->dom) && ty(aa->cod, ab->cod) &&
             ty(aa->ans_in, ab->ans_in) && ty(aa->ans_out, ab->ans_out);
    }
    if (const auto* fa = as<ForallD>(a)) {
      const auto* fb = as<ForallD>(b);
      types.emplace_back(fa->var, fb->var);
      bool r = ty(fa->body, fb->body) && ty(fa->ans_in, fb->ans_in) &&
               ty(fa->ans_out, fb->ans_out);
      types.pop_back();
      return r;
    }
    return as<MetaTy>(a)->id == as<MetaTy>(b)->id;
  }

  bool arg(const ArgType& a, const ArgType& b) {
    if (a.index() != b.index()) return false;
    if (const TypePtr* pa = std::get_if<TypePtr>(&a))
      return ty(*pa, std::get<TypePtr>(b));
    const CompTriple& ca = std::get<CompTriple>(a);
    const CompTriple& cb = std::get<CompTriple>(b);
    return ty(ca.val, cb.val) && ty(ca.ans_in, cb.ans_in) &&
           ty(ca.ans_out, cb.ans_out);
  }

  bool ct(const ContextType& a, const ContextType& b) {
    if ((a.ans == nullptr) != (b.ans == nullptr)) return false;
    return ty(a.hole, b.hole) && (!a.ans || ty(a.ans, b.ans));
  }

  bool term(const TermPtr& a, const TermPtr& b) {
    if (a->node.index() != b->node.index()) return false;
    if (const auto* va = as<Var>(a))
      return lookup(terms, va->name, as<Var>(b)->name);
    if (const auto* la = as<Lam>(a)) {
      const auto* lb = as<Lam>(b);
      if (!arg(la->ann, lb->ann)) return false;
      terms.emplace_back(la->var, lb->var);
      bool r = term(la->body, lb->body);
      terms.pop_back();
      return r;
    }
    if (const auto* pa = as<App>(a)) {
      const auto* pb = as<App>(b);
      return term(pa->fn, pb->fn) && term(pa->arg, pb->arg);
    }
    if (const auto* la = as<TyLam>(a)) {
      const auto* lb = as<TyLam>(b);
      types.emplace_back(la->var, lb->var);
      bool r = term(la->body, lb->body);
      types.pop_back();
      return r;
    }
    if (const auto* pa = as<TyApp>(a)) {
      const auto* pb = as<TyApp>(b);
      return term(pa->fn, pb->fn) && ty(pa->ty, pb->ty);
    }
    if (const auto* ca = as<Callcc>(a)) {
      const auto* cb = as<Callcc>(b);
      if (!ct(ca->ann, cb->ann)) return false;
      conts.emplace_back(ca->k, cb->k);
      bool r = term(ca->body, cb->body);
      conts.pop_back();
      return r;
    }
    if (const auto* ca = as<Shift>(a)) {
      const auto* cb = as<Shift>(b);
      if (!ct(ca->ann, cb->ann)) return false;
      conts.emplace_back(ca->k, cb->k);
      bool r = term(ca->body, cb->body);
      conts.pop_back();
      return r;
    }
    if (const auto* ra = as<Reset>(a))
      return term(ra->body, as<Reset>(b)->body);
    if (const auto* ta = as<ThrowVar>(a)) {
      const auto* tb = as<ThrowVar>(b);
      if ((ta->result_ann == nullptr) != (tb->result_ann == nullptr))
        return false;
      if (ta->result_ann && !ty(ta->result_ann, tb->result_ann)) return false;
      return lookup(conts, ta->k, tb->k) && term(ta->arg, tb->arg);
    }
    const auto* ta = as<ThrowCtx>(a);
    const auto* tb = as<ThrowCtx>(b);
    if ((ta->result_ann == nullptr) != (tb->result_ann == nullptr))
      return false;
    if (ta->result_ann && !ty(ta->result_ann, tb->result_ann)) return false;
    return ctx(ta->ctx, tb->ctx) && term(ta->arg, tb->arg);
  }

  bool frame(const Frame& a, const Frame& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* fa = as<AppFrame>(a))
      return term(fa->arg, as<AppFrame>(b)->arg);
    if (const auto* fa = as<FunFrame>(a))
      return term(fa->fn, as<FunFrame>(b)->fn);
    if (const auto* fa = as<TyAppFrame>(a))
      return ty(fa->ty, as<TyAppFrame>(b)->ty);
    const auto* fa = as<ThrowFrame>(a);
    const auto* fb = as<ThrowFrame>(b);
    if ((fa->result_ann == nullptr) != (fb->result_ann == nullptr))
      return false;
    if (fa->result_ann && !ty(fa->result_ann, fb->result_ann)) return false;
    return ctx(fa->ctx, fb->ctx);
  }

  bool ctx(const Context& a, const Context& b) {
    if (a.frames.size() != b.frames.size()) return false;
    for (std::size_t i = 0; i < a.frames.size(); ++i)
      if (!frame(a.frames[i], b.frames[i])) return false;
    return true;
  }
};

}  // namespace

bool alpha_eq(const TypePtr& a, const TypePtr& b) {
  Alpha al;
  return al.ty(a, b);
}
bool alpha_eq(const ArgType& a, const ArgType& b) {
  Alpha al;
  return al.arg(a, b);
}
bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  Alpha al;
  return al.term(a, b);
}
bool alpha_eq(const Context& a, const Context& b) {
  Alpha al;
  return al.ctx(a, b);
}
bool alpha_eq(const Metacontext& a, const Metacontext& b) {
  if (a.stack.size() != b.stack.size()) return false;
  for (std::size_t i = 0; i < a.stack.size(); ++i)
    if (!alpha_eq(a.stack[i], b.stack[i])) return false;
  return true;
}
bool alpha_eq(const ContextType& a, const ContextType& b) {
  Alpha al;
  return al.ct(a, b);
}

TypePtr normalize_metas(const TypePtr& t) {
  std::map<std::uint64_t, std::uint64_t> seen;
  auto walk = [&](const TypePtr& ty, const auto& self) -> TypePtr {
    if (!ty) return ty;
    return std::visit(
        [&](const auto& n) -> TypePtr {
          using T = std::decay_t<decltype(n)>;
          // Numbering follows a fixed left-to-right traversal, so the
          // recursion is sequenced through locals rather than argument
          // lists, whose evaluation order is unspecified.
          if constexpr (std::is_same_v<T, TyVar>) {
            return ty;
          } else if constexpr (std::is_same_v<T, Arrow>) {
            TypePtr dom = self(n.dom, self);
            return ty_arrow(dom, self(n.cod, self));
          } else if constexpr (std::is_same_v<T, Forall>) {
            return ty_forall(n.var, self(n.body, self));
          } else if constexpr (std::is_same_v<T, ArrowD>) {
            ArgType dom = [&]() -> ArgType {
              if (const TypePtr* p = std::get_if<TypePtr>(&n.dom))
                return self(*p, self);
              const CompTriple& c = std::get<CompTriple>(n.dom);
              TypePtr val = self(c.val, self);
              TypePtr ain = self(c.ans_in, self);
              return CompTriple{val, ain, self(c.ans_out, self)};
            }();
            TypePtr cod = self(n.cod, self);
            TypePtr ain = self(n.ans_in, self);
            return ty_arrow_d(dom, cod, ain, self(n.ans_out, self));
          } else if constexpr (std::is_same_v<T, ForallD>) {
            TypePtr body = self(n.body, self);
            TypePtr ain = self(n.ans_in, self);
            return ty_forall_d(n.var, body, ain, self(n.ans_out, self));
          } else {
            auto it = seen.find(n.id);
            if (it == seen.end())
              it = seen.emplace(n.id, seen.size()).first;
            return ty_meta(it->second);
          }
        },
        ty->node);
  };
  return walk(t, walk);
}

}  // namespace fctl
