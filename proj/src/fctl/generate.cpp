#include "fctl/generate.hpp"

#include <stdexcept>
#include <utility>

#include "fctl/pretty.hpp"
#include "fctl/types_abortive.hpp"
#include "fctl/types_delimited.hpp"

namespace fctl {

// ---------------------------------------------------------------------------
// Rng
// ---------------------------------------------------------------------------

namespace {

std::uint64_t scramble(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

}  // namespace

std::uint64_t Rng::next() {
  state += 0x9E3779B97F4A7C15ull;
  return scramble(state);
}

double Rng::unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::size_t Rng::below(std::size_t n) {
  return n == 0 ? 0 : static_cast<std::size_t>(next() % n);
}

bool Rng::chance(double p) { return unit() < p; }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index,
                       std::uint64_t attempt) {
  std::uint64_t x = scramble(seed + 0x9E3779B97F4A7C15ull * (index + 1));
  return scramble(x ^ (0xBF58476D1CE4E5B9ull * (attempt + 1)));
}

// ---------------------------------------------------------------------------
// Type universes
// ---------------------------------------------------------------------------

namespace {

TypePtr abort_u() {
  // forall a. a -> a
  TypePtr a = ty_var("a");
  return ty_forall("a", ty_arrow(a, a));
}

TypePtr abort_uu() {
  // forall a. a -> a -> a
  TypePtr a = ty_var("a");
  return ty_forall("a", ty_arrow(a, ty_arrow(a, a)));
}

TypePtr delim_u_cbv() {
  // forall a. (a -> a @ [a, a]) @ [a, a]
  TypePtr a = ty_var("a");
  return ty_forall_d("a", ty_arrow_d(ArgType{a}, a, a, a), a, a);
}

TypePtr delim_u_cbn() {
  // forall a. ({a, a, a} -> a @ [a, a]) @ [a, a]
  TypePtr a = ty_var("a");
  return ty_forall_d("a", ty_arrow_d(CompTriple{a, a, a}, a, a, a), a, a);
}

}  // namespace

std::vector<TypePtr> type_universe(Mode mode) {
  if (mode.family == Family::Abortive) {
    TypePtr u = abort_u();
    return {u, abort_uu(), ty_arrow(u, u)};
  }
  if (mode.strategy == Strategy::Cbv) {
    TypePtr u = delim_u_cbv();
    return {u, ty_arrow_d(ArgType{u}, u, u, u)};
  }
  TypePtr u = delim_u_cbn();
  return {u, ty_arrow_d(CompTriple{u, u, u}, u, u, u)};
}

// ---------------------------------------------------------------------------
// Generator
// ---------------------------------------------------------------------------

namespace {

// Raised when a production dead-ends; the caller restarts the whole program
// with the attempt counter mixed into the stream.
struct GenFail {};

struct Gen {
  Mode mode;
  Rng rng;
  double control_prob = 0.3;
  std::vector<std::pair<std::string, ArgType>> vars;
  std::vector<std::pair<std::string, ContextType>> conts;
  std::vector<TypePtr> pool;
  int n_x = 0, n_k = 0, n_a = 0;

  bool abortive() const { return mode.family == Family::Abortive; }
  bool cbv() const { return mode.strategy == Strategy::Cbv; }

  std::string next_var() { return "x" + std::to_string(n_x++); }
  std::string next_cont() { return "k" + std::to_string(n_k++); }
  std::string next_tyvar() { return "b" + std::to_string(n_a++); }

  TypePtr pick_pool() { return pool[rng.below(pool.size())]; }

  // ---- canonical inhabitants -------------------------------------------

  // Answer compatibility for variables: in cbv and in the abortive calculi
  // variables are answer-polymorphic; in delimited cbn a variable's triple
  // fixes its answers.
  bool var_fits(const ArgType& bound, const TypePtr& ty,
                const TypePtr& ans) const {
    if (std::holds_alternative<TypePtr>(bound))
      return alpha_eq(std::get<TypePtr>(bound), ty);
    const auto& tr = std::get<CompTriple>(bound);
    if (!alpha_eq(tr.val, ty)) return false;
    return !ans || alpha_eq(tr.ans_in, ans);
  }

  std::vector<std::size_t> matching_vars(const TypePtr& ty,
                                         const TypePtr& ans) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (var_fits(vars[i].second, ty, ans)) out.push_back(i);
    return out;
  }

  // Pure-shaped types are the only goals the generator works at: both
  // answer slots of every arrow and quantifier it descends into are equal.
  static bool pure_shaped(const TypePtr& ty) {
    if (auto* a = as<ArrowD>(ty)) return alpha_eq(a->ans_in, a->ans_out);
    if (auto* f = as<ForallD>(ty)) return alpha_eq(f->ans_in, f->ans_out);
    return true;
  }

  ArgType bind_of_dom(const ArgType& dom) const { return dom; }

  TermPtr try_canon(const TypePtr& ty, const TypePtr& ans) {
    if (as<TyVar>(ty)) {
      auto ms = matching_vars(ty, ans);
      if (ms.empty()) return nullptr;
      return mk_var(vars[ms.back()].first);
    }
    if (auto* ar = as<Arrow>(ty)) {
      std::string x = next_var();
      vars.emplace_back(x, ArgType{ar->dom});
      TermPtr body = try_canon(ar->cod, nullptr);
      vars.pop_back();
      if (!body) return nullptr;
      return mk_lam(x, ArgType{ar->dom}, body);
    }
    if (auto* f = as<Forall>(ty)) {
      std::string b = next_tyvar();
      TermPtr body = try_canon(subst_type(f->body, f->var, ty_var(b)), nullptr);
      if (!body) return nullptr;
      return mk_tylam(b, body);
    }
    if (auto* ad = as<ArrowD>(ty)) {
      if (!pure_shaped(ty)) return nullptr;
      std::string x = next_var();
      vars.emplace_back(x, ad->dom);
      TermPtr body = try_canon(ad->cod, ad->ans_in);
      vars.pop_back();
      if (!body) return nullptr;
      return mk_lam(x, ad->dom, body);
    }
    if (auto* fd = as<ForallD>(ty)) {
      if (!pure_shaped(ty)) return nullptr;
      std::string b = next_tyvar();
      TypePtr body_ty = subst_type(fd->body, fd->var, ty_var(b));
      TypePtr body_ans = subst_type(fd->ans_in, fd->var, ty_var(b));
      TermPtr body = try_canon(body_ty, body_ans);
      if (!body) return nullptr;
      return mk_tylam(b, body);
    }
    return nullptr;
  }

  // try_canon explores binders; run it against scratch state to answer
  // constructibility questions without minting names.
  bool constructible(const TypePtr& ty, const TypePtr& ans) {
    Gen probe{mode, Rng{0}, 0.0, vars, {}, pool, 0, 0, 0};
    return probe.try_canon(ty, ans) != nullptr;
  }

  TermPtr canon(const TypePtr& ty, const TypePtr& ans) {
    TermPtr t = try_canon(ty, ans);
    if (!t) throw GenFail{};
    return t;
  }

  // ---- abortive productions --------------------------------------------

  TermPtr gen_abort(const TypePtr& ty, int d) {
    auto ms = matching_vars(ty, nullptr);
    if (d <= 0) {
      if (!ms.empty() && rng.chance(0.5))
        return mk_var(vars[ms[rng.below(ms.size())]].first);
      return canon(ty, nullptr);
    }

    std::vector<std::size_t> throwers;
    for (std::size_t i = 0; i < conts.size(); ++i)
      if (constructible(conts[i].second.hole, nullptr)) throwers.push_back(i);
    if (rng.chance(control_prob)) {
      bool can_throw = !throwers.empty();
      if (!can_throw || rng.chance(0.5)) {
        std::string k = next_cont();
        conts.emplace_back(k, ContextType{ty, nullptr});
        TermPtr body = gen_abort(ty, d - 1);
        conts.pop_back();
        return mk_callcc(k, ContextType{ty, nullptr}, body);
      }
      // Copy: the recursive call below may grow `conts` and reallocate.
      auto [k, kt] = conts[throwers[rng.below(throwers.size())]];
      TermPtr arg = gen_abort(kt.hole, d - 1);
      return mk_throw_var(k, ty, arg);
    }

    enum Prod { PVar, PCanon, PLam, PTyLam, PApp, PTyApp };
    std::vector<Prod> prods;
    if (!ms.empty()) prods.insert(prods.end(), 3, PVar);
    if (as<Arrow>(ty)) prods.insert(prods.end(), 3, PLam);
    if (as<Forall>(ty)) prods.insert(prods.end(), 3, PTyLam);
    prods.insert(prods.end(), 3, PApp);
    if (tyapp_source(ty)) prods.insert(prods.end(), 2, PTyApp);
    prods.push_back(PCanon);

    switch (prods[rng.below(prods.size())]) {
      case PVar:
        return mk_var(vars[ms[rng.below(ms.size())]].first);
      case PCanon:
        return canon(ty, nullptr);
      case PLam: {
        auto* ar = as<Arrow>(ty);
        std::string x = next_var();
        vars.emplace_back(x, ArgType{ar->dom});
        TermPtr body = gen_abort(ar->cod, d - 1);
        vars.pop_back();
        return mk_lam(x, ArgType{ar->dom}, body);
      }
      case PTyLam: {
        auto* f = as<Forall>(ty);
        std::string b = next_tyvar();
        TermPtr body = gen_abort(subst_type(f->body, f->var, ty_var(b)), d - 1);
        return mk_tylam(b, body);
      }
      case PApp: {
        TypePtr s = pick_pool();
        TermPtr fn = gen_abort(ty_arrow(s, ty), d - 1);
        TermPtr arg = gen_abort(s, d - 1);
        return mk_app(fn, arg);
      }
      case PTyApp: {
        auto [f, v] = *tyapp_source(ty);
        TermPtr fn = gen_abort(f, d - 1);
        return mk_tyapp(fn, v);
      }
    }
    throw GenFail{};
  }

  // A (forall, instantiation) pair from the universe whose instance is the
  // goal, if any.
  std::optional<std::pair<TypePtr, TypePtr>> tyapp_source(const TypePtr& ty) {
    for (const auto& f : pool) {
      for (const auto& v : pool) {
        if (auto* q = as<Forall>(f)) {
          if (alpha_eq(subst_type(q->body, q->var, v), ty)) return {{f, v}};
        } else if (auto* qd = as<ForallD>(f)) {
          if (alpha_eq(subst_type(qd->body, qd->var, v), ty)) return {{f, v}};
        }
      }
    }
    return std::nullopt;
  }

  // ---- delimited productions -------------------------------------------

  // Goal: judgment (ty, R, R) where R is `ans`, or answer-polymorphic when
  // `ans` is null. Every production keeps the pure shape, and every
  // recursive goal is guarded to stay constructible so depth cutoffs always
  // bottom out.
  TermPtr gen_delim(const TypePtr& ty, const TypePtr& ans, int d) {
    auto ms = matching_vars(ty, ans);
    if (d <= 0) {
      if (!ms.empty() && rng.chance(0.5))
        return mk_var(vars[ms[rng.below(ms.size())]].first);
      return canon(ty, ans);
    }

    std::vector<std::size_t> throwers;
    for (std::size_t i = 0; i < conts.size(); ++i)
      if (alpha_eq(conts[i].second.ans, ty) &&
          constructible(conts[i].second.hole, conts[i].second.ans))
        throwers.push_back(i);

    if (rng.chance(control_prob)) {
      enum Ctl { CReset, CShift, CThrow };
      TypePtr shift_r = ans ? ans : pick_pool();
      std::vector<Ctl> ctls;
      if (constructible(ty, ty)) ctls.push_back(CReset);
      if (constructible(shift_r, shift_r)) ctls.push_back(CShift);
      if (!throwers.empty()) ctls.push_back(CThrow);
      if (!ctls.empty()) {
        switch (ctls[rng.below(ctls.size())]) {
          case CReset:
            return mk_reset(gen_delim(ty, ty, d - 1));
          case CShift: {
            std::string k = next_cont();
            conts.emplace_back(k, ContextType{ty, shift_r});
            TermPtr body = gen_delim(shift_r, shift_r, d - 1);
            conts.pop_back();
            return mk_shift(k, ContextType{ty, shift_r}, body);
          }
          case CThrow: {
            // Copy: the recursive call below may grow `conts` and reallocate.
            auto [k, kt] = conts[throwers[rng.below(throwers.size())]];
            TermPtr arg = cbv() ? gen_delim(kt.hole, ans, d - 1)
                                : gen_delim(kt.hole, kt.ans, d - 1);
            return mk_throw_var(k, nullptr, arg);
          }
        }
      }
    }

    enum Prod { PVar, PCanon, PLam, PTyLam, PApp, PTyApp };
    TypePtr app_r = ans ? ans : pick_pool();
    std::vector<Prod> prods;
    if (!ms.empty()) prods.insert(prods.end(), 3, PVar);
    if (as<ArrowD>(ty) && pure_shaped(ty) && constructible(ty, ans))
      prods.insert(prods.end(), 3, PLam);
    if (as<ForallD>(ty) && pure_shaped(ty) && constructible(ty, ans))
      prods.insert(prods.end(), 3, PTyLam);
    if (constructible(ty, app_r)) prods.insert(prods.end(), 3, PApp);
    auto tsrc = tyapp_source(ty);
    if (tsrc && (!ans || alpha_eq(tsrc->second, ans)))
      prods.insert(prods.end(), 2, PTyApp);
    if (constructible(ty, ans)) prods.push_back(PCanon);
    if (prods.empty()) {
      if (!ms.empty()) return mk_var(vars[ms[rng.below(ms.size())]].first);
      throw GenFail{};
    }

    switch (prods[rng.below(prods.size())]) {
      case PVar:
        return mk_var(vars[ms[rng.below(ms.size())]].first);
      case PCanon:
        return canon(ty, ans);
      case PLam: {
        auto* ad = as<ArrowD>(ty);
        std::string x = next_var();
        vars.emplace_back(x, ad->dom);
        TermPtr body = gen_delim(ad->cod, ad->ans_in, d - 1);
        vars.pop_back();
        return mk_lam(x, ad->dom, body);
      }
      case PTyLam: {
        auto* fd = as<ForallD>(ty);
        std::string b = next_tyvar();
        TypePtr body_ty = subst_type(fd->body, fd->var, ty_var(b));
        TypePtr body_ans = subst_type(fd->ans_in, fd->var, ty_var(b));
        TermPtr body = gen_delim(body_ty, body_ans, d - 1);
        return mk_tylam(b, body);
      }
      case PApp: {
        TypePtr s = pick_pool();
        if (cbv()) {
          TypePtr fty = ty_arrow_d(ArgType{s}, ty, app_r, app_r);
          TermPtr fn = gen_delim(fty, app_r, d - 1);
          TermPtr arg = gen_delim(s, app_r, d - 1);
          return mk_app(fn, arg);
        }
        TypePtr a2 = pick_pool();
        TypePtr fty = ty_arrow_d(CompTriple{s, a2, a2}, ty, app_r, app_r);
        TermPtr fn = gen_delim(fty, app_r, d - 1);
        TermPtr arg = gen_delim(s, a2, d - 1);
        return mk_app(fn, arg);
      }
      case PTyApp: {
        TermPtr fn = gen_delim(tsrc->first, tsrc->second, d - 1);
        return mk_tyapp(fn, tsrc->second);
      }
    }
    throw GenFail{};
  }

  TermPtr program(int depth) {
    TypePtr goal = pick_pool();
    if (abortive()) return gen_abort(goal, depth);
    return mk_reset(gen_delim(goal, goal, depth));
  }
};

}  // namespace

TermPtr canonical_inhabitant(Mode mode, const TypePtr& goal) {
  Gen g{mode, Rng{0}, 0.0, {}, {}, type_universe(mode), 0, 0, 0};
  return g.try_canon(goal, nullptr);
}

TermPtr generate_program(const GenConfig& cfg, std::size_t index) {
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    Gen g{cfg.mode,
          Rng{mix_seed(cfg.seed, index, attempt)},
          cfg.control_prob,
          {},
          {},
          type_universe(cfg.mode),
          0,
          0,
          0};
    int depth = 1 + static_cast<int>(g.rng.below(
                        static_cast<std::size_t>(cfg.max_term_depth)));
    try {
      TermPtr t = g.program(depth);
      if (cfg.mode.family == Family::Abortive)
        check_program(cfg.mode, t);
      else
        check_program_delim(cfg.mode, t);
      return t;
    } catch (const GenFail&) {
    } catch (const TypeError&) {
    }
  }
  throw std::runtime_error("generator exhausted its attempts at index " +
                           std::to_string(index) + " in " +
                           to_string(cfg.mode));
}

}  // namespace fctl
