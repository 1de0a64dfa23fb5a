#include "fctl/pretty.hpp"

#include <sstream>

namespace fctl {

namespace {

// Precedence levels, loosest binding first.
enum Level { kLow = 0, kArrow = 1, kApp = 1, kAtom = 2 };

void ty(std::ostream& os, const TypePtr& t, int level);

void arg_ty(std::ostream& os, const ArgType& a, int level) {
  if (const TypePtr* p = std::get_if<TypePtr>(&a)) {
    ty(os, *p, level);
    return;
  }
  const CompTriple& c = std::get<CompTriple>(a);
  os << "{";
  ty(os, c.val, kLow);
  os << ", ";
  ty(os, c.ans_in, kLow);
  os << ", ";
  ty(os, c.ans_out, kLow);
  os << "}";
}

void ty(std::ostream& os, const TypePtr& t, int level) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TyVar>) {
          os << n.name;
        } else if constexpr (std::is_same_v<T, MetaTy>) {
          os << "?m" << n.id;
        } else if constexpr (std::is_same_v<T, Arrow>) {
          if (level > kArrow) os << "(";
          ty(os, n.dom, kAtom);
          os << " -> ";
          ty(os, n.cod, kLow);
          if (level > kArrow) os << ")";
        } else if constexpr (std::is_same_v<T, Forall>) {
          if (level > kLow) os << "(";
          os << "forall " << n.var << ". ";
          ty(os, n.body, kLow);
          if (level > kLow) os << ")";
        } else if constexpr (std::is_same_v<T, ArrowD>) {
          if (level > kArrow) os << "(";
          arg_ty(os, n.dom, kAtom);
          os << " -> ";
          ty(os, n.cod, kLow);
          os << " @ [";
          ty(os, n.ans_in, kLow);
          os << ", ";
          ty(os, n.ans_out, kLow);
          os << "]";
          if (level > kArrow) os << ")";
        } else if constexpr (std::is_same_v<T, ForallD>) {
          if (level > kLow) os << "(";
          os << "forall " << n.var << ". ";
          ty(os, n.body, kLow);
          os << " @ [";
          ty(os, n.ans_in, kLow);
          os << ", ";
          ty(os, n.ans_out, kLow);
          os << "]";
          if (level > kLow) os << ")";
        }
      },
      t->node);
}

void term(std::ostream& os, const TermPtr& t, int level);
void embedded_ctx(std::ostream& os, const Context& e);

void throw_head(std::ostream& os, const TypePtr& result_ann) {
  os << "throw";
  if (result_ann) {
    os << "[";
    ty(os, result_ann, kLow);
    os << "]";
  }
  os << " ";
}

void frame(std::ostream& os, const Frame& f) {
  std::visit(
      [&](const auto& n) {
        using F = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<F, AppFrame>) {
          os << "[] ";
          term(os, n.arg, kAtom);
        } else if constexpr (std::is_same_v<F, FunFrame>) {
          term(os, n.fn, kAtom);
          os << " []";
        } else if constexpr (std::is_same_v<F, TyAppFrame>) {
          os << "[] [";
          ty(os, n.ty, kLow);
          os << "]";
        } else if constexpr (std::is_same_v<F, ThrowFrame>) {
          throw_head(os, n.result_ann);
          embedded_ctx(os, n.ctx);
          os << " []";
        }
      },
      f.node);
}

void embedded_ctx(std::ostream& os, const Context& e) {
  if (e.frames.empty()) {
    os << "^[]";
    return;
  }
  os << "^[ ";
  for (std::size_t i = 0; i < e.frames.size(); ++i) {
    if (i) os << "; ";
    frame(os, e.frames[i]);
  }
  os << " ]";
}

void context_type(std::ostream& os, const ContextType& c) {
  if (c.ans) {
    os << "(";
    ty(os, c.hole, kLow);
    os << ", ";
    ty(os, c.ans, kLow);
    os << ") cont";
  } else {
    ty(os, c.hole, kLow);
    os << " cont";
  }
}

void term(std::ostream& os, const TermPtr& t, int level) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          os << n.name;
        } else if constexpr (std::is_same_v<T, Lam>) {
          if (level > kLow) os << "(";
          os << "fun (" << n.var << " : ";
          arg_ty(os, n.ann, kLow);
          os << ") -> ";
          term(os, n.body, kLow);
          if (level > kLow) os << ")";
        } else if constexpr (std::is_same_v<T, App>) {
          if (level > kApp) os << "(";
          term(os, n.fn, kApp);
          os << " ";
          term(os, n.arg, kAtom);
          if (level > kApp) os << ")";
        } else if constexpr (std::is_same_v<T, TyLam>) {
          if (level > kLow) os << "(";
          os << "tfun " << n.var << " -> ";
          term(os, n.body, kLow);
          if (level > kLow) os << ")";
        } else if constexpr (std::is_same_v<T, TyApp>) {
          if (level > kApp) os << "(";
          term(os, n.fn, kApp);
          os << " [";
          ty(os, n.ty, kLow);
          os << "]";
          if (level > kApp) os << ")";
        } else if constexpr (std::is_same_v<T, Callcc>) {
          if (level > kLow) os << "(";
          os << "callcc (" << n.k << " : ";
          context_type(os, n.ann);
          os << ") -> ";
          term(os, n.body, kLow);
          if (level > kLow) os << ")";
        } else if constexpr (std::is_same_v<T, Shift>) {
          if (level > kLow) os << "(";
          os << "shift (" << n.k << " : ";
          context_type(os, n.ann);
          os << ") -> ";
          term(os, n.body, kLow);
          if (level > kLow) os << ")";
        } else if constexpr (std::is_same_v<T, Reset>) {
          if (level > kLow) os << "(";
          os << "reset ";
          term(os, n.body, kAtom);
          if (level > kLow) os << ")";
        } else if constexpr (std::is_same_v<T, ThrowVar>) {
          if (level > kLow) os << "(";
          throw_head(os, n.result_ann);
          os << n.k << " ";
          term(os, n.arg, kLow);
          if (level > kLow) os << ")";
        } else if constexpr (std::is_same_v<T, ThrowCtx>) {
          if (level > kLow) os << "(";
          throw_head(os, n.result_ann);
          embedded_ctx(os, n.ctx);
          os << " ";
          term(os, n.arg, kLow);
          if (level > kLow) os << ")";
        }
      },
      t->node);
}

}  // namespace

std::string pretty(const TypePtr& t) {
  std::ostringstream os;
  ty(os, t, kLow);
  return os.str();
}

std::string pretty(const ArgType& t) {
  std::ostringstream os;
  arg_ty(os, t, kLow);
  return os.str();
}

std::string pretty(const TermPtr& t) {
  std::ostringstream os;
  term(os, t, kLow);
  return os.str();
}

std::string pretty(const Context& e) {
  if (e.frames.empty()) return "[]";
  std::ostringstream os;
  embedded_ctx(os, e);
  return os.str();
}

std::string pretty(const Metacontext& f) {
  std::ostringstream os;
  for (const Context& e : f.stack) {
    std::string s = pretty(e);
    os << (s == "[]" ? "^[]" : s) << " . ";
  }
  os << "#";
  return os.str();
}

std::string pretty(const ContextType& t) {
  std::ostringstream os;
  context_type(os, t);
  return os.str();
}

std::string pretty(const MetacontextType& t) {
  std::ostringstream os;
  os << "not ";
  ty(os, t.hole, kAtom);
  return os.str();
}

}  // namespace fctl
