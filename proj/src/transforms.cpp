#include "mgg/transforms.hpp"

#include <algorithm>
#include <set>

#include "mgg/errors.hpp"

namespace mgg {

const char* op_name(ReductionStep::Op op) {
  switch (op) {
    case ReductionStep::Op::Closure: return "closure";
    case ReductionStep::Op::Decomposition: return "decomposition";
    case ReductionStep::Op::IdentityRewrite: return "identity-rewrite";
    case ReductionStep::Op::Specialization: return "specialization";
  }
  return "?";
}

std::map<std::string, std::size_t> node_census(const TypedDigraph& g) {
  std::map<std::string, std::size_t> c;
  for (const auto& n : g.present_nodes()) ++c[n.type];
  return c;
}

namespace {

using K = Formula::Kind;

Formula nnf(const Formula& f, bool neg) {
  switch (f.kind) {
    case K::True: return neg ? f_false() : f_true();
    case K::False: return neg ? f_true() : f_false();
    case K::P:
    case K::Q:
    case K::PU: return neg ? f_not(f) : f;
    case K::Not: return nnf(f.kids[0], !neg);
    case K::And:
    case K::Or: {
      std::vector<Formula> xs;
      for (const auto& k : f.kids) xs.push_back(nnf(k, neg));
      bool conj = (f.kind == K::And) != neg;
      return conj ? f_and(std::move(xs)) : f_or(std::move(xs));
    }
    case K::Implies: {
      Formula a = nnf(f.kids[0], !neg), b = nnf(f.kids[1], neg);
      return neg ? f_and({std::move(a), std::move(b)}) : f_or({std::move(a), std::move(b)});
    }
    case K::Quant: {
      bool universal = f.quant == Quant::Forall || f.quant == Quant::NExists;
      bool body_neg = f.quant == Quant::NExists || f.quant == Quant::NForall;
      if (neg) {
        universal = !universal;
        body_neg = !body_neg;
      }
      return f_quant(universal ? Quant::Forall : Quant::Exists, f.var, nnf(f.kids[0], body_neg),
                     f.anchor);
    }
  }
  return f;
}

Formula rename(const Formula& f, const std::map<std::string, std::string>& r) {
  Formula g = f;
  if (auto it = r.find(g.var); it != r.end()) g.var = it->second;
  if (auto it = r.find(g.var2); it != r.end()) g.var2 = it->second;
  for (auto& k : g.kids) k = rename(k, r);
  return g;
}

bool contains_quant(const Formula& f, const std::string& var) {
  if (f.kind == K::Quant && f.var == var) return true;
  for (const auto& k : f.kids)
    if (contains_quant(k, var)) return true;
  return false;
}

void universals(const Formula& f, std::vector<std::string>& out) {
  if (f.kind == K::Quant && f.quant == Quant::Forall) out.push_back(f.var);
  for (const auto& k : f.kids) universals(k, out);
}

Formula simplify(const Formula& f) {
  switch (f.kind) {
    case K::And:
    case K::Or: {
      bool conj = f.kind == K::And;
      std::vector<Formula> xs;
      for (const auto& k : f.kids) {
        Formula s = simplify(k);
        if (s.kind == (conj ? K::True : K::False)) continue;
        if (s.kind == (conj ? K::False : K::True)) return s;
        if (s.kind == f.kind)
          for (auto& kk : s.kids) xs.push_back(std::move(kk));
        else
          xs.push_back(std::move(s));
      }
      return conj ? f_and(std::move(xs)) : f_or(std::move(xs));
    }
    case K::Not: {
      Formula s = simplify(f.kids[0]);
      if (s.kind == K::True) return f_false();
      if (s.kind == K::False) return f_true();
      return f_not(std::move(s));
    }
    case K::Quant: {
      Formula s = simplify(f.kids[0]);
      // exists over anything of false, forall over anything of true
      if (s.kind == K::False && f.quant == Quant::Exists) return s;
      if (s.kind == K::True && f.quant == Quant::Forall) return s;
      return f_quant(f.quant, f.var, std::move(s), f.anchor);
    }
    default: return f;
  }
}

class Rewriter {
 public:
  Rewriter(Diagram d, const TypedDigraph* g) : d_(std::move(d)), g_(g) {}

  Diagram& diagram() { return d_; }
  std::vector<ReductionStep>& steps() { return steps_; }

  bool linked(const std::string& a, const std::string& b) const {
    for (const auto& ar : d_.arrows)
      if ((ar.from == a && ar.to == b) || (ar.from == b && ar.to == a)) return true;
    return false;
  }

  bool linked_to_universal(const Formula& body, const std::string& x) const {
    std::vector<std::string> us;
    universals(body, us);
    for (const auto& u : us)
      if (linked(u, x)) return true;
    return false;
  }

  std::vector<Binding> candidates(const Formula& q, const Env& env) const {
    std::vector<Binding> out;
    if (q.anchor) {
      if (consistent(d_, q.var, *q.anchor, env)) out.push_back(*q.anchor);
      return out;
    }
    for (auto& m : domain(d_.graph(q.var), *g_))
      if (consistent(d_, q.var, m, env)) out.push_back(std::move(m));
    return out;
  }

  // exists X f -> or of exists X@x f; forall X f -> and of forall X@x f
  Formula specialize(const Formula& q, const Env& env) {
    std::vector<Formula> xs;
    auto cands = candidates(q, env);
    for (const auto& m : cands) xs.push_back(f_quant(q.quant, q.var, q.kids[0], m));
    steps_.push_back({ReductionStep::Op::Specialization, q.var, cands.size()});
    return q.quant == Quant::Exists ? f_or(std::move(xs)) : f_and(std::move(xs));
  }

  std::string fresh(const std::string& base) const {
    std::string n = base;
    while (d_.has(n)) n += "'";
    return n;
  }

  // Copies every graph in r under its new name, with the arrows touching it.
  void copy_vars(const std::map<std::string, std::string>& r) {
    for (const auto& [from, to] : r) d_.graphs[to] = d_.graph(from);
    std::vector<Arrow> extra;
    for (const auto& ar : d_.arrows) {
      bool f = r.count(ar.from), t = r.count(ar.to);
      if (!f && !t) continue;
      Arrow c = ar;
      if (f) c.from = r.at(ar.from);
      if (t) c.to = r.at(ar.to);
      extra.push_back(std::move(c));
    }
    for (auto& a : extra) d_.arrows.push_back(std::move(a));
  }

  Formula close_node(const Formula& q, const Env& env) {
    auto cands = candidates(q, env);
    steps_.push_back({ReductionStep::Op::Closure, q.var, cands.size()});
    if (cands.empty()) return f_true();
    std::vector<std::string> inner = bound_vars(q.kids[0]);
    std::vector<std::string> names;
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      std::map<std::string, std::string> r;
      std::string idx = std::to_string(i + 1);
      r[q.var] = fresh(q.var + idx);
      d_.graphs[r[q.var]] = d_.graph(q.var);  // reserve the name
      for (const auto& v : inner)
        if (v != q.var && !r.count(v)) {
          r[v] = fresh(v + idx);
          d_.graphs[r[v]] = d_.graph(v);
        }
      copy_vars(r);
      names.push_back(r[q.var]);
      parts.push_back(rename(q.kids[0], r));
    }
    std::vector<Formula> conj;
    for (std::size_t i = 0; i < cands.size(); ++i)
      for (std::size_t j = i + 1; j < cands.size(); ++j) {
        Relation rel;
        for (const auto& [x, hx] : cands[i].nodes)
          for (const auto& [y, hy] : cands[j].nodes)
            if (hx == hy) rel.emplace_back(x, y);
        conj.push_back(f_PU(names[i], names[j], rel));
      }
    for (auto& p : parts) conj.push_back(std::move(p));
    Formula body = f_and(std::move(conj));
    for (std::size_t i = cands.size(); i-- > 0;)
      body = f_quant(Quant::Exists, names[i], std::move(body), cands[i]);
    return body;
  }

  // Closes every universal, outermost first.
  Formula close_all(const Formula& f, const Env& env) {
    switch (f.kind) {
      case K::Quant: {
        if (f.quant == Quant::Forall) return close_all(close_node(f, env), env);
        if (!f.anchor && linked_to_universal(f.kids[0], f.var))
          return close_all(specialize(f, env), env);
        Env inner = env;
        if (f.anchor) inner[f.var] = *f.anchor;
        return f_quant(f.quant, f.var, close_all(f.kids[0], inner), f.anchor);
      }
      case K::And:
      case K::Or: {
        std::vector<Formula> xs;
        for (const auto& k : f.kids) xs.push_back(close_all(k, env));
        return f.kind == K::And ? f_and(std::move(xs)) : f_or(std::move(xs));
      }
      default: return f;
    }
  }

  // Closes only the universal on var, specializing the quantifiers above it
  // that it depends on.
  Formula close_one(const Formula& f, const std::string& var, const Env& env) {
    switch (f.kind) {
      case K::Quant: {
        if (f.var == var) {
          if (f.quant != Quant::Forall)
            throw OperatorError("closure needs a universal quantifier on '" + var + "'");
          return close_node(f, env);
        }
        if (!contains_quant(f.kids[0], var)) return f;
        if (!f.anchor && linked(f.var, var)) return close_one(specialize(f, env), var, env);
        Env inner = env;
        if (f.anchor) inner[f.var] = *f.anchor;
        return f_quant(f.quant, f.var, close_one(f.kids[0], var, inner), f.anchor);
      }
      case K::And:
      case K::Or: {
        std::vector<Formula> xs;
        for (const auto& k : f.kids) xs.push_back(close_one(k, var, env));
        return f.kind == K::And ? f_and(std::move(xs)) : f_or(std::move(xs));
      }
      default: return f;
    }
  }

  // exists A.1 ... exists A.k [ P(A.1,t) | ... | P(A.k,t) ]
  Formula pieces(const std::string& var, Target t) {
    const TypedDigraph& a = d_.graph(var);
    auto edges = a.edge_ids();
    steps_.push_back({ReductionStep::Op::Decomposition, var, edges.size()});
    if (edges.empty()) return f_false();
    std::vector<std::string> names;
    std::vector<Formula> alts;
    for (std::size_t j = 0; j < edges.size(); ++j) {
      const auto& [x, y] = edges[j];
      std::vector<std::string> ids{x};
      if (y != x) ids.push_back(y);
      TypedDigraph piece = a.induced(ids);
      for (const auto& [u, v] : piece.edge_ids()) piece.remove_edge(u, v);
      piece.add_edge(x, y);
      std::string name = fresh(var + "." + std::to_string(j + 1));
      d_.graphs[name] = piece;
      Morphism incl;
      for (const auto& id : ids) incl.nodes[id] = id;
      d_.arrows.push_back({name, var, incl});
      names.push_back(name);
      alts.push_back(f_P(name, t));
    }
    Formula body = f_or(std::move(alts));
    for (std::size_t j = names.size(); j-- > 0;)
      body = f_quant(Quant::Exists, names[j], std::move(body));
    return body;
  }

  void require_shape(const std::string& var) const {
    if (!connected_with_edge(d_.graph(var)))
      throw ShapeError("Q atom on '" + var + "' needs a connected graph with at least one edge");
  }

  bool has_absent_type(const std::string& var) const {
    auto types = g_->types();
    for (const auto& n : d_.graph(var).present_nodes())
      if (!types.count(n.type)) return true;
    return false;
  }

  // Literal rewrites and decomposition of Q atoms, on a normalized formula.
  Formula literals(const Formula& f) {
    auto flip = [](Target t) { return t == Target::Host ? Target::NegHost : Target::Host; };
    switch (f.kind) {
      case K::Q:
        require_shape(f.var);
        return pieces(f.var, f.target);
      case K::Not: {
        const Formula& a = f.kids[0];
        if (a.kind == K::P) {
          steps_.push_back({ReductionStep::Op::IdentityRewrite, a.var, 1});
          if (a.target == Target::Host && has_absent_type(a.var)) return f_true();
          return pieces(a.var, flip(a.target));
        }
        if (a.kind == K::Q) {
          require_shape(a.var);
          steps_.push_back({ReductionStep::Op::IdentityRewrite, a.var, 1});
          return f_P(a.var, flip(a.target));
        }
        return f;
      }
      case K::And:
      case K::Or: {
        std::vector<Formula> xs;
        for (const auto& k : f.kids) xs.push_back(literals(k));
        return f.kind == K::And ? f_and(std::move(xs)) : f_or(std::move(xs));
      }
      case K::Quant: return f_quant(f.quant, f.var, literals(f.kids[0]), f.anchor);
      default: return f;
    }
  }

  Formula decompose_var(const Formula& f, const std::string& var, bool& hit) {
    if (f.kind == K::Q && f.var == var) {
      hit = true;
      return pieces(var, f.target);
    }
    Formula g = f;
    for (auto& k : g.kids) k = decompose_var(k, var, hit);
    return g;
  }

  // drops graphs the formula no longer mentions
  void prune(const Formula& f) {
    std::set<std::string> used;
    for (const auto& v : bound_vars(f)) used.insert(v);
    for (const auto& v : atom_vars(f)) used.insert(v);
    for (auto it = d_.graphs.begin(); it != d_.graphs.end();)
      it = used.count(it->first) ? std::next(it) : d_.graphs.erase(it);
    std::erase_if(d_.arrows, [&](const Arrow& a) { return !used.count(a.from) || !used.count(a.to); });
  }

 private:
  Diagram d_;
  const TypedDigraph* g_;
  std::vector<ReductionStep> steps_;
};

}  // namespace

Formula normalize(const Formula& f) { return nnf(f, false); }

GraphConstraint closure(const GraphConstraint& gc, const std::string& var, const TypedDigraph& g) {
  if (!gc.diagram.has(var)) throw InputError("no graph named '" + var + "'");
  Formula f = normalize(gc.formula);
  if (!contains_quant(f, var)) throw OperatorError("'" + var + "' is not quantified");
  Rewriter rw(gc.diagram, &g);
  Formula out = simplify(rw.close_one(f, var, {}));
  rw.prune(out);
  return {rw.diagram(), out};
}

GraphConstraint decompose(const GraphConstraint& gc, const std::string& var) {
  if (!gc.diagram.has(var)) throw InputError("no graph named '" + var + "'");
  if (!connected_with_edge(gc.diagram.graph(var)))
    throw ShapeError("'" + var + "' must be connected with at least one edge");
  Rewriter rw(gc.diagram, nullptr);
  bool hit = false;
  Formula out = rw.decompose_var(gc.formula, var, hit);
  if (!hit) throw OperatorError("no Q atom on '" + var + "'");
  return {rw.diagram(), out};
}

ReductionTrace reduce(const GraphConstraint& gc, const TypedDigraph& g) {
  Rewriter rw(gc.diagram, &g);
  Formula f = normalize(gc.formula);
  f = rw.close_all(f, {});
  f = rw.literals(f);
  f = simplify(f);
  rw.prune(f);
  ReductionTrace t;
  t.steps = rw.steps();
  t.result = {rw.diagram(), f};
  t.census = node_census(g);
  return t;
}

bool is_reduced(const Formula& f) {
  if (f.kind == K::Q || f.kind == K::Implies) return false;
  if (f.kind == K::Quant && f.quant != Quant::Exists) return false;
  if (f.kind == K::Not && f.kids[0].kind != K::PU) return false;
  for (const auto& k : f.kids)
    if (!is_reduced(k)) return false;
  return true;
}

}  // namespace mgg
