#include "mgg/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "mgg/errors.hpp"

namespace mgg {

Formula f_true() { return Formula{}; }

Formula f_false() {
  Formula f;
  f.kind = Formula::Kind::False;
  return f;
}

Formula f_P(const std::string& var, Target t) {
  Formula f;
  f.kind = Formula::Kind::P;
  f.var = var;
  f.target = t;
  return f;
}

Formula f_Q(const std::string& var, Target t) {
  Formula f = f_P(var, t);
  f.kind = Formula::Kind::Q;
  return f;
}

Formula f_PU(const std::string& a, const std::string& b, std::optional<Relation> rel) {
  Formula f;
  f.kind = Formula::Kind::PU;
  f.var = a;
  f.var2 = b;
  f.relation = std::move(rel);
  return f;
}

Formula f_not(Formula x) {
  Formula f;
  f.kind = Formula::Kind::Not;
  f.kids.push_back(std::move(x));
  return f;
}

namespace {

Formula nary(Formula::Kind k, std::vector<Formula> xs) {
  Formula f;
  f.kind = k;
  f.kids = std::move(xs);
  return f;
}

}  // namespace

Formula f_and(std::vector<Formula> xs) {
  if (xs.empty()) return f_true();
  if (xs.size() == 1) return std::move(xs[0]);
  return nary(Formula::Kind::And, std::move(xs));
}

Formula f_or(std::vector<Formula> xs) {
  if (xs.empty()) return f_false();
  if (xs.size() == 1) return std::move(xs[0]);
  return nary(Formula::Kind::Or, std::move(xs));
}

Formula f_implies(Formula a, Formula b) {
  return nary(Formula::Kind::Implies, {std::move(a), std::move(b)});
}

Formula f_quant(Quant q, const std::string& var, Formula body, std::optional<Morphism> anchor) {
  Formula f;
  f.kind = Formula::Kind::Quant;
  f.quant = q;
  f.var = var;
  f.anchor = std::move(anchor);
  f.kids.push_back(std::move(body));
  return f;
}

const char* quant_name(Quant q) {
  switch (q) {
    case Quant::Exists: return "exists";
    case Quant::Forall: return "forall";
    case Quant::NExists: return "nexists";
    case Quant::NForall: return "nforall";
  }
  return "?";
}

// ---- parser ----

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Formula parse() {
    Formula f = implication();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw InputError("formula: " + what + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(const std::string& tok) {
    skip();
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(const std::string& tok) {
    if (!eat(tok)) fail("expected '" + tok + "'");
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '#' ||
           c == '\'' || c == '~';
  }

  std::string ident() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    if (b == pos_) fail("expected a name");
    return s_.substr(b, pos_ - b);
  }

  // a word that is a whole identifier, not a prefix of one
  bool keyword(const std::string& w) {
    skip();
    if (s_.compare(pos_, w.size(), w) != 0) return false;
    std::size_t e = pos_ + w.size();
    if (e < s_.size() && ident_char(s_[e])) return false;
    pos_ = e;
    return true;
  }

  Relation pairs() {
    Relation r;
    expect("{");
    if (eat("}")) return r;
    do {
      std::string a = ident();
      expect(":");
      std::string b = ident();
      r.emplace_back(a, b);
    } while (eat(","));
    expect("}");
    return r;
  }

  Target target() {
    skip();
    std::string t = ident();
    if (t == "G") return Target::Host;
    if (t == "~G") return Target::NegHost;
    fail("unknown target '" + t + "'");
  }

  Formula implication() {
    Formula a = disjunction();
    if (eat("->")) return f_implies(std::move(a), implication());
    return a;
  }

  Formula disjunction() {
    std::vector<Formula> xs{conjunction()};
    while (eat("|")) xs.push_back(conjunction());
    return xs.size() == 1 ? std::move(xs[0]) : nary(Formula::Kind::Or, std::move(xs));
  }

  Formula conjunction() {
    std::vector<Formula> xs{unary()};
    while (eat("&")) xs.push_back(unary());
    return xs.size() == 1 ? std::move(xs[0]) : nary(Formula::Kind::And, std::move(xs));
  }

  Formula unary() {
    if (eat("!")) return f_not(unary());
    return primary();
  }

  std::optional<Quant> quantifier() {
    if (keyword("exists")) return Quant::Exists;
    if (keyword("forall")) return Quant::Forall;
    if (keyword("nexists")) return Quant::NExists;
    if (keyword("nforall")) return Quant::NForall;
    return std::nullopt;
  }

  Formula quantified(Quant q) {
    std::string v = ident();
    std::optional<Morphism> anchor;
    if (eat("@")) {
      Morphism m;
      for (auto& [a, b] : pairs()) m.nodes[a] = b;
      anchor = m;
    }
    if (auto inner = quantifier()) return f_quant(q, v, quantified(*inner), anchor);
    expect("[");
    Formula body = implication();
    expect("]");
    return f_quant(q, v, std::move(body), anchor);
  }

  Formula primary() {
    if (eat("(")) {
      Formula f = implication();
      expect(")");
      return f;
    }
    if (auto q = quantifier()) return quantified(*q);
    if (keyword("true")) return f_true();
    if (keyword("false")) return f_false();
    if (keyword("PU")) {
      expect("(");
      std::string a = ident();
      expect(",");
      std::string b = ident();
      std::optional<Relation> rel;
      if (eat(",")) rel = pairs();
      expect(")");
      return f_PU(a, b, rel);
    }
    for (const char* k : {"P", "Q"}) {
      std::size_t save = pos_;
      if (keyword(k)) {
        if (!eat("(")) {
          pos_ = save;
          break;
        }
        std::string v = ident();
        Target t = Target::Host;
        if (eat(",")) t = target();
        expect(")");
        return std::string(k) == "P" ? f_P(v, t) : f_Q(v, t);
      }
    }
    return f_P(ident());
  }
};

std::string relation_str(const Relation& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += r[i].first + ":" + r[i].second;
  }
  return s + "}";
}

int prec(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Not: return 4;
    default: return 5;
  }
}

std::string print(const Formula& f);

std::string wrap(const Formula& f, int need) {
  std::string s = print(f);
  return prec(f) < need ? "(" + s + ")" : s;
}

std::string print(const Formula& f) {
  using K = Formula::Kind;
  auto tgt = [](Target t) { return t == Target::Host ? "" : ",~G"; };
  switch (f.kind) {
    case K::True: return "true";
    case K::False: return "false";
    case K::P: return f.target == Target::Host ? f.var : "P(" + f.var + tgt(f.target) + ")";
    case K::Q: return "Q(" + f.var + tgt(f.target) + ")";
    case K::PU:
      return "PU(" + f.var + "," + f.var2 + (f.relation ? "," + relation_str(*f.relation) : "") +
             ")";
    case K::Not: return "!" + wrap(f.kids[0], 4);
    case K::And:
    case K::Or: {
      std::string s;
      for (std::size_t i = 0; i < f.kids.size(); ++i) {
        if (i) s += f.kind == K::And ? " & " : " | ";
        s += wrap(f.kids[i], prec(f) + 1);
      }
      return s;
    }
    case K::Implies: return wrap(f.kids[0], 2) + " -> " + wrap(f.kids[1], 1);
    case K::Quant: {
      std::string s = std::string(quant_name(f.quant)) + " " + f.var;
      if (f.anchor) {
        Relation r(f.anchor->nodes.begin(), f.anchor->nodes.end());
        s += "@" + relation_str(r);
      }
      if (f.kids[0].kind == K::Quant) return s + " " + print(f.kids[0]);
      return s + " [" + print(f.kids[0]) + "]";
    }
  }
  return "?";
}

void collect(const Formula& f, bool quantified, std::vector<std::string>& out) {
  auto add = [&](const std::string& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  if (quantified && f.kind == Formula::Kind::Quant) add(f.var);
  if (!quantified) {
    if (f.kind == Formula::Kind::P || f.kind == Formula::Kind::Q) add(f.var);
    if (f.kind == Formula::Kind::PU) {
      add(f.var);
      add(f.var2);
    }
  }
  for (const auto& k : f.kids) collect(k, quantified, out);
}

}  // namespace

Formula parse_formula(const std::string& text) { return Parser(text).parse(); }

std::string to_string(const Formula& f) { return print(f); }

std::vector<std::string> bound_vars(const Formula& f) {
  std::vector<std::string> out;
  collect(f, true, out);
  return out;
}

std::vector<std::string> atom_vars(const Formula& f) {
  std::vector<std::string> out;
  collect(f, false, out);
  return out;
}

}  // namespace mgg
