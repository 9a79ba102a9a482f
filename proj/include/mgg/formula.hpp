#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mgg/morphism.hpp"

namespace mgg {

enum class Quant { Exists, Forall, NExists, NForall };
enum class Target { Host, NegHost };

using Relation = std::vector<std::pair<std::string, std::string>>;

// Nested formula tree. A quantifier may carry an anchor: a fixed binding
// for its variable, which the host-relative rewrites introduce.
struct Formula {
  enum class Kind { True, False, P, Q, PU, Not, And, Or, Implies, Quant };

  Kind kind = Kind::True;
  std::string var, var2;
  Target target = Target::Host;
  std::optional<Relation> relation;  // PU only
  Quant quant = Quant::Exists;
  std::optional<Morphism> anchor;    // Quant only
  std::vector<Formula> kids;

  bool operator==(const Formula&) const = default;
};

Formula f_true();
Formula f_false();
Formula f_P(const std::string& var, Target t = Target::Host);
Formula f_Q(const std::string& var, Target t = Target::Host);
Formula f_PU(const std::string& a, const std::string& b, std::optional<Relation> rel = {});
Formula f_not(Formula x);
Formula f_and(std::vector<Formula> xs);
Formula f_or(std::vector<Formula> xs);
Formula f_implies(Formula a, Formula b);
Formula f_quant(Quant q, const std::string& var, Formula body,
                std::optional<Morphism> anchor = {});

// Syntax: exists A forall B [ (A & Q(B)) -> P(C,~G) ]; also true, false,
// PU(A,B), PU(A,B,{x:y,...}) and anchors exists A@{x:h1,...}.
Formula parse_formula(const std::string& text);
std::string to_string(const Formula& f);

const char* quant_name(Quant q);

// Variables in quantifier order of first appearance.
std::vector<std::string> bound_vars(const Formula& f);
// Variables used by atoms.
std::vector<std::string> atom_vars(const Formula& f);

}  // namespace mgg
