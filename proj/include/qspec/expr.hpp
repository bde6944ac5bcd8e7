#pragma once

#include <functional>
#include <memory>
#include <string>

#include "qspec/space.hpp"
#include "qspec/vec.hpp"

namespace qspec {

/// Compiled scalar field over a space, from the small profile grammar:
///   expr    := term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := '-' factor | primary
///   primary := number | 'pi' | 'r' | 's' | coordinate | call | '(' expr ')'
///   call    := ('sin'|'cos'|'exp'|'abs'|'sqrt') '(' expr ')'
///            | ('min'|'max') '(' expr ',' expr ')'
/// where r is the space norm of x, s the weighted coordinate sum, and
/// coordinates are spelled x0, x1, ... Parse errors throw ConfigError with
/// the offending position.
class Expr {
 public:
  struct Node;

  static Expr parse(const std::string& source, const Space& space);
  double eval(const Vec& x) const;
  const std::string& source() const { return source_; }

 private:
  Expr(std::string source, std::shared_ptr<const Node> root, Space space);
  std::string source_;
  std::shared_ptr<const Node> root_;
  Space space_;
};

}  // namespace qspec
