#pragma once

// Small expression language for scenario coefficients:
//   numbers (1, 0.5, 2e-3), the imaginary unit i, named functions on a point
//   set (z, a0, p0, ...), the indeterminate x, + - * / ^ and parentheses.
// Division is only by constants; ^ takes a non-negative integer literal.
// An expression evaluates to a polynomial in x whose coefficients are value
// vectors on the point set.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ahx/types.hpp"

namespace ahx::expr {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Polynomial in x; coeffs[k] holds the x^k coefficient at every point.
struct XPoly {
  std::vector<CVector> coeffs;
  std::size_t points = 0;

  /// Degree ignoring coefficients with max modulus <= tol (-1 for zero).
  std::ptrdiff_t degree(double tol = 0.0) const;
};

class Expression {
 public:
  /// Throws ParseError with the offending position.
  static Expression parse(const std::string& text);

  const std::string& text() const { return text_; }
  /// Every identifier other than x and i.
  std::set<std::string> names() const;
  bool uses_x() const;

  /// `vars` maps names to values on `points` points.
  XPoly evaluate(const std::map<std::string, CVector>& vars, std::size_t points) const;

 private:
  std::string text_;
  NodePtr root_;
};

}  // namespace ahx::expr
