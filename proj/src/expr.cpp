#include "ahx/expr.hpp"

#include <cctype>
#include <cstdlib>

namespace ahx::expr {

struct Node {
  enum Kind { Number, Name, Add, Sub, Mul, Div, Neg, Pow } kind = Number;
  Complex value;
  std::string name;
  unsigned exponent = 0;
  NodePtr lhs, rhs;
};

namespace {

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr run() {
    NodePtr n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, "expression \"" + s_ + "\" at " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr sum() {
    NodePtr n = product();
    for (;;) {
      if (eat('+')) n = make(Node{Node::Add, {}, {}, 0, n, product()});
      else if (eat('-')) n = make(Node{Node::Sub, {}, {}, 0, n, product()});
      else return n;
    }
  }

  NodePtr product() {
    NodePtr n = unary();
    for (;;) {
      if (eat('*')) n = make(Node{Node::Mul, {}, {}, 0, n, unary()});
      else if (eat('/')) n = make(Node{Node::Div, {}, {}, 0, n, unary()});
      else return n;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Node{Node::Neg, {}, {}, 0, unary(), nullptr});
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be a non-negative integer");
    const unsigned long e = std::strtoul(s_.substr(start, pos_ - start).c_str(), nullptr, 10);
    if (e > 64) fail("exponent too large");
    return make(Node{Node::Pow, {}, {}, static_cast<unsigned>(e), base, nullptr});
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      NodePtr n = sum();
      if (!eat(')')) fail("missing ')'");
      return n;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return make(Node{Node::Number, Complex(v, 0.0), {}, 0, nullptr, nullptr});
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (id == "i") return make(Node{Node::Number, Complex(0.0, 1.0), {}, 0, nullptr, nullptr});
      return make(Node{Node::Name, {}, std::move(id), 0, nullptr, nullptr});
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

void collect(const NodePtr& n, std::set<std::string>& out) {
  if (!n) return;
  if (n->kind == Node::Name) out.insert(n->name);
  collect(n->lhs, out);
  collect(n->rhs, out);
}

XPoly constant(Complex c, std::size_t points) { return XPoly{{CVector::Constant(static_cast<Eigen::Index>(points), c)}, points}; }

XPoly add(const XPoly& a, const XPoly& b, double sign) {
  XPoly out{{}, a.points};
  const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
  for (std::size_t k = 0; k < n; ++k) {
    CVector c = CVector::Zero(static_cast<Eigen::Index>(a.points));
    if (k < a.coeffs.size()) c += a.coeffs[k];
    if (k < b.coeffs.size()) c += sign * b.coeffs[k];
    out.coeffs.push_back(std::move(c));
  }
  return out;
}

XPoly mul(const XPoly& a, const XPoly& b) {
  XPoly out{{}, a.points};
  if (a.coeffs.empty() || b.coeffs.empty()) return out;
  out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, CVector::Zero(static_cast<Eigen::Index>(a.points)));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i].cwiseProduct(b.coeffs[j]);
  }
  return out;
}

XPoly eval(const NodePtr& n, const std::map<std::string, CVector>& vars, std::size_t points, const std::string& text) {
  switch (n->kind) {
    case Node::Number: return constant(n->value, points);
    case Node::Name: {
      if (n->name == "x") {
        XPoly p{{CVector::Zero(static_cast<Eigen::Index>(points)), CVector::Ones(static_cast<Eigen::Index>(points))}, points};
        return p;
      }
      auto it = vars.find(n->name);
      if (it == vars.end()) throw Error(ErrorKind::ValidationError, "unknown name '" + n->name + "' in \"" + text + "\"");
      if (static_cast<std::size_t>(it->second.size()) != points) {
        throw Error(ErrorKind::ValidationError, "'" + n->name + "' has the wrong number of values");
      }
      return XPoly{{it->second}, points};
    }
    case Node::Add: return add(eval(n->lhs, vars, points, text), eval(n->rhs, vars, points, text), 1.0);
    case Node::Sub: return add(eval(n->lhs, vars, points, text), eval(n->rhs, vars, points, text), -1.0);
    case Node::Mul: return mul(eval(n->lhs, vars, points, text), eval(n->rhs, vars, points, text));
    case Node::Neg: return add(constant(0.0, points), eval(n->lhs, vars, points, text), -1.0);
    case Node::Div: {
      const XPoly d = eval(n->rhs, vars, points, text);
      if (d.degree() > 0) throw Error(ErrorKind::ValidationError, "division by a polynomial in x in \"" + text + "\"");
      const CVector& v = d.coeffs.front();
      const Complex c = v.size() > 0 ? v[0] : Complex(1.0, 0.0);
      if ((v.array() - c).abs().maxCoeff() > 0.0 || c == Complex(0.0, 0.0)) {
        throw Error(ErrorKind::ValidationError, "division only by nonzero constants in \"" + text + "\"");
      }
      XPoly out = eval(n->lhs, vars, points, text);
      for (auto& k : out.coeffs) k /= c;
      return out;
    }
    case Node::Pow: {
      const XPoly base = eval(n->lhs, vars, points, text);
      XPoly out = constant(1.0, points);
      for (unsigned k = 0; k < n->exponent; ++k) out = mul(out, base);
      return out;
    }
  }
  throw Error(ErrorKind::ParseError, "bad expression");
}

bool mentions_x(const NodePtr& n) {
  if (!n) return false;
  if (n->kind == Node::Name && n->name == "x") return true;
  return mentions_x(n->lhs) || mentions_x(n->rhs);
}

}  // namespace

std::ptrdiff_t XPoly::degree(double tol) const {
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    if (coeffs[k].size() > 0 && coeffs[k].cwiseAbs().maxCoeff() > tol) return static_cast<std::ptrdiff_t>(k);
  }
  return -1;
}

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  e.root_ = Parser(e.text_).run();
  return e;
}

std::set<std::string> Expression::names() const {
  std::set<std::string> out;
  collect(root_, out);
  out.erase("x");
  return out;
}

bool Expression::uses_x() const { return mentions_x(root_); }

XPoly Expression::evaluate(const std::map<std::string, CVector>& vars, std::size_t points) const {
  return eval(root_, vars, points, text_);
}

}  // namespace ahx::expr
