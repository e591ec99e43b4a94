#pragma once

// Expression trees over delta, Dickson and Schur generators.  Phi acts on the
// syntax (shifting every generator by one variable), so candidate invariants
// are kept as trees and only evaluated at the end.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "truncinv/rational.hpp"

namespace truncinv::expr {

using mpoly::MPoly;
using rational::RationalFn;

enum class Kind { One, Dickson, Schur, Product, Power, Delta };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Kind kind = Kind::One;
  std::size_t arity = 0;                // variables of the value
  std::size_t r = 0, i = 0;             // Dickson Q_{r,i}
  std::vector<std::uint32_t> lambda;    // Schur, padded to arity parts
  std::vector<NodePtr> children;        // Product; Power and Delta use children[0]
  std::uint32_t exponent = 0;           // Power
  std::size_t a = 0;                    // Delta_{a;b}^count
  std::uint32_t b = 0;
  std::size_t count = 0;
  std::string key;                      // canonical text, also the memo key
};

// The constructors normalize: x^0 and delta^0 collapse, products flatten and
// drop ones, so equal syntax gives equal keys.
NodePtr one(std::size_t arity);
NodePtr dickson(std::size_t r, std::size_t i);
NodePtr schur(std::vector<std::uint32_t> lambda, std::size_t s);
NodePtr product(std::vector<NodePtr> factors);
NodePtr power(NodePtr base, std::uint32_t e);
NodePtr delta(std::size_t a, std::uint32_t b, std::size_t count, NodePtr child);

/// delta_{a;b} -> delta_{a+1;b+1}, Q_{r,i} -> Q_{r+1,i+1}, S_lambda -> S_{lambda,0}.
NodePtr phi(const NodePtr& n);
NodePtr phi_pow(NodePtr n, std::size_t s);

/// Memoizing evaluator; safe to share between threads.
class Evaluator {
 public:
  explicit Evaluator(gf::FieldPtr field) : field_(std::move(field)) {}
  RationalFn eval(const NodePtr& n);
  /// Throws NotPolynomial if the value is not a polynomial.
  MPoly eval_poly(const NodePtr& n) { return eval(n).as_poly(); }
  const gf::FieldPtr& field() const noexcept { return field_; }

 private:
  RationalFn compute(const NodePtr& n);
  gf::FieldPtr field_;
  std::mutex mutex_;
  std::map<std::string, RationalFn> memo_;
};

}  // namespace truncinv::expr
