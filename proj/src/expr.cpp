#include "truncinv/expr.hpp"

#include <algorithm>

#include "truncinv/invariants.hpp"

namespace truncinv::expr {

namespace {

std::string join(const std::vector<std::uint32_t>& v) {
  std::string out;
  for (std::size_t t = 0; t < v.size(); ++t) out += (t ? "," : "") + std::to_string(v[t]);
  return out;
}

}  // namespace

NodePtr one(std::size_t arity) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::One;
  n->arity = arity;
  n->key = "1[" + std::to_string(arity) + "]";
  return n;
}

NodePtr dickson(std::size_t r, std::size_t i) {
  if (i >= r) throw Error(ErrorCode::IndexOutOfRange, "Q_{r,i} needs i < r");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Dickson;
  n->arity = r;
  n->r = r;
  n->i = i;
  n->key = "Q" + std::to_string(r) + "," + std::to_string(i);
  return n;
}

NodePtr schur(std::vector<std::uint32_t> lambda, std::size_t s) {
  if (lambda.size() > s) throw Error(ErrorCode::InvalidIndex, "partition has more than s parts");
  lambda.resize(s, 0);
  if (std::all_of(lambda.begin(), lambda.end(), [](auto x) { return x == 0; })) return one(s);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Schur;
  n->arity = s;
  n->lambda = std::move(lambda);
  n->key = "S(" + join(n->lambda) + ")";
  return n;
}

NodePtr product(std::vector<NodePtr> factors) {
  std::size_t arity = 0;
  std::vector<NodePtr> flat;
  for (auto& f : factors) {
    arity = std::max(arity, f->arity);
    if (f->kind == Kind::Product)
      flat.insert(flat.end(), f->children.begin(), f->children.end());
    else if (f->kind != Kind::One)
      flat.push_back(f);
  }
  if (flat.empty()) return one(arity);
  if (flat.size() == 1 && flat[0]->arity == arity) return flat[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->arity = arity;
  n->children = std::move(flat);
  n->key = "P[" + std::to_string(arity) + "](";
  for (std::size_t t = 0; t < n->children.size(); ++t) n->key += (t ? "*" : "") + n->children[t]->key;
  n->key += ")";
  return n;
}

NodePtr power(NodePtr base, std::uint32_t e) {
  if (e == 0) return one(base->arity);
  if (e == 1 || base->kind == Kind::One) return base;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->arity = base->arity;
  n->exponent = e;
  n->key = base->key + "^" + std::to_string(e);
  n->children.push_back(std::move(base));
  return n;
}

NodePtr delta(std::size_t a, std::uint32_t b, std::size_t count, NodePtr child) {
  if (count == 0) return child;
  if (a < 1 || a > child->arity + 1) throw Error(ErrorCode::SpecInvalid, "delta_{a;b} needs 1 <= a <= c + 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Delta;
  n->arity = child->arity + count;
  n->a = a;
  n->b = b;
  n->count = count;
  n->key = "d" + std::to_string(a) + ";" + std::to_string(b) + "^" + std::to_string(count) + "(" + child->key + ")";
  n->children.push_back(std::move(child));
  return n;
}

NodePtr phi(const NodePtr& n) {
  switch (n->kind) {
    case Kind::One: return one(n->arity + 1);
    case Kind::Dickson: return dickson(n->r + 1, n->i + 1);
    case Kind::Schur: return schur(n->lambda, n->arity + 1);
    case Kind::Product: {
      std::vector<NodePtr> f;
      for (const auto& c : n->children) f.push_back(phi(c));
      // Keep the shifted arity even if every factor is narrower.
      f.push_back(one(n->arity + 1));
      return product(std::move(f));
    }
    case Kind::Power: return power(phi(n->children[0]), n->exponent);
    case Kind::Delta: return delta(n->a + 1, n->b + 1, n->count, phi(n->children[0]));
  }
  return n;
}

NodePtr phi_pow(NodePtr n, std::size_t s) {
  for (std::size_t t = 0; t < s; ++t) n = phi(n);
  return n;
}

RationalFn Evaluator::eval(const NodePtr& n) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(n->key); it != memo_.end()) return it->second;
  }
  RationalFn v = compute(n);
  std::lock_guard lock(mutex_);
  memo_.emplace(n->key, v);
  return v;
}

RationalFn Evaluator::compute(const NodePtr& n) {
  switch (n->kind) {
    case Kind::One: return RationalFn(MPoly::one(field_, n->arity));
    case Kind::Dickson: return RationalFn(inv::dickson(field_, n->r, n->i));
    case Kind::Schur: return RationalFn(inv::schur_s(field_, n->lambda, n->arity));
    case Kind::Power: {
      const RationalFn base = eval(n->children[0]);
      if (base.has_unit_den()) return RationalFn(base.as_poly().pow(n->exponent));
      RationalFn out = base;
      for (std::uint32_t t = 1; t < n->exponent; ++t) out = out * base;
      return out.simplify();
    }
    case Kind::Product: {
      RationalFn out(MPoly::one(field_, n->arity));
      for (const auto& c : n->children) out = out * rational::embed(eval(c), n->arity);
      return out.simplify();
    }
    case Kind::Delta: return inv::delta_iter(n->a, n->b, n->count, eval(n->children[0]));
  }
  throw Error(ErrorCode::SpecInvalid, "unknown node");
}

}  // namespace truncinv::expr
