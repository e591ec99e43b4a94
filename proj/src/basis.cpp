#include "truncinv/basis.hpp"

#include <algorithm>
#include <functional>
#include <span>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "truncinv/invariants.hpp"

namespace truncinv::basis {

std::uint64_t q_int(std::uint64_t a, std::uint64_t q) {
  std::uint64_t r = 0, p = 1;
  for (std::uint64_t i = 0; i < a; ++i) {
    r += p;
    p *= q;
  }
  return r;
}

std::size_t YIndex::nvars() const {
  std::size_t n = I.size();
  for (auto i : I) n += i;
  return n;
}

bool canonical_less(const YIndex& x, const YIndex& y) {
  const std::size_t kx = x.k(), ky = y.k();
  return std::tie(kx, x.I, x.J, x.b) < std::tie(ky, y.I, y.J, y.b);
}

std::string to_string(const YIndex& y) {
  auto seq = [](const std::vector<std::uint32_t>& v) {
    std::string s = "(";
    for (std::size_t t = 0; t < v.size(); ++t) s += (t ? "," : "") + std::to_string(v[t]);
    return s + ")";
  };
  return "Y_" + std::to_string(y.b) + seq(y.I) + ";" + seq(y.J);
}

nlohmann::json to_json(const YIndex& y) { return {{"b", y.b}, {"I", y.I}, {"J", y.J}}; }

YIndex yindex_from_json(const nlohmann::json& j) {
  YIndex y;
  y.b = j.at("b").get<std::uint32_t>();
  y.I = j.at("I").get<std::vector<std::uint32_t>>();
  y.J = j.at("J").get<std::vector<std::uint32_t>>();
  if (y.I.size() != y.J.size()) throw Error(ErrorCode::InvalidIndex, "I and J differ in length");
  return y;
}

YIndex phi(const YIndex& y) {
  YIndex out{y.b + 1, {0}, {0}};
  out.I.insert(out.I.end(), y.I.begin(), y.I.end());
  out.J.insert(out.J.end(), y.J.begin(), y.J.end());
  return out;
}

namespace {

void sort_canonical(std::vector<YIndex>& v) { std::sort(v.begin(), v.end(), canonical_less); }

void weak_comps(std::size_t parts, std::size_t total, std::vector<std::uint32_t>& cur,
                std::vector<std::vector<std::uint32_t>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  if (parts == 1) {
    cur.push_back(static_cast<std::uint32_t>(total));
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t t = 0; t <= total; ++t) {
    cur.push_back(static_cast<std::uint32_t>(t));
    weak_comps(parts - 1, total - t, cur, out);
    cur.pop_back();
  }
}

std::vector<YIndex> inductive_rec(std::uint64_t q, std::uint32_t m, std::size_t n) {
  std::vector<YIndex> out;
  if (m == 0) {
    out.push_back({0, {static_cast<std::uint32_t>(n - 1)}, {0}});
    return out;
  }
  if (n == 1) {
    for (std::uint64_t a = 0; a <= q_int(m, q); ++a) out.push_back({m, {0}, {static_cast<std::uint32_t>(a)}});
    return out;
  }
  for (auto y : inductive_rec(q, m, n - 1)) {
    ++y.I[0];
    out.push_back(std::move(y));
  }
  for (const auto& y : inductive_rec(q, m - 1, n - 1)) {
    const YIndex p = phi(y);
    for (std::uint64_t a = 0; a < q_int(m, q); ++a) {
      YIndex z = p;
      z.J[0] = static_cast<std::uint32_t>(a);
      out.push_back(std::move(z));
    }
  }
  return out;
}

}  // namespace

std::vector<YIndex> enumerate_inductive(std::uint64_t q, std::uint32_t m, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidIndex, "n must be at least 1");
  auto out = inductive_rec(q, m, n);
  sort_canonical(out);
  return out;
}

std::vector<YIndex> enumerate_closed(std::uint64_t q, std::uint32_t m, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidIndex, "n must be at least 1");
  std::vector<YIndex> out;
  const std::size_t kmax = std::min<std::size_t>(n, std::size_t{m} + 1);
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<std::vector<std::uint32_t>> Is;
    std::vector<std::uint32_t> cur;
    weak_comps(k, n - k, cur, Is);
    // Bounds on j_s: j_s < [m-s+1]_q for s < k, j_k <= [m-k+1]_q.
    std::vector<std::uint64_t> limit(k);
    for (std::size_t s = 1; s <= k; ++s) {
      const std::uint64_t qi = q_int(m - s + 1, q);
      limit[s - 1] = s < k ? qi : qi + 1;
    }
    std::vector<std::uint32_t> J(k, 0);
    while (true) {
      for (const auto& I : Is) out.push_back({m, I, J});
      std::size_t t = 0;
      while (t < k && ++J[t] == limit[t]) J[t++] = 0;
      if (t == k) break;
    }
  }
  sort_canonical(out);
  return out;
}

std::vector<YIndex> enumerate_basis(std::uint64_t q, std::uint32_t m, std::size_t n) {
  auto closed = enumerate_closed(q, m, n);
  if (closed != enumerate_inductive(q, m, n))
    throw Error(ErrorCode::InvalidIndex, "inductive and closed-form enumerations differ");
  return closed;
}

bool is_basis_index(const YIndex& y, std::uint64_t q, std::uint32_t m, std::size_t n) {
  const std::size_t k = y.k();
  if (k == 0 || y.J.size() != k || y.b != m) return false;
  if (k > std::min<std::size_t>(n, std::size_t{m} + 1)) return false;
  if (y.nvars() != n) return false;
  for (std::size_t s = 1; s <= k; ++s) {
    const std::uint64_t qi = q_int(m - s + 1, q);
    if (s < k ? y.J[s - 1] >= qi : y.J[s - 1] > qi) return false;
  }
  return true;
}

mpoly::Monomial smallest_monomial(const YIndex& y, std::uint64_t q, std::uint32_t m) {
  if (!is_basis_index(y, q, m, y.nvars())) throw Error(ErrorCode::InvalidIndex, to_string(y) + " is not in B_m(n)");
  mpoly::Monomial out(y.nvars());
  const std::uint64_t qm = inv::qpow(q, m);
  std::size_t pos = 0;
  for (std::size_t s = 1; s <= y.k(); ++s) {
    const std::uint64_t qs = inv::qpow(q, s - 1);
    for (std::uint32_t t = 0; t < y.I[s - 1]; ++t) out.set(pos++, static_cast<mpoly::Exp>(qm - qs));
    out.set(pos++, static_cast<mpoly::Exp>(std::uint64_t{y.J[s - 1]} * qs * (q - 1)));
  }
  return out;
}

expr::NodePtr y_expr(const YIndex& y) {
  const std::size_t k = y.k();
  if (k == 0) throw Error(ErrorCode::EmptyIndexSet, "Y with no blocks");
  expr::NodePtr cur = expr::delta(k, y.b, y.I[k - 1], expr::power(expr::dickson(k, k - 1), y.J[k - 1]));
  for (std::size_t s = k - 1; s >= 1; --s) {
    auto D = expr::power(expr::dickson(s, s - 1), y.J[s - 1]);
    cur = expr::delta(s, y.b, y.I[s - 1], expr::product({D, cur}));
  }
  return cur;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<std::uint32_t>> box_partitions(std::size_t s, std::uint32_t width) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t bound) {
    if (cur.size() == s) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t v = 0; v <= bound; ++v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(width);
  return out;
}

std::vector<GLCandidate> nabla(std::uint64_t q, std::uint32_t m, std::size_t s) {
  if (s > m) throw Error(ErrorCode::InvalidIndex, "nabla needs s <= m");
  std::vector<GLCandidate> out;
  for (const auto& lam : box_partitions(s, static_cast<std::uint32_t>(m - s))) {
    std::vector<std::uint64_t> limit(s);
    for (std::size_t i = 0; i < s; ++i) limit[i] = inv::qpow(q, lam[i]);
    std::vector<std::uint32_t> a(s, 0);
    while (true) {
      out.push_back({s, lam, a});
      std::size_t t = 0;
      while (t < s && ++a[t] == limit[t]) a[t++] = 0;
      if (t == s) break;
    }
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> delta_partitions(std::uint64_t q, std::uint32_t m, std::size_t s) {
  if (s > m) throw Error(ErrorCode::InvalidIndex, "Delta needs s <= m");
  std::vector<std::vector<std::uint32_t>> out;
  for (auto lam : box_partitions(s, static_cast<std::uint32_t>(m - s))) {
    lam.push_back(0);
    std::vector<std::uint64_t> lo(s), hi(s);
    for (std::size_t i = 0; i < s; ++i) {
      lo[i] = (inv::qpow(q, lam[i]) - inv::qpow(q, lam[i + 1])) / (q - 1);
      hi[i] = (inv::qpow(q, lam[i] + 1) - inv::qpow(q, lam[i + 1])) / (q - 1);
    }
    std::vector<std::uint32_t> e(s);
    for (std::size_t i = 0; i < s; ++i) e[i] = static_cast<std::uint32_t>(lo[i]);
    while (true) {
      out.push_back(e);
      std::size_t t = 0;
      while (t < s && ++e[t] == hi[t]) {
        e[t] = static_cast<std::uint32_t>(lo[t]);
        ++t;
      }
      if (t == s) break;
    }
  }
  return out;
}

std::uint64_t schur_degree(std::uint64_t q, const std::vector<std::uint32_t>& lambda) {
  const std::size_t s = lambda.size();
  std::uint64_t d = 0;
  for (std::size_t j = 0; j < s; ++j) d += inv::qpow(q, lambda[j] + s - 1 - j) - inv::qpow(q, s - 1 - j);
  return d;
}

std::uint64_t dickson_monomial_degree(std::uint64_t q, const std::vector<std::uint32_t>& m_exps) {
  const std::size_t s = m_exps.size();
  std::uint64_t d = 0;
  for (std::size_t i = 1; i <= s; ++i) d += m_exps[i - 1] * (inv::qpow(q, s) - inv::qpow(q, s - i));
  return d;
}

std::uint64_t nabla_degree(std::uint64_t q, const GLCandidate& c) {
  return schur_degree(q, c.lambda) + dickson_monomial_degree(q, c.a);
}

expr::NodePtr nabla_expr(const GLCandidate& c) {
  std::vector<expr::NodePtr> f{expr::schur(c.lambda, c.s), expr::one(c.s)};
  for (std::size_t i = 1; i <= c.s; ++i) f.push_back(expr::power(expr::dickson(c.s, c.s - i), c.a[i - 1]));
  return expr::product(std::move(f));
}

std::vector<Candidate> gl_candidate_basis(std::uint64_t q, std::uint32_t m, std::size_t n) {
  std::vector<Candidate> out;
  for (std::size_t s = 0; s <= std::min<std::size_t>(m, n); ++s)
    for (const auto& c : nabla(q, m, s)) {
      auto node = expr::delta(s + 1, m, n - s, nabla_expr(c));
      out.push_back({node->key, node});
    }
  return out;
}

namespace {

std::vector<expr::NodePtr> parabolic_rec(std::uint64_t q, std::uint32_t m, std::span<const std::size_t> alpha) {
  if (alpha.empty()) return {expr::one(0)};
  const std::size_t n1 = alpha[0];
  std::vector<expr::NodePtr> out;
  for (std::size_t s = 0; s <= std::min<std::size_t>(n1, m); ++s) {
    const auto tail = parabolic_rec(q, static_cast<std::uint32_t>(m - s), alpha.subspan(1));
    for (const auto& c : nabla(q, m, s)) {
      const auto f = nabla_expr(c);
      for (const auto& g : tail)
        out.push_back(expr::delta(s + 1, m, n1 - s, expr::product({f, expr::phi_pow(g, s)})));
    }
  }
  return out;
}

}  // namespace

std::vector<Candidate> parabolic_candidate_basis(std::uint64_t q, std::uint32_t m, const std::vector<std::size_t>& alpha) {
  if (alpha.empty()) throw Error(ErrorCode::CompositionInvalid, "empty composition");
  for (auto a : alpha)
    if (a == 0) throw Error(ErrorCode::CompositionInvalid, "composition parts must be positive");
  std::vector<Candidate> out;
  for (auto& node : parabolic_rec(q, m, alpha)) out.push_back({node->key, node});
  return out;
}

std::vector<std::size_t> parse_composition(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::CompositionInvalid, "bad composition '" + text + "'");
    out.push_back(std::stoul(part));
  }
  if (out.empty()) throw Error(ErrorCode::CompositionInvalid, "empty composition");
  for (auto a : out)
    if (a == 0) throw Error(ErrorCode::CompositionInvalid, "composition parts must be positive");
  return out;
}

}  // namespace truncinv::basis
