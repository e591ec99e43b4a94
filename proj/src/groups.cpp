#include "truncinv/groups.hpp"

#include <numeric>
#include <set>
#include <unordered_map>

#include "truncinv/linalg.hpp"
#include "truncinv/parallel.hpp"

namespace truncinv::groups {

MatrixFq::MatrixFq(gf::FieldPtr field, std::size_t n, std::vector<Code> entries)
    : field_(std::move(field)), n_(n), e_(std::move(entries)) {
  if (e_.size() != n_ * n_) throw Error(ErrorCode::ArityMismatch, "matrix is not n x n");
}

MatrixFq MatrixFq::identity(gf::FieldPtr field, std::size_t n) {
  std::vector<Code> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return {std::move(field), n, std::move(e)};
}

bool MatrixFq::is_identity() const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (e_[i * n_ + j] != (i == j ? 1u : 0u)) return false;
  return true;
}

MatrixFq MatrixFq::operator*(const MatrixFq& o) const {
  if (n_ != o.n_) throw Error(ErrorCode::ArityMismatch, "matrix sizes differ");
  const auto& F = *field_;
  std::vector<Code> r(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const Code a = e_[i * n_ + k];
      if (!a) continue;
      for (std::size_t j = 0; j < n_; ++j) r[i * n_ + j] = F.add(r[i * n_ + j], F.mul(a, o.e_[k * n_ + j]));
    }
  return {field_, n_, std::move(r)};
}

Code det(const MatrixFq& a) {
  const auto& F = *a.field();
  linalg::Matrix m(a.n(), a.n());
  m.data = a.entries();
  Code d = 1;
  for (std::size_t c = 0; c < m.cols; ++c) {
    std::size_t p = c;
    while (p < m.rows && m.at(p, c) == 0) ++p;
    if (p == m.rows) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = F.neg(d);
    }
    d = F.mul(d, m.at(c, c));
    const Code inv = F.inv(m.at(c, c));
    for (std::size_t r = c + 1; r < m.rows; ++r) {
      const Code f = F.neg(F.mul(m.at(r, c), inv));
      if (!f) continue;
      for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = F.add(m.at(r, j), F.mul(f, m.at(c, j)));
    }
  }
  return d;
}

GroupSpec GroupSpec::parabolic(std::vector<std::size_t> alpha) {
  if (alpha.empty()) throw Error(ErrorCode::CompositionInvalid, "empty composition");
  for (auto a : alpha)
    if (a == 0) throw Error(ErrorCode::CompositionInvalid, "composition parts must be positive");
  const std::size_t n = std::accumulate(alpha.begin(), alpha.end(), std::size_t{0});
  return {Kind::Parabolic, n, std::move(alpha)};
}

std::vector<std::size_t> GroupSpec::blocks() const {
  switch (kind) {
    case Kind::Borel: return std::vector<std::size_t>(n, 1);
    case Kind::GL: return {n};
    case Kind::Parabolic: return alpha;
  }
  return {};
}

std::string GroupSpec::name() const {
  switch (kind) {
    case Kind::Borel: return "borel";
    case Kind::GL: return "gl";
    case Kind::Parabolic: {
      std::string s = "parabolic(";
      for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? "," : "") + std::to_string(alpha[i]);
      return s + ")";
    }
  }
  return "?";
}

std::vector<MatrixFq> generators(const gf::FieldPtr& field, const GroupSpec& spec) {
  const std::size_t n = spec.n;
  std::vector<MatrixFq> out;
  auto push = [&](std::vector<Code> e) {
    MatrixFq g(field, n, std::move(e));
    if (!g.is_identity()) out.push_back(std::move(g));
  };
  auto ident = [&] {
    std::vector<Code> e(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
    return e;
  };
  for (std::size_t i = 0; i < n; ++i) {
    auto e = ident();
    e[i * n + i] = field->primitive();
    push(std::move(e));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto e = ident();
      e[i * n + j] = 1;
      push(std::move(e));
    }
  std::size_t start = 0;
  for (auto b : spec.blocks()) {
    for (std::size_t i = start; i < start + b; ++i)
      for (std::size_t j = i + 1; j < start + b; ++j) {
        auto e = ident();
        e[j * n + i] = 1;
        push(std::move(e));
      }
    start += b;
  }
  if (start != n) throw Error(ErrorCode::CompositionInvalid, "composition does not sum to n");
  return out;
}

std::uint64_t group_order(const gf::FieldPtr& field, const GroupSpec& spec, std::uint64_t limit) {
  const auto gens = generators(field, spec);
  std::set<MatrixFq> seen{MatrixFq::identity(field, spec.n)};
  std::vector<MatrixFq> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<MatrixFq> next;
    for (const auto& a : frontier)
      for (const auto& g : gens) {
        auto b = a * g;
        if (seen.insert(b).second) {
          if (seen.size() > limit) throw Error(ErrorCode::SizeBound, "group larger than the closure limit");
          next.push_back(std::move(b));
        }
      }
    frontier = std::move(next);
  }
  return seen.size();
}

bool is_invariant(const MPoly& f, const gf::FieldPtr& field, const GroupSpec& spec, std::uint32_t m) {
  const auto tr = mpoly::make_truncation(field->q(), m);
  const MPoly base = mpoly::truncate(f, tr);
  for (const auto& g : generators(field, spec))
    if (!(mpoly::truncate(mpoly::apply_matrix(f, g.entries(), spec.n), tr) == base)) return false;
  return true;
}

std::vector<mpoly::Monomial> degree_basis(std::uint64_t q, std::uint32_t m, std::size_t n, std::uint64_t d) {
  std::uint64_t cap = 1;
  for (std::uint32_t i = 0; i < m; ++i) cap *= q;
  std::vector<mpoly::Monomial> out;
  mpoly::Monomial cur(n);
  // Largest x_1 exponent first gives grlex-descending order within a degree.
  auto rec = [&](auto& self, std::size_t i, std::uint64_t left) -> void {
    if (i + 1 == n) {
      if (left < cap) {
        cur.set(i, static_cast<mpoly::Exp>(left));
        out.push_back(cur);
      }
      return;
    }
    for (std::uint64_t e = std::min(left, cap - 1) + 1; e-- > 0;) {
      if (left - e > (cap - 1) * (n - i - 1)) break;
      cur.set(i, static_cast<mpoly::Exp>(e));
      self(self, i + 1, left - e);
    }
  };
  if (n > 0) rec(rec, 0, d);
  return out;
}

namespace {

struct MonoIndex {
  std::unordered_map<mpoly::Monomial, std::size_t, mpoly::MonomialHash> idx;
  explicit MonoIndex(const std::vector<mpoly::Monomial>& b) {
    for (std::size_t i = 0; i < b.size(); ++i) idx.emplace(b[i], i);
  }
};

}  // namespace

std::map<std::uint64_t, DegreeInvariants> invariant_dims(const gf::FieldPtr& field, const GroupSpec& spec,
                                                         std::uint32_t m, const OracleOptions& opt) {
  const std::uint64_t q = field->q();
  const std::size_t n = spec.n;
  const auto tr = mpoly::make_truncation(field->q(), m);
  if (n > mpoly::kMaxVars) throw Error(ErrorCode::SizeBound, "too many variables for the oracle");
  const std::uint64_t top = n * (tr.cap - 1);
  const auto gens = generators(field, spec);
  const auto& F = *field;

  std::vector<DegreeInvariants> res(top + 1);
  parallel_for(top + 1, opt.threads, [&](std::size_t d) {
    const auto basis = degree_basis(q, m, n, d);
    const std::size_t c = basis.size();
    if (static_cast<std::uint64_t>(gens.size()) * c * c > opt.max_cells)
      throw Error(ErrorCode::SizeBound, "degree " + std::to_string(d) + " needs " + std::to_string(c) +
                                            " columns, over the cell bound");
    const MonoIndex index(basis);
    linalg::Matrix a(std::max<std::size_t>(gens.size(), 1) * c, c);
    for (std::size_t j = 0; j < c; ++j) {
      const MPoly mono = MPoly::monomial(field, basis[j]);
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const MPoly diff = mpoly::truncate(mpoly::apply_matrix(mono, gens[g].entries(), n), tr) - mono;
        for (const auto& [mono_t, coef] : diff.terms()) a.at(g * c + index.idx.at(mono_t), j) = coef;
      }
    }
    DegreeInvariants out;
    out.degree = d;
    for (const auto& v : linalg::kernel(F, std::move(a))) {
      std::vector<MPoly::Term> terms;
      for (std::size_t j = 0; j < c; ++j)
        if (v[j]) terms.push_back({basis[j], v[j]});
      out.basis.push_back(MPoly::from_terms(field, n, std::move(terms)));
    }
    out.dim = out.basis.size();
    res[d] = std::move(out);
  });
  std::map<std::uint64_t, DegreeInvariants> out;
  for (auto& r : res)
    if (r.dim) out.emplace(r.degree, std::move(r));
  return out;
}

FamilyRank rank_of_family(const std::vector<MPoly>& polys) {
  FamilyRank out;
  std::map<std::uint64_t, std::vector<const MPoly*>> by_degree;
  for (const auto& f : polys) {
    if (f.is_zero()) continue;
    if (!f.is_homogeneous()) throw Error(ErrorCode::NotHomogeneous, mpoly::to_string(f));
    by_degree[f.degree()].push_back(&f);
  }
  for (const auto& [d, fs] : by_degree) {
    std::unordered_map<mpoly::Monomial, std::size_t, mpoly::MonomialHash> cols;
    for (auto* f : fs)
      for (const auto& [mono, c] : f->terms()) cols.emplace(mono, cols.size());
    linalg::Matrix a(fs.size(), cols.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (const auto& [mono, c] : fs[i]->terms()) a.at(i, cols.at(mono)) = c;
    const std::size_t r = linalg::rank(fs[0]->F(), std::move(a));
    out.per_degree[d] = r;
    out.total += r;
  }
  return out;
}

std::uint64_t orbit_count(const gf::FieldPtr& field, const GroupSpec& spec, std::uint32_t m, std::uint64_t limit) {
  const std::uint64_t q = field->q();
  const std::size_t n = spec.n;
  const std::size_t digits = std::size_t{m} * n;  // coordinate j, component k at digit j*m + k
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < digits; ++i) {
    total *= q;
    if (total > limit) throw Error(ErrorCode::SizeBound, "(q^m)^n exceeds the orbit bound");
  }
  std::vector<std::uint32_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto& F = *field;
  const auto gens = generators(field, spec);
  std::vector<Code> v(digits), w(digits);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (auto& x : v) {
      x = static_cast<Code>(c % q);
      c /= q;
    }
    for (const auto& g : gens) {
      std::fill(w.begin(), w.end(), 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const Code s = g(i, j);
          if (!s) continue;
          for (std::size_t k = 0; k < m; ++k) w[i * m + k] = F.add(w[i * m + k], F.mul(s, v[j * m + k]));
        }
      std::uint64_t img = 0;
      for (std::size_t t = digits; t-- > 0;) img = img * q + w[t];
      const auto a = find(static_cast<std::uint32_t>(code)), b = find(static_cast<std::uint32_t>(img));
      if (a != b) parent[a] = b;
    }
  }
  std::uint64_t roots = 0;
  for (std::uint64_t x = 0; x < total; ++x) roots += find(static_cast<std::uint32_t>(x)) == x;
  return roots;
}

}  // namespace truncinv::groups
