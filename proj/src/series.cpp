#include "truncinv/series.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "truncinv/invariants.hpp"

namespace truncinv::series {

using inv::qpow;

TSeries::TSeries(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

void TSeries::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

TSeries TSeries::monomial(std::uint64_t d, std::int64_t c) {
  std::vector<std::int64_t> v(d + 1, 0);
  v[d] = c;
  return TSeries(std::move(v));
}

TSeries TSeries::one_minus(std::uint64_t k) { return one() - monomial(k); }

std::int64_t TSeries::value_at_one() const noexcept {
  std::int64_t s = 0;
  for (auto x : c_) s += x;
  return s;
}

bool TSeries::nonnegative() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](auto x) { return x >= 0; });
}

TSeries TSeries::operator+(const TSeries& o) const {
  std::vector<std::int64_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return TSeries(std::move(r));
}

TSeries TSeries::operator-(const TSeries& o) const {
  std::vector<std::int64_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return TSeries(std::move(r));
}

TSeries TSeries::operator*(const TSeries& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<std::int64_t> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i])
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return TSeries(std::move(r));
}

TSeries TSeries::shift(std::uint64_t k) const {
  if (is_zero()) return {};
  std::vector<std::int64_t> r(k, 0);
  r.insert(r.end(), c_.begin(), c_.end());
  return TSeries(std::move(r));
}

TSeries TSeries::dilate(std::uint64_t k) const {
  if (is_zero() || k == 0) return k == 0 ? TSeries({value_at_one()}) : TSeries{};
  std::vector<std::int64_t> r((c_.size() - 1) * k + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
  return TSeries(std::move(r));
}

std::optional<TSeries> TSeries::try_div(const TSeries& d) const {
  if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero series");
  if (is_zero()) return TSeries{};
  if (c_.size() < d.c_.size()) return std::nullopt;
  std::vector<std::int64_t> rem = c_, quo(c_.size() - d.c_.size() + 1, 0);
  const std::int64_t lead = d.c_.back();
  for (std::size_t i = quo.size(); i-- > 0;) {
    const std::int64_t top = rem[i + d.c_.size() - 1];
    if (top % lead) return std::nullopt;
    const std::int64_t f = top / lead;
    quo[i] = f;
    if (f)
      for (std::size_t j = 0; j < d.c_.size(); ++j) rem[i + j] -= f * d.c_[j];
  }
  if (std::any_of(rem.begin(), rem.end(), [](auto x) { return x != 0; })) return std::nullopt;
  return TSeries(std::move(quo));
}

TSeries TSeries::exact_div(const TSeries& d) const {
  auto r = try_div(d);
  if (!r) throw Error(ErrorCode::NotDivisible, to_string(*this) + " by " + to_string(d));
  return *r;
}

std::string to_string(const TSeries& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (std::size_t d = 0; d < s.coeffs().size(); ++d) {
    std::int64_t c = s.coeffs()[d];
    if (!c) continue;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    c = c < 0 ? -c : c;
    if (d == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += d == 1 ? "t" : "t^" + std::to_string(d);
  }
  return out;
}

nlohmann::json to_json(const TSeries& s) { return s.coeffs(); }

std::optional<std::uint64_t> first_mismatch(const TSeries& a, const TSeries& b) {
  const std::size_t top = std::max(a.coeffs().size(), b.coeffs().size());
  for (std::size_t d = 0; d < top; ++d)
    if (a[d] != b[d]) return d;
  return std::nullopt;
}

TSeries qt_multinomial(std::uint32_t k, const Weak& alpha, std::uint64_t q) {
  std::uint64_t sum = 0;
  for (auto a : alpha) sum += a;
  if (sum != k) throw Error(ErrorCode::CompositionInvalid, "composition does not sum to k");
  TSeries num = TSeries::one(), den = TSeries::one();
  const std::uint64_t qk = qpow(q, k);
  for (std::uint32_t j = 0; j < k; ++j) num = num * TSeries::one_minus(qk - qpow(q, j));
  std::uint32_t A = 0;
  for (auto a : alpha) {
    A += a;
    for (std::uint32_t j = 1; j <= a; ++j) den = den * TSeries::one_minus(qpow(q, A) - qpow(q, A - j));
  }
  return num.exact_div(den);
}

TSeries qt_binomial(std::uint32_t m, std::uint32_t s, std::uint64_t q) {
  if (s > m) return {};
  TSeries num = TSeries::one(), den = TSeries::one();
  for (std::uint32_t i = 0; i < s; ++i) {
    num = num * TSeries::one_minus(qpow(q, m) - qpow(q, i));
    den = den * TSeries::one_minus(qpow(q, s) - qpow(q, i));
  }
  return num.exact_div(den);
}

std::optional<TSeries> qt_multinomial_short(std::uint32_t m, const Weak& beta, std::uint64_t q) {
  TSeries num = TSeries::one(), den = TSeries::one();
  for (std::uint32_t j = 0; j < m; ++j) num = num * TSeries::one_minus(qpow(q, m) - qpow(q, j));
  std::uint32_t B = 0;
  for (auto b : beta) {
    const std::uint32_t prev = B;
    B += b;
    for (std::uint32_t j = 0; j < b; ++j) den = den * TSeries::one_minus(qpow(q, B) - qpow(q, prev + j));
  }
  return num.try_div(den);
}

std::vector<Weak> betas_below(const std::vector<std::size_t>& alpha, std::uint32_t m) {
  std::vector<Weak> out;
  Weak cur;
  auto rec = [&](auto& self, std::size_t i, std::uint32_t used) -> void {
    if (i == alpha.size()) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t b = 0; b <= alpha[i] && used + b <= m; ++b) {
      cur.push_back(b);
      self(self, i + 1, used + b);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

std::uint64_t e_exponent(std::uint64_t q, std::uint32_t m, const std::vector<std::size_t>& alpha, const Weak& beta) {
  std::uint64_t e = 0, B = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    B += beta[i];
    e += (alpha[i] - beta[i]) * (qpow(q, m) - qpow(q, B));
  }
  return e;
}

TSeries c_alpha_term(std::uint64_t q, std::uint32_t m, const std::vector<std::size_t>& alpha, const Weak& beta) {
  Weak full = beta;
  std::uint32_t used = 0;
  for (auto b : beta) used += b;
  full.push_back(m - used);
  return qt_multinomial(m, full, q).shift(e_exponent(q, m, alpha, beta));
}

TSeries c_alpha_m(std::uint64_t q, std::uint32_t m, const std::vector<std::size_t>& alpha) {
  TSeries out;
  for (const auto& beta : betas_below(alpha, m)) out += c_alpha_term(q, m, alpha, beta);
  return out;
}

TSeries f_nm(std::size_t n, std::uint32_t m, std::uint64_t q, FMode mode) {
  if (mode == FMode::Direct) return n == 0 ? TSeries::one() : c_alpha_m(q, m, std::vector<std::size_t>(n, 1));
  if (n == 0 || m == 0) return TSeries::one();
  const std::uint64_t qm = qpow(q, m);
  const TSeries ratio = TSeries::one_minus(qm - 1).exact_div(TSeries::one_minus(q - 1));
  return f_nm(n - 1, m, q).shift(qm - 1) + ratio * f_nm(n - 1, m - 1, q).dilate(q);
}

TSeries c_nm_gl(std::uint64_t q, std::uint32_t m, std::size_t n) {
  TSeries out;
  for (std::uint32_t s = 0; s <= std::min<std::size_t>(m, n); ++s)
    out += qt_binomial(m, s, q).shift((n - s) * (qpow(q, m) - qpow(q, s)));
  return out;
}

TSeries borel_n2_display(std::uint64_t q, std::uint32_t m) {
  const std::uint64_t qm = qpow(q, m);
  const TSeries r = TSeries::one_minus(qm - 1).exact_div(TSeries::one_minus(q - 1));
  const TSeries last = (TSeries::one_minus(qm - 1) * TSeries::one_minus(qm - q))
                           .exact_div(TSeries::one_minus(q - 1) * TSeries::one_minus(q * q - q));
  return TSeries::monomial(2 * (qm - 1)) + r.shift(qm - 1) + r.shift(qm - q) + last;
}

TSeries hilbert_of_degrees(const std::vector<std::uint64_t>& degrees) {
  std::vector<std::int64_t> c;
  for (auto d : degrees) {
    if (c.size() <= d) c.resize(d + 1, 0);
    ++c[d];
  }
  return TSeries(std::move(c));
}

TSeries hilbert_of_family(const std::vector<mpoly::MPoly>& polys) {
  std::vector<std::uint64_t> degs;
  for (const auto& f : polys) {
    if (f.is_zero() || !f.is_homogeneous()) throw Error(ErrorCode::NotHomogeneous, mpoly::to_string(f));
    degs.push_back(f.degree());
  }
  return hilbert_of_degrees(degs);
}

TSeries hilbert_of_dims(const std::map<std::uint64_t, std::size_t>& dims) {
  std::vector<std::int64_t> c;
  for (const auto& [d, n] : dims) {
    if (c.size() <= d) c.resize(d + 1, 0);
    c[d] += static_cast<std::int64_t>(n);
  }
  return TSeries(std::move(c));
}

std::map<Weak, std::uint64_t> flag_count_by_beta(std::uint64_t q, std::uint32_t m, std::size_t n) {
  std::map<Weak, std::uint64_t> out;
  for (const auto& beta : betas_below(std::vector<std::size_t>(n, 1), m)) {
    std::uint64_t count = 1, B = 0;
    for (auto b : beta) {
      if (b) count *= q_int(m - B, q);
      B += b;
    }
    out[beta] = count;
  }
  return out;
}

std::uint64_t flag_count(std::uint64_t q, std::uint32_t m, std::size_t n) {
  std::uint64_t total = 0;
  for (const auto& [beta, c] : flag_count_by_beta(q, m, n)) total += c;
  return total;
}

Weak beta_of(const basis::YIndex& y, std::uint64_t q, std::uint32_t m, std::size_t n) {
  Weak beta(n, 0);
  const std::size_t k = y.k();
  std::size_t pos = 0;
  for (std::size_t s = 1; s <= k; ++s) {
    pos += y.I[s - 1] + 1;
    if (s < k) beta[pos - 1] = 1;
  }
  if (y.J[k - 1] < q_int(m - k + 1, q)) beta[n - 1] = 1;
  return beta;
}

std::vector<SummandResult> summand_decomposition(std::uint64_t q, std::uint32_t m, std::size_t n) {
  std::map<Weak, std::vector<std::uint64_t>> parts;
  for (const auto& y : basis::enumerate_basis(q, m, n))
    parts[beta_of(y, q, m, n)].push_back(basis::smallest_monomial(y, q, m).degree());
  std::vector<SummandResult> out;
  const std::vector<std::size_t> ones(n, 1);
  for (const auto& beta : betas_below(ones, m)) {
    SummandResult r;
    r.beta = beta;
    r.expected = c_alpha_term(q, m, ones, beta);
    auto it = parts.find(beta);
    if (it != parts.end()) {
      r.computed = hilbert_of_degrees(it->second);
      r.members = it->second.size();
      parts.erase(it);
    }
    r.ok = r.computed == r.expected;
    out.push_back(std::move(r));
  }
  // A beta outside the index range would be a bug in beta_of.
  for (const auto& [beta, degs] : parts) out.push_back({beta, hilbert_of_degrees(degs), {}, degs.size(), false});
  return out;
}

bool summand_decomposition_check(std::uint64_t q, std::uint32_t m, std::size_t n) {
  const auto parts = summand_decomposition(q, m, n);
  return std::all_of(parts.begin(), parts.end(), [](const auto& r) { return r.ok; });
}

}  // namespace truncinv::series
