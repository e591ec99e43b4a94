#include "truncinv/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace truncinv::mpoly {

namespace {

void check_nvars(std::size_t n) {
  if (n > kMaxVars)
    throw Error(ErrorCode::ArityMismatch,
                "at most " + std::to_string(kMaxVars) + " variables supported, got " + std::to_string(n));
}

constexpr std::uint64_t kExpLimit = std::numeric_limits<Exp>::max();

}  // namespace

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::size_t nvars) {
  check_nvars(nvars);
  nvars_ = static_cast<std::uint8_t>(nvars);
}

Monomial::Monomial(std::initializer_list<Exp> exps) : Monomial(std::span<const Exp>(exps.begin(), exps.size())) {}

Monomial::Monomial(std::span<const Exp> exps) {
  check_nvars(exps.size());
  nvars_ = static_cast<std::uint8_t>(exps.size());
  for (std::size_t i = 0; i < exps.size(); ++i) {
    exps_[i] = exps[i];
    degree_ += exps[i];
  }
}

void Monomial::set(std::size_t i, Exp e) {
  if (i >= nvars_) throw Error(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(i));
  degree_ = degree_ - exps_[i] + e;
  exps_[i] = e;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < nvars_; ++i) {
    const std::uint64_t e = std::uint64_t{exps_[i]} + o.exps_[i];
    if (e > kExpLimit) throw Error(ErrorCode::ExponentOverflow, "exponent exceeds 32 bits");
    r.exps_[i] = static_cast<Exp>(e);
  }
  r.degree_ = degree_ + o.degree_;
  return r;
}

bool Monomial::divides(const Monomial& o) const noexcept {
  for (std::size_t i = 0; i < nvars_; ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const noexcept {
  Monomial r(o);
  for (std::size_t i = 0; i < nvars_; ++i) r.exps_[i] -= exps_[i];
  r.degree_ = o.degree_ - degree_;
  return r;
}

std::size_t Monomial::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ nvars_;
  for (std::size_t i = 0; i < nvars_; ++i) {
    h ^= exps_[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

std::strong_ordering grlex(const Monomial& a, const Monomial& b) noexcept {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  const std::size_t n = std::max(a.nvars(), b.nvars());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// MPoly

MPoly::MPoly(gf::FieldPtr field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {
  if (!field_) throw Error(ErrorCode::FieldMismatch, "polynomial without a field");
  check_nvars(nvars);
}

MPoly MPoly::adopt(gf::FieldPtr field, std::size_t nvars, std::vector<Term> terms) {
  MPoly r(std::move(field), nvars);
  r.terms_ = std::move(terms);
  return r;
}

MPoly MPoly::constant(gf::FieldPtr field, std::size_t nvars, gf::Code c) {
  MPoly r(std::move(field), nvars);
  if (c != 0) r.terms_.emplace_back(Monomial(nvars), c);
  return r;
}

MPoly MPoly::variable(gf::FieldPtr field, std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw Error(ErrorCode::IndexOutOfRange, "variable x" + std::to_string(i + 1));
  Monomial m(nvars);
  m.set(i, 1);
  return monomial(std::move(field), m, 1);
}

MPoly MPoly::monomial(gf::FieldPtr field, const Monomial& m, gf::Code c) {
  MPoly r(std::move(field), m.nvars());
  if (c != 0) r.terms_.emplace_back(m, c);
  return r;
}

MPoly MPoly::from_terms(gf::FieldPtr field, std::size_t nvars, std::vector<Term> terms) {
  MPoly r(std::move(field), nvars);
  for (const auto& [m, c] : terms) {
    if (m.nvars() != nvars) throw Error(ErrorCode::ArityMismatch, "monomial arity differs from polynomial");
    if (c >= r.field_->q()) throw Error(ErrorCode::SpecInvalid, "coefficient code out of range");
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return grlex(a.first, b.first) > 0; });
  const gf::Field& F = *r.field_;
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first) {
      r.terms_.back().second = F.add(r.terms_.back().second, t.second);
      if (r.terms_.back().second == 0) r.terms_.pop_back();
    } else if (t.second != 0) {
      r.terms_.push_back(t);
    }
  }
  return r;
}

bool MPoly::is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.degree() == 0); }

gf::Code MPoly::constant_term() const noexcept {
  if (terms_.empty() || terms_.back().first.degree() != 0) return 0;
  return terms_.back().second;
}

gf::Code MPoly::coeff(const Monomial& m) const noexcept {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return grlex(t.first, key) > 0; });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

std::uint64_t MPoly::degree() const noexcept { return terms_.empty() ? 0 : terms_.front().first.degree(); }

bool MPoly::is_homogeneous() const noexcept {
  return terms_.empty() || terms_.front().first.degree() == terms_.back().first.degree();
}

void MPoly::check_compatible(const MPoly& o) const {
  if (field_ != o.field_ && !field_->same_as(*o.field_))
    throw Error(ErrorCode::FieldMismatch, "F_" + field_->name() + " vs F_" + o.field_->name());
  if (nvars_ != o.nvars_)
    throw Error(ErrorCode::ArityMismatch, std::to_string(nvars_) + " vs " + std::to_string(o.nvars_) + " variables");
}

MPoly MPoly::operator+(const MPoly& o) const {
  check_compatible(o);
  const gf::Field& F = *field_;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    const auto cmp = grlex(a->first, b->first);
    if (cmp > 0) {
      out.push_back(*a++);
    } else if (cmp < 0) {
      out.push_back(*b++);
    } else {
      const gf::Code c = F.add(a->second, b->second);
      if (c != 0) out.emplace_back(a->first, c);
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), a, terms_.end());
  out.insert(out.end(), b, o.terms_.end());
  return adopt(field_, nvars_, std::move(out));
}

MPoly MPoly::operator-() const {
  MPoly r(*this);
  for (auto& t : r.terms_) t.second = field_->neg(t.second);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::scale(gf::Code c) const {
  if (c == 0) return MPoly(field_, nvars_);
  MPoly r(*this);
  for (auto& t : r.terms_) t.second = field_->mul(t.second, c);
  return r;
}

MPoly MPoly::mul_term(const Monomial& m, gf::Code c) const {
  if (m.nvars() != nvars_) throw Error(ErrorCode::ArityMismatch, "monomial arity differs from polynomial");
  if (c == 0) return MPoly(field_, nvars_);
  MPoly r(*this);
  for (auto& t : r.terms_) {
    t.first = t.first * m;
    t.second = field_->mul(t.second, c);
  }
  return r;  // multiplying by a monomial preserves grlex order
}

MPoly MPoly::operator*(const MPoly& o) const {
  check_compatible(o);
  if (terms_.empty() || o.terms_.empty()) return MPoly(field_, nvars_);
  if (terms_.size() == 1) return o.mul_term(terms_[0].first, terms_[0].second);
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].first, o.terms_[0].second);
  const gf::Field& F = *field_;
  const MPoly& small = terms_.size() <= o.terms_.size() ? *this : o;
  const MPoly& big = terms_.size() <= o.terms_.size() ? o : *this;

  std::unordered_map<Monomial, gf::Code, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(small.size() * big.size(), std::size_t{1} << 22));
  for (const auto& [ms, cs] : small.terms_)
    for (const auto& [mb, cb] : big.terms_) {
      auto [it, inserted] = acc.try_emplace(ms * mb, 0);
      it->second = F.add(it->second, F.mul(cs, cb));
    }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (const auto& [m, c] : acc)
    if (c != 0) out.emplace_back(m, c);
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return grlex(a.first, b.first) > 0; });
  return adopt(field_, nvars_, std::move(out));
}

MPoly MPoly::pow(std::uint64_t k) const {
  MPoly result = one(field_, nvars_);
  MPoly base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

bool MPoly::operator==(const MPoly& o) const {
  check_compatible(o);
  return terms_ == o.terms_;
}

MPoly scalar_mul(const gf::FqElem& c, const MPoly& f) {
  if (!c.field()->same_as(f.F())) throw Error(ErrorCode::FieldMismatch, "scalar from another field");
  return f.scale(c.code());
}

// ---------------------------------------------------------------------------
// Substitutions

MPoly apply_matrix(const MPoly& f, std::span<const gf::Code> entries, std::size_t n) {
  if (n != f.nvars()) throw Error(ErrorCode::ArityMismatch, "matrix size differs from variable count");
  if (entries.size() != n * n) throw Error(ErrorCode::ArityMismatch, "matrix is not n x n");
  const auto& field = f.field();
  // Images of the variables and a cache of their powers.
  std::vector<MPoly> images;
  images.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<MPoly::Term> terms;
    for (std::size_t i = 0; i < n; ++i) {
      const gf::Code c = entries[i * n + j];
      if (c == 0) continue;
      Monomial m(n);
      m.set(i, 1);
      terms.emplace_back(m, c);
    }
    images.push_back(MPoly::from_terms(field, n, std::move(terms)));
  }
  std::vector<std::map<Exp, MPoly>> powers(n);
  auto power_of = [&](std::size_t j, Exp e) -> const MPoly& {
    auto it = powers[j].find(e);
    if (it == powers[j].end()) it = powers[j].emplace(e, images[j].pow(e)).first;
    return it->second;
  };
  MPoly result(field, n);
  for (const auto& [m, c] : f.terms()) {
    MPoly term = MPoly::constant(field, n, c);
    for (std::size_t j = 0; j < n && !term.is_zero(); ++j)
      if (m[j] != 0) term = term * power_of(j, m[j]);
    result += term;
  }
  return result;
}

MPoly remap_vars(const MPoly& f, std::span<const std::size_t> map, std::size_t target_nvars) {
  if (map.size() != f.nvars())
    throw Error(ErrorCode::ArityMismatch, "variable map has wrong length");
  std::vector<bool> used(target_nvars, false);
  for (auto t : map) {
    if (t >= target_nvars) throw Error(ErrorCode::IndexOutOfRange, "target variable out of range");
    if (used[t]) throw Error(ErrorCode::NotInjective, "variable map is not injective");
    used[t] = true;
  }
  std::vector<MPoly::Term> terms;
  terms.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    Monomial r(target_nvars);
    for (std::size_t i = 0; i < map.size(); ++i)
      if (m[i]) r.set(map[i], m[i]);
    terms.emplace_back(r, c);
  }
  return MPoly::from_terms(f.field(), target_nvars, std::move(terms));
}

MPoly embed(const MPoly& f, std::size_t target_nvars) {
  if (target_nvars < f.nvars()) throw Error(ErrorCode::ArityMismatch, "cannot embed into fewer variables");
  if (target_nvars == f.nvars()) return f;
  std::vector<std::size_t> map(f.nvars());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  return remap_vars(f, map, target_nvars);
}

std::vector<std::size_t> skip_map(std::size_t c, std::size_t skip) {
  std::vector<std::size_t> map(c);
  for (std::size_t i = 0; i < c; ++i) map[i] = i < skip ? i : i + 1;
  return map;
}

// ---------------------------------------------------------------------------
// Truncation

TruncationSpec make_truncation(std::uint32_t q, std::uint32_t m) {
  TruncationSpec s{m, q, 1};
  for (std::uint32_t i = 0; i < m; ++i) {
    s.cap *= q;
    if (s.cap > kExpLimit) throw Error(ErrorCode::ExponentOverflow, "q^m exceeds the exponent range");
  }
  return s;
}

MPoly truncate(const MPoly& f, const TruncationSpec& spec) {
  std::vector<MPoly::Term> terms;
  for (const auto& t : f.terms()) {
    bool keep = true;
    for (std::size_t i = 0; i < f.nvars() && keep; ++i) keep = t.first[i] < spec.cap;
    if (keep) terms.push_back(t);
  }
  return MPoly::from_terms(f.field(), f.nvars(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Division

DivisionResult divide(const MPoly& f, const MPoly& g) {
  if (g.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
  MPoly zero(f.field(), f.nvars());
  zero.check_compatible(g);
  const gf::Field& F = f.F();
  const auto& [lead_m, lead_c] = g.terms().front();
  const gf::Code lead_inv = F.inv(lead_c);

  std::map<Monomial, gf::Code, GrlexGreater> rem(f.terms().begin(), f.terms().end());
  std::vector<MPoly::Term> quot, left;
  while (!rem.empty()) {
    auto top = rem.begin();
    const Monomial m = top->first;
    const gf::Code c = top->second;
    rem.erase(top);
    if (!lead_m.divides(m)) {
      left.emplace_back(m, c);
      continue;
    }
    const Monomial qm = lead_m.quotient_of(m);
    const gf::Code qc = F.mul(c, lead_inv);
    quot.emplace_back(qm, qc);
    for (auto it = g.terms().begin() + 1; it != g.terms().end(); ++it) {
      const Monomial pm = it->first * qm;
      const gf::Code pc = F.neg(F.mul(it->second, qc));
      auto [slot, inserted] = rem.try_emplace(pm, pc);
      if (!inserted) {
        slot->second = F.add(slot->second, pc);
        if (slot->second == 0) rem.erase(slot);
      }
    }
  }
  return {MPoly::adopt(f.field(), f.nvars(), std::move(quot)), MPoly::adopt(f.field(), f.nvars(), std::move(left))};
}

std::optional<MPoly> try_exact_div(const MPoly& f, const MPoly& g) {
  if (g.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
  MPoly zero(f.field(), f.nvars());
  zero.check_compatible(g);
  if (f.is_zero()) return zero;
  if (g.size() == 1) {
    const auto& [gm, gc] = g.terms().front();
    std::vector<MPoly::Term> out;
    out.reserve(f.size());
    const gf::Code inv = f.F().inv(gc);
    for (const auto& [m, c] : f.terms()) {
      if (!gm.divides(m)) return std::nullopt;
      out.emplace_back(gm.quotient_of(m), f.F().mul(c, inv));
    }
    return MPoly::adopt(f.field(), f.nvars(), std::move(out));
  }
  if (f.degree() < g.degree()) return std::nullopt;
  const gf::Field& F = f.F();
  const auto& [lead_m, lead_c] = g.terms().front();
  const gf::Code lead_inv = F.inv(lead_c);
  // The smallest monomial of f must be the product of the smallest ones.
  if (!g.terms().back().first.divides(f.terms().back().first)) return std::nullopt;

  std::map<Monomial, gf::Code, GrlexGreater> rem(f.terms().begin(), f.terms().end());
  std::vector<MPoly::Term> quot;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lead_m.divides(top->first)) return std::nullopt;
    const Monomial qm = lead_m.quotient_of(top->first);
    const gf::Code qc = F.mul(top->second, lead_inv);
    rem.erase(top);
    quot.emplace_back(qm, qc);
    for (auto it = g.terms().begin() + 1; it != g.terms().end(); ++it) {
      const Monomial pm = it->first * qm;
      const gf::Code pc = F.neg(F.mul(it->second, qc));
      auto [slot, inserted] = rem.try_emplace(pm, pc);
      if (!inserted) {
        slot->second = F.add(slot->second, pc);
        if (slot->second == 0) rem.erase(slot);
      }
    }
  }
  return MPoly::adopt(f.field(), f.nvars(), std::move(quot));
}

MPoly exact_div(const MPoly& f, const MPoly& g) {
  if (auto h = try_exact_div(f, g)) return *h;
  auto [quot, rem] = divide(f, g);
  if (rem.is_zero()) return quot;  // unreachable in exact arithmetic; kept for safety of the fast path
  throw NotDivisibleError(rem, "remainder " + to_string(rem));
}

// ---------------------------------------------------------------------------

Monomial leading_monomial(const MPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no monomials");
  return f.terms().back().first;
}

Monomial largest_monomial(const MPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no monomials");
  return f.terms().front().first;
}

MPoly frobenius(const MPoly& f) {
  const std::uint64_t q = f.F().q();
  std::vector<MPoly::Term> out;
  out.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    Monomial r(m.nvars());
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      const std::uint64_t e = std::uint64_t{m[i]} * q;
      if (e > kExpLimit) throw Error(ErrorCode::ExponentOverflow, "exponent exceeds 32 bits");
      r.set(i, static_cast<Exp>(e));
    }
    out.emplace_back(r, c);
  }
  return MPoly::from_terms(f.field(), f.nvars(), std::move(out));
}

MPoly set_var_zero(const MPoly& f, std::size_t var) {
  std::vector<MPoly::Term> out;
  for (const auto& t : f.terms())
    if (t.first[var] == 0) out.push_back(t);
  return MPoly::from_terms(f.field(), f.nvars(), std::move(out));
}

MPoly drop_var(const MPoly& f, std::size_t var) {
  if (var >= f.nvars()) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
  std::vector<MPoly::Term> out;
  for (const auto& [m, c] : f.terms()) {
    if (m[var] != 0) throw Error(ErrorCode::ArityMismatch, "dropped variable occurs in the polynomial");
    Monomial r(f.nvars() - 1);
    for (std::size_t i = 0, k = 0; i < f.nvars(); ++i)
      if (i != var) r.set(k++, m[i]);
    out.emplace_back(r, c);
  }
  return MPoly::from_terms(f.field(), f.nvars() - 1, std::move(out));
}

// ---------------------------------------------------------------------------
// Text and JSON

std::string to_string(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i + 1);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const MPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    const bool unit_mono = m.degree() == 0;
    if (c != 1 || unit_mono) {
      out += f.F().format(c);
      if (!unit_mono) out += "*";
    }
    if (!unit_mono) out += to_string(m);
  }
  return out;
}

nlohmann::json to_json(const MPoly& f) {
  auto arr = nlohmann::json::array();
  for (const auto& [m, c] : f.terms())
    arr.push_back({{"exponents", m.exponents()}, {"coeff", f.F().coeffs(c)}});
  return arr;
}

MPoly from_json(const gf::FieldPtr& field, std::size_t nvars, const nlohmann::json& j) {
  std::vector<MPoly::Term> terms;
  for (const auto& t : j) {
    const auto exps = t.at("exponents").get<std::vector<Exp>>();
    if (exps.size() != nvars) throw Error(ErrorCode::ArityMismatch, "JSON term has wrong arity");
    const auto coeff = t.at("coeff").get<std::vector<std::uint32_t>>();
    terms.emplace_back(Monomial(std::span<const Exp>(exps)), field->from_coeffs(coeff));
  }
  return MPoly::from_terms(field, nvars, std::move(terms));
}

MPoly parse_poly(const gf::FieldPtr& field, std::size_t nvars, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorCode::ParseError, why + " in '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  auto read_uint = [&]() -> std::uint64_t {
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) throw fail("expected a number");
    std::uint64_t v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) v = v * 10 + (s[pos++] - '0');
    return v;
  };
  std::vector<MPoly::Term> terms;
  if (s.empty()) throw fail("empty polynomial");
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    std::int64_t coeff = 1;
    Monomial mono(nvars);
    bool first_factor = true;
    while (true) {
      if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        coeff = coeff * static_cast<std::int64_t>(read_uint() % field->p());
      } else if (pos < s.size() && s[pos] == 'x') {
        ++pos;
        const auto idx = read_uint();
        if (idx == 0 || idx > nvars) throw fail("variable index out of range");
        std::uint64_t e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          e = read_uint();
        }
        mono.set(idx - 1, static_cast<Exp>(mono[idx - 1] + e));
      } else {
        throw fail(first_factor ? "expected a term" : "expected a factor");
      }
      first_factor = false;
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (negative) coeff = -coeff;
    terms.emplace_back(mono, field->from_int(coeff));
    if (pos < s.size() && s[pos] != '+' && s[pos] != '-') throw fail("unexpected character");
  }
  return MPoly::from_terms(field, nvars, std::move(terms));
}

}  // namespace truncinv::mpoly
