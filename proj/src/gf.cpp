#include "truncinv/gf.hpp"

#include <charconv>
#include <sstream>

#include "truncinv/error.hpp"

namespace truncinv::gf {

namespace {

using Digits = std::vector<std::uint32_t>;

Digits to_digits(std::uint64_t code, std::uint32_t p, std::uint32_t e) {
  Digits d(e, 0);
  for (std::uint32_t i = 0; i < e; ++i) {
    d[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return d;
}

std::uint64_t from_digits(const Digits& d, std::uint32_t p) {
  std::uint64_t code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i];
  return code;
}

// a * b mod modulus over Z_p; a, b have length e, modulus is monic of degree e.
Digits mul_mod(const Digits& a, const Digits& b, const Digits& modulus, std::uint32_t p) {
  const std::size_t e = a.size();
  std::vector<std::uint64_t> prod(2 * e, 0);
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  for (std::size_t k = 2 * e; k-- > e;) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::size_t i = 0; i < e; ++i)
      prod[k - e + i] = (prod[k - e + i] + (p - c) * modulus[i]) % p;
  }
  Digits r(e);
  for (std::size_t i = 0; i < e; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
  return r;
}

// Remainder of a by monic b over Z_p (both little-endian, trailing zeros allowed).
Digits poly_rem(Digits a, const Digits& b, std::uint32_t p) {
  std::size_t db = b.size() - 1;
  while (db > 0 && b[db] == 0) --db;
  for (std::size_t k = a.size(); k-- > db;) {
    const std::uint64_t c = a[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= db; ++i)
      a[k - db + i] = static_cast<std::uint32_t>((a[k - db + i] + (p - c) * b[i]) % p);
  }
  a.resize(db);
  return a;
}

bool is_irreducible(const Digits& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
      Digits g = to_digits(low, p, static_cast<std::uint32_t>(d));
      g.push_back(1);
      const Digits r = poly_rem(f, g, p);
      bool zero = true;
      for (auto c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

FieldPtr Field::create(std::uint32_t p, std::uint32_t e, std::uint64_t max_q) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (e == 0) throw Error(ErrorCode::SpecInvalid, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > max_q)
      throw Error(ErrorCode::FieldTooLarge,
                  std::to_string(p) + "^" + std::to_string(e) + " exceeds bound " + std::to_string(max_q));
  }

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->e_ = e;
  f->q_ = static_cast<std::uint32_t>(q);

  if (e == 1) {
    f->modulus_ = {0, 1};
  } else {
    const std::uint64_t count = q;  // p^e choices for the lower coefficients
    for (std::uint64_t low = 0; low < count; ++low) {
      Digits cand = to_digits(low, p, e);
      cand.push_back(1);
      if (cand[0] == 0) continue;  // divisible by x
      if (is_irreducible(cand, p)) {
        f->modulus_ = std::move(cand);
        break;
      }
    }
  }

  // Slow multiplication is only used to build the tables.
  auto slow_mul = [&](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
    if (e == 1) return (a * b) % p;
    return from_digits(mul_mod(to_digits(a, p, e), to_digits(b, p, e), f->modulus_, p), p);
  };

  const std::uint64_t order = q - 1;
  const auto factors = prime_factors(order);
  auto slow_pow = [&](std::uint64_t a, std::uint64_t k) {
    std::uint64_t r = 1;
    while (k) {
      if (k & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      k >>= 1;
    }
    return r;
  };
  for (std::uint64_t a = 1; a < q; ++a) {
    bool generator = true;
    for (auto r : factors)
      if (slow_pow(a, order / r) == 1) {
        generator = false;
        break;
      }
    if (generator) {
      f->primitive_ = static_cast<Code>(a);
      break;
    }
  }

  f->exp_.assign(2 * order, 0);
  f->log_.assign(q, 0);
  std::uint64_t x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    f->exp_[i] = static_cast<Code>(x);
    f->exp_[i + order] = static_cast<Code>(x);
    f->log_[x] = static_cast<std::uint32_t>(i);
    x = slow_mul(x, f->primitive_);
  }

  f->neg_.resize(q);
  for (std::uint64_t a = 0; a < q; ++a) {
    Digits d = to_digits(a, p, e);
    for (auto& c : d) c = (p - c) % p;
    f->neg_[a] = static_cast<Code>(from_digits(d, p));
  }

  if (e > 1 && p != 2 && q <= 256) {
    f->add_table_.resize(q * q);
    for (std::uint64_t a = 0; a < q; ++a)
      for (std::uint64_t b = 0; b < q; ++b)
        f->add_table_[a * q + b] = f->add_digits(static_cast<Code>(a), static_cast<Code>(b));
  }
  return f;
}

Code Field::add_digits(Code a, Code b) const noexcept {
  Code result = 0;
  Code scale = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    const Code s = (a % p_ + b % p_) % p_;
    result += s * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return result;
}

Code Field::inv(Code a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in F_" + name());
  const std::uint32_t order = q_ - 1;
  return exp_[(order - log_[a]) % order];
}

Code Field::pow(Code a, std::uint64_t k) const noexcept {
  if (k == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = q_ - 1;
  return exp_[(std::uint64_t{log_[a]} * (k % order)) % order];
}

Code Field::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Code>(r);
}

std::vector<std::uint32_t> Field::coeffs(Code a) const { return to_digits(a, p_, e_); }

Code Field::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() > e_) throw Error(ErrorCode::SpecInvalid, "too many coefficients for F_" + name());
  Digits d(e_, 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= p_) throw Error(ErrorCode::SpecInvalid, "coefficient out of range for F_" + name());
    d[i] = c[i];
  }
  return static_cast<Code>(from_digits(d, p_));
}

std::string Field::format(Code a) const {
  if (e_ == 1) return std::to_string(a);
  const auto d = coeffs(a);
  std::string out;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) out += std::to_string(d[i]) + "*";
    out += "a";
    if (i > 1) out += "^" + std::to_string(i);
  }
  if (out.empty()) return "0";
  if (out.find_first_of("+*a") == std::string::npos) return out;
  return "(" + out + ")";
}

std::string Field::name() const {
  if (e_ == 1) return std::to_string(p_);
  return std::to_string(p_) + "^" + std::to_string(e_);
}

FieldPtr field_new(std::uint32_t p, std::uint32_t e, std::uint64_t max_q) { return Field::create(p, e, max_q); }

FieldPtr parse_field(std::string_view text, std::uint64_t max_q) {
  auto parse_uint = [&](std::string_view s) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
      throw Error(ErrorCode::ParseError, "bad field description '" + std::string(text) + "'");
    return v;
  };
  const auto caret = text.find('^');
  if (caret == std::string_view::npos) return field_new(parse_uint(text), 1, max_q);
  return field_new(parse_uint(text.substr(0, caret)), parse_uint(text.substr(caret + 1)), max_q);
}

FqElem::FqElem(FieldPtr field, Code code) : field_(std::move(field)), code_(code) {
  if (!field_) throw Error(ErrorCode::FieldMismatch, "element without a field");
  if (code_ >= field_->q()) throw Error(ErrorCode::SpecInvalid, "element code out of range");
}

FqElem FqElem::from_coeffs(FieldPtr field, std::span<const std::uint32_t> c) {
  const Code code = field->from_coeffs(c);
  return {std::move(field), code};
}

void FqElem::check_same(const FqElem& o) const {
  if (field_ != o.field_ && !field_->same_as(*o.field_))
    throw Error(ErrorCode::FieldMismatch, "F_" + field_->name() + " vs F_" + o.field_->name());
}

FqElem FqElem::operator+(const FqElem& o) const {
  check_same(o);
  return {field_, field_->add(code_, o.code_)};
}
FqElem FqElem::operator-(const FqElem& o) const {
  check_same(o);
  return {field_, field_->sub(code_, o.code_)};
}
FqElem FqElem::operator*(const FqElem& o) const {
  check_same(o);
  return {field_, field_->mul(code_, o.code_)};
}
FqElem FqElem::operator-() const { return {field_, field_->neg(code_)}; }
FqElem FqElem::inv() const { return {field_, field_->inv(code_)}; }
FqElem FqElem::pow(std::uint64_t k) const { return {field_, field_->pow(code_, k)}; }

bool FqElem::operator==(const FqElem& o) const {
  check_same(o);
  return code_ == o.code_;
}

FqElem primitive_element(const FieldPtr& field) { return {field, field->primitive()}; }

std::uint64_t multiplicative_order(const Field& field, Code a) {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "order of zero");
  std::uint64_t order = 1;
  Code x = a;
  while (x != 1) {
    x = field.mul(x, a);
    ++order;
  }
  return order;
}

}  // namespace truncinv::gf
