#pragma once

// Arithmetic in F_q, q = p^e.
//
// Elements are encoded as integers in [0, q): the code of
//   c_0 + c_1 x + ... + c_{e-1} x^{e-1}  (mod the defining polynomial)
// is c_0 + c_1 p + ... + c_{e-1} p^{e-1}.  The encoding is a bijection with
// the canonical coefficient vectors, so code equality is element equality.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace truncinv::gf {

using Code = std::uint32_t;

inline constexpr std::uint64_t kDefaultMaxQ = std::uint64_t{1} << 16;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  /// Builds F_{p^e}.  The modulus is the smallest monic irreducible of
  /// degree e, comparing lower coefficients as the base-p integer
  /// c_0 + c_1 p + ... (so the highest coefficient is most significant).
  static FieldPtr create(std::uint32_t p, std::uint32_t e, std::uint64_t max_q = kDefaultMaxQ);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t e() const noexcept { return e_; }
  std::uint32_t q() const noexcept { return q_; }
  /// Little-endian, monic, length e + 1.  For e = 1 this is the placeholder x.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Code zero() const noexcept { return 0; }
  Code one() const noexcept { return 1; }

  Code add(Code a, Code b) const noexcept {
    if (e_ == 1) {
      const Code s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    return add_digits(a, b);
  }
  Code neg(Code a) const noexcept { return neg_[a]; }
  Code sub(Code a, Code b) const noexcept { return add(a, neg_[b]); }
  Code mul(Code a, Code b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Throws DivisionByZero for 0.
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, std::uint64_t k) const noexcept;
  /// Image of an integer under Z -> F_p -> F_q.
  Code from_int(std::int64_t v) const noexcept;
  /// Generator of F_q^x used for the log tables (see primitive_element).
  Code primitive() const noexcept { return primitive_; }

  std::vector<std::uint32_t> coeffs(Code a) const;
  Code from_coeffs(std::span<const std::uint32_t> c) const;

  /// "3" for prime fields, "(a^2+2*a+1)"-style for extension fields.
  std::string format(Code a) const;
  /// "p^e" (or just "p" when e = 1).
  std::string name() const;

  bool same_as(const Field& other) const noexcept {
    return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
  }

 private:
  Field() = default;
  Code add_digits(Code a, Code b) const noexcept;

  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Code primitive_ = 1;
  std::vector<Code> exp_;            // size 2(q-1): exp_[i] = g^i
  std::vector<std::uint32_t> log_;   // log_[0] unused
  std::vector<Code> neg_;
  std::vector<Code> add_table_;      // only for small odd-characteristic extensions
};

/// field_new(p, e).  Throws NotPrime, FieldTooLarge.
FieldPtr field_new(std::uint32_t p, std::uint32_t e, std::uint64_t max_q = kDefaultMaxQ);

/// Parses "p^e" or "p" (e.g. "2^2", "3").
FieldPtr parse_field(std::string_view text, std::uint64_t max_q = kDefaultMaxQ);

bool is_prime(std::uint64_t n) noexcept;
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// A field element bound to its field.  Mixing elements from different
/// fields throws FieldMismatch.
class FqElem {
 public:
  FqElem(FieldPtr field, Code code);
  static FqElem zero(FieldPtr field) { return {std::move(field), 0}; }
  static FqElem one(FieldPtr field) { return {std::move(field), 1}; }
  static FqElem from_coeffs(FieldPtr field, std::span<const std::uint32_t> c);

  const FieldPtr& field() const noexcept { return field_; }
  Code code() const noexcept { return code_; }
  std::vector<std::uint32_t> coeffs() const { return field_->coeffs(code_); }
  bool is_zero() const noexcept { return code_ == 0; }

  FqElem operator+(const FqElem& o) const;
  FqElem operator-(const FqElem& o) const;
  FqElem operator*(const FqElem& o) const;
  FqElem operator-() const;
  FqElem inv() const;
  FqElem pow(std::uint64_t k) const;

  bool operator==(const FqElem& o) const;

  std::string to_string() const { return field_->format(code_); }

 private:
  void check_same(const FqElem& o) const;
  FieldPtr field_;
  Code code_;
};

/// Smallest element (by code) of multiplicative order q - 1.
FqElem primitive_element(const FieldPtr& field);

/// Multiplicative order of a nonzero element.
std::uint64_t multiplicative_order(const Field& field, Code a);

}  // namespace truncinv::gf
