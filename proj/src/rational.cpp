#include "truncinv/rational.hpp"

#include <algorithm>

namespace truncinv::rational {

namespace {

// Returns the scalar c with form = c * normalized.  Throws if not linear.
gf::Code normalize(const gf::Field& F, LinearForm& form) {
  std::size_t last = form.size();
  for (std::size_t i = form.size(); i-- > 0;)
    if (form[i] != 0) {
      last = i;
      break;
    }
  if (last == form.size()) throw Error(ErrorCode::DivisionByZero, "zero linear form");
  const gf::Code c = form[last];
  const gf::Code inv = F.inv(c);
  for (auto& x : form) x = F.mul(x, inv);
  return c;
}

FormSet forms_diff(const FormSet& big, const FormSet& small) {
  FormSet out;
  for (const auto& [form, mult] : big) {
    auto it = small.find(form);
    const std::uint32_t sub = it == small.end() ? 0 : it->second;
    if (mult > sub) out.emplace(form, mult - sub);
  }
  return out;
}

}  // namespace

MPoly form_poly(const gf::FieldPtr& field, const LinearForm& form) {
  std::vector<MPoly::Term> terms;
  for (std::size_t i = 0; i < form.size(); ++i) {
    if (form[i] == 0) continue;
    mpoly::Monomial m(form.size());
    m.set(i, 1);
    terms.emplace_back(m, form[i]);
  }
  return MPoly::from_terms(field, form.size(), std::move(terms));
}

MPoly forms_product(const gf::FieldPtr& field, std::size_t nvars, const FormSet& forms) {
  MPoly out = MPoly::one(field, nvars);
  for (const auto& [form, mult] : forms) out *= form_poly(field, form).pow(mult);
  return out;
}

std::vector<LinearForm> forms_up_to(const gf::Field& F, std::size_t nvars, std::size_t a) {
  std::vector<LinearForm> out;
  const std::uint32_t q = F.q();
  for (std::size_t last = 0; last < a; ++last) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < last; ++i) count *= q;
    for (std::uint64_t code = 0; code < count; ++code) {
      LinearForm form(nvars, 0);
      std::uint64_t rest = code;
      for (std::size_t i = 0; i < last; ++i) {
        form[i] = static_cast<gf::Code>(rest % q);
        rest /= q;
      }
      form[last] = 1;
      out.push_back(std::move(form));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

RationalFn::RationalFn(MPoly num) : num_(std::move(num)), rest_(MPoly::one(num_.field(), num_.nvars())) {}

RationalFn::RationalFn(MPoly num, FormSet forms, MPoly rest)
    : num_(std::move(num)), forms_(std::move(forms)), rest_(std::move(rest)) {
  if (rest_.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  if (rest_.nvars() != num_.nvars()) throw Error(ErrorCode::ArityMismatch, "denominator arity");
  for (const auto& [form, mult] : forms_)
    if (form.size() != num_.nvars()) throw Error(ErrorCode::ArityMismatch, "linear form arity");
  normalize_rest();
}

void RationalFn::normalize_rest() {
  if (num_.is_zero()) {
    forms_.clear();
    rest_ = MPoly::one(num_.field(), num_.nvars());
    return;
  }
  if (rest_.is_constant() && rest_.constant_term() != 1) {
    num_ = num_.scale(num_.F().inv(rest_.constant_term()));
    rest_ = MPoly::one(num_.field(), num_.nvars());
  }
}

RationalFn RationalFn::quotient(const MPoly& num, const MPoly& den) {
  if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  if (den.is_constant()) return RationalFn(num.scale(num.F().inv(den.constant_term())));
  FormSet forms;
  MPoly rest = den;
  const gf::Field& F = den.F();
  // Peel off linear factors when the candidate list is small enough.
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < den.nvars() && count <= 8192; ++i) count *= F.q();
  if (den.is_homogeneous() && count <= 8192) {
    for (const auto& form : forms_up_to(F, den.nvars(), den.nvars())) {
      const MPoly lf = form_poly(den.field(), form);
      while (!rest.is_constant()) {
        auto h = mpoly::try_exact_div(rest, lf);
        if (!h) break;
        rest = std::move(*h);
        ++forms[form];
      }
      if (rest.is_constant()) break;
    }
  }
  return RationalFn(num, std::move(forms), std::move(rest));
}

MPoly RationalFn::den() const { return forms_product(field(), nvars(), forms_) * rest_; }

CommonDen common_denominator(std::span<const RationalFn> fs) {
  if (fs.empty()) throw Error(ErrorCode::ArityMismatch, "empty family");
  const auto& field = fs[0].field();
  const std::size_t nv = fs[0].nvars();
  CommonDen out{{}, {}, MPoly::one(field, nv)};
  for (const auto& f : fs)
    for (const auto& [form, mult] : f.forms()) {
      auto& slot = out.forms[form];
      slot = std::max(slot, mult);
    }
  std::vector<MPoly> rests;
  for (const auto& f : fs)
    if (!f.rest().is_constant() && std::find(rests.begin(), rests.end(), f.rest()) == rests.end())
      rests.push_back(f.rest());
  for (const auto& r : rests) out.rest *= r;
  for (const auto& f : fs) {
    MPoly n = f.num() * forms_product(field, nv, forms_diff(out.forms, f.forms()));
    for (const auto& r : rests)
      if (!(r == f.rest())) n *= r;
    out.nums.push_back(std::move(n));
  }
  return out;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (has_unit_den() && o.has_unit_den()) return RationalFn(num_ + o.num_);
  const RationalFn pair[2] = {*this, o};
  auto cd = common_denominator(pair);
  return RationalFn(cd.nums[0] + cd.nums[1], std::move(cd.forms), std::move(cd.rest));
}

RationalFn RationalFn::operator-() const { return RationalFn(-num_, forms_, rest_); }
RationalFn RationalFn::operator-(const RationalFn& o) const { return *this + (-o); }

RationalFn RationalFn::operator*(const RationalFn& o) const {
  FormSet forms = forms_;
  for (const auto& [form, mult] : o.forms_) forms[form] += mult;
  return RationalFn(num_ * o.num_, std::move(forms), rest_ * o.rest_);
}

RationalFn RationalFn::mul_poly(const MPoly& f) const { return RationalFn(num_ * f, forms_, rest_); }

RationalFn RationalFn::simplify() const {
  if (num_.is_zero() || has_unit_den()) return *this;
  // One division by the whole denominator settles the common case.
  if (auto h = mpoly::try_exact_div(num_, den())) return RationalFn(std::move(*h));
  MPoly num = num_;
  FormSet forms;
  for (const auto& [form, mult] : forms_) {
    const MPoly lf = form_poly(field(), form);
    std::uint32_t left = mult;
    while (left > 0) {
      auto h = mpoly::try_exact_div(num, lf);
      if (!h) break;
      num = std::move(*h);
      --left;
    }
    if (left > 0) forms.emplace(form, left);
  }
  MPoly rest = rest_;
  if (!rest.is_constant())
    if (auto h = mpoly::try_exact_div(num, rest)) {
      num = std::move(*h);
      rest = MPoly::one(field(), nvars());
    }
  return RationalFn(std::move(num), std::move(forms), std::move(rest));
}

std::optional<MPoly> RationalFn::try_poly() const {
  if (has_unit_den()) return num_.scale(field()->inv(rest_.constant_term()));
  if (auto h = mpoly::try_exact_div(num_, den())) return h;
  return std::nullopt;
}

MPoly RationalFn::as_poly() const {
  if (auto h = try_poly()) return *h;
  throw Error(ErrorCode::NotPolynomial, "denominator does not divide the numerator: " + to_string(*this));
}

bool RationalFn::operator==(const RationalFn& o) const {
  if (nvars() != o.nvars() || !field()->same_as(*o.field()))
    throw Error(ErrorCode::ArityMismatch, "comparing rational functions from different rings");
  if (has_unit_den() && o.has_unit_den()) return num_ == o.num_;
  const RationalFn pair[2] = {*this, o};
  auto cd = common_denominator(pair);
  return cd.nums[0] == cd.nums[1];
}

RationalFn remap_vars(const RationalFn& f, std::span<const std::size_t> map, std::size_t target_nvars) {
  MPoly num = mpoly::remap_vars(f.num(), map, target_nvars);
  const gf::Field& F = *f.field();
  gf::Code scalar = 1;
  FormSet forms;
  for (const auto& [form, mult] : f.forms()) {
    LinearForm moved(target_nvars, 0);
    for (std::size_t i = 0; i < form.size(); ++i) moved[map[i]] = form[i];
    const gf::Code c = normalize(F, moved);
    scalar = F.mul(scalar, F.pow(c, mult));
    forms[moved] += mult;
  }
  // den = scalar * prod(normalized forms) * rest
  if (scalar != 1) num = num.scale(F.inv(scalar));
  return RationalFn(std::move(num), std::move(forms), mpoly::remap_vars(f.rest(), map, target_nvars));
}

RationalFn embed(const RationalFn& f, std::size_t target_nvars) {
  if (target_nvars == f.nvars()) return f;
  std::vector<std::size_t> map(f.nvars());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  return remap_vars(f, map, target_nvars);
}

std::string to_string(const RationalFn& f) {
  if (f.has_unit_den()) return mpoly::to_string(f.try_poly().value());
  return "(" + mpoly::to_string(f.num()) + ") / (" + mpoly::to_string(f.den()) + ")";
}

}  // namespace truncinv::rational
