#include "truncinv/invariants.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace truncinv::inv {

using mpoly::Monomial;
using rational::FormSet;
using rational::LinearForm;

namespace {

std::string field_key(const gf::Field& F) {
  std::string key = F.name() + ":";
  for (auto c : F.modulus()) key += std::to_string(c) + ",";
  return key;
}

MPoly var_power(const gf::FieldPtr& field, std::size_t nvars, std::size_t var, std::uint64_t e) {
  Monomial m(nvars);
  if (e > std::numeric_limits<mpoly::Exp>::max()) throw Error(ErrorCode::ExponentOverflow, "exponent too large");
  m.set(var, static_cast<mpoly::Exp>(e));
  return MPoly::monomial(field, m);
}

// Calls fn(subset) for every h-subset of {0..n-1}, in lex order.
void for_each_subset(std::size_t n, std::size_t h, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(h);
  for (std::size_t i = 0; i < h; ++i) idx[i] = i;
  if (h > n) return;
  while (true) {
    fn(idx);
    std::size_t i = h;
    while (i > 0 && idx[i - 1] == n - h + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < h; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void weak_compositions(std::size_t parts, std::uint32_t total, std::vector<std::uint32_t>& cur,
                       std::vector<std::vector<std::uint32_t>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::uint32_t t = 0; t <= total; ++t) {
    cur.push_back(t);
    weak_compositions(parts, total - t, cur, out);
    cur.pop_back();
  }
}

std::mutex memo_mutex;
std::map<std::tuple<std::string, std::size_t, std::size_t, int>, MPoly> dickson_memo;
std::map<std::tuple<std::string, std::size_t, std::size_t>, FactoredPoly> moore_memo;

}  // namespace

std::uint64_t qpow(std::uint64_t q, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    r *= q;
    if (r > std::numeric_limits<mpoly::Exp>::max())
      throw Error(ErrorCode::ExponentOverflow, "q^" + std::to_string(e) + " exceeds 32 bits");
  }
  return r;
}

MPoly moore_L(const gf::FieldPtr& field, std::span<const std::size_t> vars, std::size_t nvars) {
  if (vars.empty()) throw Error(ErrorCode::EmptyIndexSet, "Moore determinant of no variables");
  const std::size_t k = vars.size();
  mpoly::PolyMatrix m(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m[i].push_back(var_power(field, nvars, vars[j], qpow(field->q(), i)));
  return mpoly::det_poly(m);
}

MPoly moore_L(const gf::FieldPtr& field, std::size_t k, std::size_t nvars) {
  std::vector<std::size_t> vars(k);
  for (std::size_t i = 0; i < k; ++i) vars[i] = i;
  return moore_L(field, vars, nvars);
}

FactoredPoly moore_factored(const gf::FieldPtr& field, std::size_t k, std::size_t nvars) {
  const auto key = std::make_tuple(field_key(*field), k, nvars);
  {
    std::lock_guard lock(memo_mutex);
    if (auto it = moore_memo.find(key); it != moore_memo.end()) return it->second;
  }
  FactoredPoly out;
  for (auto& form : rational::forms_up_to(*field, nvars, k)) out.forms.emplace(std::move(form), 1);
  const MPoly L = moore_L(field, k, nvars);
  const MPoly P = rational::forms_product(field, nvars, out.forms);
  const auto& [lead, c] = L.terms().front();
  out.scalar = field->div(c, P.coeff(lead));
  if (!(P.scale(out.scalar) == L))
    throw Error(ErrorCode::NotDivisible, "Moore determinant is not the product of linear forms");
  std::lock_guard lock(memo_mutex);
  moore_memo.emplace(key, out);
  return out;
}

FactoredPoly v_factored(const gf::Field& F, std::span<const std::size_t> J, std::size_t i, std::size_t nvars) {
  FactoredPoly out;
  const std::uint32_t q = F.q();
  std::uint64_t count = 1;
  for (std::size_t t = 0; t < J.size(); ++t) count *= q;
  for (std::uint64_t code = 0; code < count; ++code) {
    LinearForm form(nvars, 0);
    std::uint64_t rest = code;
    for (auto j : J) {
      if (j == i) throw Error(ErrorCode::InvalidIndex, "V(J, i) with i in J is zero");
      form[j] = static_cast<gf::Code>(rest % q);
      rest /= q;
    }
    form[i] = 1;
    std::size_t last = nvars;
    while (form[--last] == 0) {
    }
    const gf::Code c = form[last];
    if (c != 1) {
      const gf::Code inv = F.inv(c);
      for (auto& x : form) x = F.mul(x, inv);
      out.scalar = F.mul(out.scalar, c);
    }
    ++out.forms[form];
  }
  return out;
}

MPoly v_poly(const gf::FieldPtr& field, std::span<const std::size_t> J, std::size_t i, std::size_t nvars,
             VRoute route) {
  for (auto j : J)
    if (j == i) return MPoly(field, nvars);
  switch (route) {
    case VRoute::Quotient: {
      if (J.empty()) return MPoly::variable(field, nvars, i);
      std::vector<std::size_t> Ji(J.begin(), J.end());
      Ji.push_back(i);
      return mpoly::exact_div(moore_L(field, Ji, nvars), moore_L(field, J, nvars));
    }
    case VRoute::Product: {
      const auto f = v_factored(*field, J, i, nvars);
      return rational::forms_product(field, nvars, f.forms).scale(f.scalar);
    }
    case VRoute::Fundamental: {
      const std::size_t k = J.size();
      const std::uint32_t q = field->q();
      MPoly out = var_power(field, nvars, i, qpow(q, k));
      std::vector<std::size_t> map(J.begin(), J.end());
      for (std::size_t s = 0; s < k; ++s) {
        const MPoly Q = mpoly::remap_vars(dickson(field, k, s), map, nvars);
        MPoly term = Q * var_power(field, nvars, i, qpow(q, s));
        out += (k - s) % 2 ? -term : term;
      }
      return out;
    }
  }
  return MPoly(field, nvars);
}

MPoly dickson(const gf::FieldPtr& field, std::size_t k, std::size_t s, DicksonRoute route) {
  if (s >= k) throw Error(ErrorCode::IndexOutOfRange, "Q_{" + std::to_string(k) + "," + std::to_string(s) + "}");
  const auto key = std::make_tuple(field_key(*field), k, s, static_cast<int>(route));
  {
    std::lock_guard lock(memo_mutex);
    if (auto it = dickson_memo.find(key); it != dickson_memo.end()) return it->second;
  }
  const std::uint32_t q = field->q();
  MPoly out(field, k);
  if (route == DicksonRoute::Determinant) {
    mpoly::PolyMatrix num;
    for (std::size_t i = 0; i <= k; ++i) {
      if (i == s) continue;
      std::vector<MPoly> row;
      for (std::size_t j = 0; j < k; ++j) row.push_back(var_power(field, k, j, qpow(q, i)));
      num.push_back(std::move(row));
    }
    out = mpoly::exact_div(mpoly::det_poly(num), moore_L(field, k, k));
  } else {
    std::vector<std::size_t> J(k);
    for (std::size_t j = 0; j < k; ++j) J[j] = j;
    const MPoly V = v_poly(field, J, k, k + 1, route == DicksonRoute::Coefficient ? VRoute::Quotient : VRoute::Product);
    const std::uint64_t e = qpow(q, s);
    std::vector<MPoly::Term> terms;
    for (const auto& [m, c] : V.terms()) {
      if (m[k] != e) continue;
      Monomial r(k);
      for (std::size_t j = 0; j < k; ++j) r.set(j, m[j]);
      terms.emplace_back(r, (k - s) % 2 ? field->neg(c) : c);
    }
    out = MPoly::from_terms(field, k, std::move(terms));
  }
  std::lock_guard lock(memo_mutex);
  dickson_memo.emplace(key, out);
  return out;
}

MPoly dickson_d(const gf::FieldPtr& field, std::size_t a) { return dickson(field, a, a - 1); }

// ---------------------------------------------------------------------------
// delta

RationalFn delta(std::size_t a, std::uint32_t b, const RationalFn& f) {
  const std::size_t c = f.nvars();
  if (a < 1 || a > c + 1)
    throw Error(ErrorCode::SpecInvalid, "delta_{" + std::to_string(a) + ";" + std::to_string(b) + "} on " +
                                            std::to_string(c) + " variables");
  const auto& field = f.field();
  const std::uint32_t q = field->q();
  const std::uint64_t qb = qpow(q, b);
  if (a == 1) {
    const auto map = mpoly::skip_map(c, 0);
    return rational::remap_vars(f, map, c + 1).mul_poly(var_power(field, c + 1, 0, qb - 1));
  }
  std::vector<RationalFn> cols;
  cols.reserve(a);
  for (std::size_t j = 0; j < a; ++j) {
    const auto map = mpoly::skip_map(c, j);
    cols.push_back(rational::remap_vars(f, map, c + 1));
  }
  auto cd = rational::common_denominator(cols);
  mpoly::PolyMatrix m(a);
  for (std::size_t i = 0; i + 1 < a; ++i)
    for (std::size_t j = 0; j < a; ++j) m[i].push_back(var_power(field, c + 1, j, qpow(q, i)));
  for (std::size_t j = 0; j < a; ++j) {
    Monomial xj(c + 1);
    xj.set(j, static_cast<mpoly::Exp>(qb));
    m[a - 1].push_back(cd.nums[j].mul_term(xj, 1));
  }
  const MPoly N = mpoly::det_poly(m);
  const auto L = moore_factored(field, a, c + 1);
  FormSet forms = std::move(cd.forms);
  for (const auto& [form, mult] : L.forms) forms[form] += mult;
  return RationalFn(N.scale(field->inv(L.scalar)), std::move(forms), std::move(cd.rest)).simplify();
}

RationalFn delta(std::size_t a, std::uint32_t b, const MPoly& f) { return delta(a, b, RationalFn(f)); }

RationalFn delta_iter(std::size_t a, std::uint32_t b, std::size_t h, const RationalFn& f) {
  RationalFn cur = f;
  for (std::size_t i = 0; i < h; ++i) cur = delta(a, b, cur);
  return cur;
}

RationalFn subset_sum(std::size_t r, std::size_t h, const RationalFn& g_in, const MPoly& w) {
  if (w.nvars() != h) throw Error(ErrorCode::ArityMismatch, "weight must have h variables");
  const RationalFn g = g_in.nvars() < r ? rational::embed(g_in, r) : g_in;
  const std::size_t rp = g.nvars();
  const std::size_t out_n = rp + h;
  const auto& field = g.field();
  RationalFn total(MPoly(field, out_n));
  for_each_subset(r + h, h, [&](const std::vector<std::size_t>& I) {
    std::vector<std::size_t> comp;
    for (std::size_t t = 0, u = 0; t < r + h; ++t) {
      if (u < I.size() && I[u] == t) {
        ++u;
        continue;
      }
      comp.push_back(t);
    }
    std::vector<std::size_t> gmap(rp);
    for (std::size_t t = 0; t < rp; ++t) gmap[t] = t < r ? comp[t] : t + h;
    const RationalFn gI = rational::remap_vars(g, gmap, out_n);
    const MPoly wI = mpoly::remap_vars(w, I, out_n);
    FactoredPoly V;
    for (auto i : I) {
      const auto vi = v_factored(*field, comp, i, out_n);
      V.scalar = field->mul(V.scalar, vi.scalar);
      for (const auto& [form, mult] : vi.forms) V.forms[form] += mult;
    }
    total += gI * RationalFn(wI.scale(field->inv(V.scalar)), std::move(V.forms), MPoly::one(field, out_n));
  });
  return total.simplify();
}

RationalFn delta_iter_closed(std::size_t r, std::uint32_t b, std::size_t h, const RationalFn& f) {
  const auto& field = f.field();
  Monomial m(h);
  for (std::size_t u = 0; u < h; ++u) m.set(u, static_cast<mpoly::Exp>(qpow(field->q(), b)));
  return subset_sum(r, h, f, MPoly::monomial(field, m));
}

std::vector<ExpansionTerm> expand_v_product(const gf::FieldPtr& field, std::size_t s, std::size_t h) {
  std::vector<std::vector<std::uint32_t>> Ts;
  std::vector<std::uint32_t> cur;
  weak_compositions(s + 1, static_cast<std::uint32_t>(h), cur, Ts);
  std::vector<ExpansionTerm> out;
  const std::uint32_t q = field->q();
  for (const auto& T : Ts) {
    ExpansionTerm term{T, MPoly::one(field, s), MPoly(field, h)};
    std::uint64_t sign = 0;
    for (std::size_t i = 0; i <= s; ++i) sign += std::uint64_t{T[i]} * (s - i);
    for (std::size_t i = 0; i < s; ++i)
      if (T[i]) term.beta *= dickson(field, s, i).pow(T[i]);
    if (sign % 2) term.beta = -term.beta;
    // Monomial symmetric function: all distinct arrangements of the exponents.
    std::vector<mpoly::Exp> exps;
    for (std::size_t i = 0; i <= s; ++i)
      for (std::uint32_t t = 0; t < T[i]; ++t) exps.push_back(static_cast<mpoly::Exp>(qpow(q, i)));
    std::vector<MPoly::Term> terms;
    do {
      terms.emplace_back(Monomial(std::span<const mpoly::Exp>(exps)), 1);
    } while (std::next_permutation(exps.begin(), exps.end()));
    term.alpha = MPoly::from_terms(field, h, std::move(terms));
    out.push_back(std::move(term));
  }
  return out;
}

RationalFn a_rt(std::size_t r, const ExpansionTerm& T, const RationalFn& g) {
  return subset_sum(r, T.alpha.nvars(), g, T.alpha);
}

namespace {

bool is_symmetric(const MPoly& f) {
  const std::size_t n = f.nvars();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<std::size_t> map(n);
    for (std::size_t t = 0; t < n; ++t) map[t] = t;
    std::swap(map[i], map[i + 1]);
    if (!(mpoly::remap_vars(f, map, n) == f)) return false;
  }
  return true;
}

}  // namespace

RationalFn shuffle(const MPoly& f, const MPoly& g, bool check_symmetry) {
  if (check_symmetry && !(is_symmetric(f) && is_symmetric(g)))
    throw Error(ErrorCode::SymmetryViolation, "shuffle product needs symmetric arguments");
  return subset_sum(f.nvars(), g.nvars(), RationalFn(f), g);
}

CompositeResult composite_delta_check(std::size_t r, std::size_t s, std::size_t k, std::size_t h, std::uint32_t b,
                                      const MPoly& f, const MPoly& g) {
  if (r > s + k)
    throw Error(ErrorCode::ArityViolation, "composite delta needs r <= s + k");
  const auto& field = f.field();
  const std::size_t rp = std::max(g.nvars(), r);
  const std::size_t sp = std::max({f.nvars(), s, rp > k ? rp - k : std::size_t{0}});
  const MPoly fe = mpoly::embed(f, sp);
  const MPoly ge = mpoly::embed(g, rp);

  const RationalFn inner = delta_iter(s + 1, b, k, RationalFn(fe));
  const RationalFn lhs = delta_iter(r + 1, b, h, rational::embed(RationalFn(ge), sp + k) * inner);

  RationalFn rhs(MPoly(field, sp + k + h));
  for (const auto& T : expand_v_product(field, s, h)) {
    const RationalFn A = a_rt(r, T, RationalFn(ge));
    const MPoly bf = mpoly::embed(T.beta, sp) * fe;
    const RationalFn D = delta_iter(s + 1, b, h + k, RationalFn(bf));
    rhs += rational::embed(A, sp + k + h) * D;
  }
  CompositeResult res;
  res.equal = lhs == rhs;
  if (!res.equal) {
    res.lhs = lhs.simplify();
    res.rhs = rhs.simplify();
  }
  return res;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::uint32_t> pad_partition(std::span<const std::uint32_t> lambda, std::size_t s) {
  if (lambda.size() > s) {
    for (std::size_t i = s; i < lambda.size(); ++i)
      if (lambda[i] != 0) throw Error(ErrorCode::InvalidIndex, "partition has more than s parts");
  }
  std::vector<std::uint32_t> lam(s, 0);
  for (std::size_t i = 0; i < std::min(s, lambda.size()); ++i) lam[i] = lambda[i];
  for (std::size_t i = 1; i < s; ++i)
    if (lam[i] > lam[i - 1]) throw Error(ErrorCode::InvalidIndex, "partition must be non-increasing");
  return lam;
}

}  // namespace

MPoly schur_s(const gf::FieldPtr& field, std::span<const std::uint32_t> lambda, std::size_t s) {
  const auto lam = pad_partition(lambda, s);
  if (s == 0) return MPoly::one(field, 0);
  const std::uint32_t q = field->q();
  mpoly::PolyMatrix num(s), den(s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      num[i].push_back(var_power(field, s, i, qpow(q, lam[j] + s - 1 - j)));
      den[i].push_back(var_power(field, s, i, qpow(q, s - 1 - j)));
    }
  return mpoly::exact_div(mpoly::det_poly(num), mpoly::det_poly(den));
}

MPoly schur_s_inductive(const gf::FieldPtr& field, std::span<const std::uint32_t> lambda, std::size_t s) {
  const auto lam = pad_partition(lambda, s);
  if (s == 0) return MPoly::one(field, 0);
  const MPoly inner = schur_s_inductive(field, std::span<const std::uint32_t>(lam).subspan(1), s - 1);
  return delta(s, lam[0] + static_cast<std::uint32_t>(s) - 1, inner).as_poly();
}

MPoly capital_y(const gf::FieldPtr& field, std::uint32_t b, std::span<const std::uint32_t> I,
                std::span<const std::uint32_t> J) {
  if (I.size() != J.size()) throw Error(ErrorCode::ArityMismatch, "I and J have different lengths");
  const std::size_t k = I.size();
  if (k == 0) throw Error(ErrorCode::EmptyIndexSet, "Y with no blocks");
  RationalFn cur(dickson_d(field, k).pow(J[k - 1]));
  cur = delta_iter(k, b, I[k - 1], cur);
  for (std::size_t s = k - 1; s >= 1; --s) {
    const MPoly D = mpoly::embed(dickson_d(field, s).pow(J[s - 1]), cur.nvars());
    cur = delta_iter(s, b, I[s - 1], cur.mul_poly(D));
  }
  return cur.as_poly();
}

bool is_km_invariant(const MPoly& f, std::size_t k, std::uint32_t m) {
  if (f.nvars() != k) throw Error(ErrorCode::ArityMismatch, "(k,m)-invariance needs k variables");
  const std::uint32_t q = f.F().q();
  for (const auto& [mono, c] : f.terms())
    for (std::size_t i = 0; i < k; ++i)
      if (mono[i] % (q - 1) != 0) return false;
  const std::uint64_t cap = qpow(q, m);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      std::vector<gf::Code> sigma(k * k, 0);
      for (std::size_t t = 0; t < k; ++t) sigma[t * k + t] = 1;
      sigma[i * k + j] = 1;
      const MPoly diff = mpoly::apply_matrix(f, sigma, k) - f;
      for (const auto& [mono, c] : diff.terms())
        if (mono[i] < cap) return false;
    }
  return true;
}

}  // namespace truncinv::inv
