#include "truncinv/harness.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "truncinv/basis.hpp"
#include "truncinv/expr.hpp"
#include "truncinv/invariants.hpp"
#include "truncinv/linalg.hpp"
#include "truncinv/parallel.hpp"

namespace truncinv::harness {

using mpoly::MPoly;
using nlohmann::json;

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

bool VerifyReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == Status::Fail; });
}

std::string VerifyReport::case_id() const {
  std::string s = group + " q=" + std::to_string(p);
  if (e > 1) s += "^" + std::to_string(e);
  if (group != "identities" && group != "dickson" && group != "nabla-delta")
    s += " m=" + std::to_string(m) + " n=" + std::to_string(n);
  return s;
}

void VerifyReport::add(std::string name, bool ok, json witness, json detail) {
  checks.push_back({std::move(name), ok ? Status::Pass : Status::Fail, ok ? json() : std::move(witness),
                    std::move(detail)});
}

void VerifyReport::skip(std::string name, std::string why) {
  checks.push_back({std::move(name), Status::Skipped, json(), json(std::move(why))});
}

const Check* VerifyReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

json to_json(const VerifyReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j{{"name", c.name}, {"status", to_string(c.status)}};
    if (!c.witness.is_null()) j["witness"] = c.witness;
    if (!c.detail.is_null()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  json out{{"case", {{"p", r.p}, {"e", r.e}, {"m", r.m}, {"n", r.n}, {"group", r.group}}},
           {"status", r.passed() ? "pass" : "fail"},
           {"conjecture", r.conjecture},
           {"checks", std::move(checks)},
           {"seconds", r.seconds}};
  json ser = json::object();
  if (r.expected) ser["expected"] = {{"text", series::to_string(*r.expected)}, {"coeffs", series::to_json(*r.expected)}};
  if (r.computed) ser["computed"] = {{"text", series::to_string(*r.computed)}, {"coeffs", series::to_json(*r.computed)}};
  out["series"] = std::move(ser);
  json counts = json::object();
  if (r.basis_count >= 0) counts["basis"] = r.basis_count;
  if (r.orbit_count >= 0) counts["orbits"] = r.orbit_count;
  if (r.flag_count >= 0) counts["flags"] = r.flag_count;
  out["counts"] = std::move(counts);
  return out;
}

// ---------------------------------------------------------------------------
// Oracle with cache

namespace {

std::string oracle_key(const gf::Field& F, const groups::GroupSpec& spec, std::uint32_t m, std::uint64_t d) {
  std::string kind = spec.kind == groups::Kind::Borel ? "borel" : spec.kind == groups::Kind::GL ? "gl" : "par";
  for (auto a : spec.alpha) kind += "-" + std::to_string(a);
  std::string mod;
  for (auto c : F.modulus()) mod += std::to_string(c);
  return "oracle_p" + std::to_string(F.p()) + "_e" + std::to_string(F.e()) + "_mod" + mod + "_m" + std::to_string(m) +
         "_n" + std::to_string(spec.n) + "_" + kind + "_d" + std::to_string(d);
}

}  // namespace

std::map<std::uint64_t, groups::DegreeInvariants> oracle(const gf::FieldPtr& field, const groups::GroupSpec& spec,
                                                         std::uint32_t m, const Options& opt) {
  const std::uint64_t top = spec.n * (mpoly::make_truncation(field->q(), m).cap - 1);
  groups::OracleOptions oo{opt.max_cells, opt.threads};
  if (!opt.cache) return groups::invariant_dims(field, spec, m, oo);

  std::map<std::uint64_t, groups::DegreeInvariants> out;
  bool complete = true;
  for (std::uint64_t d = 0; d <= top && complete; ++d) {
    auto j = opt.cache->get(oracle_key(*field, spec, m, d));
    if (!j) {
      complete = false;
      break;
    }
    groups::DegreeInvariants di;
    di.degree = d;
    for (const auto& pj : j->at("basis")) di.basis.push_back(mpoly::from_json(field, spec.n, pj));
    di.dim = di.basis.size();
    if (di.dim) out.emplace(d, std::move(di));
  }
  if (complete) return out;

  out = groups::invariant_dims(field, spec, m, oo);
  for (std::uint64_t d = 0; d <= top; ++d) {
    json basis = json::array();
    if (auto it = out.find(d); it != out.end())
      for (const auto& f : it->second.basis) basis.push_back(mpoly::to_json(f));
    opt.cache->put(oracle_key(*field, spec, m, d), json{{"basis", std::move(basis)}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared pipeline

namespace {

using Clock = std::chrono::steady_clock;

VerifyReport make_report(const gf::FieldPtr& field, std::uint32_t m, std::size_t n, std::string group) {
  VerifyReport r;
  r.p = field->p();
  r.e = field->e();
  r.m = m;
  r.n = n;
  r.group = std::move(group);
  return r;
}

json label_list(const std::vector<std::string>& labels, std::size_t limit = 5) {
  json out = json::array();
  for (std::size_t i = 0; i < labels.size() && i < limit; ++i) out.push_back(labels[i]);
  return out;
}

// Rank of the degree-d slice of `family` together with v, versus without it.
bool in_span(const std::vector<const MPoly*>& family, const MPoly& v) {
  std::vector<MPoly> with;
  for (auto* f : family) with.push_back(*f);
  const std::size_t r0 = groups::rank_of_family(with).total;
  with.push_back(v);
  return groups::rank_of_family(with).total == r0;
}

struct Evaluated {
  std::vector<std::optional<MPoly>> polys;
  std::vector<MPoly> ok;  // successfully evaluated polynomials, in order
};

// Evaluates a candidate list and runs steps 1-5 of the pipeline.
Evaluated run_family(VerifyReport& rep, const gf::FieldPtr& field, const groups::GroupSpec& spec, std::uint32_t m,
                     const std::vector<std::string>& labels, const std::vector<expr::NodePtr>& nodes,
                     const series::TSeries& expected, const Options& opt) {
  Evaluated ev;
  ev.polys.resize(nodes.size());
  expr::Evaluator evaluator(field);
  std::vector<std::string> errors(nodes.size());
  parallel_for(nodes.size(), opt.threads, [&](std::size_t i) {
    try {
      ev.polys[i] = evaluator.eval_poly(nodes[i]);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  std::vector<std::string> nonpoly;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!ev.polys[i]) nonpoly.push_back(labels[i] + ": " + errors[i]);
  rep.add("polynomial", nonpoly.empty(), json{{"count", nonpoly.size()}, {"examples", label_list(nonpoly)}},
          json{{"members", nodes.size()}});
  for (auto& p : ev.polys)
    if (p) ev.ok.push_back(*p);
  rep.basis_count = static_cast<std::int64_t>(nodes.size());

  std::vector<std::string> not_inv;
  std::vector<char> inv_flags(nodes.size(), 1);
  parallel_for(nodes.size(), opt.threads, [&](std::size_t i) {
    if (ev.polys[i]) inv_flags[i] = groups::is_invariant(*ev.polys[i], field, spec, m);
  });
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!inv_flags[i]) not_inv.push_back(labels[i]);
  rep.add("invariant", not_inv.empty(), json{{"count", not_inv.size()}, {"examples", label_list(not_inv)}});

  // Truncation happens before rank: members must be nonzero in Q_m(n).
  const auto tr = mpoly::make_truncation(field->q(), m);
  std::vector<MPoly> truncated;
  for (const auto& f : ev.ok) truncated.push_back(mpoly::truncate(f, tr));
  groups::FamilyRank rank;
  try {
    rank = groups::rank_of_family(truncated);
  } catch (const Error& e) {
    rep.add("independent", false, json{{"error", e.what()}});
    return ev;
  }
  rep.add("independent", rank.total == nodes.size(), json{{"rank", rank.total}, {"members", nodes.size()}});

  std::map<std::uint64_t, groups::DegreeInvariants> dims;
  try {
    dims = oracle(field, spec, m, opt);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SizeBound) throw;
    rep.skip("spanning", e.what());
    rep.skip("hilbert_oracle", e.what());
    rep.computed = series::hilbert_of_degrees({});
    return ev;
  }
  std::map<std::uint64_t, std::size_t> oracle_dims;
  for (const auto& [d, di] : dims) oracle_dims[d] = di.dim;
  json mismatch = nullptr;
  std::set<std::uint64_t> degrees;
  for (const auto& [d, r] : rank.per_degree) degrees.insert(d);
  for (const auto& [d, k] : oracle_dims) degrees.insert(d);
  for (auto d : degrees) {
    const std::size_t r = rank.per_degree.count(d) ? rank.per_degree.at(d) : 0;
    const std::size_t k = oracle_dims.count(d) ? oracle_dims.at(d) : 0;
    if (r == k) continue;
    mismatch = json{{"degree", d}, {"family_rank", r}, {"oracle_dim", k}};
    if (r < k) {
      std::vector<const MPoly*> slice;
      for (const auto& f : truncated)
        if (!f.is_zero() && f.degree() == d) slice.push_back(&f);
      for (const auto& v : dims.at(d).basis)
        if (!in_span(slice, v)) {
          mismatch["kernel_vector"] = mpoly::to_string(v);
          break;
        }
    }
    break;
  }
  rep.add("spanning", mismatch.is_null(), mismatch);

  rep.expected = expected;
  try {
    rep.computed = series::hilbert_of_family(truncated);
  } catch (const Error& e) {
    rep.add("hilbert_family", false, json{{"error", e.what()}});
  }
  if (rep.computed) {
    auto bad = series::first_mismatch(*rep.computed, expected);
    rep.add("hilbert_family", !bad, bad ? json{{"degree", *bad}} : json());
  }
  const auto from_oracle = series::hilbert_of_dims(oracle_dims);
  auto bad = series::first_mismatch(from_oracle, expected);
  rep.add("hilbert_oracle", !bad, bad ? json{{"degree", *bad}, {"oracle", series::to_string(from_oracle)}} : json());
  return ev;
}

void add_orbit_check(VerifyReport& rep, const gf::FieldPtr& field, const groups::GroupSpec& spec, std::uint32_t m,
                     std::int64_t expected, const Options& opt) {
  try {
    rep.orbit_count = static_cast<std::int64_t>(groups::orbit_count(field, spec, m, opt.orbit_limit));
    rep.add("orbits", rep.orbit_count == expected, json{{"orbits", rep.orbit_count}, {"expected", expected}});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SizeBound) throw;
    rep.skip("orbits", e.what());
  }
}

}  // namespace

VerifyReport verify_borel(const gf::FieldPtr& field, std::uint32_t m, std::size_t n, const Options& opt) {
  const auto t0 = Clock::now();
  const std::uint64_t q = field->q();
  auto rep = make_report(field, m, n, "borel");
  const auto idx = basis::enumerate_basis(q, m, n);
  std::vector<std::string> labels;
  std::vector<expr::NodePtr> nodes;
  for (const auto& y : idx) {
    labels.push_back(basis::to_string(y));
    nodes.push_back(basis::y_expr(y));
  }
  const std::vector<std::size_t> ones(n, 1);
  const auto expected = series::c_alpha_m(q, m, ones);
  const auto ev = run_family(rep, field, groups::GroupSpec::borel(n), m, labels, nodes, expected, opt);

  const auto rec = series::f_nm(n, m, q, series::FMode::Recursive);
  auto bad = series::first_mismatch(rec, expected);
  rep.add("hilbert_recursion", !bad, bad ? json{{"degree", *bad}, {"recursive", series::to_string(rec)}} : json());

  std::vector<std::string> wrong;
  std::set<std::vector<mpoly::Exp>> seen;
  bool distinct = true;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto predicted = basis::smallest_monomial(idx[i], q, m);
    distinct &= seen.insert(predicted.exponents()).second;
    if (!ev.polys[i] || ev.polys[i]->is_zero() || !(mpoly::leading_monomial(*ev.polys[i]) == predicted))
      wrong.push_back(labels[i]);
  }
  rep.add("smallest_monomial", wrong.empty() && distinct,
          json{{"mismatched", label_list(wrong)}, {"distinct", distinct}});

  rep.add("summands", series::summand_decomposition_check(q, m, n));
  rep.flag_count = static_cast<std::int64_t>(series::flag_count(q, m, n));
  rep.add("flags", rep.flag_count == rep.basis_count, json{{"flags", rep.flag_count}, {"basis", rep.basis_count}});
  add_orbit_check(rep, field, groups::GroupSpec::borel(n), m, rep.basis_count, opt);
  rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

VerifyReport verify_gl(const gf::FieldPtr& field, std::uint32_t m, std::size_t n, const Options& opt) {
  const auto t0 = Clock::now();
  const std::uint64_t q = field->q();
  auto rep = make_report(field, m, n, "gl");
  rep.conjecture = true;
  std::vector<std::string> labels;
  std::vector<expr::NodePtr> nodes;
  for (const auto& c : basis::gl_candidate_basis(q, m, n)) {
    labels.push_back(c.label);
    nodes.push_back(c.node);
  }
  const auto expected = series::c_nm_gl(q, m, n);
  run_family(rep, field, groups::GroupSpec::gl(n), m, labels, nodes, expected, opt);
  const auto general = series::c_alpha_m(q, m, {n});
  rep.add("series_forms_agree", general == expected, json{{"c_alpha", series::to_string(general)}});
  add_orbit_check(rep, field, groups::GroupSpec::gl(n), m, expected.value_at_one(), opt);
  rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

VerifyReport verify_parabolic(const gf::FieldPtr& field, std::uint32_t m, const std::vector<std::size_t>& alpha,
                              const Options& opt) {
  const auto t0 = Clock::now();
  const std::uint64_t q = field->q();
  const auto spec = groups::GroupSpec::parabolic(alpha);
  const std::size_t n = spec.n;
  auto rep = make_report(field, m, n, spec.name());
  rep.conjecture = true;
  std::vector<std::string> labels;
  std::vector<expr::NodePtr> nodes;
  for (const auto& c : basis::parabolic_candidate_basis(q, m, alpha)) {
    labels.push_back(c.label);
    nodes.push_back(c.node);
  }
  const auto expected = series::c_alpha_m(q, m, alpha);
  const auto ev = run_family(rep, field, spec, m, labels, nodes, expected, opt);
  add_orbit_check(rep, field, spec, m, expected.value_at_one(), opt);

  if (std::all_of(alpha.begin(), alpha.end(), [](auto a) { return a == 1; })) {
    // Phi acts on syntax, so the polynomials may differ from B_m(n); the two
    // families must still span the same space.
    expr::Evaluator evaluator(field);
    const auto tr = mpoly::make_truncation(field->q(), m);
    std::vector<MPoly> borel;
    for (const auto& y : basis::enumerate_basis(q, m, n))
      borel.push_back(mpoly::truncate(evaluator.eval_poly(basis::y_expr(y)), tr));
    std::vector<MPoly> both = borel;
    for (const auto& f : ev.ok) both.push_back(mpoly::truncate(f, tr));
    const auto rb = groups::rank_of_family(borel).total, ru = groups::rank_of_family(both).total;
    std::set<std::string> a, b;
    for (const auto& f : borel) a.insert(mpoly::to_string(f));
    for (const auto& f : ev.ok) b.insert(mpoly::to_string(mpoly::truncate(f, tr)));
    rep.add("matches_borel_span", rb == borel.size() && ru == rb && ev.ok.size() == borel.size(),
            json{{"borel_rank", rb}, {"union_rank", ru}}, json{{"identical_polynomials", a == b}});
  }
  if (alpha.size() == 1) {
    std::set<std::string> a, b;
    expr::Evaluator evaluator(field);
    for (const auto& c : basis::gl_candidate_basis(q, m, n)) a.insert(mpoly::to_string(evaluator.eval_poly(c.node)));
    for (const auto& f : ev.ok) b.insert(mpoly::to_string(f));
    rep.add("matches_gl", a == b);
  }
  rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Identities

MPoly random_poly(const gf::FieldPtr& field, std::size_t nvars, std::size_t max_terms, std::uint64_t max_deg,
                  std::mt19937_64& rng) {
  const std::uint32_t q = field->q();
  std::uniform_int_distribution<std::uint32_t> coef(1, q - 1);
  if (nvars == 0) return MPoly::constant(field, 0, coef(rng));
  std::uniform_int_distribution<std::size_t> nterms(1, max_terms);
  std::uniform_int_distribution<std::uint64_t> deg(0, max_deg);
  std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
  MPoly out(field, nvars);
  for (std::size_t t = nterms(rng); t-- > 0;) {
    mpoly::Monomial mono(nvars);
    for (std::uint64_t d = deg(rng); d-- > 0;) {
      const std::size_t v = var(rng);
      mono.set(v, mono[v] + 1);
    }
    out += MPoly::monomial(field, mono, coef(rng));
  }
  if (out.is_zero()) out = MPoly::one(field, nvars);
  return out;
}

namespace {

struct Tally {
  std::size_t cases = 0, failed = 0;
  json failures = json::array();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  void fail(json w) {
    ++failed;
    if (failures.size() < 5) failures.push_back(std::move(w));
  }
  bool ok() const { return failures.empty(); }
  void report(VerifyReport& rep, const std::string& name) const {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.add(name, ok(), json{{"failed", failed}, {"examples", failures}}, json{{"cases", cases}, {"seconds", secs}});
  }
};

}  // namespace

VerifyReport verify_identities(const gf::FieldPtr& field, const IdentityOptions& iopt, const Options& opt) {
  const auto t0 = Clock::now();
  const std::uint64_t q = field->q();
  auto rep = make_report(field, 0, 0, "identities");
  std::mt19937_64 rng(opt.seed);
  const auto grid = iopt.grid.empty() ? default_grid_for(q) : iopt.grid;
  using rational::RationalFn;

  {
    // Iterated delta against its subset-sum closed form.
    Tally t;
    for (std::size_t r = 0; r <= 2; ++r) {
      std::vector<MPoly> inputs{MPoly::one(field, r), random_poly(field, r, iopt.max_terms, q, rng)};
      if (r > 0) inputs.push_back(MPoly::variable(field, r, 0).pow(q - 1));
      for (std::size_t h = 1; h <= 2; ++h)
        for (std::uint32_t b = 0; b <= 3; ++b)
          for (const auto& f : inputs) {
            ++t.cases;
            const RationalFn ff(f);
            if (!(inv::delta_iter(r + 1, b, h, ff) == inv::delta_iter_closed(r, b, h, ff)))
              t.fail(json{{"r", r}, {"h", h}, {"b", b}, {"f", mpoly::to_string(f)}});
          }
    }
    t.report(rep, "iterated_delta_closed_form");
  }

  if (iopt.composite) {
    Tally t;
    const std::size_t cap = iopt.composite_max_arity ? iopt.composite_max_arity : (q == 2 ? 5 : 4);
    for (std::size_t r = 1; r <= 2; ++r)
      for (std::size_t s = 1; s <= 2; ++s)
        for (std::size_t h = 0; h <= 2 && s + 1 + h <= cap; ++h)
          for (std::uint32_t b = static_cast<std::uint32_t>(s + 1); b <= s + 1 + (q == 2 ? 1 : 0); ++b) {
            const std::vector<std::pair<MPoly, MPoly>> inputs{
                {MPoly::one(field, s), MPoly::one(field, r)},
                {MPoly::variable(field, s, 0).pow(q - 1), MPoly::variable(field, r, r - 1)},
            };
            for (const auto& [f, g] : inputs) {
              ++t.cases;
              const auto res = inv::composite_delta_check(r, s, 1, h, b, f, g);
              if (!res.equal)
                t.fail(json{{"r", r}, {"s", s}, {"h", h}, {"b", b}, {"f", mpoly::to_string(f)},
                            {"g", mpoly::to_string(g)}});
            }
          }
    t.report(rep, "composite_delta");
  } else {
    rep.skip("composite_delta", "disabled");
  }

  {
    Tally t;
    for (std::size_t s = 0; s <= 2; ++s)
      for (std::size_t k = 0; k < iopt.random_trials; ++k) {
        const MPoly f = random_poly(field, s, iopt.max_terms, q * q, rng);
        const std::uint32_t b = static_cast<std::uint32_t>(s + 1 + k % 2);
        ++t.cases;
        const auto v = inv::delta(s + 2, b, inv::delta(s + 1, b, RationalFn(f)));
        if (!v.is_zero()) t.fail(json{{"s", s}, {"b", b}, {"f", mpoly::to_string(f)}});
      }
    t.report(rep, "delta_square_zero");
  }

  expr::Evaluator evaluator(field);
  {
    // Phi Y at x_1 = 0 is Y^q.
    Tally t;
    for (const auto& [m, n] : grid) {
      if (m == 0 || n < 2) continue;
      for (const auto& y : basis::enumerate_basis(q, m - 1, n - 1)) {
        ++t.cases;
        const MPoly lifted = evaluator.eval_poly(basis::y_expr(basis::phi(y)));
        const MPoly small = evaluator.eval_poly(basis::y_expr(y));
        if (!(mpoly::drop_var(mpoly::set_var_zero(lifted, 0), 0) == mpoly::frobenius(small)))
          t.fail(json{{"m", m}, {"n", n}, {"index", basis::to_string(y)}});
      }
    }
    t.report(rep, "phi_specialization");
  }

  {
    Tally t;
    for (const auto& [m, n] : grid)
      for (const auto& y : basis::enumerate_basis(q, m, n)) {
        ++t.cases;
        const MPoly f = evaluator.eval_poly(basis::y_expr(y));
        if (f.is_zero() || !(mpoly::leading_monomial(f) == basis::smallest_monomial(y, q, m)))
          t.fail(json{{"m", m}, {"n", n}, {"index", basis::to_string(y)}});
      }
    t.report(rep, "smallest_monomial");
  }

  {
    // delta_{s+1}^{n-s} of a Dickson monomial is GL_n-invariant mod I.
    Tally t;
    for (const auto& [m, n] : grid)
      for (std::size_t s = 0; s <= std::min<std::size_t>(m, n); ++s)
        for (const auto& exps : basis::delta_partitions(q, m, s)) {
          std::vector<expr::NodePtr> f{expr::one(s)};
          for (std::size_t i = 1; i <= s; ++i) f.push_back(expr::power(expr::dickson(s, s - i), exps[i - 1]));
          const auto node = expr::delta(s + 1, m, n - s, expr::product(std::move(f)));
          ++t.cases;
          try {
            if (!groups::is_invariant(evaluator.eval_poly(node), field, groups::GroupSpec::gl(n), m))
              t.fail(json{{"m", m}, {"n", n}, {"node", node->key}});
          } catch (const Error& e) {
            t.fail(json{{"m", m}, {"n", n}, {"node", node->key}, {"error", e.what()}});
          }
        }
    t.report(rep, "gl_lift");
  }

  {
    // Lowest x_1 slice of a Borel invariant below the top type is a q-th power.
    Tally t;
    for (const auto& [m, n] : grid) {
      if (m == 0 || n < 2) continue;
      std::map<std::uint64_t, groups::DegreeInvariants> dims;
      try {
        dims = oracle(field, groups::GroupSpec::borel(n), m, opt);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SizeBound) throw;
        continue;
      }
      const std::uint64_t top = inv::qpow(q, m) - 1;
      for (const auto& [d, di] : dims)
        for (const auto& F : di.basis) {
          mpoly::Exp low = ~mpoly::Exp{0};
          for (const auto& [mono, c] : F.terms()) low = std::min(low, mono[0]);
          if (low >= top) continue;
          ++t.cases;
          bool ok = low % (q - 1) == 0;
          for (const auto& [mono, c] : F.terms())
            if (mono[0] == low)
              for (std::size_t v = 1; v < n; ++v) ok &= mono[v] % q == 0;
          if (!ok) t.fail(json{{"m", m}, {"n", n}, {"degree", d}, {"poly", mpoly::to_string(F)}});
        }
    }
    t.report(rep, "lowest_slice_q_power");
  }

  {
    Tally t;
    for (std::size_t s = 1; s <= 3; ++s)
      for (const auto& lam : basis::box_partitions(s, 2)) {
        ++t.cases;
        if (!(inv::schur_s(field, lam, s) == inv::schur_s_inductive(field, lam, s)))
          t.fail(json{{"s", s}, {"lambda", lam}});
      }
    t.report(rep, "schur_inductive");
  }

  rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

VerifyReport verify_dickson(const gf::FieldPtr& field, std::size_t max_k) {
  const auto t0 = Clock::now();
  auto rep = make_report(field, 0, 0, "dickson");
  Tally t;
  for (std::size_t k = 1; k <= max_k; ++k)
    for (std::size_t s = 0; s < k; ++s) {
      ++t.cases;
      const MPoly a = inv::dickson(field, k, s, inv::DicksonRoute::Determinant);
      const MPoly b = inv::dickson(field, k, s, inv::DicksonRoute::Coefficient);
      const MPoly c = inv::dickson(field, k, s, inv::DicksonRoute::Product);
      if (!(a == b && b == c)) t.fail(json{{"k", k}, {"s", s}});
    }
  t.report(rep, "routes_agree");
  if (field->q() == 2 && max_k >= 2) {
    const bool q21 = inv::dickson(field, 2, 1) == mpoly::parse_poly(field, 2, "x1^2 + x1*x2 + x2^2");
    const bool q20 = inv::dickson(field, 2, 0) == mpoly::parse_poly(field, 2, "x1^2*x2 + x1*x2^2");
    rep.add("closed_forms_q2", q21 && q20, json{{"Q21", q21}, {"Q20", q20}});
  }
  rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

VerifyReport verify_nabla_delta(std::uint64_t q, std::uint32_t max_m) {
  const auto t0 = Clock::now();
  VerifyReport rep;
  rep.p = static_cast<std::uint32_t>(q);
  rep.e = 1;
  rep.group = "nabla-delta";
  Tally multisets, series_ok;
  for (std::uint32_t m = 0; m <= max_m; ++m)
    for (std::uint32_t s = 0; s <= std::min<std::uint32_t>(m, 3); ++s) {
      std::vector<std::uint64_t> dn, dd;
      for (const auto& c : basis::nabla(q, m, s)) dn.push_back(basis::nabla_degree(q, c));
      for (const auto& e : basis::delta_partitions(q, m, s)) dd.push_back(basis::dickson_monomial_degree(q, e));
      std::sort(dn.begin(), dn.end());
      std::sort(dd.begin(), dd.end());
      ++multisets.cases;
      if (dn != dd) multisets.fail(json{{"m", m}, {"s", s}});
      ++series_ok.cases;
      const auto h = series::hilbert_of_degrees(dn), b = series::qt_binomial(m, s, q);
      if (!(h == b))
        series_ok.fail(json{{"m", m}, {"s", s}, {"nabla", series::to_string(h)}, {"binomial", series::to_string(b)}});
    }
  multisets.report(rep, "degree_multisets");
  series_ok.report(rep, "hilbert_is_binomial");
  rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Grid

std::vector<std::pair<std::uint32_t, std::size_t>> default_grid_for(std::uint64_t q) {
  std::vector<std::pair<std::uint32_t, std::size_t>> out;
  if (q == 2) {
    for (std::uint32_t m = 0; m <= 3; ++m)
      for (std::size_t n = 1; n <= 3; ++n) out.emplace_back(m, n);
  } else if (q == 3) {
    for (std::uint32_t m = 0; m <= 2; ++m)
      for (std::size_t n = 1; n <= 2; ++n) out.emplace_back(m, n);
  } else if (q == 4) {
    out = {{1, 1}, {1, 2}};
  } else {
    out = {{1, 1}};
  }
  return out;
}

std::vector<GridPoint> default_grid() {
  std::vector<GridPoint> out;
  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
    auto F = gf::field_new(p, e);
    for (auto [m, n] : default_grid_for(F->q())) out.push_back({F, m, n});
  }
  return out;
}

std::vector<std::vector<std::size_t>> compositions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto& self, std::size_t left) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t a = 1; a <= left; ++a) {
      cur.push_back(a);
      self(self, left - a);
      cur.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

std::vector<VerifyReport> run_grid(const std::vector<GridPoint>& points, GroupChoice g, const Options& opt) {
  struct Job {
    GridPoint pt;
    std::vector<std::size_t> alpha;
  };
  std::vector<Job> jobs;
  for (const auto& pt : points) {
    if (g == GroupChoice::Parabolic)
      for (auto& a : compositions(pt.n)) jobs.push_back({pt, a});
    else
      jobs.push_back({pt, {}});
  }
  std::vector<VerifyReport> out(jobs.size());
  Options inner = opt;
  inner.threads = 1;
  parallel_for(jobs.size(), opt.threads, [&](std::size_t i) {
    const auto& j = jobs[i];
    switch (g) {
      case GroupChoice::Borel: out[i] = verify_borel(j.pt.field, j.pt.m, j.pt.n, inner); break;
      case GroupChoice::GL: out[i] = verify_gl(j.pt.field, j.pt.m, j.pt.n, inner); break;
      case GroupChoice::Parabolic: out[i] = verify_parabolic(j.pt.field, j.pt.m, j.alpha, inner); break;
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Output

Format parse_format(std::string_view s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "latex") return Format::Latex;
  throw Error(ErrorCode::ParseError, "unknown format '" + std::string(s) + "'");
}

namespace {

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string latex_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '&' || c == '%' || c == '#') out += '\\';
    if (c == '^') {
      out += "\\^{}";
      continue;
    }
    out += c;
  }
  return out;
}

}  // namespace

std::string format_reports(const std::vector<VerifyReport>& reports, Format f) {
  std::ostringstream os;
  switch (f) {
    case Format::Json: {
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      os << arr.dump(2) << "\n";
      break;
    }
    case Format::Text:
      for (const auto& r : reports) {
        os << (r.passed() ? "[pass] " : "[FAIL] ") << r.case_id();
        if (r.conjecture) os << " (conjecture)";
        os << "  " << r.seconds << "s\n";
        for (const auto& c : r.checks) {
          os << "    " << to_string(c.status) << "  " << c.name;
          if (!c.witness.is_null()) os << "  " << c.witness.dump();
          else if (c.status == Status::Skipped && !c.detail.is_null()) os << "  " << c.detail.dump();
          os << "\n";
        }
        if (r.computed) os << "    series " << series::to_string(*r.computed) << "\n";
        if (r.basis_count >= 0) {
          os << "    counts basis=" << r.basis_count;
          if (r.orbit_count >= 0) os << " orbits=" << r.orbit_count;
          if (r.flag_count >= 0) os << " flags=" << r.flag_count;
          os << "\n";
        }
      }
      break;
    case Format::Csv:
      os << "case,group,check,status,witness\n";
      for (const auto& r : reports)
        for (const auto& c : r.checks)
          os << csv_field(r.case_id()) << "," << csv_field(r.group) << "," << c.name << "," << to_string(c.status) << ","
             << csv_field(c.witness.is_null() ? "" : c.witness.dump()) << "\n";
      break;
    case Format::Latex:
      os << "\\begin{tabular}{llll}\n\\hline\ncase & status & basis & series \\\\\n\\hline\n";
      for (const auto& r : reports)
        os << latex_escape(r.case_id()) << " & " << (r.passed() ? "pass" : "fail") << " & "
           << (r.basis_count >= 0 ? std::to_string(r.basis_count) : "") << " & $"
           << (r.computed ? series::to_string(*r.computed) : "") << "$ \\\\\n";
      os << "\\hline\n\\end{tabular}\n";
      break;
  }
  return os.str();
}

}  // namespace truncinv::harness
