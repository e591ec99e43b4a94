#pragma once

// Verification pipelines: evaluate a candidate family, test invariance,
// independence and spanning against the oracle, compare Hilbert series and
// counts, and collect the outcome as a report.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "truncinv/cache.hpp"
#include "truncinv/groups.hpp"
#include "truncinv/series.hpp"

namespace truncinv::harness {

enum class Status { Pass, Fail, Skipped };
std::string_view to_string(Status s);

struct Check {
  std::string name;
  Status status = Status::Skipped;
  nlohmann::json witness;  // null on pass
  nlohmann::json detail;   // case counts and similar
};

struct VerifyReport {
  std::uint32_t p = 0, e = 0, m = 0;
  std::size_t n = 0;
  std::string group;       // "borel", "gl", "parabolic(1,2)", "identities"
  bool conjecture = false; // GL and parabolic checks only report status
  std::vector<Check> checks;
  std::optional<series::TSeries> expected, computed;
  std::int64_t basis_count = -1, orbit_count = -1, flag_count = -1;
  double seconds = 0;

  bool passed() const;
  std::string case_id() const;
  void add(std::string name, bool ok, nlohmann::json witness = nullptr, nlohmann::json detail = nullptr);
  void skip(std::string name, std::string why);
  const Check* find(std::string_view name) const;
};

nlohmann::json to_json(const VerifyReport& r);

struct Options {
  unsigned threads = 1;
  std::uint64_t max_cells = 50'000'000;
  std::uint64_t orbit_limit = 1'000'000;
  const ResultCache* cache = nullptr;
  std::uint64_t seed = 0;
};

/// The oracle, read from or written to opt.cache per degree when present.
std::map<std::uint64_t, groups::DegreeInvariants> oracle(const gf::FieldPtr& field, const groups::GroupSpec& spec,
                                                         std::uint32_t m, const Options& opt);

VerifyReport verify_borel(const gf::FieldPtr& field, std::uint32_t m, std::size_t n, const Options& opt = {});
VerifyReport verify_gl(const gf::FieldPtr& field, std::uint32_t m, std::size_t n, const Options& opt = {});
VerifyReport verify_parabolic(const gf::FieldPtr& field, std::uint32_t m, const std::vector<std::size_t>& alpha,
                              const Options& opt = {});

struct IdentityOptions {
  std::size_t random_trials = 10;
  std::size_t max_terms = 8;
  /// (m, n) points for the grid-wide checks; empty means the default grid for q.
  std::vector<std::pair<std::uint32_t, std::size_t>> grid;
  bool composite = true;  // the composite-delta grid is the slowest part
  /// Largest output arity s + 1 + h in the composite grid; 0 means 5 for q = 2 and 4 otherwise.
  std::size_t composite_max_arity = 0;
};

VerifyReport verify_identities(const gf::FieldPtr& field, const IdentityOptions& iopt = {}, const Options& opt = {});

/// Dickson constructions agree and match the q=2 closed forms.
VerifyReport verify_dickson(const gf::FieldPtr& field, std::size_t max_k = 3);
/// Degree multisets of nabla and Delta agree and give [m; s]_{q,t}.
VerifyReport verify_nabla_delta(std::uint64_t q, std::uint32_t max_m = 3);

struct GridPoint {
  gf::FieldPtr field;
  std::uint32_t m = 0;
  std::size_t n = 1;
};
/// q=2: m 0..3, n 1..3; q=3: m 0..2, n 1..2; q=4: (1,1), (1,2).
std::vector<GridPoint> default_grid();
std::vector<std::pair<std::uint32_t, std::size_t>> default_grid_for(std::uint64_t q);
/// All compositions of n.
std::vector<std::vector<std::size_t>> compositions(std::size_t n);

enum class GroupChoice { Borel, GL, Parabolic };
/// Verifies each point in a worker pool; for Parabolic every composition of n.
std::vector<VerifyReport> run_grid(const std::vector<GridPoint>& points, GroupChoice g, const Options& opt);

/// Random polynomial with at most max_terms terms of degree at most max_deg.
mpoly::MPoly random_poly(const gf::FieldPtr& field, std::size_t nvars, std::size_t max_terms, std::uint64_t max_deg,
                         std::mt19937_64& rng);

enum class Format { Text, Json, Csv, Latex };
Format parse_format(std::string_view s);
std::string format_reports(const std::vector<VerifyReport>& reports, Format f);

}  // namespace truncinv::harness
