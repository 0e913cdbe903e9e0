#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isoconst/constants.hpp"

namespace isoconst {

enum class Status { Pass, Fail, Inconclusive };

std::string_view status_name(Status s);

// A reported number and the certificate of the estimate it came from.
struct Num {
  double value = 0.0;
  Cert cert = Cert::Exact;
};

// One sub-check of an identity (a parameter instance or a bound side).
struct DetailRow {
  std::string label;
  Num lhs;
  Num rhs;
  std::optional<Num> rhs_hi;  // set for two-sided bounds
  bool pass = false;
  bool informational = false;  // reported but not part of the status
};

struct IdentityReport {
  std::string identity_id;
  SpaceSpec space;
  Num lhs;
  Num rhs;
  std::optional<Num> rhs_hi;  // bounds: rhs is the lower end, rhs_hi the upper
  double tol = 0.0;
  Status status = Status::Fail;
  std::vector<PairWitness> witnesses;
  std::vector<DetailRow> details;
  std::string notes;
};

// Estimates memoized per (space, query) within one verification session.
class EstimateCache {
 public:
  EstimateCache(OptConfig cfg, ToleranceConfig tol) : cfg_(cfg), tol_(tol) {}

  const Estimate& get(const SpaceSpec& space, const ConstantQuery& q);
  const OptConfig& cfg() const { return cfg_; }
  const ToleranceConfig& tol() const { return tol_; }

 private:
  OptConfig cfg_;
  ToleranceConfig tol_;
  std::map<std::string, Estimate> memo_;
};

std::span<const std::string_view> identity_ids();
std::span<const std::string_view> core_identity_ids();

// False for identities tied to a space type (EQ-MOD: 2-D; EX-L1: l1;
// EX-C: discretized sup).
bool identity_applicable(const SpaceSpec& space, std::string_view identity_id);

// Throws CatalogError for unknown or inapplicable ids.
IdentityReport check_identity(const SpaceSpec& space, std::string_view identity_id, const OptConfig& cfg = {},
                              const ToleranceConfig& tol = {});
IdentityReport check_identity(const SpaceSpec& space, std::string_view identity_id, EstimateCache& cache);

// suite is "core" or "full". Inapplicable (identity, space) combinations are
// skipped. Reports are sorted by identity id, then by space label.
std::vector<IdentityReport> run_suite(std::span<const SpaceSpec> spaces, std::string_view suite,
                                      const OptConfig& cfg = {}, const ToleranceConfig& tol = {});

}  // namespace isoconst
