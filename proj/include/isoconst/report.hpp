#pragma once

// JSON, CSV and plain-table renderings of estimates and identity reports.
// Every numeric result is written as {"value": v, "cert": tag}.

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "isoconst/verifier.hpp"

namespace isoconst {

nlohmann::json num_json(double value, Cert cert);
nlohmann::json witness_json(const PairWitness& w);
nlohmann::json query_json(const ConstantQuery& q);
nlohmann::json estimate_json(const Estimate& e);
nlohmann::json identity_json(const IdentityReport& r);

// {"space", "query", "estimate", "identities"}
nlohmann::json constant_report_json(const SpaceSpec& space, const ConstantQuery& q, const Estimate& e,
                                    std::span<const IdentityReport> identities = {});

// Fixed column order of estimate rows.
inline constexpr const char* kEstimateCsvHeader =
    "space,constant,tau,upsilon,t,eps,mode,value,cert,evals,witness_x,witness_y,lambda";
std::string estimate_csv_row(const SpaceSpec& space, const ConstantQuery& q, const Estimate& e);

inline constexpr const char* kIdentityCsvHeader =
    "identity,space,lhs,lhs_cert,rhs,rhs_cert,rhs_hi,rhs_hi_cert,tol,status,notes";
std::string identity_csv_row(const IdentityReport& r);

void write_estimate_table(std::ostream& os, const SpaceSpec& space, const ConstantQuery& q, const Estimate& e);
void write_identity_table(std::ostream& os, std::span<const IdentityReport> reports);

// Shortest round-trip decimal, as used by every renderer.
std::string format_double(double v);

}  // namespace isoconst
