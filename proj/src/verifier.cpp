#include "isoconst/verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "isoconst/error.hpp"

namespace isoconst {

namespace {

constexpr std::array<std::string_view, 15> kIds{"BD-CNJ", "BD-H",   "BD-J",     "BD-LI", "BD-LYJ",
                                                "BD-SAND", "EQ-A2", "EQ-CNJ",  "EQ-EI", "EQ-MOD",
                                                "EQ-SCALE", "EX-C",  "EX-L1",  "HIL-1", "HIL-2"};
constexpr std::array<std::string_view, 7> kCore{"BD-H", "BD-LI", "EQ-A2", "EQ-CNJ", "EQ-EI", "EX-L1", "HIL-1"};

struct TauUpsilon {
  double tau;
  double upsilon;
};
constexpr std::array<TauUpsilon, 3> kPairs{{{1.0, 1.0}, {1.0, 2.0}, {2.0, 1.0}}};
constexpr std::array<double, 4> kSkew{0.0, 0.5, 1.0, 2.0};

// Strictness margin for the non-Hilbert side of the Hilbert characterizations.
constexpr double kHilbertMargin = 1e-2;
constexpr double kHilbertTol = 1e-6;
constexpr double kModulusTol = 5e-3;
constexpr double kExactRel = 1e-12;

double sq(double v) { return v * v; }

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string pair_label(const char* name, double tau, double upsilon) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s tau=%g upsilon=%g", name, tau, upsilon);
  return buf;
}

ConstantQuery query(ConstantId id, EvalMode mode = EvalMode::Substituted) {
  ConstantQuery q;
  q.id = id;
  q.mode = mode;
  return q;
}

ConstantQuery with_pair(ConstantQuery q, const TauUpsilon& p) {
  q.tau = p.tau;
  q.upsilon = p.upsilon;
  return q;
}

ConstantQuery with_t(ConstantQuery q, double t) {
  q.t = t;
  return q;
}

bool is_l1(const SpaceSpec& s) { return s.family == Family::Lp && !s.p.infinite && s.p.value == 1.0; }

Num exact(double v) { return {v, Cert::Exact}; }

// factor * n + offset, keeping the certificate of n.
Num affine(const Num& n, double factor, double offset = 0.0) { return {factor * n.value + offset, n.cert}; }

class Builder {
 public:
  Builder(const SpaceSpec& space, std::string id, EstimateCache& cache) : cache_(cache) {
    r_.identity_id = std::move(id);
    r_.space = space;
    r_.tol = cache.tol().verify_tol;
  }

  Num value(const ConstantQuery& q) {
    const Estimate& e = cache_.get(r_.space, q);
    r_.witnesses.push_back(e.witness);
    return {e.value, e.cert};
  }

  void tol(double t) { r_.tol = t; }

  void equal(std::string label, const Num& lhs, const Num& rhs) {
    r_.details.push_back({std::move(label), lhs, rhs, std::nullopt, std::abs(lhs.value - rhs.value) <= r_.tol});
  }

  void within(std::string label, const Num& v, const Num& lo, const Num& hi) {
    const bool ok = v.value >= lo.value - r_.tol && v.value <= hi.value + r_.tol;
    r_.details.push_back({std::move(label), v, lo, hi, ok});
  }

  void note(const std::string& s) {
    if (!r_.notes.empty()) r_.notes += "; ";
    r_.notes += s;
  }

  // Summary fields come from the worst row (largest violation).
  IdentityReport finish() {
    const auto violation = [](const DetailRow& d) {
      if (d.rhs_hi) return std::max(d.rhs.value - d.lhs.value, d.lhs.value - d.rhs_hi->value);
      return std::abs(d.lhs.value - d.rhs.value);
    };
    bool all = true;
    const DetailRow* worst = nullptr;
    for (const DetailRow& d : r_.details) {
      if (d.informational) continue;
      all = all && d.pass;
      if (!worst || violation(d) > violation(*worst)) worst = &d;
    }
    if (worst) {
      r_.lhs = worst->lhs;
      r_.rhs = worst->rhs;
      r_.rhs_hi = worst->rhs_hi;
    }
    r_.status = all && worst ? Status::Pass : Status::Fail;
    return std::move(r_);
  }

  IdentityReport& raw() { return r_; }
  const ToleranceConfig& tolerances() const { return cache_.tol(); }

 private:
  EstimateCache& cache_;
  IdentityReport r_;
};

void eq_a2(Builder& b) {
  b.equal("H_tilde direct vs A2", b.value(query(ConstantId::HTilde, EvalMode::Direct)),
          b.value(query(ConstantId::A2)));
}

void eq_cnj(Builder& b) {
  b.equal("H_tilde_sq direct vs C_NJ_prime", b.value(query(ConstantId::HTildeSq, EvalMode::Direct)),
          b.value(query(ConstantId::CNJPrime)));
}

void eq_ei(Builder& b) {
  for (double t : kSkew) {
    b.equal(fmt("E_I direct vs E t=%g", t), b.value(with_t(query(ConstantId::EI, EvalMode::Direct), t)),
            b.value(with_t(query(ConstantId::E), t)));
  }
}

void eq_scale(Builder& b) {
  double printed_gap = 0.0;
  bool printed_holds = true;
  for (const TauUpsilon& p : kPairs) {
    const Num li = b.value(with_pair(query(ConstantId::LYJI, EvalMode::Direct), p));
    const Num lp = b.value(with_pair(query(ConstantId::LYJPrime), p));
    const double s2 = sq(p.tau) + sq(p.upsilon);
    b.equal(pair_label("L_YJ_I vs 2(tau^2+upsilon^2)/upsilon^2 L_YJ_prime", p.tau, p.upsilon), li,
            affine(lp, 2.0 * s2 / sq(p.upsilon)));
    // Printed variant L_YJ_prime = tau^2/(2(tau^2+upsilon^2)) L_YJ_I, recorded only.
    const Num printed = affine(li, sq(p.tau) / (2.0 * s2));
    const double gap = std::abs(lp.value - printed.value);
    printed_gap = std::max(printed_gap, gap);
    printed_holds = printed_holds && gap <= b.raw().tol;
    b.raw().details.push_back({pair_label("printed: L_YJ_prime vs tau^2/(2(tau^2+upsilon^2)) L_YJ_I", p.tau,
                                          p.upsilon),
                               lp, printed, std::nullopt, gap <= b.raw().tol, true});
  }
  b.note("upsilon^2 factor decides the status");
  b.note(std::string("printed tau^2 factor ") + (printed_holds ? "holds" : "fails") +
         fmt(", max gap %.6g", printed_gap));
}

void eq_mod(Builder& b) {
  b.tol(std::max(b.raw().tol, kModulusTol));
  b.equal("A2_via_modulus vs A2", b.value(query(ConstantId::A2ViaModulus)), b.value(query(ConstantId::A2)));
}

void bd_h(Builder& b) {
  const Num ht = b.value(query(ConstantId::HTilde));
  b.within("H_tilde", ht, exact(std::numbers::sqrt2), exact(2.0));
  const Num h = b.value(query(ConstantId::H));
  b.note(fmt("H = %.9g", h.value) + fmt(", H_tilde = %.9g", ht.value) +
         fmt(", H - H_tilde = %.3g", h.value - ht.value));
}

void bd_li(Builder& b) {
  for (const TauUpsilon& p : kPairs) {
    const double u2 = sq(p.upsilon);
    b.within(pair_label("L_YJ_I", p.tau, p.upsilon), b.value(with_pair(query(ConstantId::LYJI), p)),
             exact(2.0 * (sq(p.tau) + u2) / u2), exact(2.0 * sq(p.tau + p.upsilon) / u2));
  }
}

void bd_sand(Builder& b) {
  const Num cp = b.value(query(ConstantId::CNJPrime));
  const Num cnj = b.value(query(ConstantId::CNJ));
  for (const TauUpsilon& p : kPairs) {
    const double u2 = sq(p.upsilon);
    const Num lo = affine(cp, 4.0 * sq(std::min(p.tau, p.upsilon)) / u2);
    const Num hi = affine(cnj, 8.0 * sq(p.tau) / u2, 4.0 * sq(p.tau - p.upsilon) / u2);
    b.within(pair_label("L_YJ_I sandwich", p.tau, p.upsilon), b.value(with_pair(query(ConstantId::LYJI), p)), lo,
             hi);
  }
}

void bd_j(Builder& b) {
  const Num j = b.value(query(ConstantId::J));
  b.within("H_tilde_sq in [J^2/2, J]", b.value(query(ConstantId::HTildeSq)), {sq(j.value) / 2.0, j.cert}, j);
}

void bd_cnj(Builder& b) {
  const Num hsq = b.value(query(ConstantId::HTildeSq));
  b.within("H_tilde_sq <= C_NJ", hsq, exact(1.0), b.value(query(ConstantId::CNJ)));
  const double ci = b.value(query(ConstantId::CNJI)).value;
  const char* order = std::abs(hsq.value - ci) <= b.raw().tol ? "H_tilde_sq ~ C_NJ_I"
                      : hsq.value < ci                          ? "H_tilde_sq < C_NJ_I"
                                                                : "H_tilde_sq > C_NJ_I";
  b.note(fmt("C_NJ_I = %.9g", ci) + ", " + order);
  b.note(fmt("infimum form 1/C_NJ_I = %.9g", 1.0 / ci) +
         fmt(", gap to 1/H_tilde_sq = %.3g", 1.0 / hsq.value - 1.0 / ci));
}

void bd_lyj(Builder& b) {
  for (const TauUpsilon& p : kPairs) {
    b.within(pair_label("L_YJ_prime", p.tau, p.upsilon), b.value(with_pair(query(ConstantId::LYJPrime), p)),
             exact(1.0), exact(1.0 + 2.0 * p.tau * p.upsilon / (sq(p.tau) + sq(p.upsilon))));
  }
}

// Equality on Hilbert spaces, strict excess elsewhere.
void hilbert_check(Builder& b, const std::string& label, const Num& v, double ref) {
  if (is_hilbert(b.raw().space)) {
    b.tol(kHilbertTol);
    b.equal(label + " (Hilbert)", v, exact(ref));
  } else {
    b.tol(kHilbertMargin);
    b.raw().details.push_back({label + " exceeds Hilbert value by margin", v, exact(ref), std::nullopt,
                               v.value > ref + kHilbertMargin});
  }
}

void hil_1(Builder& b) {
  hilbert_check(b, "H_tilde_sq direct", b.value(query(ConstantId::HTildeSq, EvalMode::Direct)), 1.0);
}

void hil_2(Builder& b) {
  const TauUpsilon p{1.0, 2.0};
  hilbert_check(b, "L_YJ_I direct tau=1 upsilon=2", b.value(with_pair(query(ConstantId::LYJI, EvalMode::Direct), p)),
                2.0 * (sq(p.tau) + sq(p.upsilon)) / sq(p.upsilon));
}

void ex_l1(Builder& b) {
  for (const TauUpsilon& p : kPairs) {
    b.equal(pair_label("L_YJ_I", p.tau, p.upsilon), b.value(with_pair(query(ConstantId::LYJI), p)),
            exact(2.0 * sq(p.tau + p.upsilon) / sq(p.upsilon)));
  }
}

void ex_c(Builder& b) {
  const SpaceSpec& s = b.raw().space;
  const double a = s.alpha, be = s.beta;
  const Vector phi1 = sample_function(s, [&](double r) { return (r - be) / (a - be); });
  const Vector phi2 = sample_function(s, [&](double r) { return 1.0 - (r - be) / (a - be); });
  b.raw().witnesses.push_back({phi1, phi2, std::nullopt});
  double tol = 0.0;
  for (const TauUpsilon& p : kPairs) tol = std::max(tol, kExactRel * 2.0 * sq(p.tau + p.upsilon) / sq(p.upsilon));
  b.tol(tol);
  for (const TauUpsilon& p : kPairs) {
    const double rhs = 2.0 * sq(p.tau + p.upsilon) / sq(p.upsilon);
    const double lhs = evaluate_objective(s, with_pair(query(ConstantId::LYJI, EvalMode::Direct), p), phi1, phi2,
                                          b.tolerances());
    b.raw().details.push_back({pair_label("witness ratio", p.tau, p.upsilon), exact(lhs), exact(rhs), std::nullopt,
                               std::abs(lhs - rhs) <= kExactRel * rhs});
  }
}

using Recipe = void (*)(Builder&);

Recipe recipe(std::string_view id) {
  static const std::array<std::pair<std::string_view, Recipe>, 15> table{{{"BD-CNJ", bd_cnj},
                                                                          {"BD-H", bd_h},
                                                                          {"BD-J", bd_j},
                                                                          {"BD-LI", bd_li},
                                                                          {"BD-LYJ", bd_lyj},
                                                                          {"BD-SAND", bd_sand},
                                                                          {"EQ-A2", eq_a2},
                                                                          {"EQ-CNJ", eq_cnj},
                                                                          {"EQ-EI", eq_ei},
                                                                          {"EQ-MOD", eq_mod},
                                                                          {"EQ-SCALE", eq_scale},
                                                                          {"EX-C", ex_c},
                                                                          {"EX-L1", ex_l1},
                                                                          {"HIL-1", hil_1},
                                                                          {"HIL-2", hil_2}}};
  for (const auto& [name, fn] : table) {
    if (name == id) return fn;
  }
  return nullptr;
}

std::string query_key(const SpaceSpec& space, const ConstantQuery& q) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "|%d|%d|%.17g|%.17g|%.17g|%.17g", static_cast<int>(q.id), static_cast<int>(q.mode),
                q.tau, q.upsilon, q.t, q.eps);
  return to_json_text(space) + buf;
}

}  // namespace

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

const Estimate& EstimateCache::get(const SpaceSpec& space, const ConstantQuery& q) {
  const std::string key = query_key(space, q);
  auto it = memo_.find(key);
  if (it == memo_.end()) it = memo_.emplace(key, estimate_constant(space, q, cfg_, tol_)).first;
  return it->second;
}

std::span<const std::string_view> identity_ids() { return kIds; }
std::span<const std::string_view> core_identity_ids() { return kCore; }

bool identity_applicable(const SpaceSpec& space, std::string_view identity_id) {
  if (identity_id == "EQ-MOD") return space.dim == 2;
  if (identity_id == "EX-L1") return is_l1(space);
  if (identity_id == "EX-C") return space.family == Family::DiscretizedSup;
  return true;
}

IdentityReport check_identity(const SpaceSpec& space, std::string_view identity_id, EstimateCache& cache) {
  const Recipe fn = recipe(identity_id);
  if (!fn) throw CatalogError("unknown identity " + std::string(identity_id));
  if (!identity_applicable(space, identity_id)) {
    throw CatalogError(std::string(identity_id) + " does not apply to " + label(space));
  }
  Builder b(space, std::string(identity_id), cache);
  try {
    fn(b);
  } catch (const DegenerateObjective& e) {
    IdentityReport& r = b.raw();
    r.status = Status::Inconclusive;
    r.notes = std::string("degenerate objective: ") + e.what();
    return std::move(r);
  }
  return b.finish();
}

IdentityReport check_identity(const SpaceSpec& space, std::string_view identity_id, const OptConfig& cfg,
                              const ToleranceConfig& tol) {
  cfg.validate();
  tol.validate();
  EstimateCache cache(cfg, tol);
  return check_identity(space, identity_id, cache);
}

std::vector<IdentityReport> run_suite(std::span<const SpaceSpec> spaces, std::string_view suite, const OptConfig& cfg,
                                      const ToleranceConfig& tol) {
  if (spaces.empty()) throw ContractViolation("run_suite needs at least one space");
  std::span<const std::string_view> ids;
  if (suite == "core") {
    ids = kCore;
  } else if (suite == "full") {
    ids = kIds;
  } else {
    throw CatalogError("unknown suite " + std::string(suite));
  }
  cfg.validate();
  tol.validate();
  EstimateCache cache(cfg, tol);
  std::vector<IdentityReport> out;
  for (const SpaceSpec& space : spaces) {
    for (std::string_view id : ids) {
      if (!identity_applicable(space, id)) continue;
      try {
        out.push_back(check_identity(space, id, cache));
      } catch (const Error& e) {
        IdentityReport r;
        r.identity_id = std::string(id);
        r.space = space;
        r.tol = tol.verify_tol;
        r.status = Status::Fail;
        r.notes = std::string("error: ") + e.what();
        out.push_back(std::move(r));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const IdentityReport& a, const IdentityReport& b) {
    if (a.identity_id != b.identity_id) return a.identity_id < b.identity_id;
    return label(a.space) < label(b.space);
  });
  return out;
}

}  // namespace isoconst
