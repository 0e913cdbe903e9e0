#include "isoconst/report.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "isoconst/serialize.hpp"

namespace isoconst {

using nlohmann::json;

namespace {

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string csv_vector(const Vector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += ';';
    out += format_double(v[i]);
  }
  return out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string param_text(const ConstantQuery& q) {
  std::string out;
  const auto add = [&](const char* k, double v) {
    out += out.empty() ? "" : ", ";
    out += k;
    out += '=';
    out += format_double(v);
  };
  if (uses_tau_upsilon(q.id)) {
    add("tau", q.tau);
    add("upsilon", q.upsilon);
  }
  if (uses_t(q.id)) add("t", q.t);
  if (uses_eps(q.id)) add("eps", q.eps);
  out += out.empty() ? "" : ", ";
  out += mode_name(q.mode);
  return out;
}

std::string vector_text(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += ", ";
    if (i == 8 && v.dim() > 10) {
      out += "... " + std::to_string(v.dim() - 8) + " more";
      break;
    }
    out += format_double(v[i]);
  }
  return out + ")";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json num_json(double value, Cert cert) { return {{"value", number(value)}, {"cert", std::string(cert_name(cert))}}; }

json witness_json(const PairWitness& w) {
  json doc{{"x", vector_to_json(w.x)}, {"y", vector_to_json(w.y)}};
  doc["meta"] = w.meta ? number(*w.meta) : json(nullptr);
  return doc;
}

json query_json(const ConstantQuery& q) {
  json doc{{"id", std::string(constant_id_name(q.id))}, {"mode", std::string(mode_name(q.mode))}};
  if (uses_tau_upsilon(q.id)) {
    doc["tau"] = q.tau;
    doc["upsilon"] = q.upsilon;
  }
  if (uses_t(q.id)) doc["t"] = q.t;
  if (uses_eps(q.id)) doc["eps"] = q.eps;
  return doc;
}

json estimate_json(const Estimate& e) {
  json doc{{"value", num_json(e.value, e.cert)},
           {"witness", witness_json(e.witness)},
           {"cert", std::string(cert_name(e.cert))},
           {"evals", e.evals}};
  if (e.bound_window) doc["bound_window"] = num_json(*e.bound_window, e.cert);
  return doc;
}

json identity_json(const IdentityReport& r) {
  json details = json::array();
  for (const DetailRow& d : r.details) {
    json row{{"label", d.label}, {"lhs", num_json(d.lhs.value, d.lhs.cert)},
             {"rhs", num_json(d.rhs.value, d.rhs.cert)}, {"pass", d.pass}};
    if (d.rhs_hi) row["rhs_hi"] = num_json(d.rhs_hi->value, d.rhs_hi->cert);
    if (d.informational) row["informational"] = true;
    details.push_back(std::move(row));
  }
  json witnesses = json::array();
  for (const PairWitness& w : r.witnesses) witnesses.push_back(witness_json(w));
  json doc{{"identity_id", r.identity_id},
           {"space", space_to_json(r.space)},
           {"lhs", num_json(r.lhs.value, r.lhs.cert)},
           {"rhs", num_json(r.rhs.value, r.rhs.cert)},
           {"tol", r.tol},
           {"status", std::string(status_name(r.status))},
           {"witnesses", std::move(witnesses)},
           {"details", std::move(details)},
           {"notes", r.notes}};
  if (r.rhs_hi) doc["rhs_hi"] = num_json(r.rhs_hi->value, r.rhs_hi->cert);
  return doc;
}

json constant_report_json(const SpaceSpec& space, const ConstantQuery& q, const Estimate& e,
                          std::span<const IdentityReport> identities) {
  json ids = json::array();
  for (const IdentityReport& r : identities) ids.push_back(identity_json(r));
  return {{"space", space_to_json(space)}, {"query", query_json(q)}, {"estimate", estimate_json(e)},
          {"identities", std::move(ids)}};
}

std::string estimate_csv_row(const SpaceSpec& space, const ConstantQuery& q, const Estimate& e) {
  const auto opt = [](bool used, double v) { return used ? format_double(v) : std::string(); };
  std::ostringstream os;
  os << csv_quote(label(space)) << ',' << constant_id_name(q.id) << ',' << opt(uses_tau_upsilon(q.id), q.tau) << ','
     << opt(uses_tau_upsilon(q.id), q.upsilon) << ',' << opt(uses_t(q.id), q.t) << ','
     << opt(uses_eps(q.id), q.eps) << ',' << mode_name(q.mode) << ',' << format_double(e.value) << ','
     << cert_name(e.cert) << ',' << e.evals << ',' << csv_vector(e.witness.x) << ',' << csv_vector(e.witness.y)
     << ',' << (e.witness.meta ? format_double(*e.witness.meta) : std::string());
  return os.str();
}

std::string identity_csv_row(const IdentityReport& r) {
  std::ostringstream os;
  os << r.identity_id << ',' << csv_quote(label(r.space)) << ',' << format_double(r.lhs.value) << ','
     << cert_name(r.lhs.cert) << ',' << format_double(r.rhs.value) << ',' << cert_name(r.rhs.cert) << ','
     << (r.rhs_hi ? format_double(r.rhs_hi->value) : std::string()) << ','
     << (r.rhs_hi ? std::string(cert_name(r.rhs_hi->cert)) : std::string()) << ',' << format_double(r.tol) << ','
     << status_name(r.status) << ',' << csv_quote(r.notes);
  return os.str();
}

void write_estimate_table(std::ostream& os, const SpaceSpec& space, const ConstantQuery& q, const Estimate& e) {
  os << "space     " << label(space) << '\n'
     << "constant  " << constant_id_name(q.id) << " (" << param_text(q) << ")\n"
     << "value     " << std::setprecision(12) << e.value << "  [" << cert_name(e.cert) << "]\n"
     << "witness   x=" << vector_text(e.witness.x) << " y=" << vector_text(e.witness.y);
  if (e.witness.meta) os << " meta=" << format_double(*e.witness.meta);
  os << '\n' << "evals     " << e.evals << '\n';
  if (e.bound_window) os << "window    " << format_double(*e.bound_window) << '\n';
}

void write_identity_table(std::ostream& os, std::span<const IdentityReport> reports) {
  std::size_t wid = 8, wsp = 5;
  for (const IdentityReport& r : reports) {
    wid = std::max(wid, r.identity_id.size());
    wsp = std::max(wsp, label(r.space).size());
  }
  const auto cell = [&](const std::string& s, std::size_t w) { os << std::left << std::setw(static_cast<int>(w + 2)) << s; };
  const auto num = [](double v) {
    std::ostringstream s;
    s << std::setprecision(10) << v;
    return s.str();
  };
  cell("identity", wid);
  cell("space", wsp);
  cell("lhs", 16);
  cell("rhs", 28);
  cell("tol", 8);
  os << "status\n";
  for (const IdentityReport& r : reports) {
    cell(r.identity_id, wid);
    cell(label(r.space), wsp);
    cell(num(r.lhs.value), 16);
    cell(r.rhs_hi ? "[" + num(r.rhs.value) + ", " + num(r.rhs_hi->value) + "]" : num(r.rhs.value), 28);
    cell(num(r.tol), 8);
    os << status_name(r.status) << '\n';
  }
  for (const IdentityReport& r : reports) {
    if (!r.notes.empty()) os << "  " << r.identity_id << " " << label(r.space) << ": " << r.notes << '\n';
  }
}

}  // namespace isoconst
