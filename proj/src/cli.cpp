#include "isoconst/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "isoconst/corpus.hpp"
#include "isoconst/error.hpp"
#include "isoconst/report.hpp"
#include "isoconst/serialize.hpp"

namespace isoconst {

namespace {

using nlohmann::json;

struct Common {
  int restarts = OptConfig{}.restarts;
  std::uint64_t seed = 0;
  double tol = ToleranceConfig{}.verify_tol;
  int resolution = OptConfig{}.direct_resolution;
  std::string format = "table";
  std::string out_path;

  OptConfig cfg() const {
    OptConfig c;
    c.restarts = restarts;
    c.seed = seed;
    c.direct_resolution = resolution;
    c.validate();
    return c;
  }

  ToleranceConfig tolerances() const {
    ToleranceConfig t;
    t.verify_tol = tol;
    t.validate();
    return t;
  }
};

struct Params {
  std::string name;
  double tau = 1.0;
  double upsilon = 1.0;
  double t = 1.0;
  double eps = 1.0;
  std::string mode = "substituted";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--restarts", c.restarts, "optimizer restarts")->capture_default_str();
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--tol", c.tol, "verification tolerance")->capture_default_str();
  sub->add_option("--resolution", c.resolution, "2-D grid resolution for direct mode (multiple of 8)")
      ->capture_default_str();
  sub->add_option("--format", c.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  sub->add_option("--out", c.out_path, "write the result to this file instead of stdout");
}

void add_params(CLI::App* sub, Params& p) {
  sub->add_option("--tau", p.tau, "tau > 0")->capture_default_str();
  sub->add_option("--upsilon", p.upsilon, "upsilon > 0")->capture_default_str();
  sub->add_option("--t", p.t, "skew parameter t >= 0")->capture_default_str();
  sub->add_option("--eps", p.eps, "modulus argument in [0, 2]")->capture_default_str();
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  const auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

SpaceSpec resolve_token(const std::string& token);

std::vector<SpaceSpec> spaces_from_json(const json& doc) {
  std::vector<SpaceSpec> out;
  if (doc.is_object()) {
    out.push_back(space_from_json(doc));
  } else if (doc.is_array()) {
    for (const json& item : doc) {
      if (item.is_string()) {
        out.push_back(resolve_token(item.get<std::string>()));
      } else {
        out.push_back(space_from_json(item));
      }
    }
  } else {
    throw ParseError("a space list must be a JSON object or array", 0);
  }
  return out;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
}

std::optional<std::string> read_file(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON, lp:<p>:<dim>, a corpus name, or a JSON file.
std::vector<SpaceSpec> load_spaces(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw ParseError("empty space argument", 0);
  if (text.front() == '{' || text.front() == '[') return spaces_from_json(parse_json_text(text));
  if (auto content = read_file(text)) return spaces_from_json(parse_json_text(*content));
  std::vector<SpaceSpec> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(resolve_token(trim(token)));
  return out;
}

SpaceSpec resolve_token(const std::string& token) {
  if (token.rfind("lp:", 0) == 0) return parse_space_shorthand(token);
  if (auto s = named_space(token)) return *s;
  if (token.size() && token.front() == '{') return parse_space_spec(token);
  throw ParseError("unknown space '" + token + "' (expected JSON, lp:<p>:<dim>, a corpus name or a file)", 0);
}

SpaceSpec load_one_space(const std::string& text) {
  auto spaces = load_spaces(text);
  if (spaces.size() != 1) throw ParseError("expected exactly one space", 0);
  return spaces.front();
}

ConstantQuery build_query(ConstantId id, const Params& p) {
  ConstantQuery q;
  q.id = id;
  q.tau = p.tau;
  q.upsilon = p.upsilon;
  q.t = p.t;
  q.eps = p.eps;
  const auto mode = parse_mode(p.mode);
  if (!mode) throw DomainError("mode must be substituted or direct");
  q.mode = *mode;
  q.validate();
  return q;
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ContractViolation("cannot open output file " + path);
    }
    os_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& os() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

int cmd_constant(const std::string& space_text, const Params& p, const Common& c, std::ostream& out) {
  const SpaceSpec space = load_one_space(space_text);
  const auto id = parse_constant_id(p.name);
  if (!id) throw DomainError("unknown constant '" + p.name + "' (see list-constants)");
  const ConstantQuery q = build_query(*id, p);
  const Estimate e = estimate_constant(space, q, c.cfg(), c.tolerances());
  Sink sink(c.out_path, out);
  if (c.format == "json") {
    sink.os() << constant_report_json(space, q, e).dump(2) << '\n';
  } else if (c.format == "csv") {
    sink.os() << kEstimateCsvHeader << '\n' << estimate_csv_row(space, q, e) << '\n';
  } else {
    write_estimate_table(sink.os(), space, q, e);
  }
  return kExitOk;
}

json summary_json(std::span<const IdentityReport> reports) {
  int pass = 0, fail = 0, inconclusive = 0;
  for (const IdentityReport& r : reports) {
    (r.status == Status::Pass ? pass : r.status == Status::Fail ? fail : inconclusive)++;
  }
  return {{"pass", pass}, {"fail", fail}, {"inconclusive", inconclusive}};
}

json run_json(const std::string& suite, const Common& c) {
  return {{"suite", suite}, {"seed", c.seed}, {"restarts", c.restarts}, {"verify_tol", c.tol},
          {"resolution", c.resolution}};
}

void write_identities(std::ostream& os, std::span<const IdentityReport> reports, const std::string& format) {
  if (format == "csv") {
    os << kIdentityCsvHeader << '\n';
    for (const IdentityReport& r : reports) os << identity_csv_row(r) << '\n';
  } else {
    write_identity_table(os, reports);
  }
}

int cmd_verify(const std::string& spaces_text, const std::string& suite, const Common& c, std::ostream& out) {
  const std::vector<SpaceSpec> spaces = spaces_text.empty() ? default_verify_corpus() : load_spaces(spaces_text);
  const auto reports = run_suite(spaces, suite, c.cfg(), c.tolerances());
  Sink sink(c.out_path, out);
  if (c.format == "json") {
    json doc = run_json(suite, c);
    json ids = json::array();
    for (const IdentityReport& r : reports) ids.push_back(identity_json(r));
    doc["identities"] = std::move(ids);
    doc["summary"] = summary_json(reports);
    sink.os() << doc.dump(2) << '\n';
  } else {
    write_identities(sink.os(), reports, c.format);
  }
  for (const IdentityReport& r : reports) {
    if (r.status == Status::Fail) return kExitIdentityFailed;
  }
  return kExitOk;
}

int cmd_report(const std::string& spaces_text, const std::string& suite, const Params& p, const Common& c,
               std::ostream& out) {
  const std::vector<SpaceSpec> spaces = spaces_text.empty() ? default_verify_corpus() : load_spaces(spaces_text);
  const OptConfig cfg = c.cfg();
  const ToleranceConfig tol = c.tolerances();
  json doc = run_json(suite, c);
  json reports = json::array();
  std::ostringstream table, csv;
  csv << kEstimateCsvHeader << '\n';
  for (const SpaceSpec& space : spaces) {
    json constants = json::array();
    for (ConstantId id : all_constant_ids()) {
      // The modulus route scans 64 moduli; each one is a full search off the plane.
      if (id == ConstantId::A2ViaModulus && space.dim != 2) continue;
      Params pp = p;
      pp.mode = "substituted";
      const ConstantQuery q = build_query(id, pp);
      const Estimate e = estimate_constant(space, q, cfg, tol);
      constants.push_back({{"query", query_json(q)}, {"estimate", estimate_json(e)}});
      csv << estimate_csv_row(space, q, e) << '\n';
      table << std::left << std::setw(18) << constant_id_name(id) << std::setprecision(12) << e.value << "  ["
            << cert_name(e.cert) << "]\n";
    }
    const SpaceSpec one[] = {space};
    const auto ids = run_suite(one, suite, cfg, tol);
    json idj = json::array();
    for (const IdentityReport& r : ids) idj.push_back(identity_json(r));
    reports.push_back({{"space", space_to_json(space)}, {"constants", std::move(constants)}, {"identities", idj}});
    if (c.format == "table") {
      table << '\n';
      write_identity_table(table, ids);
      table << '\n';
    }
  }
  Sink sink(c.out_path, out);
  if (c.format == "json") {
    doc["reports"] = std::move(reports);
    sink.os() << doc.dump(2) << '\n';
  } else if (c.format == "csv") {
    sink.os() << csv.str();
  } else {
    sink.os() << table.str();
  }
  return kExitOk;
}

int cmd_list_spaces(const std::string& format, std::ostream& out) {
  if (format == "json") {
    json doc = json::array();
    for (std::string_view id : named_space_ids()) {
      doc.push_back({{"id", std::string(id)}, {"space", space_to_json(*named_space(id))}});
    }
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  for (std::string_view id : named_space_ids()) {
    const SpaceSpec s = *named_space(id);
    out << std::left << std::setw(12) << id << std::setw(16) << family_name(s.family) << "dim=" << s.dim << "  "
        << label(s) << '\n';
  }
  return kExitOk;
}

std::string alias(std::string_view id) {
  std::string out;
  for (char c : id) out.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

int cmd_list_constants(const std::string& format, std::ostream& out) {
  const auto params = [](ConstantId id) {
    std::string s;
    if (uses_tau_upsilon(id)) s = "tau,upsilon";
    if (uses_t(id)) s = "t";
    if (uses_eps(id)) s = "eps";
    return s;
  };
  if (format == "json") {
    json doc = json::array();
    for (ConstantId id : all_constant_ids()) {
      doc.push_back({{"id", std::string(constant_id_name(id))},
                     {"alias", alias(constant_id_name(id))},
                     {"params", params(id)},
                     {"direct", supports_direct(id)}});
    }
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  for (ConstantId id : all_constant_ids()) {
    out << std::left << std::setw(16) << constant_id_name(id) << std::setw(16) << alias(constant_id_name(id))
        << std::setw(14) << params(id) << (supports_direct(id) ? "substituted|direct" : "substituted") << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Estimate geometric constants of finite-dimensional normed spaces"};
  app.require_subcommand(1);

  Common common;
  Params params;
  std::string space_text, suite = "core", list_format = "table";

  auto* constant = app.add_subcommand("constant", "estimate one constant on one space");
  constant->add_option("--space,--spaces", space_text, "space: JSON, lp:<p>:<dim>, corpus name or file")->required();
  constant->add_option("--name", params.name, "constant id or alias (see list-constants)")->required();
  constant->add_option("--mode", params.mode, "substituted or direct")
      ->check(CLI::IsMember({"substituted", "direct"}))
      ->capture_default_str();
  add_params(constant, params);
  add_common(constant, common);

  auto* verify = app.add_subcommand("verify", "run an identity suite over a corpus");
  verify->add_option("--spaces,--space", space_text, "comma list, JSON array or file (default: built-in corpus)");
  verify->add_option("--suite", suite, "core or full")->check(CLI::IsMember({"core", "full"}))->capture_default_str();
  add_common(verify, common);

  auto* report = app.add_subcommand("report", "all constants plus an identity suite per space");
  report->add_option("--spaces,--space", space_text, "comma list, JSON array or file (default: built-in corpus)");
  report->add_option("--suite", suite, "core or full")->check(CLI::IsMember({"core", "full"}))->capture_default_str();
  add_params(report, params);
  add_common(report, common);

  auto* list_spaces = app.add_subcommand("list-spaces", "named spaces accepted by --space");
  list_spaces->add_option("--format", list_format)->check(CLI::IsMember({"table", "json"}));
  auto* list_constants = app.add_subcommand("list-constants", "constant ids, aliases and parameters");
  list_constants->add_option("--format", list_format)->check(CLI::IsMember({"table", "json"}));

  std::vector<std::string> argv_store{"isoconst"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*constant) return cmd_constant(space_text, params, common, out);
    if (*verify) return cmd_verify(space_text, suite, common, out);
    if (*report) return cmd_report(space_text, suite, params, common, out);
    if (*list_spaces) return cmd_list_spaces(list_format, out);
    if (*list_constants) return cmd_list_constants(list_format, out);
  } catch (const DegenerateObjective& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const NearDegenerate& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Infeasible& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace isoconst
