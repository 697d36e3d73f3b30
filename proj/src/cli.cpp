#include "weilsum/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "weilsum/bounds.hpp"
#include "weilsum/error.hpp"
#include "weilsum/gauss.hpp"
#include "weilsum/identity.hpp"
#include "weilsum/kloosterman.hpp"
#include "weilsum/parallel.hpp"
#include "weilsum/weilrep.hpp"

namespace weilsum::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string> kModes = {"compute-sum",  "verify-identity", "verify-theta", "verify-eta",
                                         "verify-bound", "gauss-table",     "weilrep-matrix"};

IntRange parse_range(const std::string& s) {
  try {
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
      const std::int64_t x = std::stoll(s);
      return {x, x};
    }
    return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ConfigError("bad range '" + s + "' (expected lo:hi)");
  }
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Flags derived from a JSON config object, placed before the command-line flags so those win.
std::vector<std::string> config_tokens(const std::string& path, std::string& mode) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config file: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  std::vector<std::string> out;
  for (const auto& [key, value] : j.items()) {
    if (key == "mode") {
      if (!value.is_string()) throw ConfigError("config \"mode\" must be a string");
      if (mode.empty()) mode = value.get<std::string>();
      continue;
    }
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    out.push_back("--" + flag);
    out.push_back(json_scalar(value));
  }
  return out;
}

void add_options(CLI::App& sub, SweepConfig& c, std::string& m_range, std::string& n_range, std::string& config,
                 std::string& constant) {
  sub.add_option("--config", config, "JSON file with defaults for any flag");
  sub.add_option("--lattice", c.lattice_path, "lattice JSON file {\"gram\": [[...]]}");
  sub.add_option("--gram", c.gram, "inline Gram matrix, e.g. [[2]]");
  sub.add_option("--alpha", c.alpha, "coordinates of alpha, e.g. 1/2,0");
  sub.add_option("--beta", c.beta, "coordinates of beta");
  sub.add_option("--m", c.m);
  sub.add_option("--n", c.n);
  sub.add_option("--c", c.c);
  sub.add_option("--k", c.k, "weight; defaults to (b+ - b-)/2");
  sub.add_option("--m-range", m_range, "lo:hi");
  sub.add_option("--n-range", n_range, "lo:hi");
  sub.add_option("--c-max", c.c_max);
  sub.add_option("--v-max", c.v_max);
  sub.add_option("--gamma", c.gamma, "a,b,c,d");
  sub.add_option("--branch", c.branch)->check(CLI::IsMember({-1, 1}));
  sub.add_option("--kind", c.kind, "Gauss sum kind");
  sub.add_option("--gauss-mode", c.gauss_mode)->check(CLI::IsMember({"closed", "brute"}));
  sub.add_option("--lambda-max", c.lambda_max);
  sub.add_option("--p", c.p);
  sub.add_option("--chi-mode", c.chi_mode)->check(CLI::IsMember({"product", "definition"}));
  sub.add_option("--tol", c.tolerance, "residual tolerance");
  sub.add_option("--constant", constant, "bound constant; defaults to the recorded one");
  sub.add_option("--prec-bits", c.prec_bits)->check(CLI::Range(kMinPrecBits, 1 << 16));
  sub.add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
  sub.add_option("--threads", c.threads)->check(CLI::Range(1, 1024));
}

class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};


EvenLattice load_lattice(const SweepConfig& c) {
  if (!c.lattice_path.empty()) {
    std::ifstream in(c.lattice_path);
    if (!in) throw ConfigError("cannot read lattice file '" + c.lattice_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return lattice_from_json(ss.str());
  }
  if (!c.gram.empty()) {
    const std::string text = c.gram.find('{') == std::string::npos ? "{\"gram\": " + c.gram + "}" : c.gram;
    return lattice_from_json(text);
  }
  throw ConfigError("a lattice is required (--lattice FILE or --gram [[...]])");
}

DiscElement parse_element(const EvenLattice& L, const std::string& s) {
  if (s.empty()) return DiscElement::zero(L);
  std::vector<Rational> coords;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) coords.push_back(parse_rational(item));
  if (static_cast<int>(coords.size()) != L.rank())
    throw DomainError("element '" + s + "' needs " + std::to_string(L.rank()) + " coordinates");
  return DiscElement::from_coords(L, coords);
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void write_table(const Table& t, const std::string& format, std::ostream& out) {
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& row : t.rows) {
      ordered_json obj;
      for (std::size_t i = 0; i < t.header.size(); ++i) obj[t.header[i]] = row[i];
      arr.push_back(obj);
    }
    out << arr.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << "\n";
  }
}

void write_failures(const Table& t, const std::vector<std::size_t>& failed, std::ostream& err) {
  ordered_json arr = ordered_json::array();
  for (std::size_t r : failed) {
    ordered_json obj;
    for (std::size_t i = 0; i < t.header.size(); ++i) obj[t.header[i]] = t.rows[r][i];
    arr.push_back(obj);
  }
  ordered_json j;
  j["failures"] = arr;
  err << j.dump() << "\n";
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_residual(const Real& r) { return r.to_string(6); }

std::string default_format(const SweepConfig& c, const char* fallback) {
  return c.format.empty() ? fallback : c.format;
}

void require_range(const IntRange& r, const char* name) {
  if (r.lo > r.hi) throw ConfigError(std::string(name) + " is empty");
}

void require_c_max(const SweepConfig& c) {
  if (c.c_max < 1) throw ConfigError("--c-max must be at least 1");
  if (c.v_max < 0) throw ConfigError("--v-max must be nonnegative");
}


int compute_sum(const SweepConfig& c, std::ostream& out) {
  const EvenLattice L = load_lattice(c);
  const DiscElement a = parse_element(L, c.alpha), b = parse_element(L, c.beta);
  std::optional<Rational> k;
  if (!c.k.empty()) k = parse_rational(c.k);
  const KloostermanSpec spec = KloostermanSpec::make(L, a, b, c.m, c.n, c.c, k);
  const AlgValue s = kloosterman_weil(spec, c.prec_bits);
  const int digits = decimal_digits(c.prec_bits);
  ordered_json j;
  j["lattice"] = nlohmann::json::parse(lattice_to_json(L))["gram"];
  j["alpha"] = a.to_string();
  j["beta"] = b.to_string();
  j["m"] = c.m;
  j["n"] = c.n;
  j["c"] = c.c;
  j["k"] = to_string(spec.k);
  j["sigma"] = spec.sigma;
  j["prec_bits"] = c.prec_bits;
  j["re"] = s.re().to_string(digits);
  j["im"] = s.im().to_string(digits);
  j["abs"] = s.abs().to_string(digits);
  out << j.dump(2) << "\n";
  return kOk;
}

int finish_sweep(const Table& t, const std::vector<bool>& bad, const std::string& format, std::ostream& out,
                 std::ostream& err) {
  write_table(t, format, out);
  std::vector<std::size_t> failed;
  for (std::size_t i = 0; i < bad.size(); ++i)
    if (bad[i]) failed.push_back(i);
  if (failed.empty()) return kOk;
  write_failures(t, failed, err);
  return kVerificationFailure;
}

std::vector<std::string> result_fields(const IdentityResult& r, int digits) {
  return {r.lhs.re().to_string(digits), r.lhs.im().to_string(digits), r.rhs.re().to_string(digits),
          r.rhs.im().to_string(digits), fmt_residual(r.residual)};
}

int verify_identity_cmd(const SweepConfig& c, std::ostream& out, std::ostream& err) {
  const EvenLattice L = load_lattice(c);
  if (L.rank() % 2 == 0) throw DomainError("verify-identity needs odd rank");
  require_range(c.m_range, "--m-range");
  require_range(c.n_range, "--n-range");
  require_c_max(c);
  const IdentityEngine engine(L, c.prec_bits, c.chi_mode == "definition" ? ChiMode::definition : ChiMode::product);
  const DiscGroup& G = engine.group();
  const Rational k = c.k.empty() ? default_weight(L) : parse_rational(c.k);
  struct Point {
    std::size_t ia, ib;
    std::int64_t m, n, cc, v;
  };
  std::vector<Point> points;
  for (std::size_t ia = 0; ia < G.size(); ++ia)
    for (std::size_t ib = 0; ib < G.size(); ++ib)
      for (std::int64_t m = c.m_range.lo; m <= c.m_range.hi; ++m)
        for (std::int64_t n = c.n_range.lo; n <= c.n_range.hi; ++n) {
          try {
            engine.check_hypotheses(ia, ib, m, n);
          } catch (const DomainError&) {
            continue;
          }
          for (std::int64_t cc = 1; cc <= c.c_max; ++cc)
            for (std::int64_t v = 0; v <= c.v_max; ++v) points.push_back({ia, ib, m, n, cc, v});
        }
  Table t{{"alpha", "beta", "m", "n", "c", "v", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual"}, {}};
  t.rows.resize(points.size());
  std::vector<char> flags(points.size(), 0);
  const int digits = decimal_digits(c.prec_bits);
  parallel_for(points.size(), c.threads, [&](std::size_t i) {
    const Point& p = points[i];
    const IdentityResult r = engine.verify(p.ia, p.ib, p.m, p.n, p.cc, p.v, k);
    std::vector<std::string> row = {G[p.ia].to_string(), G[p.ib].to_string(), std::to_string(p.m),
                                    std::to_string(p.n), std::to_string(p.cc), std::to_string(p.v)};
    for (auto& f : result_fields(r, digits)) row.push_back(std::move(f));
    t.rows[i] = std::move(row);
    flags[i] = !(r.residual.to_double() < c.tolerance);
  });
  std::vector<bool> bad(flags.begin(), flags.end());
  return finish_sweep(t, bad, default_format(c, "csv"), out, err);
}

template <class Accept, class Verify>
int classical_sweep(const SweepConfig& c, std::ostream& out, std::ostream& err, Accept accept, Verify verify) {
  require_range(c.m_range, "--m-range");
  require_range(c.n_range, "--n-range");
  require_c_max(c);
  struct Point {
    std::int64_t m, n, cc, v;
  };
  std::vector<Point> points;
  for (std::int64_t m = c.m_range.lo; m <= c.m_range.hi; ++m)
    for (std::int64_t n = c.n_range.lo; n <= c.n_range.hi; ++n)
      for (std::int64_t cc = 1; cc <= c.c_max; ++cc)
        for (std::int64_t v = 0; v <= c.v_max; ++v)
          if (accept(m, n, v)) points.push_back({m, n, cc, v});
  Table t{{"m", "n", "c", "v", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual"}, {}};
  t.rows.resize(points.size());
  std::vector<char> flags(points.size(), 0);
  const int digits = decimal_digits(c.prec_bits);
  parallel_for(points.size(), c.threads, [&](std::size_t i) {
    const Point& p = points[i];
    const IdentityResult r = verify(p.m, p.n, p.cc, p.v, c.prec_bits);
    std::vector<std::string> row = {std::to_string(p.m), std::to_string(p.n), std::to_string(p.cc),
                                    std::to_string(p.v)};
    for (auto& f : result_fields(r, digits)) row.push_back(std::move(f));
    t.rows[i] = std::move(row);
    flags[i] = !(r.residual.to_double() < c.tolerance);
  });
  std::vector<bool> bad(flags.begin(), flags.end());
  return finish_sweep(t, bad, default_format(c, "csv"), out, err);
}

int verify_theta_cmd(const SweepConfig& c, std::ostream& out, std::ostream& err) {
  return classical_sweep(
      c, out, err,
      [](std::int64_t m, std::int64_t n, std::int64_t) {
        return is_fundamental_discriminant(m) && mod(n, 4) <= 1;
      },
      [](std::int64_t m, std::int64_t n, std::int64_t cc, std::int64_t v, int prec) {
        return verify_theta_identity(m, n, cc, v, prec);
      });
}

int verify_eta_cmd(const SweepConfig& c, std::ostream& out, std::ostream& err) {
  return classical_sweep(
      c, out, err,
      [](std::int64_t m, std::int64_t n, std::int64_t v) {
        return mod(m, 24) == 1 && mod(n, 24) == 1 && is_fundamental_discriminant(m) &&
               std::gcd(v, std::int64_t{6}) == 1;
      },
      [](std::int64_t m, std::int64_t n, std::int64_t cc, std::int64_t v, int prec) {
        return verify_eta_identity(m, n, cc, v, prec);
      });
}

int verify_bound_cmd(const SweepConfig& c, std::ostream& out, std::ostream& err) {
  const EvenLattice L = load_lattice(c);
  require_range(c.m_range, "--m-range");
  require_range(c.n_range, "--n-range");
  require_c_max(c);
  const BoundRange range{c.m_range.lo, c.m_range.hi, c.n_range.lo, c.n_range.hi, c.c_max};
  const auto reports = bound_sweep(L, range, c.prec_bits, c.threads);
  const std::optional<double> constant = c.constant ? c.constant : recorded_constant(L);
  Table t{{"lattice_id", "alpha", "beta", "m0", "v", "n", "c", "abs_S", "rhs", "ratio"}, {}};
  std::vector<bool> bad;
  for (const auto& r : reports) {
    t.rows.push_back({r.lattice_id, r.alpha.to_string(), r.beta.to_string(), std::to_string(r.m0),
                      std::to_string(r.v), std::to_string(r.n), std::to_string(r.c), fmt_double(r.abs_S),
                      fmt_double(r.rhs), fmt_double(r.ratio)});
    bad.push_back(constant && r.ratio > *constant * 1.01);
  }
  if (!constant) err << "no recorded constant for " << L.describe() << "; ratios not checked\n";
  return finish_sweep(t, bad, default_format(c, "csv"), out, err);
}

int gauss_table_cmd(const SweepConfig& c, std::ostream& out) {
  std::string name = c.kind;
  std::replace(name.begin(), name.end(), '-', '_');
  const GaussKind kind = parse_gauss_kind(name);
  const GaussMode mode = c.gauss_mode == "brute" ? GaussMode::brute_force : GaussMode::closed_form;
  require_c_max(c);
  require_range(c.n_range, "--n-range");
  std::vector<GaussSumQuery> queries;
  GaussSumQuery q;
  q.kind = kind;
  switch (kind) {
    case GaussKind::plain:
      for (std::int64_t cc = 1; cc <= c.c_max; ++cc) {
        q.c = cc;
        queries.push_back(q);
      }
      break;
    case GaussKind::scaled:
      for (std::int64_t cc = 1; cc <= c.c_max; cc += 2)
        for (std::int64_t a = 1; a <= cc; ++a) {
          if (std::gcd(a, cc) != 1) continue;
          q.a = a;
          q.c = cc;
          queries.push_back(q);
        }
      break;
    case GaussKind::shifted_binary_pow2:
      for (int lam = 1; lam <= c.lambda_max; ++lam)
        for (std::int64_t a = 1; a < std::min<std::int64_t>(8, ipow(2, lam) + 1); a += 2)
          for (std::int64_t b = c.n_range.lo; b <= c.n_range.hi; ++b) {
            q.a = a;
            q.b = b;
            q.lambda = lam;
            queries.push_back(q);
          }
      break;
    case GaussKind::quadratic_form: {
      const EvenLattice L = load_lattice(c);
      q.gram = L.gram();
      for (std::int64_t cc = 1; cc <= c.c_max; ++cc) {
        if (mode == GaussMode::closed_form && (cc % 2 == 0 || std::gcd(cc, L.abs_det()) != 1)) continue;
        q.c = cc;
        queries.push_back(q);
      }
      break;
    }
    case GaussKind::twisted_odd:
      if (!is_prime(c.p) || c.p == 2) throw ConfigError("--p must be an odd prime");
      for (int lam = 1; lam <= c.lambda_max; ++lam)
        for (std::int64_t n = c.n_range.lo; n <= c.n_range.hi; ++n) {
          q.n = n;
          q.p = c.p;
          q.lambda = lam;
          queries.push_back(q);
        }
      break;
    case GaussKind::twisted_pow2:
      for (int lam = 2; lam <= c.lambda_max; ++lam)
        for (std::int64_t n = c.n_range.lo; n <= c.n_range.hi; ++n) {
          q.n = n;
          q.lambda = lam;
          queries.push_back(q);
        }
      break;
  }
  Table t{{"kind", "params", "re", "im"}, {}};
  t.rows.resize(queries.size());
  const int digits = decimal_digits(c.prec_bits);
  parallel_for(queries.size(), c.threads, [&](std::size_t i) {
    const AlgValue v = evaluate(queries[i], mode, c.prec_bits);
    t.rows[i] = {queries[i].kind_name(), queries[i].params(), v.re().to_string(digits), v.im().to_string(digits)};
  });
  write_table(t, default_format(c, "csv"), out);
  return kOk;
}

int weilrep_matrix_cmd(const SweepConfig& c, std::ostream& out) {
  const EvenLattice L = load_lattice(c);
  std::vector<std::int64_t> e;
  std::stringstream ss(c.gamma);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) e.push_back(std::stoll(item));
  } catch (const std::exception&) {
    throw ConfigError("bad --gamma '" + c.gamma + "'");
  }
  if (e.size() != 4) throw ConfigError("--gamma needs four integers a,b,c,d");
  const MetaplecticElement g(e[0], e[1], e[2], e[3], c.branch);
  const DiscGroup G(L);
  const WeilRepMatrix r = rho_generators(G, g, WordStrategy::nearest, c.prec_bits);
  out << r.to_json(G, g) << "\n";
  return kOk;
}

}  // namespace

SweepConfig parse_args(const std::vector<std::string>& args) {
  std::string mode;
  std::size_t mode_pos = args.size();
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (mode.empty() && std::find(kModes.begin(), kModes.end(), a) != kModes.end()) {
      mode = a;
      mode_pos = i;
    }
    if (a == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
  }
  std::vector<std::string> merged;
  if (!config_path.empty()) {
    const std::string cli_mode = mode;
    std::vector<std::string> extra = config_tokens(config_path, mode);
    if (cli_mode.empty() && !mode.empty()) {
      merged.push_back(mode);
      merged.insert(merged.end(), extra.begin(), extra.end());
      merged.insert(merged.end(), args.begin(), args.end());
    } else {
      merged.assign(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(std::min(mode_pos + 1, args.size())));
      merged.insert(merged.end(), extra.begin(), extra.end());
      if (mode_pos < args.size())
        merged.insert(merged.end(), args.begin() + static_cast<std::ptrdiff_t>(mode_pos + 1), args.end());
    }
  } else {
    merged = args;
  }

  SweepConfig c;
  std::string m_range = "-24:24", n_range = "-24:24", config, constant;
  CLI::App app{"Kloosterman sums for the Weil representation of even lattices", "weilsum"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> descriptions = {
      {"compute-sum", "evaluate one lattice Kloosterman sum (JSON)"},
      {"verify-identity", "sweep the exact formula for a lattice of odd rank (CSV)"},
      {"verify-theta", "sweep the plus-space identity (CSV)"},
      {"verify-eta", "sweep the eta-multiplier identity (CSV)"},
      {"verify-bound", "sweep |S| against the Weil-type bound (CSV)"},
      {"gauss-table", "tabulate Gauss sums (CSV)"},
      {"weilrep-matrix", "print rho(gamma) as JSON"}};
  for (const auto& [name, desc] : descriptions) {
    CLI::App* sub = app.add_subcommand(name, desc);
    add_options(*sub, c, m_range, n_range, config, constant);
  }
  std::vector<std::string> reversed(merged.rbegin(), merged.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  for (CLI::App* sub : app.get_subcommands()) c.mode = sub->get_name();
  c.m_range = parse_range(m_range);
  c.n_range = parse_range(n_range);
  if (!constant.empty()) {
    try {
      c.constant = std::stod(constant);
    } catch (const std::exception&) {
      throw ConfigError("bad --constant '" + constant + "'");
    }
  }
  return c;
}

int run(const SweepConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.mode == "compute-sum") return compute_sum(c, out);
    if (c.mode == "verify-identity") return verify_identity_cmd(c, out, err);
    if (c.mode == "verify-theta") return verify_theta_cmd(c, out, err);
    if (c.mode == "verify-eta") return verify_eta_cmd(c, out, err);
    if (c.mode == "verify-bound") return verify_bound_cmd(c, out, err);
    if (c.mode == "gauss-table") return gauss_table_cmd(c, out);
    if (c.mode == "weilrep-matrix") return weilrep_matrix_cmd(c, out);
    err << "error: unknown mode '" << c.mode << "'\n";
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kVerificationFailure;
  }
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  SweepConfig c;
  try {
    c = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  return run(c, out, err);
}

}  // namespace weilsum::cli
