// mopfact: bidiagonal factorisation of multiple-orthogonal-polynomial Hessenberg matrices.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mopfact/mopfact.hpp"

namespace {

using namespace mopfact;
using nlohmann::json;

enum Exit : int {
  kOk = 0,
  kConfig = 1,
  kNoFactorisation = 2,
  kSingularMinor = 3,
  kMismatch = 4,
  kInternal = 5,
};

// Raised for bad flags or inconsistent options; maps to exit 1.
struct ConfigError : Error {
  using Error::Error;
};

struct Options {
  std::string system;
  std::string moments_path;
  std::optional<std::size_t> r;
  std::string a;
  std::string b;
  std::size_t count = 11;
  std::string method;
  std::size_t size = 4;
  std::size_t nmax = 4;
  std::size_t kmax = 4;
  std::string format = "json";
  std::string out;
};

struct RunConfig {
  SystemSpec spec;
  std::vector<Method> methods;
  std::string format;
  std::string out;
  unsigned threads = 1;
};

std::vector<Scalar> parse_list(const std::string& text, const char* flag) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(Scalar::parse(tok));
  if (out.empty()) throw ConfigError(std::string("--") + flag + " needs at least one rational");
  return out;
}

unsigned thread_cap() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("MOPFACT_THREADS");
  if (!env || !*env) return hw;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw ConfigError(std::string("MOPFACT_THREADS must be a positive integer, got '") + env + "'");
  return static_cast<unsigned>(v);
}

SystemSpec make_system(const Options& o) {
  const bool builtin = !o.system.empty();
  if (builtin == !o.moments_path.empty()) throw ConfigError("give exactly one of --system and --moments");
  if (!builtin) {
    if (!o.a.empty() || !o.b.empty()) throw ConfigError("--a/--b apply only to built-in systems");
    SystemSpec spec = load_moment_file(o.moments_path);
    if (o.r && *o.r != spec.r())
      throw ConfigError("--r " + std::to_string(*o.r) + " disagrees with r = " + std::to_string(spec.r()) +
                        " in " + o.moments_path);
    return spec;
  }
  if (o.a.empty()) throw ConfigError("--a is required for built-in systems");
  std::vector<Scalar> a = parse_list(o.a, "a");
  if (o.r && *o.r != a.size())
    throw ConfigError("--r " + std::to_string(*o.r) + " but " + std::to_string(a.size()) + " values given to --a");
  if (o.system == "jacobi-pineiro") {
    if (o.b.empty()) throw ConfigError("--b is required for jacobi-pineiro");
    return SystemSpec::jacobi_pineiro(std::move(a), Scalar::parse(o.b));
  }
  if (o.system == "laguerre") {
    if (!o.b.empty()) throw ConfigError("--b does not apply to laguerre");
    return SystemSpec::laguerre(std::move(a));
  }
  throw ConfigError("unknown system '" + o.system + "' (expected jacobi-pineiro or laguerre)");
}

std::vector<Method> parse_methods(const std::string& text, const SystemSpec& spec, std::vector<Method> fallback) {
  if (text.empty()) return fallback;
  std::vector<Method> out;
  auto add = [&](Method m) {
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  };
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "all") {
      for (Method m : {Method::GaussBorel, Method::Minors, Method::EulerGauss}) add(m);
      if (spec.is_builtin()) add(Method::ClosedForm);
    } else if (tok == "gauss-borel") {
      add(Method::GaussBorel);
    } else if (tok == "minors") {
      add(Method::Minors);
    } else if (tok == "bcf") {
      add(Method::EulerGauss);
    } else if (tok == "closed-form") {
      if (!spec.is_builtin()) throw ConfigError("closed-form is only available for built-in systems");
      add(Method::ClosedForm);
    } else {
      throw ConfigError("unknown method '" + tok + "'");
    }
  }
  if (out.empty()) throw ConfigError("no method selected");
  return out;
}

RunConfig make_config(const Options& o, std::vector<Method> default_methods) {
  if (o.format != "json" && o.format != "csv" && o.format != "pretty")
    throw ConfigError("unknown format '" + o.format + "' (expected json, csv or pretty)");
  SystemSpec spec = make_system(o);
  for (const auto& w : spec.warnings()) std::cerr << "warning: " << w << "\n";
  auto methods = parse_methods(o.method, spec, std::move(default_methods));
  return RunConfig{std::move(spec), std::move(methods), o.format, o.out, thread_cap()};
}

std::vector<Method> all_methods(const SystemSpec& spec) {
  std::vector<Method> m{Method::GaussBorel, Method::Minors, Method::EulerGauss};
  if (spec.is_builtin()) m.push_back(Method::ClosedForm);
  return m;
}

AlphaSequence run_method(Method m, const SystemSpec& spec, std::size_t k, unsigned threads) {
  switch (m) {
    case Method::GaussBorel:
      return gauss_borel_alphas(spec, k, threads);
    case Method::Minors:
      return minor_alphas(spec, k, threads);
    case Method::EulerGauss:
      return euler_gauss(spec, k);
    case Method::ClosedForm:
      return closed_form_alphas(ClosedFormParams::from_system(spec), k);
  }
  throw InternalInconsistency("unhandled method");
}

// Runs methods concurrently when threads allow; results come back in the requested order, and
// when several fail the first failure in that order is rethrown.
std::vector<AlphaSequence> run_methods(const RunConfig& cfg, std::size_t k) {
  std::vector<std::function<AlphaSequence()>> jobs;
  for (Method m : cfg.methods) {
    const unsigned inner = std::max(1u, cfg.threads / static_cast<unsigned>(cfg.methods.size()));
    jobs.push_back([&cfg, m, k, inner] { return run_method(m, cfg.spec, k, inner); });
  }
  std::vector<AlphaSequence> out;
  if (cfg.threads <= 1 || jobs.size() == 1) {
    for (auto& j : jobs) out.push_back(j());
    return out;
  }
  std::vector<std::future<AlphaSequence>> futs;
  for (auto& j : jobs) futs.push_back(std::async(std::launch::async, j));
  std::exception_ptr first;
  for (auto& f : futs) {
    try {
      out.push_back(f.get());
    } catch (...) {
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
  return out;
}

std::size_t count_to_k(std::size_t count) {
  if (count == 0) throw ConfigError("--count must be at least 1");
  return count - 1;
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw ConfigError("cannot open output file '" + path + "'");
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

json alpha_json(const AlphaSequence& seq, std::size_t r) {
  json alphas = json::array();
  json decimals = json::array();
  for (std::size_t n = 0; n < seq.size(); ++n) {
    alphas.push_back({{"n", n}, {"value", seq.at(n).str()}});
    decimals.push_back(seq.at(n).to_double());
  }
  return {{"r", r},
          {"method", std::string(method_name(seq.method))},
          {"valid_through", seq.valid_through()},
          {"alphas", alphas},
          {"decimal", decimals}};
}

void print_pretty_table(std::ostream& os, const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c + 1 == cells.size()) {
        os << cells[c] << "\n";
      } else {
        os << std::left << std::setw(static_cast<int>(width[c])) << cells[c] << "  ";
      }
    }
  };
  line(header);
  for (const auto& row : rows) line(row);
}

int cmd_factor(const Options& o) {
  RunConfig cfg = make_config(o, {Method::GaussBorel});
  const std::size_t k = count_to_k(o.count);
  const auto results = run_methods(cfg, k);
  Sink sink(cfg.out);
  auto& os = sink.os();
  const std::size_t r = cfg.spec.r();
  if (cfg.format == "json") {
    if (results.size() == 1) {
      os << alpha_json(results[0], r).dump(2) << "\n";
    } else {
      json arr = json::array();
      for (const auto& s : results) arr.push_back(alpha_json(s, r));
      os << arr.dump(2) << "\n";
    }
  } else if (cfg.format == "csv") {
    os << "n,method,value,decimal\n";
    for (std::size_t n = 0; n <= k; ++n)
      for (const auto& s : results) os << n << "," << method_name(s.method) << "," << s.at(n) << "," << to_decimal(s.at(n)) << "\n";
  } else {
    std::vector<std::string> header{"n"};
    for (const auto& s : results) header.emplace_back(method_name(s.method));
    header.emplace_back("decimal");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t n = 0; n <= k; ++n) {
      std::vector<std::string> row{std::to_string(n)};
      for (const auto& s : results) row.push_back(s.at(n).str());
      row.push_back(to_decimal(results[0].at(n)));
      rows.push_back(std::move(row));
    }
    os << "r = " << r << ", alpha_0..alpha_" << k << "\n";
    print_pretty_table(os, header, rows);
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  RunConfig probe = make_config(o, {});
  if (o.method.empty()) probe.methods = all_methods(probe.spec);
  if (probe.methods.size() < 2) throw ConfigError("verify needs at least two methods");
  const std::size_t k = count_to_k(o.count);
  const auto results = run_methods(probe, k);

  bool all_agree = true;
  std::vector<bool> agree(k + 1, true);
  for (std::size_t n = 0; n <= k; ++n) {
    for (const auto& s : results)
      if (s.at(n) != results[0].at(n)) agree[n] = false;
    all_agree = all_agree && agree[n];
  }

  Sink sink(probe.out);
  auto& os = sink.os();
  if (probe.format == "json") {
    json methods = json::array();
    for (const auto& s : results) methods.push_back(std::string(method_name(s.method)));
    json rows = json::array();
    for (std::size_t n = 0; n <= k; ++n) {
      json values = json::object();
      for (const auto& s : results) values[std::string(method_name(s.method))] = s.at(n).str();
      rows.push_back({{"n", n}, {"agree", static_cast<bool>(agree[n])}, {"values", values}});
    }
    json doc{{"r", probe.spec.r()}, {"methods", methods}, {"valid_through", k}, {"agree", all_agree}, {"rows", rows}};
    os << doc.dump(2) << "\n";
  } else if (probe.format == "csv") {
    os << "n,method,value,agree\n";
    for (std::size_t n = 0; n <= k; ++n)
      for (const auto& s : results)
        os << n << "," << method_name(s.method) << "," << s.at(n) << "," << (agree[n] ? "true" : "false") << "\n";
  } else {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t n = 0; n <= k; ++n) {
      rows.push_back({std::to_string(n), results[0].at(n).str(), agree[n] ? "agree" : "MISMATCH"});
    }
    print_pretty_table(os, {"n", "value", "status"}, rows);
    os << (all_agree ? "all methods agree" : "methods disagree") << "\n";
  }
  if (!all_agree) {
    for (std::size_t n = 0; n <= k; ++n)
      if (!agree[n]) {
        std::cerr << "error: methods disagree at alpha_" << n << "\n";
        break;
      }
    return kMismatch;
  }
  return kOk;
}

std::vector<Method> single_method(const RunConfig& cfg) {
  if (cfg.methods.size() != 1) throw ConfigError("this subcommand takes a single --method");
  return cfg.methods;
}

int cmd_hessenberg(const Options& o) {
  RunConfig cfg = make_config(o, {Method::GaussBorel});
  single_method(cfg);
  const std::size_t m = o.size;
  if (m == 0) throw ConfigError("--size must be at least 1");
  const std::size_t r = cfg.spec.r();
  const std::size_t k = (r + 1) * (m - 1) + r;
  const AlphaSequence alphas = run_methods(cfg, k).front();
  const HessenbergBands bands = gamma_expand(alphas, r, m - 1);
  const Matrix h = band_matrix(bands, m);
  if (h != assemble(alphas, r, m).product())
    throw InternalInconsistency("gamma bands disagree with the product of bidiagonal factors");

  Sink sink(cfg.out);
  auto& os = sink.os();
  if (cfg.format == "json") {
    json gammas = json::array();
    for (std::size_t kk = 0; kk <= r && kk < m; ++kk)
      for (std::size_t n = 0; n + kk < m; ++n) gammas.push_back({{"k", kk}, {"n", n}, {"value", bands.gamma(kk, n).str()}});
    json rows = json::array();
    for (std::size_t i = 0; i < m; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m; ++j) row.push_back(h(i, j).str());
      rows.push_back(row);
    }
    json doc{{"r", r}, {"method", std::string(method_name(alphas.method))}, {"size", m}, {"gammas", gammas}, {"matrix", rows}};
    os << doc.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    os << "k,n,value,decimal\n";
    for (std::size_t kk = 0; kk <= r && kk < m; ++kk)
      for (std::size_t n = 0; n + kk < m; ++n)
        os << kk << "," << n << "," << bands.gamma(kk, n) << "," << to_decimal(bands.gamma(kk, n)) << "\n";
  } else {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t kk = 0; kk <= r && kk < m; ++kk)
      for (std::size_t n = 0; n + kk < m; ++n)
        rows.push_back({std::to_string(kk), std::to_string(n), bands.gamma(kk, n).str()});
    print_pretty_table(os, {"k", "n", "gamma"}, rows);
    os << "\nH (" << m << " x " << m << "):\n";
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header;
    for (std::size_t j = 0; j < m; ++j) header.push_back(std::to_string(j));
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::string> row;
      for (std::size_t j = 0; j < m; ++j) row.push_back(h(i, j).str());
      cells.push_back(std::move(row));
    }
    print_pretty_table(os, header, cells);
  }
  return kOk;
}

int cmd_srcheck(const Options& o) {
  RunConfig cfg = make_config(o, {Method::GaussBorel});
  single_method(cfg);
  const std::size_t r = cfg.spec.r();
  const std::size_t k = (r + 1) * std::max(o.nmax, o.kmax) + r;
  const AlphaSequence alphas = run_methods(cfg, k).front();
  const ProductionReport prod = production_check(alphas, r, o.nmax, o.kmax);
  const auto moments = moment_identity_check(cfg.spec, alphas, o.nmax);
  bool moments_ok = true;
  for (const auto& c : moments) moments_ok = moments_ok && c.pass();
  const bool ok = prod.all_pass() && moments_ok;

  Sink sink(cfg.out);
  auto& os = sink.os();
  if (cfg.format == "json") {
    json pcells = json::array();
    for (const auto& c : prod.cells)
      pcells.push_back({{"n", c.n}, {"k", c.k}, {"matrix_power", c.matrix_power.str()}, {"path_sum", c.path_sum.str()}, {"pass", c.pass()}});
    json mcells = json::array();
    for (const auto& c : moments)
      mcells.push_back({{"j", c.j}, {"n", c.n}, {"moment", c.moment.str()}, {"path_sum", c.path_sum.str()}, {"pass", c.pass()}});
    json doc{{"r", r}, {"nmax", o.nmax}, {"kmax", o.kmax}, {"pass", ok}, {"production", pcells}, {"moments", mcells}};
    os << doc.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    os << "check,a,b,lhs,rhs,pass\n";
    for (const auto& c : prod.cells)
      os << "production," << c.n << "," << c.k << "," << c.matrix_power << "," << c.path_sum << "," << (c.pass() ? "true" : "false") << "\n";
    for (const auto& c : moments)
      os << "moment," << c.j << "," << c.n << "," << c.moment << "," << c.path_sum << "," << (c.pass() ? "true" : "false") << "\n";
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : prod.cells)
      rows.push_back({std::to_string(c.n), std::to_string(c.k), c.matrix_power.str(), c.path_sum.str(), c.pass() ? "ok" : "FAIL"});
    print_pretty_table(os, {"n", "k", "(H^n)_0k", "S_n,k", ""}, rows);
    rows.clear();
    for (const auto& c : moments)
      rows.push_back({std::to_string(c.j), std::to_string(c.n), c.moment.str(), c.path_sum.str(), c.pass() ? "ok" : "FAIL"});
    os << "\n";
    print_pretty_table(os, {"j", "n", "moment", "paths", ""}, rows);
  }
  if (!ok) {
    std::cerr << "error: path identities fail\n";
    return kMismatch;
  }
  return kOk;
}

int cmd_moments_echo(const Options& o) {
  if (!o.method.empty()) throw ConfigError("moments-echo takes no --method");
  RunConfig cfg = make_config(o, {Method::GaussBorel});
  const std::size_t r = cfg.spec.r();
  // Custom tables may differ in length; each functional is echoed as far as it goes.
  auto length = [&](std::size_t j) {
    if (const auto* c = std::get_if<CustomMoments>(&cfg.spec.kind())) return std::min(o.count, c->moments[j - 1].size());
    return o.count;
  };
  const std::size_t count = std::min(o.count, cfg.spec.available_moments());
  Sink sink(cfg.out);
  auto& os = sink.os();
  if (cfg.format == "json") {
    json table = json::array();
    for (std::size_t j = 1; j <= r; ++j) {
      json row = json::array();
      for (std::size_t n = 0; n < length(j); ++n) row.push_back(cfg.spec.moment(j, n).str());
      table.push_back(row);
    }
    os << json{{"r", r}, {"moments", table}}.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    os << "j,n,value,decimal\n";
    for (std::size_t j = 1; j <= r; ++j)
      for (std::size_t n = 0; n < length(j); ++n)
        os << j << "," << n << "," << cfg.spec.moment(j, n) << "," << to_decimal(cfg.spec.moment(j, n)) << "\n";
  } else {
    std::vector<std::string> header{"n"};
    for (std::size_t j = 1; j <= r; ++j) header.push_back("v_" + std::to_string(j));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t n = 0; n < count; ++n) {
      std::vector<std::string> row{std::to_string(n)};
      for (std::size_t j = 1; j <= r; ++j) row.push_back(cfg.spec.moment(j, n).str());
      rows.push_back(std::move(row));
    }
    print_pretty_table(os, header, rows);
  }
  return kOk;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const NoBidiagonalFactorisation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoFactorisation;
  } catch (const SingularLeadingMinor& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSingularMinor;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
}

void add_system_flags(CLI::App* sub, Options& o) {
  sub->add_option("--system", o.system, "Built-in system: jacobi-pineiro or laguerre");
  sub->add_option("--moments", o.moments_path, "JSON moment file {\"r\": r, \"moments\": [[...], ...]}");
  sub->add_option("--r", o.r, "Number of functionals (checked against --a or the moment file)");
  sub->add_option("--a", o.a, "Comma-separated rationals a_1..a_r");
  sub->add_option("--b", o.b, "Rational b (jacobi-pineiro)");
  sub->add_option("--format", o.format, "json, csv or pretty")->capture_default_str();
  sub->add_option("--out", o.out, "Write output here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bidiagonal factorisation of Hessenberg matrices of multiple orthogonal polynomials"};
  app.require_subcommand(1);
  Options o;

  auto* factor = app.add_subcommand("factor", "Compute alpha_0..alpha_{count-1}");
  add_system_flags(factor, o);
  factor->add_option("--count", o.count, "Number of coefficients")->capture_default_str();
  factor->add_option("--method", o.method, "gauss-borel, minors, bcf, closed-form or all (comma-separated)");

  auto* verify = app.add_subcommand("verify", "Check that methods agree exactly");
  add_system_flags(verify, o);
  verify->add_option("--count", o.count, "Number of coefficients")->capture_default_str();
  verify->add_option("--method", o.method, "Methods to compare (default: all applicable)");

  auto* hess = app.add_subcommand("hessenberg", "Band coefficients gamma and the truncated Hessenberg matrix");
  add_system_flags(hess, o);
  hess->add_option("--size", o.size, "Truncation size")->capture_default_str();
  hess->add_option("--method", o.method, "Method used for alpha");

  auto* sr = app.add_subcommand("srcheck", "Production-matrix and moment path identities");
  add_system_flags(sr, o);
  sr->add_option("--nmax", o.nmax, "Largest power n")->capture_default_str();
  sr->add_option("--kmax", o.kmax, "Largest column k")->capture_default_str();
  sr->add_option("--method", o.method, "Method used for alpha");

  auto* echo = app.add_subcommand("moments-echo", "Print the normalised moment table");
  add_system_flags(echo, o);
  echo->add_option("--count", o.count, "Moments per functional")->capture_default_str();
  echo->add_option("--method", o.method)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  if (*factor) return guarded([&] { return cmd_factor(o); });
  if (*verify) return guarded([&] { return cmd_verify(o); });
  if (*hess) return guarded([&] { return cmd_hessenberg(o); });
  if (*sr) return guarded([&] { return cmd_srcheck(o); });
  return guarded([&] { return cmd_moments_echo(o); });
}
