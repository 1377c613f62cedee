#pragma once

// Command-line front end.  Everything lives in `cli::run` so tests can drive
// it with string streams.

#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ellhyp/numeric_report.hpp"

namespace ellhyp::cli {

using json = nlohmann::ordered_json;

enum ExitCode { ok = 0, usage = 1, domain = 2, verification = 3 };

inline int exit_code_for(Errc e) {
  switch (e) {
    case Errc::parse_error:
    case Errc::invalid_alpha:
    case Errc::unknown_index:
    case Errc::unknown_label:
    case Errc::invalid_configuration:
    case Errc::composition_mismatch:
    case Errc::epsilon_too_large:
    case Errc::in_deformation_window:
      return usage;
    default:
      return domain;
  }
}

namespace detail {

inline std::optional<double> parse_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty() || s.front() == '+') return std::nullopt;
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

/// Grammar: real | imag | real (+|-) imag, where imag is an optional real
/// followed by `i` (or `j`).  Reals accept scientific notation.
inline cplx parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto fail = [&]() -> cplx { throw Error(Errc::parse_error, "malformed complex literal '" + std::string(text) + "'"); };
  if (s.empty()) return fail();
  if (s.back() != 'i' && s.back() != 'j') {
    auto r = detail::parse_real(s);
    return r ? cplx(*r, 0.0) : fail();
  }
  std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  std::string re = split == std::string::npos ? "" : body.substr(0, split);
  std::string im = split == std::string::npos ? body : body.substr(split);
  double real = 0.0;
  if (!re.empty()) {
    auto r = detail::parse_real(re);
    if (!r) return fail();
    real = *r;
  }
  double imag;
  if (im.empty() || im == "+")
    imag = 1.0;
  else if (im == "-")
    imag = -1.0;
  else if (auto v = detail::parse_real(im))
    imag = *v;
  else
    return fail();
  return {real, imag};
}

inline double parse_double(std::string_view text) {
  auto v = detail::parse_real(text);
  if (!v) throw Error(Errc::parse_error, "malformed number '" + std::string(text) + "'");
  return *v;
}

struct RunConfig {
  cplx omega1{1.0, 0.0};
  cplx omega2{0.0, 1.0};
  cplx alpha{0.3, 0.0};
  std::optional<double> epsilon;
  Thresholds tolerances;
  std::string output_path;
  std::optional<cplx> x0, x1, z;

  /// Applies one key=value setting; `tol` values read "name=value".
  void set(const std::string& key, const std::string& value) {
    if (key == "omega1") omega1 = parse_complex(value);
    else if (key == "omega2") omega2 = parse_complex(value);
    else if (key == "alpha") alpha = parse_complex(value);
    else if (key == "epsilon") epsilon = parse_double(value);
    else if (key == "out") output_path = value;
    else if (key == "x0") x0 = parse_complex(value);
    else if (key == "x1") x1 = parse_complex(value);
    else if (key == "z") z = parse_complex(value);
    else if (key == "tol") {
      auto eq = value.find('=');
      if (eq == std::string::npos) throw Error(Errc::parse_error, "tolerance must read name=value");
      std::string name = value.substr(0, eq);
      if (!default_thresholds().count(name)) throw Error(Errc::parse_error, "unknown tolerance name '" + name + "'");
      tolerances[name] = parse_double(value.substr(eq + 1));
    } else
      throw Error(Errc::parse_error, "unknown config key '" + key + "'");
  }
};

/// Flat key=value lines; '#' starts a comment.
inline void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot read config file " + path);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::parse_error, path + ":" + std::to_string(n) + ": expected key=value");
    auto strip = [](std::string s) {
      auto a = s.find_first_not_of(" \t\r");
      auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    cfg.set(strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
  }
}

inline json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json to_json(const Matrix<cplx>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline json record(const std::string& check, json value, std::optional<double> threshold = std::nullopt,
                   bool pass = true) {
  return json{{"check", check},
              {"value", std::move(value)},
              {"threshold", threshold ? json(*threshold) : json(nullptr)},
              {"pass", pass}};
}

inline json record(const CheckRecord& r) {
  json j = record(r.check, r.value, r.threshold, r.pass);
  if (!r.gating) j["gating"] = false;
  return j;
}

namespace detail {

inline std::vector<json> cmd_special_fns(const RunConfig& cfg, const Lattice& L) {
  if (!cfg.z) throw Error(Errc::parse_error, "special-fns needs --z");
  cplx z = *cfg.z;
  if (L.distance_to_lattice(z) < L.pole_guard()) throw Error(Errc::pole_at_lattice_point, "z is a pole (lattice point)");
  double leg = L.legendre_residual();
  return {record("sigma", to_json(sigma(z, L))),
          record("zeta", to_json(zeta(z, L))),
          record("wp", to_json(wp(z, L))),
          record("wp_prime", to_json(wp_prime(z, L))),
          record("eta1", to_json(L.eta1())),
          record("eta2", to_json(L.eta2())),
          record("legendre_residual", leg, 1e-12, leg < 1e-12)};
}

inline std::vector<json> cmd_intersection(const RunConfig& cfg, bool at_c) {
  std::vector<json> out{record("intersection_matrix", render(intersection_matrix())),
                        record("cofactor_22", intersection_cofactor_22().str())};
  if (at_c) {
    AlphaParam a = AlphaParam::make(cfg.alpha);
    auto m = intersection_matrix_at(a.c());
    auto dual = intersection_matrix_at(1.0 / a.c());
    double res = 0.0;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) res = std::max(res, std::abs(dual(j, i) + m(i, j)));
    out.push_back(record("intersection_matrix_at_c", to_json(m)));
    out.push_back(record("antisymmetry", res, 1e-12, res < 1e-12));
  }
  return out;
}

inline std::vector<json> cmd_connection(const RunConfig& cfg, const std::string& text, bool verify, bool at_c,
                                        bool& failed) {
  PathWord word = parse_word(text);
  if (word.empty()) throw Error(Errc::unknown_label, "empty path word");
  ConnectionMatrix cm = compose(word);
  RationalFunctionC det = determinant(cm.matrix);
  std::vector<json> out{record("word", word_string(word)),
                        record("source", tag_string(cm.source)),
                        record("target", tag_string(cm.target)),
                        record("connection_matrix", render(cm.matrix)),
                        record("determinant", det.str())};
  if (at_c) {
    AlphaParam a = AlphaParam::make(cfg.alpha);
    out.push_back(record("connection_matrix_at_c", to_json(cm.matrix.map([&](const RationalFunctionC& r) { return r.eval(a.c()); }))));
  }
  if (verify) {
    bool match = true;
    int total_exponent = 0;
    for (const auto& f : word) {
      match = match && connection_matrix(f.label).matrix == reference_connection_matrix(f.label);
      total_exponent += f.exponent;
    }
    out.push_back(record("reference_match", match ? 1.0 : 0.0, 1.0, match));
    RationalFunctionC expect(1);
    RationalFunctionC minus_c = -RationalFunctionC::c();
    for (int k = 0; k < std::abs(total_exponent); ++k) expect = expect * minus_c;
    if (total_exponent < 0) expect = RationalFunctionC(1) / expect;
    bool det_ok = det == expect;
    out.push_back(record("determinant_check", det_ok ? 1.0 : 0.0, 1.0, det_ok));
    failed = !match || !det_ok;
  }
  return out;
}

inline std::vector<json> cmd_verify_numeric(const RunConfig& cfg, const Lattice& L, bool& failed) {
  AlphaParam a = AlphaParam::make(cfg.alpha);
  Configuration q = (cfg.x0 || cfg.x1)
                        ? Configuration::from_pair(cfg.x0.value_or(0.5 * L.omega0()), cfg.x1.value_or(0.5 * L.omega1()), L)
                        : special_configuration(identity_tag, L);
  std::vector<CheckRecord> records = numeric_report(q, a, {cfg.epsilon, cfg.tolerances});
  for (const auto& label : {PathLabel{MovingPair::p01, 0, 1}, PathLabel{MovingPair::p02, 1, 0}})
    records.push_back(vanishing_record(label, a, L, cfg.tolerances));
  failed = !all_pass(records);
  std::vector<json> out;
  for (const auto& r : records) out.push_back(record(r));
  return out;
}

}  // namespace detail

inline const char* complex_grammar =
    "Complex literals: a, bi, a+bi or a-bi; a and b are decimals with optional exponent, b may be omitted "
    "(\"i\", \"-i\", \"2-i\"), and j may replace i.";

/// Entry point: NDJSON records go to `out` (or the --out file), messages to
/// `err`.  Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twisted cycles on a four-punctured elliptic curve: exact and numeric checks", "ellhyp"};
  app.footer(complex_grammar);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, omega1, omega2, alpha, epsilon, out_path, x0, x1, z, word;
  std::vector<std::string> tols;
  bool verify = false, at_c = false;
  app.add_option("--config", config_path, "key=value config file; flags override it");
  app.add_option("--omega1", omega1, "first period (default 1)");
  app.add_option("--omega2", omega2, "second period (default i)");
  app.add_option("--alpha", alpha, "exponent alpha (default 0.3)");
  app.add_option("--epsilon", epsilon, "regularization radius");
  app.add_option("--tol", tols, "threshold override name=value (repeatable)");
  app.add_option("--out", out_path, "write NDJSON records to this file");
  app.add_option("--x0", x0, "first point of the configuration");
  app.add_option("--x1", x1, "second point of the configuration");

  auto* special = app.add_subcommand("special-fns", "sigma, zeta, wp, wp' at z with quasi-periods");
  special->add_option("--z", z, "evaluation point")->required();
  auto* inter = app.add_subcommand("intersection", "exact intersection matrix and cofactor");
  inter->add_flag("--at-c", at_c, "also evaluate at c = exp(2 pi i alpha)");
  auto* conn = app.add_subcommand("connection", "connection matrix of a path label or word");
  conn->add_option("label", word, "label such as 01:0,1 or a word '01:0,1^-1 02:1,0@102'")->required();
  conn->add_flag("--verify", verify, "compare against the reference matrices");
  conn->add_flag("--at-c", at_c, "also evaluate at c = exp(2 pi i alpha)");
  auto* numeric = app.add_subcommand("verify-numeric", "numeric checks of the local system and integrals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) load_config_file(config_path, cfg);
    auto apply = [&](const char* flag, const char* key, const std::string& v) {
      if (app.count(flag)) cfg.set(key, v);
    };
    apply("--omega1", "omega1", omega1);
    apply("--omega2", "omega2", omega2);
    apply("--alpha", "alpha", alpha);
    apply("--epsilon", "epsilon", epsilon);
    apply("--out", "out", out_path);
    apply("--x0", "x0", x0);
    apply("--x1", "x1", x1);
    for (const auto& t : tols) cfg.set("tol", t);
    if (special->parsed()) cfg.set("z", z);

    Lattice L = make_lattice(cfg.omega1, cfg.omega2);
    bool failed = false;
    std::vector<json> records;
    if (special->parsed())
      records = detail::cmd_special_fns(cfg, L);
    else if (inter->parsed())
      records = detail::cmd_intersection(cfg, at_c);
    else if (conn->parsed())
      records = detail::cmd_connection(cfg, word, verify, at_c, failed);
    else if (numeric->parsed())
      records = detail::cmd_verify_numeric(cfg, L, failed);

    std::ofstream file;
    if (!cfg.output_path.empty()) {
      file.open(cfg.output_path);
      if (!file) throw Error(Errc::parse_error, "cannot write " + cfg.output_path);
    }
    std::ostream& sink = cfg.output_path.empty() ? out : file;
    for (const auto& r : records) sink << r.dump() << '\n';
    if (failed) {
      err << "verification failed\n";
      return verification;
    }
    return ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace ellhyp::cli
