// pincherle: command-line front end over the C interface.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pincherle/pincherle.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParameter = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUsage = 64;

// Thrown for bad input detected by the CLI itself; reported like a
// library ParameterError.
struct InputError {
  std::string message;
  std::string context;
  bool usage = false;  // missing or malformed flag: exit 64
};

// Carries a failing status out of the command body.
struct StatusError {
  pch_status status;
  std::string message;
  std::string context;
};

void check(pch_status s) {
  if (s != PCH_OK) throw StatusError{s, pch_last_error_message(), pch_last_error_context()};
}

struct CString {
  char* p = nullptr;
  ~CString() { pch_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) throw InputError{"not a real number", text};
  return v;
}

// "1.5", "-2i", "1+2i", "1e-3-4.5i"
pch_complex parse_complex(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw InputError{"empty complex number", text};
  if (t.back() != 'i' && t.back() != 'j') return {parse_real(t), 0.0};
  t.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto imag = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split == std::string::npos) return {0.0, imag(t)};
  return {parse_real(t.substr(0, split)), imag(t.substr(split))};
}

std::vector<std::string> split_commas(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      if (trim(piece).empty()) continue;
      out.push_back(piece);
    }
  }
  return out;
}

std::vector<pch_complex> complex_list(const std::vector<std::string>& items) {
  std::vector<pch_complex> out;
  for (const auto& s : split_commas(items)) out.push_back(parse_complex(s));
  return out;
}

std::vector<double> real_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& s : split_commas(items)) out.push_back(parse_real(s));
  return out;
}

// A single complex argument: "re", "re,im" or "re+imi".
pch_complex complex_arg(const std::string& text) {
  const auto parts = split_commas({text});
  if (parts.size() == 2) return {parse_real(parts[0]), parse_real(parts[1])};
  if (parts.size() == 1) return parse_complex(parts[0]);
  throw InputError{"expected re, re,im or a+bi", text};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot read file", path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json jc(pch_complex c) { return json::array({c.re + 0.0, c.im + 0.0}); }

std::string method_text(pch_method m) {
  switch (m) {
    case PCH_METHOD_QUADRATURE: return "quadrature";
    case PCH_METHOD_RESIDUES_LEFT: return "residues_left";
    case PCH_METHOD_RESIDUES_RIGHT: return "residues_right";
    default: return "auto";
  }
}

json eval_json(const pch_eval_result& r) {
  return {{"value", jc(r.value)},
          {"err_estimate", r.err_estimate},
          {"method", method_text(r.method)},
          {"nodes_used", r.nodes_used},
          {"arg_z", r.arg_z},
          {"contour",
           {{"kind", r.indented ? "indented" : "vertical"},
            {"anchor", r.anchor},
            {"truncation", r.truncation},
            {"detours", r.detours}}}};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string complex_text(pch_complex c) {
  return fmt(c.re) + (c.im < 0 || std::signbit(c.im) ? " - " : " + ") + fmt(std::abs(c.im)) + "i";
}

// Turns a --params JSON object into extra flags. Flags given on the command
// line win over the file.
std::vector<std::string> params_to_args(const std::string& path, const std::vector<std::string>& argv) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError{"params file does not parse", e.what()};
  }
  if (!j.is_object()) throw InputError{"params file must hold a JSON object", path};
  const auto scalar = [](const json& v) -> std::string {
    if (v.is_number()) return fmt(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      return fmt(v[0].get<double>()) + (v[1].get<double>() < 0 ? "" : "+") + fmt(v[1].get<double>()) + "i";
    throw InputError{"unsupported value in params file", v.dump()};
  };
  std::vector<std::string> extra;
  for (const auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : argv) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
    if (given) continue;
    if (key == "x" && value.is_array()) {  // one evaluation point per element
      for (const auto& v : value) {
        extra.push_back(flag);
        extra.push_back(scalar(v));
      }
      continue;
    }
    std::string text;
    if (value.is_array() && !(value.size() == 2 && value[0].is_number() && value[1].is_number() && key == "z")) {
      for (const auto& v : value) text += (text.empty() ? "" : ",") + scalar(v);
    } else {
      text = scalar(value);
    }
    extra.push_back(flag);
    extra.push_back(text);
  }
  return extra;
}

struct Common {
  std::string output = "json";
  double tol = 1e-12;
  std::string params;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--output", c.output, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app->add_option("--tol", c.tol, "target relative accuracy")->check(CLI::PositiveNumber);
  app->add_option("--params", c.params, "JSON file with the same fields as the flags");
}

CLI::Option* list_option(CLI::App* app, const std::string& name, std::vector<std::string>& into,
                         const std::string& help) {
  return app->add_option(name, into, help)->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->allow_extra_args(false);
}

pch_method parse_method(const std::string& m) {
  if (m == "auto") return PCH_METHOD_AUTO;
  if (m == "quad") return PCH_METHOD_QUADRATURE;
  if (m == "residues") return PCH_METHOD_RESIDUES;
  if (m == "residues-left") return PCH_METHOD_RESIDUES_LEFT;
  return PCH_METHOD_RESIDUES_RIGHT;
}

std::vector<std::size_t> orders_arg(const std::vector<std::string>& items) {
  std::vector<std::size_t> out;
  for (const auto& s : split_commas(items)) {
    const double v = parse_real(s);
    if (v < 0 || v != std::floor(v)) throw InputError{"orders must be non-negative integers", s};
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.size() != 4) throw InputError{"--orders needs m,n,p,q", std::to_string(out.size()) + " values", true};
  return out;
}

void print_eval(const Common& c, const pch_eval_result& r) {
  if (c.output == "json") {
    std::cout << eval_json(r).dump(2) << "\n";
  } else if (c.output == "csv") {
    std::cout << "re,im,err_estimate,method,nodes_used\n"
              << fmt(r.value.re) << "," << fmt(r.value.im) << "," << fmt(r.err_estimate) << ","
              << method_text(r.method) << "," << r.nodes_used << "\n";
  } else {
    std::cout << complex_text(r.value) << "  (err " << fmt(r.err_estimate) << ", " << method_text(r.method) << ")\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gamma-quotient solutions of difference equations and Mellin-Barnes evaluation of pFq, Meijer G "
               "and Fox H functions."};
  app.name("pincherle");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pch_version()));

  // eval ---------------------------------------------------------------------
  Common c_pfq, c_g, c_h, c_dual, c_solve, c_poch, c_dump, c_verify;
  auto* eval = app.add_subcommand("eval", "evaluate pFq, Meijer G or Fox H");
  eval->require_subcommand(1);

  std::vector<std::string> num, den;
  std::string z_pfq, method_pfq = "auto";
  auto* pfq = eval->add_subcommand("pfq", "generalized hypergeometric function");
  list_option(pfq, "--num", num, "numerator parameters a1,a2,...");
  list_option(pfq, "--den", den, "denominator parameters b1,...");
  pfq->add_option("--z", z_pfq, "argument: re, re,im or a+bi");
  pfq->add_option("--method", method_pfq, "auto, series, quad or residues")
      ->check(CLI::IsMember({"auto", "series", "quad", "residues"}));
  add_common(pfq, c_pfq);

  std::vector<std::string> orders_g, a_g, b_g;
  std::string z_g, method_g = "auto";
  auto* g = eval->add_subcommand("g", "Meijer G function");
  list_option(g, "--orders", orders_g, "m,n,p,q");
  list_option(g, "--a", a_g, "a1,...,ap");
  list_option(g, "--b", b_g, "b1,...,bq");
  g->add_option("--z", z_g, "argument: re, re,im or a+bi");
  g->add_option("--method", method_g, "auto, quad, residues, residues-left or residues-right")
      ->check(CLI::IsMember({"auto", "quad", "residues", "residues-left", "residues-right"}));
  add_common(g, c_g);

  std::vector<std::string> orders_h, a_h, b_h, alpha_h, beta_h;
  std::string z_h, method_h = "auto";
  auto* h = eval->add_subcommand("h", "Fox H function");
  list_option(h, "--orders", orders_h, "m,n,p,q");
  list_option(h, "--a", a_h, "a1,...,ap");
  list_option(h, "--alpha", alpha_h, "positive multipliers of a (default 1)");
  list_option(h, "--b", b_h, "b1,...,bq");
  list_option(h, "--beta", beta_h, "positive multipliers of b (default 1)");
  h->add_option("--z", z_h, "argument: re, re,im or a+bi");
  h->add_option("--method", method_h, "auto, quad, residues, residues-left or residues-right")
      ->check(CLI::IsMember({"auto", "quad", "residues", "residues-left", "residues-right"}));
  add_common(h, c_h);

  // dual ---------------------------------------------------------------------
  std::string matrix_dual, as = "fde";
  auto* dual = app.add_subcommand("dual", "read a coefficient matrix as an ODE or a difference equation");
  dual->add_option("--matrix", matrix_dual, "matrix JSON file");
  dual->add_option("--as", as, "ode or fde")->check(CLI::IsMember({"ode", "fde"}));
  add_common(dual, c_dual);

  // solve-fde ----------------------------------------------------------------
  std::vector<std::string> p_coeffs, q_coeffs;
  std::string form = "direct";
  std::size_t m_fde = 0, n_fde = 0;
  auto* solve = app.add_subcommand("solve-fde", "gamma-quotient solution of P(x) f(x) + Q(x) f(x+1) = 0");
  list_option(solve, "--p-coeffs", p_coeffs, "a[h][0], coefficients of x^h");
  list_option(solve, "--q-coeffs", q_coeffs, "a[h][1], coefficients of (x+1)^h");
  solve->add_option("--form", form, "direct, reflected or mixed (also 3.4, 3.5, 3.6)")
      ->check(CLI::IsMember({"direct", "reflected", "mixed", "3.4", "3.5", "3.6"}));
  solve->add_option("--m", m_fde, "number of sigma roots in the numerator (mixed form)");
  solve->add_option("--n", n_fde, "number of rho roots in the numerator (mixed form)");
  add_common(solve, c_solve);

  // pochhammer-check ---------------------------------------------------------
  std::string matrix_poch;
  std::vector<std::string> xs_poch;
  double beta_poch = 0.0;
  auto* poch = app.add_subcommand("pochhammer-check", "ODE -> psi -> Laplace transform -> difference equation");
  poch->add_option("--matrix", matrix_poch, "two-row matrix JSON file");
  list_option(poch, "--x", xs_poch, "evaluation point re[,im], repeatable (default 1.5 and 2.5)");
  poch->add_option("--beta", beta_poch, "compare with the Beta function B(x, beta); alone, builds its matrix")
      ->check(CLI::PositiveNumber);
  add_common(poch, c_poch);

  // dump-integrand -----------------------------------------------------------
  std::vector<std::string> orders_d, a_d, b_d, alpha_d, beta_d;
  std::string z_d, out_d;
  std::size_t points = 201;
  auto* dump = app.add_subcommand("dump-integrand", "CSV samples of K(s) z^s along the contour");
  list_option(dump, "--orders", orders_d, "m,n,p,q");
  list_option(dump, "--a", a_d, "a1,...,ap");
  list_option(dump, "--b", b_d, "b1,...,bq");
  list_option(dump, "--alpha", alpha_d, "Fox H multipliers of a");
  list_option(dump, "--beta", beta_d, "Fox H multipliers of b");
  dump->add_option("--z", z_d, "argument");
  dump->add_option("--out", out_d, "CSV file (default stdout)");
  dump->add_option("--points", points, "number of samples")->check(CLI::Range(2, 10000000));
  add_common(dump, c_dump);

  // verify -------------------------------------------------------------------
  std::string suite;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("--suite", suite, "gamma, duality, fde, laplace, mb, special or all")
      ->required()
      ->check(CLI::IsMember({"gamma", "duality", "fde", "laplace", "mb", "special", "all"}));
  verify->add_option("--seed", seed, "random seed");
  add_common(verify, c_verify);

  const std::vector<std::string> raw(argv + 1, argv + argc);
  const auto output_requested = [&] {
    for (std::size_t i = 0; i + 1 < raw.size(); ++i)
      if (raw[i] == "--output") return raw[i + 1];
    for (const auto& a : raw)
      if (a.rfind("--output=", 0) == 0) return a.substr(9);
    return std::string("json");
  };
  const auto report_error = [&](const std::string& code, const std::string& message, const std::string& context) {
    if (output_requested() == "json")
      std::cout << json{{"code", code}, {"message", message}, {"context", context}}.dump(2) << "\n";
    else
      std::cerr << "error: " << code << ": " << message << (context.empty() ? "" : " (" + context + ")") << "\n";
  };

  std::vector<std::string> args = raw;
  try {
    for (std::size_t i = 0; i + 1 < raw.size(); ++i)
      if (raw[i] == "--params") {
        const auto extra = params_to_args(raw[i + 1], raw);
        args.insert(args.end(), extra.begin(), extra.end());
      }
  } catch (const InputError& e) {
    report_error("ParameterError", e.message, e.context);
    return kExitParameter;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    std::cout << pch_version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error("UsageError", e.what(), "");
    const CLI::App* sub = &app;
    for (auto* s : app.get_subcommands()) {
      sub = s;
      for (auto* s2 : s->get_subcommands()) sub = s2;
    }
    std::cerr << sub->help();
    return kExitUsage;
  }

  try {
    if (pfq->parsed()) {
      const Common& c = c_pfq;
      if (z_pfq.empty()) throw InputError{"--z is required", "", true};
      const auto a = complex_list(num);
      const auto b = complex_list(den);
      const pch_complex z = complex_arg(z_pfq);
      std::optional<pch_eval_result> mb;
      pch_complex value{};
      std::string used = method_pfq;
      const double r = std::hypot(z.re, z.im);
      const bool series_ok = a.size() <= b.size() || (a.size() == b.size() + 1 && r < 1.0);
      if (method_pfq == "series" || (method_pfq == "auto" && series_ok)) {
        check(pch_pfq(a.data(), a.size(), b.data(), b.size(), z, c.tol, &value));
        used = "series";
      } else {
        pch_eval_result res{};
        const pch_method m = method_pfq == "quad" ? PCH_METHOD_QUADRATURE
                             : method_pfq == "residues" ? PCH_METHOD_RESIDUES
                                                        : PCH_METHOD_AUTO;
        check(pch_pfq_via_g(a.data(), a.size(), b.data(), b.size(), z, c.tol, m, &res));
        mb = res;
        value = res.value;
      }
      if (c.output == "json") {
        json j = mb ? eval_json(*mb) : json{{"value", jc(value)}, {"method", "series"}};
        if (mb) j["route"] = "meijer_g";
        std::cout << j.dump(2) << "\n";
      } else if (c.output == "csv") {
        std::cout << "re,im,method\n" << fmt(value.re) << "," << fmt(value.im) << "," << used << "\n";
      } else {
        std::cout << complex_text(value) << "\n";
      }
    } else if (g->parsed() || h->parsed()) {
      const bool is_h = h->parsed();
      const Common& c = is_h ? c_h : c_g;
      const std::string& zt = is_h ? z_h : z_g;
      if (zt.empty()) throw InputError{"--z is required", "", true};
      const auto ord = orders_arg(is_h ? orders_h : orders_g);
      const auto a = complex_list(is_h ? a_h : a_g);
      const auto b = complex_list(is_h ? b_h : b_g);
      if (a.size() != ord[2] || b.size() != ord[3])
        throw InputError{"parameter counts must match p and q",
                         "p=" + std::to_string(a.size()) + " q=" + std::to_string(b.size())};
      const pch_method method = parse_method(is_h ? method_h : method_g);
      pch_eval_result r{};
      if (is_h) {
        const auto alpha = real_list(alpha_h);
        const auto beta = real_list(beta_h);
        if ((!alpha.empty() && alpha.size() != a.size()) || (!beta.empty() && beta.size() != b.size()))
          throw InputError{"multiplier counts must match p and q", ""};
        check(pch_fox_h(ord[0], ord[1], ord[2], ord[3], a.data(), alpha.empty() ? nullptr : alpha.data(), b.data(),
                        beta.empty() ? nullptr : beta.data(), complex_arg(zt), c.tol, method, &r));
      } else {
        check(pch_meijer_g(ord[0], ord[1], ord[2], ord[3], a.data(), b.data(), complex_arg(zt), c.tol, method, &r));
      }
      print_eval(c, r);
    } else if (dual->parsed()) {
      if (matrix_dual.empty()) throw InputError{"--matrix is required", "", true};
      std::unique_ptr<pch_matrix, decltype(&pch_matrix_free)> m(nullptr, pch_matrix_free);
      pch_matrix* raw_m = nullptr;
      check(pch_matrix_from_json(read_file(matrix_dual).c_str(), &raw_m));
      m.reset(raw_m);
      CString spec;
      check(pch_dual_json(m.get(), as == "ode", &spec.p));
      const json j = json::parse(spec.str());
      if (c_dual.output == "text") {
        std::cout << j["equation"].get<std::string>() << "\n";
      } else {
        CString mj;
        check(pch_matrix_to_json(m.get(), &mj.p));
        json out = {{"matrix", json::parse(mj.str())}, {"reading", j}};
        std::cout << out.dump(2) << "\n";
      }
    } else if (solve->parsed()) {
      const auto pc = complex_list(p_coeffs);
      const auto qc = complex_list(q_coeffs);
      if (pc.empty() || qc.empty()) throw InputError{"--p-coeffs and --q-coeffs are required", "", true};
      const pch_form f = (form == "direct" || form == "3.4")      ? PCH_FORM_DIRECT
                         : (form == "reflected" || form == "3.5") ? PCH_FORM_REFLECTED
                                                                  : PCH_FORM_MIXED;
      pch_fde_solution* raw_s = nullptr;
      check(pch_solve_fde(pc.data(), pc.size(), qc.data(), qc.size(), f, m_fde, n_fde, &raw_s));
      std::unique_ptr<pch_fde_solution, decltype(&pch_fde_solution_free)> s(raw_s, pch_fde_solution_free);
      CString sj;
      check(pch_fde_solution_json(s.get(), &sj.p));
      json j = json::parse(sj.str());
      const pch_complex probe{0.37, 0.21};
      double residual = 0.0;
      if (pch_fde_solution_ratio_residual(s.get(), probe, &residual) == PCH_OK)
        j["ratio_residual"] = {{"x", jc(probe)}, {"residual", residual}};
      if (c_solve.output == "text")
        std::cout << j["formula"].get<std::string>() << "\n";
      else
        std::cout << j.dump(2) << "\n";
    } else if (poch->parsed()) {
      std::string text;
      if (!matrix_poch.empty()) {
        text = read_file(matrix_poch);
      } else if (beta_poch > 0.0) {
        text = json{{"rows", 2}, {"cols", 2}, {"entries", {{0, 0}, {-(beta_poch - 1.0), 0}, {1, 0}, {-1, 0}}}}.dump();
      } else {
        throw InputError{"give --matrix, --beta or both", "", true};
      }
      pch_matrix* raw_m = nullptr;
      check(pch_matrix_from_json(text.c_str(), &raw_m));
      std::unique_ptr<pch_matrix, decltype(&pch_matrix_free)> m(raw_m, pch_matrix_free);
      std::vector<pch_complex> xs;
      for (const auto& x : xs_poch) xs.push_back(complex_arg(x));
      if (xs.empty()) xs = {{1.5, 0.0}, {2.5, 0.0}};
      CString rep;
      check(pch_pochhammer_check(m.get(), xs.data(), xs.size(), beta_poch, std::min(c_poch.tol, 1e-10), &rep.p));
      json j = json::parse(rep.str());
      const double threshold = 1e-6;
      bool ok = j["max_residual"].get<double>() < threshold;
      if (j.contains("max_beta_rel_error")) ok = ok && j["max_beta_rel_error"].get<double>() < threshold;
      j["threshold"] = threshold;
      j["passed"] = ok;
      if (c_poch.output == "text")
        std::cout << (ok ? "passed" : "FAILED") << ": max residual " << fmt(j["max_residual"].get<double>())
                  << "\n";
      else
        std::cout << j.dump(2) << "\n";
      if (!ok) return kExitNumerical;
    } else if (dump->parsed()) {
      if (z_d.empty()) throw InputError{"--z is required", "", true};
      const auto ord = orders_arg(orders_d);
      const auto a = complex_list(a_d);
      const auto b = complex_list(b_d);
      if (a.size() != ord[2] || b.size() != ord[3]) throw InputError{"parameter counts must match p and q", ""};
      const auto alpha = real_list(alpha_d);
      const auto beta = real_list(beta_d);
      const bool fox = !alpha.empty() || !beta.empty();
      std::vector<double> al = alpha.empty() ? std::vector<double>(a.size(), 1.0) : alpha;
      std::vector<double> be = beta.empty() ? std::vector<double>(b.size(), 1.0) : beta;
      if (al.size() != a.size() || be.size() != b.size())
        throw InputError{"multiplier counts must match p and q", ""};
      CString csv;
      check(pch_dump_integrand(ord[0], ord[1], ord[2], ord[3], a.data(), fox ? al.data() : nullptr, b.data(),
                               fox ? be.data() : nullptr, complex_arg(z_d), points, &csv.p));
      if (out_d.empty()) {
        std::cout << csv.str();
      } else {
        std::ofstream f(out_d, std::ios::binary);
        if (!f) throw InputError{"cannot write file", out_d};
        f << csv.str();
        if (c_dump.output == "json") std::cout << json{{"out", out_d}, {"points", points}}.dump(2) << "\n";
      }
    } else if (verify->parsed()) {
      pch_report* raw_r = nullptr;
      check(pch_verify(suite.c_str(), seed, &raw_r));
      std::unique_ptr<pch_report, decltype(&pch_report_free)> r(raw_r, pch_report_free);
      CString rj;
      check(pch_report_json(r.get(), &rj.p));
      if (c_verify.output == "text") {
        const json j = json::parse(rj.str());
        for (const auto& ch : j["checks"])
          std::cout << (ch["passed"].get<bool>() ? "PASS " : "FAIL ") << ch["name"].get<std::string>() << "  max "
                    << (ch["max_residual"].is_number() ? fmt(ch["max_residual"].get<double>()) : "inf") << " <= "
                    << fmt(ch["threshold"].get<double>()) << "\n";
      } else {
        std::cout << rj.str() << "\n";
      }
      if (!pch_report_passed(r.get())) return kExitNumerical;
    }
  } catch (const InputError& e) {
    report_error(e.usage ? "UsageError" : "ParameterError", e.message, e.context);
    return e.usage ? kExitUsage : kExitParameter;
  } catch (const StatusError& e) {
    report_error(pch_status_name(e.status), e.message, e.context);
    return pch_status_is_numerical(e.status) ? kExitNumerical : kExitParameter;
  }
  return kExitOk;
}
