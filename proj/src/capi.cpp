#include "pincherle/pincherle.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "json.hpp"
#include "pincherle/errors.hpp"
#include "pincherle/fde_solutions.hpp"
#include "pincherle/laplace_branch.hpp"
#include "pincherle/special_functions.hpp"
#include "pincherle/verify.hpp"

using namespace pincherle;
using nlohmann::json;

struct pch_matrix {
  CoefficientMatrix a;
};

struct pch_fde_solution {
  FirstOrderFDE fde;
  SolutionForm form;
  std::size_t m, n;
  RootData roots;
  MellinKernel kernel;
};

struct pch_report {
  VerifyReport report;
};

namespace {

thread_local std::string last_message;
thread_local std::string last_context;

pch_status fail(pch_status s, std::string message, std::string context = {}) {
  last_message = std::move(message);
  last_context = std::move(context);
  return s;
}

template <class F>
pch_status guarded(F&& f) {
  last_message.clear();
  last_context.clear();
  try {
    f();
    return PCH_OK;
  } catch (const Error& e) {
    return fail(static_cast<pch_status>(e.code()), e.what(), e.context());
  } catch (const std::bad_alloc&) {
    return fail(PCH_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PCH_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw ParameterError(what);
}

Complex cx(pch_complex c) { return {c.re, c.im}; }
pch_complex pc(Complex c) { return {c.real(), c.imag()}; }

std::vector<Complex> cvec(const pch_complex* p, std::size_t n) {
  require(n == 0 || p != nullptr, "null parameter array");
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = cx(p[i]);
  return out;
}

std::vector<double> mults(const double* p, std::size_t n) {
  if (p == nullptr) return std::vector<double>(n, 1.0);
  return {p, p + n};
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// + 0.0 turns -0 into 0 so equal values print identically.
json jc(Complex c) { return json::array({c.real() + 0.0, c.imag() + 0.0}); }
json jcv(const std::vector<Complex>& v) {
  json a = json::array();
  for (Complex c : v) a.push_back(jc(c));
  return a;
}

json factors_json(const std::vector<GammaFactor>& fs) {
  json a = json::array();
  for (const auto& f : fs) a.push_back({{"param", jc(f.param)}, {"mult", f.mult}});
  return a;
}

MeijerOptions options_for(pch_method method) {
  MeijerOptions o;
  switch (method) {
    case PCH_METHOD_AUTO: o.method = EvalMethod::Auto; break;
    case PCH_METHOD_QUADRATURE: o.method = EvalMethod::Quadrature; break;
    case PCH_METHOD_RESIDUES: o.method = EvalMethod::Residues; break;
    case PCH_METHOD_RESIDUES_LEFT: o.method = EvalMethod::ResiduesLeft; break;
    case PCH_METHOD_RESIDUES_RIGHT: o.method = EvalMethod::ResiduesRight; break;
    default: throw ParameterError("unknown evaluation method", std::to_string(static_cast<int>(method)));
  }
  return o;
}

void fill(const EvalResult& r, pch_eval_result* out) {
  out->value = pc(r.value);
  out->err_estimate = r.err_estimate;
  out->nodes_used = r.nodes_used;
  out->method = r.method == Method::Quadrature    ? PCH_METHOD_QUADRATURE
                : r.method == Method::ResiduesLeft ? PCH_METHOD_RESIDUES_LEFT
                                                   : PCH_METHOD_RESIDUES_RIGHT;
  out->anchor = r.contour.anchor;
  out->truncation = r.contour.truncation;
  out->indented = r.contour.kind == ContourKind::Indented;
  out->detours = r.contour.detours.size();
  out->arg_z = r.arg_z;
}

GParams gparams(std::size_t m, std::size_t n, std::size_t p, std::size_t q, const pch_complex* a,
                const pch_complex* b) {
  return {m, n, p, q, cvec(a, p), cvec(b, q)};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

extern "C" {

const char* pch_version(void) { return "0.1.0"; }

const char* pch_status_name(pch_status status) {
  static thread_local std::string name;
  name = std::string(error_code_name(static_cast<ErrorCode>(status)));
  return name.c_str();
}

int pch_status_is_numerical(pch_status status) { return is_numerical_failure(static_cast<ErrorCode>(status)); }
const char* pch_last_error_message(void) { return last_message.c_str(); }
const char* pch_last_error_context(void) { return last_context.c_str(); }
void pch_string_free(char* s) { std::free(s); }

pch_status pch_log_gamma(pch_complex z, pch_complex* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = pc(log_gamma(cx(z)));
  });
}

pch_status pch_matrix_create(size_t rows, size_t cols, const pch_complex* entries, pch_matrix** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new pch_matrix{CoefficientMatrix(rows, cols, cvec(entries, rows * cols))};
  });
}

pch_status pch_matrix_from_json(const char* text, pch_matrix** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new pch_matrix{matrix_from_json(text)};
  });
}

void pch_matrix_free(pch_matrix* m) { delete m; }
size_t pch_matrix_rows(const pch_matrix* m) { return m ? m->a.rows() : 0; }
size_t pch_matrix_cols(const pch_matrix* m) { return m ? m->a.cols() : 0; }

pch_status pch_matrix_entry(const pch_matrix* m, size_t h, size_t k, pch_complex* out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "null argument");
    if (h >= m->a.rows() || k >= m->a.cols())
      throw ParameterError("matrix index out of range", std::to_string(h) + "," + std::to_string(k));
    *out = pc(m->a(h, k));
  });
}

pch_status pch_matrix_to_json(const pch_matrix* m, char** out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "null argument");
    *out = dup(matrix_to_json(m->a));
  });
}

pch_status pch_dual_json(const pch_matrix* m, int as_ode_reading, char** out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "null argument");
    *out = dup(as_ode_reading ? ode_to_json(as_ode(m->a)) : fde_to_json(as_fde(m->a)));
  });
}

pch_status pch_pfq(const pch_complex* a, size_t p, const pch_complex* b, size_t q, pch_complex z, double tol,
                   pch_complex* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    require(tol > 0.0, "tolerance must be positive");
    *out = pc(pfq(cvec(a, p), cvec(b, q), cx(z), tol));
  });
}

pch_status pch_pfq_via_g(const pch_complex* a, size_t p, const pch_complex* b, size_t q, pch_complex z, double tol,
                         pch_method method, pch_eval_result* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    require(tol > 0.0, "tolerance must be positive");
    const auto av = cvec(a, p);
    const auto bv = cvec(b, q);
    fill(pfq_via_g(av, bv, cx(z), tol, options_for(method)), out);
  });
}

pch_status pch_meijer_g(size_t m, size_t n, size_t p, size_t q, const pch_complex* a, const pch_complex* b,
                        pch_complex z, double tol, pch_method method, pch_eval_result* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    require(tol > 0.0, "tolerance must be positive");
    fill(meijer_g(gparams(m, n, p, q, a, b), cx(z), tol, options_for(method)), out);
  });
}

pch_status pch_fox_h(size_t m, size_t n, size_t p, size_t q, const pch_complex* a, const double* alpha,
                     const pch_complex* b, const double* beta, pch_complex z, double tol, pch_method method,
                     pch_eval_result* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    require(tol > 0.0, "tolerance must be positive");
    const HParams h{gparams(m, n, p, q, a, b), mults(alpha, p), mults(beta, q)};
    fill(fox_h(h, cx(z), tol, options_for(method)), out);
  });
}

pch_status pch_solve_fde(const pch_complex* p_coeffs, size_t p_len, const pch_complex* q_coeffs, size_t q_len,
                         pch_form form, size_t m, size_t n, pch_fde_solution** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const auto a0 = cvec(p_coeffs, p_len);
    const auto a1 = cvec(q_coeffs, q_len);
    const FirstOrderFDE fde = FirstOrderFDE::from_columns(a0, a1);
    SolutionForm f;
    switch (form) {
      case PCH_FORM_DIRECT: f = SolutionForm::Direct, m = 0, n = fde.p(); break;
      case PCH_FORM_REFLECTED: f = SolutionForm::Reflected, m = fde.q(), n = 0; break;
      case PCH_FORM_MIXED: f = SolutionForm::Mixed; break;
      default: throw ParameterError("unknown solution form", std::to_string(static_cast<int>(form)));
    }
    RootData roots = coefficient_roots(fde, f, m, n);
    MellinKernel kernel = gamma_quotient(roots, m, n);
    *out = new pch_fde_solution{fde, f, m, n, std::move(roots), std::move(kernel)};
  });
}

pch_status pch_fde_solution_json(const pch_fde_solution* s, char** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    json j;
    j["form"] = solution_form_name(s->form);
    j["m"] = s->m;
    j["n"] = s->n;
    j["p"] = s->fde.p();
    j["q"] = s->fde.q();
    j["P"] = jcv(s->fde.p_poly());
    j["Q"] = jcv(s->fde.q_poly());
    j["rho"] = jcv(s->roots.rho);
    j["sigma"] = jcv(s->roots.sigma);
    j["c"] = jc(s->roots.c);
    j["lead_p"] = jc(s->roots.lead_p);
    j["lead_q"] = jc(s->roots.lead_q);
    j["ratio_constant"] = jc(s->roots.ratio_constant());
    j["formula"] = kernel_formula(s->kernel);
    j["kernel"] = {{"up_left", factors_json(s->kernel.up_left)},
                   {"up_right", factors_json(s->kernel.up_right)},
                   {"down_left", factors_json(s->kernel.down_left)},
                   {"down_right", factors_json(s->kernel.down_right)},
                   {"base", jc(s->kernel.base)},
                   {"cancelled_pairs", s->kernel.cancelled_pairs}};
    *out = dup(j.dump());
  });
}

pch_status pch_fde_solution_ratio_residual(const pch_fde_solution* s, pch_complex x, double* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = fde_ratio_residual(s->kernel, s->roots, cx(x));
  });
}

void pch_fde_solution_free(pch_fde_solution* s) { delete s; }

pch_status pch_pochhammer_check(const pch_matrix* m, const pch_complex* xs, size_t count, double beta, double tol,
                                char** out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "null argument");
    require(count > 0, "at least one x is needed");
    require(tol > 0.0, "tolerance must be positive");
    const PochhammerReport rep = pochhammer_pipeline(m->a, cvec(xs, count), tol);
    json j;
    json factors = json::array();
    for (const auto& f : rep.psi.factors) factors.push_back({{"root", jc(f.root)}, {"power", jc(f.power)}});
    j["psi"] = {{"lambda", jc(rep.psi.exponent_lambda)},
                {"factors", factors},
                {"normalization", jc(rep.psi.normalization)},
                {"exp_coefficient", jc(rep.psi.exp_coefficient)}};
    j["points"] = json::array();
    double worst_oracle = 0.0;
    for (const auto& pt : rep.points) {
      json e = {{"x", jc(pt.x)}, {"f", jc(pt.f)}, {"quadrature_error", pt.quadrature_error},
                {"residual", pt.residual}};
      if (beta > 0.0) {
        const Complex want = std::exp(log_gamma(pt.x) + log_gamma(beta) - log_gamma(pt.x + beta));
        const double rel = std::abs(pt.f - want) / std::abs(want);
        e["beta_oracle"] = jc(want);
        e["beta_rel_error"] = rel;
        worst_oracle = std::max(worst_oracle, rel);
      }
      j["points"].push_back(e);
    }
    j["max_residual"] = rep.max_residual;
    j["singular_point_mismatch"] = rep.singular_point_mismatch;
    if (rep.gamma_quotient_ratio_spread) j["gamma_quotient_ratio_spread"] = *rep.gamma_quotient_ratio_spread;
    if (beta > 0.0) {
      j["beta"] = beta;
      j["max_beta_rel_error"] = worst_oracle;
    }
    *out = dup(j.dump());
  });
}

pch_status pch_dump_integrand(size_t m, size_t n, size_t p, size_t q, const pch_complex* a, const double* alpha,
                              const pch_complex* b, const double* beta, pch_complex z, size_t points, char** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    require(points >= 2, "need at least 2 points");
    const HParams h{gparams(m, n, p, q, a, b), mults(alpha, p), mults(beta, q)};
    MellinKernel k;
    if (alpha == nullptr && beta == nullptr) k = kernel_of(h.g);
    else {
      validate(h);
      k = kernel_of(h);
    }
    const auto samples = sample_integrand(k, cx(z), choose_contour(k), points);
    std::string csv = "im_s,re,im,abs\n";
    for (const auto& s : samples)
      csv += num(s.im_s) + "," + num(s.value.real()) + "," + num(s.value.imag()) + "," + num(std::abs(s.value)) + "\n";
    *out = dup(csv);
  });
}

pch_status pch_verify(const char* suite, uint64_t seed, pch_report** out) {
  return guarded([&] {
    require(suite != nullptr && out != nullptr, "null argument");
    *out = new pch_report{run_suite(suite, seed)};
  });
}

int pch_report_passed(const pch_report* r) { return r != nullptr && r->report.passed(); }

pch_status pch_report_json(const pch_report* r, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = dup(r->report.to_json());
  });
}

void pch_report_free(pch_report* r) { delete r; }

}  // extern "C"
