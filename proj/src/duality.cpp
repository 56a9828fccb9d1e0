#include "pincherle/duality.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "pincherle/errors.hpp"

namespace pincherle {
namespace {

using json = nlohmann::json;

const std::string kMinus = "−";
const std::string kDot = "·";

std::string format_real(double v) {
  std::ostringstream out;
  out << std::setprecision(15) << v;
  return out.str();
}

struct RenderedPoly {
  bool negative = false;
  bool multi_term = false;
  std::string body;  // empty when the polynomial is the constant 1
};

// `display_order` lists the powers in the order they are printed; the sign of
// the first printed coefficient is pulled out in front of the term.
RenderedPoly render_poly(const Polynomial& c, const std::vector<std::size_t>& display_order,
                         const std::function<std::string(std::size_t)>& power_text) {
  std::vector<std::size_t> powers;
  for (std::size_t h : display_order)
    if (c[h] != 0.0) powers.push_back(h);
  RenderedPoly out;
  if (powers.empty()) return out;
  const Complex first = c[powers.front()];
  out.negative = first.imag() == 0.0 && first.real() < 0.0;
  const double flip = out.negative ? -1.0 : 1.0;
  out.multi_term = powers.size() > 1;

  for (std::size_t i = 0; i < powers.size(); ++i) {
    const Complex coef = flip * c[powers[i]];
    const std::string var = power_text(powers[i]);
    const bool real = coef.imag() == 0.0;
    std::string sign;
    Complex mag = coef;
    if (real && coef.real() < 0.0) {
      sign = kMinus;
      mag = -coef;
    } else if (i > 0) {
      sign = "+";
    }
    std::string text;
    if (var.empty())
      text = format_coefficient(mag);
    else if (mag == 1.0)
      text = var;
    else
      text = format_coefficient(mag) + var;
    out.body += sign + text;
  }
  if (!out.multi_term && out.body == "1") out.body.clear();
  return out;
}

std::string render_equation(const std::vector<RenderedPoly>& terms, const std::vector<std::string>& unknowns) {
  std::string eq;
  bool first = true;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    std::string piece;
    if (t.body.empty())
      piece = unknowns[i];
    else if (t.multi_term)
      piece = "(" + t.body + ")" + kDot + unknowns[i];
    else
      piece = t.body + kDot + unknowns[i];
    if (first)
      eq += (t.negative ? kMinus : "") + piece;
    else
      eq += (t.negative ? " " + kMinus + " " : " + ") + piece;
    first = false;
  }
  if (first) eq = "0";
  return eq + " = 0";
}

json complex_json(Complex c) { return json::array({c.real() + 0.0, c.imag() + 0.0}); }

json poly_json(const Polynomial& p) {
  json arr = json::array();
  for (Complex c : p) arr.push_back(complex_json(c));
  return arr;
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParameterError("expected a number or an [re, im] pair", j.dump());
}

}  // namespace

std::string format_coefficient(Complex c) {
  if (c.imag() == 0.0) return format_real(c.real());
  if (c.real() == 0.0) return "(" + format_real(c.imag()) + "i)";
  const std::string im = c.imag() < 0.0 ? "-" + format_real(-c.imag()) : "+" + format_real(c.imag());
  return "(" + format_real(c.real()) + im + "i)";
}

CoefficientMatrix::CoefficientMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major)
    : rows_(rows), cols_(cols), entries_(std::move(row_major)) {
  if (rows_ == 0 || cols_ == 0) throw ParameterError("coefficient matrix must be at least 1x1");
  if (entries_.size() != rows_ * cols_)
    throw ParameterError("coefficient matrix: entry count does not match rows*cols",
                         std::to_string(entries_.size()) + " != " + std::to_string(rows_ * cols_));
  for (Complex c : entries_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw ParameterError("coefficient matrix: non-finite entry");
  if (is_zero(row(rows_ - 1)))
    throw DegenerateMatrixError("last row is identically zero; the ODE order is not " + std::to_string(rows_ - 1));
  if (is_zero(column(cols_ - 1)))
    throw DegenerateMatrixError("last column is identically zero; the FDE order is not " +
                                std::to_string(cols_ - 1));
}

CoefficientMatrix CoefficientMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
  if (rows.empty()) throw ParameterError("coefficient matrix must be at least 1x1");
  const std::size_t cols = rows.front().size();
  std::vector<Complex> flat;
  for (const auto& r : rows) {
    if (r.size() != cols) throw ParameterError("coefficient matrix rows have unequal lengths");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return {rows.size(), cols, std::move(flat)};
}

std::vector<Complex> CoefficientMatrix::row(std::size_t h) const {
  return {entries_.begin() + static_cast<std::ptrdiff_t>(h * cols_),
          entries_.begin() + static_cast<std::ptrdiff_t>((h + 1) * cols_)};
}

std::vector<Complex> CoefficientMatrix::column(std::size_t k) const {
  std::vector<Complex> out(rows_);
  for (std::size_t h = 0; h < rows_; ++h) out[h] = (*this)(h, k);
  return out;
}

CoefficientMatrix CoefficientMatrix::transposed() const {
  std::vector<Complex> t(entries_.size());
  for (std::size_t h = 0; h < rows_; ++h)
    for (std::size_t k = 0; k < cols_; ++k) t[k * rows_ + h] = (*this)(h, k);
  return {cols_, rows_, std::move(t)};
}

ODESpec as_ode(const CoefficientMatrix& a) {
  ODESpec ode;
  ode.order = a.ode_order();
  ode.exp_poly_degree = a.fde_order();
  for (std::size_t h = 0; h < a.rows(); ++h) ode.coefficients.push_back(a.row(h));
  return ode;
}

FDESpec as_fde(const CoefficientMatrix& a) {
  FDESpec fde;
  fde.order = a.fde_order();
  fde.poly_degree = a.ode_order();
  for (std::size_t k = 0; k < a.cols(); ++k) fde.shifted_coefficients.push_back(a.column(k));
  return fde;
}

CoefficientMatrix ODESpec::to_matrix() const {
  std::vector<Complex> flat;
  for (const auto& c : coefficients) {
    if (c.size() != exp_poly_degree + 1) throw ParameterError("ODESpec: coefficient length mismatch");
    flat.insert(flat.end(), c.begin(), c.end());
  }
  return {order + 1, exp_poly_degree + 1, std::move(flat)};
}

CoefficientMatrix FDESpec::to_matrix() const {
  const std::size_t rows = poly_degree + 1;
  const std::size_t cols = order + 1;
  if (shifted_coefficients.size() != cols) throw ParameterError("FDESpec: column count mismatch");
  std::vector<Complex> flat(rows * cols);
  for (std::size_t k = 0; k < cols; ++k) {
    if (shifted_coefficients[k].size() != rows) throw ParameterError("FDESpec: coefficient length mismatch");
    for (std::size_t h = 0; h < rows; ++h) flat[h * cols + k] = shifted_coefficients[k][h];
  }
  return {rows, cols, std::move(flat)};
}

Polynomial FDESpec::coefficient(std::size_t k) const {
  Polynomial out = taylor_shift(shifted_coefficients.at(k), static_cast<double>(k));
  out.resize(poly_degree + 1, 0.0);
  return out;
}

std::string ODESpec::render() const {
  std::vector<std::size_t> ascending(exp_poly_degree + 1);
  for (std::size_t i = 0; i < ascending.size(); ++i) ascending[i] = i;
  const auto power_text = [](std::size_t k) -> std::string {
    if (k == 0) return "";
    if (k == 1) return "e^{" + kMinus + "t}";
    return "e^{" + kMinus + std::to_string(k) + "t}";
  };
  std::vector<RenderedPoly> terms;
  std::vector<std::string> unknowns;
  for (std::size_t h = 0; h <= order; ++h) {
    if (is_zero(coefficients[h])) continue;
    terms.push_back(render_poly(coefficients[h], ascending, power_text));
    if (h == 0)
      unknowns.push_back("ψ");
    else if (h == 1)
      unknowns.push_back("ψ′");
    else if (h == 2)
      unknowns.push_back("ψ″");
    else
      unknowns.push_back("ψ^{(" + std::to_string(h) + ")}");
  }
  return render_equation(terms, unknowns);
}

std::string FDESpec::render() const {
  std::vector<std::size_t> descending(poly_degree + 1);
  for (std::size_t i = 0; i < descending.size(); ++i) descending[i] = poly_degree - i;
  const auto power_text = [](std::size_t h) -> std::string {
    if (h == 0) return "";
    if (h == 1) return "x";
    return "x^" + std::to_string(h);
  };
  std::vector<RenderedPoly> terms;
  std::vector<std::string> unknowns;
  for (std::size_t k = 0; k <= order; ++k) {
    const Polynomial c = coefficient(k);
    if (is_zero(c)) continue;
    terms.push_back(render_poly(c, descending, power_text));
    unknowns.push_back(k == 0 ? "f(x)" : "f(x+" + std::to_string(k) + ")");
  }
  return render_equation(terms, unknowns);
}

Polynomial ode_singular_polynomial(const CoefficientMatrix& a) { return a.row(a.ode_order()); }

Polynomial fde_singular_polynomial(const CoefficientMatrix& a) { return a.column(0); }

Orders orders(const CoefficientMatrix& a) {
  return {a.ode_order(), a.fde_order(), a.fde_order(), a.ode_order()};
}

CoefficientMatrix matrix_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError("matrix JSON does not parse", e.what());
  }
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw ParameterError("matrix JSON needs \"rows\", \"cols\" and \"entries\"");
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned() || !j["entries"].is_array())
    throw ParameterError("matrix JSON: rows/cols must be non-negative integers and entries an array");
  std::vector<Complex> entries;
  for (const auto& e : j["entries"]) entries.push_back(complex_from_json(e));
  return {j["rows"].get<std::size_t>(), j["cols"].get<std::size_t>(), std::move(entries)};
}

std::string matrix_to_json(const CoefficientMatrix& a) {
  json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  j["entries"] = poly_json(a.entries());
  return j.dump();
}

std::string ode_to_json(const ODESpec& ode) {
  json j;
  j["kind"] = "ode";
  j["order"] = ode.order;
  j["exp_poly_degree"] = ode.exp_poly_degree;
  j["coefficients"] = json::array();
  for (const auto& c : ode.coefficients) j["coefficients"].push_back(poly_json(c));
  j["equation"] = ode.render();
  return j.dump();
}

std::string fde_to_json(const FDESpec& fde) {
  json j;
  j["kind"] = "fde";
  j["order"] = fde.order;
  j["poly_degree"] = fde.poly_degree;
  j["shifted_coefficients"] = json::array();
  j["coefficients"] = json::array();
  for (std::size_t k = 0; k <= fde.order; ++k) {
    j["shifted_coefficients"].push_back(poly_json(fde.shifted_coefficients[k]));
    j["coefficients"].push_back(poly_json(fde.coefficient(k)));
  }
  j["equation"] = fde.render();
  return j.dump();
}

}  // namespace pincherle
