#pragma once

// File formats: signal CSV, model and tuple JSON, FEVAL table CSV.

#include <complex>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardy/errors.hpp"
#include "hardy/feval.hpp"
#include "hardy/signal.hpp"
#include "hardy/takenaka.hpp"

namespace hardy::io {

namespace detail {

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("line " + std::to_string(line) + ": not a number: '" + s + "'");
  }
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  return out;
}

inline nlohmann::json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_number() || !j["im"].is_number()) {
    throw ValidationError("expected an object {re, im}");
  }
  return {j["re"].get<double>(), j["im"].get<double>()};
}

inline std::vector<Complex> complex_list(const nlohmann::json& j, const char* field) {
  if (!j.is_array()) throw ValidationError(std::string("'") + field + "' must be a list of {re, im}");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

inline nlohmann::json parse_json(std::istream& in) {
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace detail

/// Header `index,re,im`, rows 0..N-1 in order.
inline Signal read_signal_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("signal file is empty");
  const auto header = detail::split_csv(line);
  if (header != std::vector<std::string>{"index", "re", "im"}) {
    throw ValidationError("signal file header must be 'index,re,im'");
  }
  std::vector<Complex> values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv(line);
    if (cells.size() != 3) throw ValidationError("line " + std::to_string(lineno) + ": expected 3 columns");
    const double idx = detail::parse_double(cells[0], lineno);
    if (idx != static_cast<double>(values.size())) {
      throw ValidationError("line " + std::to_string(lineno) + ": expected index " + std::to_string(values.size()));
    }
    values.emplace_back(detail::parse_double(cells[1], lineno), detail::parse_double(cells[2], lineno));
  }
  return Signal(std::move(values));
}

inline Signal read_signal_csv(const std::string& path) {
  auto in = detail::open_in(path);
  return read_signal_csv(in);
}

inline void write_signal_csv(std::ostream& out, const Signal& f) {
  out << "index,re,im\n";
  for (std::size_t j = 0; j < f.size(); ++j) {
    out << j << ',' << detail::format_double(f[j].real()) << ',' << detail::format_double(f[j].imag()) << '\n';
  }
}

inline void write_signal_csv(const std::string& path, const Signal& f) {
  auto out = detail::open_out(path);
  write_signal_csv(out, f);
}

inline nlohmann::json model_to_json(const BlaschkeModel& m) {
  nlohmann::json poles = nlohmann::json::array(), coeffs = nlohmann::json::array();
  for (const auto& a : m.tuple.poles()) poles.push_back(detail::complex_to_json(a));
  for (const auto& c : m.coeffs) coeffs.push_back(detail::complex_to_json(c));
  return {{"degree", m.tuple.size()}, {"poles", poles}, {"coeffs", coeffs}, {"residual_error", m.residual_error}};
}

inline BlaschkeModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("model must be a JSON object");
  for (const char* key : {"degree", "poles", "coeffs", "residual_error"}) {
    if (!j.contains(key)) throw ValidationError(std::string("model is missing '") + key + "'");
  }
  if (!j["degree"].is_number_unsigned()) throw ValidationError("model 'degree' must be a nonnegative integer");
  if (!j["residual_error"].is_number()) throw ValidationError("model 'residual_error' must be a number");
  auto poles = detail::complex_list(j["poles"], "poles");
  auto coeffs = detail::complex_list(j["coeffs"], "coeffs");
  if (poles.size() != j["degree"].get<std::size_t>()) throw ValidationError("model 'degree' differs from pole count");
  return BlaschkeModel(PoleTuple(std::move(poles)), std::move(coeffs), j["residual_error"].get<double>());
}

inline void write_model(std::ostream& out, const BlaschkeModel& m) { out << model_to_json(m).dump(2) << '\n'; }

inline void write_model(const std::string& path, const BlaschkeModel& m) {
  auto out = detail::open_out(path);
  write_model(out, m);
}

inline BlaschkeModel read_model(std::istream& in) { return model_from_json(detail::parse_json(in)); }

inline BlaschkeModel read_model(const std::string& path) {
  auto in = detail::open_in(path);
  return read_model(in);
}

/// A ground-truth tuple: either a bare list of {re, im} or an object with a
/// `poles` list (so a model file also works).
inline PoleTuple tuple_from_json(const nlohmann::json& j) {
  if (j.is_array()) return PoleTuple(detail::complex_list(j, "poles"));
  if (j.is_object() && j.contains("poles")) return PoleTuple(detail::complex_list(j["poles"], "poles"));
  throw ValidationError("tuple file must be a list of {re, im} or an object with 'poles'");
}

inline PoleTuple read_tuple(const std::string& path) {
  auto in = detail::open_in(path);
  return tuple_from_json(detail::parse_json(in));
}

inline void write_tuple(const std::string& path, const PoleTuple& t) {
  nlohmann::json poles = nlohmann::json::array();
  for (const auto& a : t.poles()) poles.push_back(detail::complex_to_json(a));
  auto out = detail::open_out(path);
  out << nlohmann::json{{"poles", poles}}.dump(2) << '\n';
}

/// One row per node: ring m, angle index n, node coordinates, table value.
inline void write_feval_csv(std::ostream& out, const PolarGrid& grid, const InnerProductTable& table) {
  out << "m,n,z_re,z_im,re,im\n";
  for (std::size_t m = 1; m <= grid.rings(); ++m) {
    for (std::size_t n = 1; n <= grid.angular_divisions(); ++n) {
      const Complex z = grid.node(m, n);
      const Complex v = table.at(m, n);
      out << m << ',' << n << ',' << detail::format_double(z.real()) << ',' << detail::format_double(z.imag()) << ','
          << detail::format_double(v.real()) << ',' << detail::format_double(v.imag()) << '\n';
    }
  }
}

inline void write_feval_csv(const std::string& path, const PolarGrid& grid, const InnerProductTable& table) {
  auto out = detail::open_out(path);
  write_feval_csv(out, grid, table);
}

}  // namespace hardy::io
