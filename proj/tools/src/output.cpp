#include "aqc_cli/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "aqc/error.hpp"

namespace aqc::cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return "undefined";
}

std::string json_scalar_text(const json& v) {
  if (v.is_number()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

json cell_json(const Cell& c) {
  if (std::holds_alternative<double>(c)) {
    double v = std::get<double>(c);
    return std::isfinite(v) ? json(v) : json("undefined");
  }
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return "undefined";
}

std::vector<std::string> csv_columns(const ExperimentResult& r) {
  return r.config.output.columns.empty() ? result_columns(r.config) : r.config.output.columns;
}

json sidecar(const ExperimentResult& r) {
  json j = {{"config", r.config.to_json()}, {"columns", csv_columns(r)}};
  if (r.config.kind == Kind::Wigner) {
    j["columns"] = {"x", "p", "W"};
    j["summary"] = r.wigner->summary;
  }
  return j;
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

void write_csv(std::ostream& out, const ExperimentResult& r) {
  if (r.wigner) {
    const auto& g = r.wigner->grid;
    out << "x,p,W\r\n";
    for (Eigen::Index i = 0; i < g.x_axis.size(); ++i)
      for (Eigen::Index j = 0; j < g.p_axis.size(); ++j)
        out << format_double(g.x_axis[i]) << ',' << format_double(g.p_axis[j]) << ','
            << format_double(g.values(i, j)) << "\r\n";
    return;
  }
  auto cols = csv_columns(r);
  for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << csv_field(cols[k]);
  out << "\r\n";
  for (const auto& rec : r.records) {
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::string text;
      if (rec.swept.contains(cols[k]))
        text = json_scalar_text(rec.swept[cols[k]]);
      else if (const Cell* c = rec.find(cols[k]))
        text = cell_text(*c);
      out << (k ? "," : "") << csv_field(text);
    }
    out << "\r\n";
  }
}

json to_json(const ExperimentResult& r) {
  json j;
  j["config"] = r.config.to_json();
  if (r.wigner) {
    const auto& g = r.wigner->grid;
    json rows = json::array();
    for (Eigen::Index i = 0; i < g.values.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < g.values.cols(); ++k) row.push_back(g.values(i, k));
      rows.push_back(std::move(row));
    }
    j["wigner"] = {{"x", std::vector<double>(g.x_axis.data(), g.x_axis.data() + g.x_axis.size())},
                   {"p", std::vector<double>(g.p_axis.data(), g.p_axis.data() + g.p_axis.size())},
                   {"W", rows},
                   {"summary", r.wigner->summary}};
    return j;
  }
  json records = json::array();
  for (const auto& rec : r.records) {
    json jr;
    jr["index"] = rec.index;
    jr["parameters"] = rec.swept;
    json vals = json::object();
    for (const auto& [k, v] : rec.values) vals[k] = cell_json(v);
    jr["values"] = vals;
    if (rec.convergence)
      jr["convergence"] = {{"dim", rec.convergence->dim},
                           {"delta", rec.convergence->delta},
                           {"converged", rec.convergence->converged}};
    jr["warnings"] = rec.warnings;
    if (r.config.output.timing) jr["seconds"] = rec.seconds;
    records.push_back(std::move(jr));
  }
  j["records"] = records;
  return j;
}

std::filesystem::path sidecar_path(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  return p.replace_filename(out.stem().string() + ".config.json");
}

void emit(const ExperimentResult& r, std::ostream& fallback) {
  const bool csv = r.config.output.format == "csv";
  auto write = [&](std::ostream& os) {
    if (csv)
      write_csv(os, r);
    else
      os << to_json(r).dump(2) << '\n';
  };
  if (!r.config.output.path) {
    write(fallback);
    return;
  }
  const std::filesystem::path path = *r.config.output.path;
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error(ErrorCode::IOFailure, "cannot write '" + p.string() + "'");
    return f;
  };
  {
    std::ofstream f = open(path);
    write(f);
    if (!f) throw Error(ErrorCode::IOFailure, "write to '" + path.string() + "' failed");
  }
  if (csv) {
    std::ofstream f = open(sidecar_path(path));
    f << sidecar(r).dump(2) << '\n';
    if (!f) throw Error(ErrorCode::IOFailure, "write to sidecar failed");
  }
}

}  // namespace aqc::cli
