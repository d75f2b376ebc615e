#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sbk {

/// |lhs - rhs| / (1 + max(|lhs|, |rhs|)).
[[nodiscard]] inline double relative_residual(std::complex<double> lhs, std::complex<double> rhs) {
  const double scale = 1.0 + std::max(std::abs(lhs), std::abs(rhs));
  return std::abs(lhs - rhs) / scale;
}

struct ResidualStats {
  std::string id;
  std::string formula;
  double max_residual = 0.0;
  double sum_residual = 0.0;
  std::size_t count = 0;
  std::string worst_point;

  [[nodiscard]] double mean_residual() const noexcept {
    return count == 0 ? 0.0 : sum_residual / static_cast<double>(count);
  }

  /// `describe` is only invoked when the sample becomes the new worst one.
  template <typename Describe>
  void add(double residual, Describe&& describe) {
    ++count;
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    sum_residual += residual;
    if (count == 1 || residual > max_residual) {
      max_residual = residual;
      worst_point = describe();
    }
  }

  void merge(const ResidualStats& other) {
    if (other.count == 0) return;
    if (count == 0 || other.max_residual > max_residual) {
      max_residual = other.max_residual;
      worst_point = other.worst_point;
    }
    sum_residual += other.sum_residual;
    count += other.count;
  }
};

struct IdentityReport {
  nlohmann::json config = nlohmann::json::object();
  std::vector<ResidualStats> identities;
  double max_tail_bound = 0.0;

  ResidualStats& add_identity(std::string id, std::string formula) {
    identities.push_back(ResidualStats{std::move(id), std::move(formula)});
    return identities.back();
  }

  [[nodiscard]] const ResidualStats& at(const std::string& id) const {
    for (const auto& s : identities) {
      if (s.id == id) return s;
    }
    throw std::out_of_range("IdentityReport: no identity " + id);
  }

  [[nodiscard]] double max_residual() const noexcept {
    double m = 0.0;
    for (const auto& s : identities) m = std::max(m, s.max_residual);
    return m;
  }

  [[nodiscard]] bool within(double tol) const noexcept {
    return std::all_of(identities.begin(), identities.end(),
                       [tol](const ResidualStats& s) { return s.max_residual <= tol; });
  }
};

inline nlohmann::json to_json(const IdentityReport& report, double tol) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& s : report.identities) {
    per.push_back({{"id", s.id},
                   {"eq_ref", s.formula},
                   {"max_residual", s.max_residual},
                   {"mean_residual", s.mean_residual()},
                   {"count", s.count},
                   {"worst_point", s.worst_point}});
  }
  return {{"config", report.config},
          {"per_identity", std::move(per)},
          {"max_tail_bound", report.max_tail_bound},
          {"verdict",
           {{"tolerance", tol},
            {"max_residual", report.max_residual()},
            {"pass", report.within(tol)}}}};
}

/// Formats a double with 17 significant digits (exact round trip).
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv(std::ostream& os, const IdentityReport& report) {
  os << "id,eq_ref,max_residual,mean_residual,count,worst_point\n";
  for (const auto& s : report.identities) {
    os << s.id << ',' << csv_quote(s.formula) << ',' << format_double(s.max_residual) << ','
       << format_double(s.mean_residual()) << ',' << s.count << ',' << csv_quote(s.worst_point)
       << '\n';
  }
}

}  // namespace sbk
