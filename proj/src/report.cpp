#include "biharm/report.hpp"

#include "biharm/expr.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace biharm {

namespace {

const char* status_text(RowStatus s) {
  switch (s) {
    case RowStatus::pass: return "true";
    case RowStatus::fail: return "false";
    case RowStatus::flagged: return "flagged";
  }
  return "?";
}

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return format_double(x);
}

nlohmann::json json_num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

constexpr std::size_t kListedFailures = 20;

}  // namespace

ReportRow bound_row(std::string id, std::complex<double> z1,
                    std::optional<std::complex<double>> z2, double measured, double bound,
                    double tol) {
  ReportRow r{std::move(id), z1, z2, measured, bound, bound - measured, RowStatus::pass};
  r.status = (measured <= bound + tol) ? RowStatus::pass : RowStatus::fail;
  return r;
}

ReportRow strict_row(std::string id, std::complex<double> z1,
                     std::optional<std::complex<double>> z2, double measured, double bound) {
  ReportRow r{std::move(id), z1, z2, measured, bound, bound - measured, RowStatus::pass};
  r.status = (measured < bound) ? RowStatus::pass : RowStatus::fail;
  return r;
}

ReportRow flagged_row(std::string id, std::complex<double> z1,
                      std::optional<std::complex<double>> z2, double measured) {
  const double nan = std::nan("");
  return {std::move(id), z1, z2, measured, nan, nan, RowStatus::flagged};
}

void Report::append(const Report& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::size_t Report::count(RowStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [s](const ReportRow& r) { return r.status == s; }));
}

void write_csv(const Report& report, std::ostream& os) {
  os << "check_id,re_z1,im_z1,re_z2,im_z2,measured,bound,margin,pass\n";
  for (const auto& r : report.rows) {
    os << r.check_id << ',' << num(r.z1.real()) << ',' << num(r.z1.imag()) << ',';
    if (r.z2) os << num(r.z2->real()) << ',' << num(r.z2->imag());
    else os << ',';
    os << ',' << num(r.measured) << ',' << num(r.bound) << ',' << num(r.margin) << ','
       << status_text(r.status) << '\n';
  }
  for (const auto& n : report.notes) os << "# note: " << n << '\n';
  os << "# summary: suite=" << report.suite << " rows=" << report.rows.size()
     << " passed=" << report.count(RowStatus::pass) << " failed=" << report.count(RowStatus::fail)
     << " flagged=" << report.count(RowStatus::flagged) << '\n';
  std::size_t listed = 0;
  for (std::size_t i = 0; i < report.rows.size() && listed < kListedFailures; ++i) {
    if (report.rows[i].status != RowStatus::fail) continue;
    os << "# failure: row=" << i << " check_id=" << report.rows[i].check_id
       << " margin=" << num(report.rows[i].margin) << '\n';
    ++listed;
  }
}

void write_json(const Report& report, std::ostream& os) {
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json failures = nlohmann::json::array();
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    nlohmann::json row{
        {"check_id", r.check_id},
        {"re_z1", json_num(r.z1.real())},
        {"im_z1", json_num(r.z1.imag())},
        {"re_z2", r.z2 ? json_num(r.z2->real()) : nlohmann::json(nullptr)},
        {"im_z2", r.z2 ? json_num(r.z2->imag()) : nlohmann::json(nullptr)},
        {"measured", json_num(r.measured)},
        {"bound", json_num(r.bound)},
        {"margin", json_num(r.margin)},
        {"pass", status_text(r.status)},
    };
    rows.push_back(std::move(row));
    if (r.status == RowStatus::fail) failures.push_back({{"row", i}, {"check_id", r.check_id}});
  }
  nlohmann::json doc{
      {"suite", report.suite},
      {"rows", std::move(rows)},
      {"notes", report.notes},
      {"summary",
       {{"rows", report.rows.size()},
        {"passed", report.count(RowStatus::pass)},
        {"failed", report.count(RowStatus::fail)},
        {"flagged", report.count(RowStatus::flagged)},
        {"failures", std::move(failures)}}},
  };
  os << doc.dump(2) << '\n';
}

}  // namespace biharm
