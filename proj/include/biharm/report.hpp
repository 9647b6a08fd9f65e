#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace biharm {

enum class RowStatus { pass, fail, flagged };

struct ReportRow {
  std::string check_id;  // "<suite>/<check>[/<qualifier>]"
  std::complex<double> z1{};
  std::optional<std::complex<double>> z2;
  double measured = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - measured
  RowStatus status = RowStatus::pass;
};

// measured <= bound + tol
ReportRow bound_row(std::string id, std::complex<double> z1,
                    std::optional<std::complex<double>> z2, double measured, double bound,
                    double tol);
// measured < bound, strictly
ReportRow strict_row(std::string id, std::complex<double> z1,
                     std::optional<std::complex<double>> z2, double measured, double bound);
ReportRow flagged_row(std::string id, std::complex<double> z1,
                      std::optional<std::complex<double>> z2, double measured);

struct Report {
  std::string suite;
  std::vector<ReportRow> rows;
  std::vector<std::string> notes;

  void add(ReportRow row) { rows.push_back(std::move(row)); }
  void append(const Report& other);

  std::size_t count(RowStatus s) const;
  bool ok() const { return count(RowStatus::fail) == 0; }
};

// Columns: check_id, re_z1, im_z1, re_z2, im_z2, measured, bound, margin, pass.
// Notes and the summary footer are '#' comment lines.
void write_csv(const Report& report, std::ostream& os);
void write_json(const Report& report, std::ostream& os);

}  // namespace biharm
