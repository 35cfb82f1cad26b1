#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ima/darmois.hpp"
#include "ima/experiments.hpp"
#include "ima/grid_map.hpp"

namespace ima {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names);
  CsvWriter& cell(const std::string& text);
  CsvWriter& cell(double x);
  CsvWriter& cell(long long x);
  CsvWriter& cell(unsigned long long x);
  CsvWriter& cell(int x) { return cell(static_cast<long long>(x)); }
  CsvWriter& cell(std::size_t x) { return cell(static_cast<unsigned long long>(x)); }
  CsvWriter& cell(bool x) { return cell(std::string(x ? "true" : "false")); }
  void end_row();

 private:
  void separator();

  std::ostream& out_;
  bool row_open_ = false;
};

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_genericity_csv(std::ostream& out, const std::vector<GenericityRow>& rows);
void write_gap_csv(std::ostream& out, const GapReport& report);
void write_reparam_csv(std::ostream& out, const ReparamReport& report);
void write_estimate_csv(std::ostream& out, const std::string& label, const ContrastEstimate& est);

/// x1, x2, marginal_cdf, marginal_pdf, conditional_cdf for every table node.
void write_darmois_tables(std::ostream& out, const DarmoisMap& dm);
/// piece, row, col, value for every entry of every block.
void write_grid_blocks(std::ostream& out, const SmoothGridMap& map);

}  // namespace ima
