#include "ima/csv.hpp"

#include <charconv>
#include <cmath>

namespace ima {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (const auto& n : names) cell(n);
  end_row();
}

void CsvWriter::separator() {
  if (row_open_) out_ << ',';
  row_open_ = true;
}

CsvWriter& CsvWriter::cell(const std::string& text) {
  separator();
  if (text.find_first_of(",\"\n") == std::string::npos) {
    out_ << text;
    return *this;
  }
  out_ << '"';
  for (char c : text) {
    if (c == '"') out_ << '"';
    out_ << c;
  }
  out_ << '"';
  return *this;
}

CsvWriter& CsvWriter::cell(double x) {
  separator();
  out_ << format_double(x);
  return *this;
}

CsvWriter& CsvWriter::cell(long long x) {
  separator();
  out_ << x;
  return *this;
}

CsvWriter& CsvWriter::cell(unsigned long long x) {
  separator();
  out_ << x;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_open_ = false;
}

namespace {

void sweep_cells(CsvWriter& w, const SweepRow& r) {
  w.cell(r.m).cell(r.d).cell(r.delta).cell(r.trials).cell(r.successes).cell(r.empirical_success)
      .cell(r.success_stderr).cell(r.theoretical_bound_at_kappa).cell(r.kappa_used).cell(r.mean_contrast);
}

const std::vector<std::string> kSweepColumns{
    "m", "d", "delta", "trials", "successes", "empirical_success", "success_stderr",
    "theoretical_bound_at_kappa", "kappa_used", "mean_contrast"};

const std::vector<std::string> kEstimateColumns{
    "label", "mean", "stderr", "n_samples", "rejected", "clamp_count", "cdf_clamps"};

void estimate_cells(CsvWriter& w, const std::string& label, const ContrastEstimate& e) {
  w.cell(label).cell(e.mean).cell(e.std_error).cell(e.n_samples).cell(e.rejected).cell(e.clamp_count)
      .cell(e.cdf_clamps);
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  CsvWriter w(out);
  w.header(kSweepColumns);
  for (const auto& r : rows) {
    sweep_cells(w, r);
    w.end_row();
  }
}

void write_genericity_csv(std::ostream& out, const std::vector<GenericityRow>& rows) {
  CsvWriter w(out);
  auto cols = kSweepColumns;
  for (const char* c : {"grid_delta", "eps", "n_mc", "boundary_draws", "total_draws", "boundary_fraction",
                        "expected_boundary_fraction", "boundary_fraction_stderr",
                        "mean_boundary_contribution", "warning"}) {
    cols.emplace_back(c);
  }
  w.header(cols);
  for (const auto& r : rows) {
    sweep_cells(w, r.sweep);
    w.cell(r.grid_delta).cell(r.eps).cell(r.n_mc).cell(r.boundary_draws).cell(r.total_draws)
        .cell(r.boundary_fraction).cell(r.expected_boundary_fraction).cell(r.boundary_fraction_stderr)
        .cell(r.mean_boundary_contribution).cell(r.warning);
    w.end_row();
  }
}

void write_gap_csv(std::ostream& out, const GapReport& report) {
  CsvWriter w(out);
  auto cols = kEstimateColumns;
  cols.emplace_back("flag");
  w.header(cols);
  const auto row = [&](const std::string& label, const ContrastEstimate& e, bool flag) {
    estimate_cells(w, label, e);
    w.cell(flag);
    w.end_row();
  };
  row("truth_mpa", report.truth_mpa, report.truth_ok);
  row("spurious_mpa", report.spurious_mpa, report.mpa_gap);
  row("truth_darmois", report.truth_darmois, report.truth_ok);
  row("spurious_darmois", report.spurious_darmois, report.darmois_gap);
  w.cell(std::string("pass")).cell(report.darmois_mass);
  for (int i = 0; i < 5; ++i) w.cell(std::string());
  w.cell(report.pass);
  w.end_row();
}

void write_reparam_csv(std::ostream& out, const ReparamReport& report) {
  CsvWriter w(out);
  w.header({"original_mean", "original_stderr", "transformed_mean", "transformed_stderr", "difference",
            "combined_stderr", "pass"});
  w.cell(report.original.mean).cell(report.original.std_error).cell(report.transformed.mean)
      .cell(report.transformed.std_error).cell(report.difference).cell(report.combined_stderr)
      .cell(report.pass);
  w.end_row();
}

void write_estimate_csv(std::ostream& out, const std::string& label, const ContrastEstimate& est) {
  CsvWriter w(out);
  w.header(kEstimateColumns);
  estimate_cells(w, label, est);
  w.end_row();
}

void write_darmois_tables(std::ostream& out, const DarmoisMap& dm) {
  CsvWriter w(out);
  w.header({"x1", "x2", "marginal_cdf", "marginal_pdf", "conditional_cdf"});
  const auto n = static_cast<std::size_t>(dm.resolution());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      w.cell(dm.x1_nodes()[i]).cell(dm.x2_nodes()[j]).cell(dm.marginal_cdf_table()[i])
          .cell(dm.marginal_pdf_table()[i]).cell(dm.conditional_cdf_table()[i * n + j]);
      w.end_row();
    }
  }
}

void write_grid_blocks(std::ostream& out, const SmoothGridMap& map) {
  CsvWriter w(out);
  w.header({"piece", "row", "col", "value"});
  for (std::size_t t = 0; t < map.blocks().size(); ++t) {
    const Matrix& b = map.blocks()[t];
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        w.cell(t).cell(static_cast<long long>(i)).cell(static_cast<long long>(j)).cell(b(i, j));
        w.end_row();
      }
    }
  }
}

}  // namespace ima
