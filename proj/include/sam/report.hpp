#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sam/experiments.hpp"

namespace sam {

/// One CSV row of sweep results. Columns:
/// model,policy,n,c,l,M,alpha,rho,trials,error_rate,stderr,mean_iters,
/// cycle_rate,notfound_rate,efficiency,seed
struct CsvRow {
  std::string model;
  std::string policy;
  std::uint32_t n = 0;
  std::uint32_t c = 0;
  std::uint32_t l = 0;
  std::uint64_t pattern_count = 0;
  double alpha = 0.0;
  double rho = 0.0;
  std::uint32_t trials = 0;
  double error_rate = 0.0;
  double std_error = 0.0;
  double mean_iterations = 0.0;
  double cycle_rate = 0.0;
  double notfound_rate = 0.0;
  double efficiency = 0.0;
  std::uint64_t seed = 0;
};

extern const char* const kCsvHeader;

std::vector<CsvRow> rows_from_result(const ExperimentSpec& spec,
                                     const ExperimentResult& result);

/// Writes rows sorted by M, preceded by `# <config>` and the header line.
/// With append=true on an existing file only the rows are added.
void write_results(const std::filesystem::path& path,
                   const std::string& config_comment,
                   std::vector<CsvRow> rows, bool append = false);

/// Parses a results CSV back (comments and header skipped).
std::vector<CsvRow> read_results(const std::filesystem::path& path);

/// Writes a gnuplot script with two panels: error rate vs number of stored
/// patterns and error rate vs efficiency, one series per input CSV. Series
/// titles come from each file's first data row. Regeneration from identical
/// inputs is byte-identical.
void emit_plot_script(const std::vector<std::filesystem::path>& csv_paths,
                      const std::filesystem::path& out_path);

}  // namespace sam
