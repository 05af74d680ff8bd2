#include "sam/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sam {

const char* const kCsvHeader =
    "model,policy,n,c,l,M,alpha,rho,trials,error_rate,stderr,mean_iters,"
    "cycle_rate,notfound_rate,efficiency,seed";

namespace {

std::string fmt_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string format_row(const CsvRow& r) {
  std::ostringstream os;
  os << r.model << ',' << r.policy << ',' << r.n << ',' << r.c << ',' << r.l
     << ',' << r.pattern_count << ',' << fmt_g9(r.alpha) << ','
     << fmt_g9(r.rho) << ',' << r.trials << ',' << fmt_g9(r.error_rate) << ','
     << fmt_g9(r.std_error) << ',' << fmt_g9(r.mean_iterations) << ','
     << fmt_g9(r.cycle_rate) << ',' << fmt_g9(r.notfound_rate) << ','
     << fmt_g9(r.efficiency) << ',' << r.seed;
  return os.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::vector<CsvRow> rows_from_result(const ExperimentSpec& spec,
                                     const ExperimentResult& result) {
  std::vector<CsvRow> rows;
  rows.reserve(result.points.size());
  const auto& layout = spec.space.layout();
  for (const auto& p : result.points) {
    CsvRow r;
    r.model = to_string(spec.model);
    r.policy = spec.resolved_policy().name();
    r.n = spec.space.size();
    r.c = spec.sparsity();
    r.l = layout ? layout->cluster_size : 0;
    r.pattern_count = p.pattern_count;
    r.alpha = p.alpha;
    r.rho = p.rho;
    r.trials = p.trials;
    r.error_rate = p.error_rate;
    r.std_error = p.std_error;
    r.mean_iterations = p.mean_iterations;
    r.cycle_rate = p.cycle_rate;
    r.notfound_rate = p.notfound_rate;
    r.efficiency = p.efficiency;
    r.seed = spec.seed;
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_results(const std::filesystem::path& path,
                   const std::string& config_comment, std::vector<CsvRow> rows,
                   bool append) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const CsvRow& a, const CsvRow& b) {
                     return a.pattern_count < b.pattern_count;
                   });
  const bool fresh = !append || !std::filesystem::exists(path);
  std::ofstream out(path, fresh ? std::ios::trunc : std::ios::app);
  if (!out)
    throw std::runtime_error("cannot open results file: " + path.string());
  if (fresh) {
    out << "# " << config_comment << '\n';
    out << kCsvHeader << '\n';
  } else {
    out << "# " << config_comment << '\n';
  }
  for (const auto& r : rows) out << format_row(r) << '\n';
  if (!out)
    throw std::runtime_error("write failed: " + path.string());
}

std::vector<CsvRow> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open results file: " + path.string());
  std::vector<CsvRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("model,", 0) == 0) continue;  // header
    auto f = split_csv_line(line);
    if (f.size() != 16)
      throw std::runtime_error("malformed results row: " + line);
    CsvRow r;
    r.model = f[0];
    r.policy = f[1];
    r.n = std::stoul(f[2]);
    r.c = std::stoul(f[3]);
    r.l = std::stoul(f[4]);
    r.pattern_count = std::stoull(f[5]);
    r.alpha = std::stod(f[6]);
    r.rho = std::stod(f[7]);
    r.trials = std::stoul(f[8]);
    r.error_rate = std::stod(f[9]);
    r.std_error = std::stod(f[10]);
    r.mean_iterations = std::stod(f[11]);
    r.cycle_rate = std::stod(f[12]);
    r.notfound_rate = std::stod(f[13]);
    r.efficiency = std::stod(f[14]);
    r.seed = std::stoull(f[15]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_plot_script(const std::vector<std::filesystem::path>& csv_paths,
                      const std::filesystem::path& out_path) {
  struct Series {
    std::string path;
    std::string title;
  };
  std::vector<Series> series;
  for (const auto& p : csv_paths) {
    auto rows = read_results(p);
    if (rows.empty())
      throw std::runtime_error("no data rows in " + p.string());
    series.push_back({p.string(), rows[0].model + " " + rows[0].policy});
  }

  std::ofstream out(out_path);
  if (!out)
    throw std::runtime_error("cannot open plot script: " + out_path.string());
  out << "# gnuplot script generated by samsim\n"
      << "set datafile separator ','\n"
      << "set datafile commentschars '#'\n"
      << "set terminal pngcairo size 1280,520\n"
      << "set output 'error_rates.png'\n"
      << "set multiplot layout 1,2\n"
      << "set key bottom right\n"
      << "set yrange [-0.02:1.02]\n"
      << "set ylabel 'error_rate'\n"
      << "set xlabel 'M'\n"
      << "plot ";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i) out << ", \\\n     ";
    out << "'" << series[i].path << "' using \"M\":\"error_rate\" "
        << "with linespoints title '" << series[i].title << "'";
  }
  out << "\nset xlabel 'efficiency'\n"
      << "plot ";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i) out << ", \\\n     ";
    out << "'" << series[i].path << "' using \"efficiency\":\"error_rate\" "
        << "with linespoints title '" << series[i].title << "'";
  }
  out << "\nunset multiplot\n";
  if (!out)
    throw std::runtime_error("write failed: " + out_path.string());
}

}  // namespace sam
