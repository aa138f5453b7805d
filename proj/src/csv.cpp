#include "zorofa/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zorofa {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<TrajectoryRow> trajectory_rows(const std::vector<RunResult>& results) {
  std::vector<TrajectoryRow> rows;
  for (const auto& r : results) {
    for (const auto& rec : r.trajectory.records) {
      TrajectoryRow row;
      row.problem = r.problem;
      row.algorithm = r.algorithm;
      row.seed = r.seed;
      row.n = r.n;
      row.k = rec.k;
      row.j_k = rec.j_k;
      row.s_k = rec.s_k;
      row.sigma_k = rec.sigma_k;
      row.path = rec.path == GradPath::CS ? "CS" : "FD";
      row.f_before = rec.f_before;
      row.f_after = rec.f_after;
      row.queries_cumulative = rec.queries_cumulative;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

static const char kTrajectoryHeader[] =
    "problem,algorithm,seed,n,k,j_k,s_k,sigma_k,path,f_before,f_after,queries_cumulative";

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows) {
  out << kTrajectoryHeader << '\n';
  for (const auto& r : rows) {
    out << r.problem << ',' << r.algorithm << ',' << r.seed << ',' << r.n << ',' << r.k << ','
        << r.j_k << ',' << r.s_k << ',' << format_double(r.sigma_k) << ',' << r.path << ','
        << format_double(r.f_before) << ',' << format_double(r.f_after) << ','
        << r.queries_cumulative << '\n';
  }
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

double parse_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }
long long parse_ll(const std::string& s) { return std::strtoll(s.c_str(), nullptr, 10); }
std::uint64_t parse_u64(const std::string& s) { return std::strtoull(s.c_str(), nullptr, 10); }

}  // namespace

void write_trajectory_csv(const std::string& path, const std::vector<RunResult>& results) {
  auto out = open_out(path);
  write_trajectory_csv(out, trajectory_rows(results));
}

std::vector<TrajectoryRow> read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trajectory file: " + path);
  if (line != kTrajectoryHeader)
    throw std::runtime_error("unexpected trajectory header in " + path);

  std::vector<TrajectoryRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = split_line(line);
    if (f.size() != 12)
      throw std::runtime_error("bad field count at " + path + ":" + std::to_string(lineno));
    TrajectoryRow r;
    r.problem = f[0];
    r.algorithm = f[1];
    r.seed = parse_u64(f[2]);
    r.n = static_cast<int>(parse_ll(f[3]));
    r.k = parse_ll(f[4]);
    r.j_k = static_cast<int>(parse_ll(f[5]));
    r.s_k = parse_ll(f[6]);
    r.sigma_k = parse_double(f[7]);
    r.path = f[8];
    r.f_before = parse_double(f[9]);
    r.f_after = parse_double(f[10]);
    r.queries_cumulative = parse_ll(f[11]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_profile_csv(std::ostream& out, const std::vector<DataProfile>& profiles) {
  out << "tau,algorithm,alpha,fraction\n";
  for (const auto& p : profiles)
    for (const auto& curve : p.curves)
      for (const auto& [alpha, fraction] : curve.points)
        out << format_double(p.tau) << ',' << curve.algorithm << ',' << format_double(alpha)
            << ',' << format_double(fraction) << '\n';
}

void write_profile_csv(const std::string& path, const std::vector<DataProfile>& profiles) {
  auto out = open_out(path);
  write_profile_csv(out, profiles);
}

void write_compressibility_csv(std::ostream& out,
                               const std::vector<CompressibilityProfile>& profiles) {
  out << "problem,rank,mean,min,max\n";
  for (const auto& p : profiles)
    for (std::size_t i = 0; i < p.mean.size(); ++i)
      out << p.problem << ',' << i + 1 << ',' << format_double(p.mean[i]) << ','
          << format_double(p.min[i]) << ',' << format_double(p.max[i]) << '\n';
}

void write_compressibility_csv(const std::string& path,
                               const std::vector<CompressibilityProfile>& profiles) {
  auto out = open_out(path);
  write_compressibility_csv(out, profiles);
}

}  // namespace zorofa
