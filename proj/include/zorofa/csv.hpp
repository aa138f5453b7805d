#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zorofa/bench.hpp"

namespace zorofa {

// 17 significant digits; parsing the string back with strtod recovers the
// exact double.
std::string format_double(double v);

struct TrajectoryRow {
  std::string problem;
  std::string algorithm;
  std::uint64_t seed = 0;
  int n = 0;
  long long k = 0;
  int j_k = 0;
  long long s_k = 0;
  double sigma_k = 0.0;
  std::string path;
  double f_before = 0.0;
  double f_after = 0.0;
  long long queries_cumulative = 0;
};

std::vector<TrajectoryRow> trajectory_rows(const std::vector<RunResult>& results);
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows);
void write_trajectory_csv(const std::string& path, const std::vector<RunResult>& results);
std::vector<TrajectoryRow> read_trajectory_csv(const std::string& path);

void write_profile_csv(std::ostream& out, const std::vector<DataProfile>& profiles);
void write_profile_csv(const std::string& path, const std::vector<DataProfile>& profiles);

void write_compressibility_csv(std::ostream& out,
                               const std::vector<CompressibilityProfile>& profiles);
void write_compressibility_csv(const std::string& path,
                               const std::vector<CompressibilityProfile>& profiles);

}  // namespace zorofa
