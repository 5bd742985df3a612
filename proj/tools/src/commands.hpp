/// Subcommand implementations behind the CLI. Exit codes: 0 success,
/// 1 invalid input or I/O failure, 2 domain breach (partial trace written
/// with a breach marker), 3 solver non-convergence.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace heiscone::tools {

struct TraceRequest {
  std::string space = "heisenberg";  // or "cone"
  std::vector<double> base;          // 3 coords (heisenberg) or 4 (cone)
  std::vector<double> dir;           // frame components, unit
  double s_start = 0.0;
  double s_end = 1.0;
  int n = 201;                       // >= 2 uniform samples
  std::string method = "closed";     // "closed", "rk4" or "both"
  std::string format = "csv";        // "csv" or "json"
  std::string out;                   // empty = stdout
  double step = 1e-3;                // rk4 step size
};

struct ReportRequest {
  std::string suite = "all";  // structures | geodesics | completeness | all
  std::uint64_t seed = 42;
  int n = 1000;               // structure suite sample count
  std::string format = "json";
  std::string out;
};

struct ConnectRequest {
  std::vector<double> p;  // 4 cone coordinates
  std::vector<double> q;
  double tol = 1e-10;
  int max_iter = 100;
  std::string out;  // optional copy of the stdout JSON
};

int cmd_trace(const TraceRequest& req);
int cmd_validate(const ReportRequest& req);
int cmd_connect(const ConnectRequest& req);

}  // namespace heiscone::tools
