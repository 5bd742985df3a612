#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

std::vector<double> parse_csv_doubles(const std::string& text,
                                      const std::string& what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find(',', pos);
    const std::string tok =
        text.substr(pos, next == std::string::npos ? next : next - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw CLI::ValidationError(what, "'" + tok + "' is not a number");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

void parse_range(const std::string& text, double* a, double* b) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw CLI::ValidationError("--s", "expected start:end");
  }
  const auto lo = parse_csv_doubles(text.substr(0, colon), "--s");
  const auto hi = parse_csv_doubles(text.substr(colon + 1), "--s");
  if (lo.size() != 1 || hi.size() != 1) {
    throw CLI::ValidationError("--s", "expected start:end");
  }
  *a = lo[0];
  *b = hi[0];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Geodesics of the Heisenberg group and its metric cone: closed forms, "
      "a numerical oracle, validation suites and a two-point connector."};
  app.require_subcommand(1);

  heiscone::tools::TraceRequest trace_req;
  std::string trace_base, trace_dir, trace_range = "0:1";
  auto* trace = app.add_subcommand(
      "trace", "Sample a geodesic into a CSV or JSON table");
  trace->add_option("--space", trace_req.space, "heisenberg or cone")
      ->capture_default_str();
  trace->add_option("--base", trace_base,
                    "base point x,y,t (heisenberg) or x,y,t,r (cone)")
      ->required();
  trace->add_option("--dir", trace_dir,
                    "initial unit frame vector f,g,h or f,g,h,k")
      ->required();
  trace->add_option("--s", trace_range, "parameter range start:end")
      ->capture_default_str();
  trace->add_option("--n", trace_req.n, "number of uniform samples (>= 2)")
      ->capture_default_str();
  trace->add_option("--method", trace_req.method, "closed, rk4 or both")
      ->capture_default_str();
  trace->add_option("--format", trace_req.format, "csv or json")
      ->capture_default_str();
  trace->add_option("--step", trace_req.step, "rk4 step size")
      ->capture_default_str();
  trace->add_option("--out", trace_req.out, "output path (default stdout)");

  heiscone::tools::ReportRequest report_req;
  auto* validate = app.add_subcommand(
      "validate", "Run a validation suite and write its JSON report");
  validate
      ->add_option("--suite", report_req.suite,
                   "structures, geodesics, completeness or all")
      ->capture_default_str();
  validate->add_option("--seed", report_req.seed, "deterministic seed")
      ->capture_default_str();
  validate
      ->add_option("--n", report_req.n,
                   "structure suite sample count (structures only)")
      ->capture_default_str();
  validate->add_option("--format", report_req.format, "json")
      ->capture_default_str();
  validate->add_option("--out", report_req.out, "output path (default stdout)");

  heiscone::tools::ConnectRequest connect_req;
  std::string connect_p, connect_q;
  auto* connect = app.add_subcommand(
      "connect", "Shoot a geodesic between two cone points");
  connect->add_option("p", connect_p, "start point x,y,t,r")->required();
  connect->add_option("q", connect_q, "target point x,y,t,r")->required();
  connect->add_option("--tol", connect_req.tol, "endpoint residual tolerance")
      ->capture_default_str();
  connect
      ->add_option("--max-iter", connect_req.max_iter,
                   "total iteration budget")
      ->capture_default_str();
  connect->add_option("--out", connect_req.out, "also write the JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // exit 1 on any bad input, 0 for --help
  }

  try {
    if (trace->parsed()) {
      trace_req.base = parse_csv_doubles(trace_base, "--base");
      trace_req.dir = parse_csv_doubles(trace_dir, "--dir");
      parse_range(trace_range, &trace_req.s_start, &trace_req.s_end);
      return heiscone::tools::cmd_trace(trace_req);
    }
    if (validate->parsed()) {
      return heiscone::tools::cmd_validate(report_req);
    }
    connect_req.p = parse_csv_doubles(connect_p, "p");
    connect_req.q = parse_csv_doubles(connect_q, "q");
    return heiscone::tools::cmd_connect(connect_req);
  } catch (const CLI::Error& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
}
