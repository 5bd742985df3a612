/// JSON and CSV serialization for reports, geodesic records and trace
/// tables. JSON uses insertion-ordered keys and shortest round-trip float
/// printing; CSV prints 17 significant digits with LF line endings. Wall
/// times never appear in serialized output.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "heiscone/analysis.hpp"
#include "json.hpp"

namespace heiscone::tools {

using Json = nlohmann::ordered_json;

/// One assembled output row; unused columns stay at 0 and are skipped.
struct TraceRowOut {
  double s = 0.0;
  double x = 0.0, y = 0.0, t = 0.0, r = 0.0;
  double f = 0.0, g = 0.0, h = 0.0, k = 0.0;
  double speed_err = 0.0;
  double dev = 0.0;
};

/// Column layout: s,x,y,t[,r],f,g,h[,k],speed_err[,dev].
struct TraceDoc {
  std::string space;   // "heisenberg" or "cone"
  std::string method;  // "closed", "rk4" or "both"
  bool with_r = false;
  bool with_dev = false;
  std::vector<TraceRowOut> rows;
  bool breached = false;
  double breach_s = 0.0;
};

std::string format_g17(double v);

void write_csv(std::ostream& os, const TraceDoc& doc);

Json to_json(const TraceDoc& doc);
Json to_json(const ValidationReport& rep);
Json to_json(const ConeGeodesic& geo);
Json to_json(const ShootingResult& result);

/// Serializes with a stable layout: 2-space indent and a trailing newline.
void write_json(std::ostream& os, const Json& j);

}  // namespace heiscone::tools
