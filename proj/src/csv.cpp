#include "ecrelay/csv.hpp"

#include <charconv>
#include <ostream>

namespace ecrelay {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string csv_header() {
  return "snr_db,avg_c_ec,avg_c_noec,gain,"
         "avg_r1_ec,avg_r1_noec,avg_r2_ec,avg_r2_noec,"
         "outage_d1_ec,outage_d2_ec,outage_d1_noec,outage_d2_noec,"
         "outage_d1_ec_noess,outage_d2_ec_noess,"
         "outage_d1_noec_noess,outage_d2_noec_noess,"
         "pct_A1,pct_A2,pct_A3,pct_B1,pct_B2,pct_B3,pct_B4,pct_DEG";
}

std::string csv_row(const SweepRow& r) {
  std::string out;
  out.reserve(256);
  const double fields[] = {r.snr_db,
                           r.avg_c_ec,
                           r.avg_c_noec,
                           r.gain,
                           r.avg_r1_ec,
                           r.avg_r1_noec,
                           r.avg_r2_ec,
                           r.avg_r2_noec,
                           r.outage_d1_ec,
                           r.outage_d2_ec,
                           r.outage_d1_noec,
                           r.outage_d2_noec,
                           r.outage_d1_ec_noess,
                           r.outage_d2_ec_noess,
                           r.outage_d1_noec_noess,
                           r.outage_d2_noec_noess};
  bool first = true;
  for (const double f : fields) {
    if (!first) out.push_back(',');
    out += format_double(f);
    first = false;
  }
  for (const double pct : r.case_pct) {
    out.push_back(',');
    out += format_double(pct);
  }
  return out;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << csv_header() << '\n';
  for (const SweepRow& r : rows) os << csv_row(r) << '\n';
}

}  // namespace ecrelay
