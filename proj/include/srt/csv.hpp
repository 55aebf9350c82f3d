#pragma once

// Long-format CSV datasets: one row per (curve point, metric).

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace srt {

// Shortest representation that parses back to the same double.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (r.ec != std::errc{}) return "nan";
  return std::string(buf.data(), r.ptr);
}

struct CsvRow {
  std::string figure;
  std::string scheme;
  std::string cell;  // macro, small or sum
  std::string backend;
  double gammaMdB = 0.0;
  std::size_t n = 0;
  double beta = 0.0;
  double dSs = 0.0;
  std::optional<double> eveDMin;
  std::optional<double> eveDMax;
  std::optional<double> rateOverall;  // the minimizing rate on iop rows
  double rateSecrecy = 0.0;
  std::string metric;  // outage, intercept, iop, sum_iop
  double value = 0.0;
  std::optional<double> stdErr;  // absent for analytic rows
  std::optional<std::uint64_t> trials;
};

inline constexpr std::string_view kCsvHeader =
    "figure,scheme,cell,backend,gamma_m_db,n,beta,d_ss,eve_d_min,eve_d_max,rate_overall,rate_secrecy,metric,value,"
    "std_err,trials";

inline void write_csv_row(std::ostream& out, const CsvRow& r) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  out << r.figure << ',' << r.scheme << ',' << r.cell << ',' << r.backend << ',' << format_double(r.gammaMdB) << ','
      << r.n << ',' << format_double(r.beta) << ',' << format_double(r.dSs) << ',' << opt(r.eveDMin) << ','
      << opt(r.eveDMax) << ',' << opt(r.rateOverall) << ',' << format_double(r.rateSecrecy) << ','
      << r.metric << ',' << format_double(r.value) << ',' << opt(r.stdErr) << ','
      << (r.trials ? std::to_string(*r.trials) : std::string()) << '\n';
}

inline void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) write_csv_row(out, r);
}

}  // namespace srt
