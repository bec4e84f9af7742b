#include "hdsign/report.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "hdsign/errors.hpp"

namespace hdsign {

OutputFormat parse_output_format(std::string_view s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "tsv") return OutputFormat::Tsv;
  if (s == "table") return OutputFormat::Table;
  throw InvalidInput("unknown output format '" + std::string(s) + "' (expected csv, tsv, table)");
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("failed to format a double");
  return std::string(buf, ptr);
}

namespace {

char separator(OutputFormat fmt) { return fmt == OutputFormat::Tsv ? '\t' : ','; }

std::string full(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// Quotes text cells that contain the separator (family labels such as MN(0.2,3)).
std::string cell(const std::string& s, char sep) {
  if (s.find(sep) == std::string::npos && s.find('"') == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

void write_outcome(std::ostream& os, const TestOutcome& t, const std::string& test_name,
                   OutputFormat fmt) {
  if (fmt == OutputFormat::Table) {
    os << std::left << std::setw(12) << "test" << test_name << '\n'
       << std::setw(12) << "statistic" << std::setprecision(6) << t.statistic << '\n'
       << std::setw(12) << "sigma_hat" << t.sigma_hat << '\n'
       << std::setw(12) << "z" << fixed(t.z, 4) << '\n'
       << std::setw(12) << "p_value" << fixed(t.p_value, 4) << '\n'
       << std::setw(12) << "alpha" << t.alpha << '\n'
       << std::setw(12) << "reject" << (t.reject ? "yes" : "no") << '\n';
    if (t.constant_coordinate) os << std::setw(12) << "warning" << "constant coordinate floored\n";
    os << std::right;
    return;
  }
  const char sep = separator(fmt);
  os << "test" << sep << "statistic" << sep << "sigma_hat" << sep << "z" << sep << "p_value" << sep
     << "alpha" << sep << "reject" << sep << "constant_coordinate" << '\n';
  os << cell(test_name, sep) << sep << full(t.statistic) << sep << full(t.sigma_hat) << sep << full(t.z) << sep
     << full(t.p_value) << sep << full(t.alpha) << sep << (t.reject ? 1 : 0) << sep
     << (t.constant_coordinate ? 1 : 0) << '\n';
}

void write_are_table(std::ostream& os, const std::vector<AREColumn>& cols, OutputFormat fmt) {
  struct Row {
    const char* name;
    double AREReport::*field;
  };
  const Row rows[] = {{"ARE(SS,CQ)", &AREReport::ss_cq},
                      {"ARE(OS,CQ)", &AREReport::os_cq},
                      {"ARE(OS,SS)", &AREReport::os_ss}};
  if (fmt == OutputFormat::Table) {
    os << std::setw(12) << "";
    for (const auto& c : cols) os << std::setw(12) << c.label;
    os << '\n';
    for (const auto& r : rows) {
      os << std::left << std::setw(12) << r.name << std::right;
      for (const auto& c : cols) os << std::setw(12) << fixed(c.are.*r.field, 2);
      os << '\n';
    }
    return;
  }
  const char sep = separator(fmt);
  os << "row";
  for (const auto& c : cols) os << sep << cell(c.label, sep);
  os << '\n';
  for (const auto& r : rows) {
    os << cell(r.name, sep);
    for (const auto& c : cols) os << sep << full(c.are.*r.field);
    os << '\n';
  }
}

void write_reports(std::ostream& os, const std::vector<SimulationReport>& reports,
                   OutputFormat fmt) {
  if (fmt == OutputFormat::Table) {
    os << std::left << std::setw(8) << "cell" << std::setw(16) << "family" << std::right
       << std::setw(5) << "n" << std::setw(6) << "p" << std::setw(8) << "pattern" << std::setw(6)
       << "test" << std::setw(8) << "rate%" << std::setw(8) << "se%" << std::setw(7) << "reps"
       << std::setw(6) << "degen" << std::setw(10) << "secs" << '\n';
    for (const auto& r : reports) {
      for (const auto& t : r.results) {
        os << std::left << std::setw(8) << r.spec.label << std::setw(16) << r.spec.distribution.label()
           << std::right << std::setw(5) << r.spec.n << std::setw(6) << r.spec.p << std::setw(8)
           << to_string(r.spec.pattern) << std::setw(6) << to_string(t.test) << std::setw(8)
           << fixed(100.0 * t.rejection_rate, 1) << std::setw(8) << fixed(100.0 * t.mc_standard_error, 2)
           << std::setw(7) << r.spec.replications << std::setw(6) << t.degenerate << std::setw(10)
           << fixed(r.elapsed.count(), 2) << '\n';
      }
    }
    return;
  }
  const char sep = separator(fmt);
  os << "cell" << sep << "family" << sep << "n" << sep << "p" << sep << "pattern" << sep << "target"
     << sep << "replications" << sep << "alpha" << sep << "seed" << sep << "test" << sep
     << "rejections" << sep << "valid" << sep << "degenerate" << sep << "rejection_rate" << sep
     << "mc_standard_error" << sep << "elapsed_seconds" << '\n';
  for (const auto& r : reports) {
    for (const auto& t : r.results) {
      os << r.spec.label << sep << cell(r.spec.distribution.label(), sep) << sep << r.spec.n << sep << r.spec.p
         << sep << to_string(r.spec.pattern) << sep << full(r.spec.target) << sep
         << r.spec.replications << sep << full(r.spec.alpha) << sep << r.spec.seed << sep
         << to_string(t.test) << sep << t.rejections << sep << t.valid << sep << t.degenerate << sep
         << full(t.rejection_rate) << sep << full(t.mc_standard_error) << sep
         << full(r.elapsed.count()) << '\n';
    }
  }
}

void write_table2(std::ostream& os, const std::vector<SimulationReport>& reports) {
  using Key = std::tuple<Index, Index>;
  std::map<Key, std::vector<std::string>> row_order;
  std::map<std::tuple<Index, Index, std::string, int, TestId>, double> rate;
  for (const auto& r : reports) {
    const Key k{r.spec.n, r.spec.p};
    auto& labels = row_order[k];
    if (std::find(labels.begin(), labels.end(), r.spec.label) == labels.end()) {
      labels.push_back(r.spec.label);
    }
    for (const auto& t : r.results) {
      rate[{r.spec.n, r.spec.p, r.spec.label, static_cast<int>(r.spec.pattern), t.test}] =
          t.rejection_rate;
    }
  }
  const TestId cols[] = {TestId::CQ, TestId::SS, TestId::OS};
  const Pattern pats[] = {Pattern::Null, Pattern::Dense, Pattern::Sparse};
  os << std::setw(8) << "";
  for (Pattern p : pats) {
    os << "  " << std::left << std::setw(21) << to_string(p) << std::right;
  }
  os << '\n' << std::setw(8) << "";
  for (int g = 0; g < 3; ++g) {
    os << "  ";
    for (TestId t : cols) os << std::setw(7) << to_string(t);
  }
  os << '\n';
  for (const auto& [key, labels] : row_order) {
    os << "(n,p)=(" << std::get<0>(key) << "," << std::get<1>(key) << ")\n";
    for (const auto& label : labels) {
      os << std::left << std::setw(8) << label << std::right;
      for (Pattern p : pats) {
        os << "  ";
        for (TestId t : cols) {
          auto it = rate.find({std::get<0>(key), std::get<1>(key), label, static_cast<int>(p), t});
          os << std::setw(7) << (it == rate.end() ? std::string("-") : fixed(100.0 * it->second, 1));
        }
      }
      os << '\n';
    }
  }
}

}  // namespace hdsign
