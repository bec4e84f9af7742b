#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hdsign/power.hpp"
#include "hdsign/signcore.hpp"
#include "hdsign/simulation.hpp"

namespace hdsign {

enum class OutputFormat { Csv, Tsv, Table };

OutputFormat parse_output_format(std::string_view s);

void write_outcome(std::ostream& os, const TestOutcome& t, const std::string& test_name,
                   OutputFormat fmt);

/// ARE rows (SS,CQ), (OS,CQ), (OS,SS) against the family columns.
void write_are_table(std::ostream& os, const std::vector<AREColumn>& cols, OutputFormat fmt);

/// One row per report and test, long format for csv/tsv.
void write_reports(std::ostream& os, const std::vector<SimulationReport>& reports,
                   OutputFormat fmt);

/// Wide Size/Dense/Sparse layout grouped by (n, p) and scenario, rates in %.
void write_table2(std::ostream& os, const std::vector<SimulationReport>& reports);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

}  // namespace hdsign
