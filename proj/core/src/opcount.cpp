#include "trachtenberg/opcount.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "trachtenberg/oracle.hpp"
#include "trachtenberg/rules.hpp"

namespace trachtenberg {
namespace {

void count_base(BaseTerm base, OpCountReport& report) {
  switch (base) {
    case BaseTerm::Zero:
    case BaseTerm::Digit:
      break;
    case BaseTerm::DoubleDigit:
      ++report.doublings;
      break;
    case BaseTerm::TenComplement:
    case BaseTerm::NineComplement:
      ++report.complements;
      break;
    case BaseTerm::DoubleTenComplement:
    case BaseTerm::DoubleNineComplement:
      ++report.complements;
      ++report.doublings;
      break;
    case BaseTerm::NeighbourMinusOne:
    case BaseTerm::NeighbourMinusTwo:
      ++report.additions;
      break;
    case BaseTerm::HalfNeighbourMinusOne:
    case BaseTerm::HalfNeighbourMinusTwo:
      ++report.halvings;
      ++report.additions;
      break;
  }
}

}  // namespace

std::string_view to_string(CountMethod method) noexcept {
  return method == CountMethod::Trachtenberg ? "Trachtenberg" : "Schoolbook";
}

OpCountReport count_trace_ops(const ComputationTrace& trace) {
  OpCountReport report;
  report.method = CountMethod::Trachtenberg;
  report.multiplicand_length = trace.multiplicand.size();
  report.multiplier = trace.multiplier.value();

  const RuleSpec& rule = rule_for(trace.multiplier);
  for (const TraceStep& step : trace.steps) {
    const PositionFormula& formula = rule.formula(step.role);
    count_base(formula.base, report);
    if (formula.add_neighbour) {
      ++report.additions;
    }
    if (formula.add_half_neighbour) {
      ++report.halvings;
      ++report.additions;
    }
    if (formula.add_odd_bonus) {
      ++report.odd_checks;
      ++report.additions;
    }
    if (step.carry_in > 0) {
      ++report.additions;
    }
  }
  return report;
}

OpCountReport count_schoolbook_ops(const DigitString& a, Multiplier multiplier) {
  SchoolbookTally tally;
  reference_multiply(a, multiplier.value(), &tally);
  OpCountReport report;
  report.method = CountMethod::Schoolbook;
  report.multiplicand_length = a.size();
  report.multiplier = multiplier.value();
  report.additions = tally.additions;
  report.table_lookups = tally.table_lookups;
  return report;
}

std::string csv_header() {
  return "method,multiplicand_length,multiplier,additions,doublings,halvings,complements,"
         "odd_checks,table_lookups";
}

std::string to_csv_row(const OpCountReport& r) {
  std::ostringstream out;
  out << to_string(r.method) << ',' << r.multiplicand_length << ',' << r.multiplier << ','
      << r.additions << ',' << r.doublings << ',' << r.halvings << ',' << r.complements << ','
      << r.odd_checks << ',' << r.table_lookups;
  return out.str();
}

std::string render_reports(const std::vector<OpCountReport>& reports) {
  const std::array<std::string, 9> header = {"method",   "length",     "multiplier",
                                             "additions", "doublings", "halvings",
                                             "complements", "odd_checks", "table_lookups"};
  std::vector<std::array<std::string, 9>> rows;
  rows.push_back(header);
  for (const auto& r : reports) {
    rows.push_back({std::string(to_string(r.method)), std::to_string(r.multiplicand_length),
                    std::to_string(r.multiplier), std::to_string(r.additions),
                    std::to_string(r.doublings), std::to_string(r.halvings),
                    std::to_string(r.complements), std::to_string(r.odd_checks),
                    std::to_string(r.table_lookups)});
  }
  std::array<std::size_t, 9> widths{};
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == 0) {
        line += row[i] + std::string(widths[i] - row[i].size(), ' ');
      } else {
        line += "  " + std::string(widths[i] - row[i].size(), ' ') + row[i];
      }
    }
    out << line << '\n';
  }
  return out.str();
}

}  // namespace trachtenberg
