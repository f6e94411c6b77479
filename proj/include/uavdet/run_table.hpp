#ifndef UAVDET_RUN_TABLE_HPP_
#define UAVDET_RUN_TABLE_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace uavdet {

struct RunRow {
  std::string label;
  double mean = 0.0;  // ratio in [0,1]
  double std = 0.0;
  std::size_t runs = 1;
};

struct RunTable {
  std::vector<RunRow> rows;
};

enum class TableFormat { Markdown, Csv };

// Ratio as a percentage with two decimals: 0.8915 -> "89.15".
std::string format_percent(double ratio);

// Markdown rows read `| label | 89.15 (0.27) | 3 |`; CSV rows read
// `label,89.15,0.27,3` under a `configuration,mean,std,runs` header.
// Throws ParameterError for an empty table or a row with zero runs.
std::string emit_table(const RunTable& table, TableFormat format);

}  // namespace uavdet

#endif  // UAVDET_RUN_TABLE_HPP_
