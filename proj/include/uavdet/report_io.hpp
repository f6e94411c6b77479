#ifndef UAVDET_REPORT_IO_HPP_
#define UAVDET_REPORT_IO_HPP_

#include <string>

#include "uavdet/annotations.hpp"
#include "uavdet/eval.hpp"

namespace uavdet {

// JSON document; keys follow the EvalReport/ClassAP field names plus a
// class_name next to each class_id.
std::string report_to_json(const EvalReport& report, const ClassMap& classes);

// `class,ap,tp,fp,fn` rows (class by name) and a closing `map,<value>,,,`
// row. Ratios use 6 decimals.
std::string report_to_csv(const EvalReport& report, const ClassMap& classes);

}  // namespace uavdet

#endif  // UAVDET_REPORT_IO_HPP_
