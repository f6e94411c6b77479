#include "uavdet/report_io.hpp"

#include <fmt/format.h>
#include <json.hpp>

namespace uavdet {
namespace {

nlohmann::ordered_json class_json(const ClassAP& c, const ClassMap& classes) {
  nlohmann::ordered_json j;
  j["class_id"] = c.class_id;
  j["class_name"] = classes.name(c.class_id);
  j["ap"] = c.ap;
  j["tp"] = c.tp;
  j["fp"] = c.fp;
  j["fn"] = c.fn;
  j["gt_count"] = c.gt_count;
  auto curve = nlohmann::ordered_json::array();
  for (const auto& p : c.curve) {
    curve.push_back({{"precision", p.precision}, {"recall", p.recall}, {"confidence", p.confidence}});
  }
  j["curve"] = std::move(curve);
  return j;
}

}  // namespace

std::string report_to_json(const EvalReport& report, const ClassMap& classes) {
  nlohmann::ordered_json j;
  j["scope"] = scope_name(report.scope);
  j["iou_threshold"] = report.iou_threshold;
  j["map"] = report.map;
  auto per_class = nlohmann::ordered_json::array();
  for (const auto& c : report.per_class) per_class.push_back(class_json(c, classes));
  j["per_class"] = std::move(per_class);
  if (report.scope == EvalScope::PerImageAveraged) {
    auto per_image = nlohmann::ordered_json::array();
    for (const auto& img : report.per_image) {
      nlohmann::ordered_json e;
      e["image_id"] = img.image_id;
      e["map"] = img.map;
      auto pc = nlohmann::ordered_json::array();
      for (const auto& c : img.per_class) pc.push_back(class_json(c, classes));
      e["per_class"] = std::move(pc);
      per_image.push_back(std::move(e));
    }
    j["per_image"] = std::move(per_image);
  }
  return j.dump(2) + "\n";
}

std::string report_to_csv(const EvalReport& report, const ClassMap& classes) {
  std::string out = "class,ap,tp,fp,fn\n";
  for (const auto& c : report.per_class) {
    out += fmt::format("{},{:.6f},{},{},{}\n", classes.name(c.class_id), c.ap, c.tp, c.fp, c.fn);
  }
  out += fmt::format("map,{:.6f},,,\n", report.map);
  return out;
}

}  // namespace uavdet
