#include "uavdet/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "uavdet/error.hpp"
#include "uavdet/parallel.hpp"

namespace uavdet {

std::size_t MatchOutcome::tp_count() const {
  return static_cast<std::size_t>(std::count(is_tp.begin(), is_tp.end(), true));
}

MatchOutcome match_detections(std::span<const Detection> detections, std::span<const BBox> ground_truth,
                              double iou_threshold) {
  MatchOutcome out;
  out.iou_threshold = iou_threshold;
  out.gt_count = ground_truth.size();
  out.order.resize(detections.size());
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::stable_sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
    return detections[a].confidence > detections[b].confidence;
  });

  std::vector<bool> claimed(ground_truth.size(), false);
  std::size_t tp = 0;
  for (const std::size_t di : out.order) {
    const Detection& det = detections[di];
    int best = -1;
    double best_iou = -1.0;
    for (std::size_t g = 0; g < ground_truth.size(); ++g) {
      if (claimed[g] || ground_truth[g].class_id != det.box.class_id) continue;
      const double v = iou(det.box, ground_truth[g]);
      if (v > best_iou) {
        best_iou = v;
        best = static_cast<int>(g);
      }
    }
    const bool hit = best >= 0 && best_iou > iou_threshold;
    if (hit) {
      claimed[static_cast<std::size_t>(best)] = true;
      ++tp;
    }
    out.confidences.push_back(det.confidence);
    out.is_tp.push_back(hit);
    out.matched_gt.push_back(hit ? best : -1);
  }
  out.fn_count = ground_truth.size() - tp;
  return out;
}

std::vector<FlaggedDetection> flagged(const MatchOutcome& outcome) {
  std::vector<FlaggedDetection> out;
  out.reserve(outcome.is_tp.size());
  for (std::size_t i = 0; i < outcome.is_tp.size(); ++i) {
    out.push_back({outcome.confidences[i], outcome.is_tp[i]});
  }
  return out;
}

std::vector<PRPoint> precision_recall_curve(std::span<const FlaggedDetection> detections,
                                            std::size_t gt_count) {
  if (detections.empty()) return {};
  if (gt_count == 0) {
    throw UndefinedRecallError("recall is undefined: no ground truth but detections were given");
  }
  std::vector<PRPoint> curve;
  curve.reserve(detections.size());
  std::size_t tp = 0;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    if (detections[i].is_tp) ++tp;
    curve.push_back({static_cast<double>(tp) / static_cast<double>(i + 1),
                     static_cast<double>(tp) / static_cast<double>(gt_count),
                     detections[i].confidence});
  }
  return curve;
}

double interpolated_ap_11pt(std::span<const PRPoint> curve) {
  if (curve.empty()) return 0.0;
  // Walk from the end keeping the running max precision, so each recall
  // level is answered from a suffix maximum.
  std::vector<double> suffix_max(curve.size());
  double run = 0.0;
  for (std::size_t i = curve.size(); i-- > 0;) {
    run = std::max(run, curve[i].precision);
    suffix_max[i] = run;
  }
  // Recall is non-decreasing along the curve; accumulate in extended
  // precision so exact rational cases round to the nearest double.
  long double sum = 0.0L;
  std::size_t first = 0;
  for (int level = 0; level <= 10; ++level) {
    const double r = level / 10.0;
    while (first < curve.size() && curve[first].recall < r) ++first;
    if (first < curve.size()) sum += suffix_max[first];
  }
  return static_cast<double>(sum / 11.0L);
}

std::string_view scope_name(EvalScope scope) {
  return scope == EvalScope::PerImageAveraged ? "per-image" : "dataset";
}

EvalScope parse_scope(std::string_view name) {
  if (name == "per-image") return EvalScope::PerImageAveraged;
  if (name == "dataset") return EvalScope::DatasetLevel;
  throw ParameterError(fmt::format("unknown scope '{}' (expected per-image or dataset)", name));
}

namespace {

struct ClassMatch {
  MatchOutcome outcome;
  std::size_t det_count = 0;
};

// Per image, one match per class id.
using ImageMatches = std::vector<ClassMatch>;

ImageMatches match_image(const std::vector<BBox>& gts, const std::vector<Detection>& dets,
                         std::size_t class_count, double threshold) {
  ImageMatches out(class_count);
  for (std::size_t c = 0; c < class_count; ++c) {
    std::vector<BBox> g;
    std::vector<Detection> d;
    for (const auto& b : gts) {
      if (b.class_id == static_cast<int>(c)) g.push_back(b);
    }
    for (const auto& x : dets) {
      if (x.box.class_id == static_cast<int>(c)) d.push_back(x);
    }
    out[c].outcome = match_detections(d, g, threshold);
    out[c].det_count = d.size();
  }
  return out;
}

ClassAP score_class(int class_id, std::span<const FlaggedDetection> flags, std::size_t gt_count) {
  ClassAP r;
  r.class_id = class_id;
  r.gt_count = gt_count;
  r.tp = static_cast<std::size_t>(std::count_if(flags.begin(), flags.end(), [](const auto& f) { return f.is_tp; }));
  r.fp = flags.size() - r.tp;
  r.fn = gt_count - r.tp;
  if (gt_count > 0) {
    r.curve = precision_recall_curve(flags, gt_count);
    r.ap = interpolated_ap_11pt(r.curve);
  }
  return r;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  long double s = 0.0L;
  for (double x : v) s += x;
  return static_cast<double>(s / static_cast<long double>(v.size()));
}

void check_classes(const std::string& image_id, std::span<const BBox> boxes, const ClassMap& classes,
                   const char* what) {
  for (const auto& b : boxes) {
    if (!classes.contains(b.class_id)) {
      throw InputError(fmt::format("image '{}': {} box has class id {} not in the class map",
                                   image_id, what, b.class_id));
    }
  }
}

}  // namespace

EvalReport evaluate(const GroundTruthSet& ground_truth, const DetectionSet& detections,
                    const ClassMap& classes, double iou_threshold, EvalScope scope, int jobs) {
  for (const auto& [id, dets] : detections) {
    if (!ground_truth.contains(id)) {
      throw InputError(fmt::format("detections reference unknown image id '{}'", id));
    }
    std::vector<BBox> boxes;
    for (const auto& d : dets) boxes.push_back(d.box);
    check_classes(id, boxes, classes, "detection");
  }
  for (const auto& [id, gts] : ground_truth) check_classes(id, gts, classes, "ground-truth");

  std::vector<const std::string*> ids;
  for (const auto& [id, _] : ground_truth) ids.push_back(&id);
  const std::size_t class_count = classes.size();
  static const std::vector<Detection> kNoDetections;

  std::vector<ImageMatches> matches(ids.size());
  parallel_for(ids.size(), jobs, [&](std::size_t i) {
    const auto it = detections.find(*ids[i]);
    const auto& dets = it == detections.end() ? kNoDetections : it->second;
    matches[i] = match_image(ground_truth.find(*ids[i])->second, dets, class_count, iou_threshold);
  });

  EvalReport report;
  report.scope = scope;
  report.iou_threshold = iou_threshold;

  if (scope == EvalScope::DatasetLevel) {
    std::vector<double> aps;
    for (std::size_t c = 0; c < class_count; ++c) {
      std::vector<FlaggedDetection> pooled;
      std::size_t gt_total = 0;
      for (const auto& m : matches) {
        const auto f = flagged(m[c].outcome);
        pooled.insert(pooled.end(), f.begin(), f.end());
        gt_total += m[c].outcome.gt_count;
      }
      if (gt_total == 0 && pooled.empty()) continue;
      std::stable_sort(pooled.begin(), pooled.end(),
                       [](const auto& a, const auto& b) { return a.confidence > b.confidence; });
      report.per_class.push_back(score_class(static_cast<int>(c), pooled, gt_total));
      aps.push_back(report.per_class.back().ap);
    }
    report.map = mean_of(aps);
    return report;
  }

  std::vector<ClassAP> totals(class_count);
  std::vector<std::vector<double>> class_aps(class_count);
  std::vector<bool> seen(class_count, false);
  std::vector<double> image_maps;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    ImageResult img;
    img.image_id = *ids[i];
    std::size_t image_dets = 0;
    std::vector<double> aps;
    for (std::size_t c = 0; c < class_count; ++c) {
      const auto& m = matches[i][c];
      image_dets += m.det_count;
      const auto f = flagged(m.outcome);
      ClassAP ca = score_class(static_cast<int>(c), f, m.outcome.gt_count);
      totals[c].tp += ca.tp;
      totals[c].fp += ca.fp;
      totals[c].fn += ca.fn;
      totals[c].gt_count += ca.gt_count;
      if (ca.gt_count > 0 || m.det_count > 0) seen[c] = true;
      if (m.outcome.gt_count == 0) continue;
      class_aps[c].push_back(ca.ap);
      aps.push_back(ca.ap);
      img.per_class.push_back(std::move(ca));
    }
    if (aps.empty() && image_dets == 0) continue;
    img.map = mean_of(aps);  // 0 when detections hit an image with no ground truth
    image_maps.push_back(img.map);
    report.per_image.push_back(std::move(img));
  }
  for (std::size_t c = 0; c < class_count; ++c) {
    if (!seen[c]) continue;
    ClassAP ca = totals[c];
    ca.class_id = static_cast<int>(c);
    ca.ap = mean_of(class_aps[c]);
    report.per_class.push_back(std::move(ca));
  }
  report.map = mean_of(image_maps);
  return report;
}

RunStats aggregate_runs(std::span<const double> maps) {
  if (maps.empty()) throw AggregationError("cannot aggregate an empty list of runs");
  long double sum = 0.0L;
  for (double m : maps) sum += m;
  const long double mean = sum / static_cast<long double>(maps.size());
  long double sq = 0.0L;
  for (double m : maps) sq += (m - mean) * (m - mean);
  return {static_cast<double>(mean),
          static_cast<double>(std::sqrt(sq / static_cast<long double>(maps.size())))};
}

}  // namespace uavdet
