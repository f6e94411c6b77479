#ifndef UAVDET_EVAL_HPP_
#define UAVDET_EVAL_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uavdet/annotations.hpp"
#include "uavdet/geometry.hpp"

namespace uavdet {

inline constexpr double kDefaultIouThreshold = 0.5;

// Result of greedy matching, listed in processing order (descending
// confidence, ties by input order).
struct MatchOutcome {
  std::vector<std::size_t> order;   // input index of each processed detection
  std::vector<double> confidences;  // confidence of each processed detection
  std::vector<bool> is_tp;
  std::vector<int> matched_gt;      // ground-truth index for TPs, -1 for FPs
  std::size_t gt_count = 0;
  std::size_t fn_count = 0;
  double iou_threshold = kDefaultIouThreshold;

  std::size_t tp_count() const;
  std::size_t fp_count() const { return is_tp.size() - tp_count(); }
};

// Each detection, highest confidence first, claims the still-unmatched
// ground truth of its own class with the highest IoU (ties: lowest
// index). It is a TP iff that IoU is strictly greater than the threshold;
// otherwise it is an FP and claims nothing. Unclaimed ground truths are FNs.
MatchOutcome match_detections(std::span<const Detection> detections, std::span<const BBox> ground_truth,
                              double iou_threshold = kDefaultIouThreshold);

struct FlaggedDetection {
  double confidence = 0.0;
  bool is_tp = false;
};

std::vector<FlaggedDetection> flagged(const MatchOutcome& outcome);

struct PRPoint {
  double precision = 0.0;
  double recall = 0.0;
  double confidence = 0.0;  // confidence of the detection that closes this prefix
};

// Point i uses cumulative counts over the first i+1 detections, which must
// already be in descending confidence order. Throws UndefinedRecallError
// when gt_count is 0 and detections are non-empty.
std::vector<PRPoint> precision_recall_curve(std::span<const FlaggedDetection> detections,
                                            std::size_t gt_count);

// (1/11) * sum over r in {0, 0.1, ..., 1} of the best precision among
// points with recall >= r (0 if none).
double interpolated_ap_11pt(std::span<const PRPoint> curve);

enum class EvalScope { PerImageAveraged, DatasetLevel };

std::string_view scope_name(EvalScope scope);  // "per-image" / "dataset"
EvalScope parse_scope(std::string_view name);

struct ClassAP {
  int class_id = 0;
  double ap = 0.0;
  std::vector<PRPoint> curve;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t gt_count = 0;
};

struct ImageResult {
  std::string image_id;
  double map = 0.0;
  std::vector<ClassAP> per_class;
};

struct EvalReport {
  std::vector<ClassAP> per_class;
  double map = 0.0;
  EvalScope scope = EvalScope::PerImageAveraged;
  double iou_threshold = kDefaultIouThreshold;
  // Filled for PerImageAveraged: the images that entered the mean.
  std::vector<ImageResult> per_image;
};

using GroundTruthSet = std::map<std::string, std::vector<BBox>, std::less<>>;
using DetectionSet = std::map<std::string, std::vector<Detection>, std::less<>>;

// DatasetLevel pools each class over all images (matching stays per image)
// and averages AP over classes that have ground truth or detections; a
// class with detections but no ground truth scores 0.
//
// PerImageAveraged computes, per image, the mean AP over the classes in
// that image's ground truth and averages those over images. Images with
// neither ground truth nor detections are skipped; an image with
// detections but no ground truth scores 0. Its per_class entries hold
// the mean per-image AP of each class and counts summed over images, with
// curves left empty (per-image curves live in per_image).
//
// Throws InputError for detections on unknown image ids or boxes whose
// class is not in the map.
EvalReport evaluate(const GroundTruthSet& ground_truth, const DetectionSet& detections,
                    const ClassMap& classes, double iou_threshold = kDefaultIouThreshold,
                    EvalScope scope = EvalScope::PerImageAveraged, int jobs = 1);

struct RunStats {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

// Throws AggregationError on an empty list.
RunStats aggregate_runs(std::span<const double> maps);

}  // namespace uavdet

#endif  // UAVDET_EVAL_HPP_
