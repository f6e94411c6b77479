#ifndef UAVDET_TESTS_ORACLES_REFERENCE_EVAL_HPP_
#define UAVDET_TESTS_ORACLES_REFERENCE_EVAL_HPP_

// Brute-force reference scorer. Written against the matching and AP rules
// directly: detections are picked by repeated max-search instead of a
// sort, recall levels are compared as exact integer ratios, and the best
// precision per level is found by enumerating every prefix.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "uavdet/geometry.hpp"

namespace uavdet::oracle {

struct RefDet {
  double x0, y0, x1, y1;
  int cls;
  double conf;
};

struct RefGt {
  double x0, y0, x1, y1;
  int cls;
};

inline double ref_iou(double ax0, double ay0, double ax1, double ay1, double bx0, double by0, double bx1,
                      double by1) {
  const double ix0 = ax0 > bx0 ? ax0 : bx0;
  const double iy0 = ay0 > by0 ? ay0 : by0;
  const double ix1 = ax1 < bx1 ? ax1 : bx1;
  const double iy1 = ay1 < by1 ? ay1 : by1;
  double inter = 0.0;
  if (ix1 > ix0 && iy1 > iy0) inter = (ix1 - ix0) * (iy1 - iy0);
  const double uni = (ax1 - ax0) * (ay1 - ay0) + (bx1 - bx0) * (by1 - by0) - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

// TP/FP flags for the detections of one class in one image, in the order
// they are picked (highest confidence, earliest input first).
struct RefFlags {
  std::vector<double> conf;
  std::vector<bool> tp;
  std::size_t gt = 0;
};

inline RefFlags ref_match(const std::vector<RefDet>& dets, const std::vector<RefGt>& gts, int cls, double thr) {
  RefFlags out;
  std::vector<std::size_t> det_idx;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (dets[i].cls == cls) det_idx.push_back(i);
  }
  std::vector<std::size_t> gt_idx;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    if (gts[i].cls == cls) gt_idx.push_back(i);
  }
  out.gt = gt_idx.size();
  std::vector<bool> used_det(det_idx.size(), false);
  std::vector<bool> used_gt(gt_idx.size(), false);
  for (std::size_t step = 0; step < det_idx.size(); ++step) {
    std::size_t pick = det_idx.size();
    for (std::size_t k = 0; k < det_idx.size(); ++k) {
      if (used_det[k]) continue;
      if (pick == det_idx.size() || dets[det_idx[k]].conf > dets[det_idx[pick]].conf) pick = k;
    }
    used_det[pick] = true;
    const RefDet& d = dets[det_idx[pick]];
    double best = -1.0;
    std::size_t best_g = gt_idx.size();
    for (std::size_t g = 0; g < gt_idx.size(); ++g) {
      if (used_gt[g]) continue;
      const RefGt& t = gts[gt_idx[g]];
      const double v = ref_iou(d.x0, d.y0, d.x1, d.y1, t.x0, t.y0, t.x1, t.y1);
      if (v > best) {
        best = v;
        best_g = g;
      }
    }
    const bool hit = best_g < gt_idx.size() && best > thr;
    if (hit) used_gt[best_g] = true;
    out.conf.push_back(d.conf);
    out.tp.push_back(hit);
  }
  return out;
}

// 11-point AP from flags in ranked order.
inline double ref_ap(const std::vector<bool>& tp, std::size_t gt) {
  if (gt == 0) return 0.0;
  double sum = 0.0;
  for (long level = 0; level <= 10; ++level) {
    // best precision tp_i/n_i over prefixes with tp_i/gt >= level/10
    long best_num = 0;
    long best_den = 1;
    bool any = false;
    long tps = 0;
    for (std::size_t i = 0; i < tp.size(); ++i) {
      tps += tp[i] ? 1 : 0;
      const long n = static_cast<long>(i) + 1;
      if (tps * 10 < level * static_cast<long>(gt)) continue;
      if (!any || tps * best_den > best_num * n) {
        best_num = tps;
        best_den = n;
        any = true;
      }
    }
    if (any) sum += static_cast<double>(best_num) / static_cast<double>(best_den);
  }
  return sum / 11.0;
}

struct RefImage {
  std::vector<RefGt> gts;
  std::vector<RefDet> dets;
};

// Pools classes across images: per-image flags are merged and re-ranked
// by confidence with ties resolved by (image order, rank within image).
inline double ref_dataset_map(const std::map<std::string, RefImage>& images, int classes, double thr) {
  double sum = 0.0;
  int counted = 0;
  for (int c = 0; c < classes; ++c) {
    struct Item {
      double conf;
      bool tp;
      std::size_t seq;
    };
    std::vector<Item> all;
    std::size_t gt = 0;
    for (const auto& [id, img] : images) {
      const RefFlags f = ref_match(img.dets, img.gts, c, thr);
      gt += f.gt;
      for (std::size_t i = 0; i < f.tp.size(); ++i) all.push_back({f.conf[i], f.tp[i], all.size()});
    }
    if (gt == 0 && all.empty()) continue;
    ++counted;
    if (gt == 0) continue;
    // selection sort, highest confidence first, lowest seq on ties
    std::vector<bool> ranked;
    std::vector<bool> taken(all.size(), false);
    for (std::size_t s = 0; s < all.size(); ++s) {
      std::size_t pick = all.size();
      for (std::size_t k = 0; k < all.size(); ++k) {
        if (taken[k]) continue;
        if (pick == all.size() || all[k].conf > all[pick].conf) pick = k;
      }
      taken[pick] = true;
      ranked.push_back(all[pick].tp);
    }
    sum += ref_ap(ranked, gt);
  }
  return counted == 0 ? 0.0 : sum / counted;
}

inline double ref_per_image_map(const std::map<std::string, RefImage>& images, int classes, double thr) {
  double sum = 0.0;
  int counted = 0;
  for (const auto& [id, img] : images) {
    std::set<int> present;
    for (const auto& g : img.gts) present.insert(g.cls);
    if (present.empty()) {
      if (img.dets.empty()) continue;
      ++counted;  // hallucinations on an empty frame score 0
      continue;
    }
    double s = 0.0;
    for (int c : present) {
      const RefFlags f = ref_match(img.dets, img.gts, c, thr);
      s += ref_ap(f.tp, f.gt);
    }
    sum += s / static_cast<double>(present.size());
    ++counted;
  }
  (void)classes;
  return counted == 0 ? 0.0 : sum / counted;
}

}  // namespace uavdet::oracle

#endif  // UAVDET_TESTS_ORACLES_REFERENCE_EVAL_HPP_
