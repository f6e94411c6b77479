#ifndef UAVDET_ANNOTATIONS_HPP_
#define UAVDET_ANNOTATIONS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uavdet/geometry.hpp"

namespace uavdet {

// Ordered id -> name table. Ids are contiguous from 0; names are unique
// and non-empty.
class ClassMap {
 public:
  ClassMap() = default;
  // Throws ParameterError when names are empty or repeated.
  explicit ClassMap(std::vector<std::string> names);

  // 0 -> Obstacle, 1 -> Person.
  static ClassMap drone_default();

  std::size_t size() const { return names_.size(); }
  bool contains(int class_id) const {
    return class_id >= 0 && static_cast<std::size_t>(class_id) < names_.size();
  }
  const std::string& name(int class_id) const;
  // Throws UnknownClassError listing the valid names.
  int id_of(std::string_view name) const;
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const ClassMap&) const = default;

 private:
  std::vector<std::string> names_;
};

// Class-map file: one `class_id<TAB>name` line per class.
ClassMap parse_class_map(std::string_view text);
std::string write_class_map(const ClassMap& map);

struct LabeledImage {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::vector<BBox> boxes;
};

// Non-fatal notes produced while parsing (dropped zero-area boxes).
using Warnings = std::vector<std::string>;

// LabelMe rectangle document. Boxes are normalized to min/max corners and
// clamped to the image; boxes with no area left are dropped with a warning.
// `image_id` defaults to the stem of the document's imagePath.
LabeledImage parse_labelme(std::string_view document, const ClassMap& classes,
                           std::string image_id = {}, Warnings* warnings = nullptr);

// `class cx cy w h` per line, fractions of the image size.
std::vector<BBox> parse_yolo_labels(std::string_view text, int width, int height,
                                    Warnings* warnings = nullptr);

std::string write_yolo_labels(const LabeledImage& image);

// `class confidence cx cy w h` per line. Input order is preserved and no
// detection is dropped.
std::vector<Detection> parse_predictions(std::string_view text, int width, int height);

std::string write_predictions(const std::vector<Detection>& detections, int width, int height);

struct ManifestItem {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::string label_path;
};

struct DatasetManifest {
  std::vector<ManifestItem> items;
  ClassMap class_map;
};

// `image_id<TAB>width<TAB>height<TAB>label_path` per line. Ids must be
// unique.
std::vector<ManifestItem> parse_manifest(std::string_view text);
std::string write_manifest(const std::vector<ManifestItem>& items);

struct SplitResult {
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
  std::uint64_t seed = 0;
};

struct SplitRatios {
  double train = 0.70;
  double val = 0.15;
  double test = 0.15;
};

struct SplitCounts {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
};

struct SplitOptions {
  // When set, ids sharing the prefix before the last occurrence of this
  // character (e.g. `video3_0042` -> `video3`) are kept in one split.
  std::optional<char> group_delimiter;
};

// Sizes used by split_dataset for N items: train = round(r_train*N); the
// remainder goes to val/test in proportion r_val:r_test, with the ceiling
// half to val when the two ratios are equal.
SplitCounts split_sizes(std::size_t n, const SplitRatios& ratios);

// Shuffles the manifest ids (Fisher-Yates, seeded) and partitions them.
SplitResult split_dataset(const DatasetManifest& manifest, const SplitRatios& ratios,
                          std::uint64_t seed, const SplitOptions& options = {});

// Explicit-count mode; counts must sum to the manifest size.
SplitResult split_dataset(const DatasetManifest& manifest, const SplitCounts& counts,
                          std::uint64_t seed, const SplitOptions& options = {});

}  // namespace uavdet

#endif  // UAVDET_ANNOTATIONS_HPP_
