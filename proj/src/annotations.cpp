#include "uavdet/annotations.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "text_util.hpp"
#include "uavdet/error.hpp"
#include "uavdet/random.hpp"

namespace uavdet {

using detail::split_lines;
using detail::split_ws;
using detail::to_double;
using detail::to_int;
using detail::trim;

ClassMap::ClassMap(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw ParameterError("class map: empty class name");
    if (!seen.insert(n).second) throw ParameterError("class map: duplicate class name '" + n + "'");
  }
}

ClassMap ClassMap::drone_default() { return ClassMap({"Obstacle", "Person"}); }

const std::string& ClassMap::name(int class_id) const {
  if (!contains(class_id)) {
    throw UnknownClassError(fmt::format("unknown class id {} (map has {} classes)", class_id,
                                        names_.size()));
  }
  return names_[static_cast<std::size_t>(class_id)];
}

int ClassMap::id_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  throw UnknownClassError(fmt::format("unknown class '{}'; valid names: {}", name,
                                      fmt::join(names_, ", ")));
}

ClassMap parse_class_map(std::string_view text) {
  std::map<long long, std::string> entries;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw FormatError(i + 1, "expected class_id<TAB>name");
    const auto id = to_int(trim(line.substr(0, tab)));
    const auto name = trim(line.substr(tab + 1));
    if (!id || *id < 0) throw FormatError(i + 1, "class id must be a non-negative integer");
    if (name.empty()) throw FormatError(i + 1, "empty class name");
    if (!entries.emplace(*id, std::string(name)).second) {
      throw FormatError(i + 1, fmt::format("duplicate class id {}", *id));
    }
  }
  std::vector<std::string> names;
  long long expected = 0;
  for (auto& [id, name] : entries) {
    if (id != expected) throw ParameterError(fmt::format("class map: ids must be contiguous from 0, missing {}", expected));
    names.push_back(std::move(name));
    ++expected;
  }
  return ClassMap(std::move(names));
}

std::string write_class_map(const ClassMap& map) {
  std::string out;
  for (std::size_t i = 0; i < map.size(); ++i) out += fmt::format("{}\t{}\n", i, map.names()[i]);
  return out;
}

namespace {

void add_clamped(std::vector<BBox>& boxes, const BBox& raw, int width, int height,
                 Warnings* warnings, const std::string& where) {
  if (auto b = clamp_box(raw, width, height)) {
    boxes.push_back(*b);
  } else if (warnings) {
    warnings->push_back(where + ": zero-area box after clamping, dropped");
  }
}

double json_number(const nlohmann::json& v, const std::string& field) {
  if (!v.is_number()) throw ParseError(field + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(field + ": not finite");
  return d;
}

int json_dimension(const nlohmann::json& doc, const char* field) {
  if (!doc.contains(field)) throw ParseError(std::string(field) + ": missing");
  const auto& v = doc[field];
  if (!v.is_number_integer()) throw ParseError(std::string(field) + ": expected an integer");
  const auto d = v.get<long long>();
  if (d <= 0) throw ParseError(std::string(field) + ": must be positive");
  return static_cast<int>(d);
}

}  // namespace

LabeledImage parse_labelme(std::string_view document, const ClassMap& classes,
                           std::string image_id, Warnings* warnings) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("document: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document: expected a JSON object");

  LabeledImage image;
  image.width = json_dimension(doc, "imageWidth");
  image.height = json_dimension(doc, "imageHeight");
  if (image_id.empty() && doc.contains("imagePath") && doc["imagePath"].is_string()) {
    image_id = std::filesystem::path(doc["imagePath"].get<std::string>()).stem().string();
  }
  image.image_id = std::move(image_id);

  if (!doc.contains("shapes")) throw ParseError("shapes: missing");
  const auto& shapes = doc["shapes"];
  if (!shapes.is_array()) throw ParseError("shapes: expected an array");

  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const auto& shape = shapes[i];
    const std::string where = fmt::format("shapes[{}]", i);
    if (!shape.is_object()) throw ParseError(where + ": expected an object");
    if (!shape.contains("label") || !shape["label"].is_string()) {
      throw ParseError(where + ".label: missing or not a string");
    }
    if (!shape.contains("shape_type") || !shape["shape_type"].is_string()) {
      throw ParseError(where + ".shape_type: missing or not a string");
    }
    const auto type = shape["shape_type"].get<std::string>();
    if (type != "rectangle") {
      throw UnsupportedShapeError(where + ": unsupported shape_type '" + type + "' (only rectangle)");
    }
    if (!shape.contains("points") || !shape["points"].is_array() || shape["points"].size() != 2) {
      throw ParseError(where + ".points: expected two [x,y] pairs");
    }
    double xy[2][2];
    for (std::size_t p = 0; p < 2; ++p) {
      const auto& pt = shape["points"][p];
      const std::string pfield = fmt::format("{}.points[{}]", where, p);
      if (!pt.is_array() || pt.size() != 2) throw ParseError(pfield + ": expected [x,y]");
      xy[p][0] = json_number(pt[0], pfield + "[0]");
      xy[p][1] = json_number(pt[1], pfield + "[1]");
    }
    const int class_id = classes.id_of(shape["label"].get<std::string>());
    add_clamped(image.boxes, box_from_corners(xy[0][0], xy[0][1], xy[1][0], xy[1][1], class_id),
                image.width, image.height, warnings, where);
  }
  return image;
}

namespace {

struct LabelFields {
  int class_id;
  std::vector<double> values;
};

// Parses one `class v1 v2 ...` line with `count` numeric fields after the
// class id, each required to lie in [0,1].
LabelFields parse_label_line(std::string_view line, std::size_t line_no, std::size_t count) {
  const auto fields = split_ws(line);
  if (fields.size() != count + 1) {
    throw FormatError(line_no, fmt::format("expected {} fields, found {}", count + 1, fields.size()));
  }
  const auto cls = to_int(fields[0]);
  if (!cls || *cls < 0) throw FormatError(line_no, "class id must be a non-negative integer");
  LabelFields out{static_cast<int>(*cls), {}};
  for (std::size_t k = 1; k < fields.size(); ++k) {
    const auto v = to_double(fields[k]);
    if (!v || !std::isfinite(*v)) {
      throw FormatError(line_no, fmt::format("field {} is not a number: '{}'", k + 1, fields[k]));
    }
    if (*v < 0.0 || *v > 1.0) {
      throw RangeError(fmt::format("line {}: field {} = {} outside [0,1]", line_no, k + 1, *v));
    }
    out.values.push_back(*v);
  }
  return out;
}

}  // namespace

std::vector<BBox> parse_yolo_labels(std::string_view text, int width, int height,
                                    Warnings* warnings) {
  std::vector<BBox> boxes;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto f = parse_label_line(line, i + 1, 4);
    const BBox b = center_format_to_box({f.values[0], f.values[1], f.values[2], f.values[3]},
                                        f.class_id, width, height);
    add_clamped(boxes, b, width, height, warnings, fmt::format("line {}", i + 1));
  }
  return boxes;
}

std::string write_yolo_labels(const LabeledImage& image) {
  std::string out;
  for (const auto& b : image.boxes) {
    const auto c = box_to_center_format(b, image.width, image.height);
    out += fmt::format("{} {:.6f} {:.6f} {:.6f} {:.6f}\n", b.class_id, c.cx, c.cy, c.w, c.h);
  }
  return out;
}

std::vector<Detection> parse_predictions(std::string_view text, int width, int height) {
  std::vector<Detection> dets;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto f = parse_label_line(line, i + 1, 5);
    dets.push_back(Detection{
        center_format_to_box({f.values[1], f.values[2], f.values[3], f.values[4]}, f.class_id,
                             width, height),
        f.values[0]});
  }
  return dets;
}

std::string write_predictions(const std::vector<Detection>& detections, int width, int height) {
  std::string out;
  for (const auto& d : detections) {
    const auto c = box_to_center_format(d.box, width, height);
    out += fmt::format("{} {:.6f} {:.6f} {:.6f} {:.6f} {:.6f}\n", d.box.class_id, d.confidence,
                       c.cx, c.cy, c.w, c.h);
  }
  return out;
}

std::vector<ManifestItem> parse_manifest(std::string_view text) {
  std::vector<ManifestItem> items;
  std::set<std::string, std::less<>> ids;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto fields = detail::split_on(line, '\t');
    if (fields.size() != 4) {
      throw FormatError(i + 1, fmt::format("expected 4 tab-separated fields, found {}", fields.size()));
    }
    const auto w = to_int(trim(fields[1]));
    const auto h = to_int(trim(fields[2]));
    if (!w || !h || *w <= 0 || *h <= 0) throw FormatError(i + 1, "width/height must be positive integers");
    ManifestItem item{std::string(trim(fields[0])), static_cast<int>(*w), static_cast<int>(*h),
                      std::string(trim(fields[3]))};
    if (item.image_id.empty()) throw FormatError(i + 1, "empty image id");
    if (!ids.insert(item.image_id).second) {
      throw FormatError(i + 1, "duplicate image id '" + item.image_id + "'");
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::string write_manifest(const std::vector<ManifestItem>& items) {
  std::string out;
  for (const auto& it : items) {
    out += fmt::format("{}\t{}\t{}\t{}\n", it.image_id, it.width, it.height, it.label_path);
  }
  return out;
}

SplitCounts split_sizes(std::size_t n, const SplitRatios& r) {
  const auto train = static_cast<std::size_t>(std::llround(r.train * static_cast<double>(n)));
  const std::size_t rest = n - std::min(train, n);
  std::size_t val;
  if (std::abs(r.val - r.test) <= 1e-9) {
    val = (rest + 1) / 2;
  } else {
    val = static_cast<std::size_t>(std::llround(static_cast<double>(rest) * r.val / (r.val + r.test)));
  }
  return SplitCounts{std::min(train, n), val, rest - val};
}

namespace {

void check_manifest(const DatasetManifest& manifest) {
  if (manifest.items.empty()) throw EmptyManifestError("manifest has no items");
  std::set<std::string_view> ids;
  for (const auto& it : manifest.items) {
    if (!ids.insert(it.image_id).second) {
      throw ParameterError("manifest: duplicate image id '" + it.image_id + "'");
    }
  }
}

template <typename T>
void seeded_shuffle(std::vector<T>& v, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_index(i));
    std::swap(v[i - 1], v[j]);
  }
}

std::string group_key(const std::string& id, char delim) {
  const auto pos = id.rfind(delim);
  return pos == std::string::npos ? id : id.substr(0, pos);
}

SplitResult partition(const DatasetManifest& manifest, const SplitCounts& counts,
                      std::uint64_t seed, const SplitOptions& options) {
  SplitResult result;
  result.seed = seed;
  if (!options.group_delimiter) {
    std::vector<std::string> ids;
    ids.reserve(manifest.items.size());
    for (const auto& it : manifest.items) ids.push_back(it.image_id);
    seeded_shuffle(ids, seed);
    auto first = ids.begin();
    result.train.assign(first, first + static_cast<std::ptrdiff_t>(counts.train));
    first += static_cast<std::ptrdiff_t>(counts.train);
    result.val.assign(first, first + static_cast<std::ptrdiff_t>(counts.val));
    first += static_cast<std::ptrdiff_t>(counts.val);
    result.test.assign(first, ids.end());
    return result;
  }

  // Groups keep manifest order internally; group order is shuffled. Each
  // group goes to the split with the largest remaining deficit, so sizes
  // approximate the targets but can't always hit them exactly.
  std::vector<std::string> keys;
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& it : manifest.items) {
    auto key = group_key(it.image_id, *options.group_delimiter);
    auto [pos, inserted] = groups.try_emplace(key);
    if (inserted) keys.push_back(key);
    pos->second.push_back(it.image_id);
  }
  seeded_shuffle(keys, seed);
  std::array<std::vector<std::string>*, 3> out{&result.train, &result.val, &result.test};
  const std::array<double, 3> target{static_cast<double>(counts.train),
                                     static_cast<double>(counts.val),
                                     static_cast<double>(counts.test)};
  for (const auto& key : keys) {
    std::size_t best = 0;
    double best_deficit = -1e300;
    for (std::size_t s = 0; s < 3; ++s) {
      const double deficit = target[s] - static_cast<double>(out[s]->size());
      if (deficit > best_deficit) {
        best_deficit = deficit;
        best = s;
      }
    }
    const auto& members = groups[key];
    out[best]->insert(out[best]->end(), members.begin(), members.end());
  }
  return result;
}

}  // namespace

SplitResult split_dataset(const DatasetManifest& manifest, const SplitRatios& ratios,
                          std::uint64_t seed, const SplitOptions& options) {
  if (!(ratios.train > 0.0 && ratios.val > 0.0 && ratios.test > 0.0)) {
    throw RatioError("split ratios must all be positive");
  }
  const double sum = ratios.train + ratios.val + ratios.test;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw RatioError(fmt::format("split ratios sum to {}, expected 1", sum));
  }
  check_manifest(manifest);
  return partition(manifest, split_sizes(manifest.items.size(), ratios), seed, options);
}

SplitResult split_dataset(const DatasetManifest& manifest, const SplitCounts& counts,
                          std::uint64_t seed, const SplitOptions& options) {
  check_manifest(manifest);
  if (counts.train + counts.val + counts.test != manifest.items.size()) {
    throw RatioError(fmt::format("split counts {}+{}+{} do not sum to the manifest size {}",
                                 counts.train, counts.val, counts.test, manifest.items.size()));
  }
  return partition(manifest, counts, seed, options);
}

}  // namespace uavdet
