#include "uavdet/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "text_util.hpp"
#include "uavdet/annotations.hpp"
#include "uavdet/augment.hpp"
#include "uavdet/compare.hpp"
#include "uavdet/error.hpp"
#include "uavdet/eval.hpp"
#include "uavdet/image.hpp"
#include "uavdet/oracle_detector.hpp"
#include "uavdet/overlay.hpp"
#include "uavdet/parallel.hpp"
#include "uavdet/random.hpp"
#include "uavdet/report_io.hpp"
#include "uavdet/resize.hpp"
#include "uavdet/run_table.hpp"
#include "uavdet/scene.hpp"

namespace fs = std::filesystem;

namespace uavdet {
namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create directory '{}': {}", dir.string(), ec.message()));
}

// Regular files in `dir` with the given extension, sorted by name.
std::vector<fs::path> list_files(const fs::path& dir, std::initializer_list<std::string_view> exts) {
  if (!fs::is_directory(dir)) throw IoError(fmt::format("'{}' is not a directory", dir.string()));
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto ext = e.path().extension().string();
    if (std::find(exts.begin(), exts.end(), ext) != exts.end()) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <typename T>
std::vector<T> parse_triple(const std::string& s, const char* what) {
  const auto parts = detail::split_on(s, ',');
  if (parts.size() != 3) throw ParameterError(fmt::format("{}: expected three comma-separated values", what));
  std::vector<T> out;
  for (auto p : parts) {
    if constexpr (std::is_floating_point_v<T>) {
      const auto v = detail::to_double(detail::trim(p));
      if (!v) throw ParameterError(fmt::format("{}: '{}' is not a number", what, p));
      out.push_back(*v);
    } else {
      const auto v = detail::to_int(detail::trim(p));
      if (!v || *v < 0) throw ParameterError(fmt::format("{}: '{}' is not a non-negative integer", what, p));
      out.push_back(static_cast<T>(*v));
    }
  }
  return out;
}

void print_warnings(std::ostream& err, const Warnings& warnings, const fs::path& file) {
  for (const auto& w : warnings) err << "warning: " << file.string() << ": " << w << "\n";
}

std::string id_list(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) out += id + "\n";
  return out;
}

// ---------------------------------------------------------------- split

struct SplitArgs {
  std::string manifest;
  std::string ratios;
  std::string counts;
  std::uint64_t seed = 0;
  std::optional<std::size_t> n;
  std::string group_delimiter;
  std::string out_dir = ".";
};

int run_split(const SplitArgs& a, std::ostream& out, std::ostream&) {
  DatasetManifest manifest;
  manifest.items = parse_manifest(read_text(a.manifest));
  manifest.class_map = ClassMap::drone_default();
  if (a.n) {
    if (*a.n > manifest.items.size()) {
      throw InputError(fmt::format("--n {} exceeds the {} manifest items", *a.n, manifest.items.size()));
    }
    manifest.items.resize(*a.n);
  }
  SplitOptions options;
  if (!a.group_delimiter.empty()) {
    if (a.group_delimiter.size() != 1) throw ParameterError("--group-delimiter must be a single character");
    options.group_delimiter = a.group_delimiter[0];
  }
  SplitResult result;
  if (!a.counts.empty()) {
    const auto c = parse_triple<std::size_t>(a.counts, "--counts");
    result = split_dataset(manifest, SplitCounts{c[0], c[1], c[2]}, a.seed, options);
  } else {
    const auto r = parse_triple<double>(a.ratios.empty() ? "0.7,0.15,0.15" : a.ratios, "--ratios");
    result = split_dataset(manifest, SplitRatios{r[0], r[1], r[2]}, a.seed, options);
  }
  const fs::path dir(a.out_dir);
  ensure_dir(dir);
  write_text(dir / "train.txt", id_list(result.train));
  write_text(dir / "val.txt", id_list(result.val));
  write_text(dir / "test.txt", id_list(result.test));
  out << "train: " << result.train.size() << "\n"
      << "val: " << result.val.size() << "\n"
      << "test: " << result.test.size() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- augment

struct AugmentArgs {
  std::string in_dir;
  std::string labels_dir;
  std::string out_dir;
  std::string pipeline;
  std::uint64_t seed = 0;
  int jobs = 1;
};

// YOLO labels for `stem`, or none if the file does not exist.
std::vector<BBox> load_yolo_or_empty(const fs::path& labels_dir, const std::string& stem, int w, int h,
                                     Warnings& warnings) {
  const fs::path p = labels_dir / (stem + ".txt");
  if (labels_dir.empty() || !fs::exists(p)) return {};
  return parse_yolo_labels(read_text(p), w, h, &warnings);
}

int run_augment(const AugmentArgs& a, std::ostream& out, std::ostream& err) {
  const auto pipeline = parse_pipeline_config(read_text(a.pipeline), a.seed);
  const auto images = list_files(a.in_dir, {".png"});
  const fs::path out_dir(a.out_dir);
  ensure_dir(out_dir);
  std::vector<std::string> applied(images.size());
  std::vector<Warnings> warnings(images.size());
  parallel_for(images.size(), a.jobs, [&](std::size_t i) {
    const std::string stem = images[i].stem().string();
    const ImageBuffer img = read_png(images[i]);
    const auto boxes = load_yolo_or_empty(a.labels_dir, stem, img.width(), img.height(), warnings[i]);
    const auto r = apply_pipeline(img, boxes, pipeline, derive_seed(a.seed, hash_name(stem)));
    write_png(out_dir / (stem + ".png"), r.image);
    write_text(out_dir / (stem + ".txt"),
               write_yolo_labels(LabeledImage{stem, r.image.width(), r.image.height(), r.boxes}));
    std::string kinds;
    for (auto k : r.applied) kinds += (kinds.empty() ? "" : ",") + std::string(kind_name(k));
    applied[i] = stem + "\t" + (kinds.empty() ? "-" : kinds) + "\n";
  });
  std::string log;
  for (std::size_t i = 0; i < images.size(); ++i) {
    print_warnings(err, warnings[i], images[i]);
    log += applied[i];
  }
  write_text(out_dir / "applied.tsv", log);
  out << "augmented " << images.size() << " images\n";
  return kExitOk;
}

// ---------------------------------------------------------------- resize

struct ResizeArgs {
  std::string in_dir;
  std::string labels_dir;
  std::string out_dir;
  std::string method = "stretch";
  int size = kDefaultTargetSize;
  int jobs = 1;
};

int run_resize(const ResizeArgs& a, std::ostream& out, std::ostream& err) {
  const ResizeMethod method = parse_resize_method(a.method);
  const auto images = list_files(a.in_dir, {".png"});
  const fs::path out_dir(a.out_dir);
  ensure_dir(out_dir);
  std::vector<std::string> plan_lines(images.size());
  std::vector<Warnings> warnings(images.size());
  parallel_for(images.size(), a.jobs, [&](std::size_t i) {
    const std::string stem = images[i].stem().string();
    const ImageBuffer img = read_png(images[i]);
    const ResizePlan plan = plan_resize(method, img.width(), img.height(), a.size);
    write_png(out_dir / (stem + ".png"), apply_resize(img, plan));
    if (!a.labels_dir.empty()) {
      const auto boxes = load_yolo_or_empty(a.labels_dir, stem, img.width(), img.height(), warnings[i]);
      LabeledImage mapped{stem, plan.target, plan.target, {}};
      for (const auto& b : boxes) {
        if (auto c = clamp_box(map_box_forward(b, plan), plan.target, plan.target)) mapped.boxes.push_back(*c);
      }
      write_text(out_dir / (stem + ".txt"), write_yolo_labels(mapped));
    }
    plan_lines[i] = fmt::format("{}\t{}\t{}\t{}\t{}\t{:.12g}\t{:.12g}\t{}\t{}\n", stem, method_name(plan.method),
                                plan.source_w, plan.source_h, plan.target, plan.scale_x, plan.scale_y,
                                plan.pad_left, plan.pad_top);
  });
  std::string plans = "image_id\tmethod\tsource_w\tsource_h\ttarget\tscale_x\tscale_y\tpad_left\tpad_top\n";
  for (std::size_t i = 0; i < images.size(); ++i) {
    print_warnings(err, warnings[i], images[i]);
    plans += plan_lines[i];
  }
  write_text(out_dir / "plans.tsv", plans);
  out << "resized " << images.size() << " images to " << a.size << "x" << a.size << " (" << a.method << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string gt_dir;
  std::string pred_dir;
  double iou = kDefaultIouThreshold;
  std::string scope = "per-image";
  std::optional<double> fail_under;
  std::string csv;
  std::string json;
  std::string classes;
  std::string manifest;
  int jobs = 1;
};

// A ground-truth file is YOLO text (.txt) or a LabelMe document (.json).
// YOLO files need image dimensions; without a manifest entry they are
// read in normalized 1x1 coordinates, which leaves every IoU unchanged.
LabeledImage load_ground_truth(const fs::path& file, const ClassMap& classes,
                               const std::map<std::string, std::array<int, 2>>& dims, Warnings& warnings) {
  const std::string stem = file.stem().string();
  if (file.extension() == ".json") return parse_labelme(read_text(file), classes, stem, &warnings);
  LabeledImage img{stem, 1, 1, {}};
  if (const auto it = dims.find(stem); it != dims.end()) {
    img.width = it->second[0];
    img.height = it->second[1];
  }
  img.boxes = parse_yolo_labels(read_text(file), img.width, img.height, &warnings);
  return img;
}

int run_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const EvalScope scope = parse_scope(a.scope);
  if (!(a.iou > 0.0 && a.iou < 1.0)) throw ParameterError(fmt::format("--iou must be in (0,1), got {}", a.iou));
  const ClassMap classes = a.classes.empty() ? ClassMap::drone_default() : parse_class_map(read_text(a.classes));
  std::map<std::string, std::array<int, 2>> dims;
  if (!a.manifest.empty()) {
    for (const auto& it : parse_manifest(read_text(a.manifest))) dims[it.image_id] = {it.width, it.height};
  }

  GroundTruthSet gts;
  std::map<std::string, std::array<int, 2>> gt_dims;
  for (const auto& file : list_files(a.gt_dir, {".txt", ".json"})) {
    Warnings w;
    LabeledImage img = load_ground_truth(file, classes, dims, w);
    print_warnings(err, w, file);
    if (gts.contains(img.image_id)) throw InputError(fmt::format("duplicate ground truth for '{}'", img.image_id));
    gt_dims[img.image_id] = {img.width, img.height};
    gts[img.image_id] = std::move(img.boxes);
  }
  DetectionSet dets;
  for (const auto& file : list_files(a.pred_dir, {".txt"})) {
    const std::string stem = file.stem().string();
    const auto it = gt_dims.find(stem);
    if (it == gt_dims.end()) {
      throw InputError(fmt::format("predictions '{}' reference unknown image id '{}'", file.string(), stem));
    }
    dets[stem] = parse_predictions(read_text(file), it->second[0], it->second[1]);
  }

  const EvalReport report = evaluate(gts, dets, classes, a.iou, scope, a.jobs);
  out << "scope: " << scope_name(report.scope) << "\n";
  out << fmt::format("iou: {:.2f}\n", report.iou_threshold);
  for (const auto& c : report.per_class) {
    out << fmt::format("AP {}: {} (tp {}, fp {}, fn {})\n", classes.name(c.class_id), format_percent(c.ap), c.tp,
                       c.fp, c.fn);
  }
  out << "mAP: " << format_percent(report.map) << "\n";
  if (!a.csv.empty()) write_text(a.csv, report_to_csv(report, classes));
  if (!a.json.empty()) write_text(a.json, report_to_json(report, classes));
  if (a.fail_under && report.map < *a.fail_under) {
    err << fmt::format("mAP {} is below --fail-under {}\n", format_percent(report.map), format_percent(*a.fail_under));
    return kExitBelowFloor;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  std::string config;
  int runs = 3;
  std::uint64_t seed = 0;
  std::string csv;
  int jobs = 1;
};

int run_compare_cmd(const CompareArgs& a, std::ostream& out, std::ostream&) {
  const auto config = parse_compare_config(read_text(a.config));
  const RunTable table = run_compare(config, a.runs, a.seed, a.jobs);
  out << emit_table(table, TableFormat::Markdown);
  if (!a.csv.empty()) write_text(a.csv, emit_table(table, TableFormat::Csv));
  return kExitOk;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::string spec;
  int count = 10;
  std::string out_dir;
  std::string noise;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

int run_synth(const SynthArgs& a, std::ostream& out, std::ostream&) {
  SceneSpec spec = parse_scene_spec(read_text(a.spec));
  if (a.seed) spec.seed = *a.seed;
  if (a.count < 0) throw ParameterError("--count must be >= 0");
  std::optional<NoiseModel> noise;
  if (!a.noise.empty()) noise = parse_noise_model(read_text(a.noise));
  const ClassMap classes = ClassMap::drone_default();

  const fs::path root(a.out_dir);
  ensure_dir(root / "images");
  ensure_dir(root / "labels");
  if (noise) ensure_dir(root / "predictions");

  const auto n = static_cast<std::size_t>(a.count);
  std::vector<ManifestItem> items(n);
  parallel_for(n, a.jobs, [&](std::size_t i) {
    const std::string id = fmt::format("scene_{:04d}", i);
    SceneSpec s = spec;
    s.seed = derive_seed(spec.seed, i);
    const Scene scene = generate_scene(s, id);
    write_png(root / "images" / (id + ".png"), scene.image);
    write_text(root / "labels" / (id + ".txt"), write_yolo_labels(scene.labels));
    if (noise) {
      const auto dets = oracle_detector(scene.labels, *noise, derive_seed(s.seed, 1), static_cast<int>(classes.size()));
      write_text(root / "predictions" / (id + ".txt"), write_predictions(dets, s.width, s.height));
    }
    items[i] = {id, s.width, s.height, "labels/" + id + ".txt"};
  });
  write_text(root / "manifest.tsv", write_manifest(items));
  write_text(root / "classes.tsv", write_class_map(classes));
  out << "wrote " << n << " scenes to " << root.string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- render

struct RenderArgs {
  std::string image;
  std::string gt;
  std::string pred;
  std::string out_file;
  std::string classes;
  bool hide_confidence = false;
};

int run_render(const RenderArgs& a, std::ostream& out, std::ostream& err) {
  const ImageBuffer img = read_png(a.image);
  const ClassMap classes = a.classes.empty() ? ClassMap::drone_default() : parse_class_map(read_text(a.classes));
  std::vector<BBox> gts;
  if (!a.gt.empty()) {
    Warnings w;
    const fs::path p(a.gt);
    gts = p.extension() == ".json" ? parse_labelme(read_text(p), classes, {}, &w).boxes
                                   : parse_yolo_labels(read_text(p), img.width(), img.height(), &w);
    print_warnings(err, w, p);
  }
  std::vector<Detection> dets;
  if (!a.pred.empty()) dets = parse_predictions(read_text(a.pred), img.width(), img.height());
  write_png(a.out_file, render_overlay(img, gts, dets, OverlayOptions{!a.hide_confidence}));
  out << "rendered " << gts.size() << " ground-truth and " << dets.size() << " predicted boxes\n";
  return kExitOk;
}

}  // namespace

int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detection dataset and evaluation toolkit", "uavdet"};
  app.require_subcommand(1);

  SplitArgs split;
  auto* split_cmd = app.add_subcommand("split", "Shuffle a manifest into train/val/test id lists");
  split_cmd->add_option("--manifest", split.manifest, "Manifest TSV")->required();
  auto* ratios = split_cmd->add_option("--ratios", split.ratios, "Fractions a,b,c (default 0.7,0.15,0.15)");
  auto* counts = split_cmd->add_option("--counts", split.counts, "Explicit sizes x,y,z");
  ratios->excludes(counts);
  split_cmd->add_option("--seed", split.seed, "Shuffle seed");
  split_cmd->add_option("--n", split.n, "Use only the first N manifest items");
  split_cmd->add_option("--group-delimiter", split.group_delimiter,
                        "Keep ids sharing the prefix before the last occurrence of this character together");
  split_cmd->add_option("--out", split.out_dir, "Output directory");

  AugmentArgs aug;
  auto* aug_cmd = app.add_subcommand("augment", "Apply an augmentation pipeline to PNG images and YOLO labels");
  aug_cmd->add_option("--in", aug.in_dir, "Directory of PNG images")->required();
  aug_cmd->add_option("--labels", aug.labels_dir, "Directory of YOLO label files")->required();
  aug_cmd->add_option("--out", aug.out_dir, "Output directory")->required();
  aug_cmd->add_option("--pipeline", aug.pipeline, "Pipeline configuration file")->required();
  aug_cmd->add_option("--seed", aug.seed, "Base seed");
  aug_cmd->add_option("--jobs", aug.jobs, "Worker threads")->check(CLI::PositiveNumber);

  ResizeArgs rs;
  auto* rs_cmd = app.add_subcommand("resize", "Stretch or letterbox images to a square target");
  rs_cmd->add_option("--in", rs.in_dir, "Directory of PNG images")->required();
  rs_cmd->add_option("--labels", rs.labels_dir, "Directory of YOLO label files");
  rs_cmd->add_option("--out", rs.out_dir, "Output directory")->required();
  rs_cmd->add_option("--resize", rs.method, "stretch|letterbox")->check(CLI::IsMember({"stretch", "letterbox"}));
  rs_cmd->add_option("--size", rs.size, "Target side in pixels")->check(CLI::PositiveNumber);
  rs_cmd->add_option("--jobs", rs.jobs, "Worker threads")->check(CLI::PositiveNumber);

  EvalArgs ev;
  auto* ev_cmd = app.add_subcommand("eval", "Score prediction files against ground truth (mAP)");
  ev_cmd->add_option("--gt", ev.gt_dir, "Ground-truth directory (.txt YOLO or .json LabelMe)")->required();
  ev_cmd->add_option("--pred", ev.pred_dir, "Prediction directory")->required();
  ev_cmd->add_option("--iou", ev.iou, "IoU threshold");
  ev_cmd->add_option("--scope", ev.scope, "per-image|dataset")->check(CLI::IsMember({"per-image", "dataset"}));
  ev_cmd->add_option("--fail-under", ev.fail_under, "Exit 3 when mAP (ratio) is below this");
  ev_cmd->add_option("--csv", ev.csv, "Write the report as CSV");
  ev_cmd->add_option("--json", ev.json, "Write the full report as JSON");
  ev_cmd->add_option("--classes", ev.classes, "Class-map file");
  ev_cmd->add_option("--manifest", ev.manifest, "Manifest with image dimensions");
  ev_cmd->add_option("--jobs", ev.jobs, "Worker threads")->check(CLI::PositiveNumber);

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Mean (std) mAP table over repeated synthetic runs");
  cmp_cmd->add_option("--config", cmp.config, "Compare configuration (JSON)")->required();
  cmp_cmd->add_option("--runs", cmp.runs, "Runs per configuration")->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--seed", cmp.seed, "Base seed");
  cmp_cmd->add_option("--csv", cmp.csv, "Also write the table as CSV");
  cmp_cmd->add_option("--jobs", cmp.jobs, "Worker threads")->check(CLI::PositiveNumber);

  SynthArgs syn;
  auto* syn_cmd = app.add_subcommand("synth", "Generate synthetic scenes, labels and oracle predictions");
  syn_cmd->add_option("--spec", syn.spec, "Scene spec (JSON)")->required();
  syn_cmd->add_option("--count", syn.count, "Number of scenes")->required();
  syn_cmd->add_option("--out", syn.out_dir, "Output directory")->required();
  syn_cmd->add_option("--noise", syn.noise, "Noise model (JSON); writes predictions/");
  syn_cmd->add_option("--seed", syn.seed, "Override the spec seed");
  syn_cmd->add_option("--jobs", syn.jobs, "Worker threads")->check(CLI::PositiveNumber);

  RenderArgs rd;
  auto* rd_cmd = app.add_subcommand("render", "Draw ground truth (blue) and predictions (red) over an image");
  rd_cmd->add_option("--image", rd.image, "PNG image")->required();
  rd_cmd->add_option("--gt", rd.gt, "Ground truth (.txt YOLO or .json LabelMe)");
  rd_cmd->add_option("--pred", rd.pred, "Prediction file");
  rd_cmd->add_option("--out", rd.out_file, "Output PNG")->required();
  rd_cmd->add_option("--classes", rd.classes, "Class-map file (for LabelMe ground truth)");
  rd_cmd->add_flag("--hide-confidence", rd.hide_confidence, "Stamp class ids only");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "uavdet: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "split") return run_split(split, out, err);
    if (name == "augment") return run_augment(aug, out, err);
    if (name == "resize") return run_resize(rs, out, err);
    if (name == "eval") return run_eval(ev, out, err);
    if (name == "compare") return run_compare_cmd(cmp, out, err);
    if (name == "synth") return run_synth(syn, out, err);
    if (name == "render") return run_render(rd, out, err);
  } catch (const std::exception& e) {
    err << "uavdet " << name << ": " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace uavdet
