#include "uavdet/annotations.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "uavdet/error.hpp"

namespace uavdet {
namespace {

const ClassMap kClasses = ClassMap::drone_default();

std::string labelme_doc(const std::string& shapes) {
  return R"({"version":"5.0.1","imagePath":"frames/video1_0007.png","imageWidth":1920,"imageHeight":1080,"shapes":[)" +
         shapes + "]}";
}

TEST(ClassMapTest, DroneDefault) {
  EXPECT_EQ(kClasses.size(), 2u);
  EXPECT_EQ(kClasses.name(0), "Obstacle");
  EXPECT_EQ(kClasses.name(1), "Person");
  EXPECT_EQ(kClasses.id_of("Person"), 1);
}

TEST(ClassMapTest, UnknownNameListsValidNames) {
  try {
    kClasses.id_of("Tree");
    FAIL() << "expected UnknownClassError";
  } catch (const UnknownClassError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("Obstacle"), std::string::npos);
    EXPECT_NE(what.find("Person"), std::string::npos);
  }
}

TEST(ClassMapTest, RejectsDuplicatesAndEmptyNames) {
  EXPECT_THROW(ClassMap({"A", "A"}), ParameterError);
  EXPECT_THROW(ClassMap({"A", ""}), ParameterError);
}

TEST(ClassMapTest, FileRoundTrip) {
  const ClassMap m({"Obstacle", "Person", "Vehicle"});
  EXPECT_EQ(write_class_map(m), "0\tObstacle\n1\tPerson\n2\tVehicle\n");
  EXPECT_EQ(parse_class_map(write_class_map(m)), m);
  EXPECT_THROW(parse_class_map("0\tA\n2\tB\n"), ParameterError);
  EXPECT_THROW(parse_class_map("0 A\n"), FormatError);
}

TEST(LabelMeTest, ZeroShapes) {
  const auto img = parse_labelme(labelme_doc(""), kClasses);
  EXPECT_TRUE(img.boxes.empty());
  EXPECT_EQ(img.width, 1920);
  EXPECT_EQ(img.height, 1080);
  EXPECT_EQ(img.image_id, "video1_0007");
}

TEST(LabelMeTest, ClassesMapThroughClassMap) {
  const auto img = parse_labelme(
      labelme_doc(R"({"label":"Obstacle","shape_type":"rectangle","points":[[1,2],[30,40]],"flags":{}},
                     {"label":"Person","shape_type":"rectangle","points":[[100,100],[120,160]]})"),
      kClasses);
  ASSERT_EQ(img.boxes.size(), 2u);
  EXPECT_EQ(img.boxes[0].class_id, 0);
  EXPECT_EQ(img.boxes[1].class_id, 1);
}

TEST(LabelMeTest, CornersAreNormalized) {
  const auto img = parse_labelme(
      labelme_doc(R"({"label":"Obstacle","shape_type":"rectangle","points":[[30,40],[10,20]]})"), kClasses);
  ASSERT_EQ(img.boxes.size(), 1u);
  EXPECT_EQ(img.boxes[0], (BBox{10, 20, 30, 40, 0}));
}

TEST(LabelMeTest, ExplicitImageIdWins) {
  EXPECT_EQ(parse_labelme(labelme_doc(""), kClasses, "custom").image_id, "custom");
}

TEST(LabelMeTest, OutOfBoundsClampedAndDegenerateDropped) {
  Warnings warnings;
  const auto img = parse_labelme(
      labelme_doc(R"({"label":"Obstacle","shape_type":"rectangle","points":[[-5,-5],[10,10]]},
                     {"label":"Person","shape_type":"rectangle","points":[[1950,10],[2000,20]]})"),
      kClasses, {}, &warnings);
  ASSERT_EQ(img.boxes.size(), 1u);
  EXPECT_EQ(img.boxes[0], (BBox{0, 0, 10, 10, 0}));
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(LabelMeTest, Errors) {
  EXPECT_THROW(parse_labelme("not json", kClasses), ParseError);
  EXPECT_THROW(parse_labelme(R"({"imageHeight":10,"shapes":[]})", kClasses), ParseError);
  EXPECT_THROW(parse_labelme(R"({"imageWidth":"10","imageHeight":10,"shapes":[]})", kClasses), ParseError);
  EXPECT_THROW(parse_labelme(labelme_doc(R"({"label":"Tree","shape_type":"rectangle","points":[[0,0],[1,1]]})"),
                             kClasses),
               UnknownClassError);
  EXPECT_THROW(parse_labelme(labelme_doc(R"({"label":"Person","shape_type":"polygon","points":[[0,0],[1,1],[2,0]]})"),
                             kClasses),
               UnsupportedShapeError);
  EXPECT_THROW(parse_labelme(labelme_doc(R"({"label":"Person","shape_type":"rectangle","points":[[0,0]]})"),
                             kClasses),
               ParseError);
}

TEST(LabelMeTest, ErrorNamesField) {
  try {
    parse_labelme(R"({"imageWidth":10,"shapes":[]})", kClasses);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("imageHeight"), std::string::npos);
  }
}

TEST(YoloTest, FullImageBox) {
  const auto boxes = parse_yolo_labels("0 0.5 0.5 1.0 1.0\n", 100, 50);
  ASSERT_EQ(boxes.size(), 1u);
  EXPECT_EQ(boxes[0], (BBox{0, 0, 100, 50, 0}));
}

TEST(YoloTest, CenterFormatConversion) {
  const auto boxes = parse_yolo_labels("1 0.25 0.5 0.1 0.2", 1000, 1000);
  ASSERT_EQ(boxes.size(), 1u);
  EXPECT_NEAR(boxes[0].x_min, 200, 1e-9);
  EXPECT_NEAR(boxes[0].y_min, 400, 1e-9);
  EXPECT_NEAR(boxes[0].x_max, 300, 1e-9);
  EXPECT_NEAR(boxes[0].y_max, 600, 1e-9);
  EXPECT_EQ(boxes[0].class_id, 1);
}

TEST(YoloTest, EmptyFile) {
  EXPECT_TRUE(parse_yolo_labels("", 10, 10).empty());
  EXPECT_TRUE(parse_yolo_labels("\n  \n", 10, 10).empty());
}

TEST(YoloTest, FormatErrorCarriesLineNumber) {
  try {
    parse_yolo_labels("0 0.5 0.5 0.1 0.1\n0 0.5 0.5 0.1\n", 10, 10);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_yolo_labels("x 0.5 0.5 0.1 0.1", 10, 10), FormatError);
  EXPECT_THROW(parse_yolo_labels("0 0.5 abc 0.1 0.1", 10, 10), FormatError);
}

TEST(YoloTest, RangeError) {
  EXPECT_THROW(parse_yolo_labels("0 1.5 0.5 0.1 0.1", 10, 10), RangeError);
  EXPECT_THROW(parse_yolo_labels("0 0.5 0.5 -0.1 0.1", 10, 10), RangeError);
}

TEST(YoloTest, Write) {
  EXPECT_EQ(write_yolo_labels({"a", 100, 50, {}}), "");
  EXPECT_EQ(write_yolo_labels({"a", 100, 50, {{0, 0, 100, 50, 0}}}), "0 0.500000 0.500000 1.000000 1.000000\n");
}

TEST(YoloTest, RoundTripWithinHalfPixel) {
  const LabeledImage img{"a", 1000, 1000, {{200, 400, 300, 600, 1}, {0.3, 7.77, 999.9, 12.5, 0}}};
  const auto back = parse_yolo_labels(write_yolo_labels(img), 1000, 1000);
  ASSERT_EQ(back.size(), img.boxes.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_NEAR(back[i].x_min, img.boxes[i].x_min, 0.5);
    EXPECT_NEAR(back[i].y_min, img.boxes[i].y_min, 0.5);
    EXPECT_NEAR(back[i].x_max, img.boxes[i].x_max, 0.5);
    EXPECT_NEAR(back[i].y_max, img.boxes[i].y_max, 0.5);
    EXPECT_EQ(back[i].class_id, img.boxes[i].class_id);
  }
  EXPECT_NEAR(back[0].x_min, 200, 1e-9);
}

TEST(YoloTest, WriteOfParseIsIdentityOnCanonicalText) {
  const std::string text = "0 0.500000 0.500000 1.000000 1.000000\n1 0.250000 0.500000 0.100000 0.200000\n";
  EXPECT_EQ(write_yolo_labels({"a", 1000, 1000, parse_yolo_labels(text, 1000, 1000)}), text);
}

TEST(PredictionsTest, Parse) {
  EXPECT_TRUE(parse_predictions("", 10, 10).empty());
  const auto dets = parse_predictions("1 0.90 0.25 0.5 0.1 0.2\n", 1000, 1000);
  ASSERT_EQ(dets.size(), 1u);
  EXPECT_EQ(dets[0].confidence, 0.90);
  EXPECT_EQ(dets[0].box.class_id, 1);
  EXPECT_NEAR(dets[0].box.x_min, 200, 1e-9);
  EXPECT_NEAR(dets[0].box.y_max, 600, 1e-9);
}

TEST(PredictionsTest, ConfidenceOutOfRange) {
  EXPECT_THROW(parse_predictions("1 1.5 0.25 0.5 0.1 0.2", 10, 10), RangeError);
  EXPECT_THROW(parse_predictions("1 0.5 0.25 0.5 0.1", 10, 10), FormatError);
}

TEST(PredictionsTest, OrderPreservedAndZeroAreaKept) {
  const auto dets = parse_predictions("0 0.1 0.5 0.5 0.0 0.1\n1 0.9 0.5 0.5 0.2 0.2\n", 10, 10);
  ASSERT_EQ(dets.size(), 2u);
  EXPECT_EQ(dets[0].confidence, 0.1);
  EXPECT_EQ(dets[1].confidence, 0.9);
  EXPECT_EQ(write_predictions(dets, 10, 10),
            "0 0.100000 0.500000 0.500000 0.000000 0.100000\n1 0.900000 0.500000 0.500000 0.200000 0.200000\n");
}

TEST(ManifestTest, RoundTripAndErrors) {
  const std::vector<ManifestItem> items{{"a", 10, 20, "labels/a.txt"}, {"b", 30, 40, "labels/b.txt"}};
  const auto text = write_manifest(items);
  EXPECT_EQ(text, "a\t10\t20\tlabels/a.txt\nb\t30\t40\tlabels/b.txt\n");
  const auto back = parse_manifest(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].image_id, "b");
  EXPECT_EQ(back[1].height, 40);
  EXPECT_THROW(parse_manifest("a\t10\t20\tx\na\t1\t1\ty\n"), FormatError);
  EXPECT_THROW(parse_manifest("a\t10\t20\n"), FormatError);
  EXPECT_THROW(parse_manifest("a\t0\t20\tx\n"), FormatError);
}

DatasetManifest make_manifest(std::size_t n, const std::string& prefix = "img") {
  DatasetManifest m;
  m.class_map = kClasses;
  for (std::size_t i = 0; i < n; ++i) m.items.push_back({prefix + std::to_string(i), 10, 10, ""});
  return m;
}

void expect_partition(const DatasetManifest& m, const SplitResult& r) {
  std::multiset<std::string> all;
  for (const auto* part : {&r.train, &r.val, &r.test}) all.insert(part->begin(), part->end());
  std::multiset<std::string> expected;
  for (const auto& it : m.items) expected.insert(it.image_id);
  EXPECT_EQ(all, expected);
}

TEST(SplitTest, DefaultRatiosOn423) {
  const auto m = make_manifest(423);
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 123456789ull}) {
    const auto r = split_dataset(m, SplitRatios{}, seed);
    EXPECT_EQ(r.train.size(), 296u);
    EXPECT_EQ(r.val.size(), 64u);
    EXPECT_EQ(r.test.size(), 63u);
    EXPECT_EQ(r.seed, seed);
  }
}

TEST(SplitTest, ExplicitCounts) {
  const auto r = split_dataset(make_manifest(300), SplitCounts{230, 58, 12}, 7);
  EXPECT_EQ(r.train.size(), 230u);
  EXPECT_EQ(r.val.size(), 58u);
  EXPECT_EQ(r.test.size(), 12u);
  EXPECT_THROW(split_dataset(make_manifest(300), SplitCounts{230, 58, 11}, 7), RatioError);
}

TEST(SplitTest, Deterministic) {
  const auto m = make_manifest(50);
  const auto a = split_dataset(m, SplitRatios{}, 9);
  const auto b = split_dataset(m, SplitRatios{}, 9);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.val, b.val);
  EXPECT_EQ(a.test, b.test);
  const auto c = split_dataset(m, SplitRatios{}, 10);
  EXPECT_NE(a.train, c.train);
}

TEST(SplitTest, PartitionPropertyAcrossSizesAndSeeds) {
  for (std::size_t n = 1; n <= 60; ++n) {
    const auto m = make_manifest(n);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto r = split_dataset(m, SplitRatios{0.6, 0.3, 0.1}, seed);
      expect_partition(m, r);
      const auto sizes = split_sizes(n, {0.6, 0.3, 0.1});
      EXPECT_EQ(r.train.size(), sizes.train);
      EXPECT_EQ(r.val.size(), sizes.val);
    }
  }
}

TEST(SplitTest, SizeRule) {
  const auto s = split_sizes(423, {});
  EXPECT_EQ(s.train, 296u);
  EXPECT_EQ(s.val, 64u);
  EXPECT_EQ(s.test, 63u);
  for (std::size_t n = 1; n < 500; ++n) {
    const auto z = split_sizes(n, {});
    EXPECT_EQ(z.train + z.val + z.test, n);
    EXPECT_GE(z.val, z.test);
    EXPECT_LE(z.val - z.test, 1u);
  }
}

TEST(SplitTest, ShuffleIsRoughlyUniform) {
  // Each id should land in train about 70% of the time across seeds.
  const auto m = make_manifest(10);
  std::vector<int> in_train(10, 0);
  const int trials = 4000;
  for (int s = 0; s < trials; ++s) {
    for (const auto& id : split_dataset(m, SplitRatios{}, static_cast<std::uint64_t>(s)).train) {
      ++in_train[std::stoi(id.substr(3))];
    }
  }
  for (int c : in_train) EXPECT_NEAR(c / double(trials), 0.7, 0.04);
}

TEST(SplitTest, Errors) {
  EXPECT_THROW(split_dataset(make_manifest(10), SplitRatios{0.7, 0.2, 0.2}, 0), RatioError);
  EXPECT_THROW(split_dataset(make_manifest(10), SplitRatios{1.0, 0.0, 0.0}, 0), RatioError);
  EXPECT_THROW(split_dataset(make_manifest(0), SplitRatios{}, 0), EmptyManifestError);
  EXPECT_THROW(split_dataset(make_manifest(0), SplitCounts{}, 0), EmptyManifestError);
}

TEST(SplitTest, GroupModeKeepsPrefixesTogether) {
  DatasetManifest m;
  for (int v = 0; v < 12; ++v)
    for (int f = 0; f < 5; ++f) m.items.push_back({"video" + std::to_string(v) + "_" + std::to_string(f), 1, 1, ""});
  const auto r = split_dataset(m, SplitRatios{}, 3, SplitOptions{'_'});
  expect_partition(m, r);
  auto groups_of = [](const std::vector<std::string>& ids) {
    std::set<std::string> g;
    for (const auto& id : ids) g.insert(id.substr(0, id.rfind('_')));
    return g;
  };
  const auto gt = groups_of(r.train), gv = groups_of(r.val), gs = groups_of(r.test);
  for (const auto& g : gt) {
    EXPECT_FALSE(gv.count(g));
    EXPECT_FALSE(gs.count(g));
  }
  for (const auto& g : gv) EXPECT_FALSE(gs.count(g));
  EXPECT_FALSE(r.val.empty());
  EXPECT_FALSE(r.test.empty());
}

}  // namespace
}  // namespace uavdet
