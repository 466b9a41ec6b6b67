#include <algorithm>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "spxkit/cs_metrics.hpp"

using namespace spx;
using namespace spxtest;

namespace {

/// One-row layout: each segment occupies `size` consecutive pixels, the first
/// `forest` of them FOREST, the rest DEFOREST (negative forest = excluded run).
struct Strip {
  std::vector<std::uint32_t> labels;
  std::vector<GtClass> classes;

  void add(int forest, int deforest, int excluded = 0) {
    std::uint32_t id = labels.empty() ? 0 : labels.back() + 1;
    for (int i = 0; i < forest; ++i) {
      labels.push_back(id);
      classes.push_back(GtClass::Forest);
    }
    for (int i = 0; i < deforest; ++i) {
      labels.push_back(id);
      classes.push_back(GtClass::Deforest);
    }
    for (int i = 0; i < excluded; ++i) {
      labels.push_back(id);
      classes.push_back(GtClass::Excluded);
    }
  }

  SegmentRecordSet records() const {
    int w = static_cast<int>(labels.size());
    return compute_segment_records(make_labels(w, 1, labels), make_gt(w, 1, classes));
  }
};

}  // namespace

TEST_CASE("segment records: pure 70-pixel segment is useful") {
  Strip s;
  s.add(70, 0);
  auto set = s.records();
  REQUIRE(set.records.size() == 1);
  CHECK(set.records[0].hor == 1.0);
  CHECK(set.records[0].majority == GtClass::Forest);
  CHECK(set.records[0].useful);
}

TEST_CASE("segment records: the 0.7 threshold is inclusive") {
  Strip s;
  s.add(49, 21);
  auto set = s.records();
  REQUIRE(set.records.size() == 1);
  CHECK(set.records[0].hor == doctest::Approx(0.7));
  CHECK(set.records[0].useful);
}

TEST_CASE("segment records: 69 pure pixels miss the size floor") {
  Strip s;
  s.add(69, 0);
  auto set = s.records();
  REQUIRE(set.records.size() == 1);
  CHECK(set.records[0].hor == 1.0);
  CHECK_FALSE(set.records[0].useful);
}

TEST_CASE("segment records: excluded pixels never count") {
  Strip s;
  s.add(60, 0, 40);  // 100 pixels but only 60 valid
  s.add(0, 0, 10);   // all-excluded segment
  auto set = s.records();
  REQUIRE(set.records.size() == 1);
  CHECK(set.n_empty == 1);
  CHECK(set.records[0].size == 60);
  CHECK_FALSE(set.records[0].useful);
}

TEST_CASE("summary: US and DS direct ratios") {
  std::vector<SegmentRecord> records(10);
  for (int i = 0; i < 10; ++i) {
    records[i].segment_id = i;
    records[i].size = 100;
    records[i].n_forest = i < 9 ? 100 : 0;
    records[i].n_deforest = i < 9 ? 0 : 100;
    records[i].hor = 1.0;
    records[i].majority = i < 9 ? GtClass::Forest : GtClass::Deforest;
    records[i].useful = i < 4;  // 4 useful; only the mislabeled-forest ones
  }
  records[9].useful = false;
  records[3].majority = GtClass::Deforest;  // 1 deforestation among the useful
  auto s = compute_cs_summary(records);
  CHECK(s.us == doctest::Approx(40.0));
  CHECK(s.ds == doctest::Approx(25.0));
}

TEST_CASE("summary: all pure large segments give PHoR 100 and EP 0") {
  Strip s;
  s.add(80, 0);
  s.add(0, 90);
  s.add(75, 0);
  auto sum = compute_cs_summary(s.records().records);
  CHECK(sum.phor == doctest::Approx(100.0));
  CHECK(sum.ep == doctest::Approx(0.0));
  CHECK(sum.us == doctest::Approx(100.0));
}

TEST_CASE("summary: crafted five-segment instance matches the hand tally") {
  // Sizes {100, 100, 80, 70, 50}:
  //   A 90F/10D   hor .9   useful, forest majority
  //   B 30F/70D   hor .7   useful, deforestation majority
  //   C 80F/0D    hor 1    useful, forest
  //   D 34F/36D   hor 36/70  not useful
  //   E 0F/50D    hor 1    pure but under the size floor
  Strip strip;
  strip.add(90, 10);
  strip.add(30, 70);
  strip.add(80, 0);
  strip.add(34, 36);
  strip.add(0, 50);
  auto set = strip.records();
  REQUIRE(set.records.size() == 5);
  auto s = compute_cs_summary(set.records);
  CHECK(s.n_segments == 5);
  CHECK(s.n_useful == 3);
  CHECK(s.us == 100.0 * 3 / 5);
  CHECK(s.ds == 100.0 * 1 / 3);
  CHECK(s.phor == 100.0 * 2 / 5);
  CHECK(s.ep == 100.0 * 40 / 280);  // minority pixels 10+30+0 over 280 useful pixels
}

TEST_CASE("summary: DS is zero when nothing is useful") {
  Strip s;
  s.add(5, 0);
  auto sum = compute_cs_summary(s.records().records);
  CHECK(sum.n_useful == 0);
  CHECK(sum.ds == 0.0);
}

TEST_CASE("summary rejects an empty record list") {
  CHECK_THROWS_AS(compute_cs_summary({}), EmptyInput);
}

TEST_CASE("EP is zero exactly when every useful segment is pure") {
  Strip pure;
  pure.add(80, 0);
  pure.add(0, 90);
  pure.add(50, 30);  // not useful (hor .625)
  auto s1 = compute_cs_summary(pure.records().records);
  CHECK(s1.ep == 0.0);

  Strip impure;
  impure.add(75, 5);
  auto s2 = compute_cs_summary(impure.records().records);
  CHECK(s2.ep > 0.0);
}

TEST_CASE("every perfectly pure segment of useful size is counted useful") {
  auto labels = random_labels(40, 40, 12, 77);
  auto gt = random_gt(40, 40, 78);
  auto set = compute_segment_records(labels, gt);
  for (const auto& rec : set.records) {
    if (rec.hor == 1.0 && rec.size >= kMinUsefulSize) CHECK(rec.useful);
  }
}

TEST_CASE("summary is invariant under record reordering") {
  auto labels = random_labels(30, 30, 9, 15);
  auto gt = random_gt(30, 30, 16);
  auto records = compute_segment_records(labels, gt).records;
  auto shuffled = records;
  std::reverse(shuffled.begin(), shuffled.end());
  auto a = compute_cs_summary(records);
  auto b = compute_cs_summary(shuffled);
  CHECK(a.us == b.us);
  CHECK(a.ds == b.ds);
  CHECK(a.phor == b.phor);
  CHECK(a.ep == b.ep);
}

TEST_CASE("records reject mismatched dimensions") {
  auto labels = random_labels(8, 8, 4, 1);
  auto gt = random_gt(8, 9, 2);
  CHECK_THROWS_AS(compute_segment_records(labels, gt), DimensionMismatch);
}
