#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "analogen/error.hpp"
#include "analogen/kb.hpp"
#include "analogen/rng.hpp"
#include "analogen/semnet.hpp"
#include "support/support.hpp"

using namespace analogen;
using namespace analogen::testing;

namespace {

KnowledgeBase parse_text(const std::string& text, double r_min = 2.0, LoadReport* rep = nullptr) {
  std::istringstream in(text);
  return KnowledgeBase::parse(in, r_min, rep);
}

}  // namespace

TEST(Normalize, LowercasesAndCollapsesWhitespace) {
  EXPECT_EQ(normalize_concept("  Ice   Cream "), "ice cream");
  EXPECT_EQ(normalize_concept("\"Bird.\""), "bird");
  EXPECT_EQ(normalize_concept("solar\tsystem"), "solar system");
  EXPECT_EQ(normalize_concept("..."), "");
}

TEST(Normalize, Idempotent) {
  for (const char* s : {"Hello  World!", "a-b c", "  x ", "(paren)", "MiXeD Case", "..a..", ""}) {
    auto once = normalize_concept(s);
    EXPECT_EQ(normalize_concept(once), once) << s;
  }
}

TEST(KbParse, KeepsAssertionAtThreshold) {
  auto kb = parse_text("IsA\tbird\tanimal\t3.5\n");
  EXPECT_TRUE(kb.contains({"IsA", "bird", "animal"}));
  EXPECT_EQ(kb.score({"IsA", "bird", "animal"}), 3.5);
}

TEST(KbParse, DropsLowScore) {
  LoadReport rep;
  auto kb = parse_text("Causes\tbird\ttable\t0.5\nIsA\tbird\tanimal\t2.0\n", 2.0, &rep);
  EXPECT_FALSE(kb.contains({"Causes", "bird", "table"}));
  EXPECT_TRUE(kb.contains({"IsA", "bird", "animal"}));
  EXPECT_EQ(rep.below_threshold, 1u);
  EXPECT_EQ(rep.kept, 1u);
}

TEST(KbParse, EmptyFileGivesEmptyKbWithWarning) {
  LoadReport rep;
  auto kb = parse_text("", 2.0, &rep);
  EXPECT_EQ(kb.size(), 0u);
  EXPECT_TRUE(kb.concepts().empty());
  EXPECT_EQ(rep.warnings, 1u);
}

TEST(KbParse, DuplicatesKeepMaxScore) {
  LoadReport rep;
  auto kb = parse_text("IsA\tbird\tanimal\t3\nIsA\tBird\tanimal\t7\nIsA\tbird\tanimal\t4\n", 2.0, &rep);
  EXPECT_EQ(kb.size(), 1u);
  EXPECT_EQ(kb.score({"IsA", "bird", "animal"}), 7.0);
  EXPECT_EQ(rep.duplicates, 2u);
}

TEST(KbParse, SkipsSelfLoopsCommentsAndBlankLines) {
  LoadReport rep;
  auto kb = parse_text("# header\n\nIsA\tbird\tBird\t5\r\nIsA\tbird\tanimal\t5\r\n", 2.0, &rep);
  EXPECT_EQ(kb.size(), 1u);
  EXPECT_EQ(rep.self_loops, 1u);
}

TEST(KbParse, MalformedLineNamesLine) {
  try {
    parse_text("IsA\tbird\tanimal\t3\nIsA\tbird\tanimal\n");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_text("IsA\tbird\tanimal\tlots\n"), Error);
  EXPECT_THROW(parse_text("IsA\tbird\tanimal\t-1\n"), Error);
}

TEST(KbParse, LabelsAreCaseSensitive) {
  auto kb = parse_text("IsA\tbird\tanimal\t3\nisa\tbird\tanimal\t3\n");
  EXPECT_EQ(kb.size(), 2u);
  EXPECT_FALSE(kb.contains({"ISA", "bird", "animal"}));
}

TEST(KbLoad, MissingFileIsIoError) {
  try {
    KnowledgeBase::load("/nonexistent/kb.tsv", 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(KbLoad, MiniKbInvariants) {
  const auto& kb = mini_kb();
  EXPECT_GE(kb.size(), 400u);
  EXPECT_EQ(kb.digest().size(), 64u);
  std::set<Concept> seen;
  for (const auto& a : kb.assertions()) {
    EXPECT_GE(a.score, 2.0);
    EXPECT_NE(a.relation.head, a.relation.tail);
    seen.insert(a.relation.head);
    seen.insert(a.relation.tail);
  }
  EXPECT_TRUE(std::is_sorted(kb.assertions().begin(), kb.assertions().end(),
                             [](const auto& x, const auto& y) { return x.relation < y.relation; }));
  EXPECT_EQ(std::vector<Concept>(seen.begin(), seen.end()),
            std::vector<Concept>(kb.concepts().begin(), kb.concepts().end()));
  EXPECT_FALSE(kb.contains({"Causes", "bird", "table"}));
}

TEST(KbIndex, ConsistentWithAssertionScan) {
  const auto& kb = mini_kb();
  for (const auto& c : kb.concepts()) {
    std::set<Relation> scan;
    for (const auto& a : kb.assertions())
      if (a.relation.involves(c)) scan.insert(a.relation);
    std::set<Relation> indexed;
    for (const auto& a : kb.assertions_involving(c)) indexed.insert(a.relation);
    ASSERT_EQ(scan, indexed) << c;
    for (const auto& r : scan) {
      auto pos = r.head == c ? Position::Head : Position::Tail;
      auto with = kb.assertions_with(c, r.label, pos);
      EXPECT_TRUE(std::any_of(with.begin(), with.end(), [&](const auto& a) { return a.relation == r; }));
    }
  }
}

TEST(KbQuery, AssertionsInvolvingHeadAndTail) {
  auto kb = kb_of({{"CapableOf", "human", "think"}, {"Desires", "human", "eat"}, {"IsA", "bird", "animal"}});
  auto human = kb.assertions_involving("human");
  ASSERT_EQ(human.size(), 2u);
  EXPECT_EQ(human[0].relation, (Relation{"CapableOf", "human", "think"}));
  EXPECT_EQ(human[1].relation, (Relation{"Desires", "human", "eat"}));
  EXPECT_TRUE(kb.assertions_involving("zzz").empty());
  auto animal = assertions_involving(kb, "animal");
  ASSERT_EQ(animal.size(), 1u);
  EXPECT_EQ(animal[0].relation, (Relation{"IsA", "bird", "animal"}));
}

TEST(KbQuery, AttachableConcepts) {
  auto kb = kb_of({{"CreatedBy", "art", "human"}, {"Desires", "human", "joy"}, {"IsA", "cat", "animal"}});
  auto net = net_of({{"CapableOf", "human", "think"}});
  auto att = attachable_concepts(kb, net);
  ASSERT_EQ(att.size(), 2u);
  EXPECT_EQ(att[0].new_concept, "art");
  EXPECT_EQ(att[0].assertion.relation, (Relation{"CreatedBy", "art", "human"}));
  EXPECT_EQ(att[1].new_concept, "joy");

  auto full = net_of({{"CreatedBy", "art", "human"}, {"Desires", "human", "joy"}, {"IsA", "cat", "animal"}});
  EXPECT_TRUE(attachable_concepts(kb, full).empty());
}

TEST(KbQuery, InterchangeableBirdAirplane) {
  auto kb = kb_of({{"CapableOf", "bird", "fly"},
                   {"AtLocation", "bird", "air"},
                   {"CapableOf", "airplane", "fly"},
                   {"AtLocation", "airplane", "air"}});
  std::vector<Relation> a{{"CapableOf", "bird", "fly"}, {"AtLocation", "bird", "air"}};
  std::vector<Relation> b{{"CapableOf", "airplane", "fly"}, {"AtLocation", "airplane", "air"}};
  EXPECT_TRUE(interchangeable(kb, "bird", a, "airplane", b));
  EXPECT_FALSE(interchangeable(kb, "bird", a, "bird", a));
  EXPECT_EQ(substitutable_count(kb, "bird", "airplane", a), 2u);
  EXPECT_TRUE(interchangeable(kb, "bird", a, "airplane", b, 2));
  EXPECT_FALSE(interchangeable(kb, "bird", a, "airplane", b, 3));
}

TEST(KbQuery, InterchangeableNeedsSharedRelations) {
  auto kb = kb_of({{"CapableOf", "bird", "fly"}, {"MadeOf", "table", "wood"}});
  std::vector<Relation> a{{"CapableOf", "bird", "fly"}};
  std::vector<Relation> b{{"MadeOf", "table", "wood"}};
  EXPECT_FALSE(interchangeable(kb, "bird", a, "table", b));
}

TEST(KbQuery, InterchangeableOneDirectionIsNotEnough) {
  // x fits y's CapableOf(., swim), but y fits none of x's relations
  auto kb = kb_of({{"CapableOf", "x", "swim"}, {"HasA", "x", "fin"}, {"CapableOf", "y", "swim"}, {"MadeOf", "y", "wood"}});
  std::vector<Relation> xr{{"HasA", "x", "fin"}};
  std::vector<Relation> yr{{"CapableOf", "y", "swim"}, {"MadeOf", "y", "wood"}};
  EXPECT_EQ(substitutable_count(kb, "y", "x", yr), 1u);
  EXPECT_EQ(substitutable_count(kb, "x", "y", xr), 0u);
  EXPECT_FALSE(interchangeable(kb, "x", xr, "y", yr));
}

TEST(KbRandomConcept, SinglePairKb) {
  auto kb = kb_of({{"IsA", "bird", "animal"}});
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    auto c = random_concept(kb, rng);
    EXPECT_TRUE(c == "bird" || c == "animal");
  }
}

TEST(KbRandomConcept, DeterministicForSeed) {
  Rng a(99), b(99);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(random_concept(mini_kb(), a), random_concept(mini_kb(), b));
}

TEST(KbRandomConcept, UniformOverTenConcepts) {
  auto kb = kb_of({{"R", "c0", "c1"}, {"R", "c2", "c3"}, {"R", "c4", "c5"}, {"R", "c6", "c7"}, {"R", "c8", "c9"}});
  ASSERT_EQ(kb.concepts().size(), 10u);
  Rng rng(2024);
  std::map<Concept, int> counts;
  const int n = 10000;
  for (int i = 0; i < n; ++i) ++counts[random_concept(kb, rng)];
  const double sigma = std::sqrt(n * 0.1 * 0.9);
  for (const auto& [c, k] : counts) EXPECT_NEAR(k, 1000.0, 3 * sigma) << c;
}

TEST(KbRandomConcept, EmptyKbThrows) {
  KnowledgeBase kb;
  Rng rng(1);
  EXPECT_THROW(random_concept(kb, rng), Error);
}
