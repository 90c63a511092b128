#include <gtest/gtest.h>

#include "cmv/cayley.hpp"
#include "cmv/dissection.hpp"
#include "cmv/io.hpp"
#include "support/helpers.hpp"

using namespace cmv;
using cmv::test::pt;

namespace {

std::string data(const std::string& name) { return std::string(CMV_TEST_DATA) + "/" + name; }

nlohmann::json parse(const char* text) { return nlohmann::json::parse(text); }

}  // namespace

TEST(Instance, ObjectAndArrayForms) {
  auto a = load_instance(data("segments.json"));
  EXPECT_EQ(a.dim, 2u);
  EXPECT_EQ(a.lattice, LatticeTag::Z);
  EXPECT_EQ(a.names(), (std::vector<std::string>{"S1", "S2"}));
  EXPECT_EQ(a.polytopes[1].polytope.vertices(), (std::vector<Point>{pt({0, 0}), pt({0, 1})}));

  auto b = load_instance(data("triangle.json"));
  ASSERT_EQ(b.polytopes.size(), 1u);
  EXPECT_EQ(b.polytopes[0].name, "T");
  EXPECT_TRUE(b.polytopes[0].polytope.is_simplex());

  auto c = parse_instance(parse(R"({"dim": 1, "polytopes": [[[0], [2]], [[1]]]})"));
  EXPECT_EQ(c.names(), (std::vector<std::string>{"P1", "P2"}));
}

TEST(Instance, RationalCoordinatesAndPairs) {
  auto q = load_instance(data("rational.json"));
  EXPECT_EQ(q.lattice, LatticeTag::Q);
  EXPECT_EQ(q.polytopes[1].polytope.vertices()[1], (Point{Rational(0), Rational(3, 2)}));

  auto n = load_instance(data("nested.json"));
  ASSERT_EQ(n.pairs.size(), 2u);
  EXPECT_EQ(n.names(), (std::vector<std::string>{"P1", "P2", "Q1"}));
  EXPECT_EQ(n.pairs[0], (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_EQ(n.pairs[1], (std::pair<std::size_t, std::size_t>{1, 1}));
}

TEST(Instance, Errors) {
  EXPECT_THROW(load_instance(data("bad_lattice.json")), InputError);
  EXPECT_THROW(load_instance(data("bad_arity.json")), InputError);
  EXPECT_THROW(load_instance(data("malformed.json")), InputError);
  EXPECT_THROW(load_instance(data("does_not_exist.json")), InputError);
  EXPECT_THROW(parse_instance(parse(R"({"dim": 2})")), InputError);
  EXPECT_THROW(parse_instance(parse(R"({"dim": 0, "polytopes": {}})")), InputError);
  EXPECT_THROW(parse_instance(parse(R"({"lattice": "R", "dim": 1, "polytopes": {}})")), InputError);
  EXPECT_THROW(parse_instance(parse(R"({"dim": 1, "polytopes": {"A": []}})")), InputError);
  EXPECT_THROW(parse_instance(parse(R"({"dim": 1, "polytopes": {"A": [[0.5]]}})")), InputError);
  EXPECT_THROW(parse_instance(parse(R"({"dim": 1, "polytopes": {"A": [["1/0"]]}})")), InputError);
  EXPECT_THROW(parse_instance(parse(R"({"dim": 1, "polytopes": [{"name": "A", "vertices": [[0]]},
                                                                {"name": "A", "vertices": [[1]]}]})")),
               InputError);
  EXPECT_THROW(parse_instance(parse(R"({"dim": 1, "polytopes": {"A": [[0]]}, "pairs": [["A", "B"]]})")),
               InputError);
}

TEST(Json, RationalsAreNormalizedStrings) {
  EXPECT_EQ(to_json(Rational(4, 6)), "2/3");
  EXPECT_EQ(to_json(Rational(-3)), "-3");
  EXPECT_EQ(rational_from_json(parse("7")), Rational(7));
  EXPECT_EQ(rational_from_json(parse(R"("-10/4")")), Rational(-5, 2));
  EXPECT_EQ(to_json(Point{Rational(1, 2), Rational(0)}).dump(), R"(["1/2","0"])");
}

TEST(Digest, CanonicalAndSensitive) {
  auto a = parse_instance(parse(R"({"dim": 1, "polytopes": {"A": [[2], [0], [1]]}})"));
  auto b = parse_instance(parse(R"({"lattice": "Z", "dim": 1, "polytopes": [{"name": "A", "vertices": [[0], ["4/2"]]}]})"));
  auto c = parse_instance(parse(R"({"dim": 1, "polytopes": {"A": [[0], [3]]}})"));
  EXPECT_EQ(digest(a), digest(b));
  EXPECT_NE(digest(a), digest(c));
  EXPECT_EQ(digest(a).size(), 16u);
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(DissectionJson, RoundTripKeepsCertificates) {
  auto box = boxcell_dissection(2, 3);
  auto back = dissection_from_json(nlohmann::json::parse(dissection_to_json(box).dump()));
  EXPECT_EQ(back.target, box.target);
  ASSERT_EQ(back.cells.size(), box.cells.size());
  for (std::size_t i = 0; i < box.cells.size(); ++i) {
    EXPECT_EQ(back.cells[i].cell, box.cells[i].cell);
    EXPECT_EQ(back.cells[i].removed, box.cells[i].removed);
  }
  EXPECT_EQ(count_certificate(back).cell_counts, count_certificate(box).cell_counts);
  EXPECT_EQ(dissection_to_json(back), dissection_to_json(box));

  std::vector<Polytope> ps{test::std_triangle(), test::seg_e1()};
  auto md = fine_mixed_dissection(ps);
  const long n[] = {2, 1};
  auto counts = dilated_cell_counts(md, n);
  auto again = dissection_from_json(nlohmann::json::parse(dissection_to_json(counts.dissection).dump()));
  EXPECT_EQ(count_certificate(again).total, counts.certificate.total);
  EXPECT_EQ(volume_certificate(again).total, volume_certificate(counts.dissection).total);
}

TEST(DissectionJson, RejectsTamperedDocuments) {
  auto doc = nlohmann::json::parse(dissection_to_json(boxcell_dissection(2, 2)).dump());
  EXPECT_THROW(dissection_from_json(parse(R"({"format": "other"})")), InputError);

  auto wrong_removed = doc;
  wrong_removed["cells"][0]["removed"] = nlohmann::json::array();
  EXPECT_THROW(dissection_from_json(wrong_removed), InputError);

  auto wrong_vertices = doc;
  wrong_vertices["cells"][0]["vertices"][0] = nlohmann::json::array({"5", "5"});
  EXPECT_THROW(dissection_from_json(wrong_vertices), InputError);

  auto out_of_range = doc;
  out_of_range["cells"][0]["removed"] = nlohmann::json::array({99});
  EXPECT_THROW(dissection_from_json(out_of_range), InputError);
}
