// Tests for the plain-text edge-list reader and writer: exact round trips,
// header/marker handling, and line-numbered rejection of malformed input.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "privgraph/errors.hpp"
#include "privgraph/graph.hpp"
#include "privgraph/graph_io.hpp"

using namespace privgraph;

namespace {

// Unique-ish scratch path under the system temp directory.
std::string scratch_path(const std::string& tag) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path();
  return (dir / ("privgraph_io_" + tag + "_" + std::to_string(counter++) +
                 ".txt"))
      .string();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(static_cast<bool>(out));
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  std::string s((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
  return s;
}

// Loads content from a temp file and returns the parse_error it must throw.
parse_error load_must_fail(const std::string& content, const std::string& tag) {
  const std::string path = scratch_path(tag);
  write_file(path, content);
  try {
    load_graph(path);
  } catch (const parse_error& e) {
    std::filesystem::remove(path);
    return e;
  }
  std::filesystem::remove(path);
  REQUIRE_MESSAGE(false, "expected parse_error for: " << content);
  return parse_error("unreachable", -1);
}

bool bitwise_equal(double a, double b) {
  uint64_t ba, bb;
  std::memcpy(&ba, &a, sizeof(ba));
  std::memcpy(&bb, &b, sizeof(bb));
  return ba == bb;
}

}  // namespace

TEST_CASE("save then load reproduces every weight bit for bit") {
  // Weights chosen to stress the 17-significant-digit writer: values with no
  // short decimal form, extreme magnitudes, and a subnormal.
  const std::vector<double> tricky = {
      0.1,
      1.0 / 3.0,
      3.141592653589793,
      2.2250738585072014e-308,   // smallest normal
      4.9406564584124654e-324,   // smallest subnormal
      1.7976931348623157e308,    // largest finite
      1e-300,
      123456789.12345679,
      std::nextafter(1.0, 2.0),  // 1 + ulp
      std::nextafter(2.0, 1.0),  // 2 - ulp
      7.0,
      0.0,
  };
  graph g(static_cast<int>(tricky.size()) + 1);
  for (size_t i = 0; i < tricky.size(); ++i) {
    g.set_weight(0, static_cast<int>(i) + 1, tricky[i]);
  }

  const std::string path = scratch_path("roundtrip");
  save_graph(g, path);
  const graph back = load_graph(path);
  std::filesystem::remove(path);

  REQUIRE(back.n() == g.n());
  REQUIRE(back.stored().size() == g.stored().size());
  for (size_t i = 0; i < tricky.size(); ++i) {
    const int v = static_cast<int>(i) + 1;
    REQUIRE(back.has_slot(0, v));
    CHECK_MESSAGE(bitwise_equal(back.weight(0, v), tricky[i]),
                  "weight " << tricky[i] << " did not round trip exactly");
  }
}

TEST_CASE("repeated save and load cycles are stable") {
  graph g(4);
  g.set_weight(0, 1, 0.30000000000000004);  // 0.1 + 0.2
  g.set_weight(1, 2, 1e-17);
  g.set_weight(2, 3, 0.7);

  const std::string p1 = scratch_path("cycle1");
  const std::string p2 = scratch_path("cycle2");
  save_graph(g, p1);
  const graph g1 = load_graph(p1);
  save_graph(g1, p2);
  // After one cycle the text form is a fixed point: the second file is
  // byte-identical to the first.
  CHECK(read_file(p1) == read_file(p2));
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST_CASE("header alone yields an empty graph of the stated size") {
  const std::string path = scratch_path("header_only");
  write_file(path, "n 3\n");
  const graph g = load_graph(path);
  std::filesystem::remove(path);
  CHECK(g.n() == 3);
  CHECK(g.stored().empty());
}

TEST_CASE("comments, blank lines, and CRLF endings are tolerated") {
  const std::string path = scratch_path("crlf");
  write_file(path,
             "# a comment\r\n"
             "\r\n"
             "n 4\r\n"
             "   \r\n"
             "0 1 2.5\r\n"
             "# trailing comment\r\n"
             "2 3 0\r\n");
  const graph g = load_graph(path);
  std::filesystem::remove(path);
  CHECK(g.n() == 4);
  CHECK(g.weight(0, 1) == 2.5);
  CHECK(g.has_slot(2, 3));
  CHECK(g.weight(2, 3) == 0.0);
  CHECK(g.stored().size() == 2);
}

TEST_CASE("explicit zero slots survive a round trip") {
  graph g(3);
  g.set_weight(0, 2, 0.0);
  const std::string path = scratch_path("zero_slot");
  save_graph(g, path);
  const graph back = load_graph(path);
  std::filesystem::remove(path);
  CHECK(back.has_slot(0, 2));
  CHECK_FALSE(back.has_slot(0, 1));
  CHECK(back.weight(0, 2) == 0.0);
}

TEST_CASE("signed-weights marker admits negative weights") {
  const std::string path = scratch_path("signed_ok");
  write_file(path,
             "# signed-weights\n"
             "n 3\n"
             "0 1 -2.5\n"
             "1 2 4\n");
  const graph g = load_graph(path);
  std::filesystem::remove(path);
  CHECK(g.weight(0, 1) == -2.5);
  CHECK(g.weight(1, 2) == 4.0);
  CHECK(g.has_negative());
}

TEST_CASE("negative weight without the marker is rejected with its line") {
  const parse_error e = load_must_fail(
      "n 3\n"
      "0 1 2\n"
      "1 2 -0.5\n",
      "neg_nomarker");
  CHECK(e.line == 3);
  CHECK(std::string(e.what()).find("signed-weights") != std::string::npos);
  CHECK(std::string(e.what()).find("(line 3)") != std::string::npos);
}

TEST_CASE("marker after the header is rejected") {
  const parse_error e = load_must_fail(
      "n 3\n"
      "# signed-weights\n"
      "0 1 -1\n",
      "late_marker");
  CHECK(e.line == 2);
}

TEST_CASE("save writes the marker exactly when a weight is negative") {
  graph pos(3);
  pos.set_weight(0, 1, 1.5);
  graph neg(3);
  neg.set_weight_signed(0, 1, -1.5);

  const std::string p_pos = scratch_path("marker_pos");
  const std::string p_neg = scratch_path("marker_neg");
  save_graph(pos, p_pos);
  save_graph(neg, p_neg);
  const std::string text_pos = read_file(p_pos);
  const std::string text_neg = read_file(p_neg);

  CHECK(text_pos.find("signed-weights") == std::string::npos);
  CHECK(text_neg.rfind("# signed-weights\n", 0) == 0);

  // And the negative file loads back intact.
  const graph back = load_graph(p_neg);
  CHECK(back.weight(0, 1) == -1.5);
  std::filesystem::remove(p_pos);
  std::filesystem::remove(p_neg);
}

TEST_CASE("missing header is rejected") {
  const parse_error e1 = load_must_fail("0 1 2.5\n", "no_header");
  CHECK(e1.line == 1);
  CHECK(std::string(e1.what()).find("header") != std::string::npos);

  // A file with only comments never sees a header either.
  const parse_error e2 = load_must_fail("# just a comment\n", "only_comment");
  CHECK(std::string(e2.what()).find("header") != std::string::npos);
}

TEST_CASE("header validation") {
  CHECK(load_must_fail("n 0\n", "n_zero").line == 1);
  CHECK(load_must_fail("n -3\n", "n_negative").line == 1);
  CHECK(load_must_fail("n three\n", "n_word").line == 1);
  CHECK(load_must_fail("n 3 7\n", "n_extra").line == 1);
  CHECK(load_must_fail("m 3\n", "wrong_letter").line == 1);
  CHECK(load_must_fail("n 3\nn 4\n0 1 2\n", "double_header").line == 2);
}

TEST_CASE("edge line validation reports the offending 1-based line") {
  // Self-loop.
  CHECK(load_must_fail("n 3\n1 1 2.0\n", "self_loop").line == 2);
  // Vertex out of range (3 is not a vertex of a 3-vertex graph).
  CHECK(load_must_fail("n 3\n0 3 2.0\n", "out_of_range").line == 2);
  CHECK(load_must_fail("n 3\n-1 2 2.0\n", "negative_vertex").line == 2);
  // Duplicate pair, in either orientation.
  CHECK(load_must_fail("n 3\n0 1 2\n1 0 3\n", "dup_pair").line == 3);
  // Missing weight field.
  CHECK(load_must_fail("n 3\n0 1\n", "missing_weight").line == 2);
  // Non-numeric tokens.
  CHECK(load_must_fail("n 3\na 1 2\n", "bad_vertex").line == 2);
  CHECK(load_must_fail("n 3\n0 1 heavy\n", "bad_weight").line == 2);
  // Trailing junk glued to a number or after the triple.
  CHECK(load_must_fail("n 3\n0 1 2.5x\n", "weight_junk").line == 2);
  CHECK(load_must_fail("n 3\n0x 1 2.5\n", "vertex_junk").line == 2);
  CHECK(load_must_fail("n 3\n0 1 2.5 9\n", "extra_field").line == 2);
  // Non-finite weights.
  CHECK(load_must_fail("n 3\n0 1 inf\n", "inf_weight").line == 2);
  CHECK(load_must_fail("n 3\n0 1 nan\n", "nan_weight").line == 2);
  // Blank and comment lines still advance the line counter.
  CHECK(load_must_fail("# c\n\nn 3\n\n0 1 bad\n", "counted_lines").line == 5);
}

TEST_CASE("unopenable path throws parse_error with line 0") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "privgraph_io_missing" /
       "definitely_absent.txt")
          .string();
  try {
    load_graph(path);
    REQUIRE(false);
  } catch (const parse_error& e) {
    CHECK(e.line == 0);
    CHECK(std::string(e.what()).find("cannot open") != std::string::npos);
  }
}
