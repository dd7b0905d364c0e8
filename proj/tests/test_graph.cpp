#include <doctest.h>
#include <zlib.h>

#include <fstream>
#include <sstream>

#include "rwer/graph.hpp"
#include "rwer/synthetic.hpp"
#include "support.hpp"

using namespace rwer;

namespace {

SparseGraph load_string(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

}  // namespace

TEST_CASE("edge list loading") {
  SUBCASE("minimal two-cycle") {
    SparseGraph g = load_string("0 1\n1 0\n");
    CHECK(g.n == 2);
    CHECK(g.m == 2);
    CHECK(g.weight[0] == 1.0);
    CHECK(g.weight[1] == 1.0);
  }

  SUBCASE("duplicate edges merge by weight summation") {
    SparseGraph g = load_string("a b 2\na b 3\n");
    CHECK(g.n == 2);
    CHECK(g.m == 1);
    CHECK(g.weight[0] == 5.0);
    CHECK(g.labels[0] == "a");
    CHECK(g.labels[1] == "b");
  }

  SUBCASE("ids assigned by first appearance") {
    SparseGraph g = load_string("b a\nc b\n");
    CHECK(g.id_of("b") == 0);
    CHECK(g.id_of("a") == 1);
    CHECK(g.id_of("c") == 2);
    CHECK_THROWS_AS(g.id_of("zzz"), UsageError);
  }

  SUBCASE("comments and blank lines skipped, weight defaults to 1") {
    SparseGraph g = load_string("# header\n\n0 1\n  \n# tail\n");
    CHECK(g.n == 2);
    CHECK(g.m == 1);
    CHECK(g.weight[0] == 1.0);
  }

  SUBCASE("self-loops are kept") {
    SparseGraph g = load_string("x x 2\nx y\n");
    CHECK(g.m == 2);
    CHECK(g.out_weight[0] == 3.0);
  }

  SUBCASE("malformed line reports line number") {
    try {
      load_string("0 1\njunk\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(load_string("0 1 notanumber\n"), ParseError);
    CHECK_THROWS_AS(load_string("0 1 2 3\n"), ParseError);
  }

  SUBCASE("negative weight rejected") {
    CHECK_THROWS_AS(load_string("0 1 -2\n"), ParseError);
  }

  SUBCASE("empty graph rejected") {
    CHECK_THROWS_AS(load_string("# nothing here\n"), UsageError);
  }

  SUBCASE("deterministic: identical bytes give identical CSR") {
    std::string text = "3 1 0.5\n1 3\n2 2\n3 2 4\n";
    SparseGraph a = load_string(text);
    SparseGraph b = load_string(text);
    CHECK(a.row_ptr == b.row_ptr);
    CHECK(a.col == b.col);
    CHECK(a.weight == b.weight);
    CHECK(a.labels == b.labels);
  }

  SUBCASE("column indices strictly increasing within each row") {
    SparseGraph g = synthetic::random_graph(40, 300, 99);
    for (NodeId u = 0; u < g.n; ++u) {
      for (std::size_t k = g.row_ptr[u] + 1; k < g.row_ptr[u + 1]; ++k) {
        CHECK(g.col[k - 1] < g.col[k]);
      }
    }
  }

  SUBCASE("out_weight equals exact row sums") {
    SparseGraph g = synthetic::random_graph(30, 200, 7);
    for (NodeId u = 0; u < g.n; ++u) {
      double s = 0.0;
      for (std::size_t k = g.row_ptr[u]; k < g.row_ptr[u + 1]; ++k) s += g.weight[k];
      CHECK(g.out_weight[u] == s);
    }
  }
}

TEST_CASE("gzip transparency") {
  std::string path = "/tmp/rwer_test_graph.tsv";
  std::string gzpath = "/tmp/rwer_test_graph.tsv.gz";
  {
    std::ofstream out(path);
    out << "a b 2\nb c\nc a 0.5\n";
  }
  {
    gzFile f = gzopen(gzpath.c_str(), "wb");
    REQUIRE(f != nullptr);
    std::string text = "a b 2\nb c\nc a 0.5\n";
    gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
    gzclose(f);
  }
  SparseGraph plain = load_edge_list_file(path);
  SparseGraph zipped = load_edge_list_file(gzpath);
  CHECK(plain.n == zipped.n);
  CHECK(plain.col == zipped.col);
  CHECK(plain.weight == zipped.weight);
  CHECK(plain.labels == zipped.labels);
  CHECK_THROWS_AS(load_edge_list_file("/tmp/definitely_missing_file.tsv"), IoError);
}

TEST_CASE("row normalization") {
  SUBCASE("two-cycle rows") {
    TransitionMatrix t = row_normalize(synthetic::two_cycle());
    REQUIRE(t.entries() == 2);
    CHECK(t.col[0] == 1);
    CHECK(t.value[0] == 1.0);
    CHECK(t.col[1] == 0);
    CHECK(t.value[1] == 1.0);
    CHECK(t.dangling.empty());
  }

  SUBCASE("weights (2, 3) normalize to (0.4, 0.6)") {
    SparseGraph g = load_string("s a 2\ns b 3\na s\nb s\n");
    TransitionMatrix t = row_normalize(g);
    NodeId s = g.id_of("s");
    REQUIRE(t.row_ptr[s + 1] - t.row_ptr[s] == 2);
    CHECK(t.value[t.row_ptr[s]] == doctest::Approx(0.4));
    CHECK(t.value[t.row_ptr[s] + 1] == doctest::Approx(0.6));
  }

  SUBCASE("path end is dangling with an empty row") {
    TransitionMatrix t = row_normalize(synthetic::path(3));
    REQUIRE(t.dangling.size() == 1);
    CHECK(t.dangling[0] == 2);
    CHECK(t.is_dangling(2));
    CHECK(t.row_ptr[3] - t.row_ptr[2] == 0);
  }

  SUBCASE("non-dangling rows are stochastic within 1e-12") {
    SparseGraph g = synthetic::random_graph(60, 400, 11);
    TransitionMatrix t = row_normalize(g);
    for (NodeId u = 0; u < t.n; ++u) {
      if (t.is_dangling(u)) continue;
      double s = 0.0;
      for (std::size_t k = t.row_ptr[u]; k < t.row_ptr[u + 1]; ++k) s += t.value[k];
      CHECK(std::abs(s - 1.0) < 1e-12);
    }
  }

  SUBCASE("zero-weight edges carry no transition mass") {
    SparseGraph g = load_string("a b 0\na c 1\nb a 0\n");
    TransitionMatrix t = row_normalize(g);
    NodeId b = g.id_of("b");
    CHECK(t.is_dangling(b));  // only a zero-weight out-edge
    NodeId a = g.id_of("a");
    CHECK(t.row_ptr[a + 1] - t.row_ptr[a] == 1);  // the 0-weight entry is dropped
  }
}

TEST_CASE("operator applications") {
  TransitionMatrix cyc = row_normalize(synthetic::two_cycle());

  SUBCASE("transposed permutation") {
    std::vector<double> y = apply_transposed(cyc, {1.0, 0.0});
    CHECK(y == std::vector<double>{0.0, 1.0});
  }

  SUBCASE("forward permutation") {
    std::vector<double> y = apply_forward(cyc, {1.0, 0.0});
    CHECK(y == std::vector<double>{0.0, 1.0});
  }

  SUBCASE("zero vector maps to zero") {
    std::vector<double> y = apply_transposed(cyc, {0.0, 0.0});
    CHECK(y == std::vector<double>{0.0, 0.0});
  }

  SUBCASE("single-row scatter of a weighted row") {
    SparseGraph g = load_string("s a 2\ns b 3\na s\nb s\n");
    TransitionMatrix t = row_normalize(g);
    std::vector<double> x(t.n, 0.0);
    x[g.id_of("s")] = 1.0;
    std::vector<double> y = apply_transposed(t, x);
    CHECK(y[g.id_of("a")] == doctest::Approx(0.4));
    CHECK(y[g.id_of("b")] == doctest::Approx(0.6));
    CHECK(y[g.id_of("s")] == 0.0);
  }

  SUBCASE("all-ones is a fixed point of the forward map on dangling-free graphs") {
    SparseGraph g = synthetic::random_strongly_connected(25, 80, 3);
    TransitionMatrix t = row_normalize(g);
    std::vector<double> ones(t.n, 1.0);
    std::vector<double> y = apply_forward(t, ones);
    for (double v : y) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("forward map of a dangling row is zero") {
    TransitionMatrix t = row_normalize(synthetic::path(3));
    std::vector<double> y = apply_forward(t, {0.3, 0.3, 0.4});
    CHECK(y[2] == 0.0);
  }

  SUBCASE("mass preservation on non-dangling support") {
    SparseGraph g = synthetic::random_strongly_connected(40, 150, 17);
    TransitionMatrix t = row_normalize(g);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> x(t.n);
    for (auto& v : x) v = dist(rng);
    std::vector<double> y = apply_transposed(t, x);
    double sx = 0.0, sy = 0.0;
    for (NodeId u = 0; u < t.n; ++u) {
      sx += x[u];
      sy += y[u];
    }
    CHECK(std::abs(sx - sy) < 1e-12 * t.n);
  }

  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(apply_transposed(cyc, {1.0, 2.0, 3.0}), DimensionError);
    CHECK_THROWS_AS(apply_forward(cyc, {1.0}), DimensionError);
  }
}

TEST_CASE("label map output") {
  SparseGraph g = load_string("beta alpha\nalpha gamma\n");
  std::ostringstream out;
  write_label_map(g, out);
  CHECK(out.str() == "0\tbeta\n1\talpha\n2\tgamma\n");
}
