#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include <fiberwalk/io.hpp>

using namespace fiberwalk;
namespace fs = std::filesystem;

namespace {

IntVector iv(std::initializer_list<long long> xs) {
  IntVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / unique_name()) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string file(const std::string& name, const std::string& contents) {
    auto p = path_ / name;
    std::ofstream out(p);
    out << contents;
    out.close();
    return p.string();
  }

  std::string path(const std::string& name) { return (path_ / name).string(); }

 private:
  static std::string unique_name() {
    static int counter = 0;
    return "fiberwalk_io_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter++);
  }

  fs::path path_;
};

}  // namespace

TEST_CASE("csv tables round-trip") {
  TempDir dir;
  auto t = read_table_csv(dir.file("t.csv", "3,1\n1,3\n"));
  CHECK(t.shape == TableShape::ways({2, 2}));
  CHECK(t.cells == iv({3, 1, 1, 3}));
  auto spaced = read_table_csv(dir.file("s.csv", " 2 , 3 , 4\n0,3,4\n0,0,1\n"));
  CHECK(spaced.cells == iv({2, 3, 4, 0, 3, 4, 0, 0, 1}));
}

TEST_CASE("csv rejects malformed input with line numbers") {
  TempDir dir;
  CHECK_THROWS_AS((void)read_table_csv(dir.file("r.csv", "1,2\n3\n")),
                  ParseError);
  try {
    (void)read_table_csv(dir.file("r2.csv", "1,2\n3\n"));
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS((void)read_table_csv(dir.file("n.csv", "1,-2\n3,4\n")),
                  ParseError);
  CHECK_THROWS_AS((void)read_table_csv(dir.file("j.csv", "1,x\n")), ParseError);
  CHECK_THROWS_AS((void)read_table_csv(dir.file("e.csv", "")), ParseError);
  CHECK_THROWS_AS((void)read_table_csv(dir.path("missing.csv")), ParseError);
}

TEST_CASE("edge lists parse and validate") {
  TempDir dir;
  auto g = read_edge_list(dir.file("g.txt", "0 1\n1 0\n\n2 0\n"), 4);
  CHECK(g.n == 4);
  CHECK(g.edges.size() == 3);
  CHECK_THROWS_AS((void)read_edge_list(dir.file("s.txt", "1 1\n"), 3),
                  ParseError);
  CHECK_THROWS_AS((void)read_edge_list(dir.file("r.txt", "0 5\n"), 3),
                  ParseError);
  CHECK_THROWS_AS((void)read_edge_list(dir.file("d.txt", "0 1\n0 1\n"), 3),
                  ParseError);
  CHECK_THROWS_AS((void)read_edge_list(dir.file("t.txt", "0\n"), 3),
                  ParseError);
}

TEST_CASE("matrix files parse") {
  TempDir dir;
  auto a = read_matrix_file(dir.file("m.txt", "2 3\n1 1 1\n0 1 2\n"));
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  CHECK(a.at(1, 2) == 2);
  CHECK_THROWS_AS((void)read_matrix_file(dir.file("h.txt", "x 3\n")),
                  ParseError);
  CHECK_THROWS_AS((void)read_matrix_file(dir.file("s.txt", "2 3\n1 1 1\n")),
                  ParseError);
  CHECK_THROWS_AS(
      (void)read_matrix_file(dir.file("w.txt", "1 3\n1 1\n")), ParseError);
}

TEST_CASE("basis files round-trip canonically") {
  TempDir dir;
  std::vector<Move> moves;
  moves.push_back(Move(iv({-1, 1, 1, -1})));  // stored sign-normalized
  moves.push_back(Move(iv({1, 1, -1, -1})));
  auto path = dir.path("b.txt");
  write_basis_file(path, moves, 4);
  auto back = read_basis_file(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].vector == iv({1, -1, -1, 1}));
  CHECK(back[1].vector == iv({1, 1, -1, -1}));
  // duplicates (up to sign) collapse on write
  moves.push_back(Move(iv({1, -1, -1, 1})));
  write_basis_file(path, moves, 4);
  CHECK(read_basis_file(path).size() == 2);
}

TEST_CASE("basis files reject malformed content") {
  TempDir dir;
  CHECK_THROWS_AS((void)read_basis_file(dir.file("z.txt", "2 1\n0 0\n")),
                  ParseError);
  CHECK_THROWS_AS((void)read_basis_file(dir.file("m.txt", "2 2\n1 -1\n")),
                  ParseError);
  CHECK_THROWS_AS((void)read_basis_file(dir.file("h.txt", "nope\n")),
                  ParseError);
}

TEST_CASE("double formatting is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(17.0 / 35.0) == "0.4857142857142857");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
