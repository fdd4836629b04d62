#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "hypfill.h"

namespace {

std::string tmp_path(const std::string& name) {
  return std::string("/tmp/hf_capi_") + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Space {
  hf_space* s = nullptr;
  ~Space() { hf_space_free(s); }
};
struct Filling {
  hf_filling* g = nullptr;
  ~Filling() { hf_filling_free(g); }
};

}  // namespace

TEST_CASE("generate, count, save, load round trip") {
  Space a;
  REQUIRE(hf_space_generate("interval", 5, 0.5, 1, &a.s) == HF_OK);
  uint32_t n = 0;
  REQUIRE(hf_space_point_count(a.s, &n) == HF_OK);
  CHECK(n == 33);  // 2^5 + 1 points
  auto path = tmp_path("space.json");
  REQUIRE(hf_space_save(a.s, path.c_str()) == HF_OK);
  Space b;
  REQUIRE(hf_space_load(path.c_str(), &b.s) == HF_OK);
  uint32_t m = 0;
  REQUIRE(hf_space_point_count(b.s, &m) == HF_OK);
  CHECK(m == n);
  std::remove(path.c_str());
}

TEST_CASE("errors set a message and the right code") {
  hf_space* s = nullptr;
  CHECK(hf_space_generate("no_such_space", 3, 0.5, 1, &s) == HF_ERR_INVALID);
  CHECK(std::string(hf_last_error()).size() > 0);
  CHECK(s == nullptr);
  CHECK(hf_space_load("/nonexistent/dir/space.json", &s) == HF_ERR_IO);
  CHECK(hf_space_generate("interval", 3, 0.5, 1, nullptr) == HF_ERR_INVALID);
  Space ok;
  REQUIRE(hf_space_generate("interval", 4, 0.5, 1, &ok.s) == HF_OK);
  hf_filling* g = nullptr;
  CHECK(hf_filling_build(ok.s, 1.5, 3.0, 3, 2.0, 0.5, &g) == HF_ERR_INVALID);  // alpha <= 2
}

TEST_CASE("filling build, save, load") {
  Space sp;
  REQUIRE(hf_space_generate("interval", 6, 0.5, 1, &sp.s) == HF_OK);
  Filling f;
  REQUIRE(hf_filling_build(sp.s, 3.0, 3.0, 4, 2.0, 0.5, &f.g) == HF_OK);
  uint32_t nv = 0;
  REQUIRE(hf_filling_vertex_count(f.g, &nv) == HF_OK);
  CHECK(nv > 10);
  auto path = tmp_path("filling.jsonl");
  REQUIRE(hf_filling_save(f.g, path.c_str()) == HF_OK);
  Filling f2;
  REQUIRE(hf_filling_load(path.c_str(), &f2.g) == HF_OK);
  uint32_t nv2 = 0;
  REQUIRE(hf_filling_vertex_count(f2.g, &nv2) == HF_OK);
  CHECK(nv2 == nv);
  std::remove(path.c_str());
}

TEST_CASE("solve and trace through files") {
  Space sp;
  REQUIRE(hf_space_generate("interval", 6, 0.5, 1, &sp.s) == HF_OK);
  Filling f;
  REQUIRE(hf_filling_build(sp.s, 3.0, 3.0, 4, 2.0, 0.5, &f.g) == HF_OK);

  auto fcsv = tmp_path("f.csv");
  {
    // boundary data 0 and 1 at the two interval endpoints
    std::ofstream out(fcsv);
    out << "id,value\n0,0\n1,1\n";
  }
  auto sol = tmp_path("sol.csv");
  auto diag = tmp_path("diag.json");
  REQUIRE(hf_solve(sp.s, f.g, 2.0, 0.5, 0.0, fcsv.c_str(), nullptr, 1e-9, 20000, "auto",
                   sol.c_str(), diag.c_str()) == HF_OK);
  auto d = slurp(diag);
  CHECK(d.find("\"energy\"") != std::string::npos);
  CHECK(d.find("\"converged\": true") != std::string::npos);

  auto tr = tmp_path("trace.csv");
  REQUIRE(hf_trace(sp.s, f.g, sol.c_str(), tr.c_str()) == HF_OK);
  // traced values stay within the boundary data range
  std::ifstream in(tr);
  std::string line;
  std::getline(in, line);  // header
  int rows = 0;
  while (std::getline(in, line)) {
    auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    double v = std::stod(line.substr(comma + 1));
    CHECK(v >= -0.05);
    CHECK(v <= 1.05);
    ++rows;
  }
  CHECK(rows == 63);  // one per interior sample
  for (const auto& pth : {fcsv, sol, diag, tr}) std::remove(pth.c_str());

  // mismatched boundary data length is rejected
  {
    std::ofstream out(fcsv);
    out << "id,value\n0,0\n";
  }
  CHECK(hf_solve(sp.s, f.g, 2.0, 0.5, 0.0, fcsv.c_str(), nullptr, 1e-9, 20000, "auto",
                 sol.c_str(), nullptr) == HF_ERR_INVALID);
  std::remove(fcsv.c_str());
}

TEST_CASE("capacity report writes csv rows and slope json") {
  Space sp;
  REQUIRE(hf_space_generate("interval", 6, 0.5, 1, &sp.s) == HF_OK);
  Filling f;
  REQUIRE(hf_filling_build(sp.s, 3.0, 3.0, 4, 2.0, 0.5, &f.g) == HF_OK);
  auto csv = tmp_path("cap.csv");
  auto js = tmp_path("cap.json");
  REQUIRE(hf_capacity_report(sp.s, f.g, 2.0, 0.5, -1, csv.c_str(), js.c_str()) == HF_OK);
  auto body = slurp(js);
  CHECK(body.find("slope_upper") != std::string::npos);
  CHECK(slurp(csv).find("radius") != std::string::npos);
  std::remove(csv.c_str());
  std::remove(js.c_str());
}

TEST_CASE("suite runner distinguishes known and unknown suites") {
  CHECK(std::string(hf_suite_names()).find("construction") != std::string::npos);
  CHECK(hf_run_suite("no_such_suite", nullptr) == HF_ERR_INVALID);
  auto js = tmp_path("suite.json");
  CHECK(hf_run_suite("construction", js.c_str()) == HF_OK);
  auto body = slurp(js);
  CHECK(body.find("\"pass\": true") != std::string::npos);
  std::remove(js.c_str());
}
