// SPDX-License-Identifier: Apache-2.0
#include "fdband/error.hpp"
#include "fdband/pipeline.hpp"
#include "pipeline_fixture.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <set>

using namespace fdband;
using fdband::testing::TempDir;
using nlohmann::json;

namespace {

RunConfig small_config(const TempDir& dir) {
  const auto csv = dir / "arctic.csv";
  if (!std::filesystem::exists(csv))
    testing::spit(csv, write_canonical_csv(synthesize_ensemble(testing::seasonal_config(37, 3))));
  RunConfig c;
  c.inputs = {{Region::arctic, csv.string()}};
  c.basis_count = 5;
  c.p_values = {1, 3, 5, 7, 9};
  c.block_counts = {2, 3};
  c.b_samples = 100;
  c.parallelism = 1;
  c.output_dir = (dir / "out").string();
  return c;
}

std::set<std::string> listing(const std::filesystem::path& dir) {
  std::set<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) out.insert(e.path().filename().string());
  return out;
}

}  // namespace

TEST_CASE("config JSON round trip and validation") {
  RunConfig c;
  c.inputs = {{Region::antarctic, "x.csv"}};
  c.explicit_blocks = {{1979, 1990}, {1991, 2000}};
  c.seed = 99;
  c.emit = {"bands"};
  const auto back = RunConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK(back.explicit_blocks.size() == 2);

  CHECK_THROWS_AS(RunConfig::from_json(R"({"no_such_key": 1})"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_json("{"), ConfigError);
  RunConfig bad = c;
  bad.basis_count = 4;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.emit = {"pie"};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.level = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.inputs.clear();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("emit subset writes only the requested family") {
  TempDir dir("emit");
  auto c = small_config(dir);
  c.emit = {"mse_profile"};
  const auto result = run_pipeline(c);
  CHECK(listing(result.output_dir) ==
        std::set<std::string>{"fig03_mse_profile_arctic.csv", "basis_selection_arctic.json", "manifest.json"});
}

TEST_CASE("manifest lists exactly the files on disk") {
  TempDir dir("manifest");
  auto c = small_config(dir);
  c.svg = true;
  const auto result = run_pipeline(c);
  const auto manifest = json::parse(result.manifest_json);
  CHECK(manifest["complete"] == true);
  CHECK(manifest["error"].is_null());
  std::set<std::string> listed{"manifest.json"};
  for (const auto& f : manifest["files"]) {
    const std::string path = f["path"];
    listed.insert(path);
    CHECK(f["bytes"].get<std::uintmax_t>() == std::filesystem::file_size(result.output_dir / path));
    CHECK(f.contains("operation"));
    CHECK(f.contains("parameters"));
  }
  CHECK(listed == listing(result.output_dir));
  for (const auto& [fig, paths] : manifest["figures"].items()) CHECK_FALSE(paths.empty());
  CHECK(manifest["figures"].contains("fig08"));
  CHECK(manifest["figures"].contains("fig22"));
}

TEST_CASE("identical configs give identical bytes") {
  TempDir dir("repeat");
  const auto c = small_config(dir);
  const auto first = run_pipeline(c);
  std::map<std::string, std::string> bytes;
  for (const auto& f : first.files) bytes[f] = testing::slurp(first.output_dir / f);
  const auto second = run_pipeline(c);
  CHECK(second.manifest_json == first.manifest_json);
  REQUIRE(second.files == first.files);
  for (const auto& f : second.files) CHECK(testing::slurp(second.output_dir / f) == bytes[f]);
}

TEST_CASE("failures name their stage and leave an incomplete manifest") {
  TempDir dir("fail");
  auto c = small_config(dir);
  SUBCASE("missing input") {
    c.inputs = {{Region::arctic, (dir / "missing.csv").string()}};
    try {
      run_pipeline(c);
      FAIL("expected a pipeline error");
    } catch (const PipelineError& e) {
      CHECK(e.stage() == "ingest");
      CHECK(e.kind() == ErrorKind::input);
    }
  }
  SUBCASE("too many basis functions") {
    c.basis_count = 401;
    c.emit = {"smooth"};
    try {
      run_pipeline(c);
      FAIL("expected a pipeline error");
    } catch (const PipelineError& e) {
      CHECK(e.stage() == "smooth");
      CHECK(e.kind() == ErrorKind::numeric);
    }
  }
  const auto manifest = json::parse(testing::slurp(dir / "out" / "manifest.json"));
  CHECK(manifest["complete"] == false);
  CHECK(manifest["error"]["stage"].is_string());
}

TEST_CASE("output directory handling") {
  TempDir dir("outdir");
  auto c = small_config(dir);
  c.emit = {"raw"};
  std::filesystem::create_directories(dir / "out");
  testing::spit(dir / "out" / "keep.txt", "mine");
  CHECK_THROWS_AS(run_pipeline(c), ConfigError);
  CHECK(testing::slurp(dir / "out" / "keep.txt") == "mine");

  c.output_dir.clear();
  ::setenv(kOutputDirEnv, (dir / "env").string().c_str(), 1);
  const auto result = run_pipeline(c);
  ::unsetenv(kOutputDirEnv);
  CHECK(result.output_dir == dir / "env");
  CHECK(std::filesystem::exists(dir / "env" / "fig01_raw_arctic.csv"));
  CHECK_THROWS_AS(run_pipeline(c), ConfigError);
}
