// Copyright 2026 The regenum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "process.hpp"

namespace regenum {
namespace {

using namespace testing_util;

const std::string kCli = REGENUM_CLI_PATH;

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), kCli);
  return run_process(args);
}

bool has_line(const std::string& text, const std::string& line) {
  return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

TEST(CliTest, Count) {
  const Outcome o = cli({"count", "-n", "8", "-k", "4"});
  EXPECT_EQ(o.exit_code, 0) << o.err;
  EXPECT_TRUE(has_line(o.out, "total\t6\t6")) << o.out;
  EXPECT_NE(o.out.find("elapsed\t"), std::string::npos);
  EXPECT_NE(o.out.find("throughput\t"), std::string::npos);
}

TEST(CliTest, CountModesAgree) {
  for (const char* mode : {"mono", "local"}) {
    const Outcome o = cli({"count", "-n", "12", "-k", "4", "--mode", mode, "--workers", "3"});
    EXPECT_EQ(o.exit_code, 0) << o.err;
    EXPECT_TRUE(has_line(o.out, "total\t1544\t1,544")) << o.out;
  }
}

TEST(CliTest, Aspl) {
  const Outcome o = cli({"aspl", "--graph6", "C~"});
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_TRUE(has_line(o.out, "aspl\t1/1\t12/12\t1.000000")) << o.out;
  EXPECT_TRUE(has_line(o.out, "diameter\t1"));
  const Outcome p = cli({"aspl", "--graph6", "IheA@GUAo"});
  EXPECT_TRUE(has_line(p.out, "aspl\t5/3\t150/90\t1.666667")) << p.out;
}

TEST(CliTest, SearchFindsPetersen) {
  const auto champions = scratch_dir() / "champions.g6";
  const Outcome o = cli({"search", "-n", "10", "-k", "3", "--min-aspl", "--champions", champions.string()});
  EXPECT_EQ(o.exit_code, 0) << o.err;
  EXPECT_TRUE(has_line(o.out, "best aspl\t5/3\t1.666667")) << o.out;
  EXPECT_TRUE(has_line(o.out, "champions\t1\tkept 1")) << o.out;
  EXPECT_TRUE(has_line(o.out, "aspl lower bound\t5/3\t1.666667")) << o.out;
  EXPECT_EQ(line_count(slurp(champions)), 1U);
}

TEST(CliTest, OracleAndPrefixes) {
  const Outcome o = cli({"oracle", "-n", "10", "-k", "3"});
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.out, "19\t19\n");
  const Outcome p = cli({"prefixes", "-n", "8", "-k", "4", "--split-level", "0"});
  EXPECT_EQ(p.out, "prefixes\t1\t1\n");
}

TEST(CliTest, HistogramAndGraphFiles) {
  const auto hist = scratch_dir() / "hist.tsv";
  const auto graphs = scratch_dir() / "graphs.g6";
  const Outcome o = cli({"count", "-n", "11", "-k", "4", "--split-level", "6", "--histogram", hist.string(),
                         "--graphs", graphs.string()});
  EXPECT_EQ(o.exit_code, 0) << o.err;
  EXPECT_EQ(line_count(slurp(graphs)), 265U);
  EXPECT_TRUE(slurp(hist).starts_with("0\t0\t"));
}

TEST(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({}).exit_code, 2);
  EXPECT_EQ(cli({"count", "-n", "8"}).exit_code, 2);
  EXPECT_EQ(cli({"count", "-n", "eight", "-k", "4"}).exit_code, 2);
  EXPECT_EQ(cli({"count", "-n", "8", "-k", "4", "--bogus"}).exit_code, 2);
  EXPECT_EQ(cli({"count", "-n", "8", "-k", "4", "--mode", "cluster"}).exit_code, 2);
  EXPECT_EQ(cli({"master", "-n", "8", "-k", "4", "--split-level", "3"}).exit_code, 2);  // no --listen
  EXPECT_EQ(cli({"worker", "-n", "8", "-k", "4", "--split-level", "3"}).exit_code, 2);  // no --master
  EXPECT_EQ(cli({"count", "-n", "7", "-k", "3"}).exit_code, 2);  // odd degree sum
}

TEST(CliTest, JobFailuresExitOne) {
  EXPECT_EQ(cli({"aspl", "--graph6", "C!"}).exit_code, 1);
  EXPECT_EQ(cli({"oracle", "-n", "12", "-k", "3"}).exit_code, 1);
}

// Kill the master once results start landing in the checkpoint, restart it
// on the same checkpoint, and compare against an uninterrupted run.
TEST(CliTest, MasterResumesAfterKill) {
  const auto dir = scratch_dir();
  const auto checkpoint = dir / "resume.ckpt";
  std::filesystem::remove(checkpoint);
  const std::vector<std::string> job = {"-n", "14", "-k", "4", "--split-level", "8", "--min-aspl"};
  auto with = [&](std::vector<std::string> head, const std::vector<std::string>& tail) {
    head.insert(head.end(), job.begin(), job.end());
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  };

  const Outcome reference = cli(with({"count"}, {"--mode", "local"}));
  ASSERT_EQ(reference.exit_code, 0);
  EXPECT_TRUE(has_line(reference.out, "total\t88168\t88,168"));

  auto run_master_pair = [&](bool kill_early) -> std::string {
    const auto mout = dir / "master.out";
    const auto merr = dir / "master.err";
    Child master(with({kCli, "master"}, {"--listen", "127.0.0.1:0", "--checkpoint", checkpoint.string()}), mout,
                 merr);
    const auto port = announced_port(merr);
    EXPECT_TRUE(port.has_value());
    if (!port) return {};
    Child worker(with({kCli, "worker"}, {"--master", "127.0.0.1:" + std::to_string(*port)}), dir / "worker.out",
                 dir / "worker.err");
    if (kill_early) {
      EXPECT_TRUE(wait_for_file(checkpoint, [](const std::string& t) { return line_count(t) >= 2; }));
      master.kill();
      EXPECT_EQ(master.wait(), 128 + SIGKILL);
      worker.wait();
      return {};
    }
    EXPECT_EQ(master.wait(), 0) << slurp(merr);
    EXPECT_EQ(worker.wait(), 0);
    return slurp(mout);
  };

  run_master_pair(true);
  const std::string partial = slurp(checkpoint);
  const auto tasks = cli({"prefixes", "-n", "14", "-k", "4", "--split-level", "8"});
  const std::size_t task_count = std::stoul(tasks.out.substr(tasks.out.find('\t') + 1));
  EXPECT_GE(line_count(partial), 2U);
  EXPECT_LT(line_count(partial), task_count + 1) << "master finished before it was killed";

  const std::string resumed = run_master_pair(false);
  EXPECT_EQ(stable_report(resumed), stable_report(reference.out));

  // The checkpoint now refuses a job with another split level.
  const Outcome other = cli({"master", "-n", "14", "-k", "4", "--split-level", "6", "--min-aspl", "--listen",
                             "127.0.0.1:0", "--checkpoint", checkpoint.string()});
  EXPECT_EQ(other.exit_code, 1);
  EXPECT_NE(other.err.find("another job"), std::string::npos) << other.err;
}

}  // namespace
}  // namespace regenum
