// Copyright 2026 The imsibc Authors
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

#include "imsibc/cli/commands.h"

#include <sys/stat.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "imsibc/gba/subscriber_store.h"
#include "imsibc/gba/wire.h"
#include "imsibc/ibc/json_codec.h"
#include "imsibc/sim/simulator.h"
#include "json.hpp"
#include "test_util.h"

namespace imsibc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr char kImpi[] = "alice@ims.example.org";
constexpr char kImpu[] = "sip:alice@ims.example.org";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("imsibc_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  int Cli(std::vector<std::string> args) {
    std::vector<std::string> full = {"imsibc", "--params", P("params.json"), "--secrets",
                                     P("master_secrets.json"), "--db", P("subscribers.json")};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out_, err_);
    log_ += out_.str() + err_.str();
    return code;
  }

  void Provision() {
    ASSERT_EQ(Cli({"--seed", "5", "setup"}), kExitOk) << err_.str();
    ASSERT_EQ(Cli({"--seed", "6", "enroll", "--impi", kImpi, "--impu", kImpu}), kExitOk)
        << err_.str();
  }

  static json Load(const std::string& path) {
    std::ifstream in(path);
    return json::parse(in);
  }

  static mode_t Mode(const std::string& path) {
    struct stat st;
    EXPECT_EQ(::stat(path.c_str(), &st), 0) << path;
    return st.st_mode & 0777;
  }

  fs::path dir_;
  std::ostringstream out_, err_;
  std::string log_;  // everything printed during the test
};

TEST_F(CliTest, SetupWritesSeparateFilesWithModes) {
  ASSERT_EQ(Cli({"--seed", "1", "setup"}), kExitOk);
  const json pub = Load(P("params.json"));
  const json sec = Load(P("master_secrets.json"));
  EXPECT_EQ(Mode(P("master_secrets.json")), 0600u);
  EXPECT_FALSE(pub.contains("s1"));
  EXPECT_FALSE(pub.contains("s2"));
  EXPECT_TRUE(sec.contains("s1"));
  EXPECT_TRUE(pub.contains("version"));
  EXPECT_TRUE(sec.contains("version"));
}

TEST_F(CliTest, SetupIsIdempotentWithoutForce) {
  ASSERT_EQ(Cli({"--seed", "1", "setup"}), kExitOk);
  const json first = Load(P("master_secrets.json"));
  ASSERT_EQ(Cli({"--seed", "2", "setup"}), kExitOk);
  EXPECT_NE(out_.str().find("kept"), std::string::npos);
  EXPECT_EQ(Load(P("master_secrets.json")), first);
  ASSERT_EQ(Cli({"--seed", "2", "setup", "--force"}), kExitOk);
  EXPECT_NE(Load(P("master_secrets.json")), first);

  fs::remove(P("master_secrets.json"));
  EXPECT_EQ(Cli({"setup"}), kExitUsage);
  EXPECT_NE(err_.str().find("config-invalid"), std::string::npos);
}

TEST_F(CliTest, EnrollStoresSecretDatabase) {
  Provision();
  EXPECT_EQ(Mode(P("subscribers.json")), 0600u);
  ASSERT_OK_AND_ASSIGN(auto store, gba::SubscriberStore::FromJson(Load(P("subscribers.json"))));
  ASSERT_OK_AND_ASSIGN(const gba::SubscriberRecord* rec, store.Find(kImpi, kImpu));
  EXPECT_EQ(rec->sk.size(), 32u);
  EXPECT_TRUE(rec->guss.Allows(sim::kDefaultNafId));

  EXPECT_EQ(Cli({"enroll", "--impi", kImpi, "--impu", kImpu}), kExitCrypto);
  EXPECT_NE(err_.str().find("duplicate-couple"), std::string::npos);
  EXPECT_EQ(Cli({"enroll", "--impi", "bob@ims.example.org", "--impu", "sip:bob@ims.example.org",
                 "--naf", "a.example.org", "--attr", "tier=gold"}),
            kExitOk);
  ASSERT_OK_AND_ASSIGN(store, gba::SubscriberStore::FromJson(Load(P("subscribers.json"))));
  ASSERT_OK_AND_ASSIGN(rec, store.Find("bob@ims.example.org", "sip:bob@ims.example.org"));
  EXPECT_TRUE(rec->guss.Allows("a.example.org"));
  EXPECT_EQ(rec->guss.attributes.at("tier"), "gold");
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Cli({}), kExitUsage);
  EXPECT_EQ(Cli({"nonsense"}), kExitUsage);
  EXPECT_EQ(Cli({"enroll", "--impi", "no-at-sign", "--impu", kImpu}), kExitUsage);
  EXPECT_EQ(Cli({"enroll", "--impi", kImpi, "--impu", "alice@ims.example.org"}), kExitUsage);
  EXPECT_EQ(Cli({"enroll", "--impi", kImpi, "--impu", kImpu, "--attr", "novalue"}), kExitUsage);
  EXPECT_EQ(Cli({"attack", "no-such-attack"}), kExitUsage);
  EXPECT_EQ(Cli({"simulate", "--adversary", "ghost"}), kExitUsage);
  EXPECT_EQ(Cli({"simulate", "--adversary", "signature-tamperer", "--inject-point", "3"}),
            kExitUsage);
  EXPECT_EQ(Cli({"--help"}), kExitOk);
}

TEST_F(CliTest, MissingFilesExitFour) {
  EXPECT_EQ(Cli({"flow", "--impu", kImpu}), kExitIo);
  EXPECT_NE(err_.str().find("io"), std::string::npos);
  EXPECT_EQ(Cli({"simulate", "--config", P("absent.json")}), kExitIo);
}

TEST_F(CliTest, MalformedFileIsUsageError) {
  std::ofstream(P("params.json")) << "{not json";
  std::ofstream(P("master_secrets.json")) << "{}";
  EXPECT_EQ(Cli({"flow", "--impu", kImpu}), kExitUsage);
  EXPECT_NE(err_.str().find("malformed-input"), std::string::npos);
}

TEST_F(CliTest, FlowPrintsTwelveMessagesAndAgreedKey) {
  Provision();
  ASSERT_EQ(Cli({"--seed", "7", "flow", "--impu", kImpu, "--trace-out", P("trace.txt")}),
            kExitOk)
      << err_.str();
  const std::string out = out_.str();
  EXPECT_NE(out.find("messages: 12"), std::string::npos) << out;
  EXPECT_NE(out.find("outcome: Complete"), std::string::npos);
  EXPECT_NE(out.find("UE and NAF agree"), std::string::npos);
  std::ifstream in(P("trace.txt"));
  std::stringstream ss;
  ss << in.rdbuf();
  ASSERT_OK_AND_ASSIGN(auto msgs, gba::ParseTrace(ss.str()));
  ASSERT_EQ(msgs.size(), 12u);
  for (int i = 0; i < 12; ++i) EXPECT_EQ(msgs[i].number(), i + 1);
}

TEST_F(CliTest, FlowToUnknownImpuOrDeniedNaf) {
  Provision();
  EXPECT_EQ(Cli({"flow", "--impu", "sip:nobody@ims.example.org"}), kExitCrypto);
  EXPECT_NE(err_.str().find("unknown-couple"), std::string::npos);
  EXPECT_EQ(Cli({"--seed", "3", "flow", "--impu", kImpu, "--naf-id", "other.example.org"}),
            kExitCrypto);
  EXPECT_NE(err_.str().find("service-denied"), std::string::npos);
}

// Every secret a run touches, in the hex form a careless print would use.
TEST_F(CliTest, NoSecretBytesAtAnyVerbosity) {
  Provision();
  std::vector<std::string> secrets;
  const json sec = Load(P("master_secrets.json"));
  secrets.push_back(sec["s1"].get<std::string>());
  secrets.push_back(sec["s2"].get<std::string>());
  ASSERT_OK_AND_ASSIGN(auto store, gba::SubscriberStore::FromJson(Load(P("subscribers.json"))));
  ASSERT_OK_AND_ASSIGN(const gba::SubscriberRecord* rec, store.Find(kImpi, kImpu));
  secrets.push_back(HexEncode(rec->sk));

  // Rebuild the flow the CLI runs with seed 7 to learn the issued Kpriv.
  ASSERT_OK_AND_ASSIGN(auto pub, ibc::MasterPublicKeyFromJson(Load(P("params.json"))));
  ASSERT_OK_AND_ASSIGN(auto master, ibc::MasterKeyPairFromJson(sec, pub));
  sim::World world{master, store, {gba::NafConfig{}}};
  sim::SimConfig sc;
  sc.n_ues = 1;
  sc.rng_seed = 7;
  ASSERT_OK_AND_ASSIGN(auto r, sim::RunFlows(sc, world, {{{rec->impi, rec->impu, rec->sk}}}));
  ASSERT_TRUE(r.ue_private_keys.at(0).has_value());
  secrets.push_back(r.ue_private_keys[0]->kpriv1.ToHex());
  secrets.push_back(r.ue_private_keys[0]->kpriv2.ToHex());

  for (const char* v : {"", "-v", "-vv", "-vvv"}) {
    std::vector<std::string> args = {"--seed", "7", "flow", "--impu", kImpu};
    if (*v != '\0') args.insert(args.begin(), v);
    ASSERT_EQ(Cli(args), kExitOk) << err_.str();
  }
  EXPECT_NE(log_.find("\"body\""), std::string::npos) << "verbose wire dump missing";
  Cli({"--verbose", "--verbose", "--verbose", "simulate", "--n-ues", "3", "--out",
       P("rep.json")});
  Cli({"--verbose", "--verbose", "--verbose", "attack", "eavesdropper", "--n-ues", "3"});

  std::string lower = log_;
  for (auto& c : lower) c = static_cast<char>(std::tolower(c));
  for (const auto& s : secrets) {
    ASSERT_FALSE(s.empty());
    EXPECT_EQ(lower.find(s), std::string::npos) << "secret leaked";
    EXPECT_EQ(lower.find(s.substr(0, 16)), std::string::npos) << "secret prefix leaked";
  }
}

TEST_F(CliTest, SimulateWritesVersionedReport) {
  json cfg = {{"version", 1}, {"n_ues", 4}, {"rng_seed", 9}};
  std::ofstream(P("cfg.json")) << cfg.dump();
  ASSERT_EQ(Cli({"simulate", "--config", P("cfg.json"), "--batch", "--window-size", "4", "--out",
                 P("rep.json"), "--transcript", P("t.txt")}),
            kExitOk)
      << err_.str();
  const json rep = Load(P("rep.json"));
  EXPECT_TRUE(rep.contains("version"));
  EXPECT_EQ(rep["summary"]["complete"], 4);
  EXPECT_EQ(rep["pairings"]["flushes"], 1);
  EXPECT_EQ(rep["config"]["batch_mode"], true);
  EXPECT_EQ(rep["config"]["rng_seed"], 9);
  EXPECT_TRUE(fs::exists(P("t.txt")));
}

TEST_F(CliTest, AttacksReportDefenceHeld) {
  ASSERT_EQ(Cli({"attack", "mitm-impostor", "--n-ues", "3"}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("rejected at HSS lookup"), std::string::npos) << out_.str();
  ASSERT_EQ(Cli({"attack", "replay-attacker", "--n-ues", "3"}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("0 pairings"), std::string::npos) << out_.str();
  ASSERT_EQ(Cli({"attack", "signature-tamperer", "--n-ues", "3", "--point", "9"}), kExitOk);
  EXPECT_NE(out_.str().find("Sig2"), std::string::npos);
  EXPECT_EQ(Cli({"attack", "signature-tamperer", "--point", "4"}), kExitUsage);
  ASSERT_EQ(Cli({"attack", "batch-cancellation-pair", "--n-ues", "4"}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("naive batch: forged pair accepted"), std::string::npos)
      << out_.str();
  ASSERT_EQ(Cli({"attack", "eavesdropper", "--n-ues", "3"}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("tried under other users' Kpriv1: 6"), std::string::npos)
      << out_.str();
}

TEST_F(CliTest, BenchWritesJson) {
  ASSERT_EQ(Cli({"bench", "1", "2", "--iterations", "10", "--out", P("b.json")}), kExitOk)
      << err_.str();
  EXPECT_NE(out_.str().find("without batch"), std::string::npos);
  const json b = Load(P("b.json"));
  EXPECT_EQ(b["batch_vs_sequential"].size(), 2u);
  EXPECT_EQ(Cli({"bench", "0"}), kExitUsage);
}

TEST(ExitCodeTest, CategoriesMapToCodes) {
  EXPECT_EQ(ExitCodeFor(absl::OkStatus()), 0);
  EXPECT_EQ(ExitCodeFor(MakeError(ErrorReason::kInvalidArgument, "")), 2);
  EXPECT_EQ(ExitCodeFor(MakeError(ErrorReason::kSignatureInvalid, "")), 3);
  EXPECT_EQ(ExitCodeFor(MakeError(ErrorReason::kReplay, "")), 3);
  EXPECT_EQ(ExitCodeFor(MakeError(ErrorReason::kIo, "")), 4);
}

}  // namespace
}  // namespace imsibc::cli
