// Copyright 2026 The fastmatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fastmatch/signal_io.hpp"
#include "support/oracles.hpp"

namespace fastmatch {
namespace {

namespace fs = std::filesystem;

class SignalIoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fastmatch_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  fs::path dir_;
};

TEST_F(SignalIoTest, BinaryRoundTripIsBitExact) {
  testing::Gen gen(1);
  const Signal x(gen.reals(1000, -1e6, 1e6));
  write_signal(path("x.bin"), x);
  EXPECT_EQ(read_signal(path("x.bin")), x);
  EXPECT_EQ(fs::file_size(path("x.bin")), 8u + 8u * 1000u);
}

TEST_F(SignalIoTest, BinaryLayoutIsLittleEndian) {
  write_signal(path("one.bin"), Signal{1.0});
  std::ifstream is(path("one.bin"), std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)), {});
  ASSERT_EQ(bytes.size(), 16u);
  EXPECT_EQ(bytes[0], 1);
  for (int i = 1; i < 8; ++i) EXPECT_EQ(bytes[i], 0);
  // 1.0 = 0x3FF0000000000000
  EXPECT_EQ(bytes[14], 0xF0);
  EXPECT_EQ(bytes[15], 0x3F);
}

TEST_F(SignalIoTest, CsvRoundTripIsExact) {
  testing::Gen gen(2);
  const Signal x(gen.reals(300));
  write_signal(path("x.csv"), x);
  EXPECT_EQ(read_signal(path("x.csv")), x);
}

TEST_F(SignalIoTest, CsvAcceptsBlankLinesAndSigns) {
  std::ofstream(path("y.csv")) << "1\n\n-2.5\r\n+3\n";
  EXPECT_EQ(read_signal(path("y.csv")), (Signal{1, -2.5, 3}));
}

TEST_F(SignalIoTest, Errors) {
  EXPECT_THROW(read_signal(path("missing.bin")), IoError);
  std::ofstream(path("bad.csv")) << "1\nabc\n";
  EXPECT_THROW(read_signal(path("bad.csv")), IoError);
  std::ofstream(path("empty.csv")) << "\n";
  EXPECT_THROW(read_signal(path("empty.csv")), IoError);
  {
    std::ofstream os(path("short.bin"), std::ios::binary);
    const char header[8] = {10, 0, 0, 0, 0, 0, 0, 0};
    os.write(header, 8);
    os.write("\0\0\0\0\0\0\0\0", 8);
  }
  EXPECT_THROW(read_signal(path("short.bin")), IoError);
  EXPECT_THROW(write_signal(dir_ / "no_such_dir" / "x.bin", Signal{1}), IoError);
}

}  // namespace
}  // namespace fastmatch
