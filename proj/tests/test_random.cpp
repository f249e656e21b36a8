// Copyright 2026 The ergosim authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ergosim/random.hpp"

using namespace ergosim;

TEST_CASE("gamma_sample frequencies match the fractional probability") {
  ParamStream s(42, 1);
  const int n = 100000;
  int hi = 0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const int64_t v = gamma_sample(0.3, 10.3, s);
    CHECK((v == 10 || v == 11));
    if (v == 11) ++hi;
    sum += static_cast<double>(v);
  }
  // Expectation 0.3*11 + 0.7*10 = 10.3; binomial sigma ~ 0.458/sqrt(n).
  CHECK(std::abs(sum / n - 10.3) < 0.01);
  CHECK(std::abs(static_cast<double>(hi) / n - 0.3) < 0.02);
}

TEST_CASE("gamma_sample is degenerate at integers for any p") {
  ParamStream s(7, 2);
  for (double p : {0.0, 0.25, 0.5, 1.0})
    for (int i = 0; i < 100; ++i) CHECK(gamma_sample(p, 7.0, s) == 7);
}

TEST_CASE("gamma_sample rejects p outside [0,1]") {
  ParamStream s(1, 1);
  CHECK_THROWS_AS(gamma_sample(-0.1, 2.5, s), std::invalid_argument);
  CHECK_THROWS_AS(gamma_sample(1.1, 2.5, s), std::invalid_argument);
}

TEST_CASE("identical (seed, parameter_id) pairs give bit-identical streams") {
  ParamStream a(123456789, 77), b(123456789, 77);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

  ParamStream c(123456789, 78);
  int same = 0;
  ParamStream a2(123456789, 77);
  for (int i = 0; i < 1000; ++i)
    if (a2.next_u64() == c.next_u64()) ++same;
  CHECK(same == 0);
}

TEST_CASE("moment check across assorted fractional targets") {
  const int n = 100000;
  for (double x : {1.5, 2.95, 10.3, 80.61, 127.01}) {
    ParamStream s(99, ParamStream::hash_id("moment") + static_cast<uint64_t>(x * 100));
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(effective_value(x, s));
    const double p = x - std::floor(x);
    const double tol = 4.0 * std::sqrt(p * (1.0 - p)) / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(sum / n - x) < tol);
  }
}

TEST_CASE("effective_value at integral targets never varies") {
  ParamStream s(5, 5);
  for (int i = 0; i < 1000; ++i) CHECK(effective_value(2.0, s) == 2);
}

TEST_CASE("effective_value of 80.61 stays on the bracketing lattice points") {
  ParamStream s(11, 3);
  for (int i = 0; i < 1000; ++i) {
    const int64_t v = effective_value(80.61, s);
    CHECK((v == 80 || v == 81));
  }
}
