// Copyright 2026 The steplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <vector>

#include "rational_oracle.hpp"
#include "steplab/truncations.hpp"

using namespace steplab;

namespace {

std::vector<u64> as_vec(const DensePoly& f) { return f.vec(); }

const std::vector<u64> kSmallPrimes = [] {
  std::vector<u64> v;
  for (u64 q = 3; q <= 53; ++q)
    if (is_prime(q)) v.push_back(q);
  return v;
}();

}  // namespace

TEST(GenPolylog, Examples) {
  EXPECT_EQ(as_vec(gen_polylog(Prime(5), 1)), (std::vector<u64>{0, 1, 3, 2, 4}));
  EXPECT_EQ(as_vec(gen_polylog(Prime(5), 2)), (std::vector<u64>{0, 1, 4, 4, 1}));
  EXPECT_EQ(as_vec(gen_polylog(Prime(3), 1)), (std::vector<u64>{0, 1, 2}));
  try {
    gen_polylog(Prime(5), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidOrder);
  }
}

TEST(GenPolyexp, Examples) {
  EXPECT_EQ(as_vec(gen_polyexp(Prime(5), 0)), (std::vector<u64>{1, 1, 3, 1, 4}));
  EXPECT_EQ(as_vec(gen_polyexp(Prime(5), 1)), (std::vector<u64>{0, 1, 4, 2, 1}));
  EXPECT_EQ(as_vec(gen_polyexp(Prime(3), 0)), (std::vector<u64>{1, 1, 2}));
}

TEST(GenBessel, Examples) {
  EXPECT_EQ(as_vec(gen_bessel(Prime(5))), (std::vector<u64>{1, 0, 1, 0, 4, 0, 1}));
  // -1/4 = 2, 1/64 = 1 mod 3
  EXPECT_EQ(as_vec(gen_bessel(Prime(3))), (std::vector<u64>{1, 0, 2, 0, 1}));
  for (u64 q : {7ULL, 11ULL, 101ULL}) EXPECT_EQ(gen_bessel(Prime(q)).coeff(0), 1u);
  EXPECT_EQ(bessel_constant(Prime(5)), 1u);
}

TEST(GenHasse, Examples) {
  EXPECT_EQ(as_vec(gen_hasse(Prime(5))), (std::vector<u64>{1, 4, 1}));
  EXPECT_EQ(as_vec(gen_hasse(Prime(7))), (std::vector<u64>{1, 2, 2, 1}));
  EXPECT_EQ(as_vec(gen_hasse(Prime(3))), (std::vector<u64>{1, 1}));
  for (u64 q : {11ULL, 13ULL, 97ULL}) EXPECT_EQ(gen_hasse(Prime(q)).leading(), 1u);
}

TEST(GenR, Examples) {
  EXPECT_EQ(as_vec(gen_r(Prime(7))), (std::vector<u64>{0, 1, 0, 3, 0, 4}));
  // 2/3 = 2*2 = 4 mod 5
  EXPECT_EQ(as_vec(gen_r(Prime(5))), (std::vector<u64>{0, 1, 0, 4}));
  EXPECT_EQ(gen_r(Prime(101)).coeff(1), 1u);
  EXPECT_THROW(gen_r(Prime(3)), Error);
}

TEST(Generators, Degrees) {
  for (u64 q : kSmallPrimes) {
    Prime p(q);
    for (unsigned k = 1; k <= 4; ++k) EXPECT_EQ(gen_polylog(p, k).degree(), q - 1);
    for (unsigned k = 0; k <= 4; ++k) EXPECT_EQ(gen_polyexp(p, k).degree(), q - 1);
    EXPECT_EQ(gen_bessel(p).degree(), q + 1);
    EXPECT_EQ(gen_hasse(p).degree(), (q - 1) / 2);
    if (q >= 5) {
      EXPECT_EQ(gen_r(p).degree(), q - 2);
    }
  }
}

TEST(Generators, MatchExactRationalTruncationUpTo53) {
  for (u64 q : kSmallPrimes) {
    Prime p(q);
    for (unsigned k = 1; k <= 4; ++k)
      ASSERT_EQ(as_vec(gen_polylog(p, k)), oracle::reduce(oracle::polylog(q, k), q)) << "L" << k << " p=" << q;
    for (unsigned k = 0; k <= 4; ++k)
      ASSERT_EQ(as_vec(gen_polyexp(p, k)), oracle::reduce(oracle::polyexp(q, k), q)) << "E" << k << " p=" << q;
    ASSERT_EQ(as_vec(gen_bessel(p)), oracle::reduce(oracle::bessel(q), q)) << "J0 p=" << q;
    ASSERT_EQ(as_vec(gen_hasse(p)), oracle::reduce(oracle::hasse(q), q)) << "H p=" << q;
    if (q >= 5) {
      ASSERT_EQ(as_vec(gen_r(p)), oracle::reduce(oracle::rseries(q), q)) << "R p=" << q;
    }
  }
}

TEST(GenPolylog, VanishesAtZeroAndOne) {
  for (u64 q : kSmallPrimes) {
    DensePoly l = gen_polylog(Prime(q), 1);
    EXPECT_EQ(l.eval(0), 0u);
    EXPECT_EQ(l.eval(1), 0u);
  }
}

TEST(GenPolylog, EulerOperatorLowersOrder) {
  for (u64 q : {5ULL, 7ULL, 53ULL, 101ULL}) {
    Prime p(q);
    for (unsigned k = 2; k <= 5; ++k) {
      EXPECT_EQ(gen_polylog(p, k).derivative().shifted(1), gen_polylog(p, k - 1));
    }
  }
}

TEST(FieldTables, InversesAndBinomials) {
  Prime p(101);
  FieldTables t(p, 100);
  for (std::size_t i = 1; i <= 100; ++i) EXPECT_EQ(p.mul(t.inv(i), i), 1u);
  EXPECT_EQ(t.binom(10, 3), 120u % 101);
  EXPECT_EQ(t.binom(3, 10), 0u);
}
