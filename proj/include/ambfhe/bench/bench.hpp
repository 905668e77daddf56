/*
 * Copyright 2026 The ambfhe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef AMBFHE_BENCH_BENCH_HPP_
#define AMBFHE_BENCH_BENCH_HPP_

#include <string>
#include <vector>

#include "ambfhe/ckks/evaluator.hpp"

namespace ambfhe::bench {

struct BenchConfig {
  std::string preset = "PN12QP109";
  std::size_t iters = 21;   // median-of-iters
  std::size_t warmup = 3;
  std::size_t d = 512;      // template length
  std::size_t m = 2;        // modalities
  std::uint64_t seed = 1;
};

struct OpTiming {
  std::string name;
  double median_us = 0.0;
  double normalized_to_add = 0.0;
};

// Primitive timings. "Mul" is the raw ciphertext tensor product; the inner
// products include relinearization, rescale and the rotate-and-sum.
struct MicroBenchReport {
  std::string preset;
  std::size_t ring_dim = 0;
  std::size_t iters = 0;
  std::vector<OpTiming> ops;  // Ecd Dcd Enc Dec Add Mul Rot1 InnerProduct_d InnerProduct_2d
  double rotation_share_of_ip = 0.0;  // fraction of InnerProduct_d wall time

  const OpTiming& op(const std::string& name) const;
};

MicroBenchReport run_micro_bench(const BenchConfig& cfg);
std::string render_micro_report(const MicroBenchReport& rep);

// Stage-2 marginal work vs a from-scratch fused recomputation.
struct IncrementalReport {
  std::string preset;
  std::size_t ring_dim = 0;
  std::size_t d = 0;
  ckks::OpCounter incremental_ops;
  ckks::OpCounter naive_ops;
  double incremental_us = 0.0;
  double naive_us = 0.0;
  double wall_ratio = 0.0;  // incremental / naive
};

IncrementalReport run_incremental_vs_naive(const BenchConfig& cfg);
std::string render_incremental_report(const IncrementalReport& rep);

}  // namespace ambfhe::bench

#endif  // AMBFHE_BENCH_BENCH_HPP_
