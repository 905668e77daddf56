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

#include "ambfhe/bench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "ambfhe/linops/linops.hpp"

namespace ambfhe::bench {

namespace {

using SteadyClock = std::chrono::steady_clock;

double micros_since(SteadyClock::time_point start) {
  return std::chrono::duration<double, std::micro>(SteadyClock::now() - start)
      .count();
}

template <typename F>
double median_time_us(std::size_t iters, std::size_t warmup, F&& body) {
  for (std::size_t i = 0; i < warmup; ++i) body();
  std::vector<double> times;
  times.reserve(iters);
  for (std::size_t i = 0; i < iters; ++i) {
    auto t0 = SteadyClock::now();
    body();
    times.push_back(micros_since(t0));
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

std::vector<double> random_unit_vec(ckks::ChaChaRng& rng, std::size_t d) {
  std::vector<double> v(d);
  double sq = 0;
  for (auto& x : v) {
    x = rng.normal(1.0);
    sq += x * x;
  }
  double inv = 1.0 / std::sqrt(sq);
  for (auto& x : v) x *= inv;
  return v;
}

}  // namespace

const OpTiming& MicroBenchReport::op(const std::string& name) const {
  for (const auto& t : ops)
    if (t.name == name) return t;
  throw std::out_of_range("no such op in report: " + name);
}

MicroBenchReport run_micro_bench(const BenchConfig& cfg) {
  ckks::CkksContext ctx(ckks::CkksParams::preset(cfg.preset), cfg.seed);
  linops::PackedLayout layout{cfg.d, cfg.m, ctx.slot_count()};
  auto keys = ctx.keygen(layout.required_rotation_steps());
  ckks::Evaluator eval(ctx);
  ckks::ChaChaRng rng(cfg.seed + 1);

  std::vector<double> vec_d = random_unit_vec(rng, cfg.d);
  std::vector<double> vec_2d = random_unit_vec(rng, cfg.d * cfg.m);
  ckks::Plaintext pt = ctx.encode(vec_d);
  ckks::Ciphertext ct_a = ctx.encrypt(keys.pk, pt);
  ckks::Ciphertext ct_b = ctx.encrypt(keys.pk, ctx.encode(vec_2d));
  ckks::Plaintext pt_dec = ctx.decrypt(keys.sk, ct_a);

  MicroBenchReport rep;
  rep.preset = ctx.params().preset_name;
  rep.ring_dim = ctx.params().ring_dim;
  rep.iters = cfg.iters;

  auto time_op = [&](const std::string& name, auto&& body) {
    OpTiming t;
    t.name = name;
    t.median_us = median_time_us(cfg.iters, cfg.warmup, body);
    rep.ops.push_back(t);
  };

  time_op("Ecd", [&] { (void)ctx.encode(vec_d); });
  time_op("Dcd", [&] { (void)ctx.decode(pt_dec); });
  time_op("Enc", [&] { (void)ctx.encrypt(keys.pk, pt); });
  time_op("Dec", [&] { (void)ctx.decrypt(keys.sk, ct_a); });
  time_op("Add", [&] { (void)eval.add(ct_a, ct_b); });
  time_op("Mul", [&] { (void)eval.mul_raw(ct_a, ct_b); });
  time_op("Rot1", [&] { (void)eval.rotate(ct_a, 1, keys.evk); });

  // Inner products measured whole, with the rotation share sampled from an
  // op-identical unrolling of the fold.
  double rot_time_us = 0.0, ip_total_us = 0.0;
  std::size_t ip_runs = 0;
  auto ip_body = [&](const ckks::Ciphertext& probe) {
    auto t_start = SteadyClock::now();
    ckks::Ciphertext acc = eval.mul(probe, ct_b, keys.evk);
    for (std::size_t k = 1; k < acc.slot_count; k <<= 1) {
      auto t_rot = SteadyClock::now();
      ckks::Ciphertext rotated = eval.rotate(acc, k, keys.evk);
      rot_time_us += micros_since(t_rot);
      acc = eval.add(acc, rotated);
    }
    ip_total_us += micros_since(t_start);
    ++ip_runs;
    return acc;
  };

  {
    // The unrolled fold must cost exactly what linops::inner_product costs.
    ckks::OpCounter manual, library;
    ckks::Evaluator ev_manual(ctx, &manual), ev_library(ctx, &library);
    ckks::Ciphertext chk = ev_manual.mul(ct_a, ct_b, keys.evk);
    for (std::size_t k = 1; k < chk.slot_count; k <<= 1)
      chk = ev_manual.add(chk, ev_manual.rotate(chk, k, keys.evk));
    (void)linops::inner_product(ev_library, ct_a, ct_b, keys.evk);
    if (manual.rotations != library.rotations || manual.ct_mults != library.ct_mults)
      throw std::logic_error("bench fold diverged from linops::inner_product");
  }

  time_op("InnerProduct_d", [&] { (void)ip_body(ct_a); });
  rep.rotation_share_of_ip = ip_total_us > 0 ? rot_time_us / ip_total_us : 0.0;

  ckks::Ciphertext ct_fused = ctx.encrypt(keys.pk, ctx.encode(vec_2d));
  time_op("InnerProduct_2d",
          [&] { (void)linops::inner_product(eval, ct_fused, ct_b, keys.evk); });

  double add_us = rep.op("Add").median_us;
  for (auto& t : rep.ops) t.normalized_to_add = t.median_us / add_us;
  return rep;
}

std::string render_micro_report(const MicroBenchReport& rep) {
  std::ostringstream os;
  char buf[160];
  os << "preset " << rep.preset << "  N=" << rep.ring_dim
     << "  median of " << rep.iters << " runs\n";
  std::snprintf(buf, sizeof(buf), "  %-16s %14s %22s\n", "op", "median (us)",
                "time (normalized to Add)");
  os << buf;
  for (const auto& t : rep.ops) {
    std::snprintf(buf, sizeof(buf), "  %-16s %14.2f %22.3f\n", t.name.c_str(),
                  t.median_us, t.normalized_to_add);
    os << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "  rotation share of InnerProduct_d time: %.1f%%\n",
                100.0 * rep.rotation_share_of_ip);
  os << buf;
  return os.str();
}

IncrementalReport run_incremental_vs_naive(const BenchConfig& cfg) {
  ckks::CkksContext ctx(ckks::CkksParams::preset(cfg.preset), cfg.seed);
  linops::PackedLayout layout{cfg.d, cfg.m, ctx.slot_count()};
  layout.validate();
  if (cfg.m < 2) throw std::invalid_argument("needs at least two modalities");
  auto keys = ctx.keygen(layout.required_rotation_steps());
  ckks::ChaChaRng rng(cfg.seed + 2);

  // Enrolled fused reference and a probe pair.
  std::vector<double> ref_fused = random_unit_vec(rng, cfg.d * cfg.m);
  std::vector<double> probe1 = random_unit_vec(rng, cfg.d);
  std::vector<double> probe2 = random_unit_vec(rng, cfg.d);
  std::vector<double> probe_fused(cfg.d * cfg.m, 0.0);
  std::copy(probe1.begin(), probe1.end(), probe_fused.begin());
  std::copy(probe2.begin(), probe2.end(), probe_fused.begin() + cfg.d);

  ckks::Ciphertext ref_ct = ctx.encrypt(keys.pk, ctx.encode(ref_fused));

  // Stage-1 state reused by the incremental path.
  ckks::Evaluator setup(ctx);
  ckks::Ciphertext probe1_ct = ctx.encrypt(keys.pk, ctx.encode(probe1));
  ckks::Ciphertext delta1 = linops::inner_product(setup, probe1_ct, ref_ct, keys.evk);

  IncrementalReport rep;
  rep.preset = ctx.params().preset_name;
  rep.ring_dim = ctx.params().ring_dim;
  rep.d = cfg.d;

  auto incremental = [&](ckks::OpCounter* counter) {
    ckks::Evaluator ev(ctx, counter);
    if (counter) ++counter->encryptions;
    ckks::Ciphertext p2 = ctx.encrypt(keys.pk, ctx.encode(probe2));
    ckks::Ciphertext aligned = linops::block_align(ev, ref_ct, 2, layout, keys.evk);
    ckks::Ciphertext prod = ev.mul(p2, aligned, keys.evk);
    ckks::Ciphertext partial = linops::rotate_and_sum_block(ev, prod, cfg.d, keys.evk);
    return linops::accumulate_score(ev, delta1, partial);
  };
  auto naive = [&](ckks::OpCounter* counter) {
    ckks::Evaluator ev(ctx, counter);
    if (counter) ++counter->encryptions;
    ckks::Ciphertext pf = ctx.encrypt(keys.pk, ctx.encode(probe_fused));
    return linops::inner_product(ev, pf, ref_ct, keys.evk);
  };

  incremental(&rep.incremental_ops);
  naive(&rep.naive_ops);
  rep.incremental_us =
      median_time_us(cfg.iters, cfg.warmup, [&] { (void)incremental(nullptr); });
  rep.naive_us = median_time_us(cfg.iters, cfg.warmup, [&] { (void)naive(nullptr); });
  rep.wall_ratio = rep.incremental_us / rep.naive_us;
  return rep;
}

std::string render_incremental_report(const IncrementalReport& rep) {
  std::ostringstream os;
  char buf[200];
  os << "stage-2 cost, preset " << rep.preset << "  N=" << rep.ring_dim
     << "  d=" << rep.d << "\n";
  auto line = [&](const char* name, const ckks::OpCounter& c, double us) {
    std::snprintf(buf, sizeof(buf),
                  "  %-12s rot=%2llu mul=%llu add=%2llu enc=%llu rescale=%llu"
                  "   wall=%10.1f us\n",
                  name, static_cast<unsigned long long>(c.rotations),
                  static_cast<unsigned long long>(c.ct_mults),
                  static_cast<unsigned long long>(c.ct_adds),
                  static_cast<unsigned long long>(c.encryptions),
                  static_cast<unsigned long long>(c.rescales), us);
    os << buf;
  };
  line("incremental", rep.incremental_ops, rep.incremental_us);
  line("naive", rep.naive_ops, rep.naive_us);
  std::snprintf(buf, sizeof(buf), "  wall ratio (incremental/naive): %.3f\n",
                rep.wall_ratio);
  os << buf;
  return os.str();
}

}  // namespace ambfhe::bench
