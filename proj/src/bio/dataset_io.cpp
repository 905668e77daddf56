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

#include "ambfhe/bio/dataset_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ambfhe/common/bytes.hpp"

namespace ambfhe::bio {

namespace {
constexpr char kMagic[4] = {'A', 'F', 'D', 'B'};
constexpr std::uint16_t kVersion = 1;
}  // namespace

void save_dataset(const std::string& path, const std::vector<SubjectRecord>& db,
                  const SyntheticConfig& cfg) {
  ByteWriter w;
  w.bytes(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(kMagic), 4));
  w.u16(kVersion);
  w.u32(static_cast<std::uint32_t>(db.size()));
  w.u32(static_cast<std::uint32_t>(cfg.sigmas.size()));
  w.u32(static_cast<std::uint32_t>(cfg.d));
  w.u64(cfg.seed);
  w.u32(static_cast<std::uint32_t>(cfg.samples_min));
  w.u32(static_cast<std::uint32_t>(cfg.samples_max));
  for (double s : cfg.sigmas) w.f64(s);
  for (const SubjectRecord& rec : db) {
    w.str16(rec.subject_id);
    for (const auto& mod_samples : rec.samples) {
      w.u8(static_cast<std::uint8_t>(mod_samples.size()));
      for (const Template& t : mod_samples)
        for (double x : t.vector) w.f32(static_cast<float>(x));
    }
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write dataset: " + path);
  out.write(reinterpret_cast<const char*>(w.data().data()),
            static_cast<std::streamsize>(w.data().size()));
  out.flush();
  if (!out) throw std::runtime_error("dataset write failed: " + path);

  std::ostringstream man;
  man << "dataset: " << path << "\n"
      << "subjects: " << db.size() << "\n"
      << "template_len: " << cfg.d << "\n"
      << "modalities: " << cfg.sigmas.size() << "\n";
  for (std::size_t i = 0; i < cfg.sigmas.size(); ++i)
    man << "sigma[" << cfg.modalities()[i].name() << "]: " << cfg.sigmas[i] << "\n";
  man << "samples_per_modality: " << cfg.samples_min << ".." << cfg.samples_max << "\n"
      << "seed: " << cfg.seed << "\n";
  std::ofstream manifest(path + ".manifest.txt", std::ios::trunc);
  manifest << man.str();
}

LoadedDataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  ByteReader r(bytes);
  try {
    auto magic = r.bytes(4);
    if (std::memcmp(magic.data(), kMagic, 4) != 0)
      throw std::runtime_error("bad dataset magic");
    if (r.u16() != kVersion) throw std::runtime_error("unsupported dataset version");

    LoadedDataset out;
    std::uint32_t n_subjects = r.u32();
    std::uint32_t n_mods = r.u32();
    out.cfg.n_subjects = n_subjects;
    out.cfg.d = r.u32();
    out.cfg.seed = r.u64();
    out.cfg.samples_min = r.u32();
    out.cfg.samples_max = r.u32();
    out.cfg.sigmas.resize(n_mods);
    for (auto& s : out.cfg.sigmas) s = r.f64();
    auto mods = out.cfg.modalities();

    out.db.reserve(n_subjects);
    for (std::uint32_t s = 0; s < n_subjects; ++s) {
      SubjectRecord rec;
      rec.subject_id = r.str16();
      rec.samples.resize(n_mods);
      for (std::uint32_t m = 0; m < n_mods; ++m) {
        std::size_t count = r.u8();
        if (count < 1) throw std::runtime_error("subject with no samples");
        rec.samples[m].reserve(count);
        for (std::size_t k = 0; k < count; ++k) {
          std::vector<double> v(out.cfg.d);
          for (auto& x : v) x = static_cast<double>(r.f32());
          // f32 storage nudges the norm; restore the unit-norm invariant.
          rec.samples[m].push_back(normalize(v, mods[m]));
        }
      }
      out.db.push_back(std::move(rec));
    }
    if (!r.exhausted()) throw std::runtime_error("trailing bytes in dataset");
    return out;
  } catch (const ByteUnderflow&) {
    throw std::runtime_error("truncated dataset file");
  }
}

}  // namespace ambfhe::bio
