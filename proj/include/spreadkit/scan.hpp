#pragma once

// Chunked, checkpointable scans over [0, total).
//
// The range is cut into fixed-size chunks processed in batches of `workers`
// chunks. Chunk results are merged strictly in chunk order, and a chunk that
// asks to stop hides every later chunk, so the merged result never depends on
// the worker count. Between batches the merged state can be written to a JSON
// checkpoint file and picked up again by a later run with the same fingerprint.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "spreadkit/parallel.hpp"

namespace spreadkit {

struct ScanControl {
  std::size_t workers = 1;
  std::uint64_t chunk_size = 1u << 15;
  /// When set, progress is saved here and resumed from here.
  std::optional<std::filesystem::path> checkpoint_file;
  /// Identifies the scan (inputs, seed, data hashes); a mismatching checkpoint is ignored.
  std::string fingerprint;
  double checkpoint_interval_seconds = 30.0;
  std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

struct ScanInfo {
  std::uint64_t chunks_total = 0;
  std::uint64_t chunks_done = 0;
  bool resumed = false;
  bool stopped_early = false;
};

/// Acc requirements: default constructible; void merge(const Acc&);
/// bool stop() const; nlohmann::json to_json() const; static Acc from_json(const nlohmann::json&).
template <class Acc, class ChunkFn>
Acc chunked_scan(std::uint64_t total, const ScanControl& ctl, ChunkFn&& chunk_fn,
                 ScanInfo* info_out = nullptr) {
  using nlohmann::json;
  const std::uint64_t chunk = std::max<std::uint64_t>(ctl.chunk_size, 1);
  ScanInfo info;
  info.chunks_total = (total + chunk - 1) / chunk;
  Acc acc;
  std::uint64_t next = 0;

  if (ctl.checkpoint_file && std::filesystem::exists(*ctl.checkpoint_file)) {
    std::ifstream in(*ctl.checkpoint_file);
    const json j = json::parse(in, nullptr, false);
    if (!j.is_discarded() && j.value("fingerprint", "") == ctl.fingerprint &&
        j.value("total", std::uint64_t{0}) == total &&
        j.value("chunk_size", std::uint64_t{0}) == chunk) {
      acc = Acc::from_json(j.at("state"));
      next = j.at("next_chunk").get<std::uint64_t>();
      info.stopped_early = j.value("stopped", false);
      info.resumed = true;
    }
  }

  auto save = [&](bool stopped) {
    if (!ctl.checkpoint_file) return;
    json j{{"fingerprint", ctl.fingerprint},
           {"total", total},
           {"chunk_size", chunk},
           {"next_chunk", next},
           {"stopped", stopped},
           {"state", acc.to_json()}};
    const auto tmp = ctl.checkpoint_file->string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << j.dump(1) << '\n';
    }
    std::filesystem::rename(tmp, *ctl.checkpoint_file);
  };

  auto last_save = std::chrono::steady_clock::now();
  const std::size_t workers = std::max<std::size_t>(ctl.workers, 1);
  while (next < info.chunks_total && !info.stopped_early) {
    const std::uint64_t batch = std::min<std::uint64_t>(workers, info.chunks_total - next);
    std::vector<Acc> parts(batch);
    run_workers(batch, [&](std::size_t w) {
      const std::uint64_t c = next + w;
      const std::uint64_t begin = c * chunk;
      parts[w] = chunk_fn(begin, std::min(total, begin + chunk));
    });
    for (std::uint64_t w = 0; w < batch; ++w) {
      acc.merge(parts[w]);
      ++next;
      if (parts[w].stop()) {
        info.stopped_early = true;
        break;
      }
    }
    if (ctl.progress) ctl.progress(std::min(total, next * chunk), total);
    const auto now = std::chrono::steady_clock::now();
    if (info.stopped_early || next == info.chunks_total ||
        std::chrono::duration<double>(now - last_save).count() >= ctl.checkpoint_interval_seconds) {
      save(info.stopped_early);
      last_save = now;
    }
  }
  info.chunks_done = next;
  if (info_out != nullptr) *info_out = info;
  return acc;
}

}  // namespace spreadkit
