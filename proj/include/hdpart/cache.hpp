#pragma once

// Persistent table cache and alpha-search checkpoints.
//
// Layout of a cache directory:
//   tables.tsv            one record per line (see format_record)
//   checkpoints/<h>.tsv   finished tasks of one alpha query, h = crc32 of its id
//
// Lines starting with '#' are comments. A record whose checksum does not
// match is skipped and counted, so a damaged line costs only that entry.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hdpart/bigint.hpp"
#include "hdpart/mpartition.hpp"
#include "hdpart/refinement.hpp"

namespace hdp {

const char* tool_version();

struct CacheRecord {
  TableKind kind = TableKind::P;
  Index index;
  Integer value;
  Provenance provenance = Provenance::cache;
  std::string version;
  std::uint32_t checksum = 0;
};

// crc32 of "kind<TAB>index<TAB>value".
std::uint32_t record_checksum(TableKind kind, const Index& index, const Integer& value);

// kind  index  value  provenance  version  checksum, tab separated; the
// index is comma separated and the checksum is 8 lowercase hex digits.
std::string format_record(const CacheRecord& r);
// IntegrityError on a malformed line or a checksum mismatch.
CacheRecord parse_record(std::string_view line);
CacheRecord make_record(TableKind kind, const Index& index, const Integer& value, Provenance prov);

struct Checkpoint {
  std::string query_id;
  std::map<std::string, Integer> completed;  // task id -> unweighted count
  std::vector<std::string> pending;          // planned but not finished
};

class Cache {
 public:
  using Key = std::pair<TableKind, Index>;
  using Snapshot = std::map<Key, CacheRecord>;

  // In memory only: put() keeps values for this process, checkpoints are off.
  Cache();
  // Creates the directory if needed and loads tables.tsv.
  explicit Cache(std::filesystem::path dir);

  bool persistent() const { return !dir_.empty(); }

  // HDPART_CACHE_DIR if set, else $HOME/.cache/hdpart, else ./.hdpart-cache.
  static std::filesystem::path default_dir();
  // The golden table shipped with the sources.
  static std::filesystem::path golden_path();

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<CacheRecord> find(TableKind kind, const Index& index) const;
  // Readers work on an immutable snapshot; writers swap in a new one.
  std::shared_ptr<const Snapshot> snapshot() const;

  // Appends a record unless the same value is already present. A different
  // value for a known index is an IntegrityError.
  void put(TableKind kind, const Index& index, const Integer& value, Provenance prov);

  // Reads records from another file into memory (not into tables.tsv).
  std::size_t load(const std::filesystem::path& file);

  std::size_t corrupt_lines() const { return corrupt_; }

  // Alpha checkpoints.
  Checkpoint checkpoint(const std::string& query_id) const;
  void plan(const std::string& query_id, const std::vector<std::string>& task_ids);
  void record_task(const std::string& query_id, const AlphaTaskRecord& task);
  void drop_checkpoint(const std::string& query_id);

  // Options wired to this cache: resume from and append to the checkpoint.
  AlphaOptions resumable(const AlphaQuery& query, AlphaOptions base);

 private:
  std::filesystem::path checkpoint_path(const std::string& query_id) const;
  std::size_t merge(const std::vector<CacheRecord>& records);
  std::vector<CacheRecord> read_file(const std::filesystem::path& file);

  std::filesystem::path dir_;
  mutable std::shared_mutex snap_mu_;
  std::shared_ptr<const Snapshot> snap_;
  std::mutex write_mu_;
  std::atomic<std::size_t> corrupt_{0};
};

}  // namespace hdp
