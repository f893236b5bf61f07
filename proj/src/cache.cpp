#include "hdpart/cache.hpp"

#include <zlib.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "hdpart/errors.hpp"

namespace hdp {

namespace fs = std::filesystem;

namespace {

std::uint32_t crc(std::string_view s) {
  return static_cast<std::uint32_t>(
      ::crc32(0L, reinterpret_cast<const Bytef*>(s.data()), static_cast<uInt>(s.size())));
}

std::string hex8(std::uint32_t v) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", v);
  return buf;
}

std::string index_text(const Index& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

Index parse_index(std::string_view s) {
  Index idx;
  if (s.empty()) return idx;
  for (auto part : split(s, ',')) {
    std::size_t used = 0;
    const std::string t(part);
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || t.empty()) throw IntegrityError("bad index field '" + std::string(s) + "'");
    idx.push_back(v);
  }
  return idx;
}

Integer parse_integer(std::string_view s) {
  Integer z;
  if (s.empty() || z.set_str(std::string(s), 10) != 0) throw IntegrityError("bad integer field '" + std::string(s) + "'");
  return z;
}

bool skip_line(std::string_view line) { return line.empty() || line.front() == '#'; }

std::string task_line(const std::string& id, const Integer& count) {
  const std::string body = id + "\t" + to_string(count);
  return "done\t" + body + "\t" + hex8(crc(body));
}

}  // namespace

const char* tool_version() { return HDPART_VERSION; }

std::uint32_t record_checksum(TableKind kind, const Index& index, const Integer& value) {
  return crc(std::string(name(kind)) + "\t" + index_text(index) + "\t" + to_string(value));
}

CacheRecord make_record(TableKind kind, const Index& index, const Integer& value, Provenance prov) {
  return CacheRecord{kind, index, value, prov, tool_version(), record_checksum(kind, index, value)};
}

std::string format_record(const CacheRecord& r) {
  return std::string(name(r.kind)) + "\t" + index_text(r.index) + "\t" + to_string(r.value) + "\t" + name(r.provenance) +
         "\t" + r.version + "\t" + hex8(r.checksum);
}

CacheRecord parse_record(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = split(line, '\t');
  if (f.size() != 6) throw IntegrityError("cache record needs 6 fields, got " + std::to_string(f.size()));
  CacheRecord r;
  const auto kind = table_kind_from(f[0]);
  if (!kind) throw IntegrityError("unknown table kind '" + std::string(f[0]) + "'");
  r.kind = *kind;
  r.index = parse_index(f[1]);
  r.value = parse_integer(f[2]);
  const auto prov = provenance_from(f[3]);
  if (!prov) throw IntegrityError("unknown provenance '" + std::string(f[3]) + "'");
  r.provenance = *prov;
  r.version = std::string(f[4]);
  r.checksum = static_cast<std::uint32_t>(std::stoul(std::string(f[5]), nullptr, 16));
  if (f[5].size() != 8 || r.checksum != record_checksum(r.kind, r.index, r.value))
    throw IntegrityError("checksum mismatch for " + index_label(r.kind, r.index));
  return r;
}

Cache::Cache() : snap_(std::make_shared<Snapshot>()) {}

Cache::Cache(fs::path dir) : dir_(std::move(dir)), snap_(std::make_shared<Snapshot>()) {
  fs::create_directories(dir_ / "checkpoints");
  const auto tables = dir_ / "tables.tsv";
  if (fs::exists(tables)) merge(read_file(tables));
}

fs::path Cache::default_dir() {
  if (const char* env = std::getenv("HDPART_CACHE_DIR"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "hdpart";
  return ".hdpart-cache";
}

fs::path Cache::golden_path() { return fs::path(HDPART_DATA_DIR) / "golden.tsv"; }

std::shared_ptr<const Cache::Snapshot> Cache::snapshot() const {
  std::shared_lock lock(snap_mu_);
  return snap_;
}

std::optional<CacheRecord> Cache::find(TableKind kind, const Index& index) const {
  const auto s = snapshot();
  auto it = s->find({kind, index});
  if (it == s->end()) return std::nullopt;
  return it->second;
}

std::vector<CacheRecord> Cache::read_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot read " + file.string());
  std::vector<CacheRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (skip_line(line)) continue;
    try {
      out.push_back(parse_record(line));
    } catch (const IntegrityError&) {
      ++corrupt_;
    }
  }
  return out;
}

std::size_t Cache::merge(const std::vector<CacheRecord>& records) {
  std::lock_guard w(write_mu_);
  auto next = std::make_shared<Snapshot>(*snapshot());
  std::size_t added = 0;
  for (const auto& r : records) {
    auto [it, fresh] = next->emplace(Key{r.kind, r.index}, r);
    if (fresh) {
      ++added;
    } else if (it->second.value != r.value) {
      throw IntegrityError("conflicting cached values for " + index_label(r.kind, r.index) + ": " +
                           to_string(it->second.value) + " vs " + to_string(r.value));
    }
  }
  std::unique_lock lock(snap_mu_);
  snap_ = std::move(next);
  return added;
}

std::size_t Cache::load(const fs::path& file) { return merge(read_file(file)); }

void Cache::put(TableKind kind, const Index& index, const Integer& value, Provenance prov) {
  std::lock_guard w(write_mu_);
  const auto cur = snapshot();
  if (auto it = cur->find({kind, index}); it != cur->end()) {
    if (it->second.value != value)
      throw IntegrityError("cache holds " + to_string(it->second.value) + " for " + index_label(kind, index) +
                           ", new value " + to_string(value));
    return;
  }
  const auto rec = make_record(kind, index, value, prov);
  if (persistent()) {
    std::ofstream out(dir_ / "tables.tsv", std::ios::app);
    out << format_record(rec) << '\n';
    if (!out) throw Error("cannot append to " + (dir_ / "tables.tsv").string());
  }
  auto next = std::make_shared<Snapshot>(*cur);
  next->emplace(Key{kind, index}, rec);
  std::unique_lock lock(snap_mu_);
  snap_ = std::move(next);
}

fs::path Cache::checkpoint_path(const std::string& query_id) const {
  return dir_ / "checkpoints" / (hex8(crc(query_id)) + ".tsv");
}

Checkpoint Cache::checkpoint(const std::string& query_id) const {
  Checkpoint cp;
  cp.query_id = query_id;
  if (!persistent()) return cp;
  std::ifstream in(checkpoint_path(query_id));
  if (!in) return cp;
  std::string line;
  std::vector<std::string> planned;
  bool ours = false;
  while (std::getline(in, line)) {
    if (line.rfind("# query ", 0) == 0) {
      ours = line.substr(8) == query_id;
      continue;
    }
    if (!ours || skip_line(line)) continue;
    const auto f = split(line, '\t');
    if (f.size() == 2 && f[0] == "plan") {
      planned.emplace_back(f[1]);
    } else if (f.size() == 4 && f[0] == "done") {
      const std::string body = std::string(f[1]) + "\t" + std::string(f[2]);
      if (f[3] != hex8(crc(body))) continue;  // torn write: redo that task
      try {
        cp.completed[std::string(f[1])] = parse_integer(f[2]);
      } catch (const IntegrityError&) {
      }
    }
  }
  for (const auto& id : planned)
    if (!cp.completed.count(id)) cp.pending.push_back(id);
  return cp;
}

void Cache::plan(const std::string& query_id, const std::vector<std::string>& task_ids) {
  if (!persistent()) return;
  std::lock_guard w(write_mu_);
  const auto path = checkpoint_path(query_id);
  const bool fresh = !fs::exists(path);
  std::ofstream out(path, std::ios::app);
  if (fresh) {
    out << "# query " << query_id << '\n';
    for (const auto& id : task_ids) out << "plan\t" << id << '\n';
  }
  if (!out) throw Error("cannot write checkpoint " + path.string());
}

void Cache::record_task(const std::string& query_id, const AlphaTaskRecord& task) {
  if (!persistent()) return;
  std::lock_guard w(write_mu_);
  std::ofstream out(checkpoint_path(query_id), std::ios::app);
  out << task_line(task.id, task.count) << '\n';
  out.flush();
  if (!out) throw Error("cannot write checkpoint for " + query_id);
}

void Cache::drop_checkpoint(const std::string& query_id) {
  if (!persistent()) return;
  std::lock_guard w(write_mu_);
  fs::remove(checkpoint_path(query_id));
}

AlphaOptions Cache::resumable(const AlphaQuery& query, AlphaOptions base) {
  const std::string id = query_id(query);
  base.completed = checkpoint(id).completed;
  auto prev_plan = base.on_plan;
  base.on_plan = [this, id, prev_plan](const std::vector<std::string>& ids) {
    plan(id, ids);
    if (prev_plan) prev_plan(ids);
  };
  auto prev = base.observer;
  base.observer = [this, id, prev](const AlphaTaskRecord& r) {
    record_task(id, r);
    if (prev) prev(r);
  };
  return base;
}

}  // namespace hdp
