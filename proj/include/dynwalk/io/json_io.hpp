#pragma once

#include "dynwalk/chain/schedule.hpp"
#include "dynwalk/chain/types.hpp"
#include "dynwalk/graph/graph.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace dynwalk {

using Json = nlohmann::json;

/// Configuration error carrying its source location in the message.
class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

namespace detail {

inline std::string escape_pointer_token(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

// Maps JSON pointers to the line where each value starts. Assumes syntactically valid input.
inline std::map<std::string, int> locate_values(const std::string& text) {
  struct Frame {
    bool object;
    long index;
    std::string key;
    bool expecting_key;
    std::string path;
  };
  std::map<std::string, int> lines;
  std::vector<Frame> stack;
  int line = 1;
  auto value_path = [&]() -> std::string {
    if (stack.empty()) return "";
    const auto& f = stack.back();
    return f.path + "/" + (f.object ? escape_pointer_token(f.key) : std::to_string(f.index));
  };
  auto read_string = [&](std::size_t& i) {
    std::string s;
    for (++i; i < text.size() && text[i] != '"'; ++i) {
      if (text[i] == '\\' && i + 1 < text.size()) {
        ++i;
        s += text[i] == 'n' ? '\n' : text[i] == 't' ? '\t' : text[i];
      } else {
        s += text[i];
      }
    }
    return s;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == ':') {
    } else if (c == ',') {
      if (!stack.empty()) {
        if (stack.back().object)
          stack.back().expecting_key = true;
        else
          ++stack.back().index;
      }
    } else if (c == '}' || c == ']') {
      if (!stack.empty()) stack.pop_back();
    } else if (c == '"' && !stack.empty() && stack.back().object && stack.back().expecting_key) {
      stack.back().key = read_string(i);
      stack.back().expecting_key = false;
    } else {
      const std::string path = value_path();
      lines.emplace(path, line);
      if (c == '{' || c == '[') {
        stack.push_back({c == '{', 0, {}, c == '{', path});
      } else if (c == '"') {
        read_string(i);
      } else {
        while (i + 1 < text.size() && std::string(",]} \t\r\n").find(text[i + 1]) == std::string::npos) ++i;
      }
    }
  }
  return lines;
}

}  // namespace detail

/// Parsed JSON plus the line of every value, so semantic errors can name a line.
class JsonDoc {
 public:
  static JsonDoc parse(const std::string& text, std::string source = "<input>") {
    JsonDoc d;
    d.source_ = std::move(source);
    try {
      d.root_ = Json::parse(text);
    } catch (const Json::parse_error& e) {
      int line = 1;
      for (std::size_t i = 0; i < text.size() && i + 1 < e.byte; ++i)
        if (text[i] == '\n') ++line;
      throw ConfigError(detail::concat(d.source_, ":", line, ": JSON syntax error: ", e.what()));
    }
    d.lines_ = detail::locate_values(text);
    return d;
  }

  static JsonDoc load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(detail::concat(path, ": cannot open file"));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
  }

  /// Wraps an in-memory value (no line information).
  static JsonDoc from_value(Json v, std::string source = "<value>") {
    JsonDoc d;
    d.root_ = std::move(v);
    d.source_ = std::move(source);
    return d;
  }

  [[nodiscard]] const Json& root() const { return root_; }
  [[nodiscard]] const std::string& source() const { return source_; }

  [[nodiscard]] const Json& at(const std::string& pointer) const { return root_.at(Json::json_pointer(pointer)); }

  /// Line of the value at `pointer` or of its nearest located ancestor; 0 if unknown.
  [[nodiscard]] int line_of(std::string pointer) const {
    while (true) {
      if (auto it = lines_.find(pointer); it != lines_.end()) return it->second;
      if (pointer.empty()) return 0;
      pointer.erase(pointer.rfind('/'));
    }
  }

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    const int line = line_of(pointer);
    const std::string where = pointer.empty() ? "(root)" : pointer;
    if (line > 0) throw ConfigError(detail::concat(source_, ":", line, ": ", where, ": ", message));
    throw ConfigError(detail::concat(source_, ": ", where, ": ", message));
  }

 private:
  Json root_;
  std::string source_;
  std::map<std::string, int> lines_;
};

/// Typed field access with pointer-addressed errors.
class JsonReader {
 public:
  JsonReader(const JsonDoc& doc, std::string pointer) : doc_(&doc), ptr_(std::move(pointer)) {}

  [[nodiscard]] const Json& value() const { return doc_->at(ptr_); }
  [[nodiscard]] const std::string& pointer() const { return ptr_; }
  [[nodiscard]] const JsonDoc& doc() const { return *doc_; }

  [[noreturn]] void fail(const std::string& message) const { doc_->fail(ptr_, message); }

  [[nodiscard]] JsonReader child(const std::string& key) const {
    return {*doc_, ptr_ + "/" + detail::escape_pointer_token(key)};
  }
  [[nodiscard]] JsonReader child(std::size_t i) const { return {*doc_, ptr_ + "/" + std::to_string(i)}; }

  void require_object(const std::set<std::string>& allowed) const {
    if (!value().is_object()) fail("expected an object");
    for (const auto& [k, v] : value().items())
      if (!allowed.count(k)) child(k).fail("unknown field '" + k + "'");
  }

  [[nodiscard]] bool has(const std::string& key) const { return value().is_object() && value().contains(key); }

  [[nodiscard]] const Json& array() const {
    if (!value().is_array()) fail("expected an array");
    return value();
  }

  [[nodiscard]] long long integer() const {
    const auto& v = value();
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<long long>(d);
    }
    fail("expected an integer");
  }

  [[nodiscard]] std::uint64_t unsigned_integer() const {
    const auto& v = value();
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    const long long x = integer();
    if (x < 0) fail("expected a non-negative integer");
    return static_cast<std::uint64_t>(x);
  }

  [[nodiscard]] double number() const {
    if (!value().is_number()) fail("expected a number");
    return value().get<double>();
  }

  [[nodiscard]] bool boolean() const {
    if (!value().is_boolean()) fail("expected true or false");
    return value().get<bool>();
  }

  [[nodiscard]] std::string string() const {
    if (!value().is_string()) fail("expected a string");
    return value().get<std::string>();
  }

  [[nodiscard]] JsonReader required(const std::string& key) const {
    if (!value().is_object()) fail("expected an object");
    if (!value().contains(key)) fail("missing required field '" + key + "'");
    return child(key);
  }

 private:
  const JsonDoc* doc_;
  std::string ptr_;
};

// ---- matrices -------------------------------------------------------------

inline Matrix read_dense(const JsonReader& rows, int n) {
  const auto& arr = rows.array();
  if (static_cast<int>(arr.size()) != n) rows.fail(detail::concat("expected ", n, " rows, got ", arr.size()));
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto row = rows.child(static_cast<std::size_t>(i));
    const auto& r = row.array();
    if (static_cast<int>(r.size()) != n) row.fail(detail::concat("expected ", n, " entries, got ", r.size()));
    for (int j = 0; j < n; ++j) m(i, j) = row.child(static_cast<std::size_t>(j)).number();
  }
  return m;
}

/// {"n": int, "rows": [[...], ...]}; entries must be finite, non-negative, rows summing to 1.
inline StochasticMatrix matrix_from_json(const JsonReader& r) {
  r.require_object({"n", "rows"});
  const long long n = r.required("n").integer();
  if (n < 1) r.child("n").fail("n must be >= 1");
  const auto rows = r.required("rows");
  Matrix m = read_dense(rows, static_cast<int>(n));
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double x = m(i, j);
      if (!std::isfinite(x) || x < 0.0)
        rows.child(static_cast<std::size_t>(i)).child(static_cast<std::size_t>(j)).fail(
            detail::concat("entry ", x, " must be finite and non-negative"));
      sum += x;
    }
    if (std::abs(sum - 1.0) > tol::probability)
      rows.child(static_cast<std::size_t>(i)).fail(detail::concat("row sums to ", sum, ", expected 1"));
  }
  try {
    return StochasticMatrix(std::move(m));
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    r.fail(e.what());
  }
}

inline Json to_json(const StochasticMatrix& p) {
  Json rows = Json::array();
  for (int i = 0; i < p.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < p.size(); ++j) row.push_back(p(i, j));
    rows.push_back(std::move(row));
  }
  return Json{{"n", p.size()}, {"rows", std::move(rows)}};
}

inline ProbabilityVector distribution_from_json(const JsonReader& r, int n) {
  const auto& arr = r.array();
  if (static_cast<int>(arr.size()) != n) r.fail(detail::concat("expected ", n, " entries, got ", arr.size()));
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = r.child(static_cast<std::size_t>(i)).number();
  try {
    return ProbabilityVector(v, true);
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    r.fail(e.what());
  }
}

// ---- schedules ------------------------------------------------------------

/// {"kind": "static"|"cyclic"|"generated", "matrices": [...], "period": int, "seed": int, "pi": [...]}.
/// "period" is optional and must equal the number of matrices for cyclic schedules.
/// With `descriptor`, a "type" field (used by schedule descriptors) is tolerated.
inline ChainSchedule schedule_from_json(const JsonReader& r, bool descriptor = false) {
  std::set<std::string> allowed{"kind", "matrices", "period", "seed", "pi"};
  if (descriptor) allowed.insert("type");
  r.require_object(allowed);
  const auto kind_r = r.required("kind");
  const std::string kind = kind_r.string();
  if (kind != "static" && kind != "cyclic" && kind != "generated")
    kind_r.fail("kind must be one of static, cyclic, generated (got '" + kind + "')");
  const auto mats_r = r.required("matrices");
  const auto& arr = mats_r.array();
  if (arr.empty()) mats_r.fail("at least one matrix is required");
  std::vector<StochasticMatrix> mats;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    mats.push_back(matrix_from_json(mats_r.child(i)));
    if (mats.back().size() != mats.front().size())
      mats_r.child(i).fail(detail::concat("matrix has n=", mats.back().size(), ", expected ", mats.front().size()));
  }
  if (kind == "static" && mats.size() != 1) mats_r.fail("a static schedule takes exactly one matrix");
  if (r.has("period")) {
    const long long period = r.child("period").integer();
    if (kind != "cyclic") r.child("period").fail("period applies to cyclic schedules only");
    if (period != static_cast<long long>(mats.size()))
      r.child("period").fail(detail::concat("period ", period, " does not match ", mats.size(), " matrices"));
  }
  std::optional<std::uint64_t> seed;
  if (r.has("seed")) seed = r.child("seed").unsigned_integer();
  std::optional<ProbabilityVector> pi;
  if (r.has("pi")) pi = distribution_from_json(r.child("pi"), mats.front().size());
  try {
    if (kind == "static") {
      auto s = ChainSchedule::static_schedule(std::move(mats.front()), pi);
      return seed ? ChainSchedule::indexed(ScheduleKind::Static, s.distinct_matrices(), {}, {0}, pi, seed) : s;
    }
    if (kind == "cyclic") {
      std::vector<int> cycle(mats.size());
      for (std::size_t i = 0; i < mats.size(); ++i) cycle[i] = static_cast<int>(i);
      return ChainSchedule::indexed(ScheduleKind::Cyclic, std::move(mats), {}, std::move(cycle), pi, seed);
    }
    return ChainSchedule::generated(std::move(mats), seed.value_or(0), pi);
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    r.fail(e.what());
  }
}

/// Static, cyclic and generated schedules only; the listed matrices follow time order.
inline Json to_json(const ChainSchedule& s) {
  Json j;
  Json mats = Json::array();
  switch (s.kind()) {
    case ScheduleKind::Static:
      j["kind"] = "static";
      mats.push_back(to_json(s.at(1)));
      break;
    case ScheduleKind::Cyclic:
      if (s.prefix_length() != 0) throw InvalidInput("to_json: cyclic schedule with a prefix is not serializable");
      j["kind"] = "cyclic";
      for (Time t = 1; t <= *s.period(); ++t) mats.push_back(to_json(s.at(t)));
      j["period"] = *s.period();
      break;
    case ScheduleKind::Generated:
      j["kind"] = "generated";
      for (Time t = 1; t <= *s.horizon(); ++t) mats.push_back(to_json(s.at(t)));
      break;
    case ScheduleKind::Prefixed:
      throw InvalidInput("to_json: prefixed schedules have no file representation");
  }
  j["matrices"] = std::move(mats);
  if (s.seed()) j["seed"] = *s.seed();
  if (s.declared_pi()) {
    Json pi = Json::array();
    for (int i = 0; i < s.size(); ++i) pi.push_back((*s.declared_pi())[i]);
    j["pi"] = std::move(pi);
  }
  return j;
}

// ---- graphs and opinions --------------------------------------------------

/// {"n": int, "edges": [[u, v], ...]}.
inline GraphSnapshot graph_from_json(const JsonReader& r) {
  r.require_object({"n", "edges"});
  const long long n = r.required("n").integer();
  if (n < 1) r.child("n").fail("n must be >= 1");
  const auto edges_r = r.required("edges");
  const auto& arr = edges_r.array();
  std::vector<Edge> edges;
  std::set<Edge> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto e = edges_r.child(i);
    if (!e.value().is_array() || e.value().size() != 2) e.fail("an edge is a pair [u, v]");
    const long long a = e.child(std::size_t{0}).integer();
    const long long b = e.child(std::size_t{1}).integer();
    if (a < 0 || a >= n || b < 0 || b >= n) e.fail(detail::concat("endpoint out of range for n=", n));
    if (a == b) e.fail("self-loops are not allowed");
    Edge key{static_cast<Vertex>(std::min(a, b)), static_cast<Vertex>(std::max(a, b))};
    if (!seen.insert(key).second) e.fail("duplicate edge");
    edges.push_back(key);
  }
  return GraphSnapshot(static_cast<int>(n), std::move(edges));
}

inline Json to_json(const GraphSnapshot& g) {
  Json edges = Json::array();
  for (auto [a, b] : g.edges()) edges.push_back(Json::array({a, b}));
  return Json{{"n", g.size()}, {"edges", std::move(edges)}};
}

/// Map vertex -> opinion, e.g. {"0": 1, "1": 0}; a plain array indexed by vertex is also accepted.
/// Every vertex 0..n-1 must be assigned exactly once.
inline std::vector<int> opinions_from_json(const JsonReader& r, int n) {
  std::vector<int> out(static_cast<std::size_t>(n), 0);
  std::vector<char> set(static_cast<std::size_t>(n), 0);
  const auto& v = r.value();
  if (v.is_array()) {
    if (static_cast<int>(v.size()) != n) r.fail(detail::concat("expected ", n, " opinions, got ", v.size()));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = static_cast<int>(r.child(static_cast<std::size_t>(i)).integer());
    return out;
  }
  if (!v.is_object()) r.fail("expected a map from vertex to opinion");
  for (const auto& [k, x] : v.items()) {
    const auto c = r.child(k);
    std::size_t used = 0;
    long long vert = -1;
    try {
      vert = std::stoll(k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != k.size() || vert < 0 || vert >= n) c.fail(detail::concat("'", k, "' is not a vertex of 0..", n - 1));
    out[static_cast<std::size_t>(vert)] = static_cast<int>(c.integer());
    set[static_cast<std::size_t>(vert)] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (!set[static_cast<std::size_t>(i)]) r.fail(detail::concat("vertex ", i, " has no opinion"));
  return out;
}

inline Json opinions_to_json(const std::vector<int>& ops) {
  Json j = Json::object();
  for (std::size_t i = 0; i < ops.size(); ++i) j[std::to_string(i)] = ops[i];
  return j;
}

}  // namespace dynwalk
