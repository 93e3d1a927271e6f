#include "flowpoly/graph_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "flowpoly/errors.hpp"

namespace flowpoly {

using nlohmann::json;

namespace {

struct Location {
  int line = 1;
  int column = 1;
};

Location location_of(std::string_view text, std::size_t offset) {
  Location loc;
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

// Second pass used only on semantic errors: records the stream offset at
// which each value (addressed by JSON pointer) was read.
class PositionRecorder : public nlohmann::json_sax<json> {
 public:
  explicit PositionRecorder(std::istream& in) : in_(in) {}

  const std::map<std::string, std::size_t>& offsets() const { return offsets_; }

  bool null() override { return scalar(); }
  bool boolean(bool) override { return scalar(); }
  bool number_integer(number_integer_t) override { return scalar(); }
  bool number_unsigned(number_unsigned_t) override { return scalar(); }
  bool number_float(number_float_t, const string_t&) override { return scalar(); }
  bool string(string_t&) override { return scalar(); }
  bool binary(binary_t&) override { return scalar(); }

  bool start_object(std::size_t) override { return open(false); }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(true); }
  bool end_array() override { return close(); }
  bool key(string_t& k) override {
    frames_.back().key = k;
    return true;
  }
  bool parse_error(std::size_t, const std::string&,
                   const nlohmann::detail::exception&) override {
    return false;
  }

 private:
  struct Frame {
    bool is_array = false;
    std::size_t index = 0;
    std::string key;
    std::string path;
  };

  std::string child_path() const {
    if (frames_.empty()) return "";
    const Frame& f = frames_.back();
    return f.path + "/" + (f.is_array ? std::to_string(f.index) : f.key);
  }

  void record(const std::string& path) {
    const auto pos = in_.tellg();
    offsets_.emplace(path, pos < 0 ? 0 : static_cast<std::size_t>(pos));
  }

  void advance() {
    if (!frames_.empty() && frames_.back().is_array) ++frames_.back().index;
  }

  bool scalar() {
    record(child_path());
    advance();
    return true;
  }

  bool open(bool is_array) {
    const std::string path = child_path();
    record(path);
    frames_.push_back({is_array, 0, {}, path});
    return true;
  }

  bool close() {
    frames_.pop_back();
    advance();
    return true;
  }

  std::istream& in_;
  std::vector<Frame> frames_;
  std::map<std::string, std::size_t> offsets_;
};

[[noreturn]] void fail_at(std::string_view text, const std::string& pointer,
                          const std::string& message) {
  std::istringstream in{std::string(text)};
  PositionRecorder recorder(in);
  json::sax_parse(in, &recorder);
  // Fall back to the nearest recorded ancestor.
  std::string p = pointer;
  auto it = recorder.offsets().find(p);
  while (it == recorder.offsets().end() && !p.empty()) {
    p.erase(p.rfind('/'));
    it = recorder.offsets().find(p);
  }
  const std::size_t offset = it == recorder.offsets().end() ? 0 : it->second;
  const Location loc = location_of(text, offset);
  throw ParseError(message + " (" + (pointer.empty() ? "/" : pointer) + ")",
                   loc.line, loc.column);
}

}  // namespace

MultiGraph parse_graph_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const Location loc = location_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("malformed JSON", loc.line, loc.column);
  }
  if (!doc.is_object()) fail_at(text, "", "graph must be a JSON object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) {
    fail_at(text, "/vertices", "\"vertices\" must be an array of strings");
  }
  if (!doc.contains("edges") || !doc["edges"].is_array()) {
    fail_at(text, "/edges", "\"edges\" must be an array of label pairs");
  }

  std::vector<std::string> labels;
  std::unordered_map<std::string, int> index_of;
  const json& vertices = doc["vertices"];
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string ptr = "/vertices/" + std::to_string(i);
    if (!vertices[i].is_string()) fail_at(text, ptr, "vertex label must be a string");
    const auto& label = vertices[i].get_ref<const std::string&>();
    if (!index_of.emplace(label, static_cast<int>(labels.size())).second) {
      fail_at(text, ptr, "duplicate vertex label '" + label + "'");
    }
    labels.push_back(label);
  }

  std::vector<Edge> edges;
  const json& raw_edges = doc["edges"];
  for (std::size_t i = 0; i < raw_edges.size(); ++i) {
    const std::string ptr = "/edges/" + std::to_string(i);
    const json& pair = raw_edges[i];
    if (!pair.is_array() || pair.size() != 2) {
      fail_at(text, ptr, "edge must be a 2-element array of vertex labels");
    }
    int ends[2];
    for (int k = 0; k < 2; ++k) {
      const std::string end_ptr = ptr + "/" + std::to_string(k);
      if (!pair[k].is_string()) fail_at(text, end_ptr, "endpoint must be a string label");
      const auto found = index_of.find(pair[k].get<std::string>());
      if (found == index_of.end()) {
        fail_at(text, end_ptr, "unknown vertex label '" + pair[k].get<std::string>() + "'");
      }
      ends[k] = found->second;
    }
    edges.push_back({ends[0], ends[1]});
  }
  if (edges.size() > static_cast<std::size_t>(kMaxEdges)) {
    fail_at(text, "/edges", "more than " + std::to_string(kMaxEdges) + " edges");
  }
  return MultiGraph(std::move(labels), std::move(edges));
}

MultiGraph load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0, 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_graph_json(buffer.str());
}

json graph_to_json(const MultiGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({g.label(e.tail), g.label(e.head)});
  }
  return {{"vertices", g.labels()}, {"edges", std::move(edges)}};
}

}  // namespace flowpoly
