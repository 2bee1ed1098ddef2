#include "symext/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace symext {

using nlohmann::json;

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string quoted(const std::string& s) { return json(s).dump(); }

void write_entries(std::ostringstream& os, const ComplexMatrix& m, const std::string& indent) {
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << ((i == 0 && j == 0) ? "\n" : ",\n") << indent << "  [" << format_number(m(i, j).real()) << ", "
         << format_number(m(i, j).imag()) << "]";
    }
  os << "\n" << indent << "]";
}

void write_header(std::ostringstream& os, const std::string& kind, const FileMetadata& meta) {
  os << "{\n  \"format_version\": " << kFormatVersion << ",\n  \"kind\": " << quoted(kind) << ",\n";
  os << "  \"metadata\": {";
  bool any = false;
  if (meta.seed) {
    os << "\"seed\": " << *meta.seed;
    any = true;
  }
  if (!meta.provenance.empty()) os << (any ? ", " : "") << "\"provenance\": " << quoted(meta.provenance);
  os << "},\n";
}

void write_layout(std::ostringstream& os, const std::vector<std::size_t>& dims) {
  os << "  \"layout\": [";
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? ", " : "") << dims[i];
  os << "],\n";
}

}  // namespace

std::string format_state(const DensityMatrix& rho, const FileMetadata& meta) {
  std::ostringstream os;
  write_header(os, "state", meta);
  write_layout(os, rho.layout().dims());
  os << "  \"entries\": ";
  write_entries(os, rho.matrix(), "  ");
  os << "\n}\n";
  return os.str();
}

std::string format_bosonic(const BosonicState& sigma, const FileMetadata& meta) {
  std::ostringstream os;
  write_header(os, "bosonic", meta);
  write_layout(os, {sigma.dA(), static_cast<std::size_t>(sigma.k() + 1)});
  os << "  \"layout_tag\": " << quoted("sym(" + std::to_string(sigma.k()) + ")") << ",\n";
  os << "  \"entries\": ";
  write_entries(os, sigma.matrix(), "  ");
  os << "\n}\n";
  return os.str();
}

std::string format_blocks(const BlockState& bs, const FileMetadata& meta) {
  std::ostringstream os;
  write_header(os, "blocks", meta);
  os << "  \"k\": " << bs.k() << ",\n  \"dA\": " << bs.dA() << ",\n  \"blocks\": [";
  bool first = true;
  for (const auto& [lam, X] : bs.blocks()) {
    os << (first ? "\n" : ",\n") << "    {\"lambda\": [" << lam.lambda1 << ", " << lam.lambda2 << "], \"entries\": ";
    write_entries(os, X, "    ");
    os << "}";
    first = false;
  }
  os << "\n  ]\n}\n";
  return os.str();
}

namespace {

struct Position {
  std::size_t line, column;
};

Position position_of(const std::string& text, std::size_t byte) {
  Position p{1, 1};
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

// Schema errors are reported at the start of the first line mentioning `key`.
[[noreturn]] void schema_error(const std::string& text, const std::string& key, const std::string& what) {
  const auto at = text.find("\"" + key + "\"");
  const auto p = position_of(text, at == std::string::npos ? 0 : at);
  throw ParseError("invalid matrix file: " + what, p.line, p.column);
}

const json& field(const json& j, const std::string& text, const std::string& key) {
  if (!j.contains(key)) schema_error(text, key, "missing field '" + key + "'");
  return j.at(key);
}

std::size_t count_field(const json& j, const std::string& text, const std::string& key) {
  const json& v = field(j, text, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) schema_error(text, key, "'" + key + "' must be a positive integer");
  return v.get<std::size_t>();
}

ComplexMatrix read_entries(const json& arr, std::size_t n, const std::string& text) {
  if (!arr.is_array()) schema_error(text, "entries", "'entries' must be an array");
  if (arr.size() != n * n)
    schema_error(text, "entries", "expected " + std::to_string(n * n) + " entries, found " + std::to_string(arr.size()));
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t t = 0; t < arr.size(); ++t) {
    const json& e = arr[t];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      schema_error(text, "entries", "entry " + std::to_string(t) + " is not a [re, im] pair");
    m(static_cast<Eigen::Index>(t / n), static_cast<Eigen::Index>(t % n)) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

std::vector<std::size_t> read_layout(const json& doc, const std::string& text) {
  const json& l = field(doc, text, "layout");
  if (!l.is_array() || l.empty()) schema_error(text, "layout", "'layout' must be a non-empty array");
  std::vector<std::size_t> dims;
  for (const auto& d : l) {
    if (!d.is_number_integer() || d.get<long long>() < 1) schema_error(text, "layout", "layout dimensions must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  return dims;
}

template <class F>
auto rethrow_as_parse(const std::string& text, const std::string& key, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    schema_error(text, key, e.what());
  } catch (const std::out_of_range& e) {
    schema_error(text, key, e.what());
  }
}

}  // namespace

LoadedFile parse_matrix_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto p = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("malformed JSON: " + std::string(e.what()), p.line, p.column);
  }
  if (!doc.is_object()) throw ParseError("matrix file must be a JSON object", 1, 1);
  const json& ver = field(doc, text, "format_version");
  if (!ver.is_number_integer() || ver.get<int>() != kFormatVersion)
    schema_error(text, "format_version", "unsupported format_version");
  const json& kind_j = field(doc, text, "kind");
  if (!kind_j.is_string()) schema_error(text, "kind", "'kind' must be a string");
  const std::string kind = kind_j.get<std::string>();

  if (kind == "state") {
    const auto dims = read_layout(doc, text);
    SystemLayout layout(dims);
    ComplexMatrix m = read_entries(field(doc, text, "entries"), layout.total(), text);
    return rethrow_as_parse(text, "entries", [&] { return LoadedFile(DensityMatrix(std::move(m), layout)); });
  }
  if (kind == "bosonic") {
    const auto dims = read_layout(doc, text);
    if (dims.size() != 2 || dims[1] < 2) schema_error(text, "layout", "bosonic layout must be [dA, k + 1]");
    const int k = static_cast<int>(dims[1]) - 1;
    if (doc.contains("layout_tag")) {
      const json& tag = doc.at("layout_tag");
      if (!tag.is_string() || tag.get<std::string>() != "sym(" + std::to_string(k) + ")")
        schema_error(text, "layout_tag", "layout_tag does not match layout");
    }
    ComplexMatrix m = read_entries(field(doc, text, "entries"), dims[0] * dims[1], text);
    return rethrow_as_parse(text, "entries", [&] { return LoadedFile(BosonicState(dims[0], k, std::move(m))); });
  }
  if (kind == "blocks") {
    const auto k = count_field(doc, text, "k");
    const auto dA = count_field(doc, text, "dA");
    const json& arr = field(doc, text, "blocks");
    if (!arr.is_array()) schema_error(text, "blocks", "'blocks' must be an array");
    BlockState::BlockMap blocks;
    for (const auto& b : arr) {
      if (!b.is_object()) schema_error(text, "blocks", "each block must be an object");
      const json& lj = field(b, text, "lambda");
      if (!lj.is_array() || lj.size() != 2 || !lj[0].is_number_integer() || !lj[1].is_number_integer())
        schema_error(text, "lambda", "'lambda' must be [l1, l2]");
      const YoungDiagram lam = rethrow_as_parse(text, "lambda", [&] { return YoungDiagram(lj[0].get<int>(), lj[1].get<int>()); });
      if (lam.k() != static_cast<int>(k)) schema_error(text, "lambda", "diagram " + lam.to_string() + " does not partition k");
      if (blocks.count(lam)) schema_error(text, "lambda", "duplicate diagram " + lam.to_string());
      blocks.emplace(lam, read_entries(field(b, text, "entries"), BlockState::block_dim(dA, lam), text));
    }
    return rethrow_as_parse(text, "blocks",
                            [&] { return LoadedFile(BlockState(static_cast<int>(k), dA, std::move(blocks))); });
  }
  schema_error(text, "kind", "unknown kind '" + kind + "'");
}

LoadedFile load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix_file(ss.str());
}

DensityMatrix load_state(const std::filesystem::path& path) {
  auto f = load_file(path);
  if (auto* s = std::get_if<DensityMatrix>(&f)) return std::move(*s);
  throw ParseError(path.string() + ": expected kind \"state\"", 1, 1);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void save_state(const DensityMatrix& rho, const std::filesystem::path& path, const FileMetadata& meta) {
  write_text(path, format_state(rho, meta));
}

void save_bosonic(const BosonicState& sigma, const std::filesystem::path& path, const FileMetadata& meta) {
  write_text(path, format_bosonic(sigma, meta));
}

void save_blocks(const BlockState& bs, const std::filesystem::path& path, const FileMetadata& meta) {
  write_text(path, format_blocks(bs, meta));
}

}  // namespace symext
