#include "nambu/system.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

namespace nambu {

namespace {

struct Span {
  std::string_view text;
  std::size_t column;  // 1-based column of text[0] in the line
};

Span trim(std::string_view s, std::size_t column) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return {s.substr(b, e - b), column + b};
}

std::vector<Span> split(Span s, char sep) {
  std::vector<Span> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.text.size(); ++i) {
    if (i == s.text.size() || s.text[i] == sep) {
      parts.push_back(trim(s.text.substr(start, i - start), s.column + start));
      start = i + 1;
    }
  }
  return parts;
}

std::vector<Span> words(Span s) {
  std::vector<Span> out;
  std::size_t i = 0;
  while (i < s.text.size()) {
    while (i < s.text.size() && std::isspace(static_cast<unsigned char>(s.text[i]))) ++i;
    const std::size_t start = i;
    while (i < s.text.size() && !std::isspace(static_cast<unsigned char>(s.text[i]))) ++i;
    if (i > start) out.push_back({s.text.substr(start, i - start), s.column + start});
  }
  return out;
}

struct PendingSection {
  std::string name;
  bool is_matrix = false;
  std::size_t line = 0;
  TensorBuilder builder;
};

class SystemParser {
 public:
  SystemSpec run(std::string_view contents) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= contents.size()) {
      const auto nl = contents.find('\n', pos);
      const auto end = nl == std::string_view::npos ? contents.size() : nl;
      std::string_view line = contents.substr(pos, end - pos);
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      const auto hash = line.find('#');
      if (hash != std::string_view::npos) line = line.substr(0, hash);
      handle(trim(line, 1), line_no);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    close_section();
    if (!have_vars_) throw ParseError("missing 'vars:' declaration", line_no, 1);
    return std::move(spec_);
  }

 private:
  [[noreturn]] static void fail(const std::string& msg, std::size_t line, std::size_t column) {
    throw ParseError(msg, line, column);
  }

  Polynomial expr(Span s, std::size_t line) const {
    if (s.text.empty()) fail("empty expression", line, s.column);
    return parse_expr(s.text, spec_.variables, line, s.column - 1);
  }

  void require_vars(std::size_t line) const {
    if (!have_vars_) fail("'vars:' must be declared before any other directive", line, 1);
  }

  void handle(Span line, std::size_t line_no) {
    if (line.text.empty()) return;
    const auto ws = words(line);
    const std::string_view head = ws.front().text;

    if (head.starts_with("vars")) {
      const auto colon = line.text.find(':');
      if (colon == std::string_view::npos || trim(line.text.substr(0, colon), 1).text != "vars") {
        fail("expected 'vars: <names>'", line_no, line.column);
      }
      close_section();
      declare_vars(trim(line.text.substr(colon + 1), line.column + colon + 1), line_no);
      return;
    }
    if (head == "param") {
      close_section();
      return declare_param(line, ws, line_no);
    }
    if (head == "tensor" || head == "matrix") {
      close_section();
      return open_section(ws, line_no, head == "matrix");
    }
    if (head == "obs") {
      close_section();
      return declare_obs(line, line_no);
    }
    if (head == "map") {
      close_section();
      return declare_map(line, line_no);
    }
    if (section_ && line.text.find(':') != std::string_view::npos) {
      return add_entry(line, line_no);
    }
    fail("unrecognized line '" + std::string(line.text) + "'", line_no, line.column);
  }

  void declare_vars(Span list, std::size_t line_no) {
    if (have_vars_) fail("duplicate 'vars:' declaration", line_no, list.column);
    std::vector<std::string> names;
    for (const auto& w : words(list)) {
      if (!is_identifier(w.text)) {
        fail("invalid variable name '" + std::string(w.text) + "'", line_no, w.column);
      }
      for (const auto& n : names) {
        if (n == w.text) fail("duplicate variable '" + n + "'", line_no, w.column);
      }
      names.emplace_back(w.text);
    }
    if (names.empty()) fail("empty variable list", line_no, list.column);
    spec_.variables = VariableTable(std::move(names));
    have_vars_ = true;
  }

  void declare_param(Span line, const std::vector<Span>& ws, std::size_t line_no) {
    require_vars(line_no);
    const auto eq = line.text.find('=');
    if (ws.size() < 2 || eq == std::string_view::npos) {
      fail("expected 'param <name> = <value>'", line_no, line.column);
    }
    const auto name = trim(line.text.substr(5, eq - 5), line.column + 5);
    if (!is_identifier(name.text)) {
      fail("invalid parameter name '" + std::string(name.text) + "'", line_no, name.column);
    }
    const std::string key(name.text);
    if (spec_.variables.index_of(key) != VariableTable::npos) {
      fail("parameter '" + key + "' clashes with a variable", line_no, name.column);
    }
    if (spec_.variables.has_param(key)) {
      fail("duplicate parameter '" + key + "'", line_no, name.column);
    }
    const auto rhs = trim(line.text.substr(eq + 1), line.column + eq + 1);
    const auto value = expr(rhs, line_no).constant_value();
    if (!value) fail("parameter value must be a constant", line_no, rhs.column);
    spec_.variables.bind(key, *value);
  }

  void open_section(const std::vector<Span>& ws, std::size_t line_no, bool is_matrix) {
    require_vars(line_no);
    const auto n = spec_.dimension();
    std::size_t rank = 2;
    if (is_matrix) {
      if (ws.size() != 2) fail("expected 'matrix <name>'", line_no, ws.front().column);
    } else {
      if (ws.size() != 4 || ws[2].text != "rank") {
        fail("expected 'tensor <name> rank <r>'", line_no, ws.front().column);
      }
      const std::string r(ws[3].text);
      if (r.empty() || r.size() > 3 || !std::all_of(r.begin(), r.end(), ::isdigit)) {
        fail("tensor rank must be a positive integer", line_no, ws[3].column);
      }
      rank = std::stoul(r);
      if (rank < 2 || rank > n) {
        fail("tensor rank " + r + " must satisfy 2 <= rank <= " + std::to_string(n), line_no,
             ws[3].column);
      }
    }
    const std::string name(ws[1].text);
    if (!is_identifier(name)) fail("invalid name '" + name + "'", line_no, ws[1].column);
    const auto& existing = is_matrix ? spec_.matrices : spec_.tensors;
    if (existing.count(name)) {
      fail(std::string("duplicate ") + (is_matrix ? "matrix" : "tensor") + " '" + name + "'",
           line_no, ws[1].column);
    }
    section_.emplace(PendingSection{name, is_matrix, line_no, TensorBuilder(n, rank)});
    section_rank_ = rank;
  }

  void add_entry(Span line, std::size_t line_no) {
    const auto colon = line.text.find(':');
    const auto lhs = trim(line.text.substr(0, colon), line.column);
    const auto rhs = trim(line.text.substr(colon + 1), line.column + colon + 1);
    IndexTuple idx;
    for (const auto& w : words(lhs)) {
      const std::string t(w.text);
      if (t.empty() || t.size() > 6 || !std::all_of(t.begin(), t.end(), ::isdigit)) {
        fail("index '" + t + "' is not a positive integer", line_no, w.column);
      }
      const auto i = std::stoul(t);
      if (i < 1 || i > spec_.dimension()) {
        fail("index " + t + " out of range 1.." + std::to_string(spec_.dimension()), line_no,
             w.column);
      }
      idx.push_back(i - 1);
    }
    if (idx.size() != section_rank_) {
      fail("entry has " + std::to_string(idx.size()) + " indices, expected " +
               std::to_string(section_rank_),
           line_no, lhs.column);
    }
    const Polynomial value = expr(rhs, line_no);
    try {
      section_->builder.set(idx, value);
    } catch (const TensorError& e) {
      fail(e.what(), line_no, lhs.column);
    }
  }

  void close_section() {
    if (!section_) return;
    auto& target = section_->is_matrix ? spec_.matrices : spec_.tensors;
    target.emplace(section_->name, section_->builder.build());
    section_.reset();
  }

  void declare_obs(Span line, std::size_t line_no) {
    require_vars(line_no);
    const auto eq = line.text.find('=');
    if (eq == std::string_view::npos) fail("expected 'obs <name> = <expr>'", line_no, line.column);
    const auto name = trim(line.text.substr(3, eq - 3), line.column + 3);
    if (!is_identifier(name.text)) {
      fail("invalid observable name '" + std::string(name.text) + "'", line_no, name.column);
    }
    const std::string key(name.text);
    if (spec_.observables.count(key)) {
      fail("duplicate observable '" + key + "'", line_no, name.column);
    }
    spec_.observables.emplace(key, expr(trim(line.text.substr(eq + 1), line.column + eq + 1), line_no));
  }

  void declare_map(Span line, std::size_t line_no) {
    require_vars(line_no);
    static const std::regex pattern(
        R"(^map\s+([A-Za-z][A-Za-z0-9_]*)\s+forward\s*=(.*)\binverse\s*=(.*)$)");
    const std::string text(line.text);
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) {
      fail("expected 'map <name> forward = <exprs> inverse = <exprs>'", line_no, line.column);
    }
    const std::string name = m[1].str();
    if (spec_.maps.count(name)) fail("duplicate map '" + name + "'", line_no, line.column);

    const auto n = spec_.dimension();
    auto component_list = [&](int group, const VariableTable& table) {
      const Span s{std::string_view(line.text).substr(m.position(group), m.length(group)),
                   line.column + static_cast<std::size_t>(m.position(group))};
      const auto parts = split(s, ',');
      if (parts.size() != n) {
        fail("map component count " + std::to_string(parts.size()) + " does not match dimension " +
                 std::to_string(n),
             line_no, s.column);
      }
      std::vector<Polynomial> out;
      for (const auto& p : parts) {
        if (p.text.empty()) fail("empty map component", line_no, p.column);
        out.push_back(parse_expr(p.text, table, line_no, p.column - 1));
      }
      return out;
    };

    VariableTable targets;
    try {
      targets = spec_.variables.with_names(target_names(n));
    } catch (const std::invalid_argument& e) {
      fail(std::string("cannot declare target variables: ") + e.what(), line_no, line.column);
    }
    auto forward = component_list(2, spec_.variables);
    auto inverse = component_list(3, targets);
    try {
      spec_.maps.emplace(name, CoordinateMap::validate(std::move(forward), std::move(inverse)));
    } catch (const MapError& e) {
      fail("invalid inverse map '" + name + "': " + e.what(), line_no, line.column);
    }
  }

  SystemSpec spec_;
  bool have_vars_ = false;
  std::optional<PendingSection> section_;
  std::size_t section_rank_ = 0;
};

std::string tuple_line(const IndexTuple& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(idx[i] + 1);
  }
  return s;
}

std::string entries_text(const AntisymTensor& t, std::span<const std::string> names) {
  std::string out;
  for (const auto& [idx, value] : t.entries()) {
    out += tuple_line(idx) + " : " + render(value, names) + "\n";
  }
  return out;
}

}  // namespace

SystemSpec parse_system(std::string_view contents) { return SystemParser().run(contents); }

SystemSpec load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open system file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

std::vector<std::string> target_names(std::size_t dimension) {
  return default_names(dimension, "x");
}

std::string render_tensor_section(const std::string& name, const AntisymTensor& tensor,
                                  std::span<const std::string> names) {
  return "tensor " + name + " rank " + std::to_string(tensor.rank()) + "\n" +
         entries_text(tensor, names);
}

std::string render_matrix_section(const std::string& name, const AntisymTensor& matrix,
                                  std::span<const std::string> names) {
  if (matrix.rank() != 2) throw TensorError("render_matrix_section: rank must be 2");
  return "matrix " + name + "\n" + entries_text(matrix, names);
}

std::string render_object_file(const std::string& name, const AntisymTensor& tensor,
                               std::span<const std::string> names) {
  std::string out = "vars:";
  for (const auto& n : names) out += " " + n;
  out += "\n";
  out += tensor.rank() == 2 ? render_matrix_section(name, tensor, names)
                            : render_tensor_section(name, tensor, names);
  return out;
}

}  // namespace nambu
