// Copyright 2026 The Antistall Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/mps.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace antistall {

namespace {

enum class Section { kNone, kName, kObjSense, kRows, kColumns, kRhs, kRanges, kBounds, kEnd };

struct Line {
  int number = 0;
  std::string text;
  bool header = false;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_number(const std::string& s) {
  try {
    parse_rational(s);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// Fixed-format fields 1..6 (columns 2-3, 5-12, 15-22, 25-36, 40-47, 50-61).
std::vector<std::string> fixed_fields(const std::string& text) {
  static constexpr std::pair<std::size_t, std::size_t> kSpans[] = {{1, 2}, {4, 8}, {14, 8}, {24, 12}, {39, 8}, {49, 12}};
  std::vector<std::string> out;
  for (auto [start, len] : kSpans) {
    out.push_back(start < text.size() ? trim(std::string_view(text).substr(start, len)) : std::string());
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

std::optional<Section> section_of(const std::string& word) {
  if (word == "NAME") return Section::kName;
  if (word == "OBJSENSE") return Section::kObjSense;
  if (word == "ROWS") return Section::kRows;
  if (word == "COLUMNS") return Section::kColumns;
  if (word == "RHS") return Section::kRhs;
  if (word == "RANGES") return Section::kRanges;
  if (word == "BOUNDS") return Section::kBounds;
  if (word == "ENDATA") return Section::kEnd;
  return std::nullopt;
}

struct RowData {
  std::string name;
  char type = 'E';
  Rational rhs = 0;
  std::optional<Rational> range;
};

class Parser {
 public:
  Parser(std::string_view text, std::vector<MpsWarning>* warnings) : warnings_(warnings) { split(text); }

  GeneralLP run();

 private:
  void split(std::string_view text);
  void detect_format();
  std::vector<std::string> fields(const Line& line, Section s) const;
  Rational number(const std::string& s, int line) const;
  void warn(int line, std::string msg) {
    if (warnings_) warnings_->push_back({line, std::move(msg)});
  }

  void rows_line(const Line& l);
  void columns_line(const Line& l);
  void rhs_line(const Line& l, bool ranges);
  void bounds_line(const Line& l);
  int column_index(const std::string& name, int line) const;

  std::vector<Line> lines_;
  std::vector<MpsWarning>* warnings_;
  bool free_format_ = true;

  GeneralLP gp_;
  std::string objective_;
  std::vector<RowData> rows_;
  std::unordered_map<std::string, int> row_index_;  // -1 objective, -2 dropped N row
  std::unordered_map<std::string, int> col_index_;
  std::map<std::pair<int, int>, Rational> entries_;
  std::vector<bool> explicit_lower_;
};

void Parser::split(std::string_view text) {
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string raw(text.substr(pos, end - pos));
    ++number;
    pos = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (trim(raw).empty() || raw.front() == '*') {
      if (end == text.size()) break;
      continue;
    }
    Line l;
    l.number = number;
    l.header = !std::isspace(static_cast<unsigned char>(raw.front()));
    l.text = std::move(raw);
    lines_.push_back(std::move(l));
    if (end == text.size()) break;
  }
}

void Parser::detect_format() {
  bool in_columns = false;
  for (const Line& l : lines_) {
    if (l.header) {
      in_columns = tokenize(l.text).front() == "COLUMNS";
      continue;
    }
    if (!in_columns) continue;
    const auto t = tokenize(l.text);
    free_format_ = (t.size() == 3 && is_number(t[2])) || (t.size() == 5 && is_number(t[2]) && is_number(t[4]));
    return;
  }
}

std::vector<std::string> Parser::fields(const Line& line, Section s) const {
  if (free_format_) return tokenize(line.text);
  std::vector<std::string> f = fixed_fields(line.text);
  // Drop the empty indicator field where the section has none.
  if ((s == Section::kColumns || s == Section::kRhs || s == Section::kRanges) && !f.empty() && f[0].empty()) {
    f.erase(f.begin());
    if ((s == Section::kRhs || s == Section::kRanges) && !f.empty() && f[0].empty()) f.erase(f.begin());
  }
  return f;
}

Rational Parser::number(const std::string& s, int line) const {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw MpsError(line, "malformed number '" + s + "'");
  }
}

void Parser::rows_line(const Line& l) {
  const auto f = fields(l, Section::kRows);
  if (f.size() != 2) throw MpsError(l.number, "ROWS entry needs a type and a name");
  const std::string& type = f[0];
  const std::string& name = f[1];
  if (row_index_.count(name)) throw MpsError(l.number, "duplicate row '" + name + "'");
  if (type == "N") {
    if (objective_.empty()) {
      objective_ = name;
      row_index_[name] = -1;
    } else {
      warn(l.number, "extra objective row '" + name + "' dropped");
      row_index_[name] = -2;
    }
    return;
  }
  if (type != "L" && type != "G" && type != "E") throw MpsError(l.number, "unknown row type '" + type + "'");
  row_index_[name] = static_cast<int>(rows_.size());
  rows_.push_back({name, type[0], Rational(0), std::nullopt});
}

int Parser::column_index(const std::string& name, int line) const {
  auto it = col_index_.find(name);
  if (it == col_index_.end()) throw MpsError(line, "unknown column '" + name + "'");
  return it->second;
}

void Parser::columns_line(const Line& l) {
  if (l.text.find("MARKER") != std::string::npos) throw MpsError(l.number, "integer MARKER lines are not supported");
  const auto f = fields(l, Section::kColumns);
  if (f.size() != 3 && f.size() != 5) throw MpsError(l.number, "COLUMNS entry needs a column and one or two row/value pairs");
  const std::string& col = f[0];
  auto [it, inserted] = col_index_.emplace(col, gp_.num_cols());
  if (inserted) {
    gp_.add_column(col, Rational(0));
    explicit_lower_.push_back(false);
  }
  const int j = it->second;
  for (std::size_t k = 1; k + 1 < f.size(); k += 2) {
    auto r = row_index_.find(f[k]);
    if (r == row_index_.end()) throw MpsError(l.number, "column '" + col + "' references undeclared row '" + f[k] + "'");
    const Rational v = number(f[k + 1], l.number);
    if (!entries_.emplace(std::make_pair(r->second, j), v).second) {
      throw MpsError(l.number, "duplicate entry for column '" + col + "' in row '" + f[k] + "'");
    }
  }
}

void Parser::rhs_line(const Line& l, bool ranges) {
  auto f = fields(l, ranges ? Section::kRanges : Section::kRhs);
  // A set name is present when the count is odd.
  if (f.size() == 3 || f.size() == 5) f.erase(f.begin());
  if (f.size() != 2 && f.size() != 4) throw MpsError(l.number, std::string(ranges ? "RANGES" : "RHS") + " entry is malformed");
  for (std::size_t k = 0; k + 1 < f.size(); k += 2) {
    auto r = row_index_.find(f[k]);
    if (r == row_index_.end()) throw MpsError(l.number, "undeclared row '" + f[k] + "'");
    const Rational v = number(f[k + 1], l.number);
    if (r->second < 0) {
      warn(l.number, std::string(ranges ? "range" : "right-hand side") + " on objective row '" + f[k] + "' ignored");
      continue;
    }
    RowData& row = rows_[r->second];
    if (ranges) {
      if (row.range) throw MpsError(l.number, "duplicate range for row '" + f[k] + "'");
      row.range = v;
    } else {
      row.rhs = v;
    }
  }
}

void Parser::bounds_line(const Line& l) {
  auto f = fields(l, Section::kBounds);
  if (f.empty()) throw MpsError(l.number, "empty BOUNDS entry");
  const std::string type = f[0];
  const bool valued = type == "UP" || type == "LO" || type == "FX";
  const bool known = valued || type == "MI" || type == "PL" || type == "BV" || type == "FR";
  if (type == "LI" || type == "UI" || type == "SC") throw MpsError(l.number, "integer bound type " + type + " is not supported");
  if (!known) throw MpsError(l.number, "unknown bound type '" + type + "'");
  if (type == "FR") throw MpsError(l.number, "free variable unsupported (FR bound)");

  std::string col;
  std::optional<Rational> value;
  if (free_format_) {
    // type [set] column [value]
    if (valued) {
      if (f.size() == 4) {
        col = f[2];
        value = number(f[3], l.number);
      } else if (f.size() == 3) {
        col = f[1];
        value = number(f[2], l.number);
      } else {
        throw MpsError(l.number, "bound " + type + " needs a column and a value");
      }
    } else if (f.size() == 2) {
      col = f[1];
    } else if (f.size() == 3) {
      // "BV col value" or "MI set col"
      col = (type == "BV" && col_index_.count(f[1]) && is_number(f[2])) ? f[1] : f[2];
    } else if (f.size() == 4) {
      col = f[2];
    } else {
      throw MpsError(l.number, "bound " + type + " is malformed");
    }
  } else {
    if (f.size() < 3) throw MpsError(l.number, "bound " + type + " is malformed");
    col = f[2];
    if (valued) {
      if (f.size() < 4) throw MpsError(l.number, "bound " + type + " needs a value");
      value = number(f[3], l.number);
    }
  }

  const int j = column_index(col, l.number);
  if (type == "UP") {
    if (*value < 0 && !explicit_lower_[j] && gp_.lower[j] && *gp_.lower[j] == 0) {
      warn(l.number, "negative upper bound on '" + col + "' with default lower bound; lower set to -inf");
      gp_.lower[j] = std::nullopt;
    }
    gp_.upper[j] = *value;
  } else if (type == "LO") {
    gp_.lower[j] = *value;
    explicit_lower_[j] = true;
  } else if (type == "FX") {
    gp_.lower[j] = *value;
    gp_.upper[j] = *value;
    explicit_lower_[j] = true;
  } else if (type == "BV") {
    gp_.lower[j] = Rational(0);
    gp_.upper[j] = Rational(1);
    explicit_lower_[j] = true;
  } else if (type == "MI") {
    gp_.lower[j] = std::nullopt;
    explicit_lower_[j] = true;
  } else if (type == "PL") {
    gp_.upper[j] = std::nullopt;
  }
}

GeneralLP Parser::run() {
  detect_format();
  Section current = Section::kNone;
  bool seen_rows = false, seen_columns = false, ended = false;
  int last_line = 0;
  for (const Line& l : lines_) {
    last_line = l.number;
    if (ended) throw MpsError(l.number, "content after ENDATA");
    if (l.header) {
      const auto t = tokenize(l.text);
      const auto s = section_of(t.front());
      if (!s) throw MpsError(l.number, "unknown section '" + t.front() + "'");
      if (*s <= current) throw MpsError(l.number, "section " + t.front() + " out of order");
      current = *s;
      if (current == Section::kName) {
        gp_.name = t.size() > 1 ? trim(std::string_view(l.text).substr(4)) : std::string("LP");
      } else if (current == Section::kObjSense && t.size() > 1) {
        const std::string v = t[1];
        if (v == "MAX" || v == "MAXIMIZE") {
          gp_.sense = Sense::kMaximize;
        } else if (v != "MIN" && v != "MINIMIZE") {
          throw MpsError(l.number, "unknown objective sense '" + v + "'");
        }
      } else if (current == Section::kRows) {
        seen_rows = true;
      } else if (current == Section::kColumns) {
        if (!seen_rows) throw MpsError(l.number, "COLUMNS before ROWS");
        if (objective_.empty()) throw MpsError(l.number, "no objective (N) row declared");
        seen_columns = true;
      } else if (current == Section::kEnd) {
        ended = true;
      }
      continue;
    }
    switch (current) {
      case Section::kNone:
      case Section::kName:
        throw MpsError(l.number, "data line outside a section");
      case Section::kObjSense: {
        const std::string v = trim(l.text);
        if (v == "MAX" || v == "MAXIMIZE") {
          gp_.sense = Sense::kMaximize;
        } else if (v == "MIN" || v == "MINIMIZE") {
          gp_.sense = Sense::kMinimize;
        } else {
          throw MpsError(l.number, "unknown objective sense '" + v + "'");
        }
        break;
      }
      case Section::kRows: rows_line(l); break;
      case Section::kColumns: columns_line(l); break;
      case Section::kRhs: rhs_line(l, false); break;
      case Section::kRanges: rhs_line(l, true); break;
      case Section::kBounds: bounds_line(l); break;
      case Section::kEnd: break;
    }
  }
  if (!ended) throw MpsError(last_line + 1, "missing ENDATA");
  if (!seen_columns) throw MpsError(last_line, "missing COLUMNS section");
  if (gp_.num_cols() == 0) throw MpsError(last_line, "no columns");

  gp_.objective_name = objective_;
  for (const auto& [key, v] : entries_) {
    if (key.first == -1) gp_.cost[key.second] = v;
  }
  std::vector<std::vector<Rational>> coeffs(rows_.size(), std::vector<Rational>(gp_.num_cols(), Rational(0)));
  for (const auto& [key, v] : entries_) {
    if (key.first >= 0) coeffs[key.first][key.second] = v;
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const RowData& r = rows_[i];
    Relation rel = r.type == 'L' ? Relation::kLessEqual : r.type == 'G' ? Relation::kGreaterEqual : Relation::kEqual;
    if (!r.range) {
      gp_.add_row(r.name, coeffs[i], rel, r.rhs);
      continue;
    }
    const Rational w = abs(*r.range);
    Rational lo, hi;
    if (r.type == 'E') {
      lo = *r.range >= 0 ? r.rhs : Rational(r.rhs - w);
      hi = *r.range >= 0 ? Rational(r.rhs + w) : r.rhs;
    } else if (r.type == 'L') {
      lo = r.rhs - w;
      hi = r.rhs;
    } else {
      lo = r.rhs;
      hi = r.rhs + w;
    }
    // Keep the declared side on the original row.
    if (r.type == 'L' || (r.type == 'E' && *r.range < 0)) {
      gp_.add_row(r.name, coeffs[i], Relation::kLessEqual, hi);
      gp_.add_row(r.name + "_rng", coeffs[i], Relation::kGreaterEqual, lo);
    } else {
      gp_.add_row(r.name, coeffs[i], Relation::kGreaterEqual, lo);
      gp_.add_row(r.name + "_rng", coeffs[i], Relation::kLessEqual, hi);
    }
  }
  try {
    validate_general(gp_);
  } catch (const ModelError& e) {
    throw MpsError(last_line, e.what());
  }
  return std::move(gp_);
}

std::string sanitize(const std::string& name) {
  std::string s = name.empty() ? std::string("_") : name;
  for (char& ch : s)
    if (std::isspace(static_cast<unsigned char>(ch))) ch = '_';
  return s;
}

std::string format_number(const Rational& v) {
  std::string s = to_decimal_string(v);
  try {
    if (parse_rational(s) == v) return s;
  } catch (const std::exception&) {
  }
  return v.get_str();
}

}  // namespace

GeneralLP parse_mps(std::string_view text, std::vector<MpsWarning>* warnings) {
  Parser p(text, warnings);
  return p.run();
}

GeneralLP read_mps_file(const std::string& path, std::vector<MpsWarning>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MpsError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_mps(ss.str(), warnings);
}

std::string write_mps(const GeneralLP& gp) {
  validate_general(gp);
  std::ostringstream out;
  out << "NAME " << sanitize(gp.name) << "\n";
  if (gp.sense == Sense::kMaximize) out << "OBJSENSE\n    MAX\n";
  const std::string obj = sanitize(gp.objective_name);
  out << "ROWS\n N  " << obj << "\n";
  for (const auto& r : gp.rows) {
    const char* t = r.relation == Relation::kLessEqual ? "L" : r.relation == Relation::kGreaterEqual ? "G" : "E";
    out << " " << t << "  " << sanitize(r.name) << "\n";
  }
  out << "COLUMNS\n";
  for (int j = 0; j < gp.num_cols(); ++j) {
    const std::string col = sanitize(gp.column_names[j]);
    bool any = false;
    for (const auto& r : gp.rows) any = any || r.coeffs[j] != 0;
    if (gp.cost[j] != 0 || !any) out << "    " << col << "  " << obj << "  " << format_number(gp.cost[j]) << "\n";
    for (const auto& r : gp.rows) {
      if (r.coeffs[j] == 0) continue;
      out << "    " << col << "  " << sanitize(r.name) << "  " << format_number(r.coeffs[j]) << "\n";
    }
  }
  bool rhs_header = false;
  for (const auto& r : gp.rows) {
    if (r.rhs == 0) continue;
    if (!rhs_header) out << "RHS\n";
    rhs_header = true;
    out << "    RHS  " << sanitize(r.name) << "  " << format_number(r.rhs) << "\n";
  }
  std::ostringstream bounds;
  for (int j = 0; j < gp.num_cols(); ++j) {
    const std::string col = sanitize(gp.column_names[j]);
    const auto& lo = gp.lower[j];
    const auto& up = gp.upper[j];
    if (lo && up && *lo == *up) {
      bounds << " FX BND  " << col << "  " << format_number(*lo) << "\n";
      continue;
    }
    if (!lo && !up) {
      bounds << " FR BND  " << col << "\n";
      continue;
    }
    if (!lo) {
      bounds << " MI BND  " << col << "\n";
    } else if (*lo != 0) {
      bounds << " LO BND  " << col << "  " << format_number(*lo) << "\n";
    }
    if (up) bounds << " UP BND  " << col << "  " << format_number(*up) << "\n";
  }
  if (!bounds.str().empty()) out << "BOUNDS\n" << bounds.str();
  out << "ENDATA\n";
  return out.str();
}

}  // namespace antistall
