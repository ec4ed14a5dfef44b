#include "ngc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace ngc {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(line == 0 ? what
                                   : "line " + std::to_string(line) +
                                         (column == 0 ? "" : ", column " + std::to_string(column)) +
                                         ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

struct Line {
  std::string_view text;
  std::size_t number = 0;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t start = 0;
  std::size_t number = 1;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back({text.substr(start), number});
      break;
    }
    lines.push_back({text.substr(start, end - start), number});
    start = end + 1;
    ++number;
  }
  return lines;
}

// Fields separated by exactly one space; no leading or trailing blanks.
std::vector<Token> strict_fields(const Line& line) {
  std::vector<Token> out;
  if (auto cr = line.text.find('\r'); cr != std::string_view::npos) {
    throw ParseError(line.number, cr + 1, "carriage return not allowed (LF line endings only)");
  }
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = line.text.find(' ', start);
    const std::string_view field = line.text.substr(start, end == std::string_view::npos
                                                               ? std::string_view::npos
                                                               : end - start);
    if (field.empty()) throw ParseError(line.number, start + 1, "expected a single space between fields");
    out.push_back({field, start + 1});
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

// Whitespace-separated fields, any amount of blanks or tabs.
std::vector<Token> loose_fields(const Line& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; };
  while (i < line.text.size()) {
    while (i < line.text.size() && blank(line.text[i])) ++i;
    const std::size_t start = i;
    while (i < line.text.size() && !blank(line.text[i])) ++i;
    if (i > start) out.push_back({line.text.substr(start, i - start), start + 1});
  }
  return out;
}

long long parse_integer(const Token& token, std::size_t line, const char* what) {
  long long value = 0;
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, token.column,
                     std::string("expected an integer for ") + what + ", got '" +
                         std::string(token.text) + "'");
  }
  return value;
}

int parse_positive(const Token& token, std::size_t line, const char* what) {
  const long long value = parse_integer(token, line, what);
  if (value < 1 || value > 1'000'000'000) {
    throw ParseError(line, token.column,
                     std::string(what) + " must be a positive integer, got " + std::to_string(value));
  }
  return static_cast<int>(value);
}

double parse_real(const Token& token, std::size_t line, const char* what) {
  if (token.text == "inf") return HUGE_VAL;
  if (token.text == "-inf") return -HUGE_VAL;
  double value = 0.0;
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, token.column,
                     std::string("expected a number for ") + what + ", got '" +
                         std::string(token.text) + "'");
  }
  return value;
}

void expect_count(const std::vector<Token>& fields, const Line& line, std::size_t count,
                  const std::string& what) {
  if (fields.size() != count) {
    const std::size_t col = fields.size() > count ? fields[count].column : line.text.size() + 1;
    throw ParseError(line.number, col,
                     what + ": expected " + std::to_string(count) + " fields, found " +
                         std::to_string(fields.size()));
  }
}

void expect_keyword(const std::vector<Token>& fields, const Line& line, std::string_view keyword) {
  if (fields.empty() || fields[0].text != keyword) {
    throw ParseError(line.number, 1, "expected '" + std::string(keyword) + "'");
  }
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------- canonical

Instance parse_canonical(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() < 3) {
    throw ParseError(lines.size() + 1, 1, "unexpected end of input (need name, stock and pieces lines)");
  }

  Instance instance;
  {
    const Line& line = lines[0];
    if (line.text.find('\r') != std::string_view::npos) {
      throw ParseError(line.number, line.text.find('\r') + 1, "carriage return not allowed");
    }
    if (!line.text.starts_with("name ") || line.text.size() == 5) {
      throw ParseError(line.number, 1, "expected 'name <text>'");
    }
    instance.name = std::string(line.text.substr(5));
  }
  {
    const auto fields = strict_fields(lines[1]);
    expect_keyword(fields, lines[1], "stock");
    expect_count(fields, lines[1], 3, "stock line");
    instance.stock_length = parse_positive(fields[1], lines[1].number, "stock length");
    instance.stock_width = parse_positive(fields[2], lines[1].number, "stock width");
  }
  std::size_t m = 0;
  {
    const auto fields = strict_fields(lines[2]);
    expect_keyword(fields, lines[2], "pieces");
    expect_count(fields, lines[2], 2, "pieces line");
    const long long count = parse_integer(fields[1], lines[2].number, "piece count");
    if (count < 1) throw ParseError(lines[2].number, fields[1].column, "piece count must be at least 1");
    m = static_cast<std::size_t>(count);
  }
  if (lines.size() < 3 + m) {
    throw ParseError(lines.size() + 1, 1,
                     "expected " + std::to_string(m) + " piece lines, found " +
                         std::to_string(lines.size() - 3));
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Line& line = lines[3 + i];
    const auto fields = strict_fields(line);
    expect_count(fields, line, 4, "piece line");
    Piece piece;
    piece.length = parse_positive(fields[0], line.number, "piece length");
    piece.width = parse_positive(fields[1], line.number, "piece width");
    piece.value = parse_positive(fields[2], line.number, "piece value");
    piece.max_count = parse_positive(fields[3], line.number, "piece max_count");
    instance.pieces.push_back(piece);
  }
  if (lines.size() > 3 + m) {
    throw ParseError(lines[3 + m].number, 1, "trailing data after the last piece line");
  }
  return instance;
}

std::string write_canonical(const Instance& instance) {
  std::ostringstream out;
  out << "name " << instance.name << '\n';
  out << "stock " << instance.stock_length << ' ' << instance.stock_width << '\n';
  out << "pieces " << instance.pieces.size() << '\n';
  for (const Piece& p : instance.pieces) {
    out << p.length << ' ' << p.width << ' ' << p.value << ' ' << p.max_count << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------- OR-Library

NgcutLayout NgcutLayout::parse(std::string_view spec) {
  static const std::map<std::string, NgcutField, std::less<>> names{
      {"length", NgcutField::length},       {"l", NgcutField::length},
      {"width", NgcutField::width},         {"w", NgcutField::width},
      {"value", NgcutField::value},         {"v", NgcutField::value},
      {"max_count", NgcutField::max_count}, {"max", NgcutField::max_count},
      {"b", NgcutField::max_count},         {"min_count", NgcutField::min_count},
      {"min", NgcutField::min_count},       {"skip", NgcutField::skip}};
  NgcutLayout layout;
  layout.fields.clear();
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t end = spec.find(',', start);
    if (end == std::string_view::npos) end = spec.size();
    const std::string_view name = spec.substr(start, end - start);
    auto it = names.find(name);
    if (it == names.end()) {
      throw std::invalid_argument("unknown column name '" + std::string(name) + "'");
    }
    const NgcutField field = it->second;
    if (field != NgcutField::skip &&
        std::find(layout.fields.begin(), layout.fields.end(), field) != layout.fields.end()) {
      throw std::invalid_argument("column '" + std::string(name) + "' given twice");
    }
    layout.fields.push_back(field);
    start = end + 1;
  }
  for (NgcutField required : {NgcutField::length, NgcutField::width, NgcutField::value}) {
    if (std::find(layout.fields.begin(), layout.fields.end(), required) == layout.fields.end()) {
      throw std::invalid_argument("column order must include length, width and value");
    }
  }
  return layout;
}

std::string NgcutLayout::to_string() const {
  std::string out;
  for (NgcutField f : fields) {
    if (!out.empty()) out += ',';
    switch (f) {
      case NgcutField::length: out += "length"; break;
      case NgcutField::width: out += "width"; break;
      case NgcutField::value: out += "value"; break;
      case NgcutField::max_count: out += "max_count"; break;
      case NgcutField::min_count: out += "min_count"; break;
      case NgcutField::skip: out += "skip"; break;
    }
  }
  return out;
}

std::vector<Instance> parse_ngcut(std::string_view text, const NgcutLayout& layout,
                                  const std::string& name_prefix) {
  struct Row {
    Line line;
    std::vector<Token> fields;
  };
  std::vector<Row> rows;
  for (const Line& line : split_lines(text)) {
    auto fields = loose_fields(line);
    if (!fields.empty()) rows.push_back({line, std::move(fields)});
  }
  if (rows.empty()) throw ParseError(0, 0, "empty cutting file");

  std::size_t cursor = 0;
  std::size_t problems = 1;
  const bool has_count = rows.size() >= 2 && rows[0].fields.size() == 1 && rows[1].fields.size() == 1;
  if (has_count) {
    const long long count = parse_integer(rows[0].fields[0], rows[0].line.number, "problem count");
    if (count < 1) throw ParseError(rows[0].line.number, 1, "problem count must be at least 1");
    problems = static_cast<std::size_t>(count);
    cursor = 1;
  }

  std::vector<Instance> out;
  for (std::size_t k = 1; k <= problems; ++k) {
    const std::string where = "problem " + std::to_string(k);
    auto need = [&](const std::string& what) -> const Row& {
      if (cursor >= rows.size()) {
        throw ParseError(0, 0, where + ": unexpected end of input, expected " + what);
      }
      return rows[cursor++];
    };
    auto fail = [&](const Row& row, const Token* token, const std::string& what) {
      throw ParseError(row.line.number, token ? token->column : 1, where + ": " + what);
    };

    Instance instance;
    instance.name = name_prefix + std::to_string(k);

    const Row& head = need("the piece count");
    if (head.fields.size() != 1) fail(head, nullptr, "expected the piece count alone on a line");
    const long long m = parse_integer(head.fields[0], head.line.number, "piece count");
    if (m < 1) fail(head, &head.fields[0], "piece count must be at least 1");

    const Row& stock = need("the stock dimensions");
    if (stock.fields.size() != 2) {
      fail(stock, nullptr, "expected 'L W', found " + std::to_string(stock.fields.size()) + " fields");
    }
    try {
      instance.stock_length = parse_positive(stock.fields[0], stock.line.number, "stock length");
      instance.stock_width = parse_positive(stock.fields[1], stock.line.number, "stock width");
    } catch (const ParseError& e) {
      throw ParseError(e.line(), e.column(), where + ": " + e.what());
    }

    for (long long i = 1; i <= m; ++i) {
      if (cursor >= rows.size()) {
        throw ParseError(0, 0, where + ": declared " + std::to_string(m) + " pieces, found " +
                                   std::to_string(i - 1));
      }
      const Row& row = rows[cursor++];
      if (row.fields.size() != layout.fields.size()) {
        fail(row, nullptr,
             "piece " + std::to_string(i) + ": expected " + std::to_string(layout.fields.size()) +
                 " fields, found " + std::to_string(row.fields.size()) + " (declared m = " +
                 std::to_string(m) + ")");
      }
      Piece piece;
      piece.max_count = 1;  // layouts without an availability column
      for (std::size_t c = 0; c < layout.fields.size(); ++c) {
        const Token& token = row.fields[c];
        try {
          switch (layout.fields[c]) {
            case NgcutField::length: piece.length = parse_positive(token, row.line.number, "length"); break;
            case NgcutField::width: piece.width = parse_positive(token, row.line.number, "width"); break;
            case NgcutField::value: piece.value = parse_positive(token, row.line.number, "value"); break;
            case NgcutField::max_count:
              piece.max_count = parse_positive(token, row.line.number, "max_count");
              break;
            case NgcutField::min_count:
              if (parse_integer(token, row.line.number, "min_count") < 0) {
                fail(row, &token, "negative min_count");
              }
              break;
            case NgcutField::skip: break;
          }
        } catch (const ParseError& e) {
          throw ParseError(e.line(), e.column(), where + ": " + e.what());
        }
      }
      instance.pieces.push_back(piece);
    }
    out.push_back(std::move(instance));
  }
  if (cursor < rows.size()) {
    throw ParseError(rows[cursor].line.number, 1,
                     "trailing data after " + std::to_string(problems) + " problem(s)");
  }
  return out;
}

// ---------------------------------------------------------------- geometry

FeasibilityReport feasibility_check(const Instance& instance,
                                    std::span<const Placement> placements) {
  FeasibilityReport report;
  std::vector<bool> valid(placements.size(), false);
  std::vector<long long> counts(instance.pieces.size(), 0);

  for (std::size_t k = 0; k < placements.size(); ++k) {
    const Placement& pl = placements[k];
    if (pl.piece >= instance.pieces.size()) {
      report.violations.push_back({ViolationKind::bad_piece, k, 0, 0, 0,
                                   "placement " + std::to_string(k) + ": no piece " +
                                       std::to_string(pl.piece + 1)});
      continue;
    }
    const Piece& piece = instance.pieces[pl.piece];
    ++counts[pl.piece];
    if (pl.x < 0 || pl.y < 0 || pl.x + piece.length > instance.stock_length ||
        pl.y + piece.width > instance.stock_width) {
      std::ostringstream msg;
      msg << "placement " << k << ": piece " << pl.piece + 1 << " at (" << pl.x << ", " << pl.y
          << ") leaves the stock";
      report.violations.push_back({ViolationKind::out_of_bounds, k, 0, 0, 0, msg.str()});
    }
    valid[k] = true;
  }

  for (std::size_t a = 0; a < placements.size(); ++a) {
    if (!valid[a]) continue;
    const Placement& pa = placements[a];
    const Piece& ra = instance.pieces[pa.piece];
    for (std::size_t b = a + 1; b < placements.size(); ++b) {
      if (!valid[b]) continue;
      const Placement& pb = placements[b];
      const Piece& rb = instance.pieces[pb.piece];
      const int x_lo = std::max(pa.x, pb.x);
      const int x_hi = std::min(pa.x + ra.length, pb.x + rb.length);
      const int y_lo = std::max(pa.y, pb.y);
      const int y_hi = std::min(pa.y + ra.width, pb.y + rb.width);
      if (x_lo < x_hi && y_lo < y_hi) {
        std::ostringstream msg;
        msg << "placements " << a << " and " << b << " overlap at cell (" << x_lo << ", " << y_lo << ")";
        report.violations.push_back({ViolationKind::overlap, a, b, x_lo, y_lo, msg.str()});
      }
    }
  }

  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > instance.pieces[i].max_count) {
      std::ostringstream msg;
      msg << "piece " << i + 1 << " cut " << counts[i] << " times, only " << instance.pieces[i].max_count
          << " available";
      report.violations.push_back({ViolationKind::availability, i, 0, 0, 0, msg.str()});
    }
  }
  return report;
}

long long placements_value(const Instance& instance, std::span<const Placement> placements) {
  long long total = 0;
  for (const Placement& p : placements) total += instance.pieces.at(p.piece).value;
  return total;
}

char piece_glyph(std::size_t piece) {
  static constexpr std::string_view glyphs =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
  return piece < glyphs.size() ? glyphs[piece] : '#';
}

namespace {

void require_feasible(const Instance& instance, std::span<const Placement> placements) {
  const auto report = feasibility_check(instance, placements);
  if (!report.ok()) {
    throw std::invalid_argument("cannot render infeasible pattern: " + report.violations.front().message);
  }
}

}  // namespace

std::string render_ascii(const Instance& instance, std::span<const Placement> placements) {
  require_feasible(instance, placements);
  const auto L = static_cast<std::size_t>(instance.stock_length);
  const auto W = static_cast<std::size_t>(instance.stock_width);
  std::vector<std::string> grid(W, std::string(L, '.'));
  for (const Placement& p : placements) {
    const Piece& piece = instance.pieces[p.piece];
    for (int y = p.y; y < p.y + piece.width; ++y) {
      for (int x = p.x; x < p.x + piece.length; ++x) {
        grid[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = piece_glyph(p.piece);
      }
    }
  }
  std::string out;
  out.reserve(W * (L + 1));
  for (std::size_t row = W; row-- > 0;) {
    out += grid[row];
    out += '\n';
  }
  return out;
}

std::string render_svg(const Instance& instance, std::span<const Placement> placements,
                       const SvgOptions& options) {
  require_feasible(instance, placements);
  if (!(options.scale > 0.0)) throw std::invalid_argument("svg scale must be positive");
  const double s = options.scale;
  const double width = instance.stock_length * s;
  const double height = instance.stock_width * s;
  const double margin = 2.0;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(width + 2 * margin)
      << "\" height=\"" << format_double(height + 2 * margin) << "\" viewBox=\""
      << format_double(-margin) << ' ' << format_double(-margin) << ' '
      << format_double(width + 2 * margin) << ' ' << format_double(height + 2 * margin) << "\">\n";
  out << "  <title>" << xml_escape(instance.name) << "</title>\n";
  out << "  <rect class=\"stock\" x=\"0\" y=\"0\" width=\"" << format_double(width) << "\" height=\""
      << format_double(height) << "\" fill=\"#f4f4f4\" stroke=\"#000\" stroke-width=\"2\"/>\n";
  for (const Placement& p : placements) {
    const Piece& piece = instance.pieces[p.piece];
    const double px = p.x * s;
    // SVG y grows downwards; keep y = 0 at the bottom edge of the stock.
    const double py = (instance.stock_width - p.y - piece.width) * s;
    const double pw = piece.length * s;
    const double ph = piece.width * s;
    const int hue = static_cast<int>((p.piece * 47) % 360);
    out << "  <g class=\"piece\" data-piece=\"" << p.piece + 1 << "\" data-value=\"" << piece.value
        << "\">\n";
    out << "    <rect x=\"" << format_double(px) << "\" y=\"" << format_double(py) << "\" width=\""
        << format_double(pw) << "\" height=\"" << format_double(ph) << "\" fill=\"hsl(" << hue
        << ",60%,70%)\" stroke=\"#000\" stroke-width=\"1\"/>\n";
    if (options.labels) {
      out << "    <text x=\"" << format_double(px + pw / 2) << "\" y=\"" << format_double(py + ph / 2)
          << "\" font-size=\"" << format_double(std::max(8.0, s * 0.6))
          << "\" text-anchor=\"middle\" dominant-baseline=\"central\">" << p.piece + 1 << ':'
          << piece.value << "</text>\n";
    }
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

// ---------------------------------------------------------------- solutions

std::string write_solution(const SolutionRecord& record) {
  std::ostringstream out;
  out << "instance " << record.instance << '\n';
  out << "algorithm " << record.algorithm << '\n';
  out << "total_value " << record.total_value << '\n';
  out << "t " << format_double(record.t) << '\n';
  out << "u " << format_double(record.u) << '\n';
  out << "epsilon " << format_double(record.epsilon) << '\n';
  out << "init " << record.init << '\n';
  out << "iterations " << record.iterations << '\n';
  out << "wall_time " << format_double(record.wall_time) << '\n';
  out << "placements " << record.placements.size() << '\n';
  for (const Placement& p : record.placements) {
    out << p.piece + 1 << ' ' << p.x << ' ' << p.y << '\n';
  }
  out << "end\n";
  return out.str();
}

SolutionRecord read_solution(std::string_view text) {
  static const std::set<std::string, std::less<>> keys{
      "instance", "algorithm", "total_value", "t", "u", "epsilon", "init", "iterations", "wall_time"};
  const auto lines = split_lines(text);
  SolutionRecord record;
  std::set<std::string, std::less<>> seen;
  std::size_t i = 0;
  bool have_placements = false;

  for (; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.text.find('\r') != std::string_view::npos) {
      throw ParseError(line.number, line.text.find('\r') + 1, "carriage return not allowed");
    }
    const std::size_t space = line.text.find(' ');
    const std::string_view key = line.text.substr(0, space);
    const std::string_view rest =
        space == std::string_view::npos ? std::string_view{} : line.text.substr(space + 1);
    const Token value{rest, space + 2};

    if (key == "placements") {
      const long long k = parse_integer(value, line.number, "placement count");
      if (k < 0) throw ParseError(line.number, value.column, "negative placement count");
      if (i + 1 + static_cast<std::size_t>(k) > lines.size()) {
        throw ParseError(line.number, value.column, "placements section is shorter than declared");
      }
      for (long long p = 0; p < k; ++p) {
        const Line& pl = lines[i + 1 + static_cast<std::size_t>(p)];
        const auto fields = strict_fields(pl);
        expect_count(fields, pl, 3, "placement line");
        const long long piece = parse_integer(fields[0], pl.number, "piece index");
        if (piece < 1) throw ParseError(pl.number, 1, "piece index must be at least 1");
        record.placements.push_back({static_cast<std::size_t>(piece - 1),
                                     static_cast<int>(parse_integer(fields[1], pl.number, "x")),
                                     static_cast<int>(parse_integer(fields[2], pl.number, "y"))});
      }
      i += 1 + static_cast<std::size_t>(k);
      have_placements = true;
      break;
    }
    if (!keys.contains(key)) {
      throw ParseError(line.number, 1, "unknown key '" + std::string(key) + "'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw ParseError(line.number, 1, "duplicate key '" + std::string(key) + "'");
    }
    if (space == std::string_view::npos) {
      throw ParseError(line.number, line.text.size() + 1, "missing value for '" + std::string(key) + "'");
    }
    if (key == "instance") record.instance = std::string(rest);
    else if (key == "algorithm") record.algorithm = std::string(rest);
    else if (key == "init") record.init = std::string(rest);
    else if (key == "total_value") record.total_value = parse_integer(value, line.number, "total_value");
    else if (key == "iterations") {
      const long long it = parse_integer(value, line.number, "iterations");
      if (it < 0) throw ParseError(line.number, value.column, "negative iteration count");
      record.iterations = static_cast<std::size_t>(it);
    } else if (key == "t") record.t = parse_real(value, line.number, "t");
    else if (key == "u") record.u = parse_real(value, line.number, "u");
    else if (key == "epsilon") record.epsilon = parse_real(value, line.number, "epsilon");
    else if (key == "wall_time") record.wall_time = parse_real(value, line.number, "wall_time");
  }

  if (!have_placements) throw ParseError(0, 0, "missing placements section");
  for (const auto& key : keys) {
    if (!seen.contains(key)) throw ParseError(0, 0, "missing key '" + key + "'");
  }
  if (i >= lines.size() || lines[i].text != "end") {
    throw ParseError(i < lines.size() ? lines[i].number : lines.size() + 1, 1, "expected 'end'");
  }
  if (i + 1 < lines.size()) throw ParseError(lines[i + 1].number, 1, "trailing data after 'end'");
  return record;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error reading '" + path.string() + "'");
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("error writing '" + path.string() + "'");
}

}  // namespace ngc
