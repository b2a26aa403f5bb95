#include "afd/io.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "afd/errors.hpp"

namespace afd {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(std::string_view s, double& out) {
  const std::string tmp(s);
  if (tmp.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(tmp.c_str(), &end);
  return end == tmp.c_str() + tmp.size() && errno != ERANGE;
}

bool parse_int(std::string_view s, int& out) {
  const std::string tmp(s);
  if (tmp.empty()) return false;
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(tmp.c_str(), &end, 10);
  if (end != tmp.c_str() + tmp.size() || errno == ERANGE || v < -2147483647L || v > 2147483647L) return false;
  out = static_cast<int>(v);
  return true;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

std::string format_complex(Complex c) { return format_double(c.real()) + "," + format_double(c.imag()); }

// ---------------------------------------------------------------------------
// PGM header scanning

class PgmReader {
 public:
  explicit PgmReader(const std::string& data, const std::string& path) : data_(data), path_(path) {}

  std::string token() {
    skip_space_and_comments();
    const std::size_t b = pos_;
    while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_]))) ++pos_;
    if (pos_ == b) fail("unexpected end of header");
    return data_.substr(b, pos_ - b);
  }

  int number() {
    const std::string t = token();
    int v = 0;
    if (!parse_int(t, v) || v <= 0) fail("invalid header field '" + t + "'");
    return v;
  }

  std::size_t raster_start() {
    if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) fail("missing raster separator");
    return pos_ + 1;
  }

  [[noreturn]] void fail(const std::string& what) const { throw IngestionError(path_ + ": malformed PGM: " + what); }

 private:
  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      if (std::isspace(static_cast<unsigned char>(data_[pos_]))) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& data_;
  const std::string& path_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// record parsing

struct Line {
  std::string_view text;
  std::size_t offset;
};

class LineCursor {
 public:
  explicit LineCursor(std::string_view text) : text_(text) {}

  bool next(Line& line) {
    while (pos_ < text_.size()) {
      const std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) {
        // a final line without newline counts as truncated
        throw ParseError("unterminated line", pos_);
      }
      line = Line{trim(text_.substr(pos_, end - pos_)), pos_};
      pos_ = end + 1;
      if (!line.text.empty()) return true;
    }
    return false;
  }

  std::size_t position() const noexcept { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Complex parse_complex(std::string_view s, std::size_t offset) {
  const auto comma = s.find(',');
  double re = 0.0;
  double im = 0.0;
  if (comma == std::string_view::npos || !parse_double(s.substr(0, comma), re) ||
      !parse_double(s.substr(comma + 1), im)) {
    throw ParseError("malformed complex value '" + std::string(s) + "'", offset);
  }
  return {re, im};
}

double parse_real(std::string_view s, std::size_t offset) {
  double v = 0.0;
  if (!parse_double(s, v)) throw ParseError("malformed number '" + std::string(s) + "'", offset);
  return v;
}

int parse_integer(std::string_view s, std::size_t offset) {
  int v = 0;
  if (!parse_int(s, v)) throw ParseError("malformed integer '" + std::string(s) + "'", offset);
  return v;
}

RecordAtom parse_atom(const std::vector<std::string_view>& fields, std::size_t offset) {
  RecordAtom atom;
  bool has_a = false;
  bool has_residual = false;
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const auto eq = fields[i].find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value, got '" + std::string(fields[i]) + "'", offset);
    const std::string_view key = fields[i].substr(0, eq);
    const std::string_view value = fields[i].substr(eq + 1);
    if (key == "a") {
      atom.a = parse_complex(value, offset);
      has_a = true;
    } else if (key == "m") {
      atom.order_a = parse_integer(value, offset);
    } else if (key == "b") {
      atom.b = parse_complex(value, offset);
      atom.has_b = true;
    } else if (key == "l") {
      atom.order_b = parse_integer(value, offset);
    } else if (key == "c") {
      atom.coefficients.push_back(parse_complex(value, offset));
    } else if (key == "residual") {
      atom.residual_energy = parse_real(value, offset);
      has_residual = true;
    } else if (key == "r") {
      atom.r = parse_real(value, offset);
    } else if (key == "gain") {
      atom.gain = parse_real(value, offset);
    } else if (key == "supgain") {
      atom.sup_gain = parse_real(value, offset);
    } else if (key == "rsup") {
      atom.r_sup = parse_real(value, offset);
    } else if (key == "R") {
      atom.running_r = parse_real(value, offset);
    } else if (key == "flags") {
      atom.flags = std::string(value);
    } else {
      throw ParseError("unknown atom field '" + std::string(key) + "'", offset);
    }
  }
  if (!has_a || !has_residual || atom.coefficients.empty()) throw ParseError("incomplete atom line", offset);
  return atom;
}

void require_real_valued(const std::vector<double>& samples, const std::string& path) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) throw IngestionError(path + ": non-finite sample at data row " + std::to_string(i + 1));
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// CSV

std::vector<double> read_samples(const std::string& path) {
  const std::string data = read_file(path);
  std::vector<double> samples;
  std::size_t row = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t end = data.find('\n', pos);
    if (end == std::string::npos) end = data.size();
    ++row;
    const std::string_view line = trim(std::string_view(data).substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;
    double v = 0.0;
    if (!parse_double(line, v)) {
      throw IngestionError(path + ": row " + std::to_string(row) + " is not a number: '" + std::string(line) + "'");
    }
    samples.push_back(v);
  }
  require_real_valued(samples, path);
  return samples;
}

std::multimap<std::string, std::string> read_comment_fields(const std::string& path) {
  const std::string data = read_file(path);
  std::multimap<std::string, std::string> out;
  std::istringstream in(data);
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view t = trim(line);
    if (t.empty() || t.front() != '#') continue;
    const std::string_view body = trim(t.substr(1));
    const auto sp = body.find_first_of(" \t");
    if (sp == std::string_view::npos) {
      out.emplace(std::string(body), "");
    } else {
      out.emplace(std::string(body.substr(0, sp)), std::string(trim(body.substr(sp + 1))));
    }
  }
  return out;
}

FourierCoeffs1D load_signal_1d(const std::string& path, int order, bool hardy) {
  if (order < 0) throw ConfigError("truncation order must be non-negative");
  const std::vector<double> samples = read_samples(path);
  const std::size_t minimum = 2 * static_cast<std::size_t>(order) + 2;
  if (samples.size() < minimum) {
    throw IngestionError(path + ": " + std::to_string(samples.size()) + " samples, order " + std::to_string(order) +
                         " needs at least " + std::to_string(minimum));
  }
  BoundaryGrid1D grid{CVector(samples.begin(), samples.end())};
  const FourierCoeffs1D full = from_grid(grid, order, Support::full);
  return hardy ? analytic_part(full) : full;
}

// ---------------------------------------------------------------------------
// PGM

ImageSignal load_image_2d(const std::string& path, int order) {
  if (order < 0) throw ConfigError("truncation order must be non-negative");
  const std::string data = read_file(path);
  PgmReader reader(data, path);
  if (reader.token() != "P5") reader.fail("expected magic P5");
  const int width = reader.number();
  const int height = reader.number();
  const int maxval = reader.number();
  if (maxval > 255) reader.fail("only 8-bit images are supported");
  const std::size_t start = reader.raster_start();
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (data.size() < start + count) reader.fail("raster shorter than " + std::to_string(count) + " bytes");
  if (width != height) {
    throw IngestionError(path + ": image is " + std::to_string(width) + "x" + std::to_string(height) +
                         ", expected a square");
  }
  const int minimum = 2 * order + 2;
  if (width < minimum) {
    throw IngestionError(path + ": side " + std::to_string(width) + " is below the minimum " +
                         std::to_string(minimum) + " for order " + std::to_string(order));
  }

  const std::size_t side = static_cast<std::size_t>(width);
  BoundaryGrid2D grid{side, CVector(count)};
  for (std::size_t j = 0; j < side; ++j) {
    for (std::size_t l = 0; l < side; ++l) {
      const auto byte = static_cast<unsigned char>(data[start + j * side + l]);
      grid(j, l) = static_cast<double>(byte) / maxval;
    }
  }
  ImageSignal out;
  out.side = width;
  out.coeffs = from_grid(grid, order, Support::full);
  out.parts = quadrant_split(out.coeffs);
  return out;
}

void write_pgm(const std::string& path, int side, const std::vector<unsigned char>& pixels) {
  if (pixels.size() != static_cast<std::size_t>(side) * static_cast<std::size_t>(side)) {
    throw DimensionError("pixel count does not match the image side");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestionError("cannot write " + path);
  out << "P5\n" << side << ' ' << side << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

// ---------------------------------------------------------------------------
// records

std::string RecordFile::meta_value(std::string_view key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return v;
  }
  return {};
}

void RecordFile::set_meta(const std::string& key, const std::string& value) {
  if (key.find_first_of(" \t\n") != std::string::npos || value.find('\n') != std::string::npos) {
    throw ConfigError("metadata must not contain line breaks or spaced keys");
  }
  for (auto& [k, v] : meta) {
    if (k == key) {
      v = value;
      return;
    }
  }
  meta.emplace_back(key, value);
}

const RecordPart& RecordFile::part(std::string_view name) const {
  for (const auto& p : parts) {
    if (p.name == name) return p;
  }
  throw ConfigError("record has no part '" + std::string(name) + "'");
}

bool RecordFile::has_part(std::string_view name) const {
  for (const auto& p : parts) {
    if (p.name == name) return true;
  }
  return false;
}

std::string serialize_record(const RecordFile& record) {
  std::string out = "afd-record " + std::to_string(kRecordVersion) + "\n";
  for (const auto& [k, v] : record.meta) out += "meta " + k + (v.empty() ? "" : " " + v) + "\n";
  for (const auto& part : record.parts) {
    out += "part " + part.name + " " + format_double(part.initial_energy) + " " + std::to_string(part.atoms.size()) +
           "\n";
    for (const auto& a : part.atoms) {
      out += "atom a=" + format_complex(a.a) + " m=" + std::to_string(a.order_a);
      if (a.has_b) out += " b=" + format_complex(a.b) + " l=" + std::to_string(a.order_b);
      for (const auto& c : a.coefficients) out += " c=" + format_complex(c);
      out += " residual=" + format_double(a.residual_energy);
      out += " r=" + format_double(a.r) + " gain=" + format_double(a.gain) + " supgain=" + format_double(a.sup_gain) +
             " rsup=" + format_double(a.r_sup) + " R=" + format_double(a.running_r);
      if (!a.flags.empty()) out += " flags=" + a.flags;
      out += "\n";
    }
  }
  for (const auto& [k, v] : record.checks) out += "check " + k + " " + format_double(v) + "\n";
  out += "end\n";
  return out;
}

RecordFile parse_record(std::string_view text) {
  LineCursor cursor(text);
  Line line;
  if (!cursor.next(line)) throw ParseError("empty record", 0);
  const auto head = split_ws(line.text);
  if (head.size() != 2 || head[0] != "afd-record") throw ParseError("not an afd record", line.offset);
  int version = 0;
  if (!parse_int(head[1], version)) throw ParseError("malformed version", line.offset);
  if (version != kRecordVersion) {
    throw VersionError("record version " + std::to_string(version) + " is not supported (expected " +
                       std::to_string(kRecordVersion) + ")");
  }

  RecordFile record;
  RecordPart* current = nullptr;
  std::size_t expected_atoms = 0;
  auto close_part = [&](std::size_t offset) {
    if (current && current->atoms.size() != expected_atoms) {
      throw ParseError("part '" + current->name + "' declares " + std::to_string(expected_atoms) + " atoms, found " +
                           std::to_string(current->atoms.size()),
                       offset);
    }
    current = nullptr;
  };

  while (cursor.next(line)) {
    const auto fields = split_ws(line.text);
    const std::string_view kind = fields[0];
    if (kind == "end") {
      close_part(line.offset);
      if (cursor.next(line)) throw ParseError("content after end", line.offset);
      return record;
    }
    if (kind == "meta") {
      if (fields.size() < 2) throw ParseError("meta line without key", line.offset);
      const auto key_pos = line.text.find(fields[1], 4);
      const std::string_view rest = trim(line.text.substr(key_pos + fields[1].size()));
      record.meta.emplace_back(std::string(fields[1]), std::string(rest));
    } else if (kind == "part") {
      close_part(line.offset);
      if (fields.size() != 4) throw ParseError("part line needs name, energy and atom count", line.offset);
      const int count = parse_integer(fields[3], line.offset);
      if (count < 0) throw ParseError("negative atom count", line.offset);
      record.parts.push_back(RecordPart{std::string(fields[1]), parse_real(fields[2], line.offset), {}});
      current = &record.parts.back();
      expected_atoms = static_cast<std::size_t>(count);
    } else if (kind == "atom") {
      if (!current) throw ParseError("atom outside a part", line.offset);
      current->atoms.push_back(parse_atom(fields, line.offset));
    } else if (kind == "check") {
      close_part(line.offset);
      if (fields.size() != 3) throw ParseError("check line needs a name and a value", line.offset);
      record.checks.emplace_back(std::string(fields[1]), parse_real(fields[2], line.offset));
    } else {
      throw ParseError("unknown line kind '" + std::string(kind) + "'", line.offset);
    }
  }
  throw ParseError("record ends before 'end'", text.size());
}

void save_record(const RecordFile& record, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestionError("cannot write " + path);
  out << serialize_record(record);
  if (!out) throw IngestionError("failed writing " + path);
}

RecordFile load_record(const std::string& path) { return parse_record(read_file(path)); }

// ---------------------------------------------------------------------------
// conversions

RecordPart to_part(const std::string& name, const AFDRecord& record) {
  RecordPart part{name, record.initial_energy, {}};
  for (const auto& s : record.steps) {
    RecordAtom a;
    a.a = s.a;
    a.order_a = s.multiplicity;
    a.coefficients = {s.coefficient};
    a.residual_energy = s.residual_energy;
    part.atoms.push_back(std::move(a));
  }
  return part;
}

RecordPart to_part(const std::string& name, const ProductTMRecord& record) {
  RecordPart part{name, record.initial_energy, {}};
  for (const auto& s : record.steps) {
    RecordAtom a;
    a.a = s.a;
    a.has_b = true;
    a.b = s.b;
    a.coefficients = s.block;
    a.residual_energy = s.residual_energy;
    if (s.flat_in_a) a.flags += "a";
    if (s.flat_in_b) a.flags += "b";
    part.atoms.push_back(std::move(a));
  }
  return part;
}

RecordPart to_part(const std::string& name, const PGARecord& record) {
  RecordPart part{name, record.initial_energy, {}};
  for (const auto& s : record.steps) {
    RecordAtom a;
    a.a = s.atom.left.a;
    a.has_b = true;
    a.b = s.atom.right.a;
    a.coefficients = {s.coefficient};
    a.residual_energy = s.residual_energy;
    part.atoms.push_back(std::move(a));
  }
  return part;
}

RecordPart to_part(const std::string& name, const PogaRecord& record) {
  RecordPart part{name, record.initial_energy, {}};
  for (const auto& s : record.steps) {
    RecordAtom a;
    a.a = s.atom.left.a;
    a.order_a = s.atom.left.order;
    if (s.atom.right) {
      a.has_b = true;
      a.b = s.atom.right->a;
      a.order_b = s.atom.right->order;
    }
    a.coefficients = {s.coefficient};
    a.residual_energy = s.residual_energy;
    a.r = s.r;
    a.gain = s.gain;
    a.sup_gain = s.sup_gain;
    a.r_sup = s.r_sup;
    a.running_r = s.running_r;
    part.atoms.push_back(std::move(a));
  }
  return part;
}

AFDRecord afd_from_part(const RecordPart& part, int order) {
  AFDRecord record;
  record.order = order;
  record.initial_energy = part.initial_energy;
  for (const auto& a : part.atoms) {
    if (a.has_b || a.coefficients.size() != 1) throw ConfigError("record part is not a 1-D AFD run");
    record.steps.push_back(AfdStep{a.a, a.order_a, a.coefficients[0], a.residual_energy});
  }
  return record;
}

ProductTMRecord product_tm_from_part(const RecordPart& part, int order) {
  ProductTMRecord record;
  record.order = order;
  record.initial_energy = part.initial_energy;
  for (const auto& a : part.atoms) {
    if (!a.has_b) throw ConfigError("record part is not a product-TM run");
    ProductTMStep s{a.a, a.b, a.coefficients, 0.0, a.residual_energy, a.flags.find('a') != std::string::npos,
                    a.flags.find('b') != std::string::npos};
    for (const auto& c : s.block) s.block_energy += std::norm(c);
    record.steps.push_back(std::move(s));
  }
  return record;
}

PGARecord pga_from_part(const RecordPart& part, int order) {
  PGARecord record;
  record.order = order;
  record.initial_energy = part.initial_energy;
  for (const auto& a : part.atoms) {
    if (!a.has_b || a.coefficients.size() != 1) throw ConfigError("record part is not a pure greedy run");
    record.steps.push_back(
        PgaStep{TensorAtomSpec{AtomSpec{a.a, 1}, AtomSpec{a.b, 1}}, a.coefficients[0], a.residual_energy});
  }
  return record;
}

PogaRecord poga_from_part(const RecordPart& part, int order, bool product, double rho) {
  PogaRecord record;
  record.product = product;
  record.order = order;
  record.rho = rho;
  record.initial_energy = part.initial_energy;
  for (const auto& a : part.atoms) {
    if (a.has_b != product || a.coefficients.size() != 1) throw ConfigError("record part does not match the run");
    DictAtom atom{AtomSpec{a.a, a.order_a}, std::nullopt};
    if (a.has_b) atom.right = AtomSpec{a.b, a.order_b};
    record.steps.push_back(
        PogaStep{atom, a.coefficients[0], a.residual_energy, a.r, a.gain, a.sup_gain, a.r_sup, a.running_r});
  }
  return record;
}

}  // namespace afd
