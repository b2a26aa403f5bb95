#include <doctest.h>

#include <afd/errors.hpp>
#include <afd/io.hpp>

#include <fstream>

#include "support.hpp"

using namespace afd;
using namespace afd::test;

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string samples_csv(int count, double (*fn)(double)) {
  std::string s = "# test signal\n";
  for (int j = 0; j < count; ++j) s += format_double(fn(2 * kPi * j / count)) + "\n";
  return s;
}

RecordFile sample_record() {
  RecordFile r;
  r.set_meta("algorithm", "afd1d");
  r.set_meta("N", "64");
  RecordPart p{"f", 1.2345678901234567, {}};
  RecordAtom a;
  a.a = {0.1, -0.30000000000000004};
  a.coefficients = {{1e-300, -2.5}};
  a.residual_energy = 0.1;
  a.r = 0.75;
  a.gain = 0.5;
  a.sup_gain = 0.625;
  a.r_sup = 1;
  a.running_r = 1;
  p.atoms.push_back(a);
  RecordAtom b = a;
  b.has_b = true;
  b.b = {-0.5, 0.25};
  b.order_a = 2;
  b.order_b = 3;
  b.coefficients = {{1, 2}, {3, 4}, {5, 6}};
  b.flags = "flat_a";
  p.atoms.push_back(b);
  r.parts.push_back(p);
  r.parts.push_back({"empty", 0.0, {}});
  r.checks.emplace_back("ledger_f", 3.3e-17);
  return r;
}

}  // namespace

TEST_CASE("records round trip byte for byte") {
  const auto r = sample_record();
  const auto text = serialize_record(r);
  CHECK(text.rfind("afd-record 1\n", 0) == 0);
  const auto back = parse_record(text);
  CHECK(serialize_record(back) == text);
  CHECK(back.meta_value("N") == "64");
  CHECK(back.meta_value("missing").empty());
  REQUIRE(back.has_part("f"));
  const auto& p = back.part("f");
  CHECK(p.initial_energy == r.parts[0].initial_energy);
  CHECK(p.atoms[0].a == r.parts[0].atoms[0].a);
  CHECK(p.atoms[0].coefficients[0] == r.parts[0].atoms[0].coefficients[0]);
  CHECK(p.atoms[1].has_b);
  CHECK(p.atoms[1].order_b == 3);
  CHECK(p.atoms[1].flags == "flat_a");
  CHECK(back.checks == r.checks);
  CHECK_THROWS_AS(back.part("nope"), ConfigError);
}

TEST_CASE("records round trip through files") {
  TempDir dir("io");
  const auto r = sample_record();
  save_record(r, dir.file("r.afd"));
  CHECK(serialize_record(load_record(dir.file("r.afd"))) == serialize_record(r));
}

TEST_CASE("truncated records report the byte offset") {
  const auto text = serialize_record(sample_record());
  const auto cut = text.find("atom", text.find("atom") + 1) + 10;
  try {
    parse_record(text.substr(0, cut));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.byte_offset() > 0);
    CHECK(e.byte_offset() <= cut);
  }
  const auto no_end = text.substr(0, text.rfind("end"));
  try {
    parse_record(no_end);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.byte_offset() == no_end.size());
  }
  CHECK_THROWS_AS(parse_record(""), ParseError);
  CHECK_THROWS_AS(parse_record("hello\n"), ParseError);
  CHECK_THROWS_AS(parse_record(text + "meta x y\n"), ParseError);
}

TEST_CASE("foreign versions are rejected") {
  auto text = serialize_record(sample_record());
  text.replace(0, 12, "afd-record 2");
  CHECK_THROWS_AS(parse_record(text), VersionError);
}

TEST_CASE("malformed atom lines are parse errors") {
  const std::string head = "afd-record 1\npart f 1 1\n";
  CHECK_THROWS_AS(parse_record(head + "atom a=0.1 c=1,0 residual=0.5\nend\n"), ParseError);
  CHECK_THROWS_AS(parse_record(head + "atom a=0.1,0 c=1,0\nend\n"), ParseError);
  CHECK_THROWS_AS(parse_record(head + "atom a=0.1,0 c=1,0 residual=0.5 bogus=1\nend\n"), ParseError);
  CHECK_THROWS_AS(parse_record(head + "end\n"), ParseError);
  CHECK_NOTHROW(parse_record(head + "atom a=0.1,0 c=1,0 residual=0.5\nend\n"));
}

TEST_CASE("metadata rejects line breaks") {
  RecordFile r;
  CHECK_THROWS_AS(r.set_meta("a b", "x"), ConfigError);
  CHECK_THROWS_AS(r.set_meta("a", "x\ny"), ConfigError);
  r.set_meta("a", "1");
  r.set_meta("a", "2");
  CHECK(r.meta.size() == 1);
  CHECK(r.meta_value("a") == "2");
}

TEST_CASE("doubles are written with full precision") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-310, 6.02214076e23, 0.0}) CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
}

TEST_CASE("1-D signals load as their analytic part") {
  TempDir dir("io");
  write_text(dir.file("cos.csv"), samples_csv(40, [](double t) { return 0.25 + std::cos(2 * t) + 0.5 * std::sin(3 * t); }));
  const auto f = load_signal_1d(dir.file("cos.csv"), 8);
  CHECK(f.is_hardy());
  CHECK(std::abs(f[0] - 0.25) < 1e-12);
  CHECK(std::abs(f[2] - 0.5) < 1e-12);
  CHECK(std::abs(f[3] - Complex(0, -0.25)) < 1e-12);
  const auto full = load_signal_1d(dir.file("cos.csv"), 8, false);
  CHECK(std::abs(full[-2] - 0.5) < 1e-12);
  CHECK(read_comment_fields(dir.file("cos.csv")).count("test") == 1);
}

TEST_CASE("short or malformed sample files are rejected") {
  TempDir dir("io");
  write_text(dir.file("short.csv"), samples_csv(17, [](double t) { return std::cos(t); }));
  try {
    load_signal_1d(dir.file("short.csv"), 8);
    FAIL("expected an ingestion error");
  } catch (const IngestionError& e) {
    CHECK(std::string(e.what()).find("18") != std::string::npos);
  }
  write_text(dir.file("bad.csv"), "1\n2\nabc\n");
  try {
    read_samples(dir.file("bad.csv"));
    FAIL("expected an ingestion error");
  } catch (const IngestionError& e) {
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
  }
  CHECK_THROWS_AS(read_samples(dir.file("missing.csv")), IngestionError);
}

TEST_CASE("images load with rows along t") {
  TempDir dir("io");
  const int side = 32;
  std::vector<unsigned char> px(side * side);
  for (int j = 0; j < side; ++j)
    for (int l = 0; l < side; ++l) {
      const double v = std::cos(2 * (2 * kPi * j / side) + 2 * kPi * l / side);
      px[static_cast<std::size_t>(j * side + l)] = static_cast<unsigned char>(std::lround(255 * (v + 1) / 2));
    }
  write_pgm(dir.file("img.pgm"), side, px);
  const auto img = load_image_2d(dir.file("img.pgm"), 4);
  CHECK(img.side == side);
  // pixels hold (v + 1) / 2, so cos(2t + s) contributes 1/4 at (2, 1)
  CHECK(std::abs(2.0 * img.parts.fpp(2, 1) - 0.5) < 1e-2);
  CHECK(std::abs(img.parts.fpp(1, 2)) < 1e-2);
  CHECK(std::abs(img.coeffs(0, 0) - 0.5) < 1e-2);
}

TEST_CASE("malformed images are rejected") {
  TempDir dir("io");
  write_text(dir.file("p2.pgm"), "P2\n4 4\n255\n");
  CHECK_THROWS_AS(load_image_2d(dir.file("p2.pgm"), 1), IngestionError);
  write_text(dir.file("rect.pgm"), "P5\n4 3\n255\n" + std::string(12, '\x10'));
  CHECK_THROWS_AS(load_image_2d(dir.file("rect.pgm"), 1), IngestionError);
  write_text(dir.file("cut.pgm"), "P5\n4 4\n255\n" + std::string(10, '\x10'));
  CHECK_THROWS_AS(load_image_2d(dir.file("cut.pgm"), 1), IngestionError);
  write_text(dir.file("small.pgm"), "P5\n4 4\n255\n" + std::string(16, '\x10'));
  CHECK_THROWS_AS(load_image_2d(dir.file("small.pgm"), 2), IngestionError);
  CHECK_THROWS_AS(write_pgm(dir.file("x.pgm"), 3, std::vector<unsigned char>(8)), DimensionError);
}

TEST_CASE("decomposition records convert to parts and back") {
  Rng rng(71);
  GridSpec grid{6, 12, 1, 0.9};
  const auto f = random_hardy(rng, 24);
  const auto afd = afd_decompose_1d(f, 4, grid);
  const auto back = afd_from_part(to_part("f", afd), 24);
  REQUIRE(back.steps.size() == afd.steps.size());
  for (std::size_t k = 0; k < afd.steps.size(); ++k) {
    CHECK(back.steps[k].a == afd.steps[k].a);
    CHECK(back.steps[k].coefficient == afd.steps[k].coefficient);
    CHECK(back.steps[k].multiplicity == afd.steps[k].multiplicity);
  }
  CHECK(back.initial_energy == afd.initial_energy);

  const auto F = random_hardy_2d(rng, 6);
  const auto tm = afd2d_tm_decompose(F, 3, grid);
  const auto tm_back = product_tm_from_part(to_part("pp", tm), 6);
  REQUIRE(tm_back.steps.size() == 3);
  CHECK(tm_back.steps[2].block == tm.steps[2].block);

  const auto pga = pga_decompose(F, 3, grid);
  const auto pga_back = pga_from_part(to_part("pp", pga), 6);
  CHECK(pga_back.steps[1].atom == pga.steps[1].atom);
  CHECK(pga_back.steps[1].coefficient == pga.steps[1].coefficient);

  SzegoDictionary1D dict(24);
  const auto po = poga_decompose(as_vector(f), 3, dict, {0.8}, grid);
  const auto po_back = poga_from_part(to_part("f", po), 24, false, 0.8);
  CHECK(po_back.steps[2].atom == po.steps[2].atom);
  CHECK(po_back.steps[2].running_r == po.steps[2].running_r);
  CHECK(po_back.rho == 0.8);
}
