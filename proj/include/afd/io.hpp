#pragma once

// Signal ingestion (CSV samples, P5 PGM images) and the line-oriented record
// format shared by all decompositions.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "afd/afd2d.hpp"
#include "afd/hardy.hpp"
#include "afd/poga.hpp"
#include "afd/tm.hpp"

namespace afd {

/// Real samples on a uniform grid over [0, 2 pi), one per line. Lines
/// starting with '#' are skipped. Requires at least 2N + 2 samples. Returns
/// the analytic part when `hardy` is set, otherwise the full coefficients.
FourierCoeffs1D load_signal_1d(const std::string& path, int order, bool hardy = true);

/// Raw samples of such a file, in file order.
std::vector<double> read_samples(const std::string& path);

/// "# key value..." comment lines of a CSV file, keyed by their first word.
std::multimap<std::string, std::string> read_comment_fields(const std::string& path);

struct ImageSignal {
  int side = 0;
  FourierCoeffs2D coeffs;  // full coefficients, |k|, |l| <= N
  QuadrantParts parts;
};

/// 8-bit P5 PGM, square, side >= 2N + 2; values are divided by maxval.
/// Image rows follow t, columns follow s.
ImageSignal load_image_2d(const std::string& path, int order);

/// Writes a P5 PGM with maxval 255.
void write_pgm(const std::string& path, int side, const std::vector<unsigned char>& pixels);

inline constexpr int kRecordVersion = 1;

struct RecordAtom {
  Complex a;
  int order_a = 1;
  bool has_b = false;
  Complex b;
  int order_b = 1;
  CVector coefficients;  // one value, or the 2n - 1 block of a product-TM step
  double residual_energy = 0.0;
  // pre-orthogonal runs only
  double r = 1.0;
  double gain = 0.0;
  double sup_gain = 0.0;
  double r_sup = 1.0;
  double running_r = 1.0;
  std::string flags;
};

struct RecordPart {
  std::string name;
  double initial_energy = 0.0;
  std::vector<RecordAtom> atoms;
};

struct RecordFile {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<RecordPart> parts;
  std::vector<std::pair<std::string, double>> checks;

  /// Empty when absent.
  std::string meta_value(std::string_view key) const;
  void set_meta(const std::string& key, const std::string& value);
  const RecordPart& part(std::string_view name) const;
  bool has_part(std::string_view name) const;
};

std::string serialize_record(const RecordFile& record);
/// Throws VersionError on a foreign version and ParseError (with the byte
/// offset of the offending line) on malformed or truncated input.
RecordFile parse_record(std::string_view text);

void save_record(const RecordFile& record, const std::string& path);
RecordFile load_record(const std::string& path);

RecordPart to_part(const std::string& name, const AFDRecord& record);
RecordPart to_part(const std::string& name, const ProductTMRecord& record);
RecordPart to_part(const std::string& name, const PGARecord& record);
RecordPart to_part(const std::string& name, const PogaRecord& record);

AFDRecord afd_from_part(const RecordPart& part, int order);
ProductTMRecord product_tm_from_part(const RecordPart& part, int order);
PGARecord pga_from_part(const RecordPart& part, int order);
PogaRecord poga_from_part(const RecordPart& part, int order, bool product, double rho);

/// %.17g
std::string format_double(double v);

}  // namespace afd
