#include "afd/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "afd/afd2d.hpp"
#include "afd/errors.hpp"
#include "afd/io.hpp"
#include "afd/poga.hpp"
#include "afd/rate.hpp"
#include "afd/szego.hpp"

namespace afd {
namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr double kVerifyTolerance = 1e-8;
constexpr double kSynthMaxRadius = 0.9;

const std::vector<std::string> kAlgorithms{"afd1d", "afd2d-tm", "pga2d", "poga1d", "poga2d"};

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

FourierCoeffs2D hardy_quadrant(const FourierCoeffs2D& f) {
  FourierCoeffs2D out(f.order(), Support::hardy);
  for (int k = 0; k <= f.order(); ++k)
    for (int l = 0; l <= f.order(); ++l) out.at(k, l) = f(k, l);
  return out;
}

FourierCoeffs1D hardy_from_vector(const CVector& v) { return FourierCoeffs1D::from_hardy(v); }

FourierCoeffs2D hardy_from_vector(const CVector& v, int order) {
  FourierCoeffs2D out(order, Support::hardy);
  std::copy(v.begin(), v.end(), out.values().begin());
  return out;
}

std::string meta_required(const RecordFile& rec, const std::string& key) {
  const std::string v = rec.meta_value(key);
  if (v.empty()) throw ConfigError("record lacks metadata '" + key + "'");
  return v;
}

double meta_double(const RecordFile& rec, const std::string& key) {
  const std::string v = meta_required(rec, key);
  try {
    return std::stod(v);
  } catch (const std::exception&) {
    throw ConfigError("metadata '" + key + "' is not a number");
  }
}

int meta_int(const RecordFile& rec, const std::string& key) { return static_cast<int>(meta_double(rec, key)); }

std::vector<DictAtom> synthesis_atoms(const std::multimap<std::string, std::string>& comments) {
  std::vector<DictAtom> atoms;
  auto [lo, hi] = comments.equal_range("atom");
  for (auto it = lo; it != hi; ++it) {
    std::istringstream in(it->second);
    double re = 0.0;
    double im = 0.0;
    if (!(in >> re >> im)) throw IngestionError("malformed '# atom' comment: " + it->second);
    atoms.push_back(DictAtom{AtomSpec{Complex{re, im}, 1}, std::nullopt});
  }
  return atoms;
}

std::optional<double> synthesis_mass(const std::multimap<std::string, std::string>& comments) {
  const auto it = comments.find("M");
  if (it == comments.end()) return std::nullopt;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw IngestionError("malformed '# M' comment: " + it->second);
  }
}

void echo_config(RecordFile& rec, const RunConfig& cfg) {
  rec.set_meta("tool_version", kToolVersion);
  rec.set_meta("algorithm", cfg.algorithm);
  rec.set_meta("order", std::to_string(cfg.order));
  rec.set_meta("terms", std::to_string(cfg.n_terms));
  rec.set_meta("grid_radial", std::to_string(cfg.grid.radial_count));
  rec.set_meta("grid_angular", std::to_string(cfg.grid.angular_count));
  rec.set_meta("refine", std::to_string(cfg.grid.refine_levels));
  rec.set_meta("max_radius", format_double(cfg.grid.max_radius));
  rec.set_meta("rho", format_double(cfg.rho));
  rec.set_meta("threshold", format_double(cfg.threshold));
  rec.set_meta("seed", std::to_string(cfg.seed));
  rec.set_meta("full", cfg.full ? "1" : "0");
}

// ---------------------------------------------------------------------------
// decompose

RecordPart decompose_1d(const RunConfig& cfg, const FourierCoeffs1D& f, const std::vector<DictAtom>& synthesis,
                        std::vector<std::string>& warnings) {
  if (cfg.algorithm == "afd1d") {
    const AFDRecord r = afd_decompose_1d(f, cfg.n_terms, cfg.grid, cfg.threshold);
    warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
    return to_part("main", r);
  }
  const SzegoDictionary1D dict(f.order());
  const PogaRecord r = poga_decompose(f.values(), cfg.n_terms, dict, WeakParam{cfg.rho}, cfg.grid,
                                      synthesis.empty() ? nullptr : &synthesis, cfg.threshold);
  warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
  return to_part("main", r);
}

RecordPart decompose_2d(const RunConfig& cfg, const std::string& name, const FourierCoeffs2D& f,
                        std::vector<std::string>& warnings) {
  if (cfg.algorithm == "afd2d-tm") {
    const ProductTMRecord r = afd2d_tm_decompose(f, cfg.n_terms, cfg.grid, cfg.threshold);
    warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
    return to_part(name, r);
  }
  if (cfg.algorithm == "pga2d") {
    const PGARecord r = pga_decompose(f, cfg.n_terms, cfg.grid, cfg.threshold);
    warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
    return to_part(name, r);
  }
  const ProductSzegoDictionary2D dict(f.order());
  const PogaRecord r = poga_decompose(f.values(), cfg.n_terms, dict, WeakParam{cfg.rho}, cfg.grid, nullptr,
                                      cfg.threshold);
  warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
  return to_part(name, r);
}

double coefficient_energy(const RecordPart& part) {
  double e = 0.0;
  for (const auto& a : part.atoms)
    for (const auto& c : a.coefficients) e += std::norm(c);
  return e;
}

double ledger_discrepancy(const RecordPart& part) {
  double prev = part.initial_energy;
  double worst = 0.0;
  for (const auto& a : part.atoms) {
    double extracted = 0.0;
    for (const auto& c : a.coefficients) extracted += std::norm(c);
    worst = std::max(worst, std::abs(prev - extracted - a.residual_energy));
    prev = a.residual_energy;
  }
  return worst;
}

void print_table(std::ostream& out, const RecordFile& rec) {
  out << "part,step,a_re,a_im,order_a,b_re,b_im,order_b,residual_energy\n";
  for (const auto& part : rec.parts) {
    out << part.name << ",0,,,,,,," << format_double(part.initial_energy) << "\n";
    for (std::size_t k = 0; k < part.atoms.size(); ++k) {
      const RecordAtom& a = part.atoms[k];
      out << part.name << ',' << k + 1 << ',' << format_double(a.a.real()) << ',' << format_double(a.a.imag()) << ','
          << a.order_a << ',';
      if (a.has_b) out << format_double(a.b.real()) << ',' << format_double(a.b.imag()) << ',' << a.order_b;
      else out << ",,";
      out << ',' << format_double(a.residual_energy) << "\n";
    }
  }
}

int run_decompose(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.input.empty()) throw ConfigError("decompose needs --input");
  RecordFile rec;
  echo_config(rec, cfg);
  rec.set_meta("input", cfg.input);
  std::vector<std::string> warnings;

  if (!cfg.is_2d()) {
    const FourierCoeffs1D f = load_signal_1d(cfg.input, cfg.order, true);
    const auto comments = read_comment_fields(cfg.input);
    rec.set_meta("samples", std::to_string(read_samples(cfg.input).size()));
    if (const auto m = synthesis_mass(comments)) rec.set_meta("M", format_double(*m));
    const std::vector<DictAtom> synthesis = synthesis_atoms(comments);
    rec.parts.push_back(decompose_1d(cfg, f, synthesis, warnings));
  } else {
    const ImageSignal img = load_image_2d(cfg.input, cfg.order);
    rec.set_meta("side", std::to_string(img.side));
    rec.parts.push_back(decompose_2d(cfg, "pp", hardy_quadrant(img.parts.fpp), warnings));
    if (cfg.full) rec.parts.push_back(decompose_2d(cfg, "pm", img.parts.reflected_pm(), warnings));
  }
  for (const auto& part : rec.parts) {
    rec.checks.emplace_back("ledger_" + part.name, ledger_discrepancy(part));
    rec.checks.emplace_back("residual_" + part.name,
                            part.atoms.empty() ? part.initial_energy : part.atoms.back().residual_energy);
  }
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  print_table(out, rec);
  if (!cfg.output.empty()) save_record(rec, cfg.output);
  return 0;
}

// ---------------------------------------------------------------------------
// reconstruction from a record

// Rebuilds the approximation of one part. With a signal, also replays the
// coefficients against it and returns the residual energies they imply.
FourierCoeffs1D reconstruct_part_1d(const RecordFile& rec, const RecordPart& part, const FourierCoeffs1D* f,
                                    std::vector<double>* residuals) {
  const std::string algorithm = meta_required(rec, "algorithm");
  const int order = meta_int(rec, "order");
  if (algorithm == "afd1d") {
    const AFDRecord r = afd_from_part(part, order);
    if (f && residuals) {
      const TMBasis basis = tm_basis(r.params(), order);
      double e = f->energy();
      for (const auto& b : basis.functions) {
        e -= std::norm(inner(*f, b));
        residuals->push_back(e);
      }
    }
    return reconstruct_1d(r, order);
  }
  const SzegoDictionary1D dict(order);
  const PogaRecord r = poga_from_part(part, order, false, meta_double(rec, "rho"));
  if (f && residuals) {
    OrthoFrame frame(dict.dimension());
    double e = f->energy();
    for (const auto& s : r.steps) {
      e -= std::norm(dot(f->values(), frame.extend(dict.atom(s.atom), s.atom)));
      residuals->push_back(e);
    }
  }
  return hardy_from_vector(reconstruct_poga(r, dict));
}

FourierCoeffs2D reconstruct_part_2d(const RecordFile& rec, const RecordPart& part, const FourierCoeffs2D* f,
                                    std::vector<double>* residuals) {
  const std::string algorithm = meta_required(rec, "algorithm");
  const int order = meta_int(rec, "order");
  if (algorithm == "afd2d-tm") {
    const ProductTMRecord r = product_tm_from_part(part, order);
    for (std::size_t s = 0; s < r.steps.size(); ++s) {
      if (r.steps[s].block.size() != 2 * s + 1) throw ConfigError("product-TM block of the wrong size");
    }
    if (f && residuals) {
      const PairSequence pairs = r.pairs();
      const TMBasis left = tm_basis(pairs.left(), order);
      const TMBasis right = tm_basis(pairs.right(), order);
      double e = f->energy();
      for (std::size_t s = 0; s < r.steps.size(); ++s) {
        for (const auto& [k, l] : dn_indices(static_cast<int>(s) + 1)) {
          e -= std::norm(product_coeff(*f, left.functions[static_cast<std::size_t>(k - 1)],
                                       right.functions[static_cast<std::size_t>(l - 1)]));
        }
        residuals->push_back(e);
      }
    }
    return reconstruct_product_tm(r, order);
  }
  if (algorithm == "pga2d") {
    const PGARecord r = pga_from_part(part, order);
    if (f && residuals) {
      FourierCoeffs2D g = *f;
      for (const auto& s : r.steps) {
        const FourierCoeffs2D atom = pga_atom(s.atom.left.a, s.atom.right.a, order);
        g -= inner(g, atom) * atom;
        residuals->push_back(g.energy());
      }
    }
    return reconstruct_pga(r, order);
  }
  const ProductSzegoDictionary2D dict(order);
  const PogaRecord r = poga_from_part(part, order, true, meta_double(rec, "rho"));
  if (f && residuals) {
    OrthoFrame frame(dict.dimension());
    double e = f->energy();
    for (const auto& s : r.steps) {
      e -= std::norm(dot(f->values(), frame.extend(dict.atom(s.atom), s.atom)));
      residuals->push_back(e);
    }
  }
  return hardy_from_vector(reconstruct_poga(r, dict), order);
}

RunConfig config_from_record(const RecordFile& rec) {
  RunConfig cfg;
  cfg.algorithm = meta_required(rec, "algorithm");
  cfg.order = meta_int(rec, "order");
  cfg.n_terms = meta_int(rec, "terms");
  cfg.rho = meta_double(rec, "rho");
  cfg.grid.radial_count = meta_int(rec, "grid_radial");
  cfg.grid.angular_count = meta_int(rec, "grid_angular");
  cfg.grid.refine_levels = meta_int(rec, "refine");
  cfg.grid.max_radius = meta_double(rec, "max_radius");
  cfg.validate();
  return cfg;
}

void write_samples_csv(const std::string& path, const std::vector<double>& samples, const std::string& header) {
  std::ofstream out(path);
  if (!out) throw IngestionError("cannot write " + path);
  out << header;
  for (const double v : samples) out << format_double(v) << "\n";
  if (!out) throw IngestionError("failed writing " + path);
}

int run_reconstruct(const RunConfig& opts, std::ostream& out) {
  if (opts.input.empty() || opts.output.empty()) throw ConfigError("reconstruct needs --input and --output");
  const RecordFile rec = load_record(opts.input);
  const RunConfig cfg = config_from_record(rec);
  if (!cfg.is_2d()) {
    const FourierCoeffs1D s = reconstruct_part_1d(rec, rec.part("main"), nullptr, nullptr);
    const std::size_t count = static_cast<std::size_t>(meta_int(rec, "samples"));
    const BoundaryGrid1D grid = to_grid(s, count);
    std::vector<double> samples(count);
    for (std::size_t j = 0; j < count; ++j) samples[j] = 2.0 * grid.samples[j].real() - s[0].real();
    write_samples_csv(opts.output, samples, "# reconstruction of " + rec.meta_value("input") + "\n");
    out << "wrote " << count << " samples to " << opts.output << "\n";
    return 0;
  }
  if (!rec.has_part("pm")) throw ConfigError("record lacks the (+,-) part; decompose with --full");
  const int n = cfg.order;
  const FourierCoeffs2D pp = reconstruct_part_2d(rec, rec.part("pp"), nullptr, nullptr);
  const FourierCoeffs2D pm = reconstruct_part_2d(rec, rec.part("pm"), nullptr, nullptr);
  QuadrantParts parts{FourierCoeffs2D(n, Support::full), FourierCoeffs2D(n, Support::full),
                      FourierCoeffs2D(n, Support::full), FourierCoeffs2D(n, Support::full),
                      FourierCoeffs1D(n, Support::full), FourierCoeffs1D(n, Support::full),
                      Complex{pp(0, 0).real(), 0.0}};
  for (int k = 0; k <= n; ++k) {
    for (int l = 0; l <= n; ++l) {
      parts.fpp.at(k, l) = pp(k, l);
      parts.fpm.at(k, -l) = pm(k, l);
    }
  }
  parts.F.at(0) = parts.c00;
  parts.G.at(0) = parts.c00;
  for (int k = 1; k <= n; ++k) {
    parts.F.at(k) = pp(k, 0);
    parts.F.at(-k) = std::conj(pp(k, 0));
    parts.G.at(k) = pp(0, k);
    parts.G.at(-k) = std::conj(pp(0, k));
  }
  const std::size_t side = static_cast<std::size_t>(meta_int(rec, "side"));
  const BoundaryGrid2D grid = real_reconstruct_2d(parts, side);
  std::ofstream csv(opts.output);
  if (!csv) throw IngestionError("cannot write " + opts.output);
  for (std::size_t j = 0; j < side; ++j) {
    for (std::size_t l = 0; l < side; ++l) csv << (l ? "," : "") << format_double(grid(j, l).real());
    csv << "\n";
  }
  out << "wrote " << side << "x" << side << " samples to " << opts.output << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int run_verify(const RunConfig& opts, const std::string& signal, std::ostream& out, std::ostream& err) {
  if (opts.input.empty()) throw ConfigError("verify needs --input");
  const RecordFile rec = load_record(opts.input);
  const RunConfig cfg = config_from_record(rec);
  std::vector<std::string> failures;

  for (const auto& part : rec.parts) {
    const double tol = kVerifyTolerance * std::max(1.0, part.initial_energy);
    const double ledger = ledger_discrepancy(part);
    out << "ledger," << part.name << "," << format_double(ledger) << "\n";
    if (ledger > tol) failures.push_back("energy ledger of part " + part.name + " is off by " + format_double(ledger));
    double prev = part.initial_energy;
    for (std::size_t k = 0; k < part.atoms.size(); ++k) {
      if (part.atoms[k].residual_energy > prev + tol) {
        failures.push_back("residual of part " + part.name + " increases at step " + std::to_string(k + 1));
      }
      prev = part.atoms[k].residual_energy;
    }
    if (cfg.algorithm == "afd2d-tm") {
      for (std::size_t k = 0; k < part.atoms.size(); ++k) {
        if (part.atoms[k].coefficients.size() != 2 * k + 1) {
          failures.push_back("block " + std::to_string(k + 1) + " of part " + part.name + " has " +
                             std::to_string(part.atoms[k].coefficients.size()) + " coefficients");
        }
      }
    }
  }

  const std::string mass = rec.meta_value("M");
  if (!mass.empty() && !cfg.is_2d()) {
    const RecordPart& part = rec.part("main");
    std::vector<double> energies{part.initial_energy};
    std::vector<double> running{1.0};
    if (cfg.algorithm == "poga1d") running.clear();
    for (const auto& a : part.atoms) {
      energies.push_back(a.residual_energy);
      if (cfg.algorithm == "poga1d") running.push_back(a.running_r);
    }
    if (running.empty()) running.push_back(1.0);
    const RateReport report = rate_report(energies, running, std::stod(mass), cfg.rho);
    out << "rate_rows," << report.rows.size() << "\n";
    for (const auto& v : report.violations) failures.push_back("rate bound: " + v);
  }

  if (!signal.empty()) {
    const bool tm_expansion = cfg.algorithm == "afd1d" || cfg.algorithm == "afd2d-tm";
    for (const auto& part : rec.parts) {
      const double tol = kVerifyTolerance * std::max(1.0, part.initial_energy);
      std::vector<double> residuals;
      double e0 = 0.0;
      double final_error = 0.0;
      if (!cfg.is_2d()) {
        const FourierCoeffs1D f = load_signal_1d(signal, cfg.order, true);
        const FourierCoeffs1D s = reconstruct_part_1d(rec, part, &f, &residuals);
        e0 = f.energy();
        final_error = (f - s).energy();
        if (tm_expansion) final_error += coefficient_energy(part) - s.energy();
      } else {
        const ImageSignal img = load_image_2d(signal, cfg.order);
        const FourierCoeffs2D f = part.name == "pm" ? img.parts.reflected_pm() : hardy_quadrant(img.parts.fpp);
        const FourierCoeffs2D s = reconstruct_part_2d(rec, part, &f, &residuals);
        e0 = f.energy();
        final_error = (f - s).energy();
        if (tm_expansion) final_error += coefficient_energy(part) - s.energy();
      }
      if (std::abs(e0 - part.initial_energy) > tol) {
        failures.push_back("signal energy differs from the record for part " + part.name);
      }
      for (std::size_t k = 0; k < residuals.size() && k < part.atoms.size(); ++k) {
        if (std::abs(residuals[k] - part.atoms[k].residual_energy) > tol) {
          failures.push_back("replayed residual of part " + part.name + " differs at step " + std::to_string(k + 1));
          break;
        }
      }
      const double stored = part.atoms.empty() ? part.initial_energy : part.atoms.back().residual_energy;
      out << "reconstruction," << part.name << "," << format_double(final_error) << "," << format_double(stored)
          << "\n";
      // TM expansions also count their energy above order N
      if (std::abs(final_error - stored) > tol) {
        failures.push_back("reconstruction error of part " + part.name + " does not match the stored residual");
      }
    }
  }

  for (const auto& f : failures) err << "verify: " << f << "\n";
  out << (failures.empty() ? "verify: ok\n" : "verify: FAILED\n");
  return failures.empty() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// synth

int run_synth(const RunConfig& cfg, std::ostream& out) {
  if (cfg.output.empty()) throw ConfigError("synth needs --output");
  if (cfg.is_2d()) throw ConfigError("synth generates 1-D signals; use a 1-D algorithm");
  if (!(cfg.mass > 0.0)) throw ConfigError("--mass must be positive");

  std::vector<GridPoint> pool;
  for (const auto& p : coarse_points(cfg.grid)) {
    if (p.radius <= kSynthMaxRadius) pool.push_back(p);
  }
  const std::size_t count = static_cast<std::size_t>(cfg.n_terms);
  if (count > pool.size()) throw ConfigError("grid has too few points for the requested number of atoms");

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> chosen;
  while (chosen.size() < count) {
    const std::size_t i = static_cast<std::size_t>(rng() % pool.size());
    if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) chosen.push_back(i);
  }
  std::vector<double> weights(count);
  CVector coeffs(count);
  double total = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    weights[k] = 0.1 + uniform01(rng);
    total += weights[k];
  }
  for (std::size_t k = 0; k < count; ++k) {
    coeffs[k] = std::polar(cfg.mass * weights[k] / total, 2.0 * kPi * uniform01(rng));
  }

  FourierCoeffs1D f(cfg.order, Support::hardy);
  for (std::size_t k = 0; k < count; ++k) f += coeffs[k] * szego_coeffs(pool[chosen[k]].z(), cfg.order);
  // make the mean real so the real samples determine f exactly
  const Complex phase = std::abs(f[0]) > 0.0 ? std::conj(f[0]) / std::abs(f[0]) : Complex{1.0, 0.0};
  f *= phase;
  for (auto& c : coeffs) c *= phase;

  const std::size_t samples = 2 * static_cast<std::size_t>(cfg.order) + 2;
  const BoundaryGrid1D grid = to_grid(f, samples);
  std::vector<double> x(samples);
  for (std::size_t j = 0; j < samples; ++j) x[j] = 2.0 * grid.samples[j].real() - f[0].real();

  std::string header = "# synth seed " + std::to_string(cfg.seed) + " order " + std::to_string(cfg.order) + "\n";
  header += "# M " + format_double(cfg.mass) + "\n";
  for (std::size_t k = 0; k < count; ++k) {
    const Complex a = pool[chosen[k]].z();
    header += "# atom " + format_double(a.real()) + " " + format_double(a.imag()) + " " +
              format_double(coeffs[k].real()) + " " + format_double(coeffs[k].imag()) + "\n";
  }
  write_samples_csv(cfg.output, x, header);
  out << "wrote " << samples << " samples with " << count << " atoms to " << cfg.output << "\n";
  return 0;
}

void add_run_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--algorithm", cfg.algorithm, "afd1d, afd2d-tm, pga2d, poga1d or poga2d")
      ->check(CLI::IsMember(kAlgorithms));
  sub->add_option("--terms", cfg.n_terms, "number of selection steps (synth: number of atoms)");
  sub->add_option("--order", cfg.order, "truncation order N (default 256 in 1-D, 64 in 2-D)");
  sub->add_option("--grid-radial", cfg.grid.radial_count, "radial grid count (default 48 in 1-D, 24 in 2-D)");
  sub->add_option("--grid-angular", cfg.grid.angular_count, "angular grid count (default 96 in 1-D, 48 in 2-D)");
  sub->add_option("--refine", cfg.grid.refine_levels, "refinement levels");
  sub->add_option("--max-radius", cfg.grid.max_radius, "largest grid radius");
  sub->add_option("--rho", cfg.rho, "weak selection parameter in (0, 1]");
  sub->add_option("--threshold", cfg.threshold, "relative residual energy at which to stop");
  sub->add_option("--input", cfg.input, "input signal or record");
  sub->add_option("--output", cfg.output, "output path");
  sub->add_option("--seed", cfg.seed, "seed of the synthetic generator");
}

}  // namespace

bool RunConfig::is_2d() const { return algorithm == "afd2d-tm" || algorithm == "pga2d" || algorithm == "poga2d"; }

void RunConfig::validate() const {
  if (std::find(kAlgorithms.begin(), kAlgorithms.end(), algorithm) == kAlgorithms.end()) {
    throw ConfigError("unknown algorithm '" + algorithm + "'");
  }
  if (!(rho > 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in (0, 1]");
  if (order < 8) throw ConfigError("truncation order must be at least 8");
  if (n_terms < 1) throw ConfigError("number of terms must be at least 1");
  if (!(threshold >= 0.0)) throw ConfigError("threshold must be non-negative");
  grid.validate();
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive Fourier decomposition and pre-orthogonal greedy algorithms", "afd"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  std::string signal;

  CLI::App* decompose = app.add_subcommand("decompose", "decompose a CSV signal or PGM image into a record");
  add_run_options(decompose, cfg);
  decompose->add_flag("--full", cfg.full, "2-D: also decompose the (+,-) quadrant for real reconstruction");
  CLI::App* reconstruct = app.add_subcommand("reconstruct", "rebuild samples from a record");
  add_run_options(reconstruct, cfg);
  CLI::App* verify = app.add_subcommand("verify", "re-check ledgers and rate bounds of a record");
  add_run_options(verify, cfg);
  verify->add_option("--signal", signal, "original signal, to replay the record against it");
  CLI::App* synth = app.add_subcommand("synth", "write a signal with known atoms and coefficient mass");
  add_run_options(synth, cfg);
  synth->add_option("--mass", cfg.mass, "sum of |c_k| (default 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    err << app.help();
    return 2;
  }

  CLI::App* active = app.get_subcommands().front();
  auto was_set = [active](const char* name) { return active->count(name) > 0; };
  if (cfg.order == 0) cfg.order = cfg.is_2d() ? 64 : 256;
  if (cfg.is_2d()) {
    if (!was_set("--grid-radial")) cfg.grid.radial_count = 24;
    if (!was_set("--grid-angular")) cfg.grid.angular_count = 48;
  }

  try {
    if (active == decompose || active == synth) cfg.validate();
    if (active == decompose) return run_decompose(cfg, out, err);
    if (active == reconstruct) return run_reconstruct(cfg, out);
    if (active == verify) return run_verify(cfg, signal, out, err);
    return run_synth(cfg, out);
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

int cli_main(int argc, const char* const* argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace afd
