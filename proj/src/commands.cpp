#include "multient/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "multient/audit.hpp"
#include "multient/catalog.hpp"
#include "multient/errors.hpp"
#include "multient/io.hpp"
#include "multient/measures.hpp"
#include "multient/permlab.hpp"
#include "multient/polygon.hpp"
#include "multient/rng.hpp"
#include "multient/weyl.hpp"

namespace multient {

namespace {

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    body();
    return 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return 3;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

std::optional<double> parse_real(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::set<std::string> parse_measures(const std::string& list, const std::set<std::string>& allowed) {
  std::set<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (!allowed.count(item)) throw InputError("unknown measure '" + item + "'");
    out.insert(item);
  }
  if (out.empty()) throw InputError("no measures requested");
  return out;
}

ParamMap parse_params(const std::vector<std::string>& params) {
  ParamMap out;
  for (const auto& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("parameter '" + kv + "' must look like key=value");
    const std::string key = trim(kv.substr(0, eq));
    const auto value = parse_complex(trim(kv.substr(eq + 1)));
    if (!value) throw InputError("parameter '" + kv + "' has an unreadable value");
    if (out.count(key)) throw InputError("parameter '" + key + "' given twice");
    out[key] = *value;
  }
  return out;
}

SolverSettings solver_settings(const RunConfig& cfg) {
  if (!(cfg.solver_residual > 0.0)) throw InputError("solver residual tolerance must be positive");
  if (cfg.max_restarts < 1) throw InputError("max restarts must be >= 1");
  SolverSettings s;
  s.seed = cfg.seed;
  s.residual_tol = cfg.solver_residual;
  s.max_restarts = cfg.max_restarts;
  return s;
}

// Writes `text` to `path`, or to `out` when the path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::string with_measure_suffix(const std::string& path, const std::string& measure, bool multiple) {
  if (!multiple || path.empty()) return path;
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "." + measure;
  return path.substr(0, dot) + "." + measure + path.substr(dot);
}

std::string join_images(const std::vector<int>& images) {
  std::string s;
  for (std::size_t k = 0; k < images.size(); ++k) {
    if (k) s += ';';
    s += std::to_string(images[k]);
  }
  return s;
}

}  // namespace

std::optional<std::complex<double>> parse_complex(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) return std::nullopt;
  if (text.back() != 'i') {
    const auto re = parse_real(text);
    if (!re) return std::nullopt;
    return std::complex<double>(*re, 0.0);
  }
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](const std::string& s) -> std::optional<double> {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split == std::string::npos) {
    const auto im = imag_part(body);
    if (!im) return std::nullopt;
    return std::complex<double>(0.0, *im);
  }
  const auto re = parse_real(body.substr(0, split));
  const auto im = imag_part(body.substr(split));
  if (!re || !im) return std::nullopt;
  return std::complex<double>(*re, *im);
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ENT_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw InputError("ENT_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

int cmd_measure(const MeasureOptions& opts, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.state_path.empty() == opts.named.empty()) {
      throw InputError("measure: give exactly one of --state or --named");
    }
    const auto measures = parse_measures(opts.measures, {"gme_ame", "scott", "polygon"});
    if (!opts.state_path.empty() && (!opts.params.empty() || opts.n != 0 || opts.d != 0)) {
      throw InputError("measure: --param/--n/--d apply to --named only");
    }
    const PureState state = opts.state_path.empty()
                                ? named_state({opts.named, parse_params(opts.params), opts.n, opts.d})
                                : read_state_file(opts.state_path);
    const auto report = measure_report(state, measures.count("polygon") > 0, solver_settings(cfg));
    const std::string body = report_json(report, measures).dump(2) + "\n";
    if (opts.out_path.empty()) {
      out << body;
    } else {
      write_text_file(opts.out_path, std::string(kFormatLine) + "\n" + body);
    }
  });
}

int cmd_weyl(const WeylOptions& opts, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.samples < 1) throw InputError("weyl: --samples must be >= 1");
    std::vector<WeylPoint> points;
    if (opts.mode == "sweep") {
      points = sample_chamber(static_cast<std::size_t>(opts.samples), cfg.seed);
    } else if (opts.mode == "edge") {
      WeylEdge edge;
      if (opts.edge == "local_cnot") {
        edge = WeylEdge::LocalCnot;
      } else if (opts.edge == "swap_dcnot") {
        edge = WeylEdge::SwapDcnot;
      } else {
        throw InputError("weyl: --edge must be local_cnot or swap_dcnot");
      }
      const double quarter = std::numbers::pi / 4.0;
      for (long k = 0; k < opts.samples; ++k) {
        const double t = opts.samples == 1 ? quarter : quarter * static_cast<double>(k) / static_cast<double>(opts.samples - 1);
        points.push_back(edge_point(edge, t));
      }
    } else {
      throw InputError("weyl: --mode must be sweep or edge");
    }

    const SolverSettings base = solver_settings(cfg);
    std::ostringstream csv;
    csv << kFormatLine << "\n";
    csv << "x,y,z,gme_ame_numeric,gme_ame_closed,scott2_numeric,scott2_closed,polygon\n";
    for (std::size_t row = 0; row < points.size(); ++row) {
      const auto& p = points[row];
      const PureState s = op_to_state(cartan_unitary(p));
      SolverSettings solver = base;
      solver.seed = mix_seed(cfg.seed, row);
      csv << fmt12(p.x) << ',' << fmt12(p.y) << ',' << fmt12(p.z) << ',' << fmt12(gme_ame(s)) << ','
          << fmt12(gme_ame_closed_form(p)) << ',' << fmt12(scott(s, 2)) << ',' << fmt12(scott_closed_form(p))
          << ',' << fmt12(polygon_measure(s, solver)) << '\n';
    }
    emit(opts.csv_path, csv.str(), out);
  });
}

int cmd_perm(const PermOptions& opts, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.d != 2 && opts.d != 3) throw InputError("perm: --d must be 2 or 3");
    if (opts.enphase != "none" && opts.enphase != "binary") throw InputError("perm: --enphase must be none or binary");
    if (opts.enphase == "binary" && opts.d != 2) {
      throw InputError("perm: --enphase binary is only supported with --d 2");
    }
    const auto measures = parse_measures(opts.measures, {"gme_ame", "scott", "polygon"});
    if (measures.count("polygon") && opts.d != 2) throw InputError("perm: polygon needs --d 2");
    if (!(cfg.class_eps > 0.0)) throw InputError("perm: classification tolerance must be positive");

    SweepOptions sw;
    sw.d = opts.d;
    sw.gme_ame = measures.count("gme_ame") > 0;
    sw.scott = measures.count("scott") > 0;
    sw.polygon = measures.count("polygon") > 0;
    sw.enphase = opts.enphase == "binary" ? Enphase::Binary : Enphase::None;
    sw.threads = resolve_threads(cfg.threads);
    sw.solver = solver_settings(cfg);
    const auto records = sweep(sw);

    const bool multiple = measures.size() > 1;
    const int size = opts.d * opts.d;
    nlohmann::json audit;
    for (const auto& name : measures) {
      const SweepMeasure which = name == "gme_ame" ? SweepMeasure::GmeAme
                                 : name == "scott" ? SweepMeasure::Scott
                                                   : SweepMeasure::Polygon;
      const auto values = extract(records, which);
      const bool exact = which != SweepMeasure::Polygon;
      const auto hist = classify(values, ClassifyMode{exact, cfg.class_eps});

      if (!opts.csv_path.empty()) {
        std::ostringstream csv;
        csv << kFormatLine << "\n" << "index,images,value_num,value_den,value_float\n";
        for (std::size_t k = 0; k < records.size(); ++k) {
          const auto& r = records[k];
          csv << r.index << ',' << join_images(unrank_permutation(r.rank, size)) << ',';
          if (values[k].exact) csv << values[k].exact->numerator() << ',' << values[k].exact->denominator();
          else csv << ',';
          csv << ',' << fmt12(values[k].value) << '\n';
        }
        write_text_file(with_measure_suffix(opts.csv_path, name, multiple), csv.str());
      }

      std::ostringstream table;
      table << kFormatLine << "\n" << "value_num,value_den,value_float,count,representative\n";
      for (const auto& e : hist.entries) {
        if (e.exact) table << e.exact->numerator() << ',' << e.exact->denominator();
        else table << ',';
        table << ',' << fmt12(e.value) << ',' << e.count << ',' << e.representative << '\n';
      }
      if (!opts.classes_path.empty()) {
        write_text_file(with_measure_suffix(opts.classes_path, name, multiple), table.str());
      }
      out << name << ": " << hist.entries.size() << " classes over " << hist.total << " states\n";
      if (opts.classes_path.empty() && opts.csv_path.empty()) out << table.str();

      if (opts.d == 3 && sw.enphase == Enphase::None && exact) {
        audit[name] = table_discrepancy(hist, name == "gme_ame" ? reference_gme_qutrit() : reference_scott_qutrit(), name);
      }
    }
    if (!opts.audit_path.empty()) {
      if (opts.d == 2) audit = qubit_permutation_audit();
      audit["format"] = kFormatTag;
      write_text_file(opts.audit_path, std::string(kFormatLine) + "\n" + audit.dump(2) + "\n");
    }
  });
}

int cmd_catalog(const CatalogOptions& opts, const RunConfig&, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.list == !opts.emit.empty()) throw InputError("catalog: give exactly one of --list or --emit");
    if (opts.list) {
      for (const auto& e : catalog_entries()) {
        out << std::left << std::setw(10) << e.name << " params: ";
        if (e.params.empty()) out << "-";
        for (std::size_t k = 0; k < e.params.size(); ++k) out << (k ? "," : "") << e.params[k];
        if (e.takes_n) out << " [--n]";
        if (e.takes_d) out << " [--d]";
        out << "  " << e.description << "\n";
      }
      return;
    }
    const PureState s = named_state({opts.emit, parse_params(opts.params), opts.n, opts.d});
    emit(opts.out_path, state_file_text(s), out);
  });
}

}  // namespace multient
