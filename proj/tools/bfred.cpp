#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bfred/bfredholm.hpp"
#include "bfred/errors.hpp"
#include "bfred/family.hpp"
#include "bfred/fredholm.hpp"
#include "bfred/io.hpp"
#include "bfred/pathconnect.hpp"
#include "bfred/weyl.hpp"

namespace {

using bfred::io::Json;

/* Text rendering: one "key: value" line per scalar, nested values
 * indented, arrays of scalars inline.  Deterministic because the JSON
 * object keys are already sorted. */
bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool all_scalar(const Json& array) {
  for (const Json& e : array)
    if (!is_scalar(e)) return false;
  return true;
}

void render_text(const Json& j, std::ostream& os, const std::string& indent) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_scalar(value)) {
        os << indent << key << ": " << scalar_text(value) << "\n";
      } else if (value.is_array() && all_scalar(value)) {
        os << indent << key << ":";
        for (const Json& e : value) os << " " << scalar_text(e);
        os << "\n";
      } else {
        os << indent << key << ":\n";
        render_text(value, os, indent + "  ");
      }
    }
  } else if (j.is_array()) {
    for (const Json& e : j) {
      if (is_scalar(e)) {
        os << indent << "- " << scalar_text(e) << "\n";
      } else {
        os << indent << "-\n";
        render_text(e, os, indent + "  ");
      }
    }
  } else {
    os << indent << scalar_text(j) << "\n";
  }
}

struct Options {
  std::string format = "json";
  long grid = 16;
  long fs_size = 256;
  double fs_tol = 1e-8;
  long trials = 0;
  unsigned long seed = 1;
  bool fredholm_mode = false;
};

void emit(const Json& j, const Options& opt) {
  if (opt.format == "text")
    render_text(j, std::cout, "");
  else
    std::cout << bfred::io::dump(j);
}

Json load_document(const std::string& path) {
  return bfred::io::parse_text(bfred::io::load_file(path));
}

int run_op_index(const std::string& file, const Options& opt) {
  bfred::BlockOperator op = bfred::io::operator_from_json(load_document(file));
  bfred::FredholmVerdict verdict = bfred::fredholm_verdict(op);
  Json out = bfred::io::to_json(verdict);
  if (!verdict.is_fredholm) {
    if (verdict.reason == bfred::NotFredholmReason::zero_symbol_infinite_defect)
      out["hint"] = "try op-bindex";
    emit(out, opt);
    return 2;
  }
  out.update(bfred::io::to_json(
      bfred::nullity_defect(op, bfred::CountMode::exact, opt.fs_size, opt.fs_tol)));
  emit(out, opt);
  return 0;
}

int run_op_bindex(const std::string& file, const Options& opt) {
  bfred::BlockOperator op = bfred::io::operator_from_json(load_document(file));
  emit(bfred::io::to_json(bfred::bclassify(op)), opt);
  return 0;
}

int run_op_dis(const std::string& file, const Options& opt) {
  bfred::BlockOperator op = bfred::io::operator_from_json(load_document(file));
  std::optional<long> d = bfred::dis(op);
  Json out = Json::object();
  out["dis"] = d ? Json(*d) : Json("unknown");
  emit(out, opt);
  return 0;
}

int run_op_spectral(const std::string& file, const Options& opt) {
  Json doc = load_document(file);
  bfred::SpectralReport report;
  if (doc.is_object() && doc.contains("blocks")) {
    bfred::BlockOperator op = bfred::io::operator_from_json(doc);
    if (op.blocks.size() != 1 || !std::holds_alternative<bfred::FiniteBlock>(op.blocks[0]))
      bfred::fail("non_representable_spectrum",
                  "spectral analysis of block operators needs a single finite block");
    report = bfred::spectral_report_finite(std::get<bfred::FiniteBlock>(op.blocks[0]).matrix);
  } else {
    report = bfred::spectral_report(bfred::io::normal_from_json(doc));
  }
  emit(bfred::io::to_json(report), opt);
  return 0;
}

int run_family_index(const std::string& file, const Options& opt) {
  bfred::OperatorFamily fam = bfred::io::family_from_json(load_document(file));
  bfred::IndexVector u = bfred::family_index(fam);
  Json out = bfred::io::index_vector_to_json(u, fam.complex);
  if (opt.trials > 0)
    out["local_constancy"] =
        bfred::io::to_json(bfred::local_constancy_check(fam, opt.trials, opt.seed));
  emit(out, opt);
  return 0;
}

int run_family_weyl(const std::string& file, const Options& opt) {
  Json doc = load_document(file);
  Json out = Json::object();
  if (bfred::io::describes_normal_family(doc)) {
    bfred::NormalFamily fam = bfred::io::normal_family_from_json(doc);
    out = bfred::io::to_json(bfred::check_weyl_browder(fam));
    out["report"] = bfred::io::to_json(bfred::family_spectral_report(fam));
  } else {
    bfred::OperatorFamily fam = bfred::io::family_from_json(doc);
    out["weyl_family"] = bfred::is_weyl_family(fam);
  }
  emit(out, opt);
  return 0;
}

int run_family_synthesize(const std::string& file, const Options& opt) {
  Json doc = load_document(file);
  bfred::ParamComplex complex = bfred::io::complex_from_json(doc);
  if (!doc.is_object() || !doc.contains("indices") || !doc.at("indices").is_object())
    bfred::fail("malformed_document", "indices: expected an object keyed by vertex");
  auto components = bfred::connected_components(complex);
  /* Entries may be keyed by any member vertex; fold them onto the
   * component representative and reject disagreements. */
  std::map<std::string, std::string> rep_of;
  for (const auto& [rep, members] : components)
    for (const std::string& v : members) rep_of[v] = rep;
  bfred::IndexVector u;
  for (const auto& [v, value] : doc.at("indices").items()) {
    if (!rep_of.count(v))
      bfred::fail("malformed_document", "indices: unknown vertex '" + v + "'");
    if (!value.is_number_integer())
      bfred::fail("malformed_document", "indices." + v + ": expected an integer");
    long n = value.get<long>();
    auto [it, fresh] = u.entries.emplace(rep_of.at(v), n);
    if (!fresh && it->second != n)
      bfred::fail("malformed_document",
                  "indices: conflicting values within the component of '" + v + "'");
  }
  bfred::OperatorFamily fam = bfred::synthesize_family(complex, u);
  emit(bfred::io::to_json(fam), opt);
  return 0;
}

int run_homotopy_check(const std::string& hfile, const std::string& sfile,
                       const std::string& tfile, const Options& opt) {
  bfred::OperatorFamily h = bfred::io::family_from_json(load_document(hfile));
  bfred::OperatorFamily s = bfred::io::family_from_json(load_document(sfile));
  bfred::OperatorFamily t = bfred::io::family_from_json(load_document(tfile));
  bfred::HomotopyReport report = bfred::homotopy_check(h, s, t);
  emit(bfred::io::to_json(report, s.complex), opt);
  return 0;
}

int run_path_tbp(const Options& opt) {
  bfred::PathWithReport demo = bfred::tbp_demo(opt.grid);
  Json out = bfred::io::to_json(demo.path);
  out["report"] = bfred::io::to_json(demo.report);
  emit(out, opt);
  return 0;
}

int run_path_connect(const std::string& afile, const std::string& bfile, const Options& opt) {
  bfred::BlockOperator a = bfred::io::operator_from_json(load_document(afile));
  bfred::BlockOperator b = bfred::io::operator_from_json(load_document(bfile));
  bfred::ConnectMode mode = opt.fredholm_mode ? bfred::ConnectMode::fredholm_preserving
                                              : bfred::ConnectMode::bfredholm;
  bfred::OperatorPath path = bfred::connect_equal_index(a, b, opt.grid, mode);
  Json out = bfred::io::to_json(path);
  out["report"] = bfred::io::to_json(bfred::verify_path(path));
  emit(out, opt);
  return 0;
}

int run_path_verify(const std::string& file, const Options& opt) {
  bfred::OperatorPath path = bfred::io::path_from_json(load_document(file));
  emit(bfred::io::to_json(bfred::verify_path(path)), opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Fredholm and B-Fredholm indices of block operators and families"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--grid", opt.grid, "path sample count per segment")
      ->check(CLI::PositiveNumber);
  app.add_option("--fs-size", opt.fs_size, "finite-section truncation size")
      ->check(CLI::PositiveNumber);
  app.add_option("--fs-tol", opt.fs_tol, "finite-section singular value threshold")
      ->check(CLI::PositiveNumber);
  app.add_option("--trials", opt.trials, "randomized trials (0 = skip)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opt.seed, "random seed");
  app.add_flag("--fredholm", opt.fredholm_mode, "keep every path sample Fredholm");

  std::string file, file2, file3;
  CLI::App* op_index = app.add_subcommand("op-index", "Fredholm verdict and index");
  op_index->add_option("file", file)->required();
  CLI::App* op_bindex = app.add_subcommand("op-bindex", "B-Fredholm verdict and index");
  op_bindex->add_option("file", file)->required();
  CLI::App* op_dis = app.add_subcommand("op-dis", "degree of stable iteration");
  op_dis->add_option("file", file)->required();
  CLI::App* op_spectral =
      app.add_subcommand("op-spectral", "spectrum, Weyl spectrum, and isolated points");
  op_spectral->add_option("file", file)->required();
  CLI::App* family_index = app.add_subcommand("family-index", "per-component index vector");
  family_index->add_option("file", file)->required();
  CLI::App* family_weyl =
      app.add_subcommand("family-weyl", "Weyl and Browder theorems for a family");
  family_weyl->add_option("file", file)->required();
  CLI::App* family_synthesize =
      app.add_subcommand("family-synthesize", "build a family realizing an index vector");
  family_synthesize->add_option("file", file)->required();
  CLI::App* homotopy_check =
      app.add_subcommand("homotopy-check", "verify a homotopy between two families");
  homotopy_check->add_option("homotopy", file)->required();
  homotopy_check->add_option("source", file2)->required();
  homotopy_check->add_option("target", file3)->required();
  CLI::App* path_tbp =
      app.add_subcommand("path-tbp", "the discontinuous-index demonstration path");
  CLI::App* path_connect =
      app.add_subcommand("path-connect", "connect two equal-index operators");
  path_connect->add_option("source", file)->required();
  path_connect->add_option("target", file2)->required();
  CLI::App* path_verify = app.add_subcommand("path-verify", "classify every path sample");
  path_verify->add_option("file", file)->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (*op_index) return run_op_index(file, opt);
    if (*op_bindex) return run_op_bindex(file, opt);
    if (*op_dis) return run_op_dis(file, opt);
    if (*op_spectral) return run_op_spectral(file, opt);
    if (*family_index) return run_family_index(file, opt);
    if (*family_weyl) return run_family_weyl(file, opt);
    if (*family_synthesize) return run_family_synthesize(file, opt);
    if (*homotopy_check) return run_homotopy_check(file, file2, file3, opt);
    if (*path_tbp) return run_path_tbp(opt);
    if (*path_connect) return run_path_connect(file, file2, opt);
    if (*path_verify) return run_path_verify(file, opt);
  } catch (const bfred::Error& e) {
    Json err = Json::object();
    err["error"] = Json::object();
    err["error"]["code"] = e.code();
    err["error"]["message"] = e.what();
    emit(err, opt);
    return e.code() == "malformed_document" || e.code() == "io_error" ? 1 : 2;
  }
  return 1;
}
