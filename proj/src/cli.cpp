#include "subbundle/cli.hpp"

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subbundle/errors.hpp"
#include "subbundle/report.hpp"

namespace subbundle::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<FieldElement> parse_point(const std::string& text, const FieldSpec& field) {
  std::vector<FieldElement> coords;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw ValidationError("empty coordinate in --point");
    try {
      coords.push_back(FieldElement::parse(item.substr(first, last - first + 1), field));
    } catch (const std::invalid_argument&) {
      throw ValidationError("bad coordinate '" + item + "' in --point");
    }
  }
  return coords;
}

void emit(const Report& report, bool json, std::ostream& out) {
  out << (json ? report.render_json() : report.render_text());
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide whether a polynomial family of linear subspaces is a sub-bundle"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  std::string file;
  std::string point_text;
  bool no_parallel = false;

  auto* analyze = app.add_subcommand("analyze", "full verdict pipeline");
  analyze->add_option("FILE", file)->required();
  analyze->add_flag("--json", json, "machine-readable output");
  analyze->add_flag("--sequential", no_parallel, "analyse fibres one at a time");

  auto* fiber = app.add_subcommand("fiber", "analyse a single fibre");
  fiber->add_option("FILE", file)->required();
  fiber->add_option("--point", point_text, "base point c1,...,cm")->required();
  fiber->add_flag("--json", json, "machine-readable output");

  auto* kernel = app.add_subcommand("kernel-check", "verify the kernel_check block");
  kernel->add_option("FILE", file)->required();
  kernel->add_flag("--json", json, "machine-readable output");

  auto* closure = app.add_subcommand("closure", "run the closure block");
  closure->add_option("FILE", file)->required();
  closure->add_flag("--json", json, "machine-readable output");

  auto* format = app.add_subcommand("format", "print the canonical form of a family file");
  format->add_option("FILE", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto start = Clock::now();
    const FamilyFile fam = load_family_file(file);
    const double parse_ms = elapsed_ms(start);

    if (format->parsed()) {
      out << render_family_file(fam);
      return 0;
    }

    const auto run_start = Clock::now();
    std::optional<Report> report;
    if (analyze->parsed()) {
      VerdictOptions options;
      options.parallel = !no_parallel;
      report = analysis_report(file, fam, verdict(fam.spec, options));
    } else if (fiber->parsed()) {
      BasePoint point{parse_point(point_text, fam.spec.field()), std::nullopt, std::nullopt};
      if (point.coordinates.size() != fam.spec.base_dim()) {
        throw ValidationError("--point needs " + std::to_string(fam.spec.base_dim()) + " coordinates");
      }
      if (!fam.spec.on_base(point.coordinates)) {
        throw ValidationError("point " + point.label() + " is not on the base");
      }
      report = fiber_command_report(file, fam, analyze_fiber(fam.spec, point));
    } else if (kernel->parsed()) {
      if (!fam.kernel_check) throw ValidationError(file + " has no kernel_check block");
      std::map<std::string, Polynomial> images(fam.kernel_check->maps.begin(), fam.kernel_check->maps.end());
      report = kernel_report(file, fam,
                             check_kernel_presentation(fam.spec.context(), images, fam.kernel_check->claimed,
                                                       fam.spec.limits()));
    } else {
      if (!fam.closure_by) throw ValidationError(file + " has no closure block");
      report = closure_report(file, fam, *fam.closure_by, closure_check(fam.spec, *fam.closure_by));
    }
    report->document()["timings_ms"] = {{"parse", parse_ms}, {"run", elapsed_ms(run_start)}};
    emit(*report, json, out);
    return 0;
  } catch (const ParseError& e) {
    err << file << ":" << e.what() << '\n';
    return 1;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace subbundle::cli
