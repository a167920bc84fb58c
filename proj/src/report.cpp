#include "subbundle/report.hpp"

#include <sstream>

namespace subbundle {

using nlohmann::json;

namespace {

json strings(const std::vector<Polynomial>& polys) {
  json out = json::array();
  for (const auto& p : polys) out.push_back(p.to_string());
  return out;
}

json strings(const std::vector<FieldElement>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(v.to_string());
  return out;
}

json matrix(const ScalarMatrix& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(strings(row));
  return out;
}

json matrix(const PolyMatrix& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(strings(row));
  return out;
}

std::string ideal_text(const json& gens) {
  std::string out = "⟨";
  if (gens.empty()) out += "0";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i != 0) out += ", ";
    out += gens[i].get<std::string>();
  }
  return out + "⟩";
}

std::string row_text(const json& row) {
  std::string out = "[";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i != 0) out += ", ";
    out += row[i].get<std::string>();
  }
  return out + "]";
}

json family_header(const std::string& source, const FamilyFile& file, const std::string& command) {
  const auto& spec = file.spec;
  const auto& names = spec.context()->names();
  const auto m = static_cast<std::ptrdiff_t>(spec.base_dim());
  return json{{"command", command},
              {"file", source},
              {"field", spec.field().to_string()},
              {"base_vars", std::vector<std::string>(names.begin(), names.begin() + m)},
              {"fiber_vars", std::vector<std::string>(names.begin() + m, names.end())},
              {"rank", spec.expected_dim()},
              {"notices", spec.notices()}};
}

std::string yes_no(const json& b) { return b.get<bool>() ? "yes" : "no"; }

void header_text(std::ostream& os, const json& d) {
  os << "family: " << d["file"].get<std::string>() << " over " << d["field"].get<std::string>() << '\n';
  os << "base variables:";
  for (const auto& v : d["base_vars"]) os << ' ' << v.get<std::string>();
  os << "; fibre variables:";
  for (const auto& v : d["fiber_vars"]) os << ' ' << v.get<std::string>();
  os << "; rank d = " << d["rank"].get<std::size_t>() << '\n';
  for (const auto& n : d["notices"]) os << "notice: " << n.get<std::string>() << '\n';
}

void fiber_text(std::ostream& os, const json& f, const std::string& indent) {
  os << indent << f["point"].get<std::string>();
  if (!f["parameter"].is_null()) {
    os << " [" << f["parameter"]["name"].get<std::string>() << " = " << f["parameter"]["value"].get<std::string>()
       << "]";
  }
  os << ": ideal " << ideal_text(f["fiber_gb"]);
  os << ", dim " << (f["fiber_dim"].is_null() ? std::string("empty") : std::to_string(f["fiber_dim"].get<int>()));
  os << ", tangent dim " << f["tangent_dim"].get<std::size_t>();
  os << ", " << f["status"].get<std::string>();
  if (f["status"] == "ReducedLinear") {
    os << ", span";
    if (f["tangent_basis"].empty()) os << " {0}";
    for (const auto& v : f["tangent_basis"]) {
      const auto row = row_text(v);
      os << " (" << row.substr(1, row.size() - 2) << ")";
    }
  }
  os << '\n';
  if (!f["cone_ok"].get<bool>()) os << indent << "  not closed under scaling\n";
  for (const auto& n : f["notes"]) os << indent << "  note: " << n.get<std::string>() << '\n';
}

void analyze_text(std::ostream& os, const json& d) {
  header_text(os, d);
  const auto& cert = d["certificate"];
  os << "J(x) at y = 0:\n";
  for (const auto& row : cert["jacobian"]) os << "  " << row_text(row) << '\n';
  os << "fibres:\n";
  for (const auto& f : d["fibers"]) fiber_text(os, f, "  ");
  os << "certificate (target rank r = " << cert["target_rank"].get<std::size_t>() << "):\n";
  os << "  rank <= r on X: " << yes_no(cert["rank_upper_ok"]) << '\n';
  for (const auto& m : cert["offending_minors"]) os << "    minor not vanishing on X: " << m.get<std::string>() << '\n';
  os << "  rank >= r on X: " << yes_no(cert["rank_lower_ok"]) << '\n';
  if (!cert["witness"].is_null()) os << "    rank-drop locus: V" << ideal_text(cert["witness"]) << '\n';
  os << "  F = ker(x, y) -> (x, J(x)y): " << yes_no(cert["kernel_match_ok"]) << '\n';
  for (const auto& n : cert["notes"]) os << "  note: " << n.get<std::string>() << '\n';
  bool witness_header = false;
  for (const auto& w : d["witnesses"]) {
    if (w["kind"] != "fiber" || w["source"] != "rank-drop") continue;
    if (!witness_header) os << "rank-drop fibres:\n";
    witness_header = true;
    fiber_text(os, w["fiber"], "  ");
  }
  for (const auto& line : d["verdict"]["narrative"]) os << "- " << line.get<std::string>() << '\n';
  os << d["verdict"]["line"].get<std::string>() << '\n';
}

void fiber_command_text(std::ostream& os, const json& d) {
  header_text(os, d);
  const auto& f = d["fiber"];
  fiber_text(os, f, "");
  os << "J(point):\n";
  for (const auto& row : f["jacobian"]) os << "  " << row_text(row) << '\n';
  os << "tangent space basis:";
  if (f["tangent_basis"].empty()) os << " (zero)";
  for (const auto& v : f["tangent_basis"]) os << ' ' << row_text(v);
  os << '\n';
  os << "reduced: " << yes_no(f["reduced"]) << '\n';
}

void kernel_text(std::ostream& os, const json& d) {
  header_text(os, d);
  os << "map:";
  for (const auto& m : d["maps"]) os << ' ' << m["var"].get<std::string>() << " -> " << m["image"].get<std::string>() << ';';
  os << '\n';
  os << "claimed: " << ideal_text(d["claimed"]) << '\n';
  os << "computed kernel: " << ideal_text(d["kernel"]) << '\n';
  os << "claimed generators vanish under the map: " << yes_no(d["claimed_vanish"]) << '\n';
  os << "kernel presentation " << (d["verified"].get<bool>() ? "VERIFIED" : "REFUTED") << '\n';
}

void closure_text(std::ostream& os, const json& d) {
  header_text(os, d);
  os << "removing V(" << d["g"].get<std::string>() << ")\n";
  os << "closure ideal: " << ideal_text(d["closure"]) << '\n';
  for (const auto& p : d["points"]) {
    os << "  " << p["point"].get<std::string>() << ": ";
    if (!p["compared"].get<bool>()) {
      os << "not compared\n";
    } else {
      os << (p["match"].get<bool>() ? "fibre radicals agree" : "fibre radicals DIFFER") << '\n';
    }
  }
  for (const auto& n : d["notes"]) os << "note: " << n.get<std::string>() << '\n';
  os << "fibers_match: " << (d["fibers_match"].get<bool>() ? "true" : "false") << '\n';
}

}  // namespace

std::string verdict_line(VerdictKind kind, const std::string& summary) {
  std::string label;
  switch (kind) {
    case VerdictKind::Subbundle: label = "SUB-BUNDLE"; break;
    case VerdictKind::NotSubbundle: label = "NOT A SUB-BUNDLE"; break;
    case VerdictKind::HypothesisViolated: label = "HYPOTHESIS VIOLATED"; break;
    case VerdictKind::Inconclusive: label = "INCONCLUSIVE"; break;
  }
  return "VERDICT: " + label + " (" + summary + ")";
}

json fiber_json(const FiberReport& r) {
  json parameter = nullptr;
  if (r.point.parameter) {
    parameter = json{{"name", *r.point.parameter}, {"value", r.point.parameter_value->to_string()}};
  }
  json basis = json::array();
  for (const auto& v : r.tangent_basis) basis.push_back(strings(v));
  return json{{"point", r.point.label()},
              {"coordinates", strings(r.point.coordinates)},
              {"parameter", parameter},
              {"fiber_gb", strings(r.fiber_gb)},
              {"fiber_dim", r.fiber_dim ? json(*r.fiber_dim) : json(nullptr)},
              {"jacobian", matrix(r.jacobian)},
              {"jacobian_rank", r.jacobian_rank},
              {"tangent_dim", r.tangent_dim},
              {"tangent_basis", basis},
              {"cone_ok", r.cone_ok},
              {"reduced", r.reduced},
              {"status", to_string(r.status)},
              {"notes", r.notes}};
}

json certificate_json(const GlobalCertificate& c) {
  return json{{"expected_dim", c.expected_dim},
              {"target_rank", c.target_rank},
              {"jacobian", matrix(c.jacobian)},
              {"rank_upper_ok", c.rank_upper_ok},
              {"rank_lower_ok", c.rank_lower_ok},
              {"kernel_match_ok", c.kernel_match_ok},
              {"complete", c.complete()},
              {"offending_minors", strings(c.offending_minors)},
              {"witness", c.witness ? strings(c.witness->groebner_basis()) : json(nullptr)},
              {"notes", c.notes}};
}

Report analysis_report(const std::string& source, const FamilyFile& file, const Verdict& v) {
  json d = family_header(source, file, "analyze");
  json fibers = json::array();
  for (const auto& f : v.fibers) fibers.push_back(fiber_json(f));
  d["fibers"] = fibers;
  d["certificate"] = certificate_json(v.certificate);

  json witnesses = json::array();
  for (const auto& f : v.fibers) {
    if (f.status != FiberStatus::ReducedLinear) {
      witnesses.push_back(json{{"kind", "fiber"}, {"source", "sampled"}, {"point", f.point.label()},
                               {"status", to_string(f.status)}, {"fiber", fiber_json(f)}});
    }
  }
  for (const auto& f : v.witness_fibers) {
    witnesses.push_back(json{{"kind", "fiber"}, {"source", "rank-drop"}, {"point", f.point.label()},
                             {"status", to_string(f.status)}, {"fiber", fiber_json(f)}});
  }
  if (v.certificate.witness) {
    witnesses.push_back(json{{"kind", "rank_drop_locus"}, {"ideal", strings(v.certificate.witness->groebner_basis())}});
  }
  for (const auto& m : v.certificate.offending_minors) {
    witnesses.push_back(json{{"kind", "offending_minor"}, {"minor", m.to_string()}});
  }
  d["witnesses"] = witnesses;
  d["verdict"] = json{{"kind", to_string(v.kind)},
                      {"summary", v.summary},
                      {"line", verdict_line(v.kind, v.summary)},
                      {"narrative", v.narrative}};
  return Report(std::move(d));
}

Report fiber_command_report(const std::string& source, const FamilyFile& file, const FiberReport& fiber) {
  json d = family_header(source, file, "fiber");
  d["fiber"] = fiber_json(fiber);
  return Report(std::move(d));
}

Report kernel_report(const std::string& source, const FamilyFile& file, const KernelCheck& check) {
  json d = family_header(source, file, "kernel-check");
  json maps = json::array();
  for (const auto& [var, image] : file.kernel_check->maps) {
    maps.push_back(json{{"var", var}, {"image", image.to_string()}});
  }
  d["maps"] = maps;
  d["claimed"] = strings(file.kernel_check->claimed);
  d["kernel"] = strings(check.kernel);
  d["verified"] = check.verified;
  d["claimed_vanish"] = check.claimed_vanish;
  return Report(std::move(d));
}

Report closure_report(const std::string& source, const FamilyFile& file, const Polynomial& g,
                      const ClosureResult& result) {
  json d = family_header(source, file, "closure");
  d["g"] = g.to_string();
  d["closure"] = strings(result.closure.groebner_basis());
  json points = json::array();
  for (const auto& p : result.points) {
    points.push_back(json{{"point", p.point.label()}, {"compared", p.compared}, {"match", p.match}});
  }
  d["points"] = points;
  d["fibers_match"] = result.fibers_match;
  d["empty_family"] = result.empty_family;
  d["notes"] = result.notes;
  return Report(std::move(d));
}

std::string Report::render_json() const { return doc_.dump(2) + "\n"; }

std::string Report::render_text() const {
  std::ostringstream os;
  const auto command = doc_.value("command", std::string());
  if (command == "analyze") {
    analyze_text(os, doc_);
  } else if (command == "fiber") {
    fiber_command_text(os, doc_);
  } else if (command == "kernel-check") {
    kernel_text(os, doc_);
  } else if (command == "closure") {
    closure_text(os, doc_);
  } else {
    os << doc_.dump(2) << '\n';
  }
  return os.str();
}

}  // namespace subbundle
