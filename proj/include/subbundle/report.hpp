#pragma once

#include <string>

#include "json.hpp"
#include "subbundle/bundle.hpp"
#include "subbundle/family_file.hpp"

namespace subbundle {

/// The outcome of one CLI command. The document is the single source for
/// both renderings; the text form is generated from it.
class Report {
 public:
  explicit Report(nlohmann::json doc) : doc_(std::move(doc)) {}

  const nlohmann::json& document() const noexcept { return doc_; }
  nlohmann::json& document() noexcept { return doc_; }

  /// Pretty-printed JSON with a trailing newline.
  std::string render_json() const;
  std::string render_text() const;

 private:
  nlohmann::json doc_;
};

nlohmann::json fiber_json(const FiberReport& report);
nlohmann::json certificate_json(const GlobalCertificate& cert);

Report analysis_report(const std::string& source, const FamilyFile& file, const Verdict& verdict);
Report fiber_command_report(const std::string& source, const FamilyFile& file, const FiberReport& fiber);
Report kernel_report(const std::string& source, const FamilyFile& file, const KernelCheck& check);
Report closure_report(const std::string& source, const FamilyFile& file, const Polynomial& g,
                      const ClosureResult& result);

/// `VERDICT: NOT A SUB-BUNDLE (...)`
std::string verdict_line(VerdictKind kind, const std::string& summary);

}  // namespace subbundle
