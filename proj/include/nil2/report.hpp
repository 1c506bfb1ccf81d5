#pragma once

#include <json.hpp>

#include "nil2/classify.hpp"
#include "nil2/construct.hpp"
#include "nil2/parser.hpp"

// JSON reports for the CLI.  Reports are deterministic for fixed inputs and
// seed: nlohmann's object keys are ordered, and the only run-dependent block
// is "timings".

namespace nil2 {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "nil2 0.1.0";

std::string order_string(const FpGroup& g);

Json elt_json(const FpGroup& g, const Elt& e);
Json presentation_json(const NamedPresentation& np, const FpGroup& g);
Json closure_report_json(const FpGroup& g, const ClosureReport& rep,
                         bool include_pairs);
Json base_report_json(const FpGroup& g, const BaseReport& rep);
Json dominion_json(const FpGroup& g, const DominionResult& dr);
Json embed_check_json(const EmbedCheck& chk);
Json witness_json(const WitnessExtension& w);
Json even_report_json(const EvenReport& rep);

class ReportBuilder {
 public:
  ReportBuilder(std::string command, u64 cap, u32 seed);

  void add_input(const NamedPresentation& np, const FpGroup& g);
  void add_verdict(const std::string& name, bool value, std::string detail = "");
  void add_verdict(const std::string& name, const std::string& value,
                   std::string detail = "");
  void add_certificate(Json c);
  void set_trace(Json t);
  void note_skipped(const std::string& what);  // oracle skipped for size

  Json finish(double total_ms);

 private:
  Json j_;
};

}  // namespace nil2
