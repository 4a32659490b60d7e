#include "pegmachine/translate.hpp"

namespace pegmachine::translate {

RoundtripReport roundtrip_check(const peg::CnfGrammar& g, const std::vector<std::string>& words) {
  const pppda::Machine machine = pppda::desugar_hat_moves(peg_to_dppda(g));
  const peg::Grammar extracted = peg::desugar(extract(machine));
  RoundtripReport report;
  for (const auto& w : words) {
    Disagreement d{w, peg::accepts(g.grammar(), w),
                   pppda::run_direct(machine, w).verdict == pppda::Verdict::Accept,
                   peg::accepts(extracted, w)};
    ++report.words_checked;
    if (d.grammar != d.machine || d.grammar != d.extracted) report.disagreements.push_back(std::move(d));
  }
  return report;
}

}  // namespace pegmachine::translate
