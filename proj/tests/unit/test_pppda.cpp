#include "doctest.h"

#include "pegmachine/error.hpp"
#include "pegmachine/pppda.hpp"
#include "pegmachine/translate.hpp"
#include "test_support.hpp"

using namespace pegmachine;
using namespace pegmachine::pppda;
using pegmachine::testing::read_data;

namespace {

bool accepts(const Machine& m, std::string_view w) { return run_direct(m, w).verdict == Verdict::Accept; }

}  // namespace

TEST_CASE("builtin machine language") {
  Machine m = desugar_hat_moves(builtin_anbncn());
  CHECK_FALSE(m.has_hats());
  for (const std::string& w : translate::all_words("abc", 8)) {
    CAPTURE(w);
    CHECK(accepts(m, w) == pegmachine::testing::in_example_machine(w));
  }
  for (const char* w : {"abc", "aabbcc", "aaabbbccc"}) CHECK(accepts(m, w));
  for (const char* w : {"", "aabbbccc", "abcc", "aabc"}) CHECK_FALSE(accepts(m, w));
  // Outside a^n b^n c^n, yet accepted.
  for (const char* w : {"abca", "abcbc", "aabbcca"}) CHECK(accepts(m, w));
}

TEST_CASE("machine text matches the builtin and round-trips") {
  Machine parsed = parse_machine_text(read_data("anbncn.ppda"));
  Machine builtin = builtin_anbncn();
  CHECK(format_machine(parsed) == format_machine(builtin));
  std::string once = format_machine(parsed);
  CHECK(once.rfind("@kind pppda", 0) == 0);
  CHECK(format_machine(parse_machine_text(once)) == once);
}

TEST_CASE("machine text errors") {
  CHECK_THROWS_AS(parse_machine_text("@alphabet \"ab\"\n@initial q\n@bottom Z\n"), SyntaxError);
  CHECK_THROWS_AS(parse_machine_text("@kind dpda\n"), SyntaxError);
  CHECK_THROWS_AS(parse_machine_text("@alphabet \"a\"\n@states q\n@initial q\n@bottom Z\n@stack Z\n"
                                     "q \"a\" Z -> q Z up\n"),
                  Error);
  CHECK_THROWS_AS(parse_machine_text("@alphabet \"a\"\n@states q\n@initial q\n@bottom Z\n@stack Z\n"
                                     "q \"a\" Z -> q Z right\nq \"a\" Z -> q - down\n"),
                  Error);
}

TEST_CASE("pops move the head down, right, or back to the origin") {
  MachineBuilder b;
  b.set_alphabet("ab");
  for (const char* q : {"q", "up", "f"}) b.state(q);
  for (const char* z : {"Z", "A", "B"}) b.symbol(z);
  b.set_initial("q");
  b.set_bottom("Z");
  b.add_final("f");
  b.push_move("q", b.left_end(), "Z", "q", {"A"}, Direction::Right);
  b.push_move("q", b.letter('a'), "A", "q", {"B"}, Direction::Right);
  b.pop_move("q", b.letter('a'), "B", "q", Direction::Right);
  b.pop_move("q", b.letter('b'), "A", "up", Direction::Up);
  b.pop_move("up", b.letter('a'), "Z", "f", Direction::Down);
  Machine m = b.build();

  const std::string expected[] = {
      "(q, Z x 0, 0)",  "(q, AZ x 1:0, 1)", "(q, BAZ x 2:1:0, 2)",
      "(q, AZ x 1:0, 3)", "(up, Z x 0, 1)", "(f, (), 1)",
  };
  Configuration c = initial_configuration(m);
  CHECK(format_configuration(m, c) == expected[0]);
  for (std::size_t i = 1; i < std::size(expected); ++i) {
    StepResult s = step(m, c, "aab");
    REQUIRE(s.next);
    c = *s.next;
    CHECK(format_configuration(m, c) == expected[i]);
  }
  StepResult halt = step(m, c, "aab");
  CHECK_FALSE(halt.next);
  CHECK(halt.halt == HaltReason::EmptyStack);
}

TEST_CASE("builder validation") {
  MachineBuilder b;
  b.set_alphabet("a");
  b.state("q");
  b.symbol("Z");
  b.set_initial("q");
  b.set_bottom("Z");
  b.push_move("q", b.letter('a'), "Z", "q", {"Z"}, Direction::Right);
  CHECK_THROWS_AS(b.push_move("q", b.letter('a'), "Z", "q", {"Z"}, Direction::Down), ValidationError);
  CHECK_NOTHROW(b.add_or_keep(0, b.letter('a'), 0, *b.find(0, b.letter('a'), 0)));
  CHECK_THROWS_AS(b.letter('b'), ValidationError);
  CHECK_THROWS_AS(b.set_alphabet("ab"), ValidationError);

  MachineBuilder left;
  left.set_alphabet("a");
  left.state("q");
  left.symbol("Z");
  left.set_initial("q");
  left.set_bottom("Z");
  left.push_move("q", left.letter('a'), "Z", "q", {"Z"}, Direction::Left);
  CHECK_THROWS_AS(left.build(), ValidationError);
  left.set_two_way(true);
  Machine two = left.build();
  CHECK(two.two_way());
  CHECK_THROWS_AS(normalize(two), ValidationError);
}

TEST_CASE("run_direct verdicts and reasons") {
  Machine m = desugar_hat_moves(builtin_anbncn());
  CHECK(run_direct(m, "abc").verdict == Verdict::Accept);
  RunResult r = run_direct(m, "abcc");
  CHECK(r.verdict == Verdict::Reject);
  CHECK(r.reason == RejectReason::NoTransition);
  CHECK_THROWS_AS(run_direct(m, "abd"), ValidationError);
  CHECK_THROWS_AS(run_direct(builtin_anbncn(), "abc"), ValidationError);

  Machine loop = parse_machine_text(read_data("loop.ppda"));
  RunResult budget = run_direct(loop, "ab", 500);
  CHECK(budget.verdict == Verdict::BudgetExhausted);
  CHECK(budget.steps == 500);
}

TEST_CASE("trace events replay the run") {
  Machine m = desugar_hat_moves(builtin_anbncn());
  std::vector<TraceEvent> events;
  RunResult r = run_direct(m, "aabbcc", std::nullopt, [&](const TraceEvent& e) { events.push_back(e); });
  REQUIRE(events.size() == r.steps);
  Configuration c = initial_configuration(m);
  for (const TraceEvent& e : events) {
    CHECK(e.before == c);
    StepResult s = step(m, c, "aabbcc");
    REQUIRE(s.next);
    CHECK(*s.next == e.after);
    CHECK((e.kind == TraceEvent::Kind::Pop) == e.popped.has_value());
    c = e.after;
  }
  CHECK(c == r.last);
}

TEST_CASE("normalize keeps the language and satisfies the normal form") {
  for (const Machine& m : {desugar_hat_moves(builtin_anbncn()), desugar_hat_moves(parse_machine_text(read_data("loop.ppda")))}) {
    Machine n = normalize(m);
    CHECK_FALSE(normal_form_violation(n));
    for (const std::string& w : translate::all_words(m.alphabet(), 6)) {
      RunResult a = run_direct(m, w, 20000), b = run_direct(n, w, 20000);
      if (a.verdict == Verdict::BudgetExhausted) {
        CHECK(b.verdict != Verdict::Accept);
        continue;
      }
      CHECK((a.verdict == Verdict::Accept) == (b.verdict == Verdict::Accept));
    }
  }
  CHECK(normal_form_violation(builtin_anbncn()));
}

TEST_CASE("hat desugaring names its symbols after the move") {
  Machine d = desugar_hat_moves(builtin_anbncn());
  CHECK(d.find_state("hat:q1:a:Z0"));
  CHECK(d.find_symbol("hat:q1:a:Z0"));
  CHECK(d.states().size() == builtin_anbncn().states().size() + 1);
}

TEST_CASE("default step limit scales with the input") {
  Machine m = builtin_anbncn();
  CHECK(default_step_limit(m, 10) > default_step_limit(m, 1));
}
