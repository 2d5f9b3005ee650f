#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rcam/crumble/crumble.hpp"
#include "rcam/error.hpp"
#include "rcam/lambda/beta.hpp"
#include "rcam/lambda/parser.hpp"
#include "rcam/machine/machine.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"
#include "support/invariants.hpp"

using namespace rcam::machine;
using rcam::crumble::EntryId;
using rcam::lambda::alpha_eq;
using rcam::lambda::parse;
using rcam::lambda::size_term;
using rcam::lambda::Term;

namespace {

const char* kExample = "(\\x. x (x x)) \\y. y";

EntryId z(std::uint64_t n) { return EntryId(n); }

std::string render_state(const Machine& m) {
    auto ids = m.entries();
    return rcam::crumble::render(m.store(), m.store().bite(ids.front()),
                                 std::span<const EntryId>(ids).subspan(1));
}

std::vector<Term> property_terms() {
    std::vector<Term> out;
    for (auto& c : rcam::testing::load_corpus()) out.push_back(c.term);
    rcam::testing::TermGen gen(5);
    for (int i = 0; i < 300; ++i) out.push_back(gen.closed(20));
    return out;
}

}  // namespace

TEST_CASE("initialization") {
    auto m = Machine::from_term(parse(kExample));
    CHECK(m.active_length() == 3);
    CHECK(m.evaluated_length() == 0);
    CHECK(m.history().empty());
    CHECK(m.is_initial());
    CHECK_FALSE(m.is_final());
    CHECK(m.active() == std::vector<EntryId>{EntryId::star(), z(1), z(2)});
    CHECK(m.counters() == StepCounters{});
    CHECK(alpha_eq(m.read_back(), parse(kExample)));

    auto v = Machine::from_term(parse("\\y. y"));
    CHECK(v.active_length() == 1);

    rcam::crumble::Store s;
    auto open = rcam::crumble::translate(s, parse("x y"));
    CHECK_THROWS_AS(Machine(std::move(s), open), rcam::OpenTermError);
}

TEST_CASE("the reference example step by step") {
    auto m = Machine::from_term(parse(kExample));
    std::vector<Rule> rules;
    while (auto r = m.step_forward()) rules.push_back(*r);
    CHECK(rules == std::vector<Rule>{Rule::sea, Rule::sea, Rule::m1, Rule::m2, Rule::m2});
    CHECK(m.is_final());
    CHECK(m.active_length() == 0);
    CHECK(m.evaluated() == std::vector<EntryId>{EntryId::star(), z(4), z(1), z(2)});
    using H = HistoryEntry;
    CHECK(m.history() == std::vector<H>{H::search(), H::search(), H::principal(z(1), z(2)),
                                        H::principal(z(2), z(2)), H::principal(z(2), z(4))});
    CHECK(m.counters().principal == 3);
    CHECK(m.counters().search == 2);
    CHECK(m.read_back() == parse("\\y. y"));
    CHECK(render_state(m) == "[*<-\\y. *<-y][z4<-\\y. *<-y][z1<-\\x. [*<-x z3][z3<-x x]][z2<-\\y. *<-y]");
    CHECK_FALSE(m.step_forward());
    CHECK(m.forward_rule() == std::nullopt);
    CHECK(m.backward_rule() == Rule::m2_b);
}

TEST_CASE("five backward steps return to the initial state") {
    auto m = Machine::from_term(parse(kExample));
    auto init = m.image();
    m.run_forward(100);
    std::vector<Rule> back;
    while (auto r = m.step_backward()) back.push_back(*r);
    CHECK(back == std::vector<Rule>{Rule::m2_b, Rule::m2_b, Rule::m1_b, Rule::sea_b, Rule::sea_b});
    CHECK(m.image() == init);
    CHECK(m.store().next_ordinal() == 4);
    CHECK(m.is_initial());
    CHECK_FALSE(m.step_backward());
    CHECK(m.backward_rule() == std::nullopt);
}

TEST_CASE("run_forward and counters") {
    auto m = Machine::from_term(parse(kExample));
    CHECK(m.run_forward(100) == RunOutcome::final);
    CHECK(m.counters().principal == 3);
    CHECK(m.counters().search == 2);
    CHECK(m.history_max() == 5);
    // [z1<-\x. [*<-x z3][z3<-x x]] is copied once; its body has size 4
    CHECK(m.counters().copy_work == 4);

    auto v = Machine::from_term(parse("\\x. x"));
    CHECK(v.run_forward(100) == RunOutcome::final);
    CHECK(v.counters() == StepCounters{0, 1, 0, 0});

    auto omega = Machine::from_term(parse("(\\x. x x) (\\x. x x)"));
    CHECK(omega.run_forward(50) == RunOutcome::fuel_exhausted);
    CHECK(omega.history().size() == 50);
    CHECK(rcam::testing::violated_invariant(omega).empty());
    CHECK(omega.run_backward() == 50);
    CHECK(omega.image() == Machine::from_term(parse("(\\x. x x) (\\x. x x)")).image());

    auto partial = Machine::from_term(parse(kExample));
    CHECK(partial.run_forward(3) == RunOutcome::fuel_exhausted);
    CHECK(partial.run_forward(3) == RunOutcome::final);
    CHECK(partial.counters().principal == 3);
}

TEST_CASE("id_start shifts every identity and nothing else") {
    auto a = Machine::from_term(parse(kExample), 1);
    auto b = Machine::from_term(parse(kExample), 500);
    a.run_forward(100);
    b.run_forward(100);
    CHECK(b.evaluated() == std::vector<EntryId>{EntryId::star(), z(503), z(500), z(501)});
    CHECK(a.counters() == b.counters());
    CHECK(alpha_eq(a.read_back(), b.read_back()));
}

TEST_CASE("loop and idrev at every state") {
    for (const Term& t : property_terms()) {
        auto m = Machine::from_term(t);
        for (int k = 0; k < 200; ++k) {
            auto before = m.image();
            auto r = m.step_forward();
            if (!r) break;
            auto after = m.image();
            REQUIRE(m.step_backward());
            REQUIRE(m.image() == before);
            REQUIRE(m.step_forward() == r);
            REQUIRE(m.image() == after);
            // the converse direction on a non-initial state
            auto back = m.step_backward();
            REQUIRE(back);
            REQUIRE(m.step_forward());
            REQUIRE(m.image() == after);
        }
    }
}

TEST_CASE("run_backward from random forward prefixes") {
    auto terms = property_terms();
    rcam::testing::TermGen gen(77);
    auto& rng = gen.rng();
    for (int i = 0; i < 500; ++i) {
        const Term& t = terms[std::uniform_int_distribution<std::size_t>(0, terms.size() - 1)(rng)];
        auto m = Machine::from_term(t);
        auto init = m.image();
        auto fuel = std::uniform_int_distribution<std::size_t>(0, 120)(rng);
        m.run_forward(fuel);
        auto depth = m.history().size();
        CHECK(m.run_backward() == depth);
        CHECK(m.history().empty());
        CHECK(m.evaluated_length() == 0);
        CHECK(m.image() == init);
    }
}

TEST_CASE("read-back along a run: sea is transparent, principal steps project on beta_v") {
    for (const Term& t : property_terms()) {
        auto m = Machine::from_term(t);
        CHECK(alpha_eq(m.read_back(), t));
        Term current = m.read_back();
        std::uint64_t beta_steps = 0;
        for (int k = 0; k < 300; ++k) {
            auto r = m.step_forward();
            if (!r) break;
            Term next = m.read_back();
            if (*r == Rule::sea) {
                REQUIRE(alpha_eq(next, current));
            } else {
                auto beta = rcam::lambda::step_beta_v(current);
                REQUIRE(beta);
                REQUIRE(alpha_eq(beta->reduct, next));
                ++beta_steps;
            }
            if (size_term(next) > 5000) break;
            current = next;
        }
        CHECK(m.counters().principal == beta_steps);
        if (m.is_final()) {
            CHECK(current.is_value());
            CHECK_FALSE(rcam::lambda::step_beta_v(current));
        }
    }
}

TEST_CASE("machine crumbles coincide with the crumbled calculus, identities included") {
    for (const Term& t : property_terms()) {
        auto m = Machine::from_term(t);
        rcam::crumble::Store cs;
        auto c = rcam::crumble::translate(cs, t);
        REQUIRE(render_state(m) == rcam::crumble::render(cs, c));
        for (int k = 0; k < 200; ++k) {
            auto r = m.step_forward();
            if (!r) break;
            if (!is_principal(*r)) continue;
            auto st = rcam::crumble::cr_step(cs, c);
            REQUIRE(st);
            CHECK((st->rule == rcam::crumble::CrRule::m1) == (*r == Rule::m1));
            c = st->crumble;
            REQUIRE(render_state(m) == rcam::crumble::render(cs, c));
        }
        if (m.is_final()) CHECK_FALSE(rcam::crumble::cr_step(cs, c));
    }
}

TEST_CASE("state invariants, sea bound, active-length ledger and work bound") {
    for (const Term& t : property_terms()) {
        auto m = Machine::from_term(t);
        rcam::crumble::Store s;
        auto c = rcam::crumble::translate(s, t);
        const auto len0 = rcam::crumble::env_measures(s, c).length;
        const auto L = rcam::crumble::max_body_length(s, c);
        const auto size = size_term(t);
        for (int k = 0; k < 400; ++k) {
            REQUIRE(rcam::testing::violated_invariant(m) == "");
            const auto& n = m.counters();
            CHECK(n.search <= (n.principal + 1) * size);
            CHECK(m.active_length() + n.search <= len0 + n.principal * L);
            CHECK(n.copy_work <= n.principal * 2 * size);
            if (!m.step_forward()) break;
        }
        while (m.step_backward()) REQUIRE(rcam::testing::violated_invariant(m) == "");
    }
}

TEST_CASE("determinism at the boundaries") {
    auto m = Machine::from_term(parse(kExample));
    CHECK(m.backward_rule() == std::nullopt);
    CHECK(m.forward_rule() == Rule::sea);
    m.run_forward(100);
    CHECK(m.forward_rule() == std::nullopt);
    CHECK(m.backward_rule().has_value());
    CHECK(m.check_deterministic());
}

TEST_CASE("history entries hold two identities at most") {
    static_assert(sizeof(HistoryEntry) <= 3 * sizeof(std::uint64_t));
    auto m = Machine::from_term(rcam::testing::identity_chain(20));
    m.run_forward(1000);
    CHECK(m.history().size() == m.counters().principal + m.counters().search);
    CHECK(m.history_max() == m.history().size());
}

TEST_CASE("corpus terms normalise to the reference normal form") {
    for (auto& [name, t] : rcam::testing::load_corpus()) {
        CAPTURE(name);
        auto ref = rcam::lambda::normalize_beta_v(t, 100000);
        REQUIRE(ref);
        auto m = Machine::from_term(t);
        REQUIRE(m.run_forward(1000000) == RunOutcome::final);
        CHECK(m.counters().principal == ref->steps);
        CHECK(alpha_eq(m.read_back(), ref->term));
    }
    for (auto& [name, t] : rcam::testing::load_corpus("divergent")) {
        CAPTURE(name);
        auto m = Machine::from_term(t);
        CHECK(m.run_forward(500) == RunOutcome::fuel_exhausted);
    }
}
