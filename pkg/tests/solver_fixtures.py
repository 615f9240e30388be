"""Hand-authored solver fixtures.

Each expected trace was derived by hand-applying SLD resolution with the
documented conventions (leftmost goal, source clause order, Byrd ports,
fresh variables numbered _G1.. per clause activation in head-then-body
first-occurrence order) — not by running the engine. Expected solutions are
likewise hand-derived; the bottom-up oracle cross-checks them where it
applies.

Fields: source, goal, mode, solutions (set of {var: rendered}), outcome,
trace (full expected format_trace text, or None to skip the line check),
oracle (include in oracle-equivalence), budget overrides.
"""

SUCCEEDED = "{'Result': 'Search Succeeded'}"
FAILED = "{'Result': 'Search Failed'}"

START = "0: Start of execution: Beginning Search"


def _t(*lines: str) -> str:
    return "\n".join((START,) + lines)


FIXTURES = [
    # --- facts only -----------------------------------------------------
    {
        "name": "single_fact",
        "source": "a.",
        "goal": "a",
        "mode": "first",
        "solutions": [{}],
        "outcome": "success",
        "trace": _t("1: Call: a", f"2: Exit: a | {SUCCEEDED}"),
        "oracle": True,
    },
    {
        "name": "fact_among_many",
        "source": "p(1).\np(2).\np(3).",
        "goal": "p(2)",
        "mode": "first",
        "solutions": [{}],
        "outcome": "success",
        "trace": _t("1: Call: p(2)", f"2: Exit: p(2) | {SUCCEEDED}"),
        "oracle": True,
    },
    {
        "name": "fact_enum_all",
        "source": "p(1).\np(2).\np(3).",
        "goal": "p(X)",
        "mode": "all",
        "solutions": [{"X": "1"}, {"X": "2"}, {"X": "3"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: p(X)",
            f"2: Exit: p(1) | {SUCCEEDED}",
            "[Path 2]:",
            "3: Redo: p(X)",
            f"4: Exit: p(2) | {SUCCEEDED}",
            "[Path 3]:",
            "5: Redo: p(X)",
            f"6: Exit: p(3) | {SUCCEEDED}",
            "[Path 4]:",
            "7: Redo: p(X)",
            f"8: Fail: p(X) | {FAILED}",
        ),
        "oracle": True,
    },
    {
        "name": "fact_miss",
        "source": "p(1).",
        "goal": "p(2)",
        "mode": "first",
        "solutions": [],
        "outcome": "failure",
        "trace": _t("1: Call: p(2)", f"2: Fail: p(2) | {FAILED}"),
        "oracle": True,
    },
    {
        "name": "second_arg_lookup",
        "source": "likes(mary, wine).\nlikes(john, beer).",
        "goal": "likes(john, X)",
        "mode": "first",
        "solutions": [{"X": "beer"}],
        "outcome": "success",
        "trace": _t("1: Call: likes(john,X)", f"2: Exit: likes(john,beer) | {SUCCEEDED}"),
        "oracle": True,
    },
    {
        "name": "quoted_atom",
        "source": "title('Dr Who').\nq(X) :- title(X).",
        "goal": "q(X)",
        "mode": "first",
        "solutions": [{"X": "'Dr Who'"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: q(X)",
            "2: Call: title(_G1)",
            "3: Exit: title('Dr Who')",
            f"4: Exit: q('Dr Who') | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "compound_argument",
        "source": "point(coord(1, 2)).\nxval(X) :- point(coord(X, _)).",
        "goal": "xval(V)",
        "mode": "first",
        "solutions": [{"V": "1"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: xval(V)",
            "2: Call: point(coord(_G1,_G2))",
            "3: Exit: point(coord(1,2))",
            f"4: Exit: xval(1) | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    # --- chained rules ---------------------------------------------------
    {
        "name": "chain_two_rules",
        "source": "a :- b.\nb :- c.\nc.",
        "goal": "a",
        "mode": "first",
        "solutions": [{}],
        "outcome": "success",
        "trace": _t(
            "1: Call: a",
            "2: Call: b",
            "3: Call: c",
            "4: Exit: c",
            "5: Exit: b",
            f"6: Exit: a | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "grandparent_first",
        "source": "gp(X, Z) :- par(X, Y), par(Y, Z).\npar(ann, bob).\npar(bob, cal).",
        "goal": "gp(ann, Q)",
        "mode": "first",
        "solutions": [{"Q": "cal"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: gp(ann,Q)",
            "2: Call: par(ann,_G3)",
            "3: Exit: par(ann,bob)",
            "4: Call: par(bob,_G2)",
            "5: Exit: par(bob,cal)",
            f"6: Exit: gp(ann,cal) | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "grandparent_all",
        "source": "gp(X, Z) :- par(X, Y), par(Y, Z).\npar(ann, bob).\npar(bob, cal).",
        "goal": "gp(X, Y)",
        "mode": "all",
        "solutions": [{"X": "ann", "Y": "cal"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: gp(X,Y)",
            "2: Call: par(_G1,_G3)",
            "3: Exit: par(ann,bob)",
            "4: Call: par(bob,_G2)",
            "5: Exit: par(bob,cal)",
            f"6: Exit: gp(ann,cal) | {SUCCEEDED}",
            "[Path 2]:",
            "7: Redo: gp(X,Y)",
            "8: Redo: par(bob,_G2)",
            f"9: Fail: par(bob,_G2) | {FAILED}",
            "10: Redo: par(_G1,_G3)",
            "11: Exit: par(bob,cal)",
            "12: Call: par(cal,_G2)",
            f"13: Fail: par(cal,_G2) | {FAILED}",
            "14: Redo: par(_G1,_G3)",
            f"15: Fail: par(_G1,_G3) | {FAILED}",
            f"16: Fail: gp(X,Y) | {FAILED}",
        ),
        "oracle": True,
    },
    {
        "name": "second_clause_rule",
        "source": "s(X) :- t(X).\ns(X) :- u(X).\nt(1).\nu(2).",
        "goal": "s(2)",
        "mode": "first",
        "solutions": [{}],
        "outcome": "success",
        "trace": _t(
            "1: Call: s(2)",
            "2: Call: t(2)",
            f"3: Fail: t(2) | {FAILED}",
            "4: Call: u(2)",
            "5: Exit: u(2)",
            f"6: Exit: s(2) | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "two_clause_union_all",
        "source": "q(X) :- a(X).\nq(X) :- b(X).\na(1).\nb(2).",
        "goal": "q(X)",
        "mode": "all",
        "solutions": [{"X": "1"}, {"X": "2"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: q(X)",
            "2: Call: a(_G1)",
            "3: Exit: a(1)",
            f"4: Exit: q(1) | {SUCCEEDED}",
            "[Path 2]:",
            "5: Redo: q(X)",
            "6: Redo: a(_G1)",
            f"7: Fail: a(_G1) | {FAILED}",
            "8: Call: b(_G2)",
            "9: Exit: b(2)",
            f"10: Exit: q(2) | {SUCCEEDED}",
            "[Path 3]:",
            "11: Redo: q(X)",
            "12: Redo: b(_G2)",
            f"13: Fail: b(_G2) | {FAILED}",
            f"14: Fail: q(X) | {FAILED}",
        ),
        "oracle": True,
    },
    # --- backtracking over multiple clauses -------------------------------
    {
        "name": "backtrack_basic",
        "source": "c :- a(X), b(X).\na(1).\na(2).\nb(2).",
        "goal": "c",
        "mode": "first",
        "solutions": [{}],
        "outcome": "success",
        "trace": _t(
            "1: Call: c",
            "2: Call: a(_G1)",
            "3: Exit: a(1)",
            "4: Call: b(1)",
            f"5: Fail: b(1) | {FAILED}",
            "6: Redo: a(_G1)",
            "7: Exit: a(2)",
            "8: Call: b(2)",
            "9: Exit: b(2)",
            f"10: Exit: c | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "two_hop_paths_all",
        "source": "path(X, Z) :- edge(X, Y), edge(Y, Z).\nedge(a, b).\nedge(b, c).\nedge(a, d).\nedge(d, c).",
        "goal": "path(a, c)",
        "mode": "all",
        "solutions": [{}],
        "outcome": "success",
        "trace": _t(
            "1: Call: path(a,c)",
            "2: Call: edge(a,_G3)",
            "3: Exit: edge(a,b)",
            "4: Call: edge(b,c)",
            "5: Exit: edge(b,c)",
            f"6: Exit: path(a,c) | {SUCCEEDED}",
            "[Path 2]:",
            "7: Redo: path(a,c)",
            "8: Redo: edge(b,c)",
            f"9: Fail: edge(b,c) | {FAILED}",
            "10: Redo: edge(a,_G3)",
            "11: Exit: edge(a,d)",
            "12: Call: edge(d,c)",
            "13: Exit: edge(d,c)",
            f"14: Exit: path(a,c) | {SUCCEEDED}",
            "[Path 3]:",
            "15: Redo: path(a,c)",
            "16: Redo: edge(d,c)",
            f"17: Fail: edge(d,c) | {FAILED}",
            "18: Redo: edge(a,_G3)",
            f"19: Fail: edge(a,_G3) | {FAILED}",
            f"20: Fail: path(a,c) | {FAILED}",
        ),
        "oracle": True,
    },
    {
        "name": "third_time_lucky",
        "source": "r(X) :- s(X), t(X).\ns(1).\ns(2).\ns(3).\nt(3).",
        "goal": "r(X)",
        "mode": "first",
        "solutions": [{"X": "3"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: r(X)",
            "2: Call: s(_G1)",
            "3: Exit: s(1)",
            "4: Call: t(1)",
            f"5: Fail: t(1) | {FAILED}",
            "6: Redo: s(_G1)",
            "7: Exit: s(2)",
            "8: Call: t(2)",
            f"9: Fail: t(2) | {FAILED}",
            "10: Redo: s(_G1)",
            "11: Exit: s(3)",
            "12: Call: t(3)",
            "13: Exit: t(3)",
            f"14: Exit: r(3) | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "solution_cap",
        "source": "n(1).\nn(2).\nn(3).\nn(4).",
        "goal": "n(X)",
        "mode": "all",
        "budget": {"max_solutions": 2},
        "solutions": [{"X": "1"}, {"X": "2"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: n(X)",
            f"2: Exit: n(1) | {SUCCEEDED}",
            "[Path 2]:",
            "3: Redo: n(X)",
            f"4: Exit: n(2) | {SUCCEEDED}",
        ),
        "oracle": False,  # deliberately truncated by max_solutions
    },
    {
        "name": "clause_order_preference",
        "source": "color(red).\ncolor(green).\npick(X) :- color(X).",
        "goal": "pick(X)",
        "mode": "first",
        "solutions": [{"X": "red"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: pick(X)",
            "2: Call: color(_G1)",
            "3: Exit: color(red)",
            f"4: Exit: pick(red) | {SUCCEEDED}",
        ),
        "oracle": False,  # mode=first picks the first clause; the oracle has no order
    },
    # --- arithmetic via is/2 ----------------------------------------------
    {
        "name": "arith_double",
        "source": "double(X, Y) :- Y is X*2.",
        "goal": "double(3, R)",
        "mode": "first",
        "solutions": [{"R": "6"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: double(3,R)",
            "2: Call: _G2 is 3*2",
            "3: Exit: 6 is 3*2",
            f"4: Exit: double(3,6) | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "arith_chain_compare",
        "source": "area(W, H, A) :- A is W*H.\nbig(W, H) :- area(W, H, A), A > 10.",
        "goal": "big(3, 4)",
        "mode": "first",
        "solutions": [{}],
        "outcome": "success",
        "trace": _t(
            "1: Call: big(3,4)",
            "2: Call: area(3,4,_G3)",
            "3: Call: _G6 is 3*4",
            "4: Exit: 12 is 3*4",
            "5: Exit: area(3,4,12)",
            "6: Call: 12>10",
            "7: Exit: 12>10",
            f"8: Exit: big(3,4) | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "arith_divisions",
        "source": (
            "half(X, Y) :- Y is X/2.\nquarter(X, Y) :- Y is X//4.\n"
            "both(X, H, Q) :- half(X, H), quarter(X, Q)."
        ),
        "goal": "both(10, H, Q)",
        "mode": "first",
        "solutions": [{"H": "5", "Q": "2"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: both(10,H,Q)",
            "2: Call: half(10,_G2)",
            "3: Call: _G5 is 10/2",
            "4: Exit: 5 is 10/2",
            "5: Exit: half(10,5)",
            "6: Call: quarter(10,_G3)",
            "7: Call: _G7 is 10//4",
            "8: Exit: 2 is 10//4",
            "9: Exit: quarter(10,2)",
            f"10: Exit: both(10,5,2) | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "comparison_failure",
        "source": "check(X) :- X > 5.",
        "goal": "check(3)",
        "mode": "first",
        "solutions": [],
        "outcome": "failure",
        "trace": _t(
            "1: Call: check(3)",
            "2: Call: 3>5",
            f"3: Fail: 3>5 | {FAILED}",
            f"4: Fail: check(3) | {FAILED}",
        ),
        "oracle": True,
    },
    {
        "name": "arith_precedence",
        "source": "calc(R) :- R is 4*(5+6).",
        "goal": "calc(R)",
        "mode": "first",
        "solutions": [{"R": "44"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: calc(R)",
            "2: Call: _G1 is 4*(5+6)",
            "3: Exit: 44 is 4*(5+6)",
            f"4: Exit: calc(44) | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "arith_negative_mod",
        "source": "m(R) :- R is -7 mod 3.",
        "goal": "m(R)",
        "mode": "first",
        "solutions": [{"R": "2"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: m(R)",
            "2: Call: _G1 is -7 mod 3",
            "3: Exit: 2 is -7 mod 3",
            f"4: Exit: m(2) | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "unification_builtin",
        "source": "t(X) :- X = banana.",
        "goal": "t(R)",
        "mode": "first",
        "solutions": [{"R": "banana"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: t(R)",
            "2: Call: _G1=banana",
            "3: Exit: banana=banana",
            f"4: Exit: t(banana) | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "disunification_builtin",
        "source": "diff :- foo \\= bar.",
        "goal": "diff",
        "mode": "first",
        "solutions": [{}],
        "outcome": "success",
        "trace": _t(
            "1: Call: diff",
            "2: Call: foo\\=bar",
            "3: Exit: foo\\=bar",
            f"4: Exit: diff | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "float_int_distinct",
        "source": "v(2).\ntest :- v(2.0).",
        "goal": "test",
        "mode": "first",
        "solutions": [],
        "outcome": "failure",
        "trace": _t(
            "1: Call: test",
            "2: Call: v(2.0)",
            f"3: Fail: v(2.0) | {FAILED}",
            f"4: Fail: test | {FAILED}",
        ),
        "oracle": True,
    },
    {
        "name": "arith_not_ground",
        "source": "bad(R) :- R is X+1.",
        "goal": "bad(R)",
        "mode": "first",
        "solutions": [],
        "outcome": "runtime_error",
        "trace": _t("1: Call: bad(R)", "2: Call: _G1 is _G2+1"),
        "oracle": False,
    },
    {
        "name": "division_by_zero",
        "source": "d(R) :- R is 1/0.",
        "goal": "d(R)",
        "mode": "first",
        "solutions": [],
        "outcome": "runtime_error",
        "trace": _t("1: Call: d(R)", "2: Call: _G1 is 1/0"),
        "oracle": False,
    },
    # --- negation as failure ----------------------------------------------
    {
        "name": "naf_flies",
        "source": "flies(X) :- bird(X), \\+ penguin(X).\nbird(tweety).\nbird(pingu).\npenguin(pingu).",
        "goal": "flies(tweety)",
        "mode": "first",
        "solutions": [{}],
        "outcome": "success",
        "trace": _t(
            "1: Call: flies(tweety)",
            "2: Call: bird(tweety)",
            "3: Exit: bird(tweety)",
            "4: Call: \\+penguin(tweety)",
            "5: Call: penguin(tweety)",
            f"6: Fail: penguin(tweety) | {FAILED}",
            "7: Exit: \\+penguin(tweety)",
            f"8: Exit: flies(tweety) | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "naf_blocked",
        "source": "flies(X) :- bird(X), \\+ penguin(X).\nbird(tweety).\nbird(pingu).\npenguin(pingu).",
        "goal": "flies(pingu)",
        "mode": "first",
        "solutions": [],
        "outcome": "failure",
        "trace": _t(
            "1: Call: flies(pingu)",
            "2: Call: bird(pingu)",
            "3: Exit: bird(pingu)",
            "4: Call: \\+penguin(pingu)",
            "5: Call: penguin(pingu)",
            "6: Exit: penguin(pingu)",
            f"7: Fail: \\+penguin(pingu) | {FAILED}",
            "8: Redo: bird(pingu)",
            f"9: Fail: bird(pingu) | {FAILED}",
            f"10: Fail: flies(pingu) | {FAILED}",
        ),
        "oracle": True,
    },
    {
        "name": "naf_filter_all",
        "source": "safe(X) :- item(X), \\+ risky(X).\nitem(knife).\nitem(spoon).\nrisky(knife).",
        "goal": "safe(X)",
        "mode": "all",
        "solutions": [{"X": "spoon"}],
        "outcome": "success",
        "trace": _t(
            "1: Call: safe(X)",
            "2: Call: item(_G1)",
            "3: Exit: item(knife)",
            "4: Call: \\+risky(knife)",
            "5: Call: risky(knife)",
            "6: Exit: risky(knife)",
            f"7: Fail: \\+risky(knife) | {FAILED}",
            "8: Redo: item(_G1)",
            "9: Exit: item(spoon)",
            "10: Call: \\+risky(spoon)",
            "11: Call: risky(spoon)",
            f"12: Fail: risky(spoon) | {FAILED}",
            "13: Exit: \\+risky(spoon)",
            f"14: Exit: safe(spoon) | {SUCCEEDED}",
            "[Path 2]:",
            "15: Redo: safe(X)",
            "16: Redo: \\+risky(spoon)",
            f"17: Fail: \\+risky(spoon) | {FAILED}",
            "18: Redo: item(_G1)",
            f"19: Fail: item(_G1) | {FAILED}",
            f"20: Fail: safe(X) | {FAILED}",
        ),
        "oracle": True,
    },
    {
        "name": "naf_over_rule",
        "source": "p :- \\+ q.\nq :- fail.",
        "goal": "p",
        "mode": "first",
        "solutions": [{}],
        "outcome": "success",
        "trace": _t(
            "1: Call: p",
            "2: Call: \\+q",
            "3: Call: q",
            "4: Call: fail",
            f"5: Fail: fail | {FAILED}",
            f"6: Fail: q | {FAILED}",
            "7: Exit: \\+q",
            f"8: Exit: p | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    {
        "name": "naf_ground_subgoal",
        "source": "has_fur(dog).\nreptile(snake).\nmammal(X) :- has_fur(X), \\+ reptile(X).",
        "goal": "mammal(dog)",
        "mode": "first",
        "solutions": [{}],
        "outcome": "success",
        "trace": _t(
            "1: Call: mammal(dog)",
            "2: Call: has_fur(dog)",
            "3: Exit: has_fur(dog)",
            "4: Call: \\+reptile(dog)",
            "5: Call: reptile(dog)",
            f"6: Fail: reptile(dog) | {FAILED}",
            "7: Exit: \\+reptile(dog)",
            f"8: Exit: mammal(dog) | {SUCCEEDED}",
        ),
        "oracle": True,
    },
    # --- failure and error cases -------------------------------------------
    {
        "name": "explicit_fail",
        "source": "p :- fail.",
        "goal": "p",
        "mode": "first",
        "solutions": [],
        "outcome": "failure",
        "trace": _t(
            "1: Call: p",
            "2: Call: fail",
            f"3: Fail: fail | {FAILED}",
            f"4: Fail: p | {FAILED}",
        ),
        "oracle": True,
    },
    {
        "name": "unknown_predicate",
        "source": "p :- q.",
        "goal": "p",
        "mode": "first",
        "solutions": [],
        "outcome": "runtime_error",
        "error_contains": "unknown predicate q/0",
        "trace": _t("1: Call: p", "2: Call: q"),
        "oracle": False,
    },
    {
        "name": "head_mismatch",
        "source": "eq(X, X).\ntest :- eq(foo, bar).",
        "goal": "test",
        "mode": "first",
        "solutions": [],
        "outcome": "failure",
        "trace": _t(
            "1: Call: test",
            "2: Call: eq(foo,bar)",
            f"3: Fail: eq(foo,bar) | {FAILED}",
            f"4: Fail: test | {FAILED}",
        ),
        "oracle": True,
    },
    {
        "name": "occurs_check_blocks",
        "source": "same(X, X).\ntest :- same(Y, f(Y)).",
        "goal": "test",
        "mode": "first",
        "solutions": [],
        "outcome": "failure",
        "trace": _t(
            "1: Call: test",
            "2: Call: same(_G1,f(_G1))",
            f"3: Fail: same(_G1,f(_G1)) | {FAILED}",
            f"4: Fail: test | {FAILED}",
        ),
        "oracle": False,  # term structure is not function-free
    },
    {
        "name": "atoms_never_equal",
        "source": "check :- feasible = no.",
        "goal": "check",
        "mode": "first",
        "solutions": [],
        "outcome": "failure",
        "trace": _t(
            "1: Call: check",
            "2: Call: feasible=no",
            f"3: Fail: feasible=no | {FAILED}",
            f"4: Fail: check | {FAILED}",
        ),
        "oracle": True,
    },
    {
        "name": "cut_rejected",
        "source": "p :- !.",
        "goal": "p",
        "mode": "first",
        "solutions": [],
        "outcome": "runtime_error",
        "error_contains": "unsupported construct !/0",
        "trace": _t("1: Call: p", "2: Call: !"),
        "oracle": False,
    },
    {
        "name": "disjunction_rejected",
        "source": "p :- q ; r.\nq.",
        "goal": "p",
        "mode": "first",
        "solutions": [],
        "outcome": "runtime_error",
        "error_contains": "unsupported construct ;/2",
        "trace": _t("1: Call: p", "2: Call: (q;r)"),
        "oracle": False,
    },
    # --- budget safety -------------------------------------------------------
    {
        "name": "left_recursion_steps",
        "source": "p :- p.",
        "goal": "p",
        "mode": "first",
        "budget": {"max_steps": 10_000, "max_depth": 1_000_000},
        "solutions": [],
        "outcome": "budget_exceeded",
        "trace": None,
        "oracle": False,
    },
    {
        "name": "left_recursion_depth",
        "source": "p :- p.",
        "goal": "p",
        "mode": "first",
        "solutions": [],
        "outcome": "budget_exceeded",
        "trace": None,
        "oracle": False,
    },
    {
        "name": "budget_after_success",
        "source": "count(0).\ncount(X) :- count(Y), X is Y+1.",
        "goal": "count(N)",
        "mode": "all",
        "budget": {"max_steps": 60, "max_solutions": 100},
        "solutions": None,  # unbounded generator; outcome matters, not the set
        "outcome": "success",
        "trace": None,
        "oracle": False,
    },
]
