"""Acceptance property suites.

Each suite returns a SuiteResult with per-check counts; `run_all` drives
them with a common scale factor.  The suites are also the substance of the
test suite's acceptance module, so they avoid any test-framework imports.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .formulas import FALSE, TRUE, And, Formula, Literal, Not, Or, Var, conj, parse_formula
from .solvers import HORN, LITERAL_SET, TWO_LITERAL, classify_objective
from .theory import DefaultTheory, PriorityOrder, linear_extensions, parse_theory
from .classify import classify_theory, is_ordered
from .reiter import (
    Extension,
    entails_brave,
    entails_cautious,
    enumerate_extensions,
    exists_extension_applying,
)
from .staged import (
    bh_check,
    bh_enumerate,
    bh_entails,
    bh_stages,
    brewka_construct,
    brewka_entails,
    brewka_enumerate,
    brewka_stages,
)
from .lexico import applied_ids, compare, is_lex_ordering, lex_entails, lex_enumerate, lex_total_decide
from .fastpaths import (
    bh_total_construct,
    horn_exists,
    horn_lex_total_decide,
    pfn_total_decide,
    pfnu_decide,
)
from .reductions import (
    CnfInstance,
    QbfInstance,
    gen_b_normal_unary,
    gen_cautious_horn,
    gen_cautious_pfn,
    gen_cautious_pfou,
    gen_lex_max_qbf,
    gen_lex_nu_partial,
    max_2qbf_oracle,
    sat_oracle,
)
from . import instances as gen


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    seconds: float = 0.0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def check(self, condition: bool, label: str) -> None:
        if condition:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 25:
                self.failures.append(label)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (f"[{status}] {self.name}: {self.passed} checks passed, "
                f"{self.failed} failed ({self.seconds:.1f}s)")


def _timed(fn: Callable[[SuiteResult], None], name: str) -> SuiteResult:
    result = SuiteResult(name)
    t0 = time.perf_counter()
    fn(result)
    result.seconds = time.perf_counter() - t0
    return result


# ---------------------------------------------------------------------------
# canonical regression fixtures (also shipped as files under fixtures/)

FIXTURES: dict[str, str] = {
    "drinking_priest": """\
# A priest is known; priests usually avoid vodka, men usually drink it,
# and priests are usually men.  Two ways to settle the conflict.
W: priest
D: d_nodrink: priest : ~drinks-vodka / ~drinks-vodka
D: d_drink: man : drinks-vodka / drinks-vodka
D: d_man: priest : man / man
""",
    "rocknroll_priest": """\
# Same shape with a priority: the priest-specific default outranks the
# men-in-general default.
W: priest
D: d_quiet: priest : ~like-rock-n-roll / ~like-rock-n-roll
D: d_loud: man : like-rock-n-roll / like-rock-n-roll
D: d_man: priest : man / man
P: d_quiet > d_loud
""",
    "staged_divergence": """\
# The two staged semantics disagree here: stage-tested justifications can
# sneak past a higher-priority default by delaying b.
D: da: true : a / a
D: db: true : b / b
D: dbc: b : c / c
D: danc: a : ~c / ~c
P: dbc > danc
""",
    "blocked_top": """\
# The top-priority default only becomes applicable after a contradicting
# lower one has fired; staged and lexicographic semantics part ways.
W: a
D: dbc: b : c / c
D: danc: a : ~c / ~c
D: dab: a : b / b
P: dbc > danc
P: danc > dab
""",
    "lex_preference": """\
# Two extensions; the priority pins ~r above r, so the lexicographic
# semantics keeps only the extension applying the ~r default.
W: p
D: dq: p : q / q
D: dnr: p : ~r / ~r
D: dr: q : r / r
P: dnr > dr
""",
}


def fixture_theory(name: str) -> tuple[DefaultTheory, PriorityOrder]:
    return parse_theory(FIXTURES[name])


def _basis_set(e: Extension) -> frozenset[Formula]:
    return frozenset(e.basis)


def _fs(*texts: str) -> frozenset[Formula]:
    return frozenset(parse_formula(t) for t in texts)


def suite_paper_examples(result: SuiteResult) -> None:
    """Canonical regression: extension sets, preferred sets, stage traces."""
    t0 = time.perf_counter()
    # -- two unprioritized extensions
    thy, _ = fixture_theory("drinking_priest")
    exts = enumerate_extensions(thy)
    result.check(len(exts) == 2, "drinking_priest: two extensions")
    bases = {_basis_set(e) for e in exts}
    result.check(bases == {_fs("priest", "man", "~drinks-vodka"),
                           _fs("priest", "man", "drinks-vodka")},
                 "drinking_priest: extension bases")
    result.check(entails_cautious(thy, parse_formula("man")),
                 "drinking_priest: man cautious")
    result.check(not entails_cautious(thy, parse_formula("~drinks-vodka")),
                 "drinking_priest: ~drinks-vodka not cautious")
    result.check(entails_brave(thy, parse_formula("~drinks-vodka")),
                 "drinking_priest: ~drinks-vodka brave")

    # -- priority selects one staged extension
    thy, pri = fixture_theory("rocknroll_priest")
    want = _fs("priest", "man", "~like-rock-n-roll")
    bh = bh_enumerate(thy, pri)
    result.check([_basis_set(e) for e in bh] == [want],
                 "rocknroll_priest: unique BH-preferred extension")
    bset = brewka_enumerate(thy, pri)
    result.check([_basis_set(e) for e in bset] == [want],
                 "rocknroll_priest: unique Brewka-preferred extension")
    trace = bh_stages(thy, pri, bh[0])
    result.check(trace.snapshots[1] == want,
                 "rocknroll_priest: first stage adds man and ~like-rock-n-roll")

    # -- BH and Brewka diverge
    thy, pri = fixture_theory("staged_divergence")
    exts = enumerate_extensions(thy)
    result.check(len(exts) == 2, "staged_divergence: two extensions")
    e_abc = next(e for e in exts if e.contains(parse_formula("c")))
    e_abnc = next(e for e in exts if e.contains(parse_formula("~c")))
    result.check(bh_check(thy, pri, e_abc), "staged_divergence: abc is BH-preferred")
    result.check(not bh_check(thy, pri, e_abnc),
                 "staged_divergence: ab~c is not BH-preferred")
    trace = bh_stages(thy, pri, e_abc)
    result.check(trace.snapshots[:3] == (_fs(), _fs("a", "b"), _fs("a", "b", "c")),
                 "staged_divergence: BH stage snapshots")
    result.check({_basis_set(e) for e in brewka_enumerate(thy, pri)}
                 == {_basis_set(e) for e in exts},
                 "staged_divergence: both extensions Brewka-preferred")
    order = ("da", "dbc", "danc", "db")
    trace = brewka_stages(thy, order)
    result.check(trace.snapshots[:4] == (_fs(), _fs("a"), _fs("a", "~c"),
                                         _fs("a", "~c", "b")),
                 "staged_divergence: Brewka stage snapshots for the delaying order")
    result.check(bh_entails(thy, pri, parse_formula("c")),
                 "staged_divergence: c is a BH consequence")

    # -- lex applies the top default; staged semantics cannot
    thy, pri = fixture_theory("blocked_top")
    order = pri.sequence(thy.ids)
    trace = brewka_stages(thy, order)
    result.check(trace.snapshots[:3] == (_fs("a"), _fs("a", "~c"),
                                         _fs("a", "~c", "b")),
                 "blocked_top: staged snapshots")
    staged_want = _fs("a", "~c", "b")
    result.check([_basis_set(e) for e in brewka_enumerate(thy, pri)] == [staged_want]
                 and [_basis_set(e) for e in bh_enumerate(thy, pri)] == [staged_want],
                 "blocked_top: staged semantics keep a,~c,b")
    result.check([_basis_set(e) for e in lex_enumerate(thy, pri)]
                 == [_fs("a", "c", "b")],
                 "blocked_top: lex keeps a,b,c")

    # -- lexicographic comparison details
    thy, pri = fixture_theory("lex_preference")
    exts = enumerate_extensions(thy)
    result.check(len(exts) == 2, "lex_preference: two extensions")
    e1 = next(e for e in exts if e.contains(parse_formula("~r")))
    e2 = next(e for e in exts if e.contains(parse_formula("r")))
    result.check(applied_ids(thy, e1) == frozenset({"dq", "dnr"}),
                 "lex_preference: applied vector of the ~r extension")
    result.check(applied_ids(thy, e2) == frozenset({"dq", "dr"}),
                 "lex_preference: applied vector of the r extension")
    t1 = ("dnr", "dr", "dq")
    result.check(compare(e1, e2, t1) and not compare(e2, e1, t1),
                 "lex_preference: comparison along the witnessing order")
    result.check(is_lex_ordering(thy, t1, e1),
                 "lex_preference: witnessing order for the ~r extension")
    result.check(all(not is_lex_ordering(thy, t, e2)
                     for t in linear_extensions(pri, thy.ids)),
                 "lex_preference: no order witnesses the r extension")
    result.check([_basis_set(e) for e in lex_enumerate(thy, pri)]
                 == [_fs("p", "q", "~r")],
                 "lex_preference: unique lex-preferred extension")
    result.check(lex_entails(thy, pri, parse_formula("~r")),
                 "lex_preference: ~r is a lex consequence")
    result.check(lex_total_decide(thy, t1, parse_formula("~r")),
                 "lex_preference: greedy total-order decision agrees")

    elapsed = time.perf_counter() - t0
    result.check(elapsed < 1.0, f"regression runtime {elapsed:.2f}s (budget 1s)")


def suite_fastpath_agreement(result: SuiteResult, per_path: int = 1000,
                             seed: int = 20240601) -> None:
    """Each fast path agrees with the exhaustive engine on random in-class
    instances."""
    rng = random.Random(seed)

    for _ in range(per_path):  # pfnu vs all three prioritized semantics
        thy = gen.random_row13_theory(rng, max_defaults=8)
        pri = gen.random_partial_order(rng, thy.ids)
        query = gen.random_literal(rng, ("a", "b", "c", "d", "e", "f"))
        semantics = rng.choice(("bh", "brewka", "lex"))
        got = pfnu_decide(thy, pri, query, semantics)
        if semantics == "bh":
            want = bh_entails(thy, pri, query.formula())
        elif semantics == "brewka":
            want = brewka_entails(thy, pri, query.formula())
        else:
            want = lex_entails(thy, pri, query.formula())
        result.check(got == want, f"pfnu {semantics} mismatch on {thy}")

    for _ in range(per_path):  # staged construction under a total order
        if rng.random() < 0.5:
            thy = gen.random_seminormal_theory(rng, max_defaults=6)
        else:
            thy = gen.random_general_theory(rng, max_defaults=6)
        order = gen.random_total_order(rng, thy.ids)
        ext = bh_total_construct(thy, order)
        bh = bh_enumerate(thy, PriorityOrder.total(order))
        if ext is None:
            result.check(bh == [], f"bh-total none vs {len(bh)} preferred: {thy}")
        else:
            result.check(len(bh) == 1 and bh[0] == ext
                         and bh_check(thy, PriorityOrder.total(order), ext),
                         f"bh-total extension mismatch on {thy}")

    for _ in range(per_path):  # greedy prerequisite-free construction
        thy = gen.random_pfn_theory(rng, max_defaults=7)
        order = gen.random_total_order(rng, thy.ids)
        phi = gen.random_literal(rng, ("a", "b", "c", "d", "e")).formula()
        got = pfn_total_decide(thy, order, phi)
        result.check(got == lex_entails(thy, PriorityOrder.total(order), phi)
                     and got == lex_total_decide(thy, order, phi),
                     f"pfn-total mismatch on {thy}")

    for _ in range(per_path):  # forward-chaining existence test
        thy = gen.random_horn_theory(rng, max_defaults=8)
        ids = list(thy.ids)
        applied = rng.sample(ids, rng.randint(0, len(ids)))
        got = horn_exists(thy, applied)
        result.check(got == exists_extension_applying(thy, applied),
                     f"horn-exists mismatch on {thy} with {applied}")

    for _ in range(per_path):  # Horn greedy total-order decision
        thy = gen.random_horn_theory(rng, max_defaults=8)
        order = gen.random_total_order(rng, thy.ids)
        names = ("a", "b", "c", "d", "e")
        phi = conj([gen.random_literal(rng, names).formula()
                    for _ in range(rng.randint(1, 2))])
        got = horn_lex_total_decide(thy, order, phi)
        result.check(got == lex_total_decide(thy, order, phi)
                     and got == lex_entails(thy, PriorityOrder.total(order), phi),
                     f"horn-lex mismatch on {thy}")

    for _ in range(per_path):  # general greedy total-order decision
        thy = gen.random_general_theory(rng, max_defaults=6)
        order = gen.random_total_order(rng, thy.ids)
        phi = gen.random_formula(rng, ("a", "b", "c", "d"), 1)
        got = lex_total_decide(thy, order, phi)
        result.check(got == lex_entails(thy, PriorityOrder.total(order), phi),
                     f"lex-total mismatch on {thy}")


def suite_staged_equivalence(result: SuiteResult, max_defaults: int = 4) -> None:
    """For every small normal-unary theory and every total order, the
    Brewka-generated extension is the unique BH-preferred one."""
    empty = PriorityOrder.empty()
    for thy in gen.iter_normal_unary_theories(max_defaults):
        for order in linear_extensions(empty, thy.ids):
            constructed = brewka_construct(thy, order)
            bh = bh_enumerate(thy, PriorityOrder.total(order))
            if not (len(bh) == 1 and bh[0] == constructed):
                result.check(False, f"staged divergence: {thy} under {order}")
            else:
                result.passed += 1


def suite_lex_total_uniqueness(result: SuiteResult, max_defaults: int = 4) -> None:
    """Every theory in the family has exactly one preferred extension per
    total order."""
    empty = PriorityOrder.empty()
    n = 0
    for thy in gen.iter_normal_unary_theories(max_defaults):
        exts = enumerate_extensions(thy)
        if not exts:
            continue
        for order in linear_extensions(empty, thy.ids):
            top = [e for e in exts if all(compare(e, o, order) for o in exts)]
            ok = len(top) == 1
            if ok and n % 97 == 0:  # spot-check the witness-search route
                ok = lex_enumerate(thy, PriorityOrder.total(order)) == top
            result.check(ok, f"lex uniqueness failed: {thy} under {order}")
            n += 1


def suite_lex_existence_realizability(result: SuiteResult,
                                      max_defaults: int = 4,
                                      seed: int = 7) -> None:
    """With no priorities every extension is lex-preferred under some order,
    and preferred extensions exist whenever extensions do."""
    rng = random.Random(seed)
    empty = PriorityOrder.empty()
    for thy in gen.iter_normal_unary_theories(max_defaults):
        exts = enumerate_extensions(thy)
        preferred = lex_enumerate(thy, empty)
        result.check(set(preferred) == set(exts),
                     f"realizability failed on {thy}")
        if thy.defaults and rng.random() < 0.05:
            pri = gen.random_partial_order(rng, thy.ids)
            result.check(bool(lex_enumerate(thy, pri)) == bool(exts),
                         f"existence failed on {thy} with partial priorities")


def _roundtrip_staged(result: SuiteResult, c: CnfInstance, sat: bool,
                      with_brewka: bool) -> None:
    thy, pri = gen_b_normal_unary(c)
    result.check(sat == (not bh_entails(thy, pri, FALSE, bound=40)),
                 f"staged reduction (BH) wrong on {c}")
    if with_brewka:
        result.check(sat == (not brewka_entails(thy, pri, FALSE)),
                     f"staged reduction (Brewka) wrong on {c}")


def _roundtrip_lex(result: SuiteResult, c: CnfInstance, sat: bool) -> None:
    thy, pri = gen_lex_nu_partial(c)
    result.check(sat == (not lex_entails(thy, pri, FALSE, bound=40)),
                 f"lex reduction wrong on {c}")


def _roundtrip_cautious(result: SuiteResult, c: CnfInstance, sat: bool,
                        make, label: str) -> None:
    thy = make(c)
    result.check(sat == (not entails_cautious(thy, FALSE, bound=40)),
                 f"{label} reduction wrong on {c}")


def suite_reduction_roundtrips(result: SuiteResult, n_random: int = 200,
                               seed: int = 424242) -> None:
    """Generated theories answer their marker query exactly as the
    independent SAT/QBF oracles predict.

    The exhaustive leg sweeps every CNF over two variables with up to two
    clauses; random legs push each generator to the largest sizes its
    exhaustive verification engines handle (the constructions multiply the
    default count, and the staged/lex engines are exponential by design).
    """
    rng = random.Random(seed)

    for c in gen.iter_cnfs(2, 2):
        sat = sat_oracle(c)
        _roundtrip_cautious(result, c, sat, gen_cautious_horn, "horn")
        _roundtrip_cautious(result, c, sat, gen_cautious_pfn, "pfn")
        _roundtrip_cautious(result, c, sat, gen_cautious_pfou, "pfou")
        _roundtrip_staged(result, c, sat, with_brewka=True)
        _roundtrip_lex(result, c, sat)

    for i in range(n_random):
        unsat = rng.random() < 0.3
        c = gen.random_cnf(rng, max_vars=4, max_clauses=4, force_unsat=unsat)
        sat = sat_oracle(c)
        _roundtrip_cautious(result, c, sat, gen_cautious_horn, "horn")
        c = gen.random_cnf(rng, max_vars=4, max_clauses=3, max_len=3,
                           force_unsat=unsat)
        _roundtrip_cautious(result, c, sat_oracle(c), gen_cautious_pfn, "pfn")

    for i in range(max(1, n_random // 2)):
        unsat = rng.random() < 0.3
        if rng.random() < 0.5:
            c = gen.random_cnf(rng, max_vars=3, max_clauses=1, force_unsat=False)
        else:
            c = gen.random_cnf(rng, max_vars=2, max_clauses=2, force_unsat=unsat)
        _roundtrip_cautious(result, c, sat_oracle(c), gen_cautious_pfou, "pfou")

    for i in range(max(1, n_random // 4)):
        unsat = rng.random() < 0.3
        c = gen.random_cnf(rng, max_vars=3, max_clauses=2, force_unsat=unsat)
        _roundtrip_staged(result, c, sat_oracle(c),
                          with_brewka=len(c.clauses) <= 1)
        _roundtrip_lex(result, c, sat_oracle(c))

    checked = 0
    while checked < max(1, n_random // 8):  # outer components of max-QBF
        n = rng.randint(1, 3)
        q = gen.random_qbf(rng, n)
        vec = max_2qbf_oracle(q)
        if vec is None:
            try:
                gen_lex_max_qbf(q)
                result.check(False, f"missing unsatisfiable-QBF error on {q}")
            except Exception:
                result.passed += 1
            continue
        thy, order = gen_lex_max_qbf(q)
        pri = PriorityOrder.total(order)
        for k in range(1, n + 1):
            got = lex_entails(thy, pri, Var(f"x1_{k}"))
            result.check(got == bool(vec[k - 1]),
                         f"qbf component {k} wrong for {q.matrix}")
        checked += 1


def suite_shape_certification(result: SuiteResult, n_random: int = 60,
                              seed: int = 99) -> None:
    """Generator outputs land in their intended syntactic class; the
    ordered-unary outputs pass the orderedness check."""
    rng = random.Random(seed)
    cnfs = list(gen.iter_cnfs(2, 2))
    cnfs += [gen.random_cnf(rng, 3, 3) for _ in range(n_random)]
    for c in cnfs:
        nonempty = bool(c.clauses)
        thy = gen_cautious_horn(c)
        cls = classify_theory(thy)
        result.check(cls.row == 14, f"horn row {cls.row} on {c}")
        result.check(cls.objective in (HORN, TWO_LITERAL, LITERAL_SET),
                     f"horn objective {cls.objective} on {c}")
        thy = gen_cautious_pfn(c)
        cls = classify_theory(thy)
        result.check(cls.row == 12 or not nonempty,
                     f"pfn row {cls.row} on {c}")
        thy = gen_cautious_pfou(c)
        cls = classify_theory(thy)
        result.check(is_ordered(thy), f"pfou not ordered on {c}")
        result.check(cls.row == 11 or not nonempty,
                     f"pfou row {cls.row} on {c}")
        for make in (gen_b_normal_unary, gen_lex_nu_partial):
            thy, _ = make(c)
            cls = classify_theory(thy)
            result.check(cls.row == 7 or not c.variables,
                         f"normal-unary row {cls.row} on {c}")


def _letters(i: int) -> str:
    return f"v{i}"


def suite_scaling(result: SuiteResult) -> None:
    """Desk-scale tractability: the literal cascade at ten thousand defaults
    in under a second, the greedy Horn construction at a thousand defaults
    in under ten seconds."""
    from .theory import free_normal_default

    n = 10_000
    defaults = []
    for i in range(n // 2):
        v = Var(_letters(i))
        defaults.append(free_normal_default(f"p{i}", v))
        defaults.append(free_normal_default(f"n{i}", Not(v)))
    thy = DefaultTheory(tuple(defaults), (Var(_letters(0)),))
    pri = PriorityOrder(frozenset((f"p{i}", f"n{i}") for i in range(0, n // 2, 7)))
    t0 = time.perf_counter()
    got = pfnu_decide(thy, pri, Literal(_letters(7), True), "lex")
    dt = time.perf_counter() - t0
    result.check(got is True, "pfnu scaling answer")
    result.check(dt < 1.0, f"pfnu at |D|=10^4 took {dt:.2f}s (budget 1s)")

    m = 1_000
    rng = random.Random(5)
    names = [f"h{i}" for i in range(60)]
    defaults = []
    for i in range(m):
        a, b = rng.choice(names), rng.choice(names)
        concl = Or(Not(Var(a)), Var(b)) if rng.random() < 0.7 else Not(Var(a))
        defaults.append(free_normal_default(f"d{i}", concl))
    thy = DefaultTheory(tuple(defaults), (Var(names[0]), Not(Var(names[1]))))
    order = tuple(f"d{i}" for i in range(m))
    t0 = time.perf_counter()
    pfn_total_decide(thy, order, Var(names[2]))
    dt = time.perf_counter() - t0
    result.check(dt < 10.0, f"pfn-total at |D|=10^3 took {dt:.2f}s (budget 10s)")


def run_all(per_path: int = 1000, n_random: int = 200,
            family_defaults: int = 4, seed: int = 20240601) -> list[SuiteResult]:
    suites: list[tuple[str, Callable[[SuiteResult], None]]] = [
        ("paper-examples", suite_paper_examples),
        ("fastpath-agreement",
         lambda r: suite_fastpath_agreement(r, per_path, seed)),
        ("staged-equivalence",
         lambda r: suite_staged_equivalence(r, family_defaults)),
        ("lex-total-uniqueness",
         lambda r: suite_lex_total_uniqueness(r, family_defaults)),
        ("lex-existence-realizability",
         lambda r: suite_lex_existence_realizability(r, family_defaults)),
        ("reduction-roundtrips",
         lambda r: suite_reduction_roundtrips(r, n_random)),
        ("shape-certification", suite_shape_certification),
        ("scaling", suite_scaling),
    ]
    return [_timed(fn, name) for name, fn in suites]
