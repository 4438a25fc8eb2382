"""Acceptance suite: every criterion runs at its stated tolerance (exact
symbolic equality unless noted) and prints one pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines live.
"""

import itertools
import random
import time
from contextlib import contextmanager

from pforms import (
    GeneratorTable,
    PFormCtx,
    Word,
    alternating_word_delta,
    certify_infinite_order,
    compose,
    coset_representatives,
    delta,
    delta_compose_pairs,
    delta_of_composition,
    derive_permutation_polynomial,
    dobbertin_form,
    dobbertin_form_inverse,
    embed,
    expand_word,
    ff_make,
    iterate,
    iterate_delta_closed_form,
    membership_necessary_checks,
    unit_to_monomial,
    verify_inverse,
)
from pforms.core import DeltaPair
from pforms.degrees import deg_ctx
from pforms.groups import INFINITE, random_unit

from helpers import SIGN_CLASSES, rand_ratfunc, rand_sign_class


@contextmanager
def criterion(num, desc, budget_s=None):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[FAIL] criterion {num}: {desc}")
        raise
    elapsed = time.perf_counter() - start
    print(f"[PASS] criterion {num}: {desc} ({elapsed:.2f}s)")
    if budget_s is not None:
        assert elapsed < budget_s, f"criterion {num} exceeded {budget_s}s ({elapsed:.2f}s)"


def test_criterion_01_involution():
    with criterion(1, "the n=2 form has order 2 exactly", budget_s=1.0):
        q2 = dobbertin_form(2)
        assert iterate(q2, 2) == q2.ctx.var(0)


def test_criterion_02_inverse_formula():
    with criterion(2, "explicit inverse verifies for n = 2, 3, 4", budget_s=60.0):
        for n in (2, 3, 4):
            assert verify_inverse(dobbertin_form(n), dobbertin_form_inverse(n))


def test_criterion_03_computer_relation():
    with criterion(3, "((x0+1) o Q_2)^(3) = x0 exactly", budget_s=1.0):
        q2 = dobbertin_form(2)
        shift = q2.ctx.var(0) + 1
        assert iterate(compose(shift, q2), 3) == q2.ctx.var(0)


def test_criterion_04_form_degrees():
    with criterion(4, "delta(Q_n) closed values for n = 2..8"):
        for n in range(2, 9):
            d = delta(dobbertin_form(n))
            dc = deg_ctx(n, 2)
            top = [1, -1] + [0] * (n - 2)
            assert d.dmax == dc.elem(top)
            if n % 2 == 1:
                assert d.dmin == dc.from_int(-1)
            else:
                assert d.dmin == dc.elem([-1, -1] + [0] * (n - 2))


def test_criterion_05_iterate_degree_tables():
    with criterion(
        5, "iterate degree tables: expansion (n<=3, m<=3) and law iteration (n<=5, m<=6)",
        budget_s=120.0,
    ):
        for n in (2, 3):
            q = dobbertin_form(n)
            for m in range(4):
                assert delta(iterate(q, m)) == iterate_delta_closed_form(n, m)
        for n in (2, 3, 4, 5):
            q = dobbertin_form(n)
            dq = delta(q)
            acc = delta(q.ctx.var(0))
            for m in range(7):
                assert acc == iterate_delta_closed_form(n, m)
                acc = delta_compose_pairs(acc, dq)


def test_criterion_06_infinite_order():
    for n in range(3, 9):
        with criterion(6, f"infinite-order certificate for n = {n}", budget_s=1.0):
            verdict, _ = certify_infinite_order(dobbertin_form(n))
            assert verdict is INFINITE


def test_criterion_07_coset_system():
    with criterion(7, "coset system size q(q+1)/2 and exhaustive distinctness"):
        for q in (2, 3, 4, 5):
            field = ff_make(2, 2) if q == 4 else ff_make(q)
            reps = coset_representatives(field)
            assert len(reps) == q * (q + 1) // 2
        for q in (2, 3):
            ctx = PFormCtx(ff_make(q), 2)
            reps = coset_representatives(ctx.field)
            for i, alpha in enumerate(reps):
                for j, beta in enumerate(reps):
                    if i == j:
                        continue
                    h = compose(alpha.inverse().as_ratfunc(ctx), beta.as_ratfunc(ctx))
                    d = delta(h)
                    assert d.dmax.sign() == 0 or d.dmin.sign() == 0


def test_criterion_08_composition_degree_laws():
    with criterion(8, "degree law vs expansion, 200 pairs per sign case"):
        for cls in SIGN_CLASSES:
            rng = random.Random(hash(("acceptance", cls)) % 2**32)
            for ctx_args in ((2, 2), (3, 2)):
                ctx = PFormCtx(ff_make(ctx_args[0]), ctx_args[1])
                for _ in range(100):
                    f = rand_ratfunc(ctx, rng)
                    g = rand_sign_class(ctx, rng, cls)
                    assert delta_of_composition(f, g) == delta(compose(f, g))


def test_criterion_09_monomial_ring_isomorphism():
    with criterion(9, "monomial degree map: products add, compositions multiply"):
        rng = random.Random(424242)
        ctx = PFormCtx(ff_make(2), 2)
        ctx3 = PFormCtx(ff_make(3), 2)
        for c in (ctx, ctx3):
            for _ in range(50):
                e1 = [rng.randint(-4, 4) for _ in range(c.n)]
                e2 = [rng.randint(-4, 4) for _ in range(c.n)]
                if not any(e2):
                    e2[0] = 1
                a, b = c.monomial(e1), c.monomial(e2)
                da, db = delta(a).dmax, delta(b).dmax
                assert delta(a * b).dmax == da + db
                assert delta(compose(a, b)).dmax == da * db


def test_criterion_10_unit_facts():
    with criterion(10, "norm(1+sqrt2) = -1 and the quoted Z[3^(1/6)] units are units"):
        assert deg_ctx(2, 2).elem((1, 1)).norm() == -1
        dc6 = deg_ctx(6, 3)
        quoted = [
            (-2, 0, 0, 1, 0, 0),
            (-1, -1, 1, -1, 0, 1),
            (1, -1, -1, -1, 0, 1),
        ]
        for coords in quoted:
            assert dc6.elem(coords).is_unit()


def _alternating_table():
    ctx = PFormCtx(ff_make(2), 2)
    table = GeneratorTable(ctx)
    shift = ctx.var(0) + 1
    table.add("a", shift, shift)
    table.add("m", ctx.var(0) * ctx.var(1), ctx.var(1) / ctx.var(0))
    return ctx, table


def test_criterion_11_alternating_words():
    with criterion(
        11, "alternating words, <= 4 blocks, |e| <= 2: closed form matches, none trivial",
        budget_s=60.0,
    ):
        ctx, table = _alternating_table()
        ident = ctx.var(0)
        exps_range = (-2, -1, 1, 2)
        count = 0
        for size in range(1, 5):
            for exps in itertools.product(exps_range, repeat=size):
                atoms = []
                for e in exps:
                    atoms += [("m", e), ("a", 1)]
                f = expand_word(Word(tuple(atoms)), table)
                assert delta(f) == alternating_word_delta(exps)
                assert not (f == ident)
                count += 1
        assert count == 4 + 16 + 64 + 256


def test_criterion_12_permutation_pipeline():
    with criterion(12, "univariate pipeline on F_8: x^5 permutes, Q_2 injective on D", budget_s=5.0):
        ctx = PFormCtx(ff_make(2), 2)
        f = ctx.var(0) * ctx.var(1)
        g, report = derive_permutation_polynomial(f, ctx.var(1) / ctx.var(0), 2, 3)
        assert g.terms == {(5,): 1}
        assert report.permutes_field and report.field_size == 8
        q2 = dobbertin_form(2)
        _, report2 = derive_permutation_polynomial(q2, q2, 2, 3)
        assert report2.injective_on_domain


def test_criterion_13_necessary_condition_battery():
    with criterion(13, "crafted non-members fail the cited clause"):
        ctx = PFormCtx(ff_make(2), 2)
        report = membership_necessary_checks(ctx.var(0) + ctx.var(1))
        by_name = {c.name: c.passed for c in report.checks}
        assert not by_name["degrees-unit-or-zero"]

        assert membership_necessary_checks(dobbertin_form(3)).is_candidate

        x0, x1 = ctx.var(0), ctx.var(1)
        f = (x0 * x1 + 1) / (x0 * x1 + x0 + 1)
        report = membership_necessary_checks(f)
        by_name = {c.name: c.passed for c in report.checks}
        assert by_name["degrees-unit-or-zero"]
        assert by_name["degree-signs-agree"]
        assert not by_name["nonzero-delta-over-F2"]


def test_criterion_14_homomorphism_suites():
    with criterion(14, "block embedding and monomial embedding, 50 cases each"):
        rng = random.Random(777)
        src = PFormCtx(ff_make(2), 2)
        dst = PFormCtx(ff_make(2), 4)
        for _ in range(50):
            f = rand_ratfunc(src, rng)
            g = rand_sign_class(src, rng, rng.choice(("pp", "mm", "p0")))
            assert embed(compose(f, g), dst) == compose(embed(f, dst), embed(g, dst))
        units = [src.deg.elem((1, 1))]
        for _ in range(50):
            e1, e2 = random_unit(units, rng), random_unit(units, rng)
            lhs = compose(
                unit_to_monomial(src, e1).as_ratfunc(),
                unit_to_monomial(src, e2).as_ratfunc(),
            )
            assert lhs == unit_to_monomial(src, e1 * e2).as_ratfunc()


def test_criterion_15_surjectivity_witness():
    with criterion(15, "(x0-1) o phi(1+sqrt2) o (x0+1) has degree pair (e, 1)"):
        ctx = PFormCtx(ff_make(2), 2)
        e = ctx.deg.elem((1, 1))
        mono = unit_to_monomial(ctx, e).as_ratfunc()
        shift = ctx.var(0) + 1  # -1 = 1 over F_2
        witness = compose(compose(shift, mono), shift)
        assert witness == ctx.var(0) * ctx.var(1) + ctx.var(0) + ctx.var(1)
        assert delta(witness) == DeltaPair(e, ctx.deg.one)
