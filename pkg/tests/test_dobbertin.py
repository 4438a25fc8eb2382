import pytest

from pforms import (
    compose,
    delta,
    delta_compose_pairs,
    derive_permutation_polynomial,
    dobbertin_form,
    dobbertin_form_inverse,
    ff_make,
    iterate,
    iterate_delta_closed_form,
    sign_sequences,
    uniform_representation,
    verify_inverse,
)
from pforms.dobbertin import ExtField
from pforms.errors import BadCongruence, BadN, DenominatorVanishesModField, VerificationFailed
from pforms.poly import PFormCtx


def test_sign_sequences_n2():
    assert sign_sequences(2) == [(-1,), (-1, -1), (1, -1)]


def test_sign_sequences_n3():
    seqs = sign_sequences(3)
    assert seqs == [
        (-1,),
        (-1, -1),
        (-1, -1, -1),
        (-1, 1, -1),
        (1, -1, -1),
    ]


def test_sign_sequences_constraints():
    for n in (2, 3, 4, 5):
        for seq in sign_sequences(n):
            assert seq[-1] == -1
            if len(seq) < n:
                assert seq[0] == -1
            assert all(
                not (seq[j] == 1 and seq[j + 1] == 1) for j in range(len(seq) - 1)
            )


def test_sign_sequences_bad_n():
    with pytest.raises(BadN):
        sign_sequences(1)
    with pytest.raises(BadN):
        dobbertin_form(1)


def test_form_terms():
    q2 = dobbertin_form(2)
    assert q2.num.terms == {(2, 0): 1, (0, 1): 1, (0, 0): 1}  # constant 3 mod 2
    assert q2.den.terms == {(1, 1): 1}
    q3 = dobbertin_form(3)
    assert q3.num.terms == {(2, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}  # constant 4 = 0
    q4 = dobbertin_form(4)
    assert (0, 0, 0, 0) in q4.num.terms  # constant 5 mod 2 = 1


def test_inverse_n2_is_self():
    assert dobbertin_form_inverse(2) == dobbertin_form(2)  # order 2


def test_inverse_n3_terms():
    # the five sign sequences over the common denominator x0*x1*x2
    inv = dobbertin_form_inverse(3)
    assert inv.den.terms == {(1, 1, 1): 1}
    assert inv.num.terms == {
        (0, 1, 1): 1,  # x0^-1
        (0, 0, 1): 1,  # x0^-1 x1^-1
        (0, 0, 0): 1,  # x0^-1 x1^-1 x2^-1
        (0, 2, 0): 1,  # x0^-1 x1 x2^-1
        (2, 0, 0): 1,  # x0 x1^-1 x2^-1
    }


@pytest.mark.parametrize("n", [2, 3, 4])
def test_inverse_verifies(n):
    assert verify_inverse(dobbertin_form(n), dobbertin_form_inverse(n))


def test_closed_form_examples():
    pair = iterate_delta_closed_form(3, 1)
    dc = pair.dmax.ctx
    assert pair.dmax == dc.elem((1, -1, 0))
    assert pair.dmin == dc.elem((-1, 0, 0))

    pair = iterate_delta_closed_form(2, 2)
    dc = pair.dmax.ctx
    assert pair.dmax == dc.one and pair.dmin == dc.one

    pair = iterate_delta_closed_form(4, 2)
    dc = pair.dmax.ctx
    assert pair.dmax == dc.elem((-1, 0, 1, 0))
    assert pair.dmin == dc.elem((-1, 0, 1, 0))


@pytest.mark.parametrize("n", [2, 3])
def test_closed_form_matches_expansion(n):
    q = dobbertin_form(n)
    for m in range(4):
        assert delta(iterate(q, m)) == iterate_delta_closed_form(n, m)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_closed_form_matches_pair_iteration(n):
    q = dobbertin_form(n)
    dq = delta(q)
    acc = delta(q.ctx.var(0))
    for m in range(7):
        assert acc == iterate_delta_closed_form(n, m)
        acc = delta_compose_pairs(acc, dq)


@pytest.mark.parametrize("n", range(2, 9))
def test_form_delta(n):
    d = delta(dobbertin_form(n))
    dc = d.dmax.ctx
    top = [1] + [0] * (n - 1)
    top[1] = -1
    assert d.dmax == dc.elem(top)
    if n % 2 == 1:
        assert d.dmin == dc.from_int(-1)
    else:
        bottom = [-1] + [0] * (n - 1)
        bottom[1] = -1
        assert d.dmin == dc.elem(bottom)


# --- univariate specialisation -------------------------------------------------


def test_uniform_rep_identity():
    ctx = PFormCtx(ff_make(2), 2)
    rep = uniform_representation(ctx.var(0), 2, 3)
    assert rep.num.terms == {(1,): 1}
    assert rep.den.terms == {(0,): 1}


def test_uniform_rep_monomial():
    ctx = PFormCtx(ff_make(2), 2)
    rep = uniform_representation(ctx.var(0) * ctx.var(1), 2, 3)
    assert rep.num.terms == {(5,): 1}  # x * x^4


def test_uniform_rep_dobbertin():
    rep = uniform_representation(dobbertin_form(2), 2, 3)
    assert rep.num.terms == {(2,): 1, (4,): 1, (0,): 1}
    assert rep.den.terms == {(5,): 1}


def test_uniform_rep_congruence():
    ctx = PFormCtx(ff_make(2), 2)
    with pytest.raises(BadCongruence):
        uniform_representation(ctx.var(0), 1, 3)  # 2*1 != 1 mod 3


def test_uniform_rep_denominator_vanishes():
    ctx = PFormCtx(ff_make(2), 2)
    f = 1 / (ctx.var(0) ** 4 + ctx.var(1))
    with pytest.raises(DenominatorVanishesModField):
        uniform_representation(f, 2, 3)  # x^4 + x^4 = 0 mod x^8 - x


def test_exponent_reduction_wraps():
    ctx = PFormCtx(ff_make(2), 2)
    f = ctx.var(0) ** 8  # x^8 == x as a function on F_8
    rep = uniform_representation(f, 2, 3)
    assert rep.num.terms == {(1,): 1}


def test_ext_field_f8():
    ext = ExtField(ff_make(2), 3)
    elems = list(ext.elements())
    assert len(elems) == 8
    for a in elems:
        assert ext.pow(a, 8) == a
        if a != ext.zero:
            assert ext.mul(a, ext.inv(a)) == ext.one


def test_ext_field_over_extension_base():
    ext = ExtField(ff_make(2, 2), 2)  # F_16 over F_4
    assert ext.size == 16
    for a in ext.elements():
        assert ext.pow(a, 16) == a


def test_perm_poly_monomial():
    ctx = PFormCtx(ff_make(2), 2)
    f = ctx.var(0) * ctx.var(1)
    finv = ctx.var(1) / ctx.var(0)
    g, report = derive_permutation_polynomial(f, finv, 2, 3)
    assert g.terms == {(5,): 1}
    assert report.field_size == 8
    assert report.permutes_field
    assert report.injective_on_domain
    assert report.domain_size == 7  # the composed inverse needs x^5 != 0
    # x -> x^5 fixes 0 and 1 and cycles the rest (5 has order 6 mod 7)
    assert sorted(report.cycle_type) == [1, 1, 6]


def test_perm_poly_identity():
    ctx = PFormCtx(ff_make(2), 2)
    x0 = ctx.var(0)
    g, report = derive_permutation_polynomial(x0, x0, 2, 3)
    assert g.terms == {(1,): 1}
    assert report.permutes_field
    assert report.cycle_type == [1] * 8


def test_perm_poly_dobbertin():
    q2 = dobbertin_form(2)
    g, report = derive_permutation_polynomial(q2, q2, 2, 3)
    assert report.injective_on_domain
    assert report.domain_size == 7
    assert report.field_size == 8


def test_perm_poly_requires_verified_inverse():
    ctx = PFormCtx(ff_make(2), 2)
    f = ctx.var(0) * ctx.var(1)
    with pytest.raises(VerificationFailed):
        derive_permutation_polynomial(f, f, 2, 3)


def test_perm_poly_retry_exhaustion():
    ctx = PFormCtx(ff_make(2), 2)
    # 2^n' = 4 mod 7 for every n' = 2 + 3k, so the retry can never succeed
    f = 1 / (ctx.var(0) ** 4 + ctx.var(1))
    x0 = ctx.var(0)
    finv = 1 / (x0**4 + star_of(x0))
    with pytest.raises((DenominatorVanishesModField, VerificationFailed)):
        derive_permutation_polynomial(f, finv, 2, 3, retry_limit=3)


def star_of(f):
    from pforms import star

    return star(f, 1)


def test_report_json_fields():
    ctx = PFormCtx(ff_make(2), 2)
    f = ctx.var(0) * ctx.var(1)
    _, report = derive_permutation_polynomial(f, ctx.var(1) / ctx.var(0), 2, 3)
    data = report.to_json()
    for key in (
        "field_size",
        "domain_size",
        "injective_on_domain",
        "permutes_field",
        "cycle_type",
        "nprime_used",
        "polynomial",
    ):
        assert key in data
