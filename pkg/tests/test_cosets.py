"""Transversal, minimal lengths, projections, audits and certificates."""

import pytest

from garside import kernel as K
from garside import oracle as O
from garside.budget import Budget
from garside.cosets import (
    bounded_projection_witness,
    coset_key,
    coset_length,
    coset_representative,
    fellow_projection_audit,
    is_hn_reduced,
    min_set,
    projection,
    projection_diameter,
    right_delta_positive_part,
)
from garside.errors import BudgetExceededError, DomainError
from garside.parabolic import d_k, make_parabolic

from conftest import positives_up_to


def transversal_elements(ball, p, max_len):
    return [
        x
        for x, d in sorted(ball.dist.items(), key=lambda kv: kv[0].sort_key())
        if d <= max_len and is_hn_reduced(x, p)
    ]


def subgroup_elements(p, max_len):
    return sorted(
        O.subgroup_ball(p.table, p.generator_simples(), max_len, Budget(10**7)),
        key=K.Element.sort_key,
    )


# -- reducedness -------------------------------------------------------------


def test_is_hn_reduced_examples(b3, b3_parabolic):
    t, p = b3.table, b3_parabolic
    assert is_hn_reduced(K.identity(t), p)
    assert is_hn_reduced(K.simple(t, b3.ba), p)
    assert not is_hn_reduced(K.simple(t, b3.ab), p)
    b_dinv = K.normalize(t, [(b3.b, 1), (b3.D, -1)])
    assert b_dinv == K.invert(K.simple(t, b3.ba))
    assert is_hn_reduced(b_dinv, p)
    a_dinv = K.normalize(t, [(b3.a, 1), (b3.D, -1)])
    assert not is_hn_reduced(a_dinv, p)
    assert not is_hn_reduced(K.delta_power(t, 1), p)  # positive D power


def test_right_delta_positive_part(b3):
    x = K.normalize(b3.table, [(b3.b, 1), (b3.a, -1)])
    assert right_delta_positive_part(x).body == (b3.b, b3.ba)


# -- representatives -----------------------------------------------------------


def test_representative_examples(b3, b3_parabolic):
    t, p = b3.table, b3_parabolic
    assert coset_representative(K.simple(t, b3.a), p).is_identity
    assert coset_representative(K.simple(t, b3.ab), p) == K.simple(t, b3.b)
    binv = K.invert(K.simple(t, b3.b))
    assert coset_representative(binv, p) == K.normalize(t, [(b3.b, 1), (b3.D, -1)])
    assert coset_representative(K.delta_power(t, 1), p) == K.simple(t, b3.ba)
    assert coset_representative(K.delta_power(t, 2), p) == d_k(p, 2)


def test_representative_fixes_transversal(b3, b3_parabolic, b3_ball4):
    for theta in transversal_elements(b3_ball4, b3_parabolic, 3):
        assert coset_representative(theta, b3_parabolic) == theta


def test_representative_is_coset_invariant(b3, b3_parabolic, b3_ball4):
    p = b3_parabolic
    betas = subgroup_elements(p, 2)
    for x, d in b3_ball4.dist.items():
        if d > 2:
            continue
        rep = coset_representative(x, p)
        for beta in betas:
            assert coset_representative(K.multiply(beta, x), p) == rep


def oracle_partition_agrees(table, p, radius):
    part = O.brute_coset_partition(table, p.div_sorted, radius, Budget(10**7))
    for cls in part.classes:
        reps = {coset_representative(x, p) for x in cls.members}
        assert len(reps) == 1, cls.members[:4]
        (rep,) = reps
        assert rep in cls.members or rep.length() > radius
        assert rep.length() == cls.min_length
        assert coset_length(cls.members[0], p) == cls.min_length
    return part


def test_transversality_b3(b3, b3_parabolic):
    part = oracle_partition_agrees(b3.table, b3_parabolic, 3)
    assert part.counts_by_length(3) == [1, 4, 10, 24]


def test_transversality_i24(i24, i24_parabolic):
    part = oracle_partition_agrees(i24, i24_parabolic, 3)
    assert part.counts_by_length(3) == [1, 6, 24, 90]


def test_coset_length_examples(b3, b3_parabolic):
    t, p = b3.table, b3_parabolic
    assert coset_length(K.simple(t, b3.a) ** 2, p) == 0
    assert coset_length(K.delta_power(t, 1), p) == 1
    for k in range(1, 5):
        assert coset_length(d_k(p, k), p) == k


def test_coset_key_equality(b3, b3_parabolic):
    t, p = b3.table, b3_parabolic
    x = K.delta_power(t, 1)
    y = K.simple(t, b3.ba)
    assert coset_key(x, p) == coset_key(y, p)
    assert coset_key(x, p) != coset_key(K.simple(t, b3.b), p)
    assert coset_key(x, p).length() == 1


# -- shortest elements and projections --------------------------------------------


def test_min_set_identity(b3, b3_parabolic):
    assert min_set(K.identity(b3.table), b3_parabolic) == [K.identity(b3.table)]


def test_min_set_d1(b3, b3_parabolic):
    t, p = b3.table, b3_parabolic
    assert min_set(d_k(p, 1), p) == sorted(
        [K.simple(t, b3.ba), K.delta_power(t, 1)], key=K.Element.sort_key
    )


def test_min_set_depends_only_on_coset(b3, b3_parabolic):
    # H D = H ba, so the two minimum sets coincide.
    t, p = b3.table, b3_parabolic
    assert min_set(K.delta_power(t, 1), p) == min_set(K.simple(t, b3.ba), p)


def test_min_set_bound_refusal(b3, b3_parabolic):
    with pytest.raises(BudgetExceededError) as info:
        min_set(d_k(b3_parabolic, 2), b3_parabolic, search_bound=1)
    assert info.value.required == 4


def test_min_set_bound_saturation(b3, b3_parabolic, b3_ball4):
    # Enlarging the search bound beyond 2 * length never adds members.
    p = b3_parabolic
    for x, d in b3_ball4.dist.items():
        if d > 2:
            continue
        base = min_set(x, p)
        wider = min_set(x, p, search_bound=2 * coset_length(x, p) + 2)
        assert base == wider


def test_projection_examples(b3, b3_parabolic):
    t, p = b3.table, b3_parabolic
    x = K.simple(t, b3.a) ** -2
    ps = projection(x, p)
    assert ps.members == (x,) and ps.distance == 0

    pr1 = projection(d_k(p, 1), p)
    a_inv = K.invert(K.simple(t, b3.a))
    assert pr1.distance == 1
    assert set(pr1.members) == {K.identity(t), a_inv}

    pr2 = projection(d_k(p, 2), p)
    assert K.identity(t) in pr2.members
    assert K.simple(t, b3.a) ** -2 in pr2.members


def test_projection_bijection_sizes(b3, b3_parabolic, b3_ball4):
    p = b3_parabolic
    for x, d in b3_ball4.dist.items():
        if d > 2:
            continue
        assert len(projection(x, p).members) == len(min_set(x, p))


def test_projection_agrees_with_bruteforce(b3, b3_parabolic, b3_ball4):
    p = b3_parabolic
    for x, d in sorted(b3_ball4.dist.items(), key=lambda kv: kv[0].sort_key()):
        if d > 2:
            continue
        got = projection(x, p)
        want, dist = O.brute_projection(
            x, p.div_sorted, 2 * coset_length(x, p) + 2, Budget(10**7)
        )
        assert set(got.members) == want
        assert got.distance == dist


def test_projection_diameter_examples(b3, b3_parabolic):
    t, p = b3.table, b3_parabolic
    assert projection_diameter(K.simple(t, b3.a), p) == 0
    assert projection_diameter(d_k(p, 1), p) == 1
    assert projection_diameter(d_k(p, 3), p) >= 3


def test_projection_abelian_values(z2):
    # pi_H(y^k) over H = <x> is {1, x^-1, ..., x^-k}: y^k = x^-j (x^j y^k)
    # with lg(x^j y^k) = k for 0 <= j <= k, anything else is further away.
    p = make_parabolic(z2, z2.simples.index("x"))
    x_inv = K.invert(K.simple(z2, z2.simples.index("x")))
    y = K.simple(z2, z2.simples.index("y"))
    for k in (1, 2):
        ps = projection(y ** k, p)
        assert ps.distance == k
        assert set(ps.members) == {x_inv ** j for j in range(k + 1)}
        want, dist = O.brute_projection(y ** k, p.div_sorted, 4, Budget(10**6))
        assert set(ps.members) == want and dist == k


# -- compatibility of products with the transversal --------------------------------


def test_orthogonal_form_of_subgroup_multiple(b3, b3_parabolic, b3_ball4):
    # For a positive representative c and beta = b2^-1 b1 in H, the left
    # orthogonal form of beta*c is exactly (b2, b1 c).
    p = b3_parabolic
    thetas = [
        th for th in transversal_elements(b3_ball4, p, 3) if th.delta_power >= 0
    ]
    for beta in subgroup_elements(p, 2):
        b2, b1 = K.left_orthogonal(beta)
        for c in thetas:
            got_b, got_a = K.left_orthogonal(K.multiply(beta, c))
            assert got_b == b2
            assert got_a == K.multiply(b1, c)


def _negative_form_cases():
    """(table, parabolic, ball) pairs with a parabolic of rank 1 and 2."""
    from garside.structures import build_braid

    from conftest import B3

    b3 = B3()
    cases = [(b3.table, make_parabolic(b3.table, b3.a), 4)]
    t4 = build_braid(4)
    cases.append((t4, make_parabolic(t4, t4.simples.index("aba")), 3))
    return [
        (t, p, O.bfs_lengths(t, radius, Budget(10**7)))
        for t, p, radius in cases
    ]


def test_delta_power_survives_submonoid_multiple():
    # theta = c D^-p with p >= 1 and b in N: b*theta keeps the D power -p.
    for t, p, ball in _negative_form_cases():
        thetas = [
            th
            for th in transversal_elements(ball, p, ball.radius)
            if th.delta_power <= -1
        ]
        assert thetas
        n_elements = [
            x for x in positives_up_to(ball, 2)
            if all(u in p.div_delta for u in x.positive_factors())
        ]
        for theta in thetas:
            for b in n_elements:
                z = K.multiply(b, theta)
                assert z.delta_power == theta.delta_power


def test_right_delta_form_of_full_subgroup_multiple():
    # beta = b delta^-k with k >= 1 and delta not dividing b: the right
    # D-form of beta*theta is b w_1..w_k phi^-k(c) D^(-k-p), the positive
    # part unmovable.
    for t, p, ball in _negative_form_cases():
        thetas = [
            th
            for th in transversal_elements(ball, p, ball.radius)
            if th.delta_power <= -1
        ]
        n_elements = [
            x for x in positives_up_to(ball, 2)
            if all(u in p.div_delta for u in x.positive_factors())
            and not K.has_left_divisor(x, p.delta_sub)
        ]
        assert n_elements
        for theta in thetas:
            ppow = -theta.delta_power
            c = right_delta_positive_part(theta)
            for b in n_elements:
                for k in (1, 2):
                    beta = K.multiply(b, p.delta_element() ** -k)
                    z = K.multiply(beta, theta)
                    w = K.multiply(
                        K.multiply(b, d_k(p, k)), K.conjugate_by_delta(c, -k)
                    )
                    assert w.delta_power == 0  # unmovable
                    assert z == K.multiply(w, K.delta_power(t, -(k + ppow)))


# -- audits and certificates ---------------------------------------------------------


def test_fellow_audit_len0(b3, b3_parabolic):
    report = fellow_projection_audit(b3_parabolic, 0, budget=Budget(10**7))
    assert report.passed
    assert report.k_observed <= 1


def test_fellow_audit_len1(b3, b3_parabolic):
    report = fellow_projection_audit(b3_parabolic, 1, budget=Budget(10**7))
    assert report.passed
    assert report.k_observed <= 5
    assert report.rows
    # Every row's claimed best distance really is achievable.
    for row in report.rows[:50]:
        assert K.multiply(K.invert(row.beta), row.best_partner).length() == row.distance


def test_fellow_audit_abelian(z2):
    p = make_parabolic(z2, z2.simples.index("x"))
    report = fellow_projection_audit(p, 1, budget=Budget(10**7))
    assert report.passed
    assert report.k_observed <= 1


def test_fellow_audit_budget_exhaustion(b3, b3_parabolic):
    report = fellow_projection_audit(b3_parabolic, 2, budget=Budget(50))
    assert report.partial
    assert not report.passed


def test_unbounded_witness(b3, b3_parabolic):
    for k in (1, 3):
        cert = bounded_projection_witness(b3_parabolic, k)
        assert cert.verified
        assert cert.element == d_k(b3_parabolic, k + 1)
        assert cert.spread == k + 1 > k


def test_unbounded_witness_refuses_improper(b3):
    p = make_parabolic(b3.table, b3.D)
    with pytest.raises(DomainError):
        bounded_projection_witness(p, 1)
