import itertools
import json
import math
from fractions import Fraction

import pytest

from lwcqsym.errors import ParseError, PreconditionError
from lwcqsym.lincomb import LinComb
from lwcqsym.qmzv import (
    ONE_MINUS_Q,
    QIndex,
    QPoly,
    at_q,
    duality_check,
    homomorphism_check,
    index_to_word,
    is_admissible,
    q1_word_formula,
    qshuffle,
    qshuffle_combination,
    stuffle_q_relation,
    verify_q,
    word_to_index,
    zeta_q,
    zeta_q_word,
)

from oracles import q_depth2, q_single

HALF = 0.5


def words(max_len):
    for n in range(max_len + 1):
        for w in itertools.product("ry", repeat=n):
            yield "".join(w)


ADMISSIBLE_5 = [w for w in words(5) if w == "" or is_admissible(w)]


# ------------------------------------------------------------- QPoly


def test_qpoly_arithmetic():
    p = QPoly((1, -1))
    assert str(p) == "1 - q"
    assert p * p == QPoly((1, -2, 1))
    assert p + 1 == QPoly((2, -1))
    assert 1 - p == QPoly((0, 1))
    assert p(Fraction(1, 2)) == Fraction(1, 2)
    assert p(1) == 0 and p(0) == 1
    assert (p - p).constant_value() == 0
    assert not (p - p)
    assert QPoly.const(3) == 3


# -------------------------------------------------------------- words


def test_qshuffle_examples():
    assert qshuffle("", "ry") == LinComb({"ry": QPoly.const(1)}, tag="word")
    assert dict(qshuffle("r", "r").items()) == {"rr": QPoly.const(2), "r": ONE_MINUS_Q}
    # the two-term form of rho y^m with rho y^n only survives at q = 1
    got = qshuffle("ryy", "ry")
    assert at_q(got, 1) == LinComb({"ryyry": 1, "ryryy": 1}, tag="word")
    assert dict(got.items())["ryyy"] == ONE_MINUS_Q


def test_qshuffle_bad_letter():
    with pytest.raises(ParseError):
        qshuffle("rx", "r")


def test_qshuffle_commutative_associative():
    for u, v in itertools.product(ADMISSIBLE_5, repeat=2):
        assert qshuffle(u, v) == qshuffle(v, u)
    small = [w for w in ADMISSIBLE_5 if len(w) <= 3]
    for u, v, w in itertools.product(small, repeat=3):
        one = LinComb({u: QPoly.const(1)}, tag="word")
        left = qshuffle_combination(qshuffle(u, v), LinComb({w: QPoly.const(1)}, tag="word"))
        right = qshuffle_combination(one, qshuffle(v, w))
        assert left == right, (u, v, w)


def test_qshuffle_associative_length_five():
    pool = [w for w in ADMISSIBLE_5 if len(w) == 5]
    for u, v, w in itertools.islice(itertools.product(pool, repeat=3), 0, None, 97):
        one = LinComb({u: QPoly.const(1)}, tag="word")
        left = qshuffle_combination(qshuffle(u, v), LinComb({w: QPoly.const(1)}, tag="word"))
        assert left == qshuffle_combination(one, qshuffle(v, w))


def test_q1_formula():
    for a, b, m, n in itertools.product(range(1, 4), repeat=4):
        u, v = "r" * a + "y" * m, "r" * b + "y" * n
        assert q1_word_formula(a, b, m, n) == at_q(qshuffle(u, v), 1), (a, b, m, n)
    assert q1_word_formula(1, 1, 1, 1) == LinComb({"ryry": 2}, tag="word")
    assert q1_word_formula(1, 2, 1, 1) == LinComb({"ryrry": 1, "rryry": 2}, tag="word")
    with pytest.raises(PreconditionError):
        q1_word_formula(0, 1, 1, 1)


def test_word_index_maps():
    assert word_to_index("ry") == (1,)
    assert word_to_index("rryry") == (1, 2)
    assert word_to_index("ryy") == (0, 1)
    assert word_to_index("") == ()
    for alpha in [(1,), (2, 1), (0, 3), (1, 0, 2)]:
        assert word_to_index(index_to_word(alpha)) == alpha
    with pytest.raises(PreconditionError):
        word_to_index("yr")
    with pytest.raises(PreconditionError):
        word_to_index("ryr")


# ------------------------------------------------------------- values


def test_single_and_double_values():
    for q in (0.25, 0.5, 0.75):
        for s in (1, 2, 3):
            assert abs(zeta_q((s,), q).value - q_single(s, q, terms=400 if q < 0.7 else 1500)) <= 1e-10
    assert abs(zeta_q((2, 1), HALF).value - q_depth2(2, 1, HALF)) <= 1e-10
    zero_two = math.fsum((n - 1) * (HALF**n * HALF / (1 - HALF**n)) ** 2 for n in range(2, 400))
    assert abs(zeta_q((0, 2), HALF).value - zero_two) <= 1e-10
    assert abs(zeta_q_word("ryy", HALF).value - q_depth2(0, 1, HALF)) <= 1e-10


def test_small_q_limit():
    vals = [zeta_q((1, 2), q).value for q in (0.1, 0.01, 0.001)]
    assert vals[0] > vals[1] > vals[2] > 0


def test_q_to_one_approaches_classical():
    z2 = math.pi**2 / 6
    gaps = [abs(zeta_q((2,), q, tol=1e-10).value - z2) for q in (0.9, 0.99, 0.999)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_value_preconditions():
    with pytest.raises(PreconditionError):
        zeta_q((1,), 1.0)
    with pytest.raises(PreconditionError):
        zeta_q((1, 0), HALF)
    with pytest.raises(PreconditionError):
        zeta_q((-1, 2), HALF)


# ------------------------------------------------------------- checks


def test_duality_examples():
    assert duality_check((1,), (1,), HALF).verified
    rep = duality_check((2,), (1,), HALF, tol=1e-10)
    assert rep.verified
    # without the (1-q) scaling the two sums differ by a factor of two here
    assert not rep.details["raw_verified"]
    assert math.isclose(rep.details["raw_lhs"], 2 * rep.details["raw_rhs"], rel_tol=1e-9)
    assert duality_check((1, 2), (2, 1), HALF).verified


def test_duality_regime():
    for k in (1, 2):
        for s in itertools.product(range(1, 4), repeat=k):
            for t in itertools.product(range(1, 4), repeat=k):
                for q in (0.25, 0.5, 0.75):
                    rep = duality_check(s, t, q)
                    assert rep.verified, rep.format()


def test_homomorphism_regime():
    pool = [w for w in words(4) if w and is_admissible(w) and w.endswith("y")]
    pool.append("")
    for u, v in itertools.combinations_with_replacement(pool, 2):
        rep = homomorphism_check(u, v, HALF)
        assert rep.verified, rep.format()


def test_homomorphism_unit_and_report():
    rep = homomorphism_check("", "rry", HALF)
    assert rep.residual == 0
    obj = rep.to_json_obj()
    assert obj["expansion"] == {"rry": "1"}
    json.dumps(obj)
    with pytest.raises(PreconditionError):
        homomorphism_check("yr", "ry", HALF)


def test_q_stuffle():
    rel = stuffle_q_relation(3, 3, 1, 1)
    assert (QIndex((0, 3)), QIndex((0, 3))) in rel.lhs
    assert verify_q(rel, HALF).verified
    for a, b in [(2, 3), (3, 2), (2, 2)]:
        assert verify_q(stuffle_q_relation(a, b, 0, 0), HALF).verified
    assert not verify_q(rel.perturbed(), HALF).verified
    with pytest.raises(PreconditionError):
        stuffle_q_relation(2, 3, 1, 0)


def test_q_stuffle_outside_hypotheses():
    # the q-sums converge here, and the residual is observed, not asserted by theory
    rel = stuffle_q_relation(2, 3, 1, 0, hypotheses=False)
    assert "outside" in rel.name
    rep = verify_q(rel, HALF)
    assert rep.residual < 1e-12
    for a, b, m, n in [(1, 2, 0, 0), (1, 1, 0, 0), (2, 2, 1, 1)]:
        assert verify_q(stuffle_q_relation(a, b, m, n, hypotheses=False), HALF).residual < 1e-12
    assert "outside" not in stuffle_q_relation(3, 3, 1, 1, hypotheses=False).name
    with pytest.raises(PreconditionError):
        stuffle_q_relation(0, 2, 0, 0, hypotheses=False)
