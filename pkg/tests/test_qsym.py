import random
from fractions import Fraction

import pytest

from nqsym import compositions as comp
from nqsym import linalg
from nqsym import qsym
from nqsym.elements import QSymElement, format_element
from nqsym.errors import NotDivisibleError, ValidationError


def random_element(rng, basis, max_degree=6, terms=3, integral=True):
    out = {}
    for _ in range(terms):
        n = rng.randint(0, max_degree)
        cands = [c for c in comp.compositions(n)]
        coeff = rng.randint(-5, 5) if integral else Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        out[rng.choice(cands)] = coeff
    return QSymElement(basis, out)


def test_element_normalization_and_equality():
    e = QSymElement("M", {(1, 2): 1, (2, 1): 0})
    assert e.terms == {(1, 2): 1}
    assert e + QSymElement("M", {(1, 2): -1}) == QSymElement.zero("M")
    assert QSymElement("M", {(1, 2): Fraction(2, 2)}).is_integral()


def test_mixed_basis_addition_converts_to_monomial():
    n2 = QSymElement.single("N", (2,))
    l11 = QSymElement.single("L", (1, 1))
    total = n2 + l11
    assert total.basis == "M"
    assert total == qsym.convert(n2, "M") + qsym.convert(l11, "M")
    assert total.terms == {(2,): 1, (1, 1): 3}
    assert (n2 - n2).basis == "N"


def test_nbasis_element_examples():
    assert qsym.n_basis_element((1, 2, 2)).terms == {
        (1, 4): 1,
        (1, 3, 1): 1,
        (1, 1, 3): 1,
        (1, 1, 2, 1): 1,
    }
    assert qsym.n_basis_element((1, 1)).terms == {(1, 1): 1}
    assert qsym.n_basis_element(()).terms == {(): 1}
    # a single antichain gives the run-composition census of all orderings
    from itertools import permutations

    for n in range(1, 6):
        expected = {}
        for w in permutations(range(1, n + 1)):
            c = comp.runs(w)
            expected[c] = expected.get(c, 0) + 1
        assert qsym.n_basis_element((n,)).terms == expected


def test_nbasis_element_positive_fundamental_coefficients():
    for n in range(1, 8):
        for alpha in comp.compositions(n):
            if not alpha:
                continue
            e = qsym.n_basis_element(alpha)
            assert all(isinstance(v, int) and v > 0 for v in e.terms.values())


def test_nbasis_element_matches_poset_route():
    from nqsym.posets import build_P_alpha, qsym_of_poset

    for n in range(1, 7):
        for alpha in comp.compositions(n):
            if not alpha:
                continue
            assert qsym.n_basis_element(alpha) == qsym_of_poset(build_P_alpha(alpha))


def test_convert_examples():
    assert qsym.convert(qsym.fundamental_element((1,)), "M").terms == {(1,): 1}
    assert qsym.convert(QSymElement.single("N", (2,)), "M").terms == {(2,): 1, (1, 1): 2}


def test_convert_round_trips():
    rng = random.Random(17)
    for trial in range(60):
        basis = rng.choice("MLN")
        q = random_element(rng, basis, integral=(trial % 2 == 0))
        for target in "MLN":
            assert qsym.convert(qsym.convert(q, target), basis) == q


def test_integer_l_expansion_has_integer_n_expansion():
    rng = random.Random(23)
    for _ in range(40):
        q = random_element(rng, "L", max_degree=7)
        assert qsym.convert(q, "N").is_integral()


def test_convert_mixed_degree_with_scalar_part():
    q = QSymElement("L", {(): 2, (1,): 3, (2, 1): -1})
    n = qsym.convert(q, "N")
    assert n.coefficient(()) == 2
    assert qsym.convert(n, "L") == q


def test_transition_matrix_n2():
    tm = qsym.transition_matrix(2, "N", "L")
    assert tm.order == ((2,), (1, 1))
    assert tm.as_lists() == [[1, 1], [0, 1]]
    assert tm.entry((2,), (1, 1)) == 1


def test_transition_matrix_dimension_and_determinant():
    for n in range(1, 7):
        tm = qsym.transition_matrix(n, "N", "L")
        assert len(tm.order) == 2 ** (n - 1)
        assert abs(linalg.determinant(tm.as_lists())) == 1
        inverse = qsym.transition_matrix(n, "L", "N")
        assert all(isinstance(v, int) for row in inverse.rows for v in row)


def test_nl_unitriangular_matrix():
    for n in range(1, 8):
        order, rows = qsym.nl_unitriangular_matrix(n, triangular=True)
        for i, row in enumerate(rows):
            assert row[i] == 1
            assert all(v == 0 for v in row[:i])
            assert all(isinstance(v, int) and v >= 0 for v in row)
        # binary word ordering keeps the unit diagonal but not triangularity
        order_bw, rows_bw = qsym.nl_unitriangular_matrix(n, triangular=False)
        assert all(rows_bw[i][i] == 1 for i in range(len(order_bw)))
    _, rows4 = qsym.nl_unitriangular_matrix(4, triangular=False)
    assert any(
        rows4[i][j] != 0 for i in range(len(rows4)) for j in range(i)
    ), "binary word order happens to triangularize degree 4"


def test_mul_examples():
    p = qsym.mul(qsym.monomial_element((1,)), qsym.monomial_element((1, 1)))
    assert p.terms == {(1, 1, 1): 3, (2, 1): 1, (1, 2): 1}
    one = QSymElement.one("M")
    q = QSymElement("M", {(2, 1): 3, (1,): -2})
    assert qsym.mul(one, q) == q


def test_mul_commutative_associative():
    rng = random.Random(31)
    for _ in range(15):
        a = random_element(rng, "M", max_degree=3, terms=2)
        b = random_element(rng, "L", max_degree=3, terms=2)
        c = random_element(rng, "N", max_degree=2, terms=2)
        ab = qsym.mul(a, b)
        assert ab == qsym.mul(b, a)
        assert qsym.mul(ab, c) == qsym.mul(a, qsym.mul(b, c))


def test_structure_constants_examples():
    assert dict(qsym.structure_constants((1,), (1,))) == {(2,): 1}
    assert dict(qsym.structure_constants((1,), (1, 1))) == {(2, 1): 1, (1, 1, 1): 1}
    assert dict(qsym.structure_constants((), (2, 1))) == {(2, 1): 1}


def test_mul_nbasis_matches_oracle_small():
    for total in range(2, 7):
        for wa in range(1, total):
            for alpha in comp.compositions(wa):
                if not alpha:
                    continue
                for beta in comp.compositions(total - wa):
                    if not beta:
                        continue
                    direct = qsym.convert(qsym.mul_nbasis(alpha, beta), "M")
                    oracle = qsym.mul(
                        qsym.convert(QSymElement.single("N", alpha), "M"),
                        qsym.convert(QSymElement.single("N", beta), "M"),
                    )
                    assert direct == oracle


def test_nbasis_product_element_dispatch():
    a = QSymElement("N", {(1,): 2})
    b = QSymElement("N", {(1, 1): 1})
    assert (a * b).terms == {(2, 1): 2, (1, 1, 1): 2}
    assert (a * b).basis == "N"


def test_coproduct_examples():
    t = qsym.coproduct_monomial(qsym.monomial_element((1, 1)))
    assert t.terms == {((1, 1), ()): 1, ((1,), (1,)): 1, ((), (1, 1)): 1}
    unit = qsym.coproduct_monomial(QSymElement.one("M"))
    assert unit.terms == {((), ()): 1}


def test_coproduct_counit_and_coassociativity():
    rng = random.Random(41)
    for _ in range(20):
        q = random_element(rng, "M", max_degree=5, terms=2)
        t = qsym.coproduct_monomial(q)
        left = {}
        right = {}
        for (a, b), coeff in t.terms.items():
            if a == ():
                right[b] = right.get(b, 0) + coeff
            if b == ():
                left[a] = left.get(a, 0) + coeff
        m = qsym.convert(q, "M")
        assert left == m.terms and right == m.terms
        # both double coproducts agree as triple splittings
        first = {}
        for (a, b), coeff in t.terms.items():
            for cut in range(len(a) + 1):
                key = (a[:cut], a[cut:], b)
                first[key] = first.get(key, 0) + coeff
        second = {}
        for (a, b), coeff in t.terms.items():
            for cut in range(len(b) + 1):
                key = (a, b[:cut], b[cut:])
                second[key] = second.get(key, 0) + coeff
        first = {k: v for k, v in first.items() if v}
        second = {k: v for k, v in second.items() if v}
        assert first == second


def test_coproduct_rank_grading_counterexample():
    delta = qsym.coproduct_monomial(QSymElement.single("N", (1, 1)))
    in_n = qsym.tensor_convert(delta, "N")
    assert in_n.coefficient((1,), (1,)) == 1
    assert comp.rank((1,)) + comp.rank((1,)) != comp.rank((1, 1))


def test_supp_and_Vnr():
    assert qsym.supp(QSymElement.single("N", (1, 2, 2))) == frozenset({(1, 2, 2)})
    assert qsym.supp(QSymElement.zero("N")) == frozenset()
    assert qsym.in_Vnr(QSymElement.single("N", (1, 2, 2)), 5, 3)
    assert not qsym.in_Vnr(QSymElement.single("N", (1, 2, 2)), 5, 2)
    from math import comb

    for n in range(1, 11):
        for r in range(1, n + 1):
            assert len(qsym.compositions_of_rank(n, r)) == comb(n - 1, r - 1)
        assert sum(len(qsym.compositions_of_rank(n, r)) for r in range(1, n + 1)) == 2 ** (
            n - 1
        )


def test_quotient_projection():
    assert qsym.quotient_J_project(QSymElement.single("N", (1,))) == QSymElement.zero("N")
    q = QSymElement("N", {(2, 1, 1): 1, (2, 2): 1})
    assert qsym.quotient_J_project(q).terms == {(2, 2): 1}
    rng = random.Random(47)
    for _ in range(20):
        a = random_element(rng, "N", max_degree=5)
        b = random_element(rng, "N", max_degree=5)
        proj = qsym.quotient_J_project
        assert proj(a + b) == proj(a) + proj(b)
        assert proj(proj(a)) == proj(a)


def test_divide_by_pure_power():
    assert qsym.divide_by_pure_power(QSymElement.single("N", (2,)), 1).terms == {(1,): 1}
    with pytest.raises(NotDivisibleError):
        qsym.divide_by_pure_power(QSymElement.single("N", (1, 1)), 1)
    rng = random.Random(53)
    for _ in range(25):
        n = rng.randint(1, 5)
        s = rng.randint(1, 3)
        cands = [c for c in comp.compositions(n) if c]
        q = QSymElement(
            "N", {rng.choice(cands): rng.randint(1, 3), rng.choice(cands): -2}
        )
        product = qsym.nbasis_product(QSymElement.single("N", (s,)), q)
        assert qsym.divide_by_pure_power(product, s) == qsym.convert(q, "N")


def test_quasi_shuffle_counts():
    qs = dict(qsym.quasi_shuffle((1,), (1, 1)))
    assert qs == {(1, 1, 1): 3, (2, 1): 1, (1, 2): 1}
    assert dict(qsym.quasi_shuffle((), (3, 1))) == {(3, 1): 1}


def test_json_and_formatting():
    q = QSymElement("N", {(2, 2): Fraction(1, 2), (1, 1, 1, 1): -3})
    data = q.to_json()
    assert data["terms"][0]["comp"] == [2, 2]
    assert data["terms"][0]["num"] == 1 and data["terms"][0]["den"] == 2
    assert QSymElement.from_json(data) == q
    text = format_element(q)
    assert "N[22]" in text and "N[1111]" in text
    with pytest.raises(ValidationError):
        QSymElement.from_json({"basis": "N", "terms": [{"comp": [1], "num": 1, "den": 0}]})


def test_term_json_ordering_by_degree_then_word():
    q = QSymElement("M", {(1, 1): 1, (2,): 1, (1,): 1, (3,): 1})
    comps = [tuple(t["comp"]) for t in q.to_json()["terms"]]
    assert comps == [(1,), (2,), (1, 1), (3,)]


def test_shared_caches_are_thread_safe():
    # elements are immutable and the memoized tables are write-once; racing
    # conversions must agree with the serial result
    import threading

    qsym.nl_ascent_run_rows.cache_clear()
    q = QSymElement("L", {c: 1 for c in comp.compositions(6)})
    expected = qsym.convert(q, "N")
    results = [None] * 8
    def work(i):
        results[i] = qsym.convert(q, "N")
    threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == expected for r in results)
