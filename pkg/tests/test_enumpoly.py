import itertools
from collections import Counter

import numpy as np
import pytest
from conftest import small_scheme_specs
from hypothesis import given, settings
from hypothesis import strategies as st

from masseyx import linalg, reproduce
from masseyx.access import enumerate_access_structure
from masseyx.code import LinearCode, dual, enumerate_codewords, min_distance, restrict_support
from masseyx.enumpoly import (
    FixedVector,
    SparseEnumerator,
    count_bound,
    derivative_Z,
    extension_enumerator,
    full_secret_coefficient,
    joint_weight_enumerator,
    parse_pretty,
    secret_coefficient,
    verify_exact_count,
)
from masseyx.gf import make_field
from masseyx.scheme import SchemeInstance

F2, F3 = make_field(2), make_field(3)
REP4 = LinearCode(F2, [[1, 1, 1, 1]])
SPEC_IDS = [f"{s}-l{l}" for s, l in small_scheme_specs()]


def naive_jwe(args):
    """Pure-Python joint enumerator over explicit coordinate tuples."""
    lists = []
    for a in args:
        if isinstance(a, FixedVector):
            lists.append([a.coords])
        else:
            lists.append([c.coords for c in enumerate_codewords(a)])
    g = len(args)
    acc = Counter()
    for tup in itertools.product(*lists):
        exp = [0] * (1 << g)
        for col in zip(*tup):
            idx = 0
            for x in col:
                idx = (idx << 1) | (x != 0)
            exp[idx] += 1
        acc[tuple(exp)] += 1
    return SparseEnumerator(g, acc)


def naive_extension_enumerator(D):
    """Coset representatives of D^perp / D by explicit set partition."""
    F = D.field
    Dw = {c.coords for c in enumerate_codewords(D)}
    dD = min(c.weight for c in enumerate_codewords(D) if c.weight)
    remaining = {c.coords for c in enumerate_codewords(dual(D))}
    out = Counter()
    while remaining:
        c = min(remaining)
        coset = {tuple(F.add(a, b) for a, b in zip(c, d)) for d in Dw}
        remaining -= coset
        if c in Dw:
            out[dD] += 1
            continue
        # d(<c, D>) over all nonzero combinations
        best = dD
        for lam in range(1, F.q):
            for d in Dw:
                w = sum(1 for a, b in zip(c, d) if F.add(F.mul(lam, a), b))
                best = min(best, w)
        out[best] += 1
    return dict(sorted(out.items()))


def test_repetition_enumerators():
    assert joint_weight_enumerator([REP4]) == parse_pretty("x_0^4 + x_1^4", 2, 1)
    assert joint_weight_enumerator([REP4, REP4]) == parse_pretty("x_0^4+x_1^4+x_2^4+x_3^4", 4)


def test_hamming_biweight(codes):
    J = joint_weight_enumerator([codes["hamming8"]] * 2)
    assert J == parse_pretty(reproduce.HAMMING_BIWEIGHT, 4)
    assert len(J) == 11 and J.coefficient((2, 2, 2, 2)) == 168


def test_pattern_index_convention():
    u = FixedVector((1, 0, 1, 0, 0))
    v = FixedVector((0, 1, 0, 1, 0))
    J = joint_weight_enumerator([u, v, u, v])
    # column 1 reads 1010, column 2 reads 0101
    exp = [0] * 16
    exp[10], exp[5], exp[0] = 2, 2, 1
    assert J.terms == {tuple(exp): 1}


@pytest.mark.parametrize(
    "args",
    [
        ("c1_ternary",),
        ("c1_ternary", "c1_ternary"),
        ("toy6", "toy6", "toy6"),
        ("hamming8", "dual:hamming8"),
        ("dual:c1_ternary", "ind:8:1,2"),
        ("ind:6:1", "toy6", "ind:6:2,4"),
    ],
)
def test_jwe_against_naive_oracle(codes, args):
    objs = []
    for a in args:
        if a.startswith("ind:"):
            _, n, pos = a.split(":")
            objs.append(FixedVector.indicator(int(n), [int(x) for x in pos.split(",")]))
        elif a.startswith("dual:"):
            objs.append(dual(codes[a[5:]]))
        else:
            objs.append(codes[a])
    assert joint_weight_enumerator(objs) == naive_jwe(objs)


def test_jwe_errors(codes):
    with pytest.raises(ValueError):
        joint_weight_enumerator([codes["toy6"], codes["hamming8"]])
    with pytest.raises(ValueError):
        joint_weight_enumerator([])
    with pytest.raises(RuntimeError):
        joint_weight_enumerator([codes["golay24"]] * 2, cap=1000)


@pytest.mark.parametrize("name", ["c1_ternary", "hamming8", "toy6", "golay24"])
def test_jwe_invariants(codes, name):
    C = codes[name]
    size = C.q**C.k_dim
    J1 = joint_weight_enumerator([C])
    assert J1.degrees() == {C.n_len}
    assert J1.coefficient_sum() == size
    if name == "golay24":
        return
    J = joint_weight_enumerator([C, C])
    assert J.degrees() == {C.n_len}
    assert J.evaluate([1, 1, 1, 1]) == size * size
    assert J.permute([0, 2, 1, 3]) == J
    collapsed = J.specialize({1: 0, 3: 2})
    expected = SparseEnumerator(2, {(a, 0, b, 0): c * size for (a, b), c in J1.terms.items()})
    assert collapsed == expected


def test_specialize_examples(codes):
    J = joint_weight_enumerator([codes["hamming8"]] * 2)
    got = J.specialize({1: 0, 3: 2})
    assert got == parse_pretty("16x_0^8 + 224x_0^4x_2^4 + 16x_2^8", 4)
    assert J.specialize({}) == J
    assert J.specialize({1: 0, 2: 0, 3: 0}) == SparseEnumerator(2, {(8, 0, 0, 0): 256})


def test_json_roundtrip_and_order(codes):
    J = joint_weight_enumerator([codes["c1_ternary"]] * 2)
    doc = J.to_json()
    assert SparseEnumerator.from_json(doc) == J
    exps = [t["exp"] for t in doc["terms"]]
    assert exps == sorted(exps, reverse=True)
    assert all(isinstance(t["coef"], str) for t in doc["terms"])


def test_pretty_roundtrip(codes):
    J = joint_weight_enumerator([codes["hamming8"]] * 2)
    assert parse_pretty(J.pretty(), 4) == J


def test_hamming_secret_coefficient(ham2):
    Z = secret_coefficient(ham2)
    assert Z == parse_pretty(reproduce.HAMMING_Z, 4)
    assert count_bound(Z, 4, 4) == (12, True)
    assert count_bound(Z, 6, 4) == (4, False)


def test_zero_secret_coefficient():
    ident = LinearCode(F2, np.eye(4, dtype=np.int64))
    S = SchemeInstance(ident, 2, 1)
    Z = secret_coefficient(S)
    assert len(Z) == 0 and Z.pretty() == "0"


@pytest.mark.parametrize("spec", [("toy6", 2), ("hamming8", 2), ("toy6", 1), ("c1_ternary", 1)])
def test_secret_coefficient_matches_full_enumerator(small_schemes, spec):
    S = small_schemes[spec]
    factor = (S.field.q - 1) ** S.l
    assert full_secret_coefficient(S) == secret_coefficient(S).scale(factor)


def test_secret_coefficient_ternary_scaling(small_schemes):
    S = small_schemes[("dual:c1_ternary", 2)]
    assert full_secret_coefficient(S) == secret_coefficient(S).scale(4)


@pytest.mark.parametrize("spec", small_scheme_specs(), ids=SPEC_IDS)
def test_count_bound_dominates_histogram(small_schemes, spec):
    S = small_schemes[spec]
    Z = secret_coefficient(S)
    d_perp = min_distance(S.dual_code)
    hist = enumerate_access_structure(S, backend="tuples", with_bounds=False).histogram
    assert Z.coefficient_sum() == len(list(_prefix_tuples(S)))
    for m in range(S.n + 1):
        bound, exact = count_bound(Z, m, d_perp)
        assert hist.get(m, 0) <= bound
        if exact:
            assert hist.get(m, 0) == bound


def _prefix_tuples(S):
    words = [c.coords for c in enumerate_codewords(S.dual_code)]
    per_j = [[w for w in words if w[: S.l] == tuple(int(i == j) for i in range(S.l))] for j in range(S.l)]
    return itertools.product(*per_j)


def test_count_bound_exactness_threshold():
    Z = SparseEnumerator(2, {})
    assert count_bound(Z, 10, 8) == (0, True)
    assert count_bound(Z, 11, 8) == (0, False)


def test_extension_enumerator_examples(codes):
    E = extension_enumerator(REP4)
    assert E.terms == {2: 3, 4: 1} and E.pretty() == "t^4 + 3t^2"
    assert extension_enumerator(codes["golay24"]).terms == {8: 1}
    assert extension_enumerator(LinearCode(F2, [[1, 1]])).terms == {2: 1}
    with pytest.raises(ValueError):
        extension_enumerator(codes["toy6"])


@pytest.mark.parametrize(
    "rows, field",
    [
        ([[1, 1, 1, 1]], F2),
        ([[1, 1, 1, 1, 0, 0], [0, 0, 1, 1, 1, 1]], F2),
        ([[1, 1, 0, 0, 0, 0, 0, 0], [0, 0, 1, 1, 1, 1, 0, 0]], F2),
        ([[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1]], F3),
        ([[1, 1, 1, 0]], F3),
    ],
)
def test_extension_enumerator_oracle(rows, field):
    D = LinearCode(field, rows)
    E = extension_enumerator(D)
    assert E.terms == naive_extension_enumerator(D)
    assert E.total == field.q ** (D.n_len - 2 * D.k_dim)
    assert E.degree <= min_distance(D)


def test_extension_enumerator_self_dual_catalog(codes):
    E = extension_enumerator(codes["hamming8"])
    assert E.terms == {4: 1}


def test_golay_octad_extension(codes):
    g = codes["golay24"]
    octad = next(c for c in enumerate_codewords(g) if c.weight == 8)
    D = restrict_support(LinearCode(F2, [octad.coords]), octad.support)
    assert extension_enumerator(D).terms == naive_extension_enumerator(D)


def test_verify_exact_count_hamming(ham2):
    assert verify_exact_count(ham2, 6) == (1, False)
    assert verify_exact_count(ham2, 4) == (12, True)
    assert verify_exact_count(ham2, 5) == (0, True)


def test_verify_exact_count_golay_m10(golay2):
    assert verify_exact_count(golay2, 10) == (6160, True)


def test_verify_requires_self_orthogonal(ex1):
    with pytest.raises(ValueError):
        verify_exact_count(ex1, 5)


def test_derivative_examples(codes, ham2):
    toy_in = SparseEnumerator(2, {(0, 2, 2, 0): 1})
    assert derivative_Z(toy_in, 2) == SparseEnumerator(2, {(0, 1, 1, 0): 2})
    bw = joint_weight_enumerator([codes["hamming8"]] * 2)
    assert derivative_Z(bw, 8) == secret_coefficient(ham2)
    with pytest.raises(ValueError):
        derivative_Z(SparseEnumerator(2, {(0, 1, 1, 0): 1}), 3)
    with pytest.raises(ValueError):
        derivative_Z(SparseEnumerator(1, {(1, 1): 1}), 3)


def test_threads_are_deterministic(codes, ham2):
    C = codes["c1_ternary"]
    assert joint_weight_enumerator([C, C, C], threads=4) == joint_weight_enumerator([C, C, C])
    assert secret_coefficient(ham2, threads=3) == secret_coefficient(ham2)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2**8 - 1), min_size=1, max_size=3), st.integers(1, 3))
def test_random_binary_jwe(rows, g):
    bits = [[(r >> i) & 1 for i in range(8)] for r in rows]
    R, _ = linalg.rref(F2, np.array(bits))
    if R.shape[0] == 0:
        return
    C = LinearCode(F2, R)
    J = joint_weight_enumerator([C] * g)
    assert J == naive_jwe([C] * g)
    assert J.degrees() == {8}
