"""End-to-end acceptance checks, one test per criterion.

Each test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion.  Time limits are asserted inside the tests.
"""

import itertools
import time
from collections import Counter, defaultdict

import numpy as np
import pytest

from masseyx import catalog, reproduce
from masseyx.access import (
    Kind,
    bounds,
    check_even_minimal_groups,
    classify_dual,
    classify_span,
    enumerate_access_structure,
)
from masseyx.code import dual, mask_to_set, min_distance
from masseyx.enumpoly import (
    count_bound,
    derivative_Z,
    full_secret_coefficient,
    joint_weight_enumerator,
    parse_pretty,
    secret_coefficient,
    verify_exact_count,
)
from masseyx.scheme import NotAuthorized, deal, iter_dealings, make_scheme, reconstruct, reconstruct_batch

GOLAY_SAMPLES = 1000


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def random_groups(n, count, seed):
    """Subsets with sizes spread evenly over 0..n."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        size = int(rng.integers(0, n + 1))
        out.append(sorted(int(x) + 1 for x in rng.choice(n, size=size, replace=False)))
    return out


@pytest.fixture(scope="module")
def golay_report(golay2):
    return enumerate_access_structure(golay2, max_size=12, with_bounds=False)


@pytest.mark.criterion(1, "dual ternary [8,5] scheme, l=2: access structure {5:4, 6:1}")
def test_c01_example1():
    with Timer() as t:
        S = make_scheme(dual(catalog.load("c1_ternary").code), 2)
        rep = enumerate_access_structure(S, with_bounds=False)
    assert S.n == 6
    assert rep.histogram == {5: 4, 6: 1}
    assert t.seconds < 1.0


@pytest.mark.criterion(2, "extended Hamming scheme, l=3: access structure {4:4, 5:1}")
def test_c02_example2():
    with Timer() as t:
        S = make_scheme(catalog.load("hamming8").code, 3)
        rep = enumerate_access_structure(S, with_bounds=False)
    assert S.n == 5
    assert rep.histogram == {4: 4, 5: 1}
    assert t.seconds < 1.0


@pytest.mark.criterion(3, "Hamming biweight enumerator, 11 terms")
def test_c03_hamming_biweight(codes):
    with Timer() as t:
        J = joint_weight_enumerator([codes["hamming8"]] * 2)
    assert J == parse_pretty(reproduce.HAMMING_BIWEIGHT, 4)
    assert len(J) == 11 and J.coefficient((2, 2, 2, 2)) == 168
    assert t.seconds < 1.0


@pytest.mark.criterion(4, "Hamming secret coefficient and count bound m=4")
def test_c04_hamming_z(ham2):
    with Timer() as t:
        Z = secret_coefficient(ham2)
        bound = count_bound(Z, 4, min_distance(ham2.dual_code))
    assert Z == parse_pretty(reproduce.HAMMING_Z, 4)
    assert bound == (12, True)
    assert t.seconds < 1.0


@pytest.mark.criterion(5, "Golay secret coefficient (28 terms), m=10 bound, m=12 certification")
def test_c05_golay(golay2):
    with Timer() as tz:
        Z = secret_coefficient(golay2)
    expected = parse_pretty(reproduce.GOLAY_Z, 4)
    assert len(expected) == 28
    assert Z == expected
    assert tz.seconds < 30
    assert count_bound(Z, 10, 8) == (6160, True)
    assert count_bound(Z, 12, 8) == (36960, False)
    with Timer() as tv:
        result = verify_exact_count(golay2, 12)
    assert result == (36960, True)
    assert tv.seconds < 300


@pytest.mark.criterion(6, "derivative of the biweight enumerator equals the secret coefficient")
def test_c06_derivative(codes, ham2, golay2):
    bw8 = joint_weight_enumerator([codes["hamming8"]] * 2)
    assert derivative_Z(bw8, 8) == secret_coefficient(ham2)
    with Timer() as t:
        bw24 = joint_weight_enumerator([codes["golay24"]] * 2)
    assert t.seconds < 120
    assert bw24.coefficient_sum() == 4096**2
    assert derivative_Z(bw24, 24) == secret_coefficient(golay2) == parse_pretty(reproduce.GOLAY_Z, 4)


def _check_bounds_on(S, groups):
    b = bounds(S)
    limit = b.non_access_bound()
    for g in groups:
        kind = classify_span(S, g).kind
        if len(g) <= limit:
            assert kind is not Kind.FULL, (g, b)
        if len(g) >= b.recover_threshold:
            assert kind is Kind.FULL, (g, b)
        if len(g) <= b.noinfo_bound:
            assert kind is Kind.NONE, (g, b)
    return b


@pytest.mark.criterion(7, "bound soundness (exhaustive n<=12, sampled Golay)")
def test_c07_bound_soundness(small_schemes, golay2, golay_report):
    for S in small_schemes.values():
        _check_bounds_on(S, [mask_to_set(b) for b in range(1 << S.n)])
    for l, seed in ((1, 11), (2, 12)):
        S = golay2 if l == 2 else make_scheme(golay2.code, 1)
        _check_bounds_on(S, random_groups(S.n, GOLAY_SAMPLES, seed))
    # every enumerated Golay access group exceeds the non-access bound
    assert min(golay_report.histogram) > bounds(golay2).non_access_bound()


@pytest.mark.criterion(8, "classify_span agrees with classify_dual")
def test_c08_classifier_equivalence(small_schemes, golay2):
    mismatches = 0
    for S in small_schemes.values():
        for bits in range(1 << S.n):
            g = mask_to_set(bits)
            mismatches += (classify_span(S, g).kind is Kind.FULL) != classify_dual(S, g)
    for g in random_groups(golay2.n, GOLAY_SAMPLES, 8):
        mismatches += (classify_span(golay2, g).kind is Kind.FULL) != classify_dual(golay2, g)
    assert mismatches == 0


@pytest.mark.criterion(9, "zero knowledge for no-information groups")
def test_c09_zero_knowledge(toy, ex1):
    # toy6: each share is s_1 or s_2, so only the empty group learns nothing
    for S, expected_none in ((toy, 1), (ex1, 40)):
        by_secret = defaultdict(list)
        for s, shares in iter_dealings(S):
            by_secret[s].append(shares)
        assert len(by_secret) == S.field.q**S.l
        none_groups = [mask_to_set(b) for b in range(1 << S.n) if classify_span(S, mask_to_set(b)).kind is Kind.NONE]
        assert len(none_groups) == expected_none
        for g in none_groups:
            idx = [i - 1 for i in g]
            dists = [Counter(tuple(sh[i] for i in idx) for sh in rows) for rows in by_secret.values()]
            assert all(d == dists[0] for d in dists)


def _secrets(S, count=5):
    all_s = list(itertools.product(range(S.field.q), repeat=S.l))
    if len(all_s) <= count:
        return (all_s * count)[:count]
    rng = np.random.default_rng(S.n * 31 + S.l)
    return [all_s[i] for i in rng.choice(len(all_s), size=count, replace=False)]


@pytest.mark.criterion(10, "deal/reconstruct roundtrip (10 seeds x 5 secrets) and seed determinism")
def test_c10_roundtrip(small_schemes, golay2, golay_report):
    for S in list(small_schemes.values()):
        dealt = [(s, deal(S, s, seed)) for s in _secrets(S) for seed in range(10)]
        assert all(deal(S, s, seed) == sv for (s, sv), seed in zip(dealt, itertools.cycle(range(10))))
        for bits in range(1 << S.n):
            g = mask_to_set(bits)
            if classify_span(S, g).kind is not Kind.FULL:
                with pytest.raises(NotAuthorized):
                    reconstruct(S, g, {i: dealt[0][1].shares[i - 1] for i in g})
                continue
            for s, sv in dealt:
                assert reconstruct(S, g, {i: sv.shares[i - 1] for i in g}) == s
    # Golay: every access group found at size <= 12, all 50 dealings per group, batched
    secrets = _secrets(golay2)
    dealt = [(s, deal(golay2, s, seed)) for s in secrets for seed in range(10)]
    assert deal(golay2, secrets[0], 3) == dealt[3][1]
    shares = np.array([sv.shares for _, sv in dealt])
    expected = np.array([s for s, _ in dealt])
    groups = [mask_to_set(int(m)) for m in golay_report.union_masks]
    assert len(groups) == 6160 + 36960
    for g in groups:
        got = reconstruct_batch(golay2, g, shares[:, [i - 1 for i in g]])
        assert np.array_equal(got, expected), g
    for g in groups[:: len(groups) // 50]:
        s, sv = dealt[len(g) % len(dealt)]
        assert reconstruct(golay2, g, {i: sv.shares[i - 1] for i in g}) == s


@pytest.mark.criterion(11, "minimal access groups of self-dual l=2 schemes have even size")
def test_c11_parity(ham2, golay2, golay_report):
    assert check_even_minimal_groups(ham2)
    assert set(enumerate_access_structure(ham2).minimal_histogram) == {4}
    assert check_even_minimal_groups(golay2, max_size=12)
    assert all(size % 2 == 0 for size in golay_report.histogram)
    assert all(size % 2 == 0 for size in golay_report.minimal_histogram)


@pytest.mark.criterion(12, "secret coefficient equals the brute-force 2l-fold extraction")
def test_c12_oracle_equivalence(toy, ham2):
    for S in (toy, ham2):
        assert full_secret_coefficient(S) == secret_coefficient(S)

