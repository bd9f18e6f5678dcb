import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from quivermod.kronecker import (
    KroneckerInstance,
    _resolve_workers,
    grid_box,
    kronecker_criterion_exceptions,
    kronecker_dualize,
    kronecker_inequality_trace,
    kronecker_reflect_sink,
    kronecker_reflect_source,
    loop_criterion_exceptions,
    normalize_kronecker,
)
from quivermod.quiver import euler_form, kronecker_quiver, slope


def euler_self(m, d):
    return euler_form(kronecker_quiver(m), d, d)


class TestInstance:
    def test_reduction(self):
        inst = KroneckerInstance(3, (4, 6))
        assert inst.n == 2
        assert inst.pq == (2, 3)

    def test_normalized_window(self):
        assert KroneckerInstance(3, (2, 2)).is_normalized
        assert KroneckerInstance(3, (2, 3)).is_normalized
        assert not KroneckerInstance(3, (3, 2)).is_normalized
        assert not KroneckerInstance(3, (1, 2)).is_normalized  # 2*2 > 3*1
        assert not KroneckerInstance(4, (0, 1)).is_normalized

    def test_validation(self):
        with pytest.raises(ValueError):
            KroneckerInstance(0, (1, 1))
        with pytest.raises(ValueError):
            KroneckerInstance(3, (0, 0))
        with pytest.raises(ValueError):
            KroneckerInstance(3, (1, -1))


class TestReflections:
    def test_frozen(self):
        assert kronecker_reflect_source(3, (1, 2)) == (5, 2)
        assert kronecker_reflect_sink(3, (2, 4)) == (2, 2)
        assert kronecker_dualize((3, 5)) == (5, 3)

    def test_cone_errors(self):
        with pytest.raises(ValueError):
            kronecker_reflect_sink(3, (1, 4))
        with pytest.raises(ValueError):
            kronecker_reflect_source(3, (7, 2))

    @given(st.integers(1, 6), st.integers(0, 9), st.integers(0, 9))
    def test_preserve_euler_value_and_gcd(self, m, d1, d2):
        assume((d1, d2) != (0, 0))
        d = (d1, d2)
        assert euler_self(m, kronecker_dualize(d)) == euler_self(m, d)
        assert math.gcd(*kronecker_dualize(d)) == math.gcd(d1, d2)
        if m * d1 - d2 >= 0:
            r = kronecker_reflect_sink(m, d)
            assert euler_self(m, r) == euler_self(m, d)
            assert math.gcd(*r) == math.gcd(d1, d2)
        if m * d2 - d1 >= 0:
            r = kronecker_reflect_source(m, d)
            assert euler_self(m, r) == euler_self(m, d)
            assert math.gcd(*r) == math.gcd(d1, d2)

    @given(st.integers(1, 6), st.integers(0, 9), st.integers(0, 9))
    def test_reflections_are_involutions(self, m, d1, d2):
        d = (d1, d2)
        if m * d1 - d2 >= 0:
            assert kronecker_reflect_sink(m, kronecker_reflect_sink(m, d)) == d
        if m * d2 - d1 >= 0:
            assert kronecker_reflect_source(m, kronecker_reflect_source(m, d)) == d


class TestNormalization:
    def test_frozen_cases(self):
        r = normalize_kronecker(3, (3, 2))
        assert (r.normalized, r.moves) == ((2, 3), ("dualize",))
        r = normalize_kronecker(3, (2, 4))
        assert (r.normalized, r.moves) == ((2, 2), ("sink",))
        r = normalize_kronecker(3, (2, 2))
        assert (r.normalized, r.moves) == ((2, 2), ())
        assert normalize_kronecker(3, (1, 5)).degenerate

    def test_requires_m_at_least_3(self):
        with pytest.raises(ValueError):
            normalize_kronecker(2, (1, 1))

    def test_cells_sharing_a_representative(self):
        """Several grid cells normalize to (2,2) at m = 3, which is why the scan
        deduplicates exceptions by normalized vector."""
        hits = sorted(
            cell
            for cell in grid_box(10, 10)
            if normalize_kronecker(3, cell).normalized == (2, 2)
        )
        assert hits == [(2, 2), (2, 4), (4, 2), (4, 10), (10, 4)]

    @given(st.integers(3, 6), st.integers(1, 12), st.integers(1, 12))
    def test_normalized_output_is_in_window(self, m, d1, d2):
        r = normalize_kronecker(m, (d1, d2))
        if not r.degenerate:
            assert KroneckerInstance(m, r.normalized).is_normalized
            assert euler_self(m, r.normalized) == euler_self(m, (d1, d2))
            assert math.gcd(*r.normalized) == math.gcd(d1, d2)


class TestScans:
    def test_loop_scan_frozen(self):
        result = loop_criterion_exceptions(range(2, 9), range(2, 13))
        assert result.exceptions == ((2, 2),)
        assert result.scanned == 7 * 11

    def test_loop_scan_validation(self):
        with pytest.raises(ValueError):
            loop_criterion_exceptions(range(1, 3), range(2, 4))
        with pytest.raises(ValueError):
            loop_criterion_exceptions(range(2, 3), range(1, 4))

    def test_kronecker_scan_frozen(self):
        result = kronecker_criterion_exceptions(range(3, 9), grid_box(10, 10))
        assert result.exceptions == ((3, (2, 2)),)
        assert result.scanned == 6 * 100

    def test_kronecker_scan_validation(self):
        with pytest.raises(ValueError):
            kronecker_criterion_exceptions(range(2, 4), grid_box(2, 2))
        with pytest.raises(ValueError):
            kronecker_criterion_exceptions(range(3, 4), [(0, 1)])

    def test_worker_count_independence(self):
        a = kronecker_criterion_exceptions(range(3, 6), grid_box(6, 6), workers=1)
        b = kronecker_criterion_exceptions(range(3, 6), grid_box(6, 6), workers=2)
        assert a.exceptions == b.exceptions
        assert a.scanned == b.scanned
        la = loop_criterion_exceptions(range(2, 6), range(2, 8), workers=1)
        lb = loop_criterion_exceptions(range(2, 6), range(2, 8), workers=3)
        assert la.exceptions == lb.exceptions

    def test_box_duplicates_are_merged(self):
        once = kronecker_criterion_exceptions(range(3, 4), grid_box(4, 4))
        doubled = kronecker_criterion_exceptions(
            range(3, 4), grid_box(4, 4) + grid_box(4, 4)
        )
        assert once.exceptions == doubled.exceptions
        assert once.scanned == doubled.scanned

    def test_env_var_caps_workers(self, monkeypatch):
        monkeypatch.setenv("QUIVERMOD_THREADS", "3")
        assert _resolve_workers(None) == 3
        assert _resolve_workers(1) == 1
        monkeypatch.setenv("QUIVERMOD_THREADS", "junk")
        assert _resolve_workers(None) >= 1


class TestInequalityTrace:
    def test_frozen_3_2_2(self):
        t = kronecker_inequality_trace(3, (2, 2), (1, 1))
        assert (t.n, t.p, t.q) == (2, 1, 1)
        assert (t.a, t.b, t.c, t.dd) == (1, 1, 1, 1)
        assert t.k == 0
        assert (t.bound_lhs, t.bound_rhs, t.bound_holds) == (1, 1, True)
        assert t.euler_pairing == -1
        assert t.slope_holds
        assert (t.equality_lhs, t.equality_rhs) == (4, 4)

    def test_frozen_4_1_2(self):
        t = kronecker_inequality_trace(4, (1, 2), (1, 1))
        assert t.k == 1
        assert (t.bound_lhs, t.bound_rhs, t.bound_holds) == (2, 6, False)
        assert t.euler_pairing == -3
        assert t.equality_lhs is None and t.equality_rhs is None

    def test_rejects_unnormalized_and_degenerate_splits(self):
        with pytest.raises(ValueError):
            kronecker_inequality_trace(3, (3, 2), (1, 1))
        with pytest.raises(ValueError):
            kronecker_inequality_trace(3, (2, 2), (0, 1))
        with pytest.raises(ValueError):
            kronecker_inequality_trace(3, (2, 2), (2, 2))
        # a = 2, dd = 1 is a legal split even though c = 0
        t = kronecker_inequality_trace(3, (2, 2), (2, 1))
        assert (t.c, t.dd) == (0, 1)

    @given(
        st.integers(3, 6),
        st.integers(1, 6),
        st.integers(1, 6),
        st.data(),
    )
    @settings(max_examples=120)
    def test_trace_equivalences(self, m, d1, d2, data):
        r = normalize_kronecker(m, (d1, d2))
        assume(not r.degenerate)
        d = r.normalized
        a = data.draw(st.integers(1, d[0]), label="a")
        b = data.draw(st.integers(0, d[1] - 1), label="b")
        assume((a, b) != d)
        t = kronecker_inequality_trace(m, d, (a, b))
        e, f = (a, b), (t.c, t.dd)
        assert t.slope_holds == (slope((1, 0), e) >= slope((1, 0), f))
        assert t.slope_holds == (t.k >= 0)
        assert t.euler_pairing == euler_form(kronecker_quiver(m), e, f)
        assert t.bound_holds == (t.euler_pairing >= -1)
        if m == 3:
            assert (t.equality_lhs == t.equality_rhs) == (t.euler_pairing == -1)
