"""Finite-field layer: arithmetic laws, traces, orders, subfields."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primpair.errors import BadSubfieldDegree, NotADivisor, ZeroElement
from primpair.ffield import make_field
from primpair.ntheory import euler_phi, factorize


@pytest.fixture(scope="module")
def gf128():
    return make_field(2, 7)


@pytest.fixture(scope="module")
def gf81():
    return make_field(3, 4)


@pytest.fixture(scope="module")
def gf125():
    return make_field(5, 3)


def _elements(ctx, idxs):
    return [ctx.from_index(i % ctx.Q) for i in idxs]


class TestConstruction:
    def test_determinism(self):
        a = make_field(3, 5, seed=0)
        b = make_field(3, 5, seed=0)
        assert a.modulus == b.modulus
        assert a.generator == b.generator

    def test_seed_changes_modulus_eventually(self):
        mods = {make_field(2, 8, seed=s).modulus for s in range(6)}
        assert len(mods) > 1

    def test_rejects_composite_base(self):
        with pytest.raises(ValueError):
            make_field(6, 2)

    def test_degree_one(self):
        ctx = make_field(7, 1)
        assert ctx.Q == 7
        assert sorted(ctx.to_index(x) for x in ctx.elements()) == list(range(7))


class TestArithmetic:
    @given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
    @settings(max_examples=100, deadline=None)
    def test_ring_laws_gf81(self, i, j, k):
        ctx = make_field(3, 4)
        x, y, z = _elements(ctx, (i, j, k))
        assert ctx.add(x, y) == ctx.add(y, x)
        assert ctx.mul(x, y) == ctx.mul(y, x)
        assert ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y), ctx.mul(x, z))
        assert ctx.add(x, ctx.neg(x)) == ctx.zero
        assert ctx.sub(x, y) == ctx.add(x, ctx.neg(y))

    def test_inverse(self, gf125):
        for x in gf125.units():
            assert gf125.mul(x, gf125.inv(x)) == gf125.one
        with pytest.raises(ZeroElement):
            gf125.inv(gf125.zero)

    def test_pow_agrees_with_repeated_mul(self, gf128):
        x = gf128.from_index(5)
        acc = gf128.one
        for e in range(10):
            assert gf128.pow(x, e) == acc
            acc = gf128.mul(acc, x)

    def test_frobenius_is_additive(self, gf81):
        # (x+y)^3 = x^3 + y^3 in characteristic 3
        for i in range(0, 81, 7):
            for j in range(0, 81, 11):
                x, y = gf81.from_index(i), gf81.from_index(j)
                lhs = gf81.pow(gf81.add(x, y), 3)
                rhs = gf81.add(gf81.pow(x, 3), gf81.pow(y, 3))
                assert lhs == rhs


class TestMultiplicativeStructure:
    def test_generator_order(self, gf128):
        assert gf128.element_order(gf128.generator) == 127

    def test_primitive_count(self, gf128):
        # phi(127) = 126 primitive elements
        count = sum(1 for x in gf128.units() if gf128.is_primitive(x))
        assert count == euler_phi(factorize(127)) == 126

    def test_primitive_count_gf81(self, gf81):
        count = sum(1 for x in gf81.units() if gf81.is_primitive(x))
        assert count == euler_phi(factorize(80))

    def test_order_divides_group_order(self, gf125):
        for x in gf125.units():
            order = gf125.element_order(x)
            assert (gf125.Q - 1) % order == 0
            assert gf125.pow(x, order) == gf125.one
            # minimality over prime quotients
            for ell in factorize(order).primes():
                assert gf125.pow(x, order // ell) != gf125.one

    def test_ufree_equivalences(self, gf81):
        # (Q-1)-free iff primitive; 1-free is every unit
        for x in gf81.units():
            assert gf81.is_ufree(x, gf81.Q - 1) == gf81.is_primitive(x)
            assert gf81.is_ufree(x, 1)

    def test_ufree_requires_divisor(self, gf81):
        with pytest.raises(NotADivisor):
            gf81.is_ufree(gf81.one, 3)      # 3 does not divide 80

    def test_order_without_tables(self):
        # same field with tables disabled must agree with tabled version
        tabled = make_field(3, 4)
        raw = make_field(3, 4, table_cap=1)
        for i in range(1, 81):
            x = tabled.from_index(i)
            assert tabled.element_order(x) == raw.element_order(x)

    def test_discrete_log_roundtrip(self, gf128):
        for j in range(127):
            x = gf128.pow(gf128.generator, j)
            assert gf128.discrete_log(x) == j

    def test_discrete_log_bsgs(self):
        ctx = make_field(2, 13, table_cap=1)    # force BSGS path
        for j in (0, 1, 500, 8190):
            x = ctx.pow(ctx.generator, j)
            assert ctx.discrete_log(x) == j


class TestTrace:
    def test_absolute_trace_is_scalar_and_additive(self, gf128):
        for i in range(0, 128, 5):
            for j in range(0, 128, 9):
                x, y = gf128.from_index(i), gf128.from_index(j)
                s = (gf128.abs_trace_int(x) + gf128.abs_trace_int(y)) % 2
                assert gf128.abs_trace_int(gf128.add(x, y)) == s

    def test_trace_balanced(self, gf128):
        # each value of the absolute trace is hit Q/q times
        from collections import Counter
        c = Counter(gf128.abs_trace_int(x) for x in gf128.elements())
        assert c == {0: 64, 1: 64}

    def test_trace_frobenius_invariant(self, gf81):
        for i in range(81):
            x = gf81.from_index(i)
            assert gf81.abs_trace_int(x) == gf81.abs_trace_int(gf81.pow(x, 3))

    def test_relative_trace_lands_in_subfield(self):
        ctx = make_field(2, 6)
        for i in range(64):
            tr = ctx.trace_rel(ctx.from_index(i), 2)
            assert ctx.in_subfield(tr, 2)

    def test_relative_trace_transitivity(self):
        # Tr_{F64/F2} = Tr_{F4/F2} o Tr_{F64/F4}
        ctx = make_field(2, 6)
        for i in range(64):
            x = ctx.from_index(i)
            inner = ctx.trace_rel(x, 2)
            # absolute trace of the intermediate result
            outer = ctx.add(inner, ctx.pow(inner, 2))
            total = ctx.trace_rel(x, 1)
            assert outer == total

    def test_bad_subfield_degree(self, gf128):
        with pytest.raises(BadSubfieldDegree):
            gf128.trace_rel(gf128.one, 2)   # 2 does not divide 7


class TestSubfield:
    def test_subfield_size_and_closure(self):
        ctx = make_field(2, 6)
        sub = ctx.subfield_elements(2)
        assert len(sub) == 4
        assert len({x.coeffs for x in sub}) == 4
        subset = {x.coeffs for x in sub}
        for x in sub:
            for y in sub:
                assert ctx.add(x, y).coeffs in subset
                assert ctx.mul(x, y).coeffs in subset

    def test_subfield_matches_fixed_points(self):
        ctx = make_field(3, 4)
        sub = {x.coeffs for x in ctx.subfield_elements(2)}
        fixed = {x.coeffs for x in ctx.elements() if ctx.in_subfield(x, 2)}
        assert sub == fixed

    def test_order_deterministic(self):
        a = make_field(2, 8).subfield_elements(4)
        b = make_field(2, 8).subfield_elements(4)
        assert a == b

    def test_trivial_subfield(self, gf128):
        sub = gf128.subfield_elements(7)
        assert len(sub) == 128
