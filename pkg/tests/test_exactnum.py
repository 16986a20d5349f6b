import cmath

import pytest
from hypothesis import given

from webflat.exactnum import (FieldElement, cube_root_of_unity, embed_complex, from_basis_i_r3, imag_unit,
                              recognize, render_scalar, sqrt3, to_basis_i_r3, to_field, zeta_power)
from webflat.parser import parse_poly

from helpers import field_elements


def close(a, b, tol=1e-9):
    return abs(a - b) < tol * (1 + abs(b))


def test_generators():
    z = zeta_power(1)
    assert z ** 12 == 1
    assert all(z ** k != 1 for k in range(1, 12))
    assert imag_unit() ** 2 == -1
    assert sqrt3() ** 2 == 3
    j = cube_root_of_unity()
    assert j ** 3 == 1 and j != 1 and j * j + j + 1 == 0
    assert zeta_power(-1) * z == 1


def test_embedding_of_generators():
    assert close(embed_complex(zeta_power(1)), cmath.exp(1j * cmath.pi / 6))
    assert close(embed_complex(imag_unit()), 1j)
    assert close(embed_complex(sqrt3()), 3 ** 0.5)


@given(field_elements(), field_elements())
def test_ring_ops_match_complex_embedding(a, b):
    ca, cb = embed_complex(a), embed_complex(b)
    assert close(embed_complex(a + b), ca + cb)
    assert close(embed_complex(a - b), ca - cb)
    assert close(embed_complex(a * b), ca * cb)


@given(field_elements(), field_elements(), field_elements())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(field_elements(allow_zero=False))
def test_inverse(a):
    assert a * a.inverse() == 1
    assert (1 / a) * a == 1


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        FieldElement(0).inverse()


@given(field_elements())
def test_norm_is_rational_and_multiplicative(a):
    n = a.norm()
    assert to_field(n).is_rational()
    assert to_field(a * a).norm() == n * n


@given(field_elements())
def test_render_parse_round_trip(a):
    assert parse_poly(render_scalar(a)).constant_value() == a


@given(field_elements())
def test_i_r3_basis_round_trip(a):
    assert from_basis_i_r3(*to_basis_i_r3(a)) == a


@given(field_elements())
def test_galois_conjugation_is_a_ring_map(a):
    for k in (5, 7, 11):
        assert to_field(a * a).conjugate_by(k) == a.conjugate_by(k) * a.conjugate_by(k)


@pytest.mark.parametrize("text", ["3/7", "-2+5*i", "r3/2-i", "zeta^5", "1/3*zeta^2+i*r3"])
def test_recognize_from_numerics(text):
    x = parse_poly(text).constant_value()
    assert recognize(embed_complex(x), 64) == x
