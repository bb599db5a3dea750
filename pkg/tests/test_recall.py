"""Engine recall on the bundled literature relations.

Every known fixture row must be re-discovered by the full pipeline (value
resolution, monomial enumeration, PSLQ) at 1000 bits with RoI above 10.
Where the constants span a one-dimensional relation lattice the recovered
coefficients must equal the fixture's exactly; in the quadratic-field pairs
(two constants sharing sqrt(5) or sqrt(2), giving a rank-2 lattice) any
lattice vector is a correct answer, so those rows assert an independently
re-verified relation instead.
"""
import pytest

from constrel.engine import EngineConfig
from constrel.errors import TrivialInputError
from constrel.numerics import effective_error, precision_of
from constrel.polyrel import find_poly_relation
from constrel.seeds import fixture_specs
from constrel.values import constant_value

KNOWN_ROWS = [
    'zeta3-a', 'zeta3-b', 'zeta3-c',
    'zeta2-a', 'zeta2-b', 'zeta2-c',
    'catalan-b',
    'phi-minimal', 'sqrt2-minimal', 'sqrt3-minimal',
    'phi-neg-fifth', 'phi-neg-ninth', 'phi-fifth', 'phi-unit',
    'sqrt3-half', 'sqrt2-neg-eighth', 'sqrt2-quarter',
    'two-ninths-quadratic',
    'e-classic', 'pi-four',
]

# pairs of constants inside one quadratic field: the (2,1) monomial vector
# spans a rank-2 relation lattice, so the returned vector need not be the
# row as printed
RANK_TWO = {'phi-fifth', 'phi-unit', 'sqrt2-neg-eighth', 'sqrt2-quarter'}


@pytest.fixture(scope='module')
def specs():
    table = {s.name: s for s in fixture_specs()}
    assert all(name in table for name in KNOWN_ROWS)
    assert len(KNOWN_ROWS) == 20
    return table


@pytest.mark.parametrize('name', KNOWN_ROWS)
def test_known_row_recall_at_1000_bits(specs, name):
    spec = specs[name]
    expected = spec.relation(0, 0)
    values = [(rec.id, constant_value(rec, 1080)) for rec in spec.constants]
    cfg = EngineConfig(prec_bits=1000)
    try:
        found = find_poly_relation(values, expected.degree, expected.order, cfg)
    except TrivialInputError:
        # C[1] literally equals phi, so the search-level duplicate guard
        # fires; recall then speaks to the engine directly
        assert name == 'phi-unit'
        from constrel.engine import pslq
        from constrel.polyrel import enumerate_monomials, _monomial_value
        xs = [v for _, v in values]
        vector = [_monomial_value(xs, mono)
                  for mono in enumerate_monomials(len(xs), expected.degree,
                                                  expected.order)]
        rel = pslq(vector, cfg)
        assert rel is not None and rel.roi > 10
        return
    assert found is not None
    assert found.roi > 10
    if name in RANK_TWO:
        fresh = {rec.id: constant_value(rec, 2100) for rec in spec.constants}
        resid = found.evaluate(fresh)
        err = effective_error(abs(resid).value, [v.err for v in fresh.values()])
        assert min(precision_of(err, prec_bits=2000), 2000) >= 1800
    else:
        assert found.constants == expected.constants
        assert found.monomials == expected.monomials
        assert found.coeffs in (expected.coeffs,
                                tuple(-c for c in expected.coeffs))
