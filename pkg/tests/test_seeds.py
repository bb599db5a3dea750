import mpmath as mp
import pytest

from constrel.hypergraph import Hypergraph
from constrel.seeds import (SEED_NAMES, fixture_specs, seed_constants,
                            seed_digits, verify_fixture)
from constrel.values import constant_value


class TestDigits:
    def test_all_constants_present_with_full_digits(self):
        for name in SEED_NAMES:
            text = seed_digits(name)
            assert sum(ch.isdigit() for ch in text) >= 10000

    def test_c2_matches_its_closed_form(self):
        # C2 = (e^2 - 7)/2, both sides from the bundled digits
        recs = {r.name: r for r in seed_constants()}
        c2 = constant_value(recs['c2'], 2000)
        e = constant_value(recs['e'], 2000)
        closed = (e * e - 7) / 2
        assert c2.indistinguishable(closed)

    def test_zeta2_is_pi_squared_over_six(self):
        recs = {r.name: r for r in seed_constants()}
        z2 = constant_value(recs['zeta2'], 2000)
        pi = constant_value(recs['pi'], 2000)
        assert z2.indistinguishable(pi * pi / 6)

    def test_lemniscate_product(self):
        # A * B = pi / 4
        recs = {r.name: r for r in seed_constants()}
        a = constant_value(recs['lemniscate_a'], 2000)
        b = constant_value(recs['lemniscate_b'], 2000)
        pi = constant_value(recs['pi'], 2000)
        assert (a * b).indistinguishable(pi / 4)


class TestFixtures:
    def test_sample_size_and_required_families(self):
        specs = fixture_specs()
        assert len(specs) >= 25
        names = [s.name for s in specs]
        assert 'catalan-main' in names
        assert sum(n.startswith('zeta3') for n in names) >= 3
        assert sum(n.startswith('zeta2') for n in names) >= 3
        phi_sqrt_rows = [n for n in names
                         if n.startswith(('phi', 'sqrt2', 'sqrt3', 'two-ninths',
                                          'quadratic'))]
        assert len(phi_sqrt_rows) == 15

    def test_spot_verification(self):
        specs = {s.name: s for s in fixture_specs()}
        for name in ('phi-minimal', 'catalan-main', 'e-classic'):
            rel = verify_fixture(specs[name], 512)
            assert rel.precision_bits >= 460
            assert rel.roi >= 10


class TestSeededStore(object):
    def test_counts(self, seeded_store):
        assert len(seeded_store.constants) >= 16 + 25
        assert len(seeded_store.edges) >= 25

    def test_reverify_reproduces_precisions(self, seeded_store):
        import copy
        store = copy.deepcopy(seeded_store)
        report = store.reverify(constant_value)
        assert report
        for eid, old, new in report:
            assert new >= old - 2

    def test_cached_decimals_present_for_fractions(self, seeded_store):
        cts = [c for c in seeded_store.constants.values()
               if c.kind == 'ctransform']
        assert cts
        assert all(c.cached_decimal for c in cts)
