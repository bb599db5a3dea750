import random

import mpmath as mp
import pytest

from constrel.errors import ConstrelError, DivergentError
from constrel.hypergraph import ConstantRecord, Hypergraph
from constrel.identify import IdentifyRequest, identify
from constrel.seeds import seed_constants


def store_with(*names):
    store = Hypergraph()
    for rec in seed_constants():
        if rec.name in names:
            store.add_constant(rec)
    return store


def decimal_of(expr, digits=50):
    with mp.workdps(digits + 10):
        return mp.nstr(expr(), digits)


class TestValidation:
    def test_needs_an_input(self):
        with pytest.raises(ValueError):
            IdentifyRequest(())

    def test_short_decimal_rejected(self):
        store = Hypergraph()
        with pytest.raises(ConstrelError):
            identify(IdentifyRequest(('1.618',)), store)

    def test_divergent_input_diagnosed(self):
        store = Hypergraph()
        with pytest.raises(DivergentError):
            identify(IdentifyRequest(('C[(n^3)/(1)]',)), store)


class TestMatches:
    def test_exact_match_reported(self):
        store = store_with('pi')
        value = decimal_of(lambda: mp.pi, 60)
        res = identify(IdentifyRequest((value,)), store)
        assert res.matches
        assert res.matches[0][1] == store.find_by_name('pi')


class TestRelations:
    def test_golden_ratio_against_sqrt5(self):
        store = Hypergraph()
        store.add_constant(ConstantRecord(
            'explicit', decimal=decimal_of(lambda: mp.sqrt(5), 50),
            name='sqrt5', tags=('fundamental',), provenance='literature'))
        phi50 = '1.6180339887498948482045868343656381177203091798058'
        res = identify(IdentifyRequest((phi50,)), store)
        assert res.relations
        rel, _ = res.relations[0]
        assert rel.roi >= 2
        # the found relation must genuinely hold for phi and sqrt(5)
        with mp.workprec(400):
            vals = {c: (1 + mp.sqrt(5)) / 2 if c == phi50 else mp.sqrt(5)
                    for c in rel.constants}
            total = mp.mpf(0)
            for mono, coeff in zip(rel.monomials, rel.coeffs):
                term = mp.mpf(coeff)
                for c, e in zip(rel.constants, mono):
                    term *= vals[c] ** e
                total += term
            assert abs(total) < mp.mpf(2) ** -120

    def test_lemniscate_family_limit(self):
        store = store_with('lemniscate_a', 'lemniscate_b')
        res = identify(IdentifyRequest(('C[(-(2*n+3)^2)/(18*n*(n+1))]',)), store)
        assert res.relations
        rel, _ = res.relations[0]
        ids = set(rel.constants)
        assert store.find_by_name('lemniscate_a') in ids
        assert store.find_by_name('lemniscate_b') in ids
        assert rel.degree == 2 and rel.order == 1

    def test_ln2_family_member(self):
        store = store_with('ln2')
        res = identify(IdentifyRequest(('C[(n^2)/(9*(1 - 4*n^2))]',)), store)
        assert res.relations
        rel, _ = res.relations[0]
        terms = dict(zip(rel.monomials, rel.coeffs))
        nonconst = [c for m, c in terms.items() if sum(m) == 2]
        assert abs(terms[tuple(0 for _ in rel.constants)]) == 2
        assert nonconst and abs(nonconst[0]) == 3


class TestUpload:
    def test_upload_and_idempotence(self):
        store = store_with('ln2')
        req = IdentifyRequest(('C[(n^2)/(9*(1 - 4*n^2))]',), auto_upload=True)
        first = identify(req, store)
        assert len(first.uploaded_constants) == 1
        assert len(first.uploaded_relations) == 1
        n_const, n_edges = len(store.constants), len(store.edges)
        second = identify(req, store)
        assert not second.uploaded_constants
        assert not second.uploaded_relations
        assert (len(store.constants), len(store.edges)) == (n_const, n_edges)


class TestPrecisionFloor:
    def test_random_twenty_digit_inputs_find_nothing(self):
        store = store_with('pi', 'e', 'ln2')
        rng = random.Random(13)
        hits = 0
        for _ in range(100):
            digits = '0.' + ''.join(str(rng.randint(0, 9)) for _ in range(20))
            res = identify(IdentifyRequest((digits,)), store)
            hits += bool(res.relations)
        assert hits == 0
