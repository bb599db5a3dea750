import pytest

from constrel.hypergraph import Hypergraph
from constrel.seeds import seed_store


@pytest.fixture(scope='session')
def seeded_store(tmp_path_factory):
    """A store with the full bundle (constants + fixture edges) at 1024 bits."""
    store = Hypergraph()
    seed_store(store, prec_bits=1024)
    path = tmp_path_factory.mktemp('store') / 'seeded'
    store.save(str(path))
    return store
