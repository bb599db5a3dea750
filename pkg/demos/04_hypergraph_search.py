"""Growing the hypergraph: constants are vertices, relations are hyperedges.

A search job takes the product of user-chosen constant subsets and runs the
relation engine on each candidate set.  Findings are committed to the store;
anything a stored edge already covers — or an identical earlier search — is
skipped, so reruns are free.
"""
import tempfile

from constrel import EngineConfig, Hypergraph, SearchJob, run_search
from constrel.seeds import fixture_specs, seed_constants

store = Hypergraph()
for rec in seed_constants():
    store.add_constant(rec)

# six fraction-defined constants from the bundled regression fixtures
specs = {s.name: s for s in fixture_specs()}
cf_ids = []
for name in ('catalan-main', 'zeta3-b', 'zeta2-a', 'zeta2-b', 'pi-four',
             'ln2-mobius'):
    rec = specs[name].constants[0]
    store.add_constant(rec)
    cf_ids.append(rec.id)

fund = [store.find_by_name(n) for n in ('pi', 'zeta2', 'zeta3', 'catalan', 'ln2')]
job = SearchJob(partitions={'fund': fund, 'cfs': cf_ids},
                subset_shape=(('fund', 1), ('cfs', 1)),
                d=2, o=1, cfg=EngineConfig(prec_bits=512), worker_count=2)

report = run_search(job, store)
print('first run:', report.to_json())
names = store.names()
for edge in store.edges.values():
    print('  found:', edge.relation.equation_str(names),
          f'(RoI {float(edge.relation.roi):.0f})')

rerun = run_search(job, store)
print('rerun:   ', rerun.to_json(), ' <- the skip rule pays off')

with tempfile.TemporaryDirectory() as tmp:
    store.save(tmp)
    reloaded = Hypergraph.load(tmp)
    print('\nround trip:', len(reloaded.constants), 'constants,',
          len(reloaded.edges), 'edges')

print('\nDOT export (first lines):')
print('\n'.join(store.export_dot().splitlines()[:6]))
