"""Identifying unknown numbers against the store.

Give identify decimal expansions or C[...] expressions; it reports exact
matches with stored constants, then hunts for polynomial relations tying the
inputs to what the store knows (cheap Mobius-like searches first).
"""
import mpmath as mp

from constrel import Hypergraph, IdentifyRequest, identify
from constrel.seeds import seed_constants

store = Hypergraph()
for rec in seed_constants():
    store.add_constant(rec)
names = store.names()

# a 50-digit decimal: the golden ratio is not in the store, but sqrt(5)-like
# structure shows through the relation search against what is
with mp.workdps(60):
    mystery = mp.nstr(mp.pi + 0, 50)
res = identify(IdentifyRequest((mystery,)), store)
print('input:', mystery[:32], '...')
for label, cid in res.matches:
    print('  exact match with stored', names[cid])

# a fraction the store has never seen, connected to ln(2)
res = identify(IdentifyRequest(('C[(n^2)/(9*(1 - 4*n^2))]',)), store)
print('\ninput: C[(n^2)/(9*(1 - 4*n^2))]')
for rel, eq in res.relations:
    print(f'  relation (RoI {float(rel.roi):.0f}): {eq}')

# the first and second lemniscate constants pin this family member
res = identify(IdentifyRequest(('C[(-(2*n+3)^2)/(18*n*(n+1))]',),
                               candidate_tags=('fundamental',)), store)
print('\ninput: C[(-(2*n+3)^2)/(18*n*(n+1))]')
for rel, eq in res.relations:
    print(f'  relation (RoI {float(rel.roi):.0f}): {eq}')
