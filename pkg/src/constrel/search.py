"""Enrichment search: enumerate constant subsets, skip what the hypergraph
already covers, run the relation engine on the rest, commit what sticks.

Skip decisions are taken against a snapshot of the store at job start (plus
the persistent search log), so the set of dispatched candidates, and with it
the final store state, is independent of the worker count.  Workers only ever
receive plain decimal strings; a single committer mutates the store.
"""
from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .engine import EngineConfig
from .errors import ConstrelError, PrecisionError, TrivialInputError
from .hypergraph import Hypergraph, HyperEdge
from .numerics import Real
from .polyrel import find_poly_relation
from .values import ensure_cached


@dataclass(frozen=True)
class SearchJob:
    partitions: dict                 # name -> list of constant ids
    subset_shape: tuple              # ((partition name, count), ...)
    d: int
    o: int
    cfg: EngineConfig
    worker_count: int = 1
    checkpoint: Optional[str] = None

    def __post_init__(self):
        if self.d < self.o or self.o < 1:
            raise ValueError('need d >= o >= 1')
        shape = tuple((str(name), int(count)) for name, count in self.subset_shape)
        if any(count < 1 for _, count in shape):
            raise ValueError('draw counts must be positive')
        object.__setattr__(self, 'subset_shape', shape)
        if self.worker_count < 1:
            raise ValueError('worker_count must be positive')

    @classmethod
    def from_json(cls, obj: dict, store: Optional[Hypergraph] = None) -> 'SearchJob':
        """Job file format: a partition is either a list naming constants by
        id or display name, or a tag selector
        {"include_tags": [...], "exclude_tags": [...]} resolved against the
        store."""
        partitions = {}
        for name, members in obj['partitions'].items():
            if isinstance(members, dict):
                if store is None:
                    raise ConstrelError(
                        f'partition {name!r} selects by tag but no store is loaded')
                include = set(members.get('include_tags', ()))
                exclude = set(members.get('exclude_tags', ()))
                ids = sorted(
                    cid for cid, rec in store.constants.items()
                    if (not include or include & set(rec.tags))
                    and not (exclude & set(rec.tags)))
                if not ids:
                    raise ConstrelError(f'tag selector of {name!r} matches nothing')
            else:
                ids = []
                for m in members:
                    if store is not None and m not in store.constants:
                        cid = store.find_by_name(m)
                        if cid is None:
                            raise ConstrelError(
                                f'unknown constant {m!r} in partition {name!r}')
                        ids.append(cid)
                    else:
                        ids.append(m)
            partitions[name] = ids
        cfg = EngineConfig(
            prec_bits=obj.get('precision', 4000),
            tolerance_fraction=Fraction(str(obj.get('tolerance', 0.75))),
            roi_cutoff=Fraction(str(obj.get('roi_cutoff', 2))),
            backend=obj.get('backend', 'pslq'),
            seed=obj.get('seed', 0))
        return cls(partitions, tuple((s['partition'], s['count'])
                                     for s in obj['shape']),
                   obj['d'], obj['o'], cfg,
                   obj.get('workers', 1), obj.get('checkpoint'))


def expand_job(job: SearchJob):
    """Deterministic stream of candidate constant-id sets: the product of
    per-partition combinations, deduplicated, too-small sets dropped."""
    pools = []
    for name, count in job.subset_shape:
        if name not in job.partitions:
            raise ConstrelError(f'job references unknown partition {name!r}')
        members = sorted(set(job.partitions[name]))
        if not members:
            raise ConstrelError(f'partition {name!r} is empty')
        pools.append(list(itertools.combinations(members, count)))
    for combo in itertools.product(*pools):
        ids = sorted(set(itertools.chain.from_iterable(combo)))
        if len(ids) >= 2:
            yield tuple(ids)


@dataclass
class SearchReport:
    candidates: int = 0
    skipped: int = 0
    engine_runs: int = 0
    found: int = 0
    committed: int = 0
    evaluation_failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {'candidates': self.candidates, 'skipped': self.skipped,
                'engine_runs': self.engine_runs, 'found': self.found,
                'committed': self.committed,
                'evaluation_failures': list(self.evaluation_failures)}


def _process_candidate(args):
    """Worker entry point: decimals in, JSON relation (or None) out."""
    ids, decimals, d, o, cfg = args
    values = [(cid, Real.from_decimal(text, prec_bits=cfg.prec_bits + 32))
              for cid, text in zip(ids, decimals)]
    try:
        rel = find_poly_relation(values, d, o, cfg)
    except (TrivialInputError, PrecisionError) as exc:
        return ids, None, str(exc)
    return ids, (rel.to_json() if rel else None), None


def run_search(job: SearchJob, store: Hypergraph) -> SearchReport:
    """Run the job against the store; returns counts.

    Candidates already covered by an edge (subset with fitting bounds) or by
    an identical earlier search are skipped.  Every executed candidate is
    recorded in the search log, so rerunning a finished job costs no engine
    time.  A checkpoint file, when configured, makes interrupted runs
    resumable.
    """
    report = SearchReport()
    candidates = list(expand_job(job))
    report.candidates = len(candidates)

    done_upto = _load_checkpoint(job, len(candidates))

    # pre-evaluate every referenced constant once, at job precision
    needed = sorted(set(itertools.chain.from_iterable(candidates)))
    decimals = {}
    unusable = {}
    for cid in needed:
        try:
            value = ensure_cached(store, cid, job.cfg.prec_bits)
            digits = value.decimal_digits()
            decimals[cid] = value.decimal(digits)
        except ConstrelError as exc:
            unusable[cid] = str(exc)

    # snapshot skip decisions so worker count cannot change the outcome
    todo = []
    for idx, ids in enumerate(candidates):
        if idx < done_upto:
            report.skipped += 1
            continue
        if store.should_skip(ids, job.d, job.o) or \
           store.was_searched(ids, job.d, job.o, job.cfg.prec_bits):
            report.skipped += 1
            continue
        bad = [cid for cid in ids if cid in unusable]
        if bad:
            report.skipped += 1
            report.evaluation_failures.append(
                {'candidate': list(ids), 'reason': unusable[bad[0]]})
            continue
        todo.append((idx, ids))

    tasks = [(ids, [decimals[c] for c in ids], job.d, job.o, job.cfg)
             for _, ids in todo]
    if job.worker_count > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=job.worker_count) as pool:
            results = list(pool.map(_process_candidate, tasks, chunksize=4))
    else:
        results = [_process_candidate(t) for t in tasks]

    from .polyrel import PolyRelation
    for (idx, ids), (_, rel_json, failure) in zip(todo, results):
        report.engine_runs += 1
        if failure is not None:
            report.evaluation_failures.append(
                {'candidate': list(ids), 'reason': failure})
        elif rel_json is not None:
            report.found += 1
            edge = HyperEdge(PolyRelation.from_json(rel_json),
                             novelty='unreviewed')
            before = len(store.edges)
            store.add_relation(edge)
            if len(store.edges) > before:
                report.committed += 1
        store.mark_searched(ids, job.d, job.o, job.cfg.prec_bits)
        _write_checkpoint(job, idx + 1)
    return report


def _load_checkpoint(job: SearchJob, total: int) -> int:
    if not job.checkpoint or not os.path.exists(job.checkpoint):
        return 0
    with open(job.checkpoint) as fh:
        obj = json.load(fh)
    if obj.get('job') != _job_key(job):
        return 0
    return min(int(obj.get('done_upto', 0)), total)


def _write_checkpoint(job: SearchJob, done_upto: int):
    if not job.checkpoint:
        return
    with open(job.checkpoint, 'w') as fh:
        json.dump({'job': _job_key(job), 'done_upto': done_upto}, fh)


def _job_key(job: SearchJob) -> str:
    return json.dumps({'partitions': {k: sorted(v) for k, v in
                                      sorted(job.partitions.items())},
                       'shape': list(job.subset_shape),
                       'd': job.d, 'o': job.o,
                       'prec': job.cfg.prec_bits}, sort_keys=True)
