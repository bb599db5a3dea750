"""constrel: continued-fraction constants, integer relations, and the
hypergraph connecting them.

The pieces: `numerics` (error-bounded reals), `ctransform` (canonical
continued fractions and their exact convergent evaluation), `convergence`
(regime classification and depth planning), `engine` (tolerance-only PSLQ and
an LLL backend with return-on-investment scoring), `polyrel` (monomial
enumeration lifting linear relations to polynomial ones), `hypergraph`
(persistent store of constants and relations), `search` (parallel enrichment
jobs), `identify` (matching numbers against the store), `seeds` (bundled
high-precision constants and literature fixtures), and `cli`.
"""

from .numerics import Real, precision_of, effective_error
from .polynomials import IntPoly, RationalFunc
from .ctransform import CTransform, GCF, Convergents, convergents, \
    eval_to_depth, canonicalize, equivalence_transform, shift_to_regular
from .convergence import ConvergenceClass, Regime, classify, \
    predict_error_digits, plan_depth
from .engine import EngineConfig, IntRelation, pslq, lll_relation, \
    find_relation, score_roi, is_significant, roi_experiment
from .polyrel import PolyRelation, enumerate_monomials, find_poly_relation, \
    relation_subsumes
from .hypergraph import ConstantRecord, HyperEdge, Hypergraph
from .search import SearchJob, SearchReport, expand_job, run_search
from .identify import IdentifyRequest, IdentifyResult, identify

__version__ = '0.1.0'

__all__ = [
    'Real', 'precision_of', 'effective_error',
    'IntPoly', 'RationalFunc',
    'CTransform', 'GCF', 'Convergents', 'convergents', 'eval_to_depth',
    'canonicalize', 'equivalence_transform', 'shift_to_regular',
    'ConvergenceClass', 'Regime', 'classify', 'predict_error_digits',
    'plan_depth',
    'EngineConfig', 'IntRelation', 'pslq', 'lll_relation', 'find_relation',
    'score_roi', 'is_significant', 'roi_experiment',
    'PolyRelation', 'enumerate_monomials', 'find_poly_relation',
    'relation_subsumes',
    'ConstantRecord', 'HyperEdge', 'Hypergraph',
    'SearchJob', 'SearchReport', 'expand_job', 'run_search',
    'IdentifyRequest', 'IdentifyResult', 'identify',
]
