"""Simulator and exhaustive verifier for the candy-passing game on a cycle."""

from .compositions import (
    composition_count,
    enumerate_compositions,
    rank_composition,
    unrank_composition,
)
from .dynamics import (
    AbundanceView,
    Configuration,
    abundance,
    canonical_form,
    is_fixed_point,
    new_configuration,
    reverse,
    rotate,
    step,
)
from .errors import (
    CandyError,
    CapExceeded,
    CompositionOverflow,
    IndexOutOfRange,
    InvalidConfiguration,
    PreconditionError,
)
from .exhaustive import (
    LemmaAudit,
    ScanRecord,
    SweepReport,
    Verdict,
    audit_lemma_one,
    sweep,
    tightness_scan,
    verify_endgame_shapes,
    verify_subcritical,
    verify_theorem,
)
from .trajectory import (
    LemmaOneReport,
    Outcome,
    TrajectorySummary,
    analyze,
    trace,
    verify_lemma_one,
)

__version__ = "0.1.0"
