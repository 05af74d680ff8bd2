"""Sparse associative memory simulator.

Three memory models over sparse binary messages (an integer-count rule, a
clipped binary rule, and a clustered binary rule), their retrieval dynamics,
closed-form capacity constants, and a deterministic Monte Carlo harness.
"""

from samsim._core import (  # noqa: F401
    AmariNetwork,
    CheckResult,
    CsvRow,
    ErasureMode,
    ErasureSpec,
    ExhaustiveResult,
    ExhaustiveStatus,
    ExperimentResult,
    ExperimentSpec,
    GBNetwork,
    ModelKind,
    NeuronSpace,
    Outcome,
    Pattern,
    PatternDist,
    ProbeResult,
    RecognitionEstimate,
    RetrievalPolicy,
    Rng,
    SerializeError,
    SweepPoint,
    Trajectory,
    WillshawNetwork,
    efficiency,
    emit_plot_script,
    erase,
    gen_exact_count,
    gen_gb,
    gen_iid,
    iterate,
    load,
    message_entropy_bits,
    read_results,
    retrieve_exhaustive,
    rows_from_result,
    run_retrieval_sweep,
    selfcheck,
    stability_probe,
    step_amari,
    step_gb_som,
    step_gb_threshold,
    step_gb_wta,
    step_willshaw_threshold,
    step_willshaw_wta,
    subclique_probe,
    theory,
    weight_storage_bits,
    write_results,
    wrong_message_probe,
)

__version__ = "0.1.0"
