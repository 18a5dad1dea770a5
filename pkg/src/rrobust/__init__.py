"""Exact and sample-based testing of r-robustness in digraphs."""

__version__ = "0.1.0"

from .graph import (
    Digraph,
    GraphParseError,
    exam_degree,
    in_degree,
    is_r_reachable,
    min_in_degree,
    outside_count,
    parse_edge_list,
    reach_index,
    read_graph,
    save_graph,
    write_edge_list,
)
from .partition import TriPartition
from .exact import exact_is_beta_close_robust, exact_is_r_robust, exact_max_robustness
from .sampling import SamplePartition, SampleSet, sample_size, sample_vertices
from .tester import (
    AssumptionError,
    TestConfig,
    TestOutcome,
    amplification_repeats,
    amplified_test,
    sampled_rbst_tst,
    test_arbitrary,
)
from .estimation import IntervalEstimate, interval_estimate
from .generators import PlantedSpec, generate_planted, generate_uniform_digraph
