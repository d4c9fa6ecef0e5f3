"""Exact finite models of path-space algebras over Bratteli diagrams.

The package computes, at a chosen truncation depth and in exact
Gaussian-rational arithmetic: rooted-path combinatorics of layered
multigraphs, locally constant functions on path space with their averaging
operators, the tower of block-matrix algebras the diagram dictates, and the
convolution algebra of kernels on tail-equivalent path pairs.  Every
identity the library claims is checked as an exact finite computation.
"""

from .scalars import Scalar, ZERO, ONE, I, as_scalar
from .diagram import (
    BratteliDiagram,
    Vertex,
    Edge,
    FinitePath,
    PathSegment,
    DepthExhaustedError,
    DiagramParseError,
    builtin_diagram,
    builtin_name,
    format_path,
    parse_diagram,
    serialize_diagram,
    BUILTIN_NAMES,
    DEFAULT_DEPTHS,
)
from .cylinder import (
    CylinderFunction,
    constant,
    indicator_path,
    indicator_vertex,
    indicator_edge,
)
from .expectation import (
    class_sum,
    expect,
    expect_indicator,
    quasi_basis_apply,
    prefix_sum_check,
)
from .af_tower import (
    AfElement,
    matrix_unit,
    represent_cylinder,
    jones_projection,
    toeplitz_word,
    jones_refinement_check,
    dimension_vector,
    embed_multiplicities,
)
from .groupoid import (
    GroupoidFunction,
    convolve,
    diag,
    jones_kernel,
    represent,
    word_kernel,
    vanishing_check,
    unit_kernel,
)
from .harness import VerifyConfig, SuiteResult, SUITE_NAMES, random_cylinder, run_suites, render_report

__version__ = "0.1.0"
